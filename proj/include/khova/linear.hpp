#pragma once

#include <optional>
#include <vector>

#include "khova/rational.hpp"

namespace khova {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;
using IntVec = std::vector<Integer>;
using IntMat = std::vector<IntVec>;

Rational dot(const Vec& a, const Vec& b);

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Mat& a, std::size_t cols);
std::size_t rank(Mat a, std::size_t cols);

// Basis of {x : A x = 0}, one vector per free column, scaled to primitive
// integer vectors. Deterministic for a given A.
Mat nullspace(const Mat& a, std::size_t cols);

// Some solution of A x = b, or nullopt.
std::optional<Vec> solve(const Mat& a, const Vec& b, std::size_t cols);

// Z-basis of {x in Z^n : A x = 0} for an integer matrix A with n columns.
IntMat integer_kernel(const IntMat& a, std::size_t n);

// LLL-reduced basis (delta = 3/4) of the lattice spanned by linearly
// independent integer rows.
IntMat lll_reduce(IntMat basis);

// Nonzero invariant factors of the Smith normal form.
IntVec smith_invariants(const IntMat& a);

// A lattice given by generating rows is saturated iff all invariant factors
// are 1.
bool lattice_is_saturated(const IntMat& generators);

// a . x >= b
struct LinearInequality {
  Vec a;
  Rational b;
};

// Exact Fourier-Motzkin elimination. Returns a point of the polyhedron or
// nullopt when it is empty. Variables are eliminated from the last to the
// first, and back-substitution picks each variable's smallest feasible value
// (the largest upper bound when no lower bound exists, 0 when unconstrained).
std::optional<Vec> fourier_motzkin(const std::vector<LinearInequality>& system, std::size_t nvars);

}  // namespace khova

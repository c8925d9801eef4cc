#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "khova/polynomial.hpp"

namespace khova {

// Dense univariate polynomial over Z, coefficients from degree 0 upwards.
using ZPoly = std::vector<Integer>;

struct FactorLimits {
  std::size_t max_univariate_degree = 400;
  std::size_t max_subsets = 1u << 16;  // recombination candidates tried
};

// Irreducible factors over Q of a nonzero univariate polynomial, each
// primitive with positive leading coefficient, with multiplicities; content
// and sign are dropped. Zassenhaus: squarefree decomposition, factoring
// modulo a prime, quadratic Hensel lifting and subset recombination. Throws
// CapExceeded beyond the limits.
std::vector<std::pair<ZPoly, int>> factor_univariate(const ZPoly& f, const FactorLimits& limits = {});

struct Factorization {
  Ring ring;
  Rational unit;
  std::vector<std::pair<Polynomial, int>> factors;  // primitive integer, irreducible over Q
  Polynomial expand() const;
};

// Factorization over Q of a nonzero multivariate polynomial, through a
// Kronecker substitution (after dehomogenizing forms). nullopt when the
// problem is beyond the limits.
std::optional<Factorization> factor_polynomial(const Polynomial& f, const FactorLimits& limits = {});

// Exact quotient f / g, or nullopt when g does not divide f.
std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g);

// Element of Q(theta) = Q[t]/(m(t)) for a monic irreducible m of degree d,
// stored as d coefficients in the power basis.
using FieldElement = std::vector<Rational>;

// A Q-irreducible polynomial in one variable, or a form in two variables, of
// degree d >= 2 splits over the algebraic closure. The witness records the
// factorization F = lc * (x - theta*z) * cofactor over Q(theta).
struct SplittingWitness {
  std::size_t x = 0;                    // variable index of x
  std::optional<std::size_t> z;         // second variable of a binary form
  std::vector<Rational> minimal_poly;   // monic m(t), low to high, degree d
  Rational leading;                     // lc of F in x
  std::vector<FieldElement> cofactor;   // coefficient of x^k z^(d-1-k), k = 0..d-1
};

std::optional<SplittingWitness> splitting_witness(const Polynomial& f);
// Re-multiplies the factors in Q(theta)[x, z] and compares with f.
bool replay_splitting(const SplittingWitness& w, const Polynomial& f);

}  // namespace khova

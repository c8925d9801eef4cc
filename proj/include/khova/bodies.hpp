#pragma once

#include <cstdint>
#include <vector>

#include "khova/polyhedra.hpp"
#include "khova/valuation.hpp"

namespace khova {

// Cone over the generator values (columns of the value matrix). Requires a
// Khovanskii basis, so that these values generate the value semigroup.
Polyhedron newton_okounkov_cone(const ValuationContext& ctx);

// Slice of the cone at first coordinate -1, with that coordinate dropped.
// Needs every generator value to start with -1.
Polyhedron newton_okounkov_body(const ValuationContext& ctx);

struct BodyDegree {
  Polyhedron body;
  std::size_t dimension = 0;
  Rational volume;  // Euclidean, in the lattice Z^dimension
  Rational degree;  // dimension! * volume
};
BodyDegree body_degree(const ValuationContext& ctx);

// H(0..max_degree) by counting standard monomials; the ideal must be
// homogeneous in the standard grading.
std::vector<std::size_t> hilbert_function(const ValuationContext& ctx, std::int64_t max_degree);

// {r <= 0, r >= delta} intersected with the Newton-Okounkov cone. delta must
// lie in the relative interior of the cone.
Polyhedron compactification_body(const ValuationContext& ctx, const Vec& delta);
// Membership of (N, r) in the graded semigroup {r in S, r >= N delta}.
bool compactification_contains(const ValueSemigroup& semigroup, std::int64_t level, const Value& r,
                               const Vec& delta);

// {a >= 0 : value_matrix * a >= delta}, same precondition. PreconditionError
// if the result is unbounded.
Polyhedron hat_polytope(const ValuationContext& ctx, const Vec& delta);

// Default delta = (-1, ..., -1) of the value rank.
Vec default_delta(const ValuationContext& ctx);

// Generator and constraint descriptions describe the same set.
bool representations_agree(const Polyhedron& p);

struct ReesRow {
  Value level;                  // values on the rows of sigma
  std::vector<std::size_t> w;   // per degree: standard monomials with exactly this level
  std::vector<std::size_t> f;   // per degree: standard monomials with level >= it componentwise
};
struct ReesTable {
  std::vector<std::size_t> sigma;
  std::int64_t max_degree = 0;
  std::vector<ReesRow> rows;
};

constexpr std::size_t kReesWindowCap = 200000;

// Graded dimensions of the sigma-filtration over degrees 0..max_degree. An
// empty `levels` lists every level attained in the window. CapExceeded when
// the window holds more than window_cap standard monomials.
ReesTable rees_graded_dims(const ValuationContext& ctx, const std::vector<std::size_t>& sigma,
                           const std::vector<Value>& levels, std::int64_t max_degree,
                           std::size_t window_cap = kReesWindowCap);

}  // namespace khova

#pragma once

#include <vector>

#include "khova/groebner.hpp"
#include "khova/linear.hpp"

namespace khova {

// Everything computed on the way to in_M(I).
struct InitialComputation {
  Ideal source;
  WeightMatrix weights;
  // Reduced basis under composite(M, tiebreak), or under composite((0|M),
  // tiebreak) for the homogenization of the source when `homogenized`.
  GroebnerContext gb;
  bool homogenized = false;
  Ideal initial;  // initial forms of the basis (dehomogenized if needed)
};

// in_M(I). Admissible directly when every column of M is lex <= 0 or the
// ideal is homogeneous for a positive grading; otherwise computed as
// in_(0|M)(I^h) at x0 = 1.
InitialComputation compute_initial(const Ideal& ideal, const WeightMatrix& m,
                                   const MonomialOrder& tiebreak = MonomialOrder::degrevlex(),
                                   const GroebnerOptions& options = {});
Ideal initial_ideal(const Ideal& ideal, const WeightMatrix& m, const GroebnerOptions& options = {});

// in_{u_r}( ... in_{u_1}(I) ... ), one row at a time.
Ideal iterated_initial_ideal(const Ideal& ideal, const std::vector<Vec>& rows, const GroebnerOptions& options = {});

// M lies in the closed Groebner cone C_>(I): in_>(in_M(g)) = in_>(g) for
// every g in the reduced basis for >.
bool groebner_region_test(const WeightMatrix& m, const Ideal& ideal, const MonomialOrder& order,
                          const GroebnerOptions& options = {});

// Linear forms on Q^n. A weight u lies in the cone iff every equality form
// vanishes and every strict form is positive at u.
struct ConeDescription {
  Mat equalities;
  Mat strict_inequalities;
  bool contains(const Vec& u) const;
  // Row-wise version: M*f must be zero, resp. lexicographically positive.
  bool contains(const WeightMatrix& m) const;
};

// Forms (m - m0) over each reduced basis element g, with m0 = in_>(g): m in
// the support of in_M(g) give equalities, the remaining monomials strict
// inequalities. Monomials are visited in descending order under >.
ConeDescription equivalence_cone(const WeightMatrix& m, const Ideal& ideal, const MonomialOrder& order,
                                 const GroebnerOptions& options = {});

// Basis of the weights for which I is homogeneous.
Mat lineality_space(const Ideal& ideal, const GroebnerOptions& options = {});

// u = v^T M with v >= 0 (and sum v >= 1) such that in_u(I) = in_M(I); v is the
// smallest feasible point found by Fourier-Motzkin. Throws Error if the
// post-check fails.
Vec rank1_representative(const Ideal& ideal, const WeightMatrix& m, const GroebnerOptions& options = {});

}  // namespace khova

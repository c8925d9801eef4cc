#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "khova/order.hpp"
#include "khova/polynomial.hpp"

namespace khova {

class Ideal {
 public:
  Ideal() = default;
  Ideal(Ring ring, std::vector<Polynomial> generators);

  const Ring& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  // Every generator is homogeneous for the standard grading.
  bool generators_homogeneous() const;

 private:
  Ring ring_;
  std::vector<Polynomial> gens_;  // zero generators are dropped
};

struct GroebnerCaps {
  std::size_t max_pairs = 2000;   // S-pairs reduced
  std::int64_t max_degree = 64;   // total degree of an S-pair lcm
};

enum class Strategy {
  Serial,    // one S-pair at a time (reference implementation)
  Parallel,  // all minimal-sugar pairs of a round reduced concurrently
};

struct GroebnerOptions {
  GroebnerCaps caps{};
  Strategy strategy = Strategy::Serial;
};

// Reduced Groebner basis together with the order it was computed for.
class GroebnerContext {
 public:
  const Ring& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  // Order actually used for division. It differs from order() only when
  // order() is not a well-order; the ideal is then homogeneous for a positive
  // grading and both orders agree on every homogeneous comparison.
  const MonomialOrder& working_order() const { return working_; }

  // Monic, reduced, sorted by descending leading monomial.
  const std::vector<Polynomial>& basis() const { return basis_; }
  const std::vector<ExponentVector>& leading_monomials() const { return leads_; }
  std::size_t pairs_reduced() const { return pairs_reduced_; }

  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
  bool is_unit() const;
  bool is_standard(const ExponentVector& e) const;
  std::vector<ExponentVector> standard_monomials_of_degree(std::int64_t d) const;
  // All standard monomials of total degree <= bound, by degree then
  // descending lex.
  std::vector<ExponentVector> standard_monomials(std::int64_t bound) const;
  Ideal ideal() const { return Ideal(ring_, basis_); }

 private:
  friend GroebnerContext buchberger(const Ideal&, const MonomialOrder&, const GroebnerOptions&);
  Ring ring_;
  MonomialOrder order_;
  MonomialOrder working_;
  std::vector<Polynomial> basis_;
  std::vector<ExponentVector> leads_;
  std::size_t pairs_reduced_ = 0;
};

// Buchberger's algorithm with Gebauer-Moeller pair pruning and the sugar
// strategy. Orders that are not well-orders are accepted only for ideals that
// are homogeneous for some positive grading. Throws CapExceeded when a cap is
// hit.
GroebnerContext buchberger(const Ideal& ideal, const MonomialOrder& order,
                           const GroebnerOptions& options = {});

// Monomials of total degree d in n variables, in descending lex order.
std::vector<ExponentVector> monomials_of_degree(std::size_t n, std::int64_t d);

// Space of weights w for which every element of the reduced basis is
// w-homogeneous. This is the largest grading space of the ideal.
std::vector<std::vector<Rational>> homogeneity_space(const GroebnerContext& gb);

// A strictly positive grading for which the ideal is homogeneous, if any.
std::optional<std::vector<Rational>> positive_grading(const Ideal& ideal,
                                                      const GroebnerOptions& options = {});

// I : g^infinity via I + <t*g - 1> and elimination of t.
Ideal saturate(const Ideal& ideal, const Polynomial& g, const GroebnerOptions& options = {});

// I intersected with J, by eliminating t from t*I + (1 - t)*J.
Ideal intersect(const Ideal& a, const Ideal& b, const GroebnerOptions& options = {});
// I : f = (I intersected with <f>) / f.
Ideal quotient(const Ideal& ideal, const Polynomial& f, const GroebnerOptions& options = {});

// Homogenizes a degrevlex basis with a new first variable (named x0 unless
// taken). The result lives in the larger ring.
Ideal homogenize(const Ideal& ideal, const GroebnerOptions& options = {});
// Sets variable `index` to 1 and drops it.
Ideal dehomogenize(const Ideal& ideal, std::size_t index);

// Keeps the variables with keep[j] true; the result is I intersected with the
// subring, given by a reduced degrevlex basis of the subring.
Ideal eliminate(const Ideal& ideal, const std::vector<bool>& keep, const GroebnerOptions& options = {});

// Equality via reduced degrevlex bases.
bool ideal_equal(const Ideal& a, const Ideal& b, const GroebnerOptions& options = {});

// Reduced degrevlex basis; the canonical generating set used in reports.
Ideal canonical(const Ideal& ideal, const GroebnerOptions& options = {});

}  // namespace khova

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "khova/groebner.hpp"
#include "khova/initial.hpp"
#include "khova/tropical.hpp"

namespace khova {

// Values live in Q^r with the lexicographic order; smaller is "lower".
using Value = RankVector;

// Either the weight quasivaluation v_M on k[x]/I (presentation mode), or the
// lowest-term valuation of a polynomial ring restricted to the subalgebra
// generated by b_1, ..., b_m (SAGBI mode).
class ValuationContext {
 public:
  enum class Mode { Presentation, Sagbi };

  static ValuationContext presentation(const Ideal& ideal, const WeightMatrix& m,
                                       const MonomialOrder& tiebreak = MonomialOrder::degrevlex(),
                                       const GroebnerOptions& options = {});
  // Generators live in one ambient ring; the lowest term is taken under
  // `ambient_order`, which must be a well-order.
  static ValuationContext sagbi(std::vector<Polynomial> generators,
                                const MonomialOrder& ambient_order = MonomialOrder::lex(),
                                const GroebnerOptions& options = {});

  Mode mode() const { return mode_; }
  // Ring of the algebra elements: k[x] for presentations, the ambient ring
  // for SAGBI contexts.
  const Ring& ring() const { return ring_; }
  // One symbol per generator: the variables themselves for presentations,
  // b1..bm for SAGBI contexts.
  const Ring& symbols() const { return symbols_; }
  const Ideal& ideal() const { return ideal_; }
  const WeightMatrix& weights() const { return m_; }
  const MonomialOrder& tiebreak() const { return tiebreak_; }
  // Presentations: reduced basis under composite(M, tiebreak). SAGBI: basis
  // of the zero ideal of the ambient ring.
  const GroebnerContext& gb() const { return *gb_; }
  // in_M(I), from the initial forms of gb().
  const Ideal& initial_ideal() const { return initial_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const MonomialOrder& ambient_order() const { return ambient_order_; }
  const GroebnerOptions& options() const { return options_; }

  // Nonzero element of the algebra: an element of k[x] (presentation) or of
  // the ambient ring lying in the subalgebra (SAGBI).
  Value evaluate(const Polynomial& f) const;
  // Value of a monomial of k[x] (M alpha), or of an ambient exponent.
  Value weight(const ExponentVector& e) const;
  // Columns are the generator values: iota(M) for presentations.
  const WeightMatrix& value_matrix() const;
  // Images of the generator symbols in ring().
  std::vector<Polynomial> generator_images() const;

 private:
  Mode mode_ = Mode::Presentation;
  Ring ring_;
  Ring symbols_;
  Ideal ideal_;
  WeightMatrix m_;
  MonomialOrder tiebreak_ = MonomialOrder::degrevlex();
  std::shared_ptr<const GroebnerContext> gb_;
  Ideal initial_;
  std::vector<Polynomial> generators_;
  MonomialOrder ambient_order_ = MonomialOrder::lex();
  WeightMatrix ambient_matrix_;
  GroebnerOptions options_;
  std::optional<WeightMatrix> values_;
  std::string values_error_;
};

struct SubductionStep {
  Value value;            // value of the element before this step
  Polynomial expression;  // in symbols(); subtracted from the element
};

struct SubductionTrace {
  enum class Outcome { Exact, Stuck, CapExceeded };
  std::vector<SubductionStep> steps;
  Outcome outcome = Outcome::Exact;
  Polynomial residual;    // element left over (zero when Exact)
  Polynomial expression;  // sum of the step expressions
};
std::string to_string(SubductionTrace::Outcome o);

constexpr std::size_t kDefaultSubductionCap = 10000;

// Repeatedly subtracts a generator expression matching the lowest part of the
// element. Presentations: the minimal-weight slice of the normal form.
// SAGBI: one monomial in the generators whose lowest term matches; Stuck when
// none exists. The cap is ignored for homogeneous SAGBI generators, where
// termination is guaranteed.
SubductionTrace subduction(const Polynomial& f, const ValuationContext& ctx, std::size_t cap = kDefaultSubductionCap);

struct WeightedTerm {
  ExponentVector monomial;
  Rational coeff;
  Value weight;
};
// Standard-monomial expansion of f (its normal form), ascending by weight, so
// the first weight is v(f); ties follow the tiebreak order.
std::vector<WeightedTerm> vector_space_subduction(const Polynomial& f, const ValuationContext& ctx);

// Kernel of x_i -> t^(column i) in the polynomial ring `ring`. When some
// functional is positive on every column the result is a minimal set of
// binomial generators, ordered by degree; otherwise it is the reduced
// degrevlex basis.
Ideal toric_ideal(const WeightMatrix& values, const Ring& ring, const GroebnerOptions& options = {});
// Default ring y1..yn.
Ideal toric_ideal(const WeightMatrix& values, const GroebnerOptions& options = {});

struct KhovanskiiReport {
  bool is_khovanskii = false;
  // Presentation: iota(M) and the variables lying in in_M(I).
  std::optional<WeightMatrix> contraction;
  std::vector<std::size_t> variables_in_initial;
  // SAGBI: I_B and the subduction outcome of each generator of I_B.
  std::optional<Ideal> relations;
  std::vector<SubductionTrace::Outcome> outcomes;
  std::vector<std::string> notes;
};

// Presentations: B = {x_i} is a Khovanskii basis iff no x_i lies in in_M(I),
// equivalently iota(M) = M. SAGBI: every generator of the toric ideal of the
// generator values, evaluated on B, subducts to zero.
KhovanskiiReport khovanskii_test(const ValuationContext& ctx, std::size_t cap = kDefaultSubductionCap);

struct CompletionResult {
  std::vector<Polynomial> basis;
  bool complete = false;
  std::size_t rounds = 0;
  std::vector<std::size_t> value_counts;  // distinct generator values after each round
  bool capped = false;                    // stopped by the round cap or a subduction cap
  std::string stop_reason;
};

// Algorithm of repeated toric relations and subduction (SAGBI mode). Stuck
// residuals of a round are subducted against the basis as it grows and
// appended, scaled so their lowest coefficient is 1.
CompletionResult khovanskii_complete(const ValuationContext& ctx, std::size_t round_cap,
                                     std::size_t subduction_cap = kDefaultSubductionCap);

// Semigroup generated by the distinct generator values.
class ValueSemigroup {
 public:
  explicit ValueSemigroup(std::vector<Value> generators, std::size_t box_bound = 64);
  const std::vector<Value>& generators() const { return gens_; }
  // Every generator has first coordinate -1.
  bool graded() const { return graded_; }
  bool contains(const Value& v) const;
  // Distinct sums of exactly `level` generators (graded semigroups).
  std::vector<Value> level(std::size_t level) const;

 private:
  std::vector<Value> gens_;
  std::size_t box_bound_;
  bool graded_ = false;
  std::optional<Vec> functional_;  // lambda with lambda.g >= 1 on every generator
};

// PreconditionError unless the context passes khovanskii_test.
ValueSemigroup value_semigroup(const ValuationContext& ctx, std::size_t box_bound = 64);

// Every value attained by a standard monomial of degree <= bound is attained
// by exactly one of them.
bool one_dim_leaves_check(const ValuationContext& ctx, std::int64_t degree_bound);

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

struct ValuationVerdict {
  Verdict verdict = Verdict::Unknown;
  PrimalityCertificate certificate;  // primality of in_M(I)
};
ValuationVerdict is_valuation(const ValuationContext& ctx, const PrimalityOptions& options = {});

struct StrictWitness {
  Polynomial f;
  Polynomial g;
  Value product;  // v(fg)
  Value sum;      // v(f) + v(g)
};

struct AxiomReport {
  std::size_t trials = 0;
  std::vector<std::string> violations;
  std::vector<StrictWitness> strict_witnesses;
};

// Generator pairs first, then seeded random pairs. Checks v(f+g) >= min,
// v(fg) >= v(f)+v(g), v(cf) = v(f), recording strict products as witnesses.
AxiomReport quasivaluation_axioms_check(const ValuationContext& ctx, std::size_t trials, std::uint64_t seed = 1);

struct PrimeConeFromValuation {
  Vec u;
  ConeDescription cone;
  bool u_in_cone = false;
  bool initial_ideals_agree = false;  // in_u(I) = in_M(I)
  bool values_tropical = false;       // value matrix in T^r(I)
};
PrimeConeFromValuation prime_cone_from_valuation(const ValuationContext& ctx,
                                                 const PrimalityOptions& options = {});

// Random nonzero element of the algebra with small integer coefficients.
Polynomial random_element(const ValuationContext& ctx, std::mt19937_64& rng);

}  // namespace khova

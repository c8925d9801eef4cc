#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "khova/factor.hpp"
#include "khova/groebner.hpp"
#include "khova/initial.hpp"
#include "khova/linear.hpp"

namespace khova {

// I contains a monomial iff (I : (x1...xn)^inf) is the unit ideal.
bool contains_monomial(const Ideal& ideal, const GroebnerOptions& options = {});

bool in_tropical_variety(const Vec& u, const Ideal& ideal, const GroebnerOptions& options = {});
bool in_tropical_variety_rank_r(const WeightMatrix& m, const Ideal& ideal, const GroebnerOptions& options = {});

// iota(M): column i is v_M(x_i), the smallest M-weight in the support of
// NF(x_i) under composite(M, tiebreak). PreconditionError when some x_i lies
// in I, since v_M(x_i) is then undefined.
WeightMatrix contraction(const WeightMatrix& m, const Ideal& ideal,
                         const MonomialOrder& tiebreak = MonomialOrder::degrevlex(),
                         const GroebnerOptions& options = {});
// Same, reusing a basis computed under composite(M, tiebreak).
WeightMatrix contraction(const WeightMatrix& m, const GroebnerContext& gb);

enum class Primality { Prime, NotPrime, Unknown };
std::string to_string(Primality p);

// f*g lies in I while neither factor does.
struct ZeroDivisorWitness {
  Polynomial f;
  Polynomial g;
};

// x_variable = replacement modulo I, where the replacement avoids the
// variable and every variable eliminated before it.
struct LinearElimination {
  std::size_t variable = 0;
  Polynomial replacement;
};

// Primality is decided over the algebraic closure of Q. Every verdict other
// than Unknown carries data that replay_certificate re-checks.
struct PrimalityCertificate {
  Primality verdict = Primality::Unknown;
  std::string method;
  Ideal ideal;
  std::vector<LinearElimination> eliminations;
  Ideal reduced;  // I after the eliminations, same ring
  std::optional<ZeroDivisorWitness> zero_divisor;
  std::optional<Polynomial> split_polynomial;  // generator of `reduced`
  std::optional<SplittingWitness> splitting;
  IntVec lattice_invariants;  // Smith invariants of the exponent lattice (binomial case)
  std::vector<std::string> notes;
};

struct PrimalityOptions {
  GroebnerOptions groebner{};
  std::int64_t zero_divisor_degree = 6;
  std::size_t zero_divisor_pairs = 200;
  FactorLimits factor{};
};

PrimalityCertificate is_prime_desk(const Ideal& ideal, const PrimalityOptions& options = {});
bool replay_certificate(const PrimalityCertificate& cert, const PrimalityOptions& options = {});

struct PrimeConeOptions {
  std::size_t samples = 5;
  std::uint64_t seed = 20240917;
  GroebnerOptions groebner{};
  PrimalityOptions primality{};
};

struct PrimeConeReport {
  Mat sample_points;
  bool samples_agree = false;
  std::optional<Ideal> common_initial_ideal;  // canonical form, only when the samples agree
  bool monomial_free = false;
  bool binomial = false;
  PrimalityCertificate primality;
  // Only examined for ideals without a positive grading; otherwise every
  // weight lies in the Groebner region.
  std::optional<bool> meets_groebner_region;
  std::vector<std::string> notes;
};

// Samples the relative interior of cone(rays) + span(lineality): the sum of
// the rays first, then seeded random positive combinations. Sample initial
// ideals are computed concurrently.
PrimeConeReport verify_prime_cone(const Mat& rays, const Mat& lineality, const Ideal& ideal,
                                  const PrimeConeOptions& options = {});

}  // namespace khova

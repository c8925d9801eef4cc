#include <chrono>
#include <random>
#include <set>

#include "doctest.h"
#include "khova/errors.hpp"
#include "khova/valuation.hpp"

using namespace khova;

namespace {

Ideal ideal_of(const Ring& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(parse_polynomial(s, r));
  return Ideal(r, g);
}

std::vector<Polynomial> polys(const Ring& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(parse_polynomial(s, r));
  return g;
}

Value val(std::initializer_list<long> xs) {
  Value r;
  for (long x : xs) r.emplace_back(x);
  return r;
}

const char* kElliptic = "y^2*z - x^3 + 7*x*z^2 - 2*z^3";

ValuationContext elliptic() {
  Ring r({"x", "y", "z"});
  return ValuationContext::presentation(ideal_of(r, {kElliptic}), WeightMatrix::from_ints({{-1, -1, -1}, {-2, -3, 0}}));
}

// Variables listed x3, x2, x1 so lex puts x3 first.
std::vector<Polynomial> goebel_generators(const Ring& r) {
  return polys(r, {"x1 + x2 + x3", "x1*x2 + x1*x3 + x2*x3", "x1*x2*x3", "x1^2*x2 + x2^2*x3 + x3^2*x1"});
}

}  // namespace

TEST_CASE("presentation values of the elliptic cubic") {
  auto ctx = elliptic();
  const Ring& r = ctx.ring();
  CHECK(ctx.evaluate(parse_polynomial("x", r)) == val({-1, -2}));
  CHECK(ctx.evaluate(parse_polynomial("y", r)) == val({-1, -3}));
  CHECK(ctx.evaluate(parse_polynomial("z", r)) == val({-1, 0}));
  // x^3 reduces to y^2 z + 7 x z^2 - 2 z^3, whose lowest slice is y^2 z.
  CHECK(ctx.evaluate(parse_polynomial("x^3", r)) == val({-3, -6}));
  CHECK(ctx.evaluate(parse_polynomial("x + z", r)) == val({-1, -2}));
  CHECK_THROWS_AS(ctx.evaluate(parse_polynomial(kElliptic, r)), PreconditionError);
  CHECK(ctx.value_matrix() == ctx.weights());

  auto terms = vector_space_subduction(parse_polynomial("x^3", r), ctx);
  REQUIRE(terms.size() == 3);
  CHECK(terms[0].monomial == ExponentVector{0, 2, 1});
  CHECK(terms[0].weight == val({-3, -6}));
  CHECK(terms[1].monomial == ExponentVector{1, 0, 2});
  CHECK(terms[1].coeff == 7);
  CHECK(terms[2].monomial == ExponentVector{0, 0, 3});
  CHECK(terms[2].coeff == -2);

  auto v = is_valuation(ctx);
  CHECK(v.verdict == Verdict::Yes);
  CHECK(replay_certificate(v.certificate));

  auto k = khovanskii_test(ctx);
  CHECK(k.is_khovanskii);
  CHECK(k.variables_in_initial.empty());
}

TEST_CASE("weight quasivaluation on x^2 - y") {
  Ring r({"x", "y"});
  auto I = ideal_of(r, {"x^2 - y"});
  auto equal = ValuationContext::presentation(I, WeightMatrix::from_ints({{1, 2}}));
  CHECK(is_valuation(equal).verdict == Verdict::Yes);
  auto rep = quasivaluation_axioms_check(equal, 40, 7);
  CHECK(rep.violations.empty());
  CHECK(rep.strict_witnesses.empty());

  auto skew = ValuationContext::presentation(I, WeightMatrix::from_ints({{1, 3}}));
  auto verdict = is_valuation(skew);
  CHECK(verdict.verdict == Verdict::No);
  CHECK(verdict.certificate.zero_divisor.has_value());
  CHECK(skew.evaluate(parse_polynomial("x", r)) == val({1}));
  // x^2 = y in the algebra.
  CHECK(skew.evaluate(parse_polynomial("x^2", r)) == val({3}));
  auto axioms = quasivaluation_axioms_check(skew, 40, 7);
  CHECK(axioms.violations.empty());
  REQUIRE_FALSE(axioms.strict_witnesses.empty());
  const auto& w = axioms.strict_witnesses.front();
  CHECK(to_string(w.f) == "x");
  CHECK(to_string(w.g) == "x");
  CHECK(w.product == val({3}));
  CHECK(w.sum == val({2}));
  CHECK_THROWS_AS(prime_cone_from_valuation(skew), PreconditionError);
}

TEST_CASE("presentation Khovanskii test detects variables in the initial ideal") {
  Ring r({"x", "y"});
  auto ctx = ValuationContext::presentation(ideal_of(r, {"x - y^2"}), WeightMatrix::from_ints({{0, 1}}));
  auto k = khovanskii_test(ctx);
  CHECK_FALSE(k.is_khovanskii);
  CHECK(k.variables_in_initial == std::vector<std::size_t>{0});
  CHECK(*k.contraction == WeightMatrix::from_ints({{2, 1}}));
  CHECK(k.notes.size() == 1);
  CHECK_THROWS_AS(value_semigroup(ctx), PreconditionError);
  CHECK_THROWS_AS(one_dim_leaves_check(ctx, 3), PreconditionError);

  auto lin = ValuationContext::presentation(ideal_of(r, {"x"}), WeightMatrix::from_ints({{1, 1}}));
  CHECK_THROWS_AS(lin.value_matrix(), PreconditionError);
  CHECK_THROWS_AS(khovanskii_test(lin), PreconditionError);
}

TEST_CASE("toric ideals") {
  Ring r({"a", "b", "c", "d"});
  auto twisted = toric_ideal(WeightMatrix::from_ints({{3, 2, 1, 0}, {0, 1, 2, 3}}), r);
  CHECK(ideal_equal(twisted, ideal_of(r, {"a*c - b^2", "b*d - c^2", "a*d - b*c"})));

  auto conic = toric_ideal(WeightMatrix::from_ints({{1, 1, 1}, {0, 1, 2}}));
  CHECK(conic.ring().names() == std::vector<std::string>{"y1", "y2", "y3"});
  CHECK(ideal_equal(conic, ideal_of(conic.ring(), {"y1*y3 - y2^2"})));

  // Only negative entries: graded by a negative functional.
  Ring s({"u", "v"});
  CHECK(ideal_equal(toric_ideal(WeightMatrix::from_ints({{-1, -2}}), s), ideal_of(s, {"u^2 - v"})));
  // No functional positive on both columns: falls back to saturation.
  CHECK(ideal_equal(toric_ideal(WeightMatrix::from_ints({{1, -1}}), s), ideal_of(s, {"u*v - 1"})));
  // Injective exponent map.
  CHECK(toric_ideal(WeightMatrix::from_ints({{1, 0}, {0, 1}}), s).is_zero());
  // Rational entries are scaled.
  Value half{Rational(1, 2), Rational(1)};
  CHECK(ideal_equal(toric_ideal(WeightMatrix({half}), s), ideal_of(s, {"u^2 - v"})));
  // Unit square.
  Ring t({"p", "q", "r", "s"});
  auto sq = toric_ideal(WeightMatrix::from_ints({{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}), t);
  CHECK(ideal_equal(sq, ideal_of(t, {"p*s - q*r"})));
}

TEST_CASE("toric ideal dimension count matches distinct values") {
  // In each degree the quotient has one basis element per distinct value.
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(0, 3);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 3 + trial % 2;
    std::vector<std::vector<long>> rows(2, std::vector<long>(n));
    for (std::size_t j = 0; j < n; ++j) {
      rows[0][j] = 1;
      rows[1][j] = entry(rng);
    }
    auto a = WeightMatrix::from_ints(rows);
    auto I = toric_ideal(a);
    auto gb = buchberger(I, MonomialOrder::degrevlex());
    for (std::int64_t d = 1; d <= 4; ++d) {
      std::set<Value> images;
      for (const auto& e : monomials_of_degree(n, d)) images.insert(a.apply(e));
      CHECK(gb.standard_monomials_of_degree(d).size() == images.size());
    }
    for (const auto& g : I.generators()) {
      // Each generator is a binomial with equal values on both terms.
      REQUIRE(g.num_terms() == 2);
      std::set<Value> vs;
      for (const auto& [e, c] : g.terms()) vs.insert(a.apply(e));
      CHECK(vs.size() == 1);
    }
  }
}

TEST_CASE("symmetric polynomials form a Khovanskii basis") {
  Ring r2({"x", "y"});
  auto c2 = ValuationContext::sagbi(polys(r2, {"x + y", "x*y"}));
  CHECK(c2.symbols().names() == std::vector<std::string>{"b1", "b2"});
  CHECK(c2.value_matrix() == WeightMatrix::from_ints({{0, 1}, {1, 1}}));
  CHECK(khovanskii_test(c2).is_khovanskii);

  Ring r3({"x", "y", "z"});
  auto c3 = ValuationContext::sagbi(polys(r3, {"x + y + z", "x*y + x*z + y*z", "x*y*z"}));
  auto k = khovanskii_test(c3);
  CHECK(k.is_khovanskii);
  REQUIRE(k.relations.has_value());
  CHECK(k.relations->is_zero());

  auto f = parse_polynomial("x^2*y + x^2*z + y^2*x + y^2*z + z^2*x + z^2*y", r3);
  auto t = subduction(f, c3);
  CHECK(t.outcome == SubductionTrace::Outcome::Exact);
  CHECK(t.expression.substitute(c3.generators()) == f);
  auto semigroup = value_semigroup(c3);
  CHECK(semigroup.generators().size() == 3);
  CHECK(one_dim_leaves_check(c3, 4));
}

TEST_CASE("completion adds the missing product") {
  Ring r({"x", "y"});
  auto ctx = ValuationContext::sagbi(polys(r, {"x + y", "x^2 + y^2"}));
  auto k = khovanskii_test(ctx);
  CHECK_FALSE(k.is_khovanskii);
  REQUIRE(k.outcomes.size() == 1);
  CHECK(k.outcomes[0] == SubductionTrace::Outcome::Stuck);
  auto res = khovanskii_complete(ctx, 5);
  CHECK(res.complete);
  CHECK_FALSE(res.capped);
  CHECK(res.rounds == 2);
  REQUIRE(res.basis.size() == 3);
  CHECK(res.basis[2] == parse_polynomial("x*y", r));
  CHECK(res.value_counts == std::vector<std::size_t>{3, 3});
  CHECK(khovanskii_test(ValuationContext::sagbi(res.basis)).is_khovanskii);
}

TEST_CASE("the Goebel invariants keep growing") {
  Ring r({"x3", "x2", "x1"});
  auto ctx = ValuationContext::sagbi(goebel_generators(r));
  CHECK_FALSE(khovanskii_test(ctx).is_khovanskii);
  auto start = std::chrono::steady_clock::now();
  auto res = khovanskii_complete(ctx, 6);
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("six completion rounds took " << secs << " s");
  CHECK_FALSE(res.complete);
  CHECK(res.capped);
  CHECK(res.stop_reason == "round cap reached");
  REQUIRE(res.value_counts.size() == 6);
  CHECK(res.value_counts[0] > 4);
  for (std::size_t i = 1; i < res.value_counts.size(); ++i) CHECK(res.value_counts[i - 1] < res.value_counts[i]);
  CHECK(res.basis.size() == res.value_counts.back());
  // Every added element is symmetric under the cyclic shift x1 -> x2 -> x3.
  std::vector<Polynomial> shift = polys(r, {"x1", "x3", "x2"});
  for (const auto& b : res.basis) CHECK(b.substitute(shift).substitute(shift).substitute(shift) == b);
}

TEST_CASE("subduction cap on a non-homogeneous generator") {
  Ring r({"x"});
  auto ctx = ValuationContext::sagbi(polys(r, {"x + x^2"}));
  auto t = subduction(parse_polynomial("x", r), ctx, 30);
  CHECK(t.outcome == SubductionTrace::Outcome::CapExceeded);
  CHECK(t.steps.size() == 30);
  CHECK_FALSE(t.residual.is_zero());
  for (std::size_t i = 0; i < t.steps.size(); ++i) CHECK(t.steps[i].value == val({static_cast<long>(i + 1)}));
  CHECK(t.expression.substitute(ctx.generators()) + t.residual == parse_polynomial("x", r));
}

TEST_CASE("value semigroup levels") {
  auto ctx = elliptic();
  auto s = value_semigroup(ctx);
  CHECK(s.graded());
  CHECK(s.level(1).size() == 3);
  CHECK(s.level(2).size() == 6);
  CHECK(s.contains(val({-2, -5})));
  CHECK(s.contains(val({0, 0})));
  CHECK_FALSE(s.contains(val({-1, -1})));
  CHECK_FALSE(s.contains(val({1, 0})));
  CHECK_FALSE(s.contains(val({-2, -7})));

  // Not graded, but a positive functional exists.
  ValueSemigroup numerical({val({3}), val({5})});
  CHECK_FALSE(numerical.graded());
  CHECK(numerical.contains(val({8})));
  CHECK(numerical.contains(val({9})));
  CHECK_FALSE(numerical.contains(val({7})));
  CHECK_THROWS_AS(numerical.level(2), PreconditionError);

  // Neither: searched inside a box.
  ValueSemigroup mixed({val({1, -1}), val({-1, 2})});
  CHECK(mixed.contains(val({0, 1})));
  CHECK(mixed.contains(val({1, 0})));
  CHECK_FALSE(mixed.contains(val({0, -1})));
}

TEST_CASE("one-dimensional leaves") {
  CHECK(one_dim_leaves_check(elliptic(), 4));
  Ring r({"x", "y"});
  auto free = ValuationContext::presentation(Ideal(r, {}), WeightMatrix::from_ints({{1, 1}}));
  CHECK_FALSE(one_dim_leaves_check(free, 1));
  auto full = ValuationContext::presentation(Ideal(r, {}), WeightMatrix::from_ints({{1, 1}, {0, 1}}));
  CHECK(one_dim_leaves_check(full, 4));
}

TEST_CASE("prime cone from a valuation") {
  auto pc = prime_cone_from_valuation(elliptic());
  CHECK(pc.u_in_cone);
  CHECK(pc.initial_ideals_agree);
  CHECK(pc.values_tropical);
  CHECK(pc.cone.contains(pc.u));
}

TEST_CASE("property: valuations are multiplicative and subduction is monotone") {
  auto ctx = elliptic();
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 25; ++i) {
    auto f = random_element(ctx, rng);
    auto g = random_element(ctx, rng);
    auto vf = ctx.evaluate(f), vg = ctx.evaluate(g);
    Value sum(vf.size());
    for (std::size_t k = 0; k < vf.size(); ++k) sum[k] = vf[k] + vg[k];
    CHECK(ctx.evaluate(f * g) == sum);

    auto t = subduction(f, ctx);
    REQUIRE(t.outcome == SubductionTrace::Outcome::Exact);
    CHECK(t.steps.front().value == vf);
    for (std::size_t s = 1; s < t.steps.size(); ++s) CHECK(lex_compare(t.steps[s - 1].value, t.steps[s].value) < 0);
    // The expression rebuilds f in the algebra.
    CHECK(ctx.gb().normal_form(t.expression - f).is_zero());

    // Adapted basis: distinct-valued standard monomials, value of a sum is
    // the smallest term value.
    auto terms = vector_space_subduction(f, ctx);
    CHECK(terms.front().weight == vf);
  }
  auto rep = quasivaluation_axioms_check(ctx, 20, 5);
  CHECK(rep.violations.empty());
  CHECK(rep.strict_witnesses.empty());
}

TEST_CASE("property: SAGBI subduction rebuilds subalgebra elements") {
  Ring r({"x", "y", "z"});
  auto ctx = ValuationContext::sagbi(polys(r, {"x + y + z", "x*y + x*z + y*z", "x*y*z"}));
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    auto f = random_element(ctx, rng);
    auto t = subduction(f, ctx);
    REQUIRE(t.outcome == SubductionTrace::Outcome::Exact);
    CHECK(t.expression.substitute(ctx.generators()) == f);
    CHECK(t.steps.front().value == ctx.evaluate(f));
    for (std::size_t s = 1; s < t.steps.size(); ++s) CHECK(lex_compare(t.steps[s - 1].value, t.steps[s].value) < 0);
  }
}

TEST_CASE("property: contraction columns are generator values") {
  Ring r({"x", "y", "z"});
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> w(-3, 3);
  const char* ideals[][2] = {{kElliptic, nullptr}, {"x*y - z^2", nullptr}, {"x - y^2", "y*z - 1"}};
  for (auto& gens : ideals) {
    std::vector<Polynomial> g;
    for (auto s : gens)
      if (s) g.push_back(parse_polynomial(s, r));
    Ideal I(r, g);
    for (int trial = 0; trial < 4; ++trial) {
      auto m = WeightMatrix::from_ints({{w(rng), w(rng), w(rng)}});
      if (!positive_grading(I) && !m.columns_lex_nonpositive()) continue;
      auto ctx = ValuationContext::presentation(I, m);
      const auto& iota = ctx.value_matrix();
      for (std::size_t i = 0; i < 3; ++i) CHECK(ctx.evaluate(Polynomial::variable(r, i)) == iota.column(i));
      // iota is a fixed point of itself.
      auto again = ValuationContext::presentation(I, iota);
      CHECK(again.value_matrix() == iota);
      CHECK(khovanskii_test(again).is_khovanskii);
    }
  }
}

TEST_CASE("one-dimensional leaves on small slices") {
  Ring r({"x", "y", "z"});
  auto slice = ValuationContext::presentation(ideal_of(r, {kElliptic}), WeightMatrix::from_ints({{-1, -1, -1}}));
  CHECK_FALSE(one_dim_leaves_check(slice, 2));
  Ring one({"x"});
  CHECK(one_dim_leaves_check(ValuationContext::presentation(Ideal(one, {}), WeightMatrix::from_ints({{-1}})), 5));
}

TEST_CASE("property: rebuilding the weights from generator values keeps the valuation") {
  Ring r({"x", "y", "z"});
  struct Case {
    const char* gens[2];
    std::vector<std::vector<long>> m;
  };
  std::vector<Case> cases{{{"x - y^2", nullptr}, {{0, 1, 0}}},
                          {{"x*z - y^2", "x - z^3"}, {{0, 1, 1}}},
                          {{kElliptic, nullptr}, {{-1, -1, -1}, {-2, -3, 0}}}};
  std::mt19937_64 rng(17);
  for (const auto& c : cases) {
    std::vector<Polynomial> g;
    for (auto s : c.gens)
      if (s) g.push_back(parse_polynomial(s, r));
    Ideal I(r, g);
    auto ctx = ValuationContext::presentation(I, WeightMatrix::from_ints(c.m));
    auto rebuilt = ValuationContext::presentation(I, ctx.value_matrix());
    for (int i = 0; i < 20; ++i) {
      auto f = random_element(ctx, rng);
      CHECK(ctx.evaluate(f) == rebuilt.evaluate(f));
    }
  }
}

TEST_CASE("property: products of standard monomials keep an exact-value term") {
  auto ctx = elliptic();
  const auto& gb = ctx.gb();
  auto mons = gb.standard_monomials(2);
  for (const auto& a : mons)
    for (const auto& b : mons) {
      auto nf = gb.normal_form(Polynomial::monomial(ctx.ring(), a + b));
      auto target = ctx.weight(a + b);
      bool found = false;
      for (const auto& [e, c] : nf.terms()) found = found || ctx.weight(e) == target;
      CHECK(found);
    }
}

TEST_CASE("property: generators of the same prime cone give linearly related values") {
  auto ctx = elliptic();
  // Second row replaced by row2 + 2 row1: same cone, new generating set.
  Ring r({"x", "y", "z"});
  auto other = ValuationContext::presentation(ideal_of(r, {kElliptic}),
                                              WeightMatrix::from_ints({{-1, -1, -1}, {-4, -5, -2}}));
  CHECK(is_valuation(other).verdict == Verdict::Yes);
  // Fit L with L v(x_i) = v'(x_i) on the generator values.
  const auto& a = ctx.value_matrix();
  const auto& b = other.value_matrix();
  Mat rows;
  for (std::size_t k = 0; k < 2; ++k) {
    Mat sys;
    Vec rhs;
    for (std::size_t j = 0; j < 3; ++j) {
      sys.push_back(a.column(j));
      rhs.push_back(b(k, j));
    }
    auto sol = solve(sys, rhs, 2);
    REQUIRE(sol.has_value());
    rows.push_back(*sol);
  }
  CHECK(rank(rows, 2) == 2);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    auto f = random_element(ctx, rng);
    auto v = ctx.evaluate(f);
    Value mapped{dot(rows[0], v), dot(rows[1], v)};
    CHECK(mapped == other.evaluate(f));
  }
}

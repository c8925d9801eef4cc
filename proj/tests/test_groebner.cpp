#include <random>

#include "doctest.h"
#include "khova/errors.hpp"
#include "khova/groebner.hpp"
#include "khova/linear.hpp"
#include "random_poly.hpp"

using namespace khova;

namespace {

Ideal ideal_of(const Ring& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(parse_polynomial(s, r));
  return Ideal(r, g);
}

// Buchberger's criterion checked from scratch: every S-polynomial of the
// returned basis reduces to zero.
bool s_pairs_vanish(const GroebnerContext& gb) {
  const auto& b = gb.basis();
  const auto& ord = gb.working_order();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      auto ti = b[i].leading_term(ord), tj = b[j].leading_term(ord);
      auto l = ti.exponent.lcm(tj.exponent);
      auto s = b[i].times_monomial(l - ti.exponent, 1 / ti.coeff) -
               b[j].times_monomial(l - tj.exponent, 1 / tj.coeff);
      if (!gb.normal_form(s).is_zero()) return false;
    }
  return true;
}

// dim I_d by the rank of the degree-d Macaulay matrix, for homogeneous
// generators.
std::size_t macaulay_dim(const Ideal& ideal, std::int64_t d) {
  std::size_t n = ideal.ring().size();
  auto monos = monomials_of_degree(n, d);
  std::map<ExponentVector, std::size_t> col;
  for (std::size_t i = 0; i < monos.size(); ++i) col[monos[i]] = i;
  Mat rows;
  for (const auto& g : ideal.generators()) {
    auto gd = g.total_degree();
    if (gd > d) continue;
    for (const auto& m : monomials_of_degree(n, d - gd)) {
      Vec row(monos.size());
      for (const auto& [e, c] : g.terms()) row[col.at(e + m)] = c;
      rows.push_back(std::move(row));
    }
  }
  return rank(rows, monos.size());
}

}  // namespace

TEST_CASE("lex basis of a zero-dimensional system") {
  Ring r({"x", "y"});
  auto gb = buchberger(ideal_of(r, {"x^2 - y", "y^2 - x"}), MonomialOrder::lex());
  CHECK(gb.contains(parse_polynomial("y^4 - y", r)));
  CHECK(gb.basis().size() == 2);
  CHECK(to_string(gb.basis()[0]) == "-y^2 + x");
  CHECK(to_string(gb.basis()[1]) == "y^4 - y");
  CHECK(s_pairs_vanish(gb));
}

TEST_CASE("standard monomials of the elliptic cubic") {
  Ring r({"x", "y", "z"});
  auto gb = buchberger(ideal_of(r, {"y^2*z - x^3 + 7*x*z^2 - 2*z^3"}), MonomialOrder::degrevlex());
  CHECK(gb.standard_monomials_of_degree(1).size() == 3);
  CHECK(gb.standard_monomials_of_degree(2).size() == 6);
  CHECK(gb.standard_monomials_of_degree(3).size() == 9);
}

TEST_CASE("saturation") {
  Ring r({"x", "y"});
  auto sat = saturate(ideal_of(r, {"x*y"}), parse_polynomial("y", r));
  CHECK(ideal_equal(sat, ideal_of(r, {"x"})));
  auto one = saturate(ideal_of(r, {"x^2"}), parse_polynomial("x", r));
  CHECK(ideal_equal(one, ideal_of(r, {"1"})));
  Ring e({"x", "y", "z"});
  auto ell = ideal_of(e, {"y^2*z - x^3 + 7*x*z^2 - 2*z^3"});
  CHECK(ideal_equal(saturate(ell, parse_polynomial("x*y*z", e)), ell));
}

TEST_CASE("homogenize and dehomogenize") {
  Ring r({"x", "y"});
  auto h = homogenize(ideal_of(r, {"x^2 - y"}));
  CHECK(h.ring().names() == std::vector<std::string>{"x0", "x", "y"});
  CHECK(ideal_equal(h, ideal_of(h.ring(), {"x^2 - y*x0"})));
  CHECK(ideal_equal(dehomogenize(h, 0), ideal_of(r, {"x^2 - y"})));
  Ring clash({"x0", "y"});
  auto h2 = homogenize(ideal_of(clash, {"x0 - y^2"}));
  CHECK(h2.ring().name(0) == "x0_");
}

TEST_CASE("elimination") {
  Ring r({"t", "x", "y"});
  auto el = eliminate(ideal_of(r, {"x - t^2", "y - t^3"}), {false, true, true});
  Ring s({"x", "y"});
  CHECK(el.ring().names() == s.names());
  CHECK(el.generators().size() == 1);
  CHECK(to_string(el.generators()[0]) == "x^3 - y^2");
}

TEST_CASE("ideal equality and unit ideal") {
  Ring r({"x", "y"});
  CHECK(ideal_equal(ideal_of(r, {"x", "y"}), ideal_of(r, {"x + y", "x - y"})));
  CHECK_FALSE(ideal_equal(ideal_of(r, {"x"}), ideal_of(r, {"y"})));
  auto gb = buchberger(ideal_of(r, {"x", "x - 1"}), MonomialOrder::degrevlex());
  CHECK(gb.is_unit());
  auto zero = buchberger(Ideal(r, {}), MonomialOrder::lex());
  CHECK(zero.basis().empty());
  CHECK(zero.standard_monomials_of_degree(3).size() == 4);
}

TEST_CASE("composite orders outside the well-ordered region") {
  Ring r({"x", "y"});
  auto m = WeightMatrix::from_ints({{1, 3}});
  auto ord = MonomialOrder::composite(m, MonomialOrder::degrevlex());
  CHECK_FALSE(ord.is_well_ordered());
  // Homogeneous for deg x = 1, deg y = 2.
  auto gb = buchberger(ideal_of(r, {"x^2 - y"}), ord);
  CHECK(gb.leading_monomials()[0] == ExponentVector{2, 0});
  CHECK(gb.working_order().is_well_ordered());
  // No positive grading: rejected.
  CHECK_THROWS_AS(buchberger(ideal_of(r, {"x^2 - y - 1"}), ord), PreconditionError);
}

TEST_CASE("positive grading and homogeneity space") {
  Ring r({"x", "y", "z"});
  auto w = positive_grading(ideal_of(r, {"x^2 - y", "y*z - x^2*z"}));
  REQUIRE(w);
  CHECK(*w == std::vector<Rational>{1, 2, 1});
  CHECK_FALSE(positive_grading(ideal_of(r, {"x - 1"})));
}

TEST_CASE("caps raise CapExceeded") {
  Ring r({"x", "y", "z"});
  auto id = ideal_of(r, {"x^3 - y*z", "y^3 - x*z", "z^3 - x*y + 1"});
  GroebnerOptions tight;
  tight.caps.max_pairs = 2;
  CHECK_THROWS_AS(buchberger(id, MonomialOrder::lex(), tight), CapExceeded);
  GroebnerOptions shallow;
  shallow.caps.max_degree = 3;
  CHECK_THROWS_AS(buchberger(id, MonomialOrder::lex(), shallow), CapExceeded);
}

TEST_CASE("property: serial and parallel bases coincide and satisfy the S-pair criterion") {
  std::mt19937_64 rng(2024);
  Ring r({"a", "b", "c", "d"});
  GroebnerOptions par;
  par.strategy = Strategy::Parallel;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(testing::random_polynomial(rng, r, 3, 3, true));
    Ideal id(r, gens);
    auto ord = trial % 2 ? MonomialOrder::lex() : MonomialOrder::degrevlex();
    auto a = buchberger(id, ord);
    auto b = buchberger(id, ord, par);
    CHECK(a.basis() == b.basis());
    CHECK(s_pairs_vanish(a));
    for (const auto& g : gens) CHECK(a.contains(g));
  }
}

TEST_CASE("property: Hilbert function from standard monomials matches Macaulay matrix rank") {
  std::mt19937_64 rng(99);
  Ring r({"x", "y", "z"});
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 2; ++k) gens.push_back(testing::random_homogeneous(rng, r, 3, 2 + k));
    Ideal id(r, gens);
    auto gb = buchberger(id, MonomialOrder::degrevlex());
    for (int d = 0; d <= 5; ++d) {
      auto total = monomials_of_degree(3, d).size();
      CHECK(gb.standard_monomials_of_degree(d).size() == total - macaulay_dim(id, d));
    }
  }
}

TEST_CASE("normal form under the MIN-composite order") {
  Ring r({"x", "y", "z"});
  auto m = WeightMatrix::from_ints({{-1, -1, -1}, {-2, -3, 0}});
  auto gb = buchberger(ideal_of(r, {"y^2*z - x^3"}), MonomialOrder::composite(m, MonomialOrder::degrevlex()));
  CHECK(gb.leading_monomials()[0] == ExponentVector{3, 0, 0});
  CHECK(gb.normal_form(parse_polynomial("x^3", r)) == parse_polynomial("y^2*z", r));
  auto drl = buchberger(ideal_of(r, {"y^2*z - x^3"}), MonomialOrder::degrevlex());
  // Degrevlex also leads with x^3 (y^2*z carries the last variable).
  CHECK(drl.normal_form(parse_polynomial("x^3", r)) == parse_polynomial("y^2*z", r));
}

TEST_CASE("Pluecker relation is its own basis") {
  Ring r({"p12", "p13", "p14", "p23", "p24", "p34"});
  auto gb = buchberger(ideal_of(r, {"p12*p34 - p13*p24 + p14*p23"}), MonomialOrder::degrevlex());
  CHECK(gb.basis().size() == 1);
}

TEST_CASE("elimination soundness by substitution") {
  Ring r({"x", "y"});
  auto id = ideal_of(r, {"x^2 - y", "y^2 - x"});
  auto el = eliminate(id, {false, true});
  REQUIRE(el.generators().size() == 1);
  const auto& g = el.generators()[0];
  Ring empty(std::vector<std::string>{});
  for (long y0 : {0, 1}) CHECK(g.specialize(0, y0, empty).is_zero());
  CHECK_FALSE(g.specialize(0, 2, empty).is_zero());
  // (x, y) = (y^2, y) is then a common zero of the original generators.
  Ring y({"y"});
  for (long y0 : {0, 1})
    for (const auto& f : id.generators()) {
      auto at = f.substitute({Polynomial::constant(r, y0 * y0), Polynomial::constant(r, y0)});
      CHECK(at.is_zero());
    }
}

TEST_CASE("intersection and colon ideals") {
  Ring r({"x", "y"});
  CHECK(ideal_equal(intersect(ideal_of(r, {"x"}), ideal_of(r, {"y"})), ideal_of(r, {"x*y"})));
  CHECK(ideal_equal(intersect(ideal_of(r, {"x^2", "y"}), ideal_of(r, {"x", "y^2"})), ideal_of(r, {"x^2", "x*y", "y^2"})));
  CHECK(intersect(Ideal(r, {}), ideal_of(r, {"x"})).is_zero());
  CHECK(ideal_equal(quotient(ideal_of(r, {"x*y"}), parse_polynomial("x", r)), ideal_of(r, {"y"})));
  CHECK(ideal_equal(quotient(ideal_of(r, {"x^2", "x*y"}), parse_polynomial("x", r)), ideal_of(r, {"x", "y"})));
  CHECK(ideal_equal(quotient(ideal_of(r, {"x^2 - y"}), parse_polynomial("x", r)), ideal_of(r, {"x^2 - y"})));
}

TEST_CASE("order matrices reproduce the orders") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> ex(0, 4), ent(-3, 0);
  auto lexwise = [](const RankVector& a, const RankVector& b) { return lex_compare(a, b); };
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::vector<long>> rows(2, std::vector<long>(3));
    for (auto& row : rows)
      for (auto& x : row) x = ent(rng);
    std::vector<MonomialOrder> orders = {MonomialOrder::lex(), MonomialOrder::degrevlex(),
                                         MonomialOrder::composite(WeightMatrix::from_ints(rows), MonomialOrder::degrevlex())};
    ExponentVector a{ex(rng), ex(rng), ex(rng)}, b{ex(rng), ex(rng), ex(rng)};
    for (const auto& ord : orders) {
      auto a_mat = order_matrix(ord, 3);
      CHECK((ord.compare(a, b) > 0) == (lexwise(a_mat.apply(a), a_mat.apply(b)) > 0));
      CHECK((ord.compare(a, b) < 0) == (lexwise(a_mat.apply(a), a_mat.apply(b)) < 0));
    }
  }
}

TEST_CASE("property: normal forms are idempotent and bases ignore generator order") {
  std::mt19937_64 rng(31);
  Ring r({"x", "y", "z"});
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Polynomial> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(testing::random_polynomial(rng, r, 3, 3, true));
    auto ord = trial % 2 ? MonomialOrder::lex() : MonomialOrder::degrevlex();
    auto gb = buchberger(Ideal(r, gens), ord);
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(buchberger(Ideal(r, shuffled), ord).basis() == gb.basis());
    auto f = testing::random_polynomial(rng, r, 5, 4, true);
    auto g = testing::random_polynomial(rng, r, 5, 4, true);
    auto nf = gb.normal_form(f);
    CHECK(gb.normal_form(nf) == nf);
    CHECK(gb.normal_form(f + g) == nf + gb.normal_form(g));
    CHECK(gb.contains(f - nf));
    for (const auto& [e, c] : nf.terms()) CHECK(gb.is_standard(e));
  }
}

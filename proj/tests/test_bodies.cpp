#include <algorithm>
#include <set>

#include "doctest.h"
#include "khova/bodies.hpp"
#include "khova/errors.hpp"

using namespace khova;

namespace {

Ideal ideal_of(const Ring& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(parse_polynomial(s, r));
  return Ideal(r, g);
}

Vec vec(std::initializer_list<Rational> xs) { return Vec(xs); }

const char* kElliptic = "y^2*z - x^3 + 7*x*z^2 - 2*z^3";
const char* kPlucker = "p12*p34 - p13*p24 + p14*p23";

ValuationContext elliptic() {
  Ring r({"x", "y", "z"});
  return ValuationContext::presentation(ideal_of(r, {kElliptic}), WeightMatrix::from_ints({{-1, -1, -1}, {-2, -3, 0}}));
}

Ring plucker_ring() { return Ring({"p12", "p13", "p14", "p23", "p24", "p34"}); }

// Vertices of {x : a.x >= b} by brute force: solve every square subsystem
// and keep the feasible solutions.
std::set<Vec> brute_force_vertices(const std::vector<LinearInequality>& system, std::size_t dim) {
  std::set<Vec> out;
  std::vector<bool> pick(system.size(), false);
  std::fill(pick.end() - static_cast<long>(dim), pick.end(), true);
  do {
    Mat a;
    Vec b;
    for (std::size_t i = 0; i < system.size(); ++i)
      if (pick[i]) {
        a.push_back(system[i].a);
        b.push_back(system[i].b);
      }
    if (rank(a, dim) < dim) continue;
    auto x = solve(a, b, dim);
    if (!x) continue;
    bool feasible = std::all_of(system.begin(), system.end(), [&](const LinearInequality& q) {
      return dot(q.a, *x) >= q.b;
    });
    if (feasible) out.insert(*x);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

Rational binom(long n, long k) {
  if (k < 0 || n < k) return 0;
  Rational r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("Newton-Okounkov cone and body of the elliptic cubic") {
  auto ctx = elliptic();
  auto cone = newton_okounkov_cone(ctx);
  CHECK(cone.rays == Mat{vec({-1, -3}), vec({-1, 0})});
  CHECK(cone.vertices == Mat{vec({0, 0})});
  CHECK(representations_agree(cone));

  auto deg = body_degree(ctx);
  CHECK(deg.body.vertices == Mat{vec({-3}), vec({0})});
  CHECK(deg.dimension == 1);
  CHECK(deg.volume == 3);
  CHECK(deg.degree == 3);
  CHECK(representations_agree(deg.body));
}

TEST_CASE("bodies of a single generator") {
  Ring r({"x"});
  auto ctx = ValuationContext::presentation(Ideal(r, {}), WeightMatrix::from_ints({{-1}}));
  auto cone = newton_okounkov_cone(ctx);
  CHECK(cone.rays == Mat{vec({-1})});
  auto deg = body_degree(ctx);
  CHECK(deg.body.dim == 0);
  CHECK(deg.body.vertices.size() == 1);
  CHECK(deg.dimension == 0);
  CHECK(deg.degree == 1);
  auto hat = hat_polytope(ctx, vec({-1}));
  CHECK(hat.vertices == Mat{vec({0}), vec({1})});
}

TEST_CASE("Grassmannian Gr(2,4) bodies") {
  Ring p = plucker_ring();
  auto gr = ideal_of(p, {kPlucker});
  // Weight 1 on p14 with a degree row.
  auto rank2 = ValuationContext::presentation(gr, WeightMatrix::from_ints({{-1, -1, -1, -1, -1, -1}, {0, 0, 1, 0, 0, 0}}));
  CHECK(ideal_equal(rank2.initial_ideal(), ideal_of(p, {"p12*p34 - p13*p24"})));
  auto v = is_valuation(rank2);
  CHECK(v.verdict == Verdict::Yes);
  CHECK(v.certificate.method == "toric");
  auto cone = newton_okounkov_cone(rank2);
  CHECK(cone.affine_dimension() == 2);
  CHECK(cone.rays == Mat{vec({-1, 0}), vec({-1, 1})});
  auto body = newton_okounkov_body(rank2);
  CHECK(body.vertices == Mat{vec({0}), vec({1})});

  // Full rank: rows span the weights that tie p12 p34 with p13 p24.
  auto full = ValuationContext::presentation(gr, WeightMatrix::from_ints({{-1, -1, -1, -1, -1, -1},
                                                                           {0, 0, 1, 0, 0, 0},
                                                                           {1, 1, 0, 0, 0, 0},
                                                                           {1, 0, 0, 0, 1, 0},
                                                                           {0, 0, 0, 1, 0, 0}}));
  CHECK(is_valuation(full).verdict == Verdict::Yes);
  CHECK(one_dim_leaves_check(full, 3));
  auto deg = body_degree(full);
  CHECK(deg.dimension == 4);
  CHECK(deg.degree == 2);
  CHECK(representations_agree(deg.body));

  // Hilbert function of the Plucker quadric: (i+1)(i+2)^2(i+3)/12, leading
  // coefficient 2/4!.
  auto h = hilbert_function(full, 6);
  for (long i = 0; i <= 6; ++i) CHECK(static_cast<long>(h[i]) == (i + 1) * (i + 2) * (i + 2) * (i + 3) / 12);
  CHECK(h[1] == 6);
  CHECK(h[2] == 20);
}

TEST_CASE("Hilbert functions") {
  auto ctx = elliptic();
  auto h = hilbert_function(ctx, 8);
  // Plane cubic: C(i+2,2) - C(i-1,2).
  for (long i = 0; i <= 8; ++i) CHECK(Rational(static_cast<long>(h[i])) == binom(i + 2, 2) - binom(i - 1, 2));
  auto s = value_semigroup(ctx);
  CHECK(one_dim_leaves_check(ctx, 8));
  for (std::size_t i = 1; i <= 8; ++i) {
    CHECK(h[i] == 3 * i);
    CHECK(s.level(i).size() == h[i]);
  }

  Ring r({"x", "y"});
  auto free = ValuationContext::presentation(Ideal(r, {}), WeightMatrix::from_ints({{-1, -1}, {0, -1}}));
  auto hf = hilbert_function(free, 5);
  for (std::size_t i = 0; i <= 5; ++i) CHECK(hf[i] == i + 1);

  auto inhom = ValuationContext::presentation(ideal_of(r, {"x^2 - y"}), WeightMatrix::from_ints({{1, 2}}));
  CHECK_THROWS_AS(hilbert_function(inhom, 3), PreconditionError);
}

TEST_CASE("compactification body of the elliptic cubic") {
  auto ctx = elliptic();
  Vec delta = default_delta(ctx);
  CHECK(delta == vec({-1, -1}));
  auto body = compactification_body(ctx, delta);
  CHECK(body.is_bounded());
  CHECK(representations_agree(body));
  std::set<Vec> got(body.vertices.begin(), body.vertices.end());
  std::set<Vec> expected{vec({0, 0}), vec({-1, -1}), vec({Rational(-1, 3), -1}), vec({-1, 0})};
  CHECK(got == expected);
  // Halfspace oracle: r <= 0, r >= delta, b >= 3a.
  std::vector<LinearInequality> sys{{vec({-1, 0}), 0}, {vec({0, -1}), 0}, {vec({1, 0}), -1}, {vec({0, 1}), -1},
                                    {vec({-3, 1}), 0}};
  CHECK(brute_force_vertices(sys, 2) == got);

  CHECK_THROWS_AS(compactification_body(ctx, vec({-1, 0})), PreconditionError);
  CHECK_THROWS_AS(compactification_body(ctx, vec({-1, -3})), PreconditionError);
  CHECK_THROWS_AS(compactification_body(ctx, vec({1, 1})), PreconditionError);

  // Cone homogeneity: scaling delta scales the body.
  for (long n = 1; n <= 4; ++n) {
    Vec nd{Rational(-n), Rational(-n)};
    auto scaled = compactification_body(ctx, nd);
    Mat pts;
    for (const auto& v : body.vertices) pts.push_back(vec({v[0] * n, v[1] * n}));
    CHECK(same_set(scaled, Polyhedron::from_generators(2, pts)));
  }

  // Level -1 slice: the body clipped at delta.
  auto nob = newton_okounkov_body(ctx);
  std::vector<LinearInequality> slice_sys = body.inequalities;
  slice_sys.push_back({vec({1, 0}), -1});
  slice_sys.push_back({vec({-1, 0}), 1});
  auto slice = Polyhedron::from_inequalities(2, slice_sys);
  std::set<Vec> slice_pts(slice.vertices.begin(), slice.vertices.end());
  CHECK(slice_pts == std::set<Vec>{vec({-1, -1}), vec({-1, 0})});
  for (const auto& v : slice.vertices) CHECK(nob.contains(vec({v[1]})));

  auto s = value_semigroup(ctx);
  CHECK(compactification_contains(s, 1, vec({-1, 0}), delta));
  CHECK_FALSE(compactification_contains(s, 1, vec({-2, -4}), delta));
  CHECK(compactification_contains(s, 4, vec({-2, -4}), delta));
  CHECK_FALSE(compactification_contains(s, 4, vec({-1, -1}), delta));
}

TEST_CASE("hat polytope of the elliptic cubic") {
  auto ctx = elliptic();
  auto hat = hat_polytope(ctx, vec({-1, -1}));
  CHECK(hat.is_bounded());
  CHECK(representations_agree(hat));
  CHECK(std::find(hat.vertices.begin(), hat.vertices.end(), vec({0, 0, 0})) != hat.vertices.end());
  std::vector<LinearInequality> sys{{vec({1, 0, 0}), 0},    {vec({0, 1, 0}), 0},   {vec({0, 0, 1}), 0},
                                    {vec({-1, -1, -1}), -1}, {vec({-2, -3, 0}), -1}};
  std::set<Vec> got(hat.vertices.begin(), hat.vertices.end());
  CHECK(brute_force_vertices(sys, 3) == got);
  CHECK(hat.contains(vec({0, 0, 1})));
  CHECK(hat.contains(vec({Rational(1, 2), 0, Rational(1, 2)})));
  CHECK_FALSE(hat.contains(vec({Rational(1, 2), Rational(1, 3), 0})));
}

TEST_CASE("Rees graded dimensions") {
  auto ctx = elliptic();
  auto h = hilbert_function(ctx, 4);
  auto point = rees_graded_dims(ctx, {0, 1}, {vec({-1, -2})}, 4);
  REQUIRE(point.rows.size() == 1);
  CHECK(point.rows[0].w == std::vector<std::size_t>{0, 1, 0, 0, 0});

  auto none = rees_graded_dims(ctx, {}, {}, 4);
  REQUIRE(none.rows.size() == 1);
  CHECK(none.rows[0].w == h);
  CHECK(none.rows[0].f == h);

  for (std::vector<std::size_t> sigma : {std::vector<std::size_t>{0, 1}, {1}, {0}}) {
    auto table = rees_graded_dims(ctx, sigma, {}, 4);
    for (std::size_t i = 0; i <= 4; ++i) {
      std::size_t sum = 0;
      for (const auto& row : table.rows) {
        sum += row.w[i];
        CHECK(row.f[i] >= row.w[i]);
      }
      CHECK(sum == h[i]);
    }
  }

  // F counts every standard monomial whose second value is at least -3.
  auto f = rees_graded_dims(ctx, {1}, {vec({-3})}, 1);
  CHECK(f.rows[0].f == std::vector<std::size_t>{1, 3});
  CHECK(f.rows[0].w == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(rees_graded_dims(ctx, {2}, {}, 2), PreconditionError);
  CHECK_THROWS_AS(rees_graded_dims(ctx, {}, {}, 4, 10), CapExceeded);
}

TEST_CASE("non-Khovanskii contexts are rejected") {
  Ring r({"x", "y"});
  auto ctx = ValuationContext::presentation(ideal_of(r, {"x - y^2"}), WeightMatrix::from_ints({{0, 1}}));
  CHECK_THROWS_AS(newton_okounkov_cone(ctx), PreconditionError);
  CHECK_THROWS_AS(newton_okounkov_body(ctx), PreconditionError);
}

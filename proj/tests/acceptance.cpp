// Acceptance run: one PASS/FAIL line per criterion. Exit status 1 if any
// check fails other than the known-unattainable ones below.
#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "khova/bodies.hpp"
#include "khova/errors.hpp"
#include "khova/initial.hpp"
#include "khova/tropical.hpp"
#include "khova/valuation.hpp"
#include "random_poly.hpp"

using namespace khova;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Collects failed checks with a short label; the first few are printed.
struct Checker {
  std::vector<std::string> failures;
  std::size_t checks = 0;
  std::size_t known = 0;  // failures listed in kUnattainable
  void operator()(bool ok, const std::string& what);
};

// Checks kept exactly as stated although no correct implementation can pass
// them. The ray (0,1,0) picks the weight-0 terms -x^3 + 7xz^2 - 2z^3 of the
// cubic; the stated form x^3 + 7xz^2 - 2z^3 differs in the sign of x^3 only,
// so it is not a scalar multiple. These still print FAIL but do not change
// the exit status.
const std::vector<std::string> kUnattainable{"initial form x^3 + 7*x*z^2 - 2*z^3"};

void Checker::operator()(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  failures.push_back(what);
  for (const auto& u : kUnattainable)
    if (what.rfind(u, 0) == 0) ++known;
}

Vec vec(std::initializer_list<long> xs) {
  Vec v;
  for (auto x : xs) v.push_back(Rational(x));
  return v;
}

Ideal ideal_of(const Ring& r, const std::vector<std::string>& gens) {
  std::vector<Polynomial> ps;
  for (const auto& g : gens) ps.push_back(parse_polynomial(g, r));
  return Ideal(r, ps);
}

const char* kElliptic = "y^2*z - x^3 + 7*x*z^2 - 2*z^3";

Ideal elliptic_ideal() { return ideal_of(Ring({"x", "y", "z"}), {kElliptic}); }

ValuationContext elliptic() {
  return ValuationContext::presentation(elliptic_ideal(), WeightMatrix::from_ints({{-1, -1, -1}, {-2, -3, 0}}));
}

bool same_span(Mat a, Mat b, std::size_t n) {
  std::size_t ra = rank(a, n), rb = rank(b, n);
  Mat both = a;
  both.insert(both.end(), b.begin(), b.end());
  return ra == rb && rank(both, n) == ra;
}

// ---- randomized corpus shared by criteria 3 and 4 --------------------------

struct Sample {
  Ideal ideal;
  WeightMatrix m;
};

std::vector<Sample> corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> nv(1, 4), ng(1, 2), nr(1, 3), nt(1, 4);
  std::uniform_int_distribution<int> deg(1, 3), entry(-3, 3);
  std::vector<Sample> out;
  while (out.size() < count) {
    std::size_t n = nv(rng);
    std::vector<std::string> names;
    for (std::size_t j = 0; j < n; ++j) names.push_back("x" + std::to_string(j + 1));
    Ring r(names);
    std::vector<Polynomial> gens;
    std::size_t k = ng(rng);
    for (std::size_t i = 0; i < k; ++i) {
      auto p = testing::random_homogeneous(rng, r, static_cast<int>(nt(rng)), deg(rng));
      if (!p.is_zero()) gens.push_back(p);
    }
    if (gens.empty()) continue;
    std::size_t rows = nr(rng);
    WeightMatrix m(rows, n);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(rng);
    out.push_back({Ideal(r, gens), m});
  }
  return out;
}

// ---- criteria -----------------------------------------------------------

void criterion1(Checker& c) {
  auto start = Clock::now();
  auto I = elliptic_ideal();
  const Ring& r = I.ring();
  c(same_span(lineality_space(I), {vec({1, 1, 1})}, 3), "lineality space is span{(1,1,1)}");

  struct RayForm {
    Vec ray;
    const char* form;
  };
  std::vector<RayForm> forms{{vec({1, 0, 0}), "y^2*z - 2*z^3"},
                             {vec({0, 1, 0}), "x^3 + 7*x*z^2 - 2*z^3"},
                             {vec({-2, -3, 0}), "y^2*z - x^3"}};
  for (const auto& f : forms) {
    auto in = initial_ideal(I, WeightMatrix({f.ray}));
    // A principal ideal determines its generator up to a nonzero scalar.
    c(ideal_equal(in, ideal_of(r, {f.form})),
      std::string("initial form ") + f.form + " (computed: " + to_string(canonical(in).generators()[0]) + ")");
  }

  Mat lin{vec({1, 1, 1})};
  auto prime = verify_prime_cone({vec({-2, -3, 0})}, lin, I);
  c(prime.samples_agree && prime.monomial_free, "ray (-2,-3,0) is monomial-free");
  c(prime.primality.verdict == Primality::Prime, "ray (-2,-3,0) is Prime");
  c(replay_certificate(prime.primality), "Prime certificate replays");
  for (const auto& ray : {vec({1, 0, 0}), vec({0, 1, 0})}) {
    auto rep = verify_prime_cone({ray}, lin, I);
    c(rep.primality.verdict == Primality::NotPrime, "side ray is NotPrime");
    c(rep.primality.zero_divisor.has_value() || rep.primality.splitting.has_value(), "NotPrime carries a witness");
    c(replay_certificate(rep.primality), "NotPrime witness replays");
  }

  auto ctx = elliptic();
  c(ctx.evaluate(Polynomial::variable(r, 0)) == vec({-1, -2}), "v(x) = (-1,-2)");
  c(ctx.evaluate(Polynomial::variable(r, 1)) == vec({-1, -3}), "v(y) = (-1,-3)");
  c(ctx.evaluate(Polynomial::variable(r, 2)) == vec({-1, 0}), "v(z) = (-1,0)");

  auto bd = body_degree(ctx);
  c(bd.body.vertices == Mat{vec({-3}), vec({0})} && bd.body.is_bounded(), "body is [-3,0]");
  c(bd.volume == 3 && bd.degree == 3, "volume 3, degree 3");
  double secs = seconds_since(start);
  c(secs < 5.0, "runtime under 5 s (" + std::to_string(secs) + " s)");
}

void criterion2(Checker& c) {
  auto start = Clock::now();
  Ring r({"x", "y"});
  auto I = ideal_of(r, {"x^2 - y"});
  auto good = ValuationContext::presentation(I, WeightMatrix::from_ints({{1, 2}}));
  c(ideal_equal(good.initial_ideal(), I), "M=[[1,2]]: in_M(I) = I");
  c(is_valuation(good).verdict == Verdict::Yes, "M=[[1,2]]: valuation");

  auto bad = ValuationContext::presentation(I, WeightMatrix::from_ints({{1, 3}}));
  c(ideal_equal(bad.initial_ideal(), ideal_of(r, {"x^2"})), "M=[[1,3]]: in_M(I) = <x^2>");
  c(is_valuation(bad).verdict == Verdict::No, "M=[[1,3]]: not a valuation");
  auto axioms = quasivaluation_axioms_check(bad, 20);
  c(axioms.violations.empty(), "quasivaluation axioms hold");
  auto x = Polynomial::variable(r, 0);
  bool found = std::any_of(axioms.strict_witnesses.begin(), axioms.strict_witnesses.end(), [&](const auto& w) {
    return w.f == x && w.g == x && w.product == vec({3}) && w.sum == vec({2});
  });
  c(found, "strict witness v(x^2) = 3 > 2");
  double secs = seconds_since(start);
  c(secs < 1.0, "runtime under 1 s (" + std::to_string(secs) + " s)");
}

void criterion3(Checker& c, const std::vector<Sample>& samples) {
  auto start = Clock::now();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    std::vector<Vec> rows(s.m.row_data().begin(), s.m.row_data().end());
    bool ok = false;
    try {
      ok = ideal_equal(initial_ideal(s.ideal, s.m), iterated_initial_ideal(s.ideal, rows));
    } catch (const Error& e) {
      c(false, "sample " + std::to_string(k) + " threw: " + e.what());
      continue;
    }
    c(ok, "sample " + std::to_string(k) + ": in_M(I) != iterated");
  }
  double secs = seconds_since(start);
  c(secs < 60.0, "runtime under 60 s (" + std::to_string(secs) + " s)");
}

void criterion4(Checker& c, const std::vector<Sample>& samples, std::size_t& undefined) {
  std::mt19937_64 rng(4);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& s = samples[k];
    std::string tag = "sample " + std::to_string(k) + ": ";
    // iota is undefined when a variable lies in I; such samples carry no law.
    bool var_in_ideal = false;
    auto gb = buchberger(s.ideal, MonomialOrder::degrevlex());
    for (std::size_t i = 0; i < s.ideal.ring().size(); ++i)
      var_in_ideal = var_in_ideal || gb.contains(Polynomial::variable(s.ideal.ring(), i));
    if (var_in_ideal) {
      ++undefined;
      bool refused = false;
      try {
        contraction(s.m, s.ideal);
      } catch (const PreconditionError&) {
        refused = true;
      }
      c(refused, tag + "iota accepted an ideal containing a variable");
      continue;
    }
    try {
      auto iota = contraction(s.m, s.ideal);
      c(contraction(iota, s.ideal) == iota, tag + "iota not idempotent");
      if (in_tropical_variety_rank_r(s.m, s.ideal)) c(iota == s.m, tag + "iota moves a tropical M");
      auto ctx_m = ValuationContext::presentation(s.ideal, s.m);
      auto ctx_i = ValuationContext::presentation(s.ideal, iota);
      bool agree = true;
      for (int t = 0; t < 50; ++t) {
        auto f = random_element(ctx_m, rng);
        agree = agree && ctx_m.evaluate(f) == ctx_i.evaluate(f);
      }
      c(agree, tag + "evaluate differs under M and iota(M)");
    } catch (const Error& e) {
      c(false, tag + "threw: " + e.what());
    }
  }
}

void criterion5(Checker& c) {
  c(khovanskii_test(elliptic()).is_khovanskii, "elliptic presentation is Khovanskii");
  Ring r2({"x", "y"});
  auto sym2 = ValuationContext::sagbi({parse_polynomial("x + y", r2), parse_polynomial("x*y", r2)});
  c(khovanskii_test(sym2).is_khovanskii, "symmetric n=2 is a SAGBI basis");
  Ring r3({"x", "y", "z"});
  auto sym3 = ValuationContext::sagbi({parse_polynomial("x + y + z", r3), parse_polynomial("x*y + x*z + y*z", r3),
                                       parse_polynomial("x*y*z", r3)});
  c(khovanskii_test(sym3).is_khovanskii, "symmetric n=3 is a SAGBI basis");

  // e1, e2 with the redundant e1^2 e2, and the power sums p1, p2.
  std::vector<std::vector<std::string>> inputs{{"x + y", "x*y", "(x + y)^2*x*y"}, {"x + y", "x^2 + y^2"}};
  for (const auto& in : inputs) {
    std::vector<Polynomial> gens;
    for (const auto& g : in) gens.push_back(parse_polynomial(g, r2));
    auto res = khovanskii_complete(ValuationContext::sagbi(gens), 2);
    c(res.complete && res.rounds <= 2, "completion of {" + in[0] + ", ...} stabilizes in <= 2 rounds");
  }

  Ring g({"x3", "x2", "x1"});
  std::vector<Polynomial> goebel;
  for (const char* s : {"x1 + x2 + x3", "x1*x2 + x1*x3 + x2*x3", "x1*x2*x3", "x1^2*x2 + x2^2*x3 + x3^2*x1"})
    goebel.push_back(parse_polynomial(s, g));
  auto gctx = ValuationContext::sagbi(goebel);
  c(!khovanskii_test(gctx).is_khovanskii, "Goebel generators are not a SAGBI basis");
  auto res = khovanskii_complete(gctx, 6);
  c(!res.complete && res.capped && res.stop_reason == "round cap reached", "Goebel completion exceeds round_cap 6");
  bool growing = res.value_counts.size() == 6;
  for (std::size_t i = 1; i < res.value_counts.size(); ++i) growing = growing && res.value_counts[i] > res.value_counts[i - 1];
  c(growing, "Goebel value set grows strictly in every round");
}

void criterion6(Checker& c) {
  Ring r({"x"});
  auto ctx = ValuationContext::sagbi({parse_polynomial("x + x^2", r)});
  const std::size_t cap = 40;
  auto t = subduction(Polynomial::variable(r, 0), ctx, cap);
  c(t.outcome == SubductionTrace::Outcome::CapExceeded, "subduction of x hits the cap");
  c(t.steps.size() == cap, "every allowed step was taken");
  bool increasing = !t.steps.empty();
  for (std::size_t i = 1; i < t.steps.size(); ++i)
    increasing = increasing && lex_compare(t.steps[i].value, t.steps[i - 1].value) > 0;
  c(increasing, "values strictly increase at every step");
}

void criterion7(Checker& c) {
  auto ctx = elliptic();
  auto h = hilbert_function(ctx, 8);
  for (std::size_t i = 1; i <= 8; ++i) c(h[i] == 3 * i, "H(" + std::to_string(i) + ") = 3i");
  auto sg = value_semigroup(ctx);
  for (std::size_t i = 1; i <= 8; ++i)
    c(sg.level(i).size() == h[i], "level count " + std::to_string(i) + " equals H(i)");
  c(one_dim_leaves_check(ctx, 8), "one-dimensional leaves through degree 8");
  auto bd = body_degree(ctx);
  for (std::size_t i = 1; i <= 8; ++i) {
    Rational ratio(static_cast<long>(h[i]), static_cast<long>(i));
    ratio.canonicalize();
    c(ratio == bd.volume && bd.volume == 3, "H(i)/i = vol = 3");
  }
}

// Dimension of the degree-d part of k[x]/I from the span of x^a * g.
std::size_t brute_force_hilbert(const Ideal& I, std::int64_t d) {
  std::size_t n = I.ring().size();
  auto monos = monomials_of_degree(n, d);
  std::map<ExponentVector, std::size_t> index;
  for (std::size_t k = 0; k < monos.size(); ++k) index[monos[k]] = k;
  Mat rows;
  for (const auto& g : I.generators()) {
    std::int64_t gd = g.total_degree();
    if (gd > d) continue;
    for (const auto& a : monomials_of_degree(n, d - gd)) {
      Vec row(monos.size());
      for (const auto& [e, coeff] : g.terms()) row[index.at(e + a)] = coeff;
      rows.push_back(std::move(row));
    }
  }
  return monos.size() - rank(rows, monos.size());
}

void criterion8(Checker& c) {
  Ring r({"p12", "p13", "p14", "p23", "p24", "p34"});
  auto I = ideal_of(r, {"p12*p34 - p13*p24 + p14*p23"});
  auto in = initial_ideal(I, WeightMatrix::from_ints({{0, 0, 1, 0, 0, 0}}));
  c(ideal_equal(in, ideal_of(r, {"p12*p34 - p13*p24"})), "in_u(I) = <p12 p34 - p13 p24>");
  auto cert = is_prime_desk(in);
  c(cert.verdict == Primality::Prime && !cert.lattice_invariants.empty(), "toric Prime certificate");
  c(replay_certificate(cert), "certificate replays");
  auto ctx = ValuationContext::presentation(I, WeightMatrix::from_ints({{-1, -1, -1, -1, -1, -1}, {0, 0, 1, 0, 0, 0}}));
  auto h = hilbert_function(ctx, 2);
  c(h[1] == 6 && h[2] == 20, "H(1) = 6, H(2) = 20");
  c(h[1] == brute_force_hilbert(I, 1) && h[2] == brute_force_hilbert(I, 2), "standard monomials match brute force");
}

bool has_vertex(const Polyhedron& p, const Vec& v) {
  return std::find(p.vertices.begin(), p.vertices.end(), v) != p.vertices.end();
}

Polyhedron scaled(const Polyhedron& p, long n) {
  Mat pts;
  for (auto v : p.vertices) {
    for (auto& x : v) x *= n;
    pts.push_back(v);
  }
  return Polyhedron::from_generators(p.dim, pts);
}

void criterion9(Checker& c) {
  auto ctx = elliptic();
  Vec delta = vec({-1, -1});
  auto body = compactification_body(ctx, delta);
  auto hat = hat_polytope(ctx, delta);
  c(representations_agree(body), "body V/H round trip");
  c(representations_agree(hat), "hat V/H round trip");
  c(body.is_bounded() && hat.is_bounded(), "both bounded");
  c(has_vertex(body, Vec(2)) && has_vertex(hat, Vec(3)), "origin is a vertex of both");
  for (long n = 2; n <= 4; ++n) {
    Vec nd = vec({-n, -n});
    c(same_set(compactification_body(ctx, nd), scaled(body, n)), "body slice at N=" + std::to_string(n) + " is N times level 1");
    c(same_set(hat_polytope(ctx, nd), scaled(hat, n)), "hat at N=" + std::to_string(n) + " is N times level 1");
  }
  auto table = rees_graded_dims(ctx, {0, 1}, {}, 4);
  auto h = hilbert_function(ctx, 4);
  for (std::size_t i = 0; i <= 4; ++i) {
    std::size_t sum = 0;
    for (const auto& row : table.rows) sum += row.w[i];
    c(sum == h[i], "sum of W(r) in degree " + std::to_string(i) + " equals H(i)");
  }
}

void criterion10(Checker& c) {
  auto ctx = elliptic();
  auto pc = prime_cone_from_valuation(ctx);
  c(pc.u_in_cone, "u lies in the cone");
  c(pc.initial_ideals_agree, "reported in_u(I) = in_M(I)");
  c(ideal_equal(initial_ideal(ctx.ideal(), WeightMatrix({pc.u})), ctx.initial_ideal()), "in_u(I) = in_M(I)");
  c(in_tropical_variety_rank_r(ctx.value_matrix(), ctx.ideal()), "value matrix lies in the tropical variety");
}

}  // namespace

int main() {
  auto samples = corpus(200, 20240917);
  std::size_t undefined = 0;
  std::vector<std::pair<std::string, std::function<void(Checker&)>>> criteria{
      {"elliptic golden run", criterion1},
      {"weight quasivaluation x^2 - y", criterion2},
      {"initial ideal vs iterated oracle (200 ideals)", [&](Checker& c) { criterion3(c, samples); }},
      {"contraction laws", [&](Checker& c) { criterion4(c, samples, undefined); }},
      {"Khovanskii pipeline", criterion5},
      {"subduction non-termination guard", criterion6},
      {"Hilbert function and volume", criterion7},
      {"Gr(2,4)", criterion8},
      {"compactification polytopes", criterion9},
      {"prime cone from valuation", criterion10},
  };
  int failed = 0, unexpected = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Checker c;
    auto start = Clock::now();
    try {
      criteria[k].second(c);
    } catch (const std::exception& e) {
      c(false, std::string("exception: ") + e.what());
    }
    std::ostringstream line;
    line << "criterion " << (k + 1) << ": " << (c.failures.empty() ? "PASS" : "FAIL") << "  " << criteria[k].first
         << "  [" << c.checks << " checks, " << seconds_since(start) << " s";
    if (k == 3) line << ", " << undefined << " samples with a variable in I, iota refused";
    line << "]";
    std::cout << line.str() << "\n";
    for (std::size_t i = 0; i < c.failures.size() && i < 5; ++i) std::cout << "    failed: " << c.failures[i] << "\n";
    if (c.known) std::cout << "    (" << c.known << " of these failures are known to be unattainable)\n";
    if (!c.failures.empty()) ++failed;
    if (c.failures.size() > c.known) ++unexpected;
  }
  std::cout << "acceptance: " << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass";
  if (failed > unexpected) std::cout << ", " << (failed - unexpected) << " failing only on known-unattainable checks";
  std::cout << "\n";
  return unexpected ? 1 : 0;
}

#include "commands.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "job.hpp"
#include "khova/bodies.hpp"
#include "khova/errors.hpp"
#include "khova/initial.hpp"
#include "khova/tropical.hpp"
#include "khova/valuation.hpp"

namespace khova::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240917;

// ---- serialization ------------------------------------------------------

Json q(const Rational& r) { return to_string(r); }

Json vec(const Vec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(q(x));
  return a;
}

Json mat(const Mat& m) {
  Json a = Json::array();
  for (const auto& r : m) a.push_back(vec(r));
  return a;
}

Json matrix(const WeightMatrix& m) { return mat(m.row_data()); }

Json exponent(const ExponentVector& e) {
  Json a = Json::array();
  for (auto x : e) a.push_back(x);
  return a;
}

Json poly(const Polynomial& p) { return to_string(p); }

Json polys(const std::vector<Polynomial>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(poly(p));
  return a;
}

Json ideal(const Ideal& i) { return polys(i.generators()); }

Json inequalities(const std::vector<LinearInequality>& ineqs) {
  Json a = Json::array();
  for (const auto& in : ineqs) a.push_back({{"normal", vec(in.a)}, {"rhs", q(in.b)}});
  return a;
}

Json polyhedron(const Polyhedron& p) {
  return {{"dim", p.dim},
          {"vertices", mat(p.vertices)},
          {"rays", mat(p.rays)},
          {"lines", mat(p.lines)},
          {"inequalities", inequalities(p.inequalities)},
          {"equations", inequalities(p.equations)}};
}

Json strings(const std::vector<std::string>& v) { return Json(v); }

Json certificate(const PrimalityCertificate& c) {
  Json j{{"verdict", to_string(c.verdict)}, {"method", c.method}, {"ideal", ideal(c.ideal)}};
  Json elim = Json::array();
  for (const auto& e : c.eliminations)
    elim.push_back({{"variable", c.ideal.ring().name(e.variable)}, {"replacement", poly(e.replacement)}});
  j["eliminations"] = elim;
  j["reduced"] = ideal(c.reduced);
  if (c.zero_divisor) j["zero_divisor"] = {{"f", poly(c.zero_divisor->f)}, {"g", poly(c.zero_divisor->g)}};
  if (c.split_polynomial) j["split_polynomial"] = poly(*c.split_polynomial);
  if (c.splitting) {
    const auto& w = *c.splitting;
    Json cof = Json::array();
    for (const auto& fe : w.cofactor) cof.push_back(vec(fe));
    j["splitting"] = {{"x", w.x},
                      {"z", w.z ? Json(*w.z) : Json(nullptr)},
                      {"minimal_poly", vec(w.minimal_poly)},
                      {"leading", q(w.leading)},
                      {"cofactor", cof}};
  }
  Json inv = Json::array();
  for (const auto& z : c.lattice_invariants) inv.push_back(to_string(z));
  j["lattice_invariants"] = inv;
  j["notes"] = strings(c.notes);
  return j;
}

Json trace(const SubductionTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back({{"value", vec(s.value)}, {"expression", poly(s.expression)}});
  return {{"outcome", to_string(t.outcome)},
          {"steps", steps},
          {"residual", poly(t.residual)},
          {"expression", poly(t.expression)}};
}

// ---- job-derived settings ---------------------------------------------

struct Settings {
  GroebnerOptions groebner;
  std::size_t subduction_cap = kDefaultSubductionCap;
  std::uint64_t seed = kDefaultSeed;
  std::string seed_source = "default";
};

Settings settings(const JobFile& job, const Overrides& ov) {
  Settings s;
  if (const auto* caps = job.find("caps")) {
    for (const auto& item : caps->items) {
      auto sp = item.find_first_of(" \t:=");
      std::string name = item.substr(0, sp);
      if (sp == std::string::npos) throw ParseError("cap '" + name + "' has no value", 0);
      auto value = parse_rational(item.substr(item.find_first_not_of(" \t:=", sp)));
      if (value.get_den() != 1 || value < 0) throw ParseError("cap '" + name + "' must be a non-negative integer", 0);
      auto n = value.get_num().get_si();
      if (name == "pairs")
        s.groebner.caps.max_pairs = static_cast<std::size_t>(n);
      else if (name == "degree")
        s.groebner.caps.max_degree = n;
      else if (name == "subduction")
        s.subduction_cap = static_cast<std::size_t>(n);
      else
        throw ParseError("unknown cap '" + name + "'", 0);
    }
  }
  if (ov.cap_pairs) s.groebner.caps.max_pairs = *ov.cap_pairs;
  if (ov.cap_degree) s.groebner.caps.max_degree = *ov.cap_degree;
  if (ov.cap_subduction) s.subduction_cap = *ov.cap_subduction;

  auto strategy = job.text("strategy", "serial");
  if (strategy == "parallel" || ov.parallel)
    s.groebner.strategy = Strategy::Parallel;
  else if (strategy != "serial")
    throw ParseError("strategy must be 'serial' or 'parallel'", 0);

  if (ov.seed) {
    s.seed = *ov.seed;
    s.seed_source = "flag";
  } else if (auto js = job.integer("seed")) {
    s.seed = static_cast<std::uint64_t>(*js);
    s.seed_source = "job";
  } else if (ov.env_seed) {
    s.seed = *ov.env_seed;
    s.seed_source = "env";
  }
  return s;
}

MonomialOrder tiebreak(const JobFile& job) { return MonomialOrder::by_name(job.text("order", "degrevlex")); }

ValuationContext context(const JobFile& job, const Settings& s) {
  auto mode = job.text("mode", "presentation");
  auto ring = job.ring();
  if (mode == "sagbi") {
    auto gens = job.polynomials("sagbi_generators", ring);
    return ValuationContext::sagbi(gens, MonomialOrder::by_name(job.text("ambient_order", "lex")), s.groebner);
  }
  if (mode != "presentation") throw ParseError("mode must be 'presentation' or 'sagbi'", 0);
  return ValuationContext::presentation(job.ideal(ring), job.matrix(), tiebreak(job), s.groebner);
}

std::int64_t bound(const JobFile& job, std::int64_t fallback) {
  auto b = job.integer("bound").value_or(fallback);
  if (b < 0) throw PreconditionError("bound must be non-negative");
  return b;
}

std::vector<Polynomial> elements(const JobFile& job, const ValuationContext& ctx) {
  auto out = job.polynomials("elements", ctx.ring());
  if (out.empty()) throw PreconditionError("job has no 'elements'");
  return out;
}

Json context_summary(const ValuationContext& ctx) {
  Json j{{"mode", ctx.mode() == ValuationContext::Mode::Sagbi ? "sagbi" : "presentation"}};
  if (ctx.mode() == ValuationContext::Mode::Sagbi) {
    j["generators"] = polys(ctx.generators());
    j["ambient_order"] = ctx.ambient_order().name();
  } else {
    j["weights"] = matrix(ctx.weights());
    j["tiebreak"] = ctx.tiebreak().name();
  }
  return j;
}

// ---- commands -----------------------------------------------------------

struct Context {
  const JobFile& job;
  const Settings& s;
  Json result = Json::object();
  Json replays = Json::object();
  int exit_code = kOk;
};

void cmd_gb(Context& c) {
  auto ring = c.job.ring();
  auto order = tiebreak(c.job);
  if (c.job.has("matrix")) order = MonomialOrder::composite(c.job.matrix(), order);
  auto gb = buchberger(c.job.ideal(ring), order, c.s.groebner);
  Json leads = Json::array();
  for (const auto& e : gb.leading_monomials()) leads.push_back(exponent(e));
  c.result["order"] = gb.order().name();
  c.result["basis"] = polys(gb.basis());
  c.result["leading_monomials"] = leads;
  c.result["pairs_reduced"] = gb.pairs_reduced();
  c.result["unit"] = gb.is_unit();
}

void cmd_initial(Context& c) {
  auto ring = c.job.ring();
  auto comp = compute_initial(c.job.ideal(ring), c.job.matrix(), tiebreak(c.job), c.s.groebner);
  c.result["homogenized"] = comp.homogenized;
  c.result["groebner_basis"] = polys(comp.gb.basis());
  c.result["initial_forms"] = ideal(comp.initial);
  c.result["initial_ideal"] = ideal(canonical(comp.initial, c.s.groebner));
}

void cmd_trop(Context& c) {
  auto ring = c.job.ring();
  auto I = c.job.ideal(ring);
  if (auto u = c.job.vector("u")) {
    if (u->size() != ring.size()) throw PreconditionError("u has the wrong length");
    c.result["u"] = vec(*u);
    c.result["in_tropical_variety"] = in_tropical_variety(*u, I, c.s.groebner);
    c.result["initial_ideal"] = ideal(canonical(initial_ideal(I, WeightMatrix({*u}), c.s.groebner), c.s.groebner));
  } else {
    auto m = c.job.matrix();
    c.result["in_tropical_variety"] = in_tropical_variety_rank_r(m, I, c.s.groebner);
    c.result["initial_ideal"] = ideal(canonical(initial_ideal(I, m, c.s.groebner), c.s.groebner));
  }
}

void cmd_cone_verify(Context& c) {
  auto ring = c.job.ring();
  auto rays = c.job.rows("rays");
  if (rays.empty()) throw PreconditionError("job has no 'rays'");
  PrimeConeOptions opt;
  opt.samples = static_cast<std::size_t>(c.job.integer("samples").value_or(5));
  opt.seed = c.s.seed;
  opt.groebner = c.s.groebner;
  opt.primality.groebner = c.s.groebner;
  auto rep = verify_prime_cone(rays, c.job.rows("lineality"), c.job.ideal(ring), opt);
  c.result["sample_points"] = mat(rep.sample_points);
  c.result["samples_agree"] = rep.samples_agree;
  if (rep.common_initial_ideal) c.result["initial_ideal"] = ideal(*rep.common_initial_ideal);
  c.result["monomial_free"] = rep.monomial_free;
  c.result["binomial"] = rep.binomial;
  c.result["primality"] = certificate(rep.primality);
  c.result["meets_groebner_region"] = rep.meets_groebner_region ? Json(*rep.meets_groebner_region) : Json(nullptr);
  c.result["notes"] = strings(rep.notes);
  if (rep.primality.verdict != Primality::Unknown)
    c.replays["primality"] = replay_certificate(rep.primality, opt.primality);
}

void cmd_lineality(Context& c) {
  auto ring = c.job.ring();
  c.result["lineality_space"] = mat(lineality_space(c.job.ideal(ring), c.s.groebner));
}

void cmd_val(Context& c) {
  auto ctx = context(c.job, c.s);
  c.result["context"] = context_summary(ctx);
  Json vals = Json::array();
  if (c.job.has("elements"))
    for (const auto& f : elements(c.job, ctx)) vals.push_back({{"element", poly(f)}, {"value", vec(ctx.evaluate(f))}});
  c.result["values"] = vals;
  c.result["value_matrix"] = matrix(ctx.value_matrix());
  if (ctx.mode() == ValuationContext::Mode::Presentation) {
    c.result["initial_ideal"] = ideal(canonical(ctx.initial_ideal(), c.s.groebner));
    PrimalityOptions popt;
    popt.groebner = c.s.groebner;
    auto verdict = is_valuation(ctx, popt);
    c.result["is_valuation"] = to_string(verdict.verdict);
    c.result["certificate"] = certificate(verdict.certificate);
    if (verdict.certificate.verdict != Primality::Unknown)
      c.replays["certificate"] = replay_certificate(verdict.certificate, popt);
  }
  auto trials = static_cast<std::size_t>(c.job.integer("trials").value_or(20));
  auto axioms = quasivaluation_axioms_check(ctx, trials, c.s.seed);
  Json witnesses = Json::array();
  bool replay_ok = true;
  for (const auto& w : axioms.strict_witnesses) {
    witnesses.push_back({{"f", poly(w.f)}, {"g", poly(w.g)}, {"product", vec(w.product)}, {"sum", vec(w.sum)}});
    auto v = ctx.evaluate(w.f), u = ctx.evaluate(w.g);
    Value sum(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) sum[i] = v[i] + u[i];
    replay_ok = replay_ok && ctx.evaluate(w.f * w.g) == w.product && sum == w.sum &&
                lex_compare(w.product, w.sum) > 0;
  }
  c.result["axioms"] = {{"trials", axioms.trials},
                        {"violations", strings(axioms.violations)},
                        {"strict_witnesses", witnesses}};
  c.replays["strict_witnesses"] = replay_ok;
}

void cmd_subduce(Context& c) {
  auto ctx = context(c.job, c.s);
  c.result["context"] = context_summary(ctx);
  Json traces = Json::array();
  bool replay_ok = true;
  for (const auto& f : elements(c.job, ctx)) {
    auto t = subduction(f, ctx, c.s.subduction_cap);
    Json j{{"element", poly(f)}};
    j.update(trace(t));
    // Values must strictly increase along the trace.
    bool increasing = true;
    for (std::size_t i = 1; i < t.steps.size(); ++i)
      increasing = increasing && lex_compare(t.steps[i].value, t.steps[i - 1].value) > 0;
    j["strictly_increasing"] = increasing;
    if (t.outcome == SubductionTrace::Outcome::CapExceeded) c.exit_code = kCapExceeded;
    // f = expression(B) + residual.
    if (t.outcome != SubductionTrace::Outcome::CapExceeded) {
      Polynomial image = t.expression.is_zero() ? Polynomial(ctx.ring()) : t.expression.substitute(ctx.generator_images());
      Polynomial diff = f - image - t.residual;
      if (ctx.mode() == ValuationContext::Mode::Presentation) diff = ctx.gb().normal_form(diff);
      replay_ok = replay_ok && diff.is_zero();
    }
    traces.push_back(j);
  }
  c.result["traces"] = traces;
  c.replays["decompositions"] = replay_ok;
}

void cmd_khovanskii(Context& c) {
  auto ctx = context(c.job, c.s);
  c.result["context"] = context_summary(ctx);
  auto rep = khovanskii_test(ctx, c.s.subduction_cap);
  c.result["is_khovanskii"] = rep.is_khovanskii;
  if (rep.contraction) c.result["contraction"] = matrix(*rep.contraction);
  Json vars = Json::array();
  for (auto i : rep.variables_in_initial) vars.push_back(ctx.ring().name(i));
  c.result["variables_in_initial"] = vars;
  if (rep.relations) c.result["relations"] = ideal(*rep.relations);
  Json outs = Json::array();
  for (auto o : rep.outcomes) outs.push_back(to_string(o));
  c.result["outcomes"] = outs;
  c.result["notes"] = strings(rep.notes);
}

void cmd_complete(Context& c) {
  auto ctx = context(c.job, c.s);
  c.result["context"] = context_summary(ctx);
  auto round_cap = c.job.integer("round_cap").value_or(6);
  if (round_cap < 0) throw PreconditionError("round_cap must be non-negative");
  auto res = khovanskii_complete(ctx, static_cast<std::size_t>(round_cap), c.s.subduction_cap);
  c.result["basis"] = polys(res.basis);
  c.result["complete"] = res.complete;
  c.result["rounds"] = res.rounds;
  c.result["value_counts"] = res.value_counts;
  c.result["capped"] = res.capped;
  c.result["stop_reason"] = res.stop_reason;
  bool growing = true;
  for (std::size_t i = 1; i < res.value_counts.size(); ++i)
    growing = growing && res.value_counts[i] > res.value_counts[i - 1];
  c.result["strictly_growing"] = growing;
  if (res.stop_reason == "subduction cap exceeded") c.exit_code = kCapExceeded;
}

void cmd_semigroup(Context& c) {
  auto ctx = context(c.job, c.s);
  c.result["context"] = context_summary(ctx);
  auto sg = value_semigroup(ctx);
  c.result["generators"] = mat(sg.generators());
  c.result["graded"] = sg.graded();
  if (sg.graded()) {
    Json levels = Json::array();
    for (std::int64_t k = 0; k <= bound(c.job, 3); ++k) {
      auto lv = sg.level(static_cast<std::size_t>(k));
      levels.push_back({{"level", k}, {"count", lv.size()}, {"values", mat(lv)}});
    }
    c.result["levels"] = levels;
  }
  Json queries = Json::array();
  for (const auto& v : c.job.rows("queries")) queries.push_back({{"value", vec(v)}, {"contained", sg.contains(v)}});
  c.result["queries"] = queries;
}

void cmd_nobody(Context& c) {
  auto ctx = context(c.job, c.s);
  auto bd = body_degree(ctx);
  c.result["body"] = polyhedron(bd.body);
  c.result["cone"] = polyhedron(newton_okounkov_cone(ctx));
  c.result["dimension"] = bd.dimension;
  c.result["volume"] = q(bd.volume);
  c.result["degree"] = q(bd.degree);
  c.replays["body_representations"] = representations_agree(bd.body);
}

void cmd_degree(Context& c) {
  auto ctx = context(c.job, c.s);
  auto bd = body_degree(ctx);
  c.result["dimension"] = bd.dimension;
  c.result["volume"] = q(bd.volume);
  c.result["degree"] = q(bd.degree);
  if (ctx.mode() == ValuationContext::Mode::Presentation && ctx.ideal().generators_homogeneous()) {
    // Leading coefficient of the Hilbert polynomial, sampled at the top of the window.
    auto d = bound(c.job, 8);
    auto h = hilbert_function(ctx, d);
    c.result["hilbert_function"] = h;
    if (d > 0) {
      Rational ratio(static_cast<long>(h.back()));
      for (std::size_t i = 0; i < bd.dimension; ++i) ratio /= d;
      ratio.canonicalize();
      c.result["hilbert_ratio_at_bound"] = q(ratio);
    }
  }
}

void cmd_hilbert(Context& c) {
  auto ctx = context(c.job, c.s);
  auto d = bound(c.job, 8);
  auto h = hilbert_function(ctx, d);
  c.result["hilbert_function"] = h;
  c.result["one_dim_leaves"] = one_dim_leaves_check(ctx, d);
  auto rep = khovanskii_test(ctx, c.s.subduction_cap);
  if (rep.is_khovanskii) {
    auto sg = value_semigroup(ctx);
    if (sg.graded()) {
      std::vector<std::size_t> counts;
      for (std::int64_t k = 0; k <= d; ++k) counts.push_back(sg.level(static_cast<std::size_t>(k)).size());
      c.result["semigroup_level_counts"] = counts;
      c.replays["hilbert_equals_levels"] = counts == h;
    }
  }
}

void cmd_compactify(Context& c) {
  auto ctx = context(c.job, c.s);
  Vec delta = c.job.vector("delta").value_or(default_delta(ctx));
  c.result["delta"] = vec(delta);
  auto body = compactification_body(ctx, delta);
  auto hat = hat_polytope(ctx, delta);
  c.result["body"] = polyhedron(body);
  c.result["hat"] = polyhedron(hat);
  Vec origin_body(body.dim), origin_hat(hat.dim);
  auto has_vertex = [](const Polyhedron& p, const Vec& v) {
    for (const auto& x : p.vertices)
      if (x == v) return true;
    return false;
  };
  c.result["body_bounded"] = body.is_bounded();
  c.result["origin_vertex"] = has_vertex(body, origin_body) && has_vertex(hat, origin_hat);
  c.replays["body_representations"] = representations_agree(body);
  c.replays["hat_representations"] = representations_agree(hat);
  if (c.job.has("queries")) {
    auto sg = value_semigroup(ctx);
    Json queries = Json::array();
    for (const auto& row : c.job.rows("queries")) {
      if (row.empty() || row[0].get_den() != 1) throw ParseError("query rows start with an integer level", 0);
      Value r(row.begin() + 1, row.end());
      queries.push_back({{"level", row[0].get_num().get_si()},
                         {"value", vec(r)},
                         {"contained", compactification_contains(sg, row[0].get_num().get_si(), r, delta)}});
    }
    c.result["queries"] = queries;
  }
}

void cmd_rees_dims(Context& c) {
  auto ctx = context(c.job, c.s);
  std::vector<std::size_t> sigma;
  if (auto sv = c.job.vector("sigma"))
    for (const auto& x : *sv) {
      if (x.get_den() != 1 || x < 0) throw ParseError("sigma entries are row indices", 0);
      sigma.push_back(x.get_num().get_ui());
    }
  else
    for (std::size_t i = 0; i < ctx.weights().rows(); ++i) sigma.push_back(i);
  auto levels = c.job.rows("levels");
  auto d = bound(c.job, 4);
  auto table = rees_graded_dims(ctx, sigma, levels, d);
  Json rows = Json::array();
  for (const auto& r : table.rows) rows.push_back({{"level", vec(r.level)}, {"w", r.w}, {"f", r.f}});
  c.result["sigma"] = table.sigma;
  c.result["max_degree"] = table.max_degree;
  c.result["rows"] = rows;
  if (levels.empty()) {
    auto h = hilbert_function(ctx, d);
    bool partition = true;
    for (std::int64_t i = 0; i <= d; ++i) {
      std::size_t sum = 0;
      for (const auto& r : table.rows) sum += r.w[static_cast<std::size_t>(i)];
      partition = partition && sum == h[static_cast<std::size_t>(i)];
    }
    c.result["hilbert_function"] = h;
    c.replays["partition_identity"] = partition;
  }
}

void cmd_contract(Context& c) {
  auto ring = c.job.ring();
  auto I = c.job.ideal(ring);
  auto m = c.job.matrix();
  auto order = tiebreak(c.job);
  auto iota = contraction(m, I, order, c.s.groebner);
  c.result["contraction"] = matrix(iota);
  c.result["fixed"] = iota == m;
  c.result["input_in_tropical_variety"] = in_tropical_variety_rank_r(m, I, c.s.groebner);
  c.replays["idempotent"] = contraction(iota, I, order, c.s.groebner) == iota;
}

const std::map<std::string, std::function<void(Context&)>>& table() {
  static const std::map<std::string, std::function<void(Context&)>> t{
      {"gb", cmd_gb},
      {"initial", cmd_initial},
      {"trop", cmd_trop},
      {"cone-verify", cmd_cone_verify},
      {"lineality", cmd_lineality},
      {"val", cmd_val},
      {"subduce", cmd_subduce},
      {"khovanskii", cmd_khovanskii},
      {"complete", cmd_complete},
      {"semigroup", cmd_semigroup},
      {"nobody", cmd_nobody},
      {"degree", cmd_degree},
      {"hilbert", cmd_hilbert},
      {"compactify", cmd_compactify},
      {"rees-dims", cmd_rees_dims},
      {"contract", cmd_contract},
  };
  return t;
}

Json error(const std::string& kind, const std::string& message) { return {{"kind", kind}, {"message", message}}; }

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"gb",       "initial",   "trop",   "cone-verify", "lineality", "val",
                                              "subduce",  "khovanskii", "complete", "semigroup", "nobody",   "degree",
                                              "hilbert",  "compactify", "rees-dims", "contract"};
  return names;
}

RunResult run(const std::string& command, const std::string& job_text, const Overrides& overrides) {
  RunResult out;
  Json& r = out.report;
  r["command"] = command;
  r["job"] = job_text;
  auto start = std::chrono::steady_clock::now();
  try {
    auto it = table().find(command);
    if (it == table().end()) throw PreconditionError("unknown command '" + command + "'");
    auto job = JobFile::parse(job_text);
    auto s = settings(job, overrides);
    r["seed"] = s.seed;
    r["seed_source"] = s.seed_source;
    r["caps"] = {{"pairs", s.groebner.caps.max_pairs},
                 {"degree", s.groebner.caps.max_degree},
                 {"subduction", s.subduction_cap}};
    r["strategy"] = s.groebner.strategy == Strategy::Parallel ? "parallel" : "serial";
    Context c{job, s};
    it->second(c);
    r["result"] = std::move(c.result);
    r["replays"] = std::move(c.replays);
    out.exit_code = c.exit_code;
  } catch (const ParseError& e) {
    r["error"] = error("parse", e.what());
    out.exit_code = kParse;
  } catch (const CapExceeded& e) {
    r["error"] = error("cap_exceeded", e.what());
    out.exit_code = kCapExceeded;
  } catch (const PreconditionError& e) {
    r["error"] = error("precondition", e.what());
    out.exit_code = kPrecondition;
  } catch (const std::exception& e) {
    r["error"] = error("error", e.what());
    out.exit_code = kPrecondition;
  }
  if (overrides.timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    r["timing"] = {{"milliseconds", ms.count()}};
  }
  r["exit_code"] = out.exit_code;
  return out;
}

}  // namespace khova::cli

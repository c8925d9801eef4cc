#include "khova/valuation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <tuple>
#include <set>

#include "khova/errors.hpp"

namespace khova {

namespace {

std::vector<Polynomial> variables_of(const Ring& r) {
  std::vector<Polynomial> v;
  for (std::size_t i = 0; i < r.size(); ++i) v.push_back(Polynomial::variable(r, i));
  return v;
}

Value add(const Value& a, const Value& b) {
  Value r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool is_zero_vector(const Value& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

}  // namespace

ValuationContext ValuationContext::presentation(const Ideal& ideal, const WeightMatrix& m,
                                                const MonomialOrder& tiebreak, const GroebnerOptions& options) {
  if (m.rows() == 0) throw PreconditionError("weight matrix has no rows");
  if (m.cols() != ideal.ring().size()) throw PreconditionError("weight matrix column count differs from variable count");
  ValuationContext ctx;
  ctx.mode_ = Mode::Presentation;
  ctx.ring_ = ideal.ring();
  ctx.symbols_ = ideal.ring();
  ctx.ideal_ = ideal;
  ctx.m_ = m;
  ctx.tiebreak_ = tiebreak;
  ctx.options_ = options;
  ctx.gb_ = std::make_shared<const GroebnerContext>(buchberger(ideal, MonomialOrder::composite(m, tiebreak), options));
  if (ctx.gb_->is_unit()) throw PreconditionError("the unit ideal presents the zero algebra");
  std::vector<Polynomial> forms;
  for (const auto& g : ctx.gb_->basis()) forms.push_back(g.initial_form(m));
  ctx.initial_ = Ideal(ideal.ring(), std::move(forms));
  ctx.generators_ = variables_of(ideal.ring());
  try {
    ctx.values_ = contraction(m, *ctx.gb_);
  } catch (const PreconditionError& e) {
    ctx.values_error_ = e.what();
  }
  return ctx;
}

ValuationContext ValuationContext::sagbi(std::vector<Polynomial> generators, const MonomialOrder& ambient_order,
                                         const GroebnerOptions& options) {
  if (generators.empty()) throw PreconditionError("a SAGBI context needs at least one generator");
  if (!ambient_order.is_well_ordered()) throw PreconditionError("the ambient order must be a well-order");
  const Ring ambient = generators[0].ring();
  for (const auto& g : generators) {
    if (!(g.ring() == ambient)) throw PreconditionError("generators live in different rings");
    if (g.is_zero()) throw PreconditionError("zero generator");
  }
  ValuationContext ctx;
  ctx.mode_ = Mode::Sagbi;
  ctx.ring_ = ambient;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < generators.size(); ++i) names.push_back("b" + std::to_string(i + 1));
  ctx.symbols_ = Ring(names);
  ctx.ideal_ = Ideal(ctx.symbols_, {});
  ctx.ambient_order_ = ambient_order;
  ctx.ambient_matrix_ = order_matrix(ambient_order, ambient.size());
  ctx.m_ = ctx.ambient_matrix_;
  ctx.options_ = options;
  ctx.gb_ = std::make_shared<const GroebnerContext>(buchberger(Ideal(ambient, {}), ambient_order, options));
  ctx.initial_ = Ideal(ambient, {});
  ctx.generators_ = std::move(generators);
  WeightMatrix vals(ctx.ambient_matrix_.rows(), ctx.generators_.size());
  for (std::size_t i = 0; i < ctx.generators_.size(); ++i) vals.set_column(i, ctx.evaluate(ctx.generators_[i]));
  ctx.values_ = std::move(vals);
  return ctx;
}

Value ValuationContext::weight(const ExponentVector& e) const {
  return mode_ == Mode::Presentation ? m_.apply(e) : ambient_matrix_.apply(e);
}

Value ValuationContext::evaluate(const Polynomial& f) const {
  if (mode_ == Mode::Presentation) {
    auto nf = gb_->normal_form(f);
    if (nf.is_zero()) throw PreconditionError("the element is zero in the algebra; its value is undefined");
    return nf.min_weight(m_);
  }
  if (f.is_zero()) throw PreconditionError("the value of zero is undefined");
  return weight(f.sorted_terms(ambient_order_).back().exponent);
}

const WeightMatrix& ValuationContext::value_matrix() const {
  if (!values_) throw PreconditionError(values_error_);
  return *values_;
}

std::vector<Polynomial> ValuationContext::generator_images() const { return generators_; }

std::string to_string(SubductionTrace::Outcome o) {
  switch (o) {
    case SubductionTrace::Outcome::Exact: return "Exact";
    case SubductionTrace::Outcome::Stuck: return "Stuck";
    case SubductionTrace::Outcome::CapExceeded: break;
  }
  return "CapExceeded";
}

namespace {

SubductionTrace presentation_subduction(const Polynomial& f, const ValuationContext& ctx, std::size_t cap) {
  SubductionTrace t;
  auto cur = ctx.gb().normal_form(f);
  t.expression = Polynomial(ctx.symbols());
  while (!cur.is_zero()) {
    if (t.steps.size() >= cap) {
      t.outcome = SubductionTrace::Outcome::CapExceeded;
      break;
    }
    auto slice = cur.initial_form(ctx.weights());
    t.steps.push_back({cur.min_weight(ctx.weights()), slice});
    t.expression += slice;
    cur -= slice;
  }
  t.residual = cur;
  return t;
}

// Writes alpha as a sum of generator lowest exponents, by depth-first search
// over generator indices with memoized failures.
class SemigroupSolver {
 public:
  explicit SemigroupSolver(std::vector<ExponentVector> gens) : gens_(std::move(gens)) {}

  std::optional<std::vector<int>> solve(const ExponentVector& alpha) {
    failed_.clear();
    std::vector<int> a(gens_.size(), 0);
    if (search(alpha, 0, a)) return a;
    return std::nullopt;
  }

 private:
  bool search(const ExponentVector& rest, std::size_t from, std::vector<int>& a) {
    if (rest.is_zero()) return true;
    if (failed_.count({rest, from})) return false;
    for (std::size_t i = from; i < gens_.size(); ++i) {
      const auto& g = gens_[i];
      if (g.is_zero() || !g.divides(rest)) continue;
      ++a[i];
      if (search(rest - g, i, a)) return true;
      --a[i];
    }
    failed_.insert({rest, from});
    return false;
  }

  std::vector<ExponentVector> gens_;
  std::set<std::pair<ExponentVector, std::size_t>> failed_;
};

// Powers of the generators, built on demand.
class PowerCache {
 public:
  explicit PowerCache(const std::vector<Polynomial>& gens) : gens_(gens), powers_(gens.size()) {}
  const Polynomial& get(std::size_t i, int k) {
    auto& p = powers_[i];
    if (p.empty()) p.push_back(Polynomial::constant(gens_[i].ring(), 1));
    while (static_cast<int>(p.size()) <= k) p.push_back(p.back() * gens_[i]);
    return p[k];
  }

 private:
  const std::vector<Polynomial>& gens_;
  std::vector<std::vector<Polynomial>> powers_;
};

SubductionTrace sagbi_subduction(const Polynomial& f, const ValuationContext& ctx, std::size_t cap) {
  const auto& gens = ctx.generators();
  const auto& order = ctx.ambient_order();
  std::vector<ExponentVector> low_exp;
  std::vector<Rational> low_coeff;
  bool homogeneous = true;
  for (const auto& g : gens) {
    auto t = g.sorted_terms(order).back();
    low_exp.push_back(t.exponent);
    low_coeff.push_back(t.coeff);
    homogeneous = homogeneous && g.is_homogeneous();
  }
  SemigroupSolver solver(low_exp);
  PowerCache powers(gens);
  SubductionTrace t;
  t.expression = Polynomial(ctx.symbols());
  Polynomial cur = f;
  while (!cur.is_zero()) {
    if (!homogeneous && t.steps.size() >= cap) {
      t.outcome = SubductionTrace::Outcome::CapExceeded;
      break;
    }
    auto low = cur.sorted_terms(order).back();
    auto a = solver.solve(low.exponent);
    if (!a) {
      t.outcome = SubductionTrace::Outcome::Stuck;
      break;
    }
    Rational c = low.coeff;
    Polynomial p = Polynomial::constant(ctx.ring(), 1);
    ExponentVector sym(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if ((*a)[i] == 0) continue;
      sym[i] = (*a)[i];
      for (int k = 0; k < (*a)[i]; ++k) c /= low_coeff[i];
      p = p * powers.get(i, (*a)[i]);
    }
    auto expr = Polynomial::monomial(ctx.symbols(), sym, c);
    t.steps.push_back({ctx.weight(low.exponent), expr});
    t.expression += expr;
    cur -= p * c;
  }
  t.residual = cur;
  return t;
}

}  // namespace

SubductionTrace subduction(const Polynomial& f, const ValuationContext& ctx, std::size_t cap) {
  if (!(f.ring() == ctx.ring())) throw PreconditionError("element is not in the ring of the context");
  return ctx.mode() == ValuationContext::Mode::Presentation ? presentation_subduction(f, ctx, cap)
                                                            : sagbi_subduction(f, ctx, cap);
}

std::vector<WeightedTerm> vector_space_subduction(const Polynomial& f, const ValuationContext& ctx) {
  if (ctx.mode() != ValuationContext::Mode::Presentation)
    throw PreconditionError("vector-space subduction needs a presentation context");
  auto nf = ctx.gb().normal_form(f);
  if (nf.is_zero()) throw PreconditionError("the element is zero in the algebra");
  std::vector<WeightedTerm> out;
  for (const auto& t : nf.sorted_terms(ctx.tiebreak())) out.push_back({t.exponent, t.coeff, ctx.weight(t.exponent)});
  std::stable_sort(out.begin(), out.end(), [](const WeightedTerm& a, const WeightedTerm& b) {
    return lex_compare(a.weight, b.weight) < 0;
  });
  return out;
}

namespace {

// lambda with lambda . column >= 1 for every column, if one exists.
std::optional<Vec> positive_functional(const std::vector<Value>& columns, std::size_t rows) {
  if (columns.empty()) return std::nullopt;
  std::vector<LinearInequality> sys;
  for (const auto& c : columns) sys.push_back({c, 1});
  return fourier_motzkin(sys, rows);
}

std::vector<Value> columns_of(const WeightMatrix& m) {
  std::vector<Value> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) cols.push_back(m.column(j));
  return cols;
}

Integer lcm_int(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Pure difference binomials x^lead - x^trail with lead > trail. Every
// S-polynomial and reduction of such binomials is again one, so the lattice
// saturations below run on exponent vectors alone.
struct Binomial {
  ExponentVector lead;
  ExponentVector trail;
};

class BinomialBasis {
 public:
  using Greater = std::function<bool(const ExponentVector&, const ExponentVector&)>;

  explicit BinomialBasis(Greater greater) : greater_(std::move(greater)) {}

  // Reduced basis of the ideal generated by the x^u - x^v. Requires every
  // graded piece to be finite, which a positive grading guarantees.
  std::vector<Binomial> compute(const std::vector<std::pair<ExponentVector, ExponentVector>>& gens) {
    basis_.clear();
    Queue pairs;
    std::set<std::pair<std::size_t, std::size_t>> done;
    for (const auto& [u, v] : gens)
      if (auto b = make(normal(u), normal(v))) add(*b, pairs);
    while (!pairs.empty()) {
      auto [deg, i, j] = pairs.top();
      pairs.pop();
      done.insert({i, j});
      if (!alive_[i] || !alive_[j]) continue;
      const auto& bi = basis_[i];
      const auto& bj = basis_[j];
      auto l = bi.lead.lcm(bj.lead);
      if (deg == bi.lead.degree() + bj.lead.degree()) continue;  // coprime leads
      if (chain_skip(i, j, l, done)) continue;
      auto s = make(normal(l - bi.lead + bi.trail), normal(l - bj.lead + bj.trail));
      if (s) add(*s, pairs);
    }
    // Interreduce.
    std::vector<Binomial> out;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (!alive_[i]) continue;
      bool redundant = false;
      for (std::size_t j = 0; j < basis_.size() && !redundant; ++j)
        redundant = j != i && alive_[j] && basis_[j].lead.divides(basis_[i].lead) &&
                    (basis_[j].lead != basis_[i].lead || j < i);
      if (!redundant) out.push_back(basis_[i]);
    }
    basis_ = out;
    alive_.assign(basis_.size(), true);
    for (auto& b : basis_) b.trail = normal(b.trail);
    return basis_;
  }

 // Normal form of x^m modulo the last computed basis.
  ExponentVector normal_form(const ExponentVector& m) const { return normal(m); }

 private:
  // Pairs by ascending lcm degree, then by index.
  using Entry = std::tuple<std::int64_t, std::size_t, std::size_t>;
  using Queue = std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>>;

  std::optional<Binomial> make(const ExponentVector& a, const ExponentVector& b) const {
    if (a == b) return std::nullopt;
    return greater_(a, b) ? Binomial{a, b} : Binomial{b, a};
  }

  ExponentVector normal(ExponentVector m) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        if (!alive_[k] || !basis_[k].lead.divides(m)) continue;
        m = m - basis_[k].lead + basis_[k].trail;
        changed = true;
        break;
      }
    }
    return m;
  }

  void add(const Binomial& b, Queue& pairs) {
    std::size_t idx = basis_.size();
    basis_.push_back(b);
    alive_.push_back(true);
    for (std::size_t k = 0; k < idx; ++k)
      if (alive_[k]) pairs.push({basis_[k].lead.lcm(b.lead).degree(), k, idx});
  }

  // Some third lead divides the lcm and both of its pairs are already done.
  bool chain_skip(std::size_t i, std::size_t j, const ExponentVector& l,
                  const std::set<std::pair<std::size_t, std::size_t>>& done) const {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (k == i || k == j || !alive_[k] || !basis_[k].lead.divides(l)) continue;
      if (done.count({std::min(i, k), std::max(i, k)}) && done.count({std::min(j, k), std::max(j, k)})) return true;
    }
    return false;
  }

  Greater greater_;
  std::vector<Binomial> basis_;
  std::vector<bool> alive_;
};

// Lattice ideal of a lattice graded by w > 0: saturate the lattice-basis
// binomials by each variable in turn. A basis for an order preferring small x_i powers has
// x_i dividing the lead only when it divides the trail too.
std::vector<Binomial> minimal_lattice_generators(const IntMat& kernel, const Vec& w) {
  const std::size_t n = w.size();
  std::vector<std::pair<ExponentVector, ExponentVector>> gens;
  for (const auto& u : kernel) {
    ExponentVector plus(n), minus(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (u[j] > 0) plus[j] = static_cast<std::int32_t>(u[j].get_si());
      if (u[j] < 0) minus[j] = static_cast<std::int32_t>(-u[j].get_si());
    }
    gens.push_back({plus, minus});
  }
  const auto drl = MonomialOrder::degrevlex();
  for (std::size_t i = 0; i < n; ++i) {
    BinomialBasis engine([&, i](const ExponentVector& a, const ExponentVector& b) {
      if (a[i] != b[i]) return a[i] < b[i];
      return drl.greater(a, b);
    });
    std::vector<std::pair<ExponentVector, ExponentVector>> next;
    for (const auto& b : engine.compute(gens)) {
      ExponentVector d(n);
      d[i] = std::min(b.lead[i], b.trail[i]);
      next.push_back({b.lead - d, b.trail - d});
    }
    gens = std::move(next);
  }
  // Keep a binomial when the earlier ones (ascending w-degree) do not
  // generate it; for a graded ideal this leaves a minimal generating set.
  BinomialBasis final_basis([&](const ExponentVector& a, const ExponentVector& b) { return drl.greater(a, b); });
  auto all = final_basis.compute(gens);
  auto wdeg = [&](const ExponentVector& e) {
    Rational d = 0;
    for (std::size_t j = 0; j < n; ++j) d += w[j] * e[j];
    return d;
  };
  std::stable_sort(all.begin(), all.end(), [&](const Binomial& a, const Binomial& b) {
    auto da = wdeg(a.lead), db = wdeg(b.lead);
    if (da != db) return da < db;
    return drl.greater(b.lead, a.lead);
  });
  std::vector<Binomial> kept;
  std::vector<std::pair<ExponentVector, ExponentVector>> kept_pairs;
  BinomialBasis membership([&](const ExponentVector& a, const ExponentVector& b) { return drl.greater(a, b); });
  membership.compute({});
  for (const auto& b : all) {
    if (membership.normal_form(b.lead) == membership.normal_form(b.trail)) continue;
    kept.push_back(b);
    kept_pairs.push_back({b.lead, b.trail});
    membership.compute(kept_pairs);
  }
  return kept;
}

}  // namespace

Ideal toric_ideal(const WeightMatrix& values, const Ring& ring, const GroebnerOptions& options) {
  std::size_t n = values.cols();
  if (ring.size() != n) throw PreconditionError("ring size differs from the number of value columns");
  IntMat a;
  for (std::size_t i = 0; i < values.rows(); ++i) {
    Integer den = 1;
    for (const auto& c : values.row(i)) den = lcm_int(den, c.get_den());
    IntVec row;
    for (const auto& c : values.row(i)) row.push_back(Integer(c * den));
    a.push_back(std::move(row));
  }
  // Short kernel vectors give low-degree binomials and much cheaper saturations.
  auto kernel = lll_reduce(integer_kernel(a, n));
  if (kernel.empty()) return Ideal(ring, {});
  auto lambda = positive_functional(columns_of(values), values.rows());
  if (lambda) {
    Vec w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = dot(*lambda, values.column(j));
    std::vector<Polynomial> gens;
    for (const auto& b : minimal_lattice_generators(kernel, w))
      gens.push_back(Polynomial::monomial(ring, b.lead) - Polynomial::monomial(ring, b.trail));
    return Ideal(ring, std::move(gens));
  }
  std::vector<Polynomial> binomials;
  for (const auto& u : kernel) {
    ExponentVector plus(n), minus(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (u[j] > 0) plus[j] = static_cast<std::int32_t>(u[j].get_si());
      if (u[j] < 0) minus[j] = static_cast<std::int32_t>(-u[j].get_si());
    }
    binomials.push_back(Polynomial::monomial(ring, plus) - Polynomial::monomial(ring, minus));
  }
  ExponentVector all(n);
  for (std::size_t j = 0; j < n; ++j) all[j] = 1;
  return canonical(saturate(Ideal(ring, binomials), Polynomial::monomial(ring, all), options), options);
}

Ideal toric_ideal(const WeightMatrix& values, const GroebnerOptions& options) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < values.cols(); ++j) names.push_back("y" + std::to_string(j + 1));
  return toric_ideal(values, Ring(names), options);
}

KhovanskiiReport khovanskii_test(const ValuationContext& ctx, std::size_t cap) {
  KhovanskiiReport rep;
  if (ctx.mode() == ValuationContext::Mode::Presentation) {
    rep.contraction = ctx.value_matrix();
    auto in_gb = buchberger(ctx.initial_ideal(), MonomialOrder::degrevlex(), ctx.options());
    for (std::size_t i = 0; i < ctx.ring().size(); ++i)
      if (in_gb.contains(Polynomial::variable(ctx.ring(), i))) rep.variables_in_initial.push_back(i);
    rep.is_khovanskii = rep.variables_in_initial.empty();
    if (rep.is_khovanskii != (*rep.contraction == ctx.weights()))
      rep.notes.push_back("contraction fixed-point test disagrees with the initial-ideal test");
    for (auto i : rep.variables_in_initial)
      rep.notes.push_back(ctx.ring().name(i) + " lies in in_M(I), so its image vanishes in the associated graded algebra");
    return rep;
  }
  rep.relations = toric_ideal(ctx.value_matrix(), ctx.symbols(), ctx.options());
  rep.is_khovanskii = true;
  for (const auto& g : rep.relations->generators()) {
    auto h = g.substitute(ctx.generators());
    auto t = subduction(h, ctx, cap);
    rep.outcomes.push_back(t.outcome);
    if (t.outcome != SubductionTrace::Outcome::Exact) {
      rep.is_khovanskii = false;
      rep.notes.push_back("relation " + to_string(g) + " leaves " + to_string(t.outcome) + " residual " +
                          to_string(t.residual));
    }
  }
  return rep;
}

namespace {

std::size_t distinct_values(const ValuationContext& ctx) {
  std::set<Value> vals;
  for (const auto& c : columns_of(ctx.value_matrix())) vals.insert(c);
  return vals.size();
}

Polynomial lowest_monic(const Polynomial& p, const MonomialOrder& order) {
  auto low = p.sorted_terms(order).back();
  return p * Rational(1 / low.coeff);
}

}  // namespace

CompletionResult khovanskii_complete(const ValuationContext& ctx, std::size_t round_cap, std::size_t subduction_cap) {
  if (ctx.mode() != ValuationContext::Mode::Sagbi) throw PreconditionError("completion runs in SAGBI mode");
  CompletionResult res;
  res.basis = ctx.generators();
  const auto& order = ctx.ambient_order();
  const auto drl = MonomialOrder::degrevlex();
  while (res.rounds < round_cap) {
    ++res.rounds;
    auto cur = ValuationContext::sagbi(res.basis, order, ctx.options());
    auto rel = toric_ideal(cur.value_matrix(), cur.symbols(), ctx.options());
    auto gens = rel.generators();
    std::stable_sort(gens.begin(), gens.end(), [&](const Polynomial& a, const Polynomial& b) {
      return drl.compare(a.leading_monomial(drl), b.leading_monomial(drl)) < 0;
    });
    std::vector<Polynomial> stuck;
    for (const auto& g : gens) {
      auto t = subduction(g.substitute(res.basis), cur, subduction_cap);
      if (t.outcome == SubductionTrace::Outcome::CapExceeded) {
        res.capped = true;
        res.stop_reason = "subduction cap exceeded";
        res.value_counts.push_back(distinct_values(cur));
        return res;
      }
      if (t.outcome == SubductionTrace::Outcome::Stuck) stuck.push_back(t.residual);
    }
    std::size_t added = 0;
    for (const auto& r : stuck) {
      auto grown = ValuationContext::sagbi(res.basis, order, ctx.options());
      auto t = subduction(r, grown, subduction_cap);
      if (t.outcome == SubductionTrace::Outcome::Stuck && !t.residual.is_zero()) {
        res.basis.push_back(lowest_monic(t.residual, order));
        ++added;
      }
    }
    res.value_counts.push_back(distinct_values(ValuationContext::sagbi(res.basis, order, ctx.options())));
    if (added == 0) {
      res.complete = true;
      res.stop_reason = "no new elements";
      return res;
    }
  }
  res.capped = true;
  res.stop_reason = "round cap reached";
  return res;
}

ValueSemigroup::ValueSemigroup(std::vector<Value> generators, std::size_t box_bound) : box_bound_(box_bound) {
  std::set<Value> seen;
  for (auto& g : generators)
    if (!is_zero_vector(g) && seen.insert(g).second) gens_.push_back(g);
  if (gens_.empty()) return;
  graded_ = std::all_of(gens_.begin(), gens_.end(), [](const Value& g) { return !g.empty() && g[0] == -1; });
  functional_ = positive_functional(gens_, gens_[0].size());
}

bool ValueSemigroup::contains(const Value& v) const {
  if (is_zero_vector(v)) return true;
  if (gens_.empty() || v.size() != gens_[0].size()) return false;
  // Upper bound on the number of generators used.
  std::size_t budget;
  if (graded_) {
    if (v[0] > 0 || v[0].get_den() != 1) return false;
    budget = static_cast<std::size_t>(Integer(-v[0]).get_ui());
  } else if (functional_) {
    Rational b = dot(*functional_, v);
    if (b < 1) return false;
    budget = static_cast<std::size_t>(Integer(b.get_num() / b.get_den()).get_ui());
  } else {
    budget = box_bound_ * gens_.size();
  }
  std::size_t per = functional_ || graded_ ? budget : box_bound_;
  std::set<std::tuple<Value, std::size_t, std::size_t>> failed;
  std::function<bool(const Value&, std::size_t, std::size_t)> go = [&](const Value& rest, std::size_t i,
                                                                         std::size_t left) {
    if (is_zero_vector(rest)) return true;
    if (i == gens_.size() || left == 0) return false;
    if (failed.count({rest, i, left})) return false;
    Value r = rest;
    for (std::size_t c = 0; c <= std::min(left, per); ++c) {
      if (go(r, i + 1, left - c)) return true;
      for (std::size_t k = 0; k < r.size(); ++k) r[k] -= gens_[i][k];
    }
    failed.insert({rest, i, left});
    return false;
  };
  return go(v, 0, budget);
}

std::vector<Value> ValueSemigroup::level(std::size_t level) const {
  if (!graded_) throw PreconditionError("levels are defined for graded semigroups");
  std::set<Value> cur{Value(gens_[0].size())};
  for (std::size_t k = 0; k < level; ++k) {
    std::set<Value> next;
    for (const auto& v : cur)
      for (const auto& g : gens_) next.insert(add(v, g));
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

ValueSemigroup value_semigroup(const ValuationContext& ctx, std::size_t box_bound) {
  if (!khovanskii_test(ctx).is_khovanskii) throw PreconditionError("the generators are not a Khovanskii basis");
  return ValueSemigroup(columns_of(ctx.value_matrix()), box_bound);
}

bool one_dim_leaves_check(const ValuationContext& ctx, std::int64_t degree_bound) {
  // Lowest-term values are exponents, one monomial each.
  if (ctx.mode() == ValuationContext::Mode::Sagbi) return true;
  if (!khovanskii_test(ctx).is_khovanskii) throw PreconditionError("the variables are not a Khovanskii basis");
  std::set<Value> seen;
  for (const auto& e : ctx.gb().standard_monomials(degree_bound))
    if (!seen.insert(ctx.weight(e)).second) return false;
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::Unknown: break;
  }
  return "Unknown";
}

ValuationVerdict is_valuation(const ValuationContext& ctx, const PrimalityOptions& options) {
  if (ctx.mode() != ValuationContext::Mode::Presentation)
    throw PreconditionError("the valuation test applies to presentation contexts");
  ValuationVerdict out;
  out.certificate = is_prime_desk(ctx.initial_ideal(), options);
  switch (out.certificate.verdict) {
    case Primality::Prime: out.verdict = Verdict::Yes; break;
    case Primality::NotPrime: out.verdict = Verdict::No; break;
    case Primality::Unknown: out.verdict = Verdict::Unknown; break;
  }
  return out;
}

Polynomial random_element(const ValuationContext& ctx, std::mt19937_64& rng) {
  bool pres = ctx.mode() == ValuationContext::Mode::Presentation;
  const Ring& r = ctx.symbols();
  std::uniform_int_distribution<int> nterms(1, 4), coeff(-3, 3), var(0, static_cast<int>(r.size()) - 1);
  std::uniform_int_distribution<int> deg(0, pres ? 3 : 2);
  for (;;) {
    Polynomial p(r);
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
      ExponentVector e(r.size());
      int d = deg(rng);
      for (int s = 0; s < d && r.size() > 0; ++s) e[var(rng)] += 1;
      int c = coeff(rng);
      if (c != 0) p.add_term(e, c);
    }
    if (p.is_zero()) continue;
    Polynomial f = pres ? p : p.substitute(ctx.generators());
    if (pres ? !ctx.gb().normal_form(f).is_zero() : !f.is_zero()) return f;
  }
}

AxiomReport quasivaluation_axioms_check(const ValuationContext& ctx, std::size_t trials, std::uint64_t seed) {
  AxiomReport rep;
  bool pres = ctx.mode() == ValuationContext::Mode::Presentation;
  auto nonzero = [&](const Polynomial& f) { return pres ? !ctx.gb().normal_form(f).is_zero() : !f.is_zero(); };
  auto check = [&](const Polynomial& f, const Polynomial& g) {
    ++rep.trials;
    auto vf = ctx.evaluate(f), vg = ctx.evaluate(g);
    auto lo = lex_compare(vf, vg) < 0 ? vf : vg;
    if (auto s = f + g; nonzero(s) && lex_compare(ctx.evaluate(s), lo) < 0)
      rep.violations.push_back("v(f+g) < min at f = " + to_string(f) + ", g = " + to_string(g));
    if (auto p = f * g; nonzero(p)) {
      auto vp = ctx.evaluate(p), sum = add(vf, vg);
      auto cmp = lex_compare(vp, sum);
      if (cmp < 0)
        rep.violations.push_back("v(fg) < v(f)+v(g) at f = " + to_string(f) + ", g = " + to_string(g));
      else if (cmp > 0)
        rep.strict_witnesses.push_back({f, g, vp, sum});
    }
    for (const Rational& c : {Rational(-2), Rational(3, 5)})
      if (ctx.evaluate(f * c) != vf) rep.violations.push_back("v(cf) != v(f) at f = " + to_string(f));
  };
  auto gens = ctx.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j)
      if (nonzero(gens[i]) && nonzero(gens[j])) check(gens[i], gens[j]);
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto f = random_element(ctx, rng);
    auto g = random_element(ctx, rng);
    check(f, g);
  }
  return rep;
}

PrimeConeFromValuation prime_cone_from_valuation(const ValuationContext& ctx, const PrimalityOptions& options) {
  auto verdict = is_valuation(ctx, options);
  if (verdict.verdict != Verdict::Yes) throw PreconditionError("in_M(I) is not certified prime");
  PrimeConeFromValuation out;
  const auto& gopts = ctx.options();
  out.u = rank1_representative(ctx.ideal(), ctx.weights(), gopts);
  out.cone = equivalence_cone(ctx.weights(), ctx.ideal(), ctx.gb().working_order(), gopts);
  out.u_in_cone = out.cone.contains(out.u);
  out.initial_ideals_agree =
      ideal_equal(khova::initial_ideal(ctx.ideal(), WeightMatrix({out.u}), gopts), ctx.initial_ideal(), gopts);
  out.values_tropical = in_tropical_variety_rank_r(ctx.value_matrix(), ctx.ideal(), gopts);
  return out;
}

}  // namespace khova

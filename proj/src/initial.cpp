#include "khova/initial.hpp"

#include "khova/errors.hpp"

namespace khova {

namespace {

void check_dims(const Ideal& ideal, const WeightMatrix& m) {
  if (m.rows() == 0) throw PreconditionError("weight matrix has no rows");
  if (m.cols() != ideal.ring().size()) throw PreconditionError("weight matrix column count differs from variable count");
}

Vec difference(const ExponentVector& a, const ExponentVector& b) {
  Vec d(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) d[j] = Rational(a[j] - b[j]);
  return d;
}

Vec times(const WeightMatrix& m, const Vec& x) {
  Vec r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) r[i] = dot(m.row(i), x);
  return r;
}

bool lex_positive(const Vec& v) {
  for (const auto& c : v)
    if (c != 0) return c > 0;
  return false;
}

}  // namespace

InitialComputation compute_initial(const Ideal& ideal, const WeightMatrix& m, const MonomialOrder& tiebreak,
                                   const GroebnerOptions& options) {
  check_dims(ideal, m);
  InitialComputation out;
  out.source = ideal;
  out.weights = m;
  bool direct = m.columns_lex_nonpositive() || positive_grading(ideal, options).has_value();
  if (direct) {
    out.gb = buchberger(ideal, MonomialOrder::composite(m, tiebreak), options);
    std::vector<Polynomial> forms;
    for (const auto& g : out.gb.basis()) forms.push_back(g.initial_form(m));
    out.initial = Ideal(ideal.ring(), std::move(forms));
    return out;
  }
  out.homogenized = true;
  Ideal h = homogenize(ideal, options);
  WeightMatrix m0 = m.with_leading_zero_column();
  out.gb = buchberger(h, MonomialOrder::composite(m0, tiebreak), options);
  std::vector<Polynomial> forms;
  Ring small = h.ring().without_variable(0);
  for (const auto& g : out.gb.basis()) {
    auto f = g.initial_form(m0).specialize(0, 1, small);
    forms.emplace_back(ideal.ring(), f.terms());
  }
  out.initial = Ideal(ideal.ring(), std::move(forms));
  return out;
}

Ideal initial_ideal(const Ideal& ideal, const WeightMatrix& m, const GroebnerOptions& options) {
  return compute_initial(ideal, m, MonomialOrder::degrevlex(), options).initial;
}

Ideal iterated_initial_ideal(const Ideal& ideal, const std::vector<Vec>& rows, const GroebnerOptions& options) {
  Ideal cur = ideal;
  for (const auto& row : rows) cur = initial_ideal(cur, WeightMatrix({row}), options);
  return cur;
}

bool groebner_region_test(const WeightMatrix& m, const Ideal& ideal, const MonomialOrder& order,
                          const GroebnerOptions& options) {
  check_dims(ideal, m);
  if (!order.is_well_ordered()) throw PreconditionError("the reference order must be a monomial order");
  auto gb = buchberger(ideal, order, options);
  for (const auto& g : gb.basis())
    if (g.initial_form(m).leading_monomial(order) != g.leading_monomial(order)) return false;
  return true;
}

bool ConeDescription::contains(const Vec& u) const {
  for (const auto& f : equalities)
    if (dot(f, u) != 0) return false;
  for (const auto& f : strict_inequalities)
    if (dot(f, u) <= 0) return false;
  return true;
}

bool ConeDescription::contains(const WeightMatrix& m) const {
  for (const auto& f : equalities)
    for (const auto& c : times(m, f))
      if (c != 0) return false;
  for (const auto& f : strict_inequalities)
    if (!lex_positive(times(m, f))) return false;
  return true;
}

ConeDescription equivalence_cone(const WeightMatrix& m, const Ideal& ideal, const MonomialOrder& order,
                                 const GroebnerOptions& options) {
  if (!groebner_region_test(m, ideal, order, options))
    throw PreconditionError("weight matrix is outside the Groebner cone of the order");
  auto gb = buchberger(ideal, order, options);
  ConeDescription cone;
  for (const auto& g : gb.basis()) {
    auto lead = g.leading_monomial(order);
    auto init = g.initial_form(m);
    for (const auto& t : g.sorted_terms(order)) {
      if (t.exponent == lead) continue;
      auto d = difference(t.exponent, lead);
      if (init.coefficient(t.exponent) != 0)
        cone.equalities.push_back(std::move(d));
      else
        cone.strict_inequalities.push_back(std::move(d));
    }
  }
  return cone;
}

Mat lineality_space(const Ideal& ideal, const GroebnerOptions& options) {
  return homogeneity_space(buchberger(ideal, MonomialOrder::degrevlex(), options));
}

Vec rank1_representative(const Ideal& ideal, const WeightMatrix& m, const GroebnerOptions& options) {
  auto comp = compute_initial(ideal, m, MonomialOrder::degrevlex(), options);
  WeightMatrix w = comp.homogenized ? m.with_leading_zero_column() : m;
  std::size_t r = m.rows();
  std::vector<LinearInequality> sys;
  for (std::size_t i = 0; i < r; ++i) {
    Vec e(r);
    e[i] = 1;
    sys.push_back({e, 0});
  }
  sys.push_back({Vec(r, Rational(1)), 1});
  for (const auto& g : comp.gb.basis()) {
    auto init = g.initial_form(w);
    const auto& a0 = init.terms().begin()->first;
    for (const auto& [b, c] : g.terms()) {
      if (init.coefficient(b) != 0) continue;
      sys.push_back({times(w, difference(b, a0)), 1});
    }
  }
  auto v = fourier_motzkin(sys, r);
  if (!v) throw Error("no non-negative combination of the rows separates the initial forms");
  Vec u(m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) u[j] += (*v)[i] * m(i, j);
  if (!ideal_equal(initial_ideal(ideal, WeightMatrix({u}), options), comp.initial, options))
    throw Error("rank-one representative failed verification");
  return u;
}

}  // namespace khova

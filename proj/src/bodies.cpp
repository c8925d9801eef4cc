#include "khova/bodies.hpp"

#include <algorithm>
#include <set>

#include "khova/errors.hpp"

namespace khova {

namespace {

Mat value_columns(const ValuationContext& ctx) {
  const auto& v = ctx.value_matrix();
  Mat cols;
  for (std::size_t j = 0; j < v.cols(); ++j) cols.push_back(v.column(j));
  return cols;
}

void require_khovanskii(const ValuationContext& ctx) {
  if (!khovanskii_test(ctx).is_khovanskii)
    throw PreconditionError("the generators are not a Khovanskii basis; their values need not generate the semigroup");
}

void require_graded_presentation(const ValuationContext& ctx) {
  if (ctx.mode() != ValuationContext::Mode::Presentation)
    throw PreconditionError("a graded presentation is required");
  if (!ctx.ideal().generators_homogeneous()) throw PreconditionError("the ideal is not homogeneous");
}

Rational factorial(std::size_t q) {
  Rational f = 1;
  for (std::size_t i = 2; i <= q; ++i) f *= static_cast<long>(i);
  return f;
}

}  // namespace

Polyhedron newton_okounkov_cone(const ValuationContext& ctx) {
  require_khovanskii(ctx);
  std::size_t r = ctx.value_matrix().rows();
  return Polyhedron::from_generators(r, {Vec(r)}, value_columns(ctx));
}

Polyhedron newton_okounkov_body(const ValuationContext& ctx) {
  require_khovanskii(ctx);
  Mat points;
  for (const auto& c : value_columns(ctx)) {
    if (c[0] != -1) throw PreconditionError("every generator value must have first coordinate -1");
    points.emplace_back(c.begin() + 1, c.end());
  }
  return Polyhedron::from_generators(ctx.value_matrix().rows() - 1, points);
}

BodyDegree body_degree(const ValuationContext& ctx) {
  BodyDegree out;
  out.body = newton_okounkov_body(ctx);
  out.dimension = out.body.affine_dimension();
  out.degree = normalized_volume(out.body, out.dimension);
  out.volume = out.degree / factorial(out.dimension);
  return out;
}

std::vector<std::size_t> hilbert_function(const ValuationContext& ctx, std::int64_t max_degree) {
  require_graded_presentation(ctx);
  std::vector<std::size_t> h;
  for (std::int64_t d = 0; d <= max_degree; ++d) h.push_back(ctx.gb().standard_monomials_of_degree(d).size());
  return h;
}

Vec default_delta(const ValuationContext& ctx) { return Vec(ctx.value_matrix().rows(), Rational(-1)); }

Polyhedron compactification_body(const ValuationContext& ctx, const Vec& delta) {
  auto cone = newton_okounkov_cone(ctx);
  std::size_t r = cone.dim;
  if (delta.size() != r) throw PreconditionError("delta has the wrong length");
  if (!cone.in_relative_interior(delta))
    throw PreconditionError("delta is not in the relative interior of the Newton-Okounkov cone");
  auto ineqs = cone.inequalities;
  for (std::size_t i = 0; i < r; ++i) {
    Vec e(r);
    e[i] = -1;
    ineqs.push_back({e, 0});
    e[i] = 1;
    ineqs.push_back({e, delta[i]});
  }
  return Polyhedron::from_inequalities(r, ineqs, cone.equations);
}

bool compactification_contains(const ValueSemigroup& semigroup, std::int64_t level, const Value& r,
                               const Vec& delta) {
  if (r.size() != delta.size()) throw PreconditionError("value and delta lengths differ");
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] < delta[i] * level) return false;
  return semigroup.contains(r);
}

Polyhedron hat_polytope(const ValuationContext& ctx, const Vec& delta) {
  // Same precondition as the compactification body.
  compactification_body(ctx, delta);
  const auto& v = ctx.value_matrix();
  std::size_t n = v.cols();
  std::vector<LinearInequality> ineqs;
  for (std::size_t j = 0; j < n; ++j) {
    Vec e(n);
    e[j] = 1;
    ineqs.push_back({e, 0});
  }
  for (std::size_t i = 0; i < v.rows(); ++i) ineqs.push_back({v.row(i), delta[i]});
  auto p = Polyhedron::from_inequalities(n, ineqs);
  if (!p.is_bounded()) throw PreconditionError("the polytope is unbounded for this delta");
  return p;
}

bool representations_agree(const Polyhedron& p) {
  auto from_v = Polyhedron::from_generators(p.dim, p.vertices, p.rays, p.lines);
  auto from_h = Polyhedron::from_inequalities(p.dim, p.inequalities, p.equations);
  return same_set(from_v, p) && same_set(from_h, p) && same_set(from_v, from_h);
}

ReesTable rees_graded_dims(const ValuationContext& ctx, const std::vector<std::size_t>& sigma,
                           const std::vector<Value>& levels, std::int64_t max_degree,
                           std::size_t window_cap) {
  require_graded_presentation(ctx);
  const auto& m = ctx.weights();
  for (auto s : sigma)
    if (s >= m.rows()) throw PreconditionError("sigma names a row outside the weight matrix");
  if (max_degree < 0) throw PreconditionError("negative degree window");
  // Restricted values of the standard monomials, by degree.
  std::vector<std::vector<Value>> by_degree;
  std::size_t total = 0;
  for (std::int64_t d = 0; d <= max_degree; ++d) {
    std::vector<Value> vals;
    for (const auto& e : ctx.gb().standard_monomials_of_degree(d)) {
      if (++total > window_cap) throw CapExceeded("degree window holds too many standard monomials");
      auto w = ctx.weight(e);
      Value restricted;
      for (auto s : sigma) restricted.push_back(w[s]);
      vals.push_back(std::move(restricted));
    }
    by_degree.push_back(std::move(vals));
  }
  std::vector<Value> wanted = levels;
  if (wanted.empty()) {
    std::set<Value> seen;
    for (const auto& vals : by_degree) seen.insert(vals.begin(), vals.end());
    wanted.assign(seen.begin(), seen.end());
  }
  ReesTable table;
  table.sigma = sigma;
  table.max_degree = max_degree;
  for (const auto& level : wanted) {
    if (level.size() != sigma.size()) throw PreconditionError("level length differs from sigma");
    ReesRow row;
    row.level = level;
    for (const auto& vals : by_degree) {
      std::size_t w = 0, f = 0;
      for (const auto& v : vals) {
        if (v == level) ++w;
        bool above = true;
        for (std::size_t k = 0; k < v.size() && above; ++k) above = v[k] >= level[k];
        if (above) ++f;
      }
      row.w.push_back(w);
      row.f.push_back(f);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace khova

#include "khova/polyhedra.hpp"

#include <algorithm>

#include "khova/errors.hpp"

namespace khova {

namespace {

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& c) { return c == 0; });
}

Vec axpy(Vec y, const Rational& a, const Vec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  return y;
}

Vec primitive_vec(const Vec& v) { return is_zero_vec(v) ? v : primitive_integer(v); }

// Orthogonal projection onto the complement of span(lines); lines are
// independent.
Vec project_out(const Vec& v, const Mat& lines) {
  if (lines.empty()) return v;
  std::size_t k = lines.size();
  Mat gram(k, Vec(k));
  Vec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(lines[i], lines[j]);
    rhs[i] = dot(lines[i], v);
  }
  auto c = solve(gram, rhs, k);
  Vec r = v;
  for (std::size_t i = 0; i < k; ++i) r = axpy(r, -(*c)[i], lines[i]);
  return r;
}

Mat canonical_lines(Mat lines, std::size_t dim) {
  if (lines.empty()) return lines;
  auto piv = rref(lines, dim);
  lines.resize(piv.size());
  for (auto& l : lines) l = primitive_vec(l);
  return lines;
}

using TightSet = std::vector<bool>;

TightSet tight_set(const Vec& r, const Mat& processed) {
  TightSet z(processed.size());
  for (std::size_t i = 0; i < processed.size(); ++i) z[i] = dot(processed[i], r) == 0;
  return z;
}

bool superset(const TightSet& a, const TightSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] && !a[i]) return false;
  return true;
}

void sort_unique(Mat& m) {
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
}

struct HRep {
  std::vector<LinearInequality> ineqs, eqs;
  bool empty = false;
};

struct VRep {
  Mat vertices, rays, lines;
};

bool ineq_less(const LinearInequality& x, const LinearInequality& y) {
  if (x.a != y.a) return x.a < y.a;
  return x.b < y.b;
}

LinearInequality from_homogeneous(const Vec& y, std::size_t dim) {
  LinearInequality q;
  q.a.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(dim));
  q.b = -y[dim];
  return q;
}

HRep h_from_v(std::size_t dim, const Mat& vertices, const Mat& rays, const Mat& lines) {
  HRep h;
  if (vertices.empty()) {
    h.empty = true;
    return h;
  }
  Mat gens, eq;
  for (const auto& v : vertices) {
    Vec g = v;
    g.push_back(1);
    gens.push_back(g);
  }
  for (const auto& r : rays) {
    Vec g = r;
    g.push_back(0);
    gens.push_back(g);
  }
  for (const auto& l : lines) {
    Vec g = l;
    g.push_back(0);
    eq.push_back(g);
  }
  auto dual = cone_generators(gens, eq, dim + 1);
  for (const auto& y : dual.rays) {
    auto q = from_homogeneous(y, dim);
    if (!is_zero_vec(q.a)) h.ineqs.push_back(q);
  }
  for (const auto& y : dual.lines) h.eqs.push_back(from_homogeneous(y, dim));
  std::sort(h.ineqs.begin(), h.ineqs.end(), ineq_less);
  return h;
}

VRep v_from_h(std::size_t dim, const std::vector<LinearInequality>& ineqs,
              const std::vector<LinearInequality>& eqs) {
  Mat a, e;
  for (const auto& q : ineqs) {
    Vec row = q.a;
    row.push_back(-q.b);
    a.push_back(row);
  }
  Vec t(dim + 1);
  t[dim] = 1;
  a.push_back(t);
  for (const auto& q : eqs) {
    Vec row = q.a;
    row.push_back(-q.b);
    e.push_back(row);
  }
  auto cone = cone_generators(a, e, dim + 1);
  VRep v;
  for (const auto& r : cone.rays) {
    Vec x(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(dim));
    if (r[dim] > 0) {
      for (auto& c : x) c /= r[dim];
      v.vertices.push_back(x);
    } else {
      v.rays.push_back(primitive_vec(x));
    }
  }
  for (const auto& l : cone.lines) v.lines.push_back(Vec(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(dim)));
  v.lines = canonical_lines(v.lines, dim);
  sort_unique(v.vertices);
  sort_unique(v.rays);
  return v;
}

Rational determinant(Mat m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// Simplices (as point indices) triangulating conv(points[idx]).
std::vector<std::vector<std::size_t>> triangulate(const Mat& points, std::vector<std::size_t> idx, std::size_t dim) {
  Mat sub;
  for (auto i : idx) sub.push_back(points[i]);
  auto p = Polyhedron::from_generators(dim, sub);
  std::vector<std::size_t> verts;
  for (const auto& v : p.vertices)
    for (auto i : idx)
      if (points[i] == v) {
        verts.push_back(i);
        break;
      }
  std::sort(verts.begin(), verts.end());
  if (verts.size() <= 2) return {verts};
  std::size_t apex = verts.front();
  std::vector<std::vector<std::size_t>> out;
  for (const auto& f : p.inequalities) {
    if (dot(f.a, points[apex]) == f.b) continue;
    std::vector<std::size_t> facet;
    for (auto i : verts)
      if (dot(f.a, points[i]) == f.b) facet.push_back(i);
    for (auto s : triangulate(points, facet, dim)) {
      s.insert(s.begin(), apex);
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace

ConeGenerators cone_generators(const Mat& inequalities, const Mat& equations, std::size_t dim) {
  Mat lines, rays, processed;
  for (std::size_t i = 0; i < dim; ++i) {
    Vec e(dim);
    e[i] = 1;
    lines.push_back(e);
  }
  auto step = [&](const Vec& a, bool equality) {
    std::size_t pivot = lines.size();
    for (std::size_t k = 0; k < lines.size(); ++k)
      if (dot(a, lines[k]) != 0) {
        pivot = k;
        break;
      }
    if (pivot < lines.size()) {
      Vec l0 = lines[pivot];
      Rational s = dot(a, l0);
      if (s < 0) {
        for (auto& c : l0) c = -c;
        s = -s;
      }
      lines.erase(lines.begin() + static_cast<std::ptrdiff_t>(pivot));
      for (auto& l : lines) {
        Rational c = dot(a, l);
        if (c != 0) l = primitive_vec(axpy(l, -c / s, l0));
      }
      for (auto& r : rays) {
        Rational c = dot(a, r);
        if (c != 0) r = primitive_vec(axpy(r, -c / s, l0));
      }
      if (!equality) rays.push_back(primitive_vec(l0));
      sort_unique(rays);
      return;
    }
    std::vector<std::size_t> pos, zero, neg;
    Vec val(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) {
      val[k] = dot(a, rays[k]);
      (val[k] > 0 ? pos : val[k] < 0 ? neg : zero).push_back(k);
    }
    std::vector<TightSet> z;
    for (const auto& r : rays) z.push_back(tight_set(r, processed));
    Mat next;
    if (!equality)
      for (auto k : pos) next.push_back(rays[k]);
    for (auto k : zero) next.push_back(rays[k]);
    for (auto p : pos)
      for (auto n : neg) {
        TightSet common(processed.size());
        for (std::size_t i = 0; i < common.size(); ++i) common[i] = z[p][i] && z[n][i];
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k)
          if (k != p && k != n && superset(z[k], common)) adjacent = false;
        if (!adjacent) continue;
        Vec r(dim);
        for (std::size_t i = 0; i < dim; ++i) r[i] = val[p] * rays[n][i] - val[n] * rays[p][i];
        next.push_back(primitive_vec(r));
      }
    rays = std::move(next);
    sort_unique(rays);
  };
  for (const auto& e : equations) step(e, true);
  for (const auto& a : inequalities) {
    step(a, false);
    processed.push_back(a);
  }
  ConeGenerators out;
  out.lines = canonical_lines(lines, dim);
  for (const auto& r : rays) {
    Vec p = primitive_vec(project_out(r, out.lines));
    if (!is_zero_vec(p)) out.rays.push_back(p);
  }
  sort_unique(out.rays);
  return out;
}

Polyhedron Polyhedron::from_generators(std::size_t dim, const Mat& vertices, const Mat& rays, const Mat& lines) {
  Polyhedron p;
  p.dim = dim;
  auto h = h_from_v(dim, vertices, rays, lines);
  if (h.empty) {
    p.inequalities.push_back({Vec(dim), 1});
    return p;
  }
  auto v = v_from_h(dim, h.ineqs, h.eqs);
  p.vertices = std::move(v.vertices);
  p.rays = std::move(v.rays);
  p.lines = std::move(v.lines);
  p.inequalities = std::move(h.ineqs);
  p.equations = std::move(h.eqs);
  return p;
}

Polyhedron Polyhedron::from_inequalities(std::size_t dim, const std::vector<LinearInequality>& inequalities,
                                         const std::vector<LinearInequality>& equations) {
  for (const auto& q : inequalities)
    if (q.a.size() != dim) throw PreconditionError("inequality dimension mismatch");
  for (const auto& q : equations)
    if (q.a.size() != dim) throw PreconditionError("equation dimension mismatch");
  auto v = v_from_h(dim, inequalities, equations);
  return from_generators(dim, v.vertices, v.rays, v.lines);
}

bool Polyhedron::contains(const Vec& x) const {
  for (const auto& q : inequalities)
    if (dot(q.a, x) < q.b) return false;
  for (const auto& q : equations)
    if (dot(q.a, x) != q.b) return false;
  return true;
}

bool Polyhedron::in_relative_interior(const Vec& x) const {
  if (!contains(x)) return false;
  for (const auto& q : inequalities)
    if (dot(q.a, x) == q.b) return false;
  return true;
}

std::size_t Polyhedron::affine_dimension() const {
  if (vertices.empty()) return 0;
  Mat span;
  for (const auto& v : vertices) span.push_back(axpy(v, -1, vertices.front()));
  for (const auto& r : rays) span.push_back(r);
  for (const auto& l : lines) span.push_back(l);
  return rank(span, dim);
}

bool same_set(const Polyhedron& a, const Polyhedron& b) {
  if (a.dim != b.dim || a.is_empty() != b.is_empty()) return false;
  auto inside = [](const Polyhedron& p, const Polyhedron& q) {
    for (const auto& v : p.vertices)
      if (!q.contains(v)) return false;
    for (const auto& r : p.rays) {
      for (const auto& c : q.inequalities)
        if (dot(c.a, r) < 0) return false;
      for (const auto& c : q.equations)
        if (dot(c.a, r) != 0) return false;
    }
    for (const auto& l : p.lines) {
      for (const auto& c : q.inequalities)
        if (dot(c.a, l) != 0) return false;
      for (const auto& c : q.equations)
        if (dot(c.a, l) != 0) return false;
    }
    return true;
  };
  return inside(a, b) && inside(b, a);
}

Rational normalized_volume(const Polyhedron& p, std::size_t lattice_dim) {
  if (!p.is_bounded()) throw PreconditionError("volume of an unbounded polyhedron");
  if (p.is_empty()) return 0;
  std::size_t q = p.affine_dimension();
  if (q < lattice_dim) return 0;
  if (q > lattice_dim) throw PreconditionError("polytope dimension exceeds the requested lattice dimension");
  if (q == 0) return 1;
  std::size_t n = p.dim;
  const Vec& v0 = p.vertices.front();
  Mat diffs;
  for (const auto& v : p.vertices) diffs.push_back(axpy(v, -1, v0));
  // Lattice Z^n intersected with the direction space of the affine hull.
  Mat normals = nullspace(diffs, n);
  IntMat basis;
  if (normals.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      IntVec e(n, 0);
      e[i] = 1;
      basis.push_back(e);
    }
  } else {
    IntMat ni;
    for (const auto& row : normals) {
      IntVec r;
      for (const auto& c : row) r.push_back(c.get_num());
      ni.push_back(r);
    }
    basis = integer_kernel(ni, n);
  }
  Mat cols(n, Vec(q));
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t i = 0; i < n; ++i) cols[i][k] = basis[k][i];
  Mat coords;
  for (const auto& d : diffs) coords.push_back(*solve(cols, d, q));
  std::vector<std::size_t> idx(coords.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rational vol = 0;
  for (const auto& s : triangulate(coords, idx, q)) {
    Mat m;
    for (std::size_t i = 1; i < s.size(); ++i) m.push_back(axpy(coords[s[i]], -1, coords[s[0]]));
    vol += abs(determinant(m));
  }
  return vol;
}

}  // namespace khova

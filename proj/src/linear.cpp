#include "khova/linear.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "khova/errors.hpp"

namespace khova {

Rational dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw PreconditionError("dot product length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

std::vector<std::size_t> rref(Mat& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t k = c; k < a[r].size(); ++k)
        if (a[row][k] != 0) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  a.resize(row);
  return pivots;
}

std::size_t rank(Mat a, std::size_t cols) { return rref(a, cols).size(); }

Mat nullspace(const Mat& a, std::size_t cols) {
  Mat r = a;
  auto pivots = rref(r, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Mat basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][f];
    basis.push_back(primitive_integer(std::move(v)));
  }
  return basis;
}

std::optional<Vec> solve(const Mat& a, const Vec& b, std::size_t cols) {
  Mat aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto pivots = rref(aug, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  Vec x(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
  return x;
}

namespace {

// Row-style Hermite normal form of the given rows (zero rows dropped).
IntMat hermite_rows(IntMat m, std::size_t n) {
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m.size(); ++c) {
    while (true) {
      std::size_t best = m.size();
      for (std::size_t r = row; r < m.size(); ++r)
        if (m[r][c] != 0 && (best == m.size() || abs(m[r][c]) < abs(m[best][c]))) best = r;
      if (best == m.size()) break;
      std::swap(m[row], m[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < m.size(); ++r) {
        if (m[r][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[r][c].get_mpz_t(), m[row][c].get_mpz_t());
        for (std::size_t k = 0; k < n; ++k) m[r][k] -= q * m[row][k];
        if (m[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (row < m.size() && m[row][c] != 0) {
      if (m[row][c] < 0)
        for (auto& x : m[row]) x = -x;
      for (std::size_t r = 0; r < row; ++r) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[r][c].get_mpz_t(), m[row][c].get_mpz_t());
        if (q != 0)
          for (std::size_t k = 0; k < n; ++k) m[r][k] -= q * m[row][k];
      }
      ++row;
    }
  }
  m.resize(row);
  return m;
}

}  // namespace

IntMat integer_kernel(const IntMat& a, std::size_t n) {
  std::size_t m = a.size();
  // Columns of [A; I] under unimodular column operations.
  IntMat b(m + n, IntVec(n));
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != n) throw PreconditionError("ragged integer matrix");
    for (std::size_t j = 0; j < n; ++j) b[i][j] = a[i][j];
  }
  for (std::size_t j = 0; j < n; ++j) b[m + j][j] = 1;
  auto col_sub = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (auto& r : b) r[dst] -= q * r[src];
  };
  std::size_t k = 0;
  for (std::size_t i = 0; i < m && k < n; ++i) {
    while (true) {
      std::size_t best = n;
      for (std::size_t j = k; j < n; ++j)
        if (b[i][j] != 0 && (best == n || abs(b[i][j]) < abs(b[i][best]))) best = j;
      if (best == n) break;
      if (best != k)
        for (auto& r : b) std::swap(r[best], r[k]);
      bool done = true;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (b[i][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), b[i][j].get_mpz_t(), b[i][k].get_mpz_t());
        col_sub(j, k, q);
        if (b[i][j] != 0) done = false;
      }
      if (done) {
        ++k;
        break;
      }
    }
  }
  IntMat kernel;
  for (std::size_t j = k; j < n; ++j) {
    IntVec v(n);
    for (std::size_t t = 0; t < n; ++t) v[t] = b[m + t][j];
    kernel.push_back(std::move(v));
  }
  return hermite_rows(std::move(kernel), n);
}

IntMat lll_reduce(IntMat b) {
  const std::size_t k = b.size();
  if (k < 2) return b;
  const std::size_t n = b[0].size();
  // Gram-Schmidt data, recomputed from scratch after every change.
  Mat mu(k, Vec(k));
  Vec norm2(k);
  auto gram_schmidt = [&] {
    Mat star(k, Vec(n));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t t = 0; t < n; ++t) star[i][t] = b[i][t];
      for (std::size_t j = 0; j < i; ++j) {
        Rational d = 0;
        for (std::size_t t = 0; t < n; ++t) d += Rational(b[i][t]) * star[j][t];
        mu[i][j] = d / norm2[j];
        for (std::size_t t = 0; t < n; ++t) star[i][t] -= mu[i][j] * star[j][t];
      }
      norm2[i] = dot(star[i], star[i]);
      if (norm2[i] == 0) throw PreconditionError("lll_reduce needs independent rows");
    }
  };
  auto round_nearest = [](const Rational& q) {
    Integer twice_num = 2 * q.get_num() + q.get_den(), r;
    mpz_fdiv_q(r.get_mpz_t(), twice_num.get_mpz_t(), Integer(2 * q.get_den()).get_mpz_t());
    return r;
  };
  gram_schmidt();
  std::size_t i = 1;
  while (i < k) {
    for (std::size_t j = i; j-- > 0;) {
      Integer q = round_nearest(mu[i][j]);
      if (q == 0) continue;
      for (std::size_t t = 0; t < n; ++t) b[i][t] -= q * b[j][t];
      gram_schmidt();
    }
    if (norm2[i] >= (Rational(3, 4) - mu[i][i - 1] * mu[i][i - 1]) * norm2[i - 1]) {
      ++i;
    } else {
      std::swap(b[i], b[i - 1]);
      gram_schmidt();
      i = std::max<std::size_t>(i - 1, 1);
    }
  }
  return b;
}

IntVec smith_invariants(const IntMat& input) {
  IntMat a = input;
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  IntVec out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Pick the smallest nonzero entry of the trailing block as pivot.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) pr = i, pc = j;
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& r : a) std::swap(r[t], r[pc]);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          clean = false;
          std::swap(a[i], a[t]);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          clean = false;
          for (auto& r : a) std::swap(r[t], r[j]);
        }
      }
      if (!clean) continue;
      // The pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(a[t][t]));
  }
  return out;
}

bool lattice_is_saturated(const IntMat& generators) {
  for (const auto& d : smith_invariants(generators))
    if (d != 1) return false;
  return true;
}

namespace {

struct Constraint {
  Vec a;
  Rational b;
};

// Scale to a primitive integer (a, b) with a positive factor; the key makes
// duplicates collapse.
Constraint normalize(Constraint c) {
  Vec all = c.a;
  all.push_back(c.b);
  all = primitive_integer(std::move(all));
  c.b = all.back();
  all.pop_back();
  c.a = std::move(all);
  return c;
}

// Keep only the strongest right-hand side per normal vector.
std::vector<Constraint> prune(const std::vector<Constraint>& in, bool& infeasible) {
  std::map<Vec, Rational> best;
  for (auto c : in) {
    bool zero = std::all_of(c.a.begin(), c.a.end(), [](const Rational& q) { return q == 0; });
    if (zero) {
      if (c.b > 0) infeasible = true;
      continue;
    }
    // Normalize by the direction only so that different right-hand sides of
    // the same normal compare.
    Vec dir = primitive_integer(c.a);
    Rational scale = 0;
    for (std::size_t i = 0; i < dir.size(); ++i)
      if (c.a[i] != 0) {
        scale = dir[i] / c.a[i];
        break;
      }
    Rational rhs = c.b * scale;
    auto [it, inserted] = best.try_emplace(dir, rhs);
    if (!inserted && rhs > it->second) it->second = rhs;
  }
  std::vector<Constraint> out;
  for (auto& [a, b] : best) out.push_back({a, b});
  return out;
}

}  // namespace

std::optional<Vec> fourier_motzkin(const std::vector<LinearInequality>& system, std::size_t nvars) {
  constexpr std::size_t kMaxConstraints = 200000;
  std::vector<std::vector<Constraint>> levels(nvars + 1);
  std::vector<Constraint> cur;
  for (const auto& ineq : system) {
    if (ineq.a.size() != nvars) throw PreconditionError("inequality length mismatch");
    cur.push_back(normalize({ineq.a, ineq.b}));
  }
  bool infeasible = false;
  cur = prune(cur, infeasible);
  if (infeasible) return std::nullopt;
  for (std::size_t j = nvars; j-- > 0;) {
    levels[j + 1] = cur;
    std::vector<Constraint> lower, upper, next;
    for (auto& c : cur) {
      int s = sgn(c.a[j]);
      if (s > 0)
        lower.push_back(c);
      else if (s < 0)
        upper.push_back(c);
      else
        next.push_back(c);
    }
    if (lower.size() * upper.size() + next.size() > kMaxConstraints)
      throw CapExceeded("Fourier-Motzkin constraint count exceeded");
    for (const auto& l : lower)
      for (const auto& u : upper) {
        // l.a[j] > 0, u.a[j] < 0: combine to cancel x_j.
        Rational fl = -u.a[j], fu = l.a[j];
        Constraint c{Vec(nvars), fl * l.b + fu * u.b};
        for (std::size_t k = 0; k < nvars; ++k) c.a[k] = fl * l.a[k] + fu * u.a[k];
        next.push_back(normalize(std::move(c)));
      }
    cur = prune(next, infeasible);
    if (infeasible) return std::nullopt;
  }
  levels[0] = cur;
  Vec x(nvars);
  for (std::size_t j = 0; j < nvars; ++j) {
    std::optional<Rational> lo, hi;
    for (const auto& c : levels[j + 1]) {
      if (c.a[j] == 0) continue;
      Rational rest = c.b;
      for (std::size_t k = 0; k < j; ++k) rest -= c.a[k] * x[k];
      Rational bound = rest / c.a[j];
      if (sgn(c.a[j]) > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo && hi && *lo > *hi) return std::nullopt;
    x[j] = lo ? *lo : hi ? *hi : Rational(0);
  }
  return x;
}

}  // namespace khova

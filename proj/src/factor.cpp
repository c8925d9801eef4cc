#include "khova/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "khova/errors.hpp"

namespace khova {

namespace {

// ---------------------------------------------------------------------------
// Z[x] and Q[x]

using QPoly = std::vector<Rational>;

template <class P>
void trim(P& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

template <class P>
int deg(const P& f) {
  return static_cast<int>(f.size()) - 1;
}

Integer content(const ZPoly& f) {
  Integer g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive(ZPoly f) {
  trim(f);
  if (f.empty()) return f;
  Integer g = content(f);
  if (f.back() < 0) g = -g;
  for (auto& c : f) c /= g;
  return f;
}

QPoly to_q(const ZPoly& f) {
  QPoly q;
  for (const auto& c : f) q.emplace_back(c);
  return q;
}

ZPoly to_z_primitive(const QPoly& f) {
  Integer l = lcm_of_denominators(f);
  ZPoly z;
  for (const auto& c : f) z.push_back(c.get_num() * (l / c.get_den()));
  return primitive(std::move(z));
}

QPoly derivative(const QPoly& f) {
  QPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  trim(d);
  return d;
}

std::pair<QPoly, QPoly> divmod_q(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q;
  if (deg(a) < deg(b)) return {q, a};
  q.assign(a.size() - b.size() + 1, Rational(0));
  Rational inv = 1 / b.back();
  for (int i = deg(a); i >= deg(b); --i) {
    Rational c = a[i] * inv;
    if (c == 0) continue;
    q[i - deg(b)] = c;
    for (int j = 0; j <= deg(b); ++j) a[i - deg(b) + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return {q, a};
}

QPoly monic(QPoly f) {
  trim(f);
  if (f.empty()) return f;
  Rational inv = 1 / f.back();
  for (auto& c : f) c *= inv;
  return f;
}

QPoly gcd_q(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod_q(a, b).second;
    a = std::move(b);
    b = monic(std::move(r));
  }
  return monic(std::move(a));
}

QPoly sub_q(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

ZPoly mul_z(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::optional<ZPoly> divide_z(ZPoly a, const ZPoly& b) {
  trim(a);
  if (deg(a) < deg(b)) return a.empty() ? std::optional<ZPoly>(ZPoly{}) : std::nullopt;
  ZPoly q(a.size() - b.size() + 1);
  for (int i = deg(a); i >= deg(b); --i) {
    if (a[i] == 0) continue;
    if (a[i] % b.back() != 0) return std::nullopt;
    Integer c = a[i] / b.back();
    q[i - deg(b)] = c;
    for (int j = 0; j <= deg(b); ++j) a[i - deg(b) + j] -= c * b[j];
  }
  trim(a);
  if (!a.empty()) return std::nullopt;
  return q;
}

// Yun's algorithm; returns primitive squarefree parts with multiplicity.
std::vector<std::pair<ZPoly, int>> squarefree(const ZPoly& f) {
  std::vector<std::pair<ZPoly, int>> out;
  QPoly a = to_q(primitive(f));
  QPoly da = derivative(a);
  QPoly b = gcd_q(a, da);
  QPoly c = divmod_q(a, b).first;
  QPoly d = sub_q(divmod_q(da, b).first, derivative(c));
  for (int i = 1; deg(c) > 0; ++i) {
    QPoly g = gcd_q(c, d);
    c = divmod_q(c, g).first;
    d = sub_q(divmod_q(d, g).first, derivative(c));
    if (deg(g) > 0) out.emplace_back(to_z_primitive(g), i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// F_p[x]

using u64 = std::uint64_t;
using FpPoly = std::vector<u64>;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 inv_mod(u64 a, u64 p) { return powmod(a, p - 2, p); }

FpPoly to_fp(const ZPoly& f, u64 p) {
  FpPoly r;
  for (const auto& c : f) {
    Integer m;
    mpz_fdiv_r_ui(m.get_mpz_t(), c.get_mpz_t(), p);
    r.push_back(m.get_ui());
  }
  trim(r);
  return r;
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  trim(r);
  return r;
}

FpPoly fp_sub(FpPoly a, const FpPoly& b, u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

std::pair<FpPoly, FpPoly> fp_divmod(FpPoly a, const FpPoly& b, u64 p) {
  trim(a);
  FpPoly q;
  if (deg(a) < deg(b)) return {q, a};
  q.assign(a.size() - b.size() + 1, 0);
  u64 inv = inv_mod(b.back(), p);
  for (int i = deg(a); i >= deg(b); --i) {
    u64 c = mulmod(a[i], inv, p);
    if (!c) continue;
    q[i - deg(b)] = c;
    for (int j = 0; j <= deg(b); ++j) a[i - deg(b) + j] = (a[i - deg(b) + j] + p - mulmod(c, b[j], p)) % p;
  }
  trim(a);
  trim(q);
  return {q, a};
}

FpPoly fp_monic(FpPoly f, u64 p) {
  trim(f);
  if (f.empty()) return f;
  u64 inv = inv_mod(f.back(), p);
  for (auto& c : f) c = mulmod(c, inv, p);
  return f;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = fp_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(std::move(a), p);
}

FpPoly fp_powmod(FpPoly base, Integer e, const FpPoly& mod, u64 p) {
  FpPoly r{1};
  base = fp_divmod(base, mod, p).second;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = fp_divmod(fp_mul(r, base, p), mod, p).second;
    base = fp_divmod(fp_mul(base, base, p), mod, p).second;
    e >>= 1;
  }
  return r;
}

FpPoly fp_derivative(const FpPoly& f, u64 p) {
  FpPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mulmod(f[i], i % p, p));
  trim(d);
  return d;
}

void equal_degree(const FpPoly& g, int d, u64 p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (deg(g) == d) {
    out.push_back(g);
    return;
  }
  Integer pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(d));
  Integer e = (pd - 1) / 2;
  std::uniform_int_distribution<u64> coef(0, p - 1);
  while (true) {
    FpPoly a(static_cast<std::size_t>(deg(g)));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (deg(a) < 1) continue;
    FpPoly b = fp_sub(fp_powmod(a, e, g, p), FpPoly{1}, p);
    FpPoly u = fp_gcd(g, b, p);
    if (deg(u) > 0 && deg(u) < deg(g)) {
      equal_degree(u, d, p, rng, out);
      equal_degree(fp_divmod(g, u, p).first, d, p, rng, out);
      return;
    }
  }
}

// Monic irreducible factors of a monic squarefree f over F_p (p odd).
std::vector<FpPoly> factor_fp(FpPoly f, u64 p, std::mt19937_64& rng) {
  std::vector<FpPoly> out;
  FpPoly x{0, 1};
  FpPoly h = fp_divmod(x, f, p).second;
  for (int d = 1; 2 * d <= deg(f); ++d) {
    h = fp_powmod(h, Integer(static_cast<unsigned long>(p)), f, p);
    FpPoly g = fp_gcd(f, fp_sub(h, x, p), p);
    if (deg(g) > 0) {
      equal_degree(g, d, p, rng, out);
      f = fp_divmod(f, g, p).first;
      h = fp_divmod(h, f, p).second;
    }
  }
  if (deg(f) > 0) out.push_back(fp_monic(f, p));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// (Z/mZ)[x] and Hensel lifting

ZPoly zm_reduce(ZPoly f, const Integer& m) {
  for (auto& c : f) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(f);
  return f;
}

ZPoly zm_mul(const ZPoly& a, const ZPoly& b, const Integer& m) { return zm_reduce(mul_z(a, b), m); }

ZPoly zm_add(ZPoly a, const ZPoly& b, const Integer& m) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return zm_reduce(std::move(a), m);
}

ZPoly zm_sub(ZPoly a, const ZPoly& b, const Integer& m) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return zm_reduce(std::move(a), m);
}

// Division by a monic b.
std::pair<ZPoly, ZPoly> zm_divmod(ZPoly a, const ZPoly& b, const Integer& m) {
  a = zm_reduce(std::move(a), m);
  ZPoly q;
  if (deg(a) < deg(b)) return {q, a};
  q.assign(a.size() - b.size() + 1, Integer(0));
  for (int i = deg(a); i >= deg(b); --i) {
    Integer c = a[i];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c == 0) continue;
    q[i - deg(b)] = c;
    for (int j = 0; j <= deg(b); ++j) a[i - deg(b) + j] -= c * b[j];
  }
  return {zm_reduce(std::move(q), m), zm_reduce(std::move(a), m)};
}

ZPoly from_fp(const FpPoly& f) {
  ZPoly z;
  for (auto c : f) z.emplace_back(static_cast<unsigned long>(c));
  return z;
}

// s*g + t*h = 1 over F_p.
std::pair<FpPoly, FpPoly> fp_bezout(const FpPoly& g, const FpPoly& h, u64 p) {
  FpPoly r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = fp_divmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s2 = fp_sub(s0, fp_mul(q, s1, p), p);
    auto t2 = fp_sub(t0, fp_mul(q, t1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 inv = inv_mod(r0.front(), p);
  for (auto& c : s0) c = mulmod(c, inv, p);
  for (auto& c : t0) c = mulmod(c, inv, p);
  return {s0, t0};
}

struct Lift {
  ZPoly g, h, s, t;
};

// One quadratic step: from modulus m to m^2, with h monic.
Lift hensel_step(const ZPoly& f, const Lift& l, const Integer& m) {
  Integer m2 = m * m;
  ZPoly e = zm_sub(f, zm_mul(l.g, l.h, m2), m2);
  auto [q, r] = zm_divmod(zm_mul(l.s, e, m2), l.h, m2);
  ZPoly g = zm_add(zm_add(l.g, zm_mul(l.t, e, m2), m2), zm_mul(q, l.g, m2), m2);
  ZPoly h = zm_add(l.h, r, m2);
  ZPoly b = zm_sub(zm_add(zm_mul(l.s, g, m2), zm_mul(l.t, h, m2), m2), ZPoly{1}, m2);
  auto [c, d] = zm_divmod(zm_mul(l.s, b, m2), h, m2);
  ZPoly s = zm_sub(l.s, d, m2);
  ZPoly t = zm_sub(zm_sub(l.t, zm_mul(l.t, b, m2), m2), zm_mul(c, g, m2), m2);
  return {g, h, s, t};
}

// Lifts f = lc * prod(fs) mod p to monic factors mod p^(2^k).
std::vector<ZPoly> lift_tree(const ZPoly& f, const std::vector<FpPoly>& fs, u64 p, int k, const Integer& big) {
  if (fs.size() == 1) {
    Integer inv, lc = f.back();
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), big.get_mpz_t());
    ZPoly r = f;
    for (auto& c : r) c *= inv;
    return {zm_reduce(std::move(r), big)};
  }
  std::size_t half = fs.size() / 2;
  FpPoly g0{to_fp(ZPoly{f.back()}, p)};
  FpPoly h0{1};
  for (std::size_t i = 0; i < half; ++i) g0 = fp_mul(g0, fs[i], p);
  for (std::size_t i = half; i < fs.size(); ++i) h0 = fp_mul(h0, fs[i], p);
  auto [s0, t0] = fp_bezout(g0, h0, p);
  Lift l{from_fp(g0), from_fp(h0), from_fp(s0), from_fp(t0)};
  Integer m(static_cast<unsigned long>(p));
  for (int i = 0; i < k; ++i) {
    l = hensel_step(f, l, m);
    m = m * m;
  }
  std::vector<FpPoly> left(fs.begin(), fs.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<FpPoly> right(fs.begin() + static_cast<std::ptrdiff_t>(half), fs.end());
  auto a = lift_tree(l.g, left, p, k, big);
  auto b = lift_tree(l.h, right, p, k, big);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

ZPoly symmetric(ZPoly f, const Integer& m) {
  Integer half = m / 2;
  for (auto& c : f) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  trim(f);
  return f;
}

bool is_prime_small(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Irreducible factors of a primitive squarefree f with deg >= 1.
std::vector<ZPoly> factor_squarefree(ZPoly f, const FactorLimits& limits) {
  if (deg(f) <= 1) return {f};
  // Pick among a few good primes the one with fewest modular factors.
  std::mt19937_64 rng(0x5eed);
  u64 best_p = 0;
  std::vector<FpPoly> best;
  int good = 0;
  for (u64 p = 3; good < 6 && p < 100000; p += 2) {
    if (!is_prime_small(p)) continue;
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), f.back().get_mpz_t(), p);
    if (r == 0) continue;
    FpPoly fp = to_fp(f, p);
    if (deg(fp_gcd(fp, fp_derivative(fp, p), p)) > 0) continue;
    ++good;
    auto fs = factor_fp(fp_monic(fp, p), p, rng);
    if (best_p == 0 || fs.size() < best.size()) {
      best_p = p;
      best = std::move(fs);
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) throw CapExceeded("no suitable prime for modular factorization");
  if (best.size() == 1) return {f};

  // Coefficient bound for lc(f) * (monic factor).
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Integer bound = abs(f.back()) * norm * (Integer(1) << static_cast<unsigned>(deg(f)));
  Integer target = 2 * bound + 1;
  int k = 0;
  Integer big(static_cast<unsigned long>(best_p));
  while (big < target) {
    big = big * big;
    ++k;
  }
  auto lifted = lift_tree(f, best, best_p, k, big);

  std::vector<ZPoly> out;
  std::size_t tried = 0;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (++tried > limits.max_subsets) throw CapExceeded("factor recombination cap exceeded");
      ZPoly g{f.back()};
      for (auto i : idx) g = zm_mul(g, lifted[i], big);
      g = primitive(symmetric(g, big));
      bool plausible = f.front() == 0 || (g.front() != 0 && f.front() % g.front() == 0);
      if (plausible && f.back() % g.back() == 0) {
        if (auto q = divide_z(f, g)) {
          out.push_back(g);
          f = primitive(*q);
          std::vector<ZPoly> rest;
          for (std::size_t i = 0, j = 0; i < lifted.size(); ++i) {
            if (j < idx.size() && idx[j] == i)
              ++j;
            else
              rest.push_back(lifted[i]);
          }
          lifted = std::move(rest);
          found = true;
          break;
        }
      }
      // Next combination.
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == lifted.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (deg(f) > 0) out.push_back(primitive(f));
  return out;
}

// ---------------------------------------------------------------------------
// Multivariate

std::vector<std::size_t> used_variables(const Polynomial& f) {
  std::vector<std::size_t> used;
  for (std::size_t j = 0; j < f.ring().size(); ++j)
    for (const auto& [e, c] : f.terms())
      if (e[j]) {
        used.push_back(j);
        break;
      }
  return used;
}

// Integer-coefficient primitive form with positive lex-leading coefficient.
Polynomial normalize(const Polynomial& f) {
  std::vector<Rational> cs;
  for (const auto& [e, c] : f.terms()) cs.push_back(c);
  Rational scale = Rational(lcm_of_denominators(cs));
  Integer g = 0;
  for (const auto& c : cs) {
    Rational s = c * scale;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
  }
  scale /= g;
  if (sgn(f.terms().rbegin()->second) < 0) scale = -scale;
  return f * scale;
}

std::vector<Polynomial> factor_core(const Polynomial& f, const FactorLimits& limits);

std::vector<Polynomial> factor_univariate_in(const Polynomial& f, std::size_t x, const FactorLimits& limits) {
  ZPoly u(static_cast<std::size_t>(f.total_degree()) + 1);
  for (const auto& [e, c] : f.terms()) u[static_cast<std::size_t>(e[x])] = c.get_num();
  std::vector<Polynomial> out;
  for (const auto& [g, mult] : factor_univariate(u, limits)) {
    Polynomial p(f.ring());
    for (std::size_t k = 0; k < g.size(); ++k) {
      ExponentVector e(f.ring().size());
      e[x] = static_cast<std::int32_t>(k);
      p.add_term(e, Rational(g[k]));
    }
    for (int m = 0; m < mult; ++m) out.push_back(p);
  }
  return out;
}

std::vector<Polynomial> factor_kronecker(const Polynomial& f, const std::vector<std::size_t>& used,
                                         const FactorLimits& limits) {
  std::size_t n = f.ring().size();
  std::vector<Integer> radix(n, 1), place(n, 0);
  Integer acc = 1;
  for (auto j : used) {
    std::int32_t dmax = 0;
    for (const auto& [e, c] : f.terms()) dmax = std::max(dmax, e[j]);
    radix[j] = dmax + 1;
    place[j] = acc;
    acc *= radix[j];
  }
  Integer top = 0;
  for (const auto& [e, c] : f.terms()) {
    Integer k = 0;
    for (auto j : used) k += place[j] * e[j];
    top = std::max(top, k);
  }
  if (top > static_cast<long>(limits.max_univariate_degree)) throw CapExceeded("Kronecker degree too large");
  ZPoly u(top.get_ui() + 1);
  for (const auto& [e, c] : f.terms()) {
    Integer k = 0;
    for (auto j : used) k += place[j] * e[j];
    u[k.get_ui()] = c.get_num();
  }
  auto ufs = factor_univariate(u, limits);
  // Enumerate sub-multisets by increasing degree up to half the total.
  std::size_t half = (u.size() - 1) / 2;
  std::vector<std::vector<int>> counts;
  std::vector<int> cur(ufs.size(), 0);
  std::size_t budget = limits.max_subsets;
  auto rec = [&](auto&& self, std::size_t i, std::size_t degree) -> void {
    if (i == ufs.size()) {
      if (degree > 0) counts.push_back(cur);
      return;
    }
    for (int c = 0; c <= ufs[i].second; ++c) {
      std::size_t d = degree + static_cast<std::size_t>(c) * static_cast<std::size_t>(deg(ufs[i].first));
      if (d > half) break;
      if (counts.size() > budget) throw CapExceeded("Kronecker recombination cap exceeded");
      cur[i] = c;
      self(self, i + 1, d);
    }
    cur[i] = 0;
  };
  rec(rec, 0, 0);
  auto kdeg = [&](const std::vector<int>& c) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < c.size(); ++i) d += static_cast<std::size_t>(c[i]) * static_cast<std::size_t>(deg(ufs[i].first));
    return d;
  };
  std::stable_sort(counts.begin(), counts.end(),
                   [&](const auto& a, const auto& b) { return kdeg(a) < kdeg(b); });
  for (const auto& c : counts) {
    ZPoly prod{1};
    for (std::size_t i = 0; i < c.size(); ++i)
      for (int m = 0; m < c[i]; ++m) prod = mul_z(prod, ufs[i].first);
    Polynomial g(f.ring());
    bool valid = true;
    for (std::size_t k = 0; k < prod.size() && valid; ++k) {
      if (prod[k] == 0) continue;
      Integer rest = static_cast<unsigned long>(k);
      ExponentVector e(n);
      for (auto j : used) {
        Integer digit = rest % radix[j];
        rest /= radix[j];
        e[j] = static_cast<std::int32_t>(digit.get_si());
      }
      if (rest != 0) valid = false;
      g.add_term(e, Rational(prod[k]));
    }
    if (!valid || g.is_constant()) continue;
    if (auto q = divide_exact(f, g)) {
      std::vector<Polynomial> out{normalize(g)};
      auto rest = factor_core(normalize(*q), limits);
      out.insert(out.end(), rest.begin(), rest.end());
      return out;
    }
  }
  return {f};
}

// f: integer primitive, no monomial factor, nonconstant.
std::vector<Polynomial> factor_core(const Polynomial& f, const FactorLimits& limits) {
  if (f.is_constant()) return {};
  if (f.total_degree() <= 1) return {f};
  auto used = used_variables(f);
  if (used.size() == 1) return factor_univariate_in(f, used[0], limits);
  if (f.is_homogeneous()) {
    std::size_t z = used.back();
    Polynomial affine(f.ring());
    for (const auto& [e, c] : f.terms()) {
      ExponentVector a = e;
      a[z] = 0;
      affine.add_term(a, c);
    }
    std::vector<Polynomial> out;
    for (const auto& h : factor_core(normalize(affine), limits)) {
      auto d = h.total_degree();
      Polynomial hh(f.ring());
      for (const auto& [e, c] : h.terms()) {
        ExponentVector a = e;
        a[z] = static_cast<std::int32_t>(d - e.degree());
        hh.add_term(a, c);
      }
      out.push_back(normalize(hh));
    }
    return out;
  }
  return factor_kronecker(f, used, limits);
}

}  // namespace

std::vector<std::pair<ZPoly, int>> factor_univariate(const ZPoly& input, const FactorLimits& limits) {
  ZPoly f = primitive(input);
  if (f.empty()) throw PreconditionError("factoring the zero polynomial");
  if (static_cast<std::size_t>(deg(f)) > limits.max_univariate_degree)
    throw CapExceeded("univariate degree beyond factoring limit");
  std::vector<std::pair<ZPoly, int>> out;
  // Powers of x first.
  std::size_t low = 0;
  while (f[low] == 0) ++low;
  if (low) {
    out.push_back({ZPoly{0, 1}, static_cast<int>(low)});
    f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(low));
  }
  if (deg(f) >= 1)
    for (const auto& [g, mult] : squarefree(f))
      for (auto& h : factor_squarefree(g, limits)) out.push_back({h, mult});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  return out;
}

std::optional<Polynomial> divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw PreconditionError("division by zero polynomial");
  auto lex = MonomialOrder::lex();
  Term lg = g.leading_term(lex);
  Polynomial r = f, q(f.ring());
  while (!r.is_zero()) {
    Term lr = r.leading_term(lex);
    if (!lg.exponent.divides(lr.exponent)) return std::nullopt;
    ExponentVector e = lr.exponent - lg.exponent;
    Rational c = lr.coeff / lg.coeff;
    q.add_term(e, c);
    r -= g.times_monomial(e, c);
  }
  return q;
}

Polynomial Factorization::expand() const {
  Polynomial p = Polynomial::constant(ring, unit);
  for (const auto& [f, m] : factors) p = p * f.pow(static_cast<unsigned>(m));
  return p;
}

std::optional<Factorization> factor_polynomial(const Polynomial& f, const FactorLimits& limits) {
  if (f.is_zero()) throw PreconditionError("factoring the zero polynomial");
  const Ring& ring = f.ring();
  std::size_t n = ring.size();
  Polynomial g = normalize(f);
  ExponentVector mono = g.terms().begin()->first;
  for (const auto& [e, c] : g.terms()) mono = mono.gcd(e);
  Polynomial stripped(ring);
  for (const auto& [e, c] : g.terms()) stripped.add_term(e - mono, c);
  std::vector<Polynomial> flat;
  try {
    flat = factor_core(normalize(stripped), limits);
  } catch (const CapExceeded&) {
    return std::nullopt;
  }
  for (std::size_t j = 0; j < n; ++j)
    for (int k = 0; k < mono[j]; ++k) flat.push_back(Polynomial::variable(ring, j));
  std::map<std::string, std::pair<Polynomial, int>> grouped;
  for (auto& h : flat) {
    auto key = to_string(h);
    auto [it, inserted] = grouped.try_emplace(key, h, 0);
    it->second.second += 1;
  }
  Factorization out;
  out.ring = ring;
  auto lex = MonomialOrder::lex();
  Rational lead = 1;
  for (auto& [key, fm] : grouped) {
    out.factors.push_back(fm);
    Rational l = fm.first.leading_term(lex).coeff;
    for (int k = 0; k < fm.second; ++k) lead *= l;
  }
  std::sort(out.factors.begin(), out.factors.end(), [&](const auto& a, const auto& b) {
    auto da = a.first.total_degree(), db = b.first.total_degree();
    if (da != db) return da < db;
    return to_string(a.first) < to_string(b.first);
  });
  out.unit = f.leading_term(lex).coeff / lead;
  return out;
}

// ---------------------------------------------------------------------------
// Splitting over Q(theta)

namespace {

FieldElement field_mul(const FieldElement& a, const FieldElement& b, const std::vector<Rational>& m) {
  std::size_t d = m.size() - 1;
  std::vector<Rational> prod(2 * d, Rational(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (a[i] != 0 && b[j] != 0) prod[i + j] += a[i] * b[j];
  for (std::size_t k = prod.size(); k-- > d;) {
    Rational c = prod[k];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= d; ++i) prod[k - d + i] -= c * m[i];
  }
  prod.resize(d);
  return prod;
}

}  // namespace

std::optional<SplittingWitness> splitting_witness(const Polynomial& f) {
  if (f.is_zero()) return std::nullopt;
  auto used = used_variables(f);
  auto d = f.total_degree();
  if (d < 2) return std::nullopt;
  SplittingWitness w;
  if (used.size() == 1) {
    w.x = used[0];
  } else if (used.size() == 2 && f.is_homogeneous()) {
    w.x = used[0];
    w.z = used[1];
  } else {
    return std::nullopt;
  }
  std::vector<Rational> p(static_cast<std::size_t>(d) + 1, Rational(0));
  for (const auto& [e, c] : f.terms()) p[static_cast<std::size_t>(e[w.x])] = c;
  if (p.back() == 0) return std::nullopt;
  // The field needs an irreducible minimal polynomial.
  auto fs = factor_univariate(to_z_primitive(p));
  if (fs.size() != 1 || fs[0].second != 1) return std::nullopt;
  w.leading = p.back();
  for (auto& c : p) c /= w.leading;
  w.minimal_poly = p;
  std::size_t dd = static_cast<std::size_t>(d);
  FieldElement theta(dd, Rational(0));
  theta[1] = 1;
  // Synthetic division of m(x) by (x - theta).
  std::vector<FieldElement> q(dd, FieldElement(dd, Rational(0)));
  q[dd - 1][0] = 1;
  for (std::size_t k = dd - 1; k >= 1; --k) {
    FieldElement next = field_mul(theta, q[k], p);
    next[0] += p[k];
    q[k - 1] = next;
  }
  w.cofactor = q;
  return w;
}

bool replay_splitting(const SplittingWitness& w, const Polynomial& f) {
  const auto& m = w.minimal_poly;
  if (m.size() < 3 || m.back() != 1 || w.leading == 0) return false;
  std::size_t d = m.size() - 1;
  if (w.cofactor.size() != d) return false;
  for (const auto& c : w.cofactor)
    if (c.size() != d) return false;
  auto fs = factor_univariate(to_z_primitive(m));
  if (fs.size() != 1 || fs[0].second != 1 || deg(fs[0].first) != static_cast<int>(d)) return false;
  // f must be lc * (sum m_j x^j z^(d-j)).
  Polynomial expect(f.ring());
  for (std::size_t j = 0; j <= d; ++j) {
    ExponentVector e(f.ring().size());
    e[w.x] = static_cast<std::int32_t>(j);
    if (w.z) e[*w.z] = static_cast<std::int32_t>(d - j);
    expect.add_term(e, m[j] * w.leading);
  }
  if (!(expect == f)) return false;
  // (x - theta z) * sum q_k x^k z^(d-1-k) has x^j z^(d-j) coefficient
  // q_(j-1) - theta q_j; it must be the rational m_j.
  FieldElement theta(d, Rational(0));
  theta[1] = 1;
  for (std::size_t j = 0; j <= d; ++j) {
    FieldElement c(d, Rational(0));
    if (j >= 1)
      for (std::size_t i = 0; i < d; ++i) c[i] += w.cofactor[j - 1][i];
    if (j < d) {
      auto t = field_mul(theta, w.cofactor[j], m);
      for (std::size_t i = 0; i < d; ++i) c[i] -= t[i];
    }
    if (c[0] != m[j]) return false;
    for (std::size_t i = 1; i < d; ++i)
      if (c[i] != 0) return false;
  }
  return true;
}

}  // namespace khova

#include "khova/groebner.hpp"

#include <algorithm>

#include "khova/errors.hpp"
#include "khova/linear.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace khova {

Ideal::Ideal(Ring ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (!(g.ring() == ring_)) throw PreconditionError("generator over a different ring");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

bool Ideal::generators_homogeneous() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_homogeneous(); });
}

namespace {

// Terms sorted by descending working order.
struct WPoly {
  std::vector<Term> terms;
  std::int64_t sugar = 0;
  const ExponentVector& lm() const { return terms.front().exponent; }
};

WPoly to_w(const Polynomial& p, const MonomialOrder& ord) {
  return {p.sorted_terms(ord), p.total_degree()};
}

Polynomial from_terms(const std::vector<Term>& t, const Ring& ring) {
  Polynomial::TermMap m;
  for (const auto& term : t) m.emplace(term.exponent, term.coeff);
  return Polynomial(ring, std::move(m));
}

// p[start:] - c * x^shift * g, all sorted descending.
std::vector<Term> sub_scaled(const std::vector<Term>& p, std::size_t start, const std::vector<Term>& g,
                             const ExponentVector& shift, const Rational& c, const MonomialOrder& ord) {
  std::vector<Term> out;
  out.reserve(p.size() - start + g.size());
  std::size_t i = start, j = 0;
  ExponentVector gj;
  bool have = false;
  while (i < p.size() || j < g.size()) {
    if (j < g.size() && !have) {
      gj = g[j].exponent + shift;
      have = true;
    }
    std::strong_ordering cmp = std::strong_ordering::equal;
    if (i >= p.size())
      cmp = std::strong_ordering::less;
    else if (j >= g.size())
      cmp = std::strong_ordering::greater;
    else
      cmp = ord.compare(p[i].exponent, gj);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back({gj, -c * g[j].coeff});
      ++j;
      have = false;
    } else {
      Rational v = p[i].coeff - c * g[j].coeff;
      if (v != 0) out.push_back({p[i].exponent, std::move(v)});
      ++i;
      ++j;
      have = false;
    }
  }
  return out;
}

using Basis = std::vector<const WPoly*>;

const WPoly* find_divisor(const ExponentVector& e, const Basis& basis) {
  for (const auto* g : basis)
    if (g->lm().divides(e)) return g;
  return nullptr;
}

// Full reduction: the result has no term divisible by a leading monomial.
std::vector<Term> reduce(std::vector<Term> p, const Basis& basis, const MonomialOrder& ord) {
  std::vector<Term> rem;
  std::size_t head = 0;
  while (head < p.size()) {
    const Term& t = p[head];
    if (const WPoly* d = find_divisor(t.exponent, basis)) {
      Rational c = t.coeff / d->terms.front().coeff;
      ExponentVector shift = t.exponent - d->lm();
      p = sub_scaled(p, head, d->terms, shift, c, ord);
      head = 0;
    } else {
      rem.push_back(t);
      ++head;
    }
  }
  return rem;
}

struct Pair {
  std::size_t i, j;
  ExponentVector lcm;
  std::int64_t sugar;
};

bool coprime(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] && b[k]) return false;
  return true;
}

class Buchberger {
 public:
  Buchberger(const MonomialOrder& ord, const GroebnerOptions& opt) : ord_(ord), opt_(opt) {}

  void add_generator(const Polynomial& g) { insert(to_w(g, ord_)); }

  void run() {
    while (!pairs_.empty() && !unit_) {
      std::sort(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        auto c = ord_.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
      });
      std::size_t batch = 1;
      if (opt_.strategy == Strategy::Parallel)
        while (batch < pairs_.size() && pairs_[batch].sugar == pairs_[0].sugar) ++batch;
      std::vector<Pair> work(pairs_.begin(), pairs_.begin() + static_cast<std::ptrdiff_t>(batch));
      pairs_.erase(pairs_.begin(), pairs_.begin() + static_cast<std::ptrdiff_t>(batch));
      reduced_ += batch;
      if (reduced_ > opt_.caps.max_pairs)
        throw CapExceeded("Groebner pair cap of " + std::to_string(opt_.caps.max_pairs) + " exceeded");
      for (const auto& p : work)
        if (p.lcm.degree() > opt_.caps.max_degree)
          throw CapExceeded("Groebner degree cap of " + std::to_string(opt_.caps.max_degree) + " exceeded");
      Basis snapshot = active_basis();
      std::vector<WPoly> results(batch);
#pragma omp parallel for schedule(dynamic) if (batch > 1)
      for (std::size_t k = 0; k < batch; ++k) {
        WPoly s = spoly(work[k]);
        s.terms = reduce(std::move(s.terms), snapshot, ord_);
        results[k] = std::move(s);
      }
      for (auto& r : results)
        if (!r.terms.empty()) insert(std::move(r));
    }
  }

  std::vector<std::vector<Term>> reduced_basis() const {
    if (unit_) {
      const auto& one = polys_[*unit_];
      return {one.terms};
    }
    Basis g = active_basis();
    std::vector<std::vector<Term>> out;
    for (const auto* p : g) {
      Basis others;
      for (const auto* q : g)
        if (q != p) others.push_back(q);
      std::vector<Term> tail(p->terms.begin() + 1, p->terms.end());
      std::vector<Term> t{p->terms.front()};
      auto r = reduce(std::move(tail), others, ord_);
      t.insert(t.end(), r.begin(), r.end());
      Rational inv = 1 / t.front().coeff;
      for (auto& term : t) term.coeff *= inv;
      out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
      return ord_.greater(a.front().exponent, b.front().exponent);
    });
    return out;
  }

  std::size_t pairs_reduced() const { return reduced_; }

 private:
  Basis active_basis() const {
    Basis b;
    for (auto i : active_) b.push_back(&polys_[i]);
    return b;
  }

  WPoly spoly(const Pair& p) const {
    const WPoly& f = polys_[p.i];
    const WPoly& g = polys_[p.j];
    Rational cf = 1 / f.terms.front().coeff;
    std::vector<Term> a;
    a.reserve(f.terms.size());
    ExponentVector sf = p.lcm - f.lm();
    for (const auto& t : f.terms) a.push_back({t.exponent + sf, t.coeff * cf});
    ExponentVector sg = p.lcm - g.lm();
    auto s = sub_scaled(a, 0, g.terms, sg, 1 / g.terms.front().coeff, ord_);
    return {std::move(s), p.sugar};
  }

  void insert(WPoly h) {
    if (unit_) return;
    h.terms = reduce(std::move(h.terms), active_basis(), ord_);
    if (h.terms.empty()) return;
    Rational inv = 1 / h.terms.front().coeff;
    for (auto& t : h.terms) t.coeff *= inv;
    std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    if (polys_[hi].lm().is_zero()) {
      unit_ = hi;
      pairs_.clear();
      return;
    }
    update(hi);
  }

  std::int64_t pair_sugar(std::size_t i, std::size_t j, const ExponentVector& l) const {
    const auto& f = polys_[i];
    const auto& g = polys_[j];
    return std::max(f.sugar + l.degree() - f.lm().degree(), g.sugar + l.degree() - g.lm().degree());
  }

  // Gebauer-Moeller update for the new element h.
  void update(std::size_t h) {
    const ExponentVector& lh = polys_[h].lm();
    std::vector<Pair> c;
    for (auto g : active_) {
      ExponentVector l = lh.lcm(polys_[g].lm());
      c.push_back({g, h, l, pair_sugar(g, h, l)});
    }
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const auto& p = c[k];
      bool keep = coprime(lh, polys_[p.i].lm());
      if (!keep) {
        keep = true;
        for (std::size_t m = k + 1; m < c.size() && keep; ++m)
          if (c[m].lcm.divides(p.lcm)) keep = false;
        for (const auto& q : d)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> e;
    for (auto& p : d)
      if (!coprime(lh, polys_[p.i].lm())) e.push_back(std::move(p));
    std::vector<Pair> kept;
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && lh.lcm(polys_[p.i].lm()) != p.lcm &&
                  lh.lcm(polys_[p.j].lm()) != p.lcm;
      if (!drop) kept.push_back(std::move(p));
    }
    kept.insert(kept.end(), e.begin(), e.end());
    pairs_ = std::move(kept);
    std::vector<std::size_t> next;
    for (auto g : active_)
      if (!lh.divides(polys_[g].lm())) next.push_back(g);
    next.push_back(h);
    active_ = std::move(next);
  }

  MonomialOrder ord_;
  GroebnerOptions opt_;
  std::vector<WPoly> polys_;
  std::vector<std::size_t> active_;
  std::vector<Pair> pairs_;
  std::optional<std::size_t> unit_;
  std::size_t reduced_ = 0;
};

// Shift every row of M by a multiple of the positive grading w so that all
// entries become non-positive.
WeightMatrix shift_rows(const WeightMatrix& m, const std::vector<Rational>& w) {
  WeightMatrix out = m;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational c = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) c = std::max(c, Rational(m(i, j) / w[j]));
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) - c * w[j];
  }
  return out;
}

}  // namespace

GroebnerContext buchberger(const Ideal& ideal, const MonomialOrder& order, const GroebnerOptions& options) {
  GroebnerContext ctx;
  ctx.ring_ = ideal.ring();
  ctx.order_ = order;
  ctx.working_ = order;
  if (!order.is_well_ordered()) {
    auto w = positive_grading(ideal, options);
    if (!w)
      throw PreconditionError(
          "weight matrix is not column-wise non-positive and the ideal has no positive grading");
    ctx.working_ = MonomialOrder::composite(shift_rows(order.weights(), *w), order.tiebreak());
  }
  Buchberger b(ctx.working_, options);
  for (const auto& g : ideal.generators()) b.add_generator(g);
  b.run();
  for (auto& t : b.reduced_basis()) {
    ctx.leads_.push_back(t.front().exponent);
    ctx.basis_.push_back(from_terms(t, ctx.ring_));
  }
  ctx.pairs_reduced_ = b.pairs_reduced();
  return ctx;
}

Polynomial GroebnerContext::normal_form(const Polynomial& f) const {
  if (!(f.ring() == ring_)) throw PreconditionError("normal form over a different ring");
  std::vector<WPoly> ws;
  ws.reserve(basis_.size());
  for (const auto& g : basis_) ws.push_back(to_w(g, working_));
  Basis b;
  for (const auto& w : ws) b.push_back(&w);
  return from_terms(reduce(f.sorted_terms(working_), b, working_), ring_);
}

bool GroebnerContext::is_unit() const { return leads_.size() == 1 && leads_[0].is_zero(); }

bool GroebnerContext::is_standard(const ExponentVector& e) const {
  for (const auto& l : leads_)
    if (l.divides(e)) return false;
  return true;
}

std::vector<ExponentVector> monomials_of_degree(std::size_t n, std::int64_t d) {
  std::vector<ExponentVector> out;
  if (d < 0) return out;
  if (n == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  ExponentVector cur(n);
  // Recursive fill, first variable largest first: descending lex.
  auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
    if (i + 1 == n) {
      cur[i] = static_cast<std::int32_t>(left);
      out.push_back(cur);
      return;
    }
    for (std::int64_t k = left; k >= 0; --k) {
      cur[i] = static_cast<std::int32_t>(k);
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

std::vector<ExponentVector> GroebnerContext::standard_monomials_of_degree(std::int64_t d) const {
  std::vector<ExponentVector> out;
  for (auto& e : monomials_of_degree(ring_.size(), d))
    if (is_standard(e)) out.push_back(std::move(e));
  return out;
}

std::vector<ExponentVector> GroebnerContext::standard_monomials(std::int64_t bound) const {
  std::vector<ExponentVector> out;
  for (std::int64_t d = 0; d <= bound; ++d) {
    auto v = standard_monomials_of_degree(d);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

std::vector<std::vector<Rational>> homogeneity_space(const GroebnerContext& gb) {
  std::size_t n = gb.ring().size();
  Mat rows;
  for (const auto& g : gb.basis()) {
    const auto& terms = g.terms();
    const ExponentVector& a0 = terms.begin()->first;
    for (auto it = std::next(terms.begin()); it != terms.end(); ++it) {
      Vec r(n);
      for (std::size_t j = 0; j < n; ++j) r[j] = it->first[j] - a0[j];
      rows.push_back(std::move(r));
    }
  }
  return nullspace(rows, n);
}

std::optional<std::vector<Rational>> positive_grading(const Ideal& ideal, const GroebnerOptions& options) {
  std::size_t n = ideal.ring().size();
  if (ideal.generators_homogeneous()) return std::vector<Rational>(n, Rational(1));
  auto gb = buchberger(ideal, MonomialOrder::degrevlex(), options);
  auto space = homogeneity_space(gb);
  if (space.empty()) return std::nullopt;
  std::vector<LinearInequality> sys;
  for (std::size_t j = 0; j < n; ++j) {
    Vec a(space.size());
    for (std::size_t k = 0; k < space.size(); ++k) a[k] = space[k][j];
    sys.push_back({std::move(a), 1});
  }
  auto lambda = fourier_motzkin(sys, space.size());
  if (!lambda) return std::nullopt;
  std::vector<Rational> w(n);
  for (std::size_t k = 0; k < space.size(); ++k)
    for (std::size_t j = 0; j < n; ++j) w[j] += (*lambda)[k] * space[k][j];
  return primitive_integer(std::move(w));
}

Ideal eliminate(const Ideal& ideal, const std::vector<bool>& keep, const GroebnerOptions& options) {
  const Ring& ring = ideal.ring();
  std::size_t n = ring.size();
  if (keep.size() != n) throw PreconditionError("elimination mask length mismatch");
  std::vector<Rational> row(n);
  std::vector<std::string> kept_names;
  std::vector<std::size_t> kept_index;
  for (std::size_t j = 0; j < n; ++j) {
    if (keep[j]) {
      kept_names.push_back(ring.name(j));
      kept_index.push_back(j);
    } else {
      row[j] = -1;
    }
  }
  auto gb = buchberger(ideal, MonomialOrder::composite(WeightMatrix({row}), MonomialOrder::degrevlex()),
                       options);
  Ring sub(kept_names);
  std::vector<Polynomial> gens;
  for (const auto& g : gb.basis()) {
    bool free = true;
    for (const auto& [e, c] : g.terms())
      for (std::size_t j = 0; j < n && free; ++j)
        if (!keep[j] && e[j]) free = false;
    if (!free) continue;
    Polynomial p(sub);
    for (const auto& [e, c] : g.terms()) {
      std::vector<std::int32_t> f;
      for (auto j : kept_index) f.push_back(e[j]);
      p.add_term(ExponentVector(std::move(f)), c);
    }
    gens.push_back(std::move(p));
  }
  return Ideal(sub, std::move(gens));
}

Ideal saturate(const Ideal& ideal, const Polynomial& g, const GroebnerOptions& options) {
  if (!(g.ring() == ideal.ring())) throw PreconditionError("saturating element over a different ring");
  if (g.is_zero()) throw PreconditionError("saturation by zero");
  const Ring& ring = ideal.ring();
  Ring big = ring.with_leading_variable("t");
  std::vector<std::size_t> map(ring.size());
  for (std::size_t j = 0; j < ring.size(); ++j) map[j] = j + 1;
  std::vector<Polynomial> gens;
  for (const auto& f : ideal.generators()) gens.push_back(f.embed(big, map));
  gens.push_back(Polynomial::variable(big, 0) * g.embed(big, map) - Polynomial::constant(big, 1));
  std::vector<bool> keep(big.size(), true);
  keep[0] = false;
  Ideal sat = eliminate(Ideal(big, std::move(gens)), keep, options);
  // Rebuild over the original ring object.
  std::vector<Polynomial> out;
  for (const auto& f : sat.generators()) out.emplace_back(ring, f.terms());
  return Ideal(ring, std::move(out));
}

Ideal intersect(const Ideal& a, const Ideal& b, const GroebnerOptions& options) {
  if (!(a.ring() == b.ring())) throw PreconditionError("intersecting ideals over different rings");
  const Ring& ring = a.ring();
  if (a.is_zero() || b.is_zero()) return Ideal(ring, {});
  Ring big = ring.with_leading_variable("t");
  std::vector<std::size_t> map(ring.size());
  for (std::size_t j = 0; j < ring.size(); ++j) map[j] = j + 1;
  Polynomial t = Polynomial::variable(big, 0);
  Polynomial one_minus_t = Polynomial::constant(big, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(t * f.embed(big, map));
  for (const auto& f : b.generators()) gens.push_back(one_minus_t * f.embed(big, map));
  std::vector<bool> keep(big.size(), true);
  keep[0] = false;
  Ideal cap = eliminate(Ideal(big, std::move(gens)), keep, options);
  std::vector<Polynomial> out;
  for (const auto& f : cap.generators()) out.emplace_back(ring, f.terms());
  return Ideal(ring, std::move(out));
}

Ideal quotient(const Ideal& ideal, const Polynomial& f, const GroebnerOptions& options) {
  if (f.is_zero()) throw PreconditionError("quotient by zero");
  Ideal cap = intersect(ideal, Ideal(ideal.ring(), {f}), options);
  std::vector<Polynomial> out;
  auto lex = MonomialOrder::lex();
  for (const auto& g : cap.generators()) {
    // Exact division by f, leading terms under lex.
    Term lf = f.leading_term(lex);
    Polynomial r = g, q(ideal.ring());
    while (!r.is_zero()) {
      Term lr = r.leading_term(lex);
      if (!lf.exponent.divides(lr.exponent)) throw Error("intersection element not divisible by the quotient element");
      ExponentVector e = lr.exponent - lf.exponent;
      Rational c = lr.coeff / lf.coeff;
      q.add_term(e, c);
      r -= f.times_monomial(e, c);
    }
    out.push_back(std::move(q));
  }
  return Ideal(ideal.ring(), std::move(out));
}

Ideal homogenize(const Ideal& ideal, const GroebnerOptions& options) {
  const Ring& ring = ideal.ring();
  Ring big = ring.with_leading_variable("x0");
  auto gb = buchberger(ideal, MonomialOrder::degrevlex(), options);
  std::vector<Polynomial> gens;
  for (const auto& g : gb.basis()) {
    std::int64_t d = g.total_degree();
    Polynomial h(big);
    for (const auto& [e, c] : g.terms()) {
      std::vector<std::int32_t> f{static_cast<std::int32_t>(d - e.degree())};
      f.insert(f.end(), e.begin(), e.end());
      h.add_term(ExponentVector(std::move(f)), c);
    }
    gens.push_back(std::move(h));
  }
  return Ideal(big, std::move(gens));
}

Ideal dehomogenize(const Ideal& ideal, std::size_t index) {
  Ring small = ideal.ring().without_variable(index);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.specialize(index, 1, small));
  return Ideal(small, std::move(gens));
}

Ideal canonical(const Ideal& ideal, const GroebnerOptions& options) {
  return buchberger(ideal, MonomialOrder::degrevlex(), options).ideal();
}

bool ideal_equal(const Ideal& a, const Ideal& b, const GroebnerOptions& options) {
  if (!(a.ring() == b.ring())) throw PreconditionError("comparing ideals over different rings");
  return buchberger(a, MonomialOrder::degrevlex(), options).basis() ==
         buchberger(b, MonomialOrder::degrevlex(), options).basis();
}

}  // namespace khova

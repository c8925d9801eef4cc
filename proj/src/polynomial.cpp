#include "khova/polynomial.hpp"

#include <algorithm>
#include <cctype>

#include "khova/errors.hpp"

namespace khova {

Ring::Ring(std::vector<std::string> vars)
    : vars_(std::make_shared<const std::vector<std::string>>(std::move(vars))) {
  for (std::size_t i = 0; i < vars_->size(); ++i)
    for (std::size_t j = i + 1; j < vars_->size(); ++j)
      if ((*vars_)[i] == (*vars_)[j]) throw PreconditionError("duplicate variable '" + (*vars_)[i] + "'");
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i)
    if ((*vars_)[i] == name) return i;
  return std::nullopt;
}

Ring Ring::with_leading_variable(const std::string& preferred) const {
  std::string name = preferred;
  while (index_of(name)) name += "_";
  std::vector<std::string> v{name};
  v.insert(v.end(), vars_->begin(), vars_->end());
  return Ring(std::move(v));
}

Ring Ring::without_variable(std::size_t i) const {
  std::vector<std::string> v = *vars_;
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
  return Ring(std::move(v));
}

Polynomial::Polynomial(Ring ring, TermMap terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.size() != ring_.size()) throw PreconditionError("term length does not match ring");
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Polynomial Polynomial::constant(Ring ring, const Rational& c) {
  Polynomial p(ring);
  p.add_term(ExponentVector(ring.size()), c);
  return p;
}

Polynomial Polynomial::variable(Ring ring, std::size_t i) {
  Polynomial p(ring);
  p.add_term(ExponentVector::unit(ring.size(), i), 1);
  return p;
}

Polynomial Polynomial::monomial(Ring ring, ExponentVector e, Rational c) {
  Polynomial p(std::move(ring));
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

Rational Polynomial::coefficient(const ExponentVector& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const ExponentVector& e, const Rational& c) {
  if (c == 0) return;
  if (e.size() != ring_.size()) throw PreconditionError("term length does not match ring");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t Polynomial::total_degree() const {
  std::int64_t d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e.degree());
  return d;
}

bool Polynomial::is_homogeneous(const std::vector<Rational>& w) const {
  if (w.size() != ring_.size()) throw PreconditionError("grading length mismatch");
  std::optional<Rational> deg;
  for (const auto& [e, c] : terms_) {
    Rational d = 0;
    for (std::size_t j = 0; j < e.size(); ++j) d += w[j] * e[j];
    if (!deg)
      deg = d;
    else if (*deg != d)
      return false;
  }
  return true;
}

bool Polynomial::is_homogeneous() const {
  return is_homogeneous(std::vector<Rational>(ring_.size(), Rational(1)));
}

Term Polynomial::leading_term(const MonomialOrder& order) const {
  if (terms_.empty()) throw PreconditionError("leading term of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (order.greater(it->first, best->first)) best = it;
  return {best->first, best->second};
}

std::vector<Term> Polynomial::sorted_terms(const MonomialOrder& order) const {
  std::vector<Term> v;
  v.reserve(terms_.size());
  for (const auto& [e, c] : terms_) v.push_back({e, c});
  std::sort(v.begin(), v.end(),
            [&](const Term& a, const Term& b) { return order.greater(a.exponent, b.exponent); });
  return v;
}

RankVector Polynomial::min_weight(const WeightMatrix& m) const {
  if (terms_.empty()) throw PreconditionError("weight of zero polynomial");
  std::optional<RankVector> best;
  for (const auto& [e, c] : terms_) {
    auto w = m.apply(e);
    if (!best || lex_compare(w, *best) < 0) best = std::move(w);
  }
  return *best;
}

Polynomial Polynomial::initial_form(const WeightMatrix& m) const {
  Polynomial out(ring_);
  if (terms_.empty()) return out;
  auto wmin = min_weight(m);
  for (const auto& [e, c] : terms_)
    if (lex_compare(m.apply(e), wmin) == 0) out.terms_.emplace(e, c);
  return out;
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (!(ring_ == o.ring_)) throw PreconditionError("polynomials over different rings");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r(*this);
  r += o;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  Polynomial r(*this);
  r -= o;
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_ring(o);
  Polynomial r(ring_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
  return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& [e, q] : r.terms_) q *= c;
  return r;
}

Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(ring_, 1), base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::times_monomial(const ExponentVector& e, const Rational& c) const {
  Polynomial r(ring_);
  if (c == 0) return r;
  for (const auto& [f, q] : terms_) r.terms_.emplace_hint(r.terms_.end(), f + e, q * c);
  return r;
}

Polynomial Polynomial::monic(const MonomialOrder& order) const {
  if (terms_.empty()) return *this;
  return *this * (1 / leading_term(order).coeff);
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != ring_.size()) throw PreconditionError("substitution length mismatch");
  Ring target = images.empty() ? Ring() : images[0].ring();
  Polynomial out(target);
  // Cache powers per variable; generators are reused many times.
  std::vector<std::vector<Polynomial>> powers(images.size());
  auto power = [&](std::size_t j, std::int32_t k) -> const Polynomial& {
    auto& pw = powers[j];
    if (pw.empty()) pw.push_back(constant(target, 1));
    while (static_cast<std::int32_t>(pw.size()) <= k) pw.push_back(pw.back() * images[j]);
    return pw[static_cast<std::size_t>(k)];
  };
  for (const auto& [e, c] : terms_) {
    Polynomial t = constant(target, c);
    for (std::size_t j = 0; j < e.size(); ++j)
      if (e[j]) t = t * power(j, e[j]);
    out += t;
  }
  return out;
}

Polynomial Polynomial::embed(const Ring& target, const std::vector<std::size_t>& map) const {
  if (map.size() != ring_.size()) throw PreconditionError("embedding map length mismatch");
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    ExponentVector f(target.size());
    for (std::size_t j = 0; j < e.size(); ++j) f[map[j]] += e[j];
    out.add_term(f, c);
  }
  return out;
}

Polynomial Polynomial::specialize(std::size_t i, const Rational& c, const Ring& smaller) const {
  Polynomial out(smaller);
  for (const auto& [e, q] : terms_) {
    std::vector<std::int32_t> f;
    f.reserve(e.size() - 1);
    for (std::size_t j = 0; j < e.size(); ++j)
      if (j != i) f.push_back(e[j]);
    Rational v = q;
    Rational cp;
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), c.get_num_mpz_t(), static_cast<unsigned long>(e[i]));
    mpz_pow_ui(den.get_mpz_t(), c.get_den_mpz_t(), static_cast<unsigned long>(e[i]));
    cp = Rational(num, den);
    cp.canonicalize();
    out.add_term(ExponentVector(std::move(f)), v * cp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Ring& ring) : s_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Integer digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Polynomial expr() {
    skip();
    if (pos_ >= s_.size()) fail("empty expression");
    Polynomial acc(ring_);
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    Polynomial t = term();
    acc = negate ? -t : t;
    while (true) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept('^')) {
      skip();
      std::size_t at = pos_;
      Integer k = digits();
      if (k <= 0) {
        pos_ = at;
        fail("exponent must be a positive integer");
      }
      if (!k.fits_uint_p() || k > 1000000) {
        pos_ = at;
        fail("exponent too large");
      }
      base = base.pow(static_cast<unsigned>(k.get_ui()));
    }
    return base;
  }

  Polynomial primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = digits();
      Rational q(num);
      std::size_t save = pos_;
      if (accept('/')) {
        skip();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          std::size_t at = pos_;
          Integer den = digits();
          if (den == 0) {
            pos_ = at;
            fail("zero denominator");
          }
          q = Rational(num, den);
          q.canonicalize();
        } else {
          pos_ = save;
          fail("expected positive integer denominator");
        }
      }
      return Polynomial::constant(ring_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      auto name = s_.substr(start, pos_ - start);
      auto idx = ring_.index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return Polynomial::variable(ring_, *idx);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Ring& ring) { return Parser(text, ring).parse(); }

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.sorted_terms(MonomialOrder::degrevlex())) {
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (!e[j]) continue;
      if (!mono.empty()) mono += "*";
      mono += p.ring().name(j);
      if (e[j] > 1) mono += "^" + std::to_string(e[j]);
    }
    if (mono.empty())
      out += to_string(a);
    else if (a == 1)
      out += mono;
    else
      out += to_string(a) + "*" + mono;
  }
  return out;
}

}  // namespace khova

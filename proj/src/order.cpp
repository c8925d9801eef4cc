#include "khova/order.hpp"

#include <limits>

#include "khova/errors.hpp"

namespace khova {

struct MonomialOrder::Impl {
  Kind kind;
  WeightMatrix weights;
  Kind tiebreak = Kind::DegRevLex;
  // Rows of `weights` scaled by positive integers so that comparisons can
  // run in machine arithmetic; empty when some entry does not fit.
  std::vector<std::vector<std::int64_t>> int_rows;
};

namespace {

std::strong_ordering compare_lex(const ExponentVector& a, const ExponentVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

std::strong_ordering compare_degrevlex(const ExponentVector& a, const ExponentVector& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da <=> db;
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return b[i] <=> a[i];
  return std::strong_ordering::equal;
}

std::strong_ordering compare_simple(MonomialOrder::Kind k, const ExponentVector& a,
                                    const ExponentVector& b) {
  return k == MonomialOrder::Kind::Lex ? compare_lex(a, b) : compare_degrevlex(a, b);
}

std::vector<std::vector<std::int64_t>> integer_rows(const WeightMatrix& m) {
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = lcm_of_denominators(m.row(i));
    std::vector<std::int64_t> row;
    for (const auto& q : m.row(i)) {
      Integer z = q.get_num() * (l / q.get_den());
      if (!z.fits_slong_p() || abs(z) > Integer(1) << 40) return {};
      row.push_back(z.get_si());
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

MonomialOrder MonomialOrder::lex() {
  static const auto impl = std::make_shared<const Impl>(Impl{Kind::Lex, {}, Kind::Lex, {}});
  return MonomialOrder(impl);
}

MonomialOrder MonomialOrder::degrevlex() {
  static const auto impl =
      std::make_shared<const Impl>(Impl{Kind::DegRevLex, {}, Kind::DegRevLex, {}});
  return MonomialOrder(impl);
}

MonomialOrder MonomialOrder::composite(WeightMatrix m, MonomialOrder tiebreak) {
  if (tiebreak.kind() == Kind::Composite)
    throw PreconditionError("composite tiebreak must be lex or degrevlex");
  auto rows = integer_rows(m);
  return MonomialOrder(
      std::make_shared<const Impl>(Impl{Kind::Composite, std::move(m), tiebreak.kind(), std::move(rows)}));
}

MonomialOrder MonomialOrder::by_name(const std::string& name) {
  if (name == "lex") return lex();
  if (name == "degrevlex" || name == "grevlex") return degrevlex();
  throw PreconditionError("unknown monomial order '" + name + "'");
}

MonomialOrder::Kind MonomialOrder::kind() const { return impl_->kind; }

const WeightMatrix& MonomialOrder::weights() const {
  if (impl_->kind != Kind::Composite) throw PreconditionError("order has no weight matrix");
  return impl_->weights;
}

MonomialOrder MonomialOrder::tiebreak() const {
  return impl_->tiebreak == Kind::Lex ? lex() : degrevlex();
}

std::strong_ordering MonomialOrder::compare(const ExponentVector& a, const ExponentVector& b) const {
  if (a.size() != b.size()) throw PreconditionError("exponent length mismatch in compare");
  if (impl_->kind != Kind::Composite) return compare_simple(impl_->kind, a, b);
  if (impl_->weights.cols() != a.size()) throw PreconditionError("weight matrix / ring dimension mismatch");
  if (!impl_->int_rows.empty()) {
    for (const auto& row : impl_->int_rows) {
      __int128 wa = 0, wb = 0;
      for (std::size_t j = 0; j < row.size(); ++j) {
        wa += static_cast<__int128>(row[j]) * a[j];
        wb += static_cast<__int128>(row[j]) * b[j];
      }
      if (wa != wb) return wa < wb ? std::strong_ordering::greater : std::strong_ordering::less;
    }
  } else {
    auto c = weight_compare(impl_->weights, a, b);
    if (c != 0) return 0 <=> c;
  }
  return compare_simple(impl_->tiebreak, a, b);
}

bool MonomialOrder::is_well_ordered() const {
  return impl_->kind != Kind::Composite || impl_->weights.columns_lex_nonpositive();
}

std::string MonomialOrder::name() const {
  switch (impl_->kind) {
    case Kind::Lex: return "lex";
    case Kind::DegRevLex: return "degrevlex";
    case Kind::Composite: return std::string("composite/") + (impl_->tiebreak == Kind::Lex ? "lex" : "degrevlex");
  }
  return "?";
}

std::strong_ordering weight_compare(const WeightMatrix& m, const ExponentVector& a,
                                    const ExponentVector& b) {
  return lex_compare(m.apply(a), m.apply(b));
}

WeightMatrix order_matrix(const MonomialOrder& order, std::size_t n) {
  std::vector<std::vector<Rational>> rows;
  if (order.kind() == MonomialOrder::Kind::Composite) {
    const auto& m = order.weights();
    if (m.cols() != n) throw PreconditionError("order matrix dimension mismatch");
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::vector<Rational> r;
      for (const auto& c : m.row(i)) r.push_back(-c);
      rows.push_back(std::move(r));
    }
    auto tail = order_matrix(order.tiebreak(), n);
    for (const auto& r : tail.row_data()) rows.push_back(r);
  } else if (order.kind() == MonomialOrder::Kind::Lex) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> r(n);
      r[i] = 1;
      rows.push_back(std::move(r));
    }
  } else {
    rows.emplace_back(n, Rational(1));
    for (std::size_t i = n; i-- > 1;) {
      std::vector<Rational> r(n);
      r[i] = -1;
      rows.push_back(std::move(r));
    }
  }
  WeightMatrix out(std::move(rows));
  if (out.rows() == 0) out = WeightMatrix(0, n);
  return out;
}

}  // namespace khova

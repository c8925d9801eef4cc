#include "khova/monomial.hpp"

#include <algorithm>
#include <limits>

#include "khova/errors.hpp"

namespace khova {

ExponentVector::ExponentVector(std::vector<std::int32_t> e) : e_(std::move(e)) {
  for (auto x : e_)
    if (x < 0) throw PreconditionError("negative exponent");
}

ExponentVector ExponentVector::unit(std::size_t n, std::size_t i) {
  ExponentVector e(n);
  e.e_[i] = 1;
  return e;
}

std::int64_t ExponentVector::degree() const {
  std::int64_t d = 0;
  for (auto x : e_) d += x;
  return d;
}

bool ExponentVector::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](auto x) { return x == 0; });
}

bool ExponentVector::divides(const ExponentVector& other) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > other.e_[i]) return false;
  return true;
}

ExponentVector ExponentVector::operator+(const ExponentVector& other) const {
  ExponentVector r(*this);
  r += other;
  return r;
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& other) {
  if (other.e_.size() != e_.size()) throw PreconditionError("exponent length mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) {
    std::int32_t s;
    if (__builtin_add_overflow(e_[i], other.e_[i], &s)) throw PreconditionError("exponent overflow");
    e_[i] = s;
  }
  return *this;
}

ExponentVector ExponentVector::operator-(const ExponentVector& d) const {
  ExponentVector r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) {
    r.e_[i] -= d.e_[i];
    if (r.e_[i] < 0) throw PreconditionError("exponent subtraction below zero");
  }
  return r;
}

ExponentVector ExponentVector::lcm(const ExponentVector& other) const {
  ExponentVector r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(e_[i], other.e_[i]);
  return r;
}

ExponentVector ExponentVector::gcd(const ExponentVector& other) const {
  ExponentVector r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::min(e_[i], other.e_[i]);
  return r;
}

ExponentVector ExponentVector::scaled(std::int32_t k) const {
  ExponentVector r(*this);
  for (auto& x : r.e_)
    if (__builtin_mul_overflow(x, k, &x)) throw PreconditionError("exponent overflow");
  return r;
}

std::strong_ordering lex_compare(const RankVector& a, const RankVector& b) {
  if (a.size() != b.size()) throw PreconditionError("rank vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

WeightMatrix::WeightMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows, std::vector<Rational>(cols)), cols_(cols) {}

WeightMatrix::WeightMatrix(std::vector<std::vector<Rational>> rows) : rows_(std::move(rows)) {
  cols_ = rows_.empty() ? 0 : rows_[0].size();
  for (const auto& r : rows_)
    if (r.size() != cols_) throw PreconditionError("ragged weight matrix");
}

WeightMatrix WeightMatrix::from_ints(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) {
    std::vector<Rational> q;
    for (long x : row) q.emplace_back(x);
    r.push_back(std::move(q));
  }
  return WeightMatrix(std::move(r));
}

std::vector<Rational> WeightMatrix::column(std::size_t j) const {
  std::vector<Rational> c;
  c.reserve(rows_.size());
  for (const auto& r : rows_) c.push_back(r[j]);
  return c;
}

void WeightMatrix::set_column(std::size_t j, const std::vector<Rational>& c) {
  if (c.size() != rows_.size()) throw PreconditionError("column length mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) rows_[i][j] = c[i];
}

RankVector WeightMatrix::apply(const ExponentVector& alpha) const {
  if (alpha.size() != cols_) throw PreconditionError("weight matrix / exponent dimension mismatch");
  RankVector out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (alpha[j] != 0) s += rows_[i][j] * alpha[j];
    out[i] = s;
  }
  return out;
}

bool WeightMatrix::columns_lex_nonpositive() const {
  for (std::size_t j = 0; j < cols_; ++j) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      int s = sgn(rows_[i][j]);
      if (s < 0) break;
      if (s > 0) return false;
    }
  }
  return true;
}

bool WeightMatrix::entries_nonpositive() const {
  for (const auto& r : rows_)
    for (const auto& q : r)
      if (sgn(q) > 0) return false;
  return true;
}

WeightMatrix WeightMatrix::select_rows(const std::vector<std::size_t>& which) const {
  std::vector<std::vector<Rational>> r;
  for (auto i : which) r.push_back(rows_.at(i));
  WeightMatrix m(std::move(r));
  m.cols_ = cols_;
  return m;
}

WeightMatrix WeightMatrix::with_leading_zero_column() const {
  WeightMatrix m(rows_.size(), cols_ + 1);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.rows_[i][j + 1] = rows_[i][j];
  return m;
}

WeightMatrix WeightMatrix::drop_column(std::size_t j) const {
  WeightMatrix m(rows_.size(), cols_ - 1);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    for (std::size_t k = 0, c = 0; k < cols_; ++k)
      if (k != j) m.rows_[i][c++] = rows_[i][k];
  return m;
}

std::string to_string(const ExponentVector& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

}  // namespace khova

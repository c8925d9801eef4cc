#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "khova/rational.hpp"

namespace khova {

// Exponent of a monomial x^alpha. Entries are non-negative; addition is
// overflow-checked.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : e_(n, 0) {}
  ExponentVector(std::initializer_list<std::int32_t> e) : e_(e) {}
  explicit ExponentVector(std::vector<std::int32_t> e);

  static ExponentVector unit(std::size_t n, std::size_t i);

  std::size_t size() const { return e_.size(); }
  std::int32_t operator[](std::size_t i) const { return e_[i]; }
  std::int32_t& operator[](std::size_t i) { return e_[i]; }
  const std::vector<std::int32_t>& data() const { return e_; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  std::int64_t degree() const;
  bool is_zero() const;
  bool divides(const ExponentVector& other) const;

  ExponentVector operator+(const ExponentVector& other) const;
  ExponentVector& operator+=(const ExponentVector& other);
  // Quotient exponent; d must divide *this.
  ExponentVector operator-(const ExponentVector& d) const;
  ExponentVector lcm(const ExponentVector& other) const;
  ExponentVector gcd(const ExponentVector& other) const;
  ExponentVector scaled(std::int32_t k) const;

  // Plain entrywise lexicographic comparison: the canonical storage order.
  auto operator<=>(const ExponentVector&) const = default;
  bool operator==(const ExponentVector&) const = default;

 private:
  std::vector<std::int32_t> e_;
};

using RankVector = std::vector<Rational>;

// Lexicographic comparison of rank vectors; shorter vectors are not allowed.
std::strong_ordering lex_compare(const RankVector& a, const RankVector& b);

// r x n rational matrix. Column j is the weight of variable x_j.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  WeightMatrix(std::size_t rows, std::size_t cols);
  explicit WeightMatrix(std::vector<std::vector<Rational>> rows);
  static WeightMatrix from_ints(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return rows_[i][j]; }
  const std::vector<Rational>& row(std::size_t i) const { return rows_[i]; }
  const std::vector<std::vector<Rational>>& row_data() const { return rows_; }
  std::vector<Rational> column(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<Rational>& c);

  RankVector apply(const ExponentVector& alpha) const;

  // Every column is lexicographically <= 0; exactly the matrices whose
  // composite order (smallest weight leads) is a well-order.
  bool columns_lex_nonpositive() const;
  bool entries_nonpositive() const;

  WeightMatrix select_rows(const std::vector<std::size_t>& which) const;
  WeightMatrix with_leading_zero_column() const;
  WeightMatrix drop_column(std::size_t j) const;

  bool operator==(const WeightMatrix&) const = default;

 private:
  std::vector<std::vector<Rational>> rows_;
  std::size_t cols_ = 0;
};

std::string to_string(const ExponentVector& e);

}  // namespace khova

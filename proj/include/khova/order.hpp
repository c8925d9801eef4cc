#pragma once

#include <compare>
#include <memory>
#include <string>

#include "khova/monomial.hpp"

namespace khova {

// Monomial orders. `compare(a, b) == greater` means x^a is the leading one.
//
// Lex:        x_1 > x_2 > ... > x_n.
// DegRevLex:  total degree first, then the smaller exponent in the last
//             differing variable wins.
// Composite:  the monomial with the lexicographically *smallest* M*alpha
//             leads; ties fall through to the (non-composite) tiebreak.
class MonomialOrder {
 public:
  enum class Kind { Lex, DegRevLex, Composite };

  static MonomialOrder lex();
  static MonomialOrder degrevlex();
  static MonomialOrder composite(WeightMatrix m, MonomialOrder tiebreak);
  // Parses "lex" or "degrevlex".
  static MonomialOrder by_name(const std::string& name);

  MonomialOrder() : MonomialOrder(degrevlex()) {}

  Kind kind() const;
  const WeightMatrix& weights() const;
  MonomialOrder tiebreak() const;

  std::strong_ordering compare(const ExponentVector& a, const ExponentVector& b) const;
  bool greater(const ExponentVector& a, const ExponentVector& b) const { return compare(a, b) > 0; }

  // True when 1 is the smallest monomial, i.e. the order is a well-order.
  bool is_well_ordered() const;
  std::string name() const;

 private:
  struct Impl;
  explicit MonomialOrder(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Matrix A with a > b under `order` iff A*a is lexicographically larger than
// A*b, for exponent vectors of length n.
WeightMatrix order_matrix(const MonomialOrder& order, std::size_t n);

// Lexicographic comparison of M*a and M*b.
std::strong_ordering weight_compare(const WeightMatrix& m, const ExponentVector& a,
                                    const ExponentVector& b);

}  // namespace khova

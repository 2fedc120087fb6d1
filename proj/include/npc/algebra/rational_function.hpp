#pragma once

#include "npc/algebra/polynomial.hpp"

#include <optional>
#include <span>
#include <string>

namespace npc {

/*
 * Quotient of two polynomials over Q.
 *
 * Normalization removes constant and monomial common factors and exact
 * polynomial divisors, then scales so the denominator's leading coefficient is
 * positive and equal to 1. Equality never relies on the representation being
 * fully reduced: it is decided by cross-multiplication.
 */
class RationalFunction {
 public:
  explicit RationalFunction(std::size_t nvars = 0);
  RationalFunction(Polynomial numerator);  // NOLINT: implicit from polynomial by design
  RationalFunction(Polynomial numerator, Polynomial denominator);

  static RationalFunction constant(std::size_t nvars, const Rational& c);

  std::size_t nvars() const { return num_.nvars(); }
  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  std::optional<Polynomial> as_polynomial() const;
  std::optional<Rational> constant_value() const;

  RationalFunction& operator+=(const RationalFunction& other);
  RationalFunction& operator-=(const RationalFunction& other);
  RationalFunction& operator*=(const RationalFunction& other);
  RationalFunction& operator/=(const RationalFunction& other);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  RationalFunction derivative(std::size_t index) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// Re-applies normalization; a no-op on already normalized values.
  RationalFunction normalized() const;

  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;
  std::string to_dsl(std::span<const std::string> names) const;

 private:
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

}  // namespace npc

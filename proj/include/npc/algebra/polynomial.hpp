#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace npc {

using Rational = mpq_class;

/// Exponent multi-index of a monomial; one entry per coordinate.
using Exponent = std::vector<int>;

/// Graded lexicographic order: total degree first, then lex with x1 > x2 > ...
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

int total_degree(const Exponent& e);

/// All exponents in `nvars` variables of total degree <= bound, ascending grlex.
std::vector<Exponent> monomials_up_to(std::size_t nvars, int bound);

class VariableMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/*
 * Sparse multivariate polynomial over Q.
 *
 * Terms are kept in a map ordered by GrlexLess (ascending), so the leading
 * term is the last entry. Zero coefficients are never stored.
 */
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexLess>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(Exponent exponent, const Rational& c = 1);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  /// Value of a constant polynomial (0 for the zero polynomial).
  std::optional<Rational> constant_value() const;
  /// -1 for the zero polynomial.
  int total_degree() const;
  Rational coefficient(const Exponent& e) const;

  /// Largest term in grlex order. Requires a nonzero polynomial.
  const Exponent& leading_exponent() const;
  const Rational& leading_coefficient() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Formal partial derivative with respect to coordinate `index` (0-based).
  Polynomial derivative(std::size_t index) const;
  Polynomial pow(unsigned exponent) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// Adds c * x^e. Public so that builders can assemble terms directly.
  void add_term(const Exponent& e, const Rational& c);

  /// Human-readable form, e.g. "x1^2 + 2*x2 - 1/2".
  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;
  /// Same value written in the model-file grammar ("**" for powers).
  std::string to_dsl(std::span<const std::string> names) const;

 private:
  void check_compatible(const Polynomial& other) const;

  std::size_t nvars_;
  TermMap terms_;
};

enum class ArithOp { add, mul };

/// Exact sum or product; throws VariableMismatch on differing variable counts.
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op);

/// Index-checked derivative; throws std::out_of_range when index >= nvars.
Polynomial partial_derivative(const Polynomial& a, std::size_t index);

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Multivariate division by a single divisor in grlex order.
DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor);

/// Quotient when `divisor` divides `dividend` exactly.
std::optional<Polynomial> exact_quotient(const Polynomial& dividend, const Polynomial& divisor);

/// Default coordinate names x1..xn.
std::vector<std::string> default_names(std::size_t nvars);

std::string rational_to_string(const Rational& q);

}  // namespace npc

#include "npc/algebra/rational_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace npc {

namespace {

Polynomial shift_down(const Polynomial& p, const Exponent& by) {
  Polynomial out(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    Exponent r = e;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= by[i];
    out.add_term(r, c);
  }
  return out;
}

void monomial_gcd(const Polynomial& p, Exponent& g) {
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], e[i]);
  }
}

}  // namespace

RationalFunction::RationalFunction(std::size_t nvars) : num_(nvars), den_(Polynomial::constant(nvars, 1)) {}

RationalFunction::RationalFunction(Polynomial numerator)
    : num_(std::move(numerator)), den_(Polynomial::constant(num_.nvars(), 1)) {}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (num_.nvars() != den_.nvars()) throw VariableMismatch("numerator and denominator over different variables");
  normalize();
}

RationalFunction RationalFunction::constant(std::size_t nvars, const Rational& c) {
  return RationalFunction(Polynomial::constant(nvars, c));
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  const std::size_t n = num_.nvars();
  if (num_.is_zero()) {
    den_ = Polynomial::constant(n, 1);
    return;
  }
  if (auto c = den_.constant_value()) {
    num_ *= Rational(1 / *c);
    den_ = Polynomial::constant(n, 1);
    return;
  }
  if (auto q = exact_quotient(num_, den_)) {
    num_ = std::move(*q);
    den_ = Polynomial::constant(n, 1);
    return;
  }
  if (auto q = exact_quotient(den_, num_)) {
    den_ = std::move(*q);
    num_ = Polynomial::constant(n, 1);
  }
  Exponent g = num_.leading_exponent();
  monomial_gcd(num_, g);
  monomial_gcd(den_, g);
  if (npc::total_degree(g) > 0) {
    num_ = shift_down(num_, g);
    den_ = shift_down(den_, g);
  }
  const Rational lead = den_.leading_coefficient();
  if (lead != 1) {
    const Rational inv = 1 / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

RationalFunction RationalFunction::normalized() const {
  RationalFunction out(*this);
  out.normalize();
  return out;
}

std::optional<Polynomial> RationalFunction::as_polynomial() const {
  if (den_.is_one()) return num_;
  if (auto c = den_.constant_value()) return num_ * Rational(1 / *c);
  return exact_quotient(num_, den_);
}

std::optional<Rational> RationalFunction::constant_value() const {
  if (!den_.is_constant()) return std::nullopt;
  auto c = num_.constant_value();
  if (!c) return std::nullopt;
  return Rational(*c / *den_.constant_value());
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_ == other.den_) {
    num_ += other.num_;
    if (!den_.is_one()) normalize();
    else if (num_.is_zero()) den_ = Polynomial::constant(num_.nvars(), 1);
    return *this;
  }
  if (auto q = exact_quotient(den_, other.den_)) {
    num_ += other.num_ * *q;
  } else if (auto q2 = exact_quotient(other.den_, den_)) {
    num_ = num_ * *q2 + other.num_;
    den_ = other.den_;
  } else {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ = den_ * other.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& other) { return *this += -other; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& other) {
  if (is_zero()) return *this;
  if (other.is_zero()) return *this = RationalFunction(num_.nvars());
  num_ *= other.num_;
  if (den_.is_one() && other.den_.is_one()) {
    if (num_.nvars() != other.num_.nvars()) throw VariableMismatch("rational functions over different variables");
    return *this;
  }
  den_ *= other.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& other) {
  if (other.is_zero()) throw std::domain_error("division by the zero rational function");
  num_ *= other.den_;
  den_ *= other.num_;
  normalize();
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out(*this);
  out.num_ = -out.num_;
  return out;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  if (a.nvars() != b.nvars()) return false;
  if (a.den_ == b.den_) return a.num_ == b.num_;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalFunction RationalFunction::derivative(std::size_t index) const {
  if (index >= nvars()) throw std::out_of_range("coordinate index out of range");
  if (den_.is_one()) return RationalFunction(num_.derivative(index));
  return RationalFunction(num_.derivative(index) * den_ - num_ * den_.derivative(index), den_ * den_);
}

Rational RationalFunction::evaluate(std::span<const Rational> point) const {
  const Rational d = den_.evaluate(point);
  if (sgn(d) == 0) throw std::domain_error("rational function evaluated at a pole");
  return num_.evaluate(point) / d;
}

std::string RationalFunction::to_string(std::span<const std::string> names) const {
  if (den_.is_one()) return num_.to_string(names);
  return "(" + num_.to_string(names) + ")/(" + den_.to_string(names) + ")";
}

std::string RationalFunction::to_string() const {
  const auto names = default_names(nvars());
  return to_string(names);
}

std::string RationalFunction::to_dsl(std::span<const std::string> names) const {
  if (den_.is_one()) return num_.to_dsl(names);
  return "(" + num_.to_dsl(names) + ")/(" + den_.to_dsl(names) + ")";
}

}  // namespace npc

#include "npc/algebra/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace npc {

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  // Equal degree: lex with x1 most significant. a < b when at the first
  // differing position a has the smaller exponent.
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

namespace {

void enumerate_exponents(std::size_t nvars, int remaining, std::size_t position, Exponent& current,
                         std::vector<Exponent>& out) {
  if (position == nvars) {
    out.push_back(current);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    current[position] = k;
    enumerate_exponents(nvars, remaining - k, position + 1, current, out);
  }
  current[position] = 0;
}

}  // namespace

std::vector<Exponent> monomials_up_to(std::size_t nvars, int bound) {
  std::vector<Exponent> out;
  if (bound < 0) return out;
  Exponent current(nvars, 0);
  enumerate_exponents(nvars, bound, 0, current, out);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(std::move(e));
}

Polynomial Polynomial::monomial(Exponent exponent, const Rational& c) {
  Polynomial p(exponent.size());
  p.add_term(exponent, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && npc::total_degree(terms_.begin()->first) == 0);
}

bool Polynomial::is_one() const {
  return terms_.size() == 1 && npc::total_degree(terms_.begin()->first) == 0 && terms_.begin()->second == 1;
}

std::optional<Rational> Polynomial::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (!is_constant()) return std::nullopt;
  return terms_.begin()->second;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return npc::total_degree(terms_.rbegin()->first);
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

const Exponent& Polynomial::leading_exponent() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.rbegin()->first;
}

const Rational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.rbegin()->second;
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (nvars_ != other.nvars_) {
    throw VariableMismatch("polynomials over different variable lists (" + std::to_string(nvars_) +
                           " vs " + std::to_string(other.nvars_) + ")");
  }
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw VariableMismatch("exponent length does not match variable count");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial out(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::derivative(std::size_t index) const {
  Polynomial out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[index] == 0) continue;
    Exponent d = e;
    d[index] -= 1;
    out.add_term(d, c * e[index]);
  }
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw VariableMismatch("evaluation point has wrong dimension");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (int k = 0; k < e[i]; ++k) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string render(const Polynomial& p, std::span<const std::string> names, const char* power) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool negative = sgn(c) < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::string f = names[i];
      if (e[i] > 1) f += power + std::to_string(e[i]);
      factors.push_back(std::move(f));
    }
    if (factors.empty()) {
      os << rational_to_string(magnitude);
      continue;
    }
    if (magnitude != 1) os << rational_to_string(magnitude) << "*";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) os << "*";
      os << factors[i];
    }
  }
  return os.str();
}

}  // namespace

std::string Polynomial::to_string(std::span<const std::string> names) const {
  return render(*this, names, "^");
}

std::string Polynomial::to_string() const {
  const auto names = default_names(nvars_);
  return render(*this, names, "^");
}

std::string Polynomial::to_dsl(std::span<const std::string> names) const {
  return render(*this, names, "**");
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::mul:
      return a * b;
  }
  throw std::invalid_argument("unknown arithmetic operation");
}

Polynomial partial_derivative(const Polynomial& a, std::size_t index) {
  if (index >= a.nvars()) throw std::out_of_range("coordinate index out of range");
  return a.derivative(index);
}

DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor) {
  if (dividend.nvars() != divisor.nvars()) throw VariableMismatch("division over different variable lists");
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  const std::size_t n = dividend.nvars();
  DivisionResult result{Polynomial(n), Polynomial(n)};
  Polynomial rest = dividend;
  const Exponent& lead = divisor.leading_exponent();
  const Rational& lead_coeff = divisor.leading_coefficient();
  while (!rest.is_zero()) {
    const Exponent top = rest.leading_exponent();
    const Rational top_coeff = rest.leading_coefficient();
    bool divisible = true;
    Exponent shift(n);
    for (std::size_t i = 0; i < n; ++i) {
      shift[i] = top[i] - lead[i];
      if (shift[i] < 0) {
        divisible = false;
        break;
      }
    }
    if (divisible) {
      const Polynomial step = Polynomial::monomial(shift, top_coeff / lead_coeff);
      result.quotient += step;
      rest -= step * divisor;
    } else {
      result.remainder.add_term(top, top_coeff);
      rest.add_term(top, -top_coeff);
    }
  }
  return result;
}

std::optional<Polynomial> exact_quotient(const Polynomial& dividend, const Polynomial& divisor) {
  auto [q, r] = divide(dividend, divisor);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

std::vector<std::string> default_names(std::size_t nvars) {
  std::vector<std::string> names;
  names.reserve(nvars);
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

}  // namespace npc

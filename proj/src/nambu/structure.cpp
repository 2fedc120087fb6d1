#include "npc/nambu/structure.hpp"

namespace npc {

NambuStructure::NambuStructure(Multivector lambda, int order) : lambda_(std::move(lambda)), order_(order) {
  if (order_ < 3) throw std::invalid_argument("Nambu-Poisson order must be at least 3");
  if (lambda_.is_form() && lambda_.degree() > 0) throw VarianceMismatch("Nambu tensor must be a multivector");
  if (lambda_.degree() != order_) {
    throw DegreeError("declared order " + std::to_string(order_) + " but tensor has degree " +
                      std::to_string(lambda_.degree()));
  }
  if (static_cast<std::size_t>(order_) > lambda_.dim()) throw DegreeError("order exceeds chart dimension");
  if (!lambda_.is_polynomial()) throw std::invalid_argument("Nambu tensor must have polynomial components");
}

NambuStructure NambuStructure::with_validity(ValidityReport report) const {
  NambuStructure out(*this);
  out.validity_ = std::move(report);
  return out;
}

Polynomial NambuStructure::top_coefficient() const {
  if (!is_top_order()) throw std::logic_error("structure is not of top order");
  IndexSet all(dim());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return *lambda_.component(all).as_polynomial();
}

bool NambuStructure::has_constant_coefficients() const {
  for (const auto& [idx, c] : lambda_.components()) {
    if (!c.constant_value()) return false;
  }
  return true;
}

RationalFunction nambu_bracket(const NambuStructure& s, std::span<const RationalFunction> fs) {
  if (fs.size() != static_cast<std::size_t>(s.order())) {
    throw ArityError("bracket needs exactly " + std::to_string(s.order()) + " arguments");
  }
  return pair(wedge_of_differentials(s.chart(), fs), s.lambda());
}

Multivector sharp(const NambuStructure& s, int k, const Form& alpha) {
  if (k < 0 || k > s.order()) throw DegreeError("sharp degree out of range");
  if (alpha.degree() != k) throw DegreeError("form degree does not match sharp degree");
  return contract_form(alpha, s.lambda());
}

Multivector hamiltonian_vf(const NambuStructure& s, std::span<const RationalFunction> fs) {
  if (fs.size() != static_cast<std::size_t>(s.order() - 1)) {
    throw ArityError("Hamiltonian field needs exactly " + std::to_string(s.order() - 1) + " functions");
  }
  return sharp(s, s.order() - 1, wedge_of_differentials(s.chart(), fs));
}

Form leibniz_bracket(const NambuStructure& s, const Form& alpha, const Form& beta) {
  const int n = s.order();
  if (!alpha.is_form() || !beta.is_form()) throw VarianceMismatch("bracket is defined on forms");
  if (alpha.degree() != n - 1 || beta.degree() != n - 1) throw DegreeError("bracket needs two (n-1)-forms");
  Form out = lie_form(sharp(s, n - 1, alpha), beta);
  RationalFunction factor = sharp(s, n, ext_d(alpha)).scalar_value();
  if (n % 2 != 0) factor = -factor;
  out += beta * factor;
  return out;
}

}  // namespace npc

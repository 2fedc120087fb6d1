#include "npc/modular/modular_class.hpp"

#include "npc/cohomlin/cohomology.hpp"
#include "npc/cohomlin/truncation.hpp"
#include "npc/nambu/validity.hpp"

namespace npc {

std::string key_label(const ChartPtr& chart, Variance variance, const IndexSet& idx, const Exponent& e) {
  return GradedTensor::basis(chart, variance, idx, RationalFunction(Polynomial::monomial(e))).to_string();
}

Multivector modular_tensor(const NambuStructure& s, const VolumeSpec& v) {
  if (!(*v.chart == *s.chart())) throw ChartMismatch("volume and structure live on different charts");
  Multivector m = delta(v, s.lambda());
  for (const auto& idx : index_sets(s.dim(), s.order() - 1)) {
    const Form beta = GradedTensor::basis(s.chart(), Variance::form, idx);
    const RationalFunction lhs = pair(beta, m);
    const RationalFunction rhs = divergence(v, contract_form(beta, s.lambda()));
    if (!(lhs == rhs)) {
      throw std::logic_error("modular tensor disagrees with the divergence of a Hamiltonian field");
    }
  }
  return m;
}

PotentialResult modular_potential(const NambuStructure& s, const VolumeSpec& v, int bound) {
  if (bound < 0) throw std::invalid_argument("degree bound must be non-negative");
  PotentialResult out{false, bound, modular_tensor(s, v), std::nullopt, {}, {}};
  const std::size_t m = s.dim();
  const bool negate = (s.order() - 1) % 2 != 0;
  std::vector<Exponent> monomials;
  for (auto& e : monomials_up_to(m, bound)) {
    if (total_degree(e) > 0) monomials.push_back(std::move(e));
  }
  SupportIndex rows;
  std::vector<SparseVec> columns;
  for (const auto& e : monomials) {
    Multivector image = contract_form(differential(s.chart(), RationalFunction(Polynomial::monomial(e))), s.lambda());
    if (negate) image = -image;
    columns.push_back(rows.encode(image));
  }
  const SparseVec target = rows.encode(out.modular);
  const ExactMatrix a = matrix_from_columns(columns, rows.size());
  const SolveResult solved = solve_linear(a, to_dense(target, rows.size()));
  if (solved.feasible) {
    Polynomial f(m);
    for (std::size_t i = 0; i < monomials.size(); ++i) f.add_term(monomials[i], solved.solution[i]);
    out.feasible = true;
    out.potential = std::move(f);
    return out;
  }
  out.certificate = solved.certificate;
  for (std::size_t i = 0; i < out.certificate.size(); ++i) {
    if (sgn(out.certificate[i]) == 0) continue;
    const TensorKey& key = rows.key(i);
    out.certificate_labels.push_back(rational_to_string(out.certificate[i]) + " : " +
                                     key_label(s.chart(), Variance::multivector, key.first, key.second));
  }
  return out;
}

WeightedForm basic_volume(const NambuStructure& s, const VolumeSpec& v, const Polynomial& f) {
  const VolumeSpec weighted = v.weighted(f);
  const Multivector m = modular_tensor(s, weighted);
  if (!m.is_zero()) {
    throw PreconditionError("modular tensor of the weighted volume is nonzero (" + m.to_string() +
                            "); no basic volume for this potential");
  }
  return flat(weighted, s.lambda());
}

BasicReport check_basic(const NambuStructure& s, const WeightedForm& mu, const std::vector<RationalFunction>& family) {
  if (static_cast<std::size_t>(mu.body.degree()) != s.dim() - s.order()) {
    throw DegreeError("basic volume candidate must have degree m - n");
  }
  BasicReport report;
  for (const auto& tuple : combinations(family.size(), s.order() - 1)) {
    std::vector<RationalFunction> fs;
    for (std::size_t i : tuple) fs.push_back(family[i]);
    const Multivector x = hamiltonian_vf(s, fs);
    ++report.tuples_checked;
    const Form inner = interior(x, mu.body);
    if (!inner.is_zero()) {
      report.pass = false;
      report.violations.push_back({tuple, "interior", inner});
    }
    const WeightedForm lie = weighted_lie(x, mu);
    if (!lie.body.is_zero()) {
      report.pass = false;
      report.violations.push_back({tuple, "lie", lie.body});
    }
  }
  return report;
}

bool is_tangent(const NambuStructure& s, const Multivector& p, int bound) {
  if (p.degree() < 1 || p.degree() > s.order()) throw DegreeError("tangency is tested for degrees 1..n");
  for (const Form& alpha : ker_sharp_basis(s, 1, bound)) {
    if (!contract_form(alpha, p).is_zero()) return false;
  }
  return true;
}

}  // namespace npc

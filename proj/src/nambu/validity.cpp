#include "npc/nambu/validity.hpp"

namespace npc {

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& idx : index_sets(n, static_cast<int>(k))) {
    out.emplace_back(idx.begin(), idx.end());
  }
  return out;
}

std::vector<RationalFunction> default_family(const ChartPtr& chart, FamilyKind kind) {
  const std::size_t m = chart->dim();
  std::vector<RationalFunction> family;
  for (std::size_t i = 0; i < m; ++i) family.push_back(coordinate_function(chart, i));
  if (kind == FamilyKind::quadratics) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        Exponent e(m, 0);
        e[i] += 1;
        e[j] += 1;
        family.emplace_back(Polynomial::monomial(e));
      }
    }
  }
  return family;
}

std::string family_name(FamilyKind kind) {
  return kind == FamilyKind::coords ? "coordinates" : "coordinates and degree-2 monomials";
}

namespace {

std::vector<RationalFunction> pick(const std::vector<RationalFunction>& family, const std::vector<std::size_t>& idx) {
  std::vector<RationalFunction> out;
  for (std::size_t i : idx) out.push_back(family[i]);
  return out;
}

}  // namespace

FundamentalIdentityReport check_fundamental_identity(const NambuStructure& s,
                                                     const std::vector<RationalFunction>& family,
                                                     const std::string& name, std::size_t max_recorded) {
  FundamentalIdentityReport report;
  report.family_name = name;
  report.family = family;
  const std::size_t n = static_cast<std::size_t>(s.order());
  const auto f_tuples = combinations(family.size(), n - 1);
  const auto g_tuples = combinations(family.size(), n);
  std::vector<std::optional<Form>> g_forms(g_tuples.size());
  for (const auto& f : f_tuples) {
    const auto fs = pick(family, f);
    const Multivector residual_tensor = lie_mv(hamiltonian_vf(s, fs), s.lambda());
    if (residual_tensor.is_zero()) {
      report.pairs_checked += g_tuples.size();
      continue;
    }
    for (std::size_t gi = 0; gi < g_tuples.size(); ++gi) {
      if (!g_forms[gi]) {
        const auto gs = pick(family, g_tuples[gi]);
        g_forms[gi] = wedge_of_differentials(s.chart(), gs);
      }
      ++report.pairs_checked;
      RationalFunction r = pair(*g_forms[gi], residual_tensor);
      if (r.is_zero()) continue;
      report.pass = false;
      ++report.violation_count;
      if (report.violations.size() < max_recorded) report.violations.push_back({f, g_tuples[gi], r});
    }
  }
  return report;
}

DecomposabilityReport check_decomposability(const NambuStructure& s) {
  DecomposabilityReport report;
  for (const auto& idx : index_sets(s.dim(), s.order() - 1)) {
    const Form beta = GradedTensor::basis(s.chart(), Variance::form, idx);
    const Multivector r = wedge(contract_form(beta, s.lambda()), s.lambda());
    if (!r.is_zero()) {
      report.pass = false;
      report.witness = beta;
      report.residual = r;
      return report;
    }
  }
  return report;
}

AutomorphismReport check_automorphism(const NambuStructure& s, std::span<const RationalFunction> fs) {
  Multivector field = hamiltonian_vf(s, fs);
  Multivector residual = lie_mv(field, s.lambda());
  const bool pass = residual.is_zero();
  return {pass, std::move(field), std::move(residual)};
}

ValidityReport validate(const NambuStructure& s, FamilyKind kind) {
  ValidityReport report;
  report.fundamental_identity = check_fundamental_identity(s, default_family(s.chart(), kind), family_name(kind));
  report.decomposability = check_decomposability(s);
  return report;
}

}  // namespace npc

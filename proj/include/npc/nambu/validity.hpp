#pragma once

#include "npc/nambu/structure.hpp"

namespace npc {

enum class FamilyKind { coords, quadratics };

/// Coordinates, optionally followed by every degree-2 monomial.
std::vector<RationalFunction> default_family(const ChartPtr& chart, FamilyKind kind);
std::string family_name(FamilyKind kind);

/*
 * Fundamental identity on all (n-1)-subsets f and n-subsets g of the family.
 * The residual for (f, g) is <dg1 ^ ... ^ dgn, L_{X_f} Lambda>, which expands
 * to X_f{g} - sum_i {g1, ..., X_f(g_i), ..., gn}.
 */
FundamentalIdentityReport check_fundamental_identity(const NambuStructure& s,
                                                     const std::vector<RationalFunction>& family,
                                                     const std::string& name = "custom",
                                                     std::size_t max_recorded = 8);

/// i(beta)Lambda ^ Lambda = 0 for every basis (n-1)-form beta.
DecomposabilityReport check_decomposability(const NambuStructure& s);

struct AutomorphismReport {
  bool pass = true;
  Multivector field;
  Multivector residual;
};

/// L_{X_f} Lambda for the Hamiltonian field of f1..f_{n-1}.
AutomorphismReport check_automorphism(const NambuStructure& s, std::span<const RationalFunction> fs);

ValidityReport validate(const NambuStructure& s, FamilyKind kind = FamilyKind::quadratics);

/// Increasing k-subsets of {0..n-1}.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

}  // namespace npc

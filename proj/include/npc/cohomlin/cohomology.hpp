#pragma once

#include "npc/cohomlin/truncation.hpp"
#include "npc/modular/volume.hpp"
#include "npc/nambu/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace npc {

/// Basis of {alpha in Omega^k, coefficients of degree <= bound : #_k alpha = 0}.
std::vector<Form> ker_sharp_basis(const NambuStructure& s, int k, int bound);

struct FoliatedResult {
  int degree = 0;
  int bound = 0;
  std::size_t dimension = 0;
  std::size_t cocycles = 0;
  std::size_t coboundaries = 0;
  /// Dimension at bound - 1, when bound > 0.
  std::optional<std::size_t> previous;
  bool stable() const { return previous && *previous == dimension; }
};

/// Truncated cohomology of Omega^k / ker #_k with the induced differential.
FoliatedResult foliated_cohomology_dim(const NambuStructure& s, int k, int bound);

struct CocycleCheck {
  bool pass = true;
  Form residual;
};

/// f d(alpha) - df ^ alpha.
CocycleCheck np_cocycle_check_top(const Polynomial& f, const Form& alpha);
/// Same check for the coefficient of a top-order structure; throws when m != n.
CocycleCheck np_cocycle_check_top(const NambuStructure& s, const Form& alpha);

struct H1TopResult {
  int bound = 0;
  std::size_t dimension = 0;
  std::size_t cocycles = 0;
  std::size_t coboundaries = 0;
  std::vector<Form> representatives;
};

/// Truncated first cohomology of Lambda = f @1^...^@m on 1-forms.
H1TopResult np_h1_top(const Polynomial& f, int bound);

struct CongruenceResult {
  bool member = false;
  /// Coefficient of `target` in rep = c * target + coboundary.
  Rational target_coefficient;
};

/// Decides whether rep lies in span({f dg} U {target}) at the given bound.
CongruenceResult h1_top_congruence(const Polynomial& f, int bound, const Form& rep, const Form& target);

/// Tangent k-multivectors with coefficients of degree <= bound, as coordinates in V^k_{<=bound}.
std::vector<SparseVec> tangent_basis(const NambuStructure& s, int k, int bound);

struct HomologyResult {
  int degree = 0;
  int bound = 0;
  std::size_t dimension = 0;
  std::size_t cycles = 0;
  std::size_t boundaries = 0;
  std::size_t chains = 0;
};

/// Truncated canonical homology in degree k (0 <= k <= n).
HomologyResult canonical_homology_dim(const NambuStructure& s, const VolumeSpec& v, int k, int bound);

struct MembershipResult {
  bool member = false;
  Multivector modular;
  std::optional<Form> witness;
  DenseVec certificate;
  std::vector<std::string> certificate_labels;
};

/// Whether the modular tensor is #_1 of a 1-form with coefficients of degree <= bound.
MembershipResult subcomplex_check(const NambuStructure& s, const VolumeSpec& v, int bound);

struct DualityRow {
  int degree = 0;
  std::optional<std::size_t> np;
  std::size_t foliated = 0;
  std::size_t canonical = 0;  // H_{n-k}
};

struct DualityReport {
  int bound = 0;
  int order = 0;
  std::vector<DualityRow> rows;
  bool holds = true;
  std::string verdict;
};

DualityReport duality_report(const NambuStructure& s, const VolumeSpec& v, int bound);

/*
 * Form-represented cochains: psi_alpha(a1..ak) = <alpha, #a1 ^ ... ^ #ak>
 * evaluated on (n-1)-forms, and the Nambu-Poisson coboundary of a general
 * k-cochain given as a callable.
 */
using Cochain = std::function<RationalFunction(const std::vector<Form>&)>;

Cochain form_cochain(const NambuStructure& s, const Form& alpha);
RationalFunction np_coboundary(const NambuStructure& s, const Cochain& c, int k, const std::vector<Form>& args);

}  // namespace npc

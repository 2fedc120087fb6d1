#pragma once

#include "npc/algebra/exact_matrix.hpp"
#include "npc/modular/volume.hpp"
#include "npc/nambu/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace npc {

/// delta_nu(Lambda), self-checked against divergences of coordinate Hamiltonian fields.
Multivector modular_tensor(const NambuStructure& s, const VolumeSpec& v);

struct PotentialResult {
  bool feasible = false;
  int bound = 0;
  Multivector modular;
  std::optional<Polynomial> potential;
  DenseVec certificate;
  std::vector<std::string> certificate_labels;
};

/// Searches f of degree <= bound with M = (-1)^{n-1} #_1(df).
PotentialResult modular_potential(const NambuStructure& s, const VolumeSpec& v, int bound);

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// i(Lambda) of the volume weighted by exp(-f); requires a vanishing modular tensor.
WeightedForm basic_volume(const NambuStructure& s, const VolumeSpec& v, const Polynomial& f);

struct BasicViolation {
  std::vector<std::size_t> tuple;
  std::string condition;  // "interior" or "lie"
  Form residual;
};

struct BasicReport {
  bool pass = true;
  std::size_t tuples_checked = 0;
  std::vector<BasicViolation> violations;
};

BasicReport check_basic(const NambuStructure& s, const WeightedForm& mu, const std::vector<RationalFunction>& family);

/// i(alpha)P = 0 for every alpha in the truncated ker #_1 basis.
bool is_tangent(const NambuStructure& s, const Multivector& p, int bound);

/// Human-readable label of a coefficient key, e.g. "x1^2 @2^@3".
std::string key_label(const ChartPtr& chart, Variance variance, const IndexSet& idx, const Exponent& e);

}  // namespace npc

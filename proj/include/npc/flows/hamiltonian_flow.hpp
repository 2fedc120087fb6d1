#pragma once

#include "npc/nambu/structure.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace npc {

/// Working precision of the integrator (IEEE binary128).
using FlowReal = __float128;

struct FlowConfig {
  std::vector<double> start;
  double step = 1e-3;
  long steps = 1000;
  double tolerance = 1e-8;

  void validate() const;
};

struct Trajectory {
  double step = 0;
  std::vector<std::vector<FlowReal>> points;
};

class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial lowered to numeric evaluation; terms in descending grlex order.
class NumericPolynomial {
 public:
  NumericPolynomial() = default;
  explicit NumericPolynomial(const Polynomial& p);
  FlowReal operator()(const std::vector<FlowReal>& x) const;

 private:
  std::vector<std::pair<std::vector<int>, FlowReal>> terms_;
};

/// Classical fourth-order Runge-Kutta for x' = X_{f1...f_{n-1}}(x).
Trajectory integrate_hamiltonian(const NambuStructure& s, const std::vector<RationalFunction>& fs, const FlowConfig& cfg);

struct DriftEntry {
  std::string label;
  double max_drift = 0;
  /// Drift is zero by a symbolic argument, not by measurement.
  bool structural = false;
};

struct ConservationReport {
  bool pass = true;
  double tolerance = 0;
  std::vector<DriftEntry> entries;
};

ConservationReport conservation_report(const Trajectory& trajectory, const NambuStructure& s,
                                       const std::vector<RationalFunction>& fs,
                                       const std::vector<std::vector<RationalFunction>>& probes, double tolerance);

double to_double(FlowReal x);

}  // namespace npc

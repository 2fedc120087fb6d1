#include "npc/flows/hamiltonian_flow.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace npc {

namespace {

FlowReal absolute(FlowReal x) { return x < 0 ? -x : x; }

bool finite(FlowReal x) {
  const double d = static_cast<double>(x);
  return std::isfinite(d);
}

FlowReal from_rational(const Rational& q) {
  // Exact numerator and denominator up to 113 bits are common here; larger
  // values round through long double.
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    return static_cast<FlowReal>(q.get_num().get_si()) / static_cast<FlowReal>(q.get_den().get_si());
  }
  return static_cast<FlowReal>(q.get_d());
}

Polynomial require_polynomial(const RationalFunction& f) {
  auto p = f.as_polynomial();
  if (!p) throw std::domain_error("numeric integration needs polynomial data");
  return *p;
}

std::set<std::size_t> variables_of(const Polynomial& p) {
  std::set<std::size_t> vars;
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) vars.insert(i);
    }
  }
  return vars;
}

}  // namespace

double to_double(FlowReal x) { return static_cast<double>(x); }

void FlowConfig::validate() const {
  if (start.empty()) throw std::invalid_argument("flow needs a start point");
  if (!(step > 0) || !std::isfinite(step)) throw std::invalid_argument("step must be positive and finite");
  if (steps < 1) throw std::invalid_argument("step count must be at least 1");
  if (!std::isfinite(step * static_cast<double>(steps))) throw std::invalid_argument("integration time is not finite");
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
}

NumericPolynomial::NumericPolynomial(const Polynomial& p) {
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) terms_.emplace_back(it->first, from_rational(it->second));
}

FlowReal NumericPolynomial::operator()(const std::vector<FlowReal>& x) const {
  FlowReal sum = 0;
  for (const auto& [e, c] : terms_) {
    FlowReal t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    }
    sum += t;
  }
  return sum;
}

Trajectory integrate_hamiltonian(const NambuStructure& s, const std::vector<RationalFunction>& fs, const FlowConfig& cfg) {
  cfg.validate();
  const std::size_t m = s.dim();
  if (cfg.start.size() != m) throw std::invalid_argument("start point has wrong dimension");
  const Multivector field = hamiltonian_vf(s, fs);
  std::vector<NumericPolynomial> rhs(m);
  for (std::size_t j = 0; j < m; ++j) rhs[j] = NumericPolynomial(require_polynomial(field.component({static_cast<int>(j)})));
  auto eval = [&](const std::vector<FlowReal>& x) {
    std::vector<FlowReal> v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = rhs[j](x);
    return v;
  };
  auto shifted = [&](const std::vector<FlowReal>& x, const std::vector<FlowReal>& k, FlowReal c) {
    std::vector<FlowReal> y(m);
    for (std::size_t j = 0; j < m; ++j) y[j] = x[j] + c * k[j];
    return y;
  };
  Trajectory traj;
  traj.step = cfg.step;
  traj.points.reserve(static_cast<std::size_t>(cfg.steps) + 1);
  std::vector<FlowReal> x(cfg.start.begin(), cfg.start.end());
  traj.points.push_back(x);
  const FlowReal h = cfg.step;
  const FlowReal half = h / 2;
  for (long step = 0; step < cfg.steps; ++step) {
    const auto k1 = eval(x);
    const auto k2 = eval(shifted(x, k1, half));
    const auto k3 = eval(shifted(x, k2, half));
    const auto k4 = eval(shifted(x, k3, h));
    for (std::size_t j = 0; j < m; ++j) {
      x[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
      if (!finite(x[j])) {
        throw NonFiniteError("non-finite coordinate after step " + std::to_string(step + 1));
      }
    }
    traj.points.push_back(x);
  }
  return traj;
}

ConservationReport conservation_report(const Trajectory& trajectory, const NambuStructure& s,
                                       const std::vector<RationalFunction>& fs,
                                       const std::vector<std::vector<RationalFunction>>& probes, double tolerance) {
  if (trajectory.points.empty()) throw std::invalid_argument("empty trajectory");
  ConservationReport report;
  report.tolerance = tolerance;
  const Multivector field = hamiltonian_vf(s, fs);
  std::set<std::size_t> moving;
  for (const auto& [idx, c] : field.components()) moving.insert(idx[0]);
  const auto& names = s.chart()->names();
  auto measure = [&](const Polynomial& p) {
    const NumericPolynomial np(p);
    const FlowReal v0 = np(trajectory.points.front());
    FlowReal worst = 0;
    for (const auto& x : trajectory.points) {
      const FlowReal d = absolute(np(x) - v0);
      if (!finite(d)) return std::numeric_limits<double>::infinity();
      if (d > worst) worst = d;
    }
    return to_double(worst);
  };
  for (const auto& f : fs) {
    const Polynomial p = require_polynomial(f);
    DriftEntry entry{p.to_string(names), 0, false};
    bool untouched = true;
    for (std::size_t v : variables_of(p)) untouched = untouched && moving.count(v) == 0;
    if (untouched) entry.structural = true;
    else entry.max_drift = measure(p);
    report.entries.push_back(entry);
  }
  for (const auto& probe : probes) {
    const Polynomial p = require_polynomial(nambu_bracket(s, probe));
    std::string label = "{";
    for (std::size_t i = 0; i < probe.size(); ++i) label += (i ? ", " : "") + probe[i].to_string(names);
    label += "}";
    report.entries.push_back({label, measure(p), false});
  }
  for (const auto& e : report.entries) {
    if (!(e.max_drift <= tolerance)) report.pass = false;
  }
  return report;
}

}  // namespace npc

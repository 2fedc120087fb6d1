#include <doctest.h>

#include "support/generators.hpp"

#include "npc/flows/hamiltonian_flow.hpp"

#include <cmath>

using namespace npc;
using namespace npc::testing;

namespace {

const NambuStructure lambda3 = singular_r3();
const ChartPtr c3 = lambda3.chart();

FlowConfig config(double h, long n, std::vector<double> start = {1, 0, 0}, double tol = 1e-8) {
  FlowConfig c;
  c.start = std::move(start);
  c.step = h;
  c.steps = n;
  c.tolerance = tol;
  return c;
}

std::vector<RationalFunction> rotation() {
  return {RationalFunction(Polynomial::variable(3, 0).pow(2) + Polynomial::variable(3, 1).pow(2)),
          coordinate_function(c3, 2)};
}

}  // namespace

TEST_CASE("configuration validation") {
  CHECK_THROWS(config(0, 10).validate());
  CHECK_THROWS(config(1e-3, 0).validate());
  CHECK_THROWS(config(1e-3, 10, {1, 0, 0}, 0).validate());
  CHECK_NOTHROW(config(1e-3, 10).validate());
  CHECK_THROWS(integrate_hamiltonian(lambda3, rotation(), config(1e-3, 10, {1, 0})));
}

TEST_CASE("coordinate Hamiltonians move only along x3") {
  const std::vector<RationalFunction> fs{coordinate_function(c3, 0), coordinate_function(c3, 1)};
  const Trajectory t = integrate_hamiltonian(lambda3, fs, config(0.01, 100));
  REQUIRE(t.points.size() == 101);
  for (const auto& p : t.points) {
    CHECK(to_double(p[0]) == 1.0);
    CHECK(to_double(p[1]) == 0.0);
  }
  CHECK(to_double(t.points.back()[2]) > 0);
  // x3' = 1 + x3^2 from x3 = 0 gives tan(t).
  CHECK(std::abs(to_double(t.points.back()[2]) - std::tan(1.0)) < 1e-7);
  const ConservationReport r = conservation_report(t, lambda3, fs, {}, 1e-12);
  CHECK(r.pass);
  for (const auto& e : r.entries) {
    CHECK(e.structural);
    CHECK(e.max_drift == 0);
  }
}

TEST_CASE("rotation in the x1 x2 plane") {
  const Trajectory t = integrate_hamiltonian(lambda3, rotation(), config(1e-3, 1000));
  // Field 2 r^2 (x2 @1 - x1 @2) at r = 1: angle 2t clockwise.
  const auto& end = t.points.back();
  CHECK(std::abs(to_double(end[0]) - std::cos(2.0)) < 1e-10);
  CHECK(std::abs(to_double(end[1]) + std::sin(2.0)) < 1e-10);
  CHECK(to_double(end[2]) == 0.0);
  const ConservationReport r = conservation_report(t, lambda3, rotation(), {}, 1e-6);
  CHECK(r.pass);
  REQUIRE(r.entries.size() == 2);
  CHECK_FALSE(r.entries[0].structural);
  CHECK(r.entries[0].max_drift <= 1e-8);
  CHECK(r.entries[1].structural);
}

TEST_CASE("fourth-order convergence of the drift") {
  const auto drift = [](double h, long n) {
    const Trajectory t = integrate_hamiltonian(lambda3, rotation(), config(h, n));
    return conservation_report(t, lambda3, rotation(), {}, 1).entries[0].max_drift;
  };
  const double ratio = drift(1e-3, 1000) / drift(5e-4, 2000);
  CHECK(ratio >= 8);
  CHECK(ratio <= 32);
  const double coarse = drift(2e-2, 50) / drift(1e-2, 100);
  CHECK(coarse >= 8);
  CHECK(coarse <= 32);
}

TEST_CASE("stationary and unstable trajectories") {
  const std::vector<RationalFunction> constants{RationalFunction::constant(3, 1), RationalFunction::constant(3, 2)};
  const Trajectory t = integrate_hamiltonian(lambda3, constants, config(0.1, 20, {0.3, -0.2, 0.5}));
  for (const auto& p : t.points) CHECK(to_double(p[0]) == 0.3);
  const std::vector<std::vector<RationalFunction>> probes{
      {coordinate_function(c3, 0), coordinate_function(c3, 1), coordinate_function(c3, 2)}};
  const ConservationReport r = conservation_report(t, lambda3, constants, probes, 1e-12);
  CHECK(r.pass);
  for (const auto& e : r.entries) CHECK(e.max_drift == 0);

  bool failed = false;
  try {
    const Trajectory big = integrate_hamiltonian(lambda3, rotation(), config(10, 100));
    failed = !conservation_report(big, lambda3, rotation(), {}, 1e-8).pass;
  } catch (const NonFiniteError&) {
    failed = true;
  }
  CHECK(failed);
}

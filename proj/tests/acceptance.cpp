#include "support/generators.hpp"
#include "support/identities.hpp"

#include "npc/cli/model.hpp"
#include "npc/cohomlin/cohomology.hpp"
#include "npc/cohomlin/naka.hpp"
#include "npc/flows/hamiltonian_flow.hpp"
#include "npc/modular/modular_class.hpp"
#include "npc/nambu/validity.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace npc;
using namespace npc::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

void time_limit(Verdict& v, double elapsed, double limit) {
  if (elapsed >= limit) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "took %.2f s, limit %.0f s", elapsed, limit);
    v.fail(buf);
  }
}

ChartPtr r3() { return singular_r3().chart(); }

Multivector field(const ChartPtr& c, int i, const Polynomial& coeff) {
  return Multivector::basis(c, Variance::multivector, {i}, RationalFunction(coeff));
}

/// Evaluates a certificate, given as "coefficient : key" labels, on a tensor.
Rational apply_certificate(const ModelFile& scope, const std::vector<std::string>& labels, const GradedTensor& t) {
  Rational total = 0;
  for (const auto& label : labels) {
    const auto sep = label.find(" : ");
    const Rational c(label.substr(0, sep));
    const GradedTensor key = evaluate_tensor(scope, label.substr(sep + 3));
    const auto& [idx, mono] = *key.components().begin();
    const Exponent e = mono.numerator().leading_exponent();
    const auto value = t.component(idx).as_polynomial();
    if (!value) throw std::logic_error("certificate applied to a non-polynomial tensor");
    total += c * value->coefficient(e);
  }
  return total;
}

Verdict golden_values() {
  Verdict v;
  const auto t0 = Clock::now();
  const NambuStructure s = singular_r3();
  const auto c = s.chart();
  const Polynomial r2 = r_squared(3);
  const auto x = [&](int i) { return coord(c, static_cast<std::size_t>(i)); };
  struct Case {
    RationalFunction f, g;
    Multivector expected;
    std::string text;
  };
  const std::vector<Case> cases{
      {x(0), x(1), field(c, 2, r2), "(x1^2 + x2^2 + x3^2)*@3"},
      {x(0), x(2), field(c, 1, -r2), "(-x1^2 - x2^2 - x3^2)*@2"},
      {x(1), x(2), field(c, 0, r2), "(x1^2 + x2^2 + x3^2)*@1"},
  };
  for (const auto& k : cases) {
    const std::vector<RationalFunction> fs{k.f, k.g};
    const Multivector got = hamiltonian_vf(s, fs);
    if (!(got == k.expected) || got.to_string() != k.text) v.fail("Hamiltonian field " + got.to_string());
  }
  Multivector m(c, Variance::multivector, 2);
  m.set({0, 1}, RationalFunction(Polynomial::variable(3, 2) * Rational(2)));
  m.set({0, 2}, RationalFunction(Polynomial::variable(3, 1) * Rational(-2)));
  m.set({1, 2}, RationalFunction(Polynomial::variable(3, 0) * Rational(2)));
  const Multivector got = modular_tensor(s, VolumeSpec::standard(c));
  if (!(got == m)) v.fail("modular tensor " + got.to_string());
  if (got.to_string() != "2*x3*@1^@2 - 2*x2*@1^@3 + 2*x1*@2^@3") v.fail("modular tensor text " + got.to_string());
  time_limit(v, seconds_since(t0), 1);
  return v;
}

Verdict modular_non_exactness() {
  Verdict v;
  const auto t0 = Clock::now();
  const NambuStructure s = singular_r3();
  const ModelFile scope = parse_model("space 3 coords x1 x2 x3\n");
  for (int d = 0; d <= 8; ++d) {
    const PotentialResult r = modular_potential(s, VolumeSpec::standard(s.chart()), d);
    if (r.feasible || r.certificate_labels.empty()) {
      v.fail("bound " + std::to_string(d) + " not certified infeasible");
      continue;
    }
    // The certificate must vanish on every candidate column and not on M.
    if (apply_certificate(scope, r.certificate_labels, r.modular) == 0) v.fail("certificate misses M at " + std::to_string(d));
    for (const auto& e : monomials_up_to(3, d)) {
      if (total_degree(e) == 0) continue;
      const Multivector col = sharp(s, 1, differential(s.chart(), RationalFunction(Polynomial::monomial(e))));
      if (apply_certificate(scope, r.certificate_labels, col) != 0) {
        v.fail("certificate does not annihilate a column at bound " + std::to_string(d));
        break;
      }
    }
  }
  time_limit(v, seconds_since(t0), 5);
  return v;
}

Verdict truncated_h1() {
  Verdict v;
  const Polynomial f = r_squared(3);
  const Form df = differential(r3(), RationalFunction(f));
  for (int d = 2; d <= 6; ++d) {
    const auto t0 = Clock::now();
    const H1TopResult r = np_h1_top(f, d);
    if (r.dimension != 1 || r.representatives.size() != 1) {
      v.fail("dimension " + std::to_string(r.dimension) + " at bound " + std::to_string(d));
      continue;
    }
    const CongruenceResult cg = h1_top_congruence(f, d, r.representatives[0], df);
    if (!cg.member || cg.target_coefficient == 0) v.fail("representative not congruent to df at " + std::to_string(d));
    if (d == 6) time_limit(v, seconds_since(t0), 30);
  }
  return v;
}

Verdict duality_failure() {
  Verdict v;
  const NambuStructure s = singular_r3();
  const DualityReport r = duality_report(s, VolumeSpec::standard(s.chart()), 4);
  const DualityRow& row = r.rows.at(1);
  if (!row.np || *row.np != 1) v.fail("H1_NP is not 1");
  if (row.canonical != 0) v.fail("H2_can is not 0");
  if (row.foliated != 0) v.fail("foliated H1 is not 0");
  if (r.holds || r.verdict.find("duality FAILS") == std::string::npos) v.fail("verdict: " + r.verdict);
  if (r.verdict.find("H1_NP=1, H2_can=0") == std::string::npos) v.fail("verdict: " + r.verdict);
  return v;
}

Verdict regular_duality() {
  Verdict v;
  for (std::size_t m : {3u, 4u}) {
    const auto t0 = Clock::now();
    const NambuStructure s = regular(m);
    const DualityReport r = duality_report(s, VolumeSpec::standard(s.chart()), 4);
    for (const auto& row : r.rows) {
      if (row.foliated != row.canonical || (row.np && *row.np != row.foliated)) {
        v.fail("R^" + std::to_string(m) + " mismatch at k=" + std::to_string(row.degree));
      }
    }
    if (!r.holds || r.verdict != "duality holds at bound 4") v.fail("R^" + std::to_string(m) + ": " + r.verdict);
    time_limit(v, seconds_since(t0), 10);
  }
  return v;
}

Verdict identity_suites_all() {
  Verdict v;
  const auto t0 = Clock::now();
  unsigned seed = 20261015;
  for (const auto& suite : identity_suites()) {
    const SuiteResult r = suite.run(seed++, 60);
    if (r.instances < 50) v.fail(suite.name + ": too few instances");
    if (!r.pass()) v.fail(suite.name + ": " + std::to_string(r.failures) + " failures, e.g. " + r.first_failure);
  }
  time_limit(v, seconds_since(t0), 60);
  return v;
}

Verdict subcomplex() {
  Verdict v;
  const NambuStructure s3 = singular_r3();
  for (int d = 0; d <= 8; ++d) {
    if (subcomplex_check(s3, VolumeSpec::standard(s3.chart()), d).member) v.fail("singular structure member at " + std::to_string(d));
  }
  const NambuStructure r4 = regular(4);
  const MembershipResult a = subcomplex_check(r4, VolumeSpec::standard(r4.chart()), 2);
  if (!a.member || !a.witness || !a.witness->is_zero()) v.fail("R^4 normal form: expected witness 0");
  const NambuStructure r3reg = regular(3);
  const VolumeSpec weighted = VolumeSpec::make(r3reg.chart(), Polynomial::constant(3, 1), Polynomial::variable(3, 0));
  const MembershipResult b = subcomplex_check(r3reg, weighted, 2);
  if (!b.member || !b.witness) {
    v.fail("weighted R^3: not a member");
  } else {
    if (!(sharp(r3reg, 1, *b.witness) == modular_tensor(r3reg, weighted))) v.fail("weighted R^3: witness does not map to M");
    if (!ext_d(*b.witness).is_zero()) v.fail("weighted R^3: witness not closed");
  }
  return v;
}

Verdict basic_volume_r4() {
  Verdict v;
  const NambuStructure s = regular(4);
  const WeightedForm mu = basic_volume(s, VolumeSpec::standard(s.chart()), Polynomial(4));
  const Form dx4 = coordinate_differential(s.chart(), 3);
  if (!mu.weight.is_zero() || !(mu.body == dx4)) v.fail("mu = " + mu.to_string());
  const BasicReport rep = check_basic(s, mu, default_family(s.chart(), FamilyKind::coords));
  if (!rep.pass || rep.tuples_checked == 0) v.fail("check_basic failed on the coordinate family");
  return v;
}

Polynomial x(std::size_t n, std::size_t i) { return Polynomial::variable(n, i); }

bool pair_ok(const NakaPairResult& r, const Polynomial& p, const Polynomial& q) {
  const Polynomial s = r_squared(2);
  return r.applicable && r.found && r.verified && p == x(2, 0) * r.a + x(2, 1) * r.b + s * r.p_tilde &&
         q == x(2, 0) * Rational(-r.b) + x(2, 1) * r.a + s * r.q_tilde &&
         r.p_tilde.derivative(1) == r.q_tilde.derivative(0);
}

bool triple_ok(const NakaTripleResult& r, const Polynomial& a, const Polynomial& b, const Polynomial& c) {
  const Polynomial s = r_squared(3);
  return r.applicable && r.found && r.verified && a == x(3, 0) * r.a + s * r.a_tilde &&
         b == x(3, 1) * r.a + s * r.b_tilde && c == x(3, 2) * r.a + s * r.c_tilde &&
         r.a_tilde.derivative(1) == r.b_tilde.derivative(0) && r.a_tilde.derivative(2) == r.c_tilde.derivative(0) &&
         r.b_tilde.derivative(2) == r.c_tilde.derivative(1);
}

Verdict naka() {
  Verdict v;
  const Polynomial s2 = r_squared(2);
  const Polynomial s3 = r_squared(3);
  struct PairCase {
    Polynomial p, q;
    Rational a, b;
    Polynomial pt, qt;
  };
  const std::vector<PairCase> pairs{
      {x(2, 0) + s2 * x(2, 0), x(2, 1) + s2 * x(2, 1), 1, 0, x(2, 0), x(2, 1)},
      {-x(2, 1), x(2, 0), 0, -1, Polynomial(2), Polynomial(2)},
      {Polynomial(2), Polynomial(2), 0, 0, Polynomial(2), Polynomial(2)},
  };
  for (const auto& k : pairs) {
    const NakaPairResult r = naka_pair(k.p, k.q);
    if (!pair_ok(r, k.p, k.q) || r.a != k.a || r.b != k.b || !(r.p_tilde == k.pt) || !(r.q_tilde == k.qt)) {
      v.fail("pair example P=" + k.p.to_string());
    }
  }
  struct TripleCase {
    Polynomial a, b, c;
    Rational k;
    Polynomial at, bt, ct;
  };
  const Polynomial z3(3);
  const std::vector<TripleCase> triples{
      {x(3, 0), x(3, 1), x(3, 2), 1, z3, z3, z3},
      {s3 * x(3, 1), s3 * x(3, 0), z3, 0, x(3, 1), x(3, 0), z3},
      {x(3, 0) * Rational(2), x(3, 1) * Rational(2), x(3, 2) * Rational(2), 2, z3, z3, z3},
  };
  for (const auto& k : triples) {
    const NakaTripleResult r = naka_triple(k.a, k.b, k.c);
    if (!triple_ok(r, k.a, k.b, k.c) || r.a != k.k || !(r.a_tilde == k.at) || !(r.b_tilde == k.bt) ||
        !(r.c_tilde == k.ct)) {
      v.fail("triple example A=" + k.a.to_string());
    }
  }
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    // Closed tildes come from a random primitive g.
    const Polynomial g = random_polynomial(rng, 2, 4);
    const Rational a = uniform(rng, -3, 3), b = uniform(rng, -3, 3);
    const Polynomial p = x(2, 0) * a + x(2, 1) * b + s2 * g.derivative(0);
    const Polynomial q = x(2, 0) * Rational(-b) + x(2, 1) * a + s2 * g.derivative(1);
    if (!pair_ok(naka_pair(p, q), p, q)) v.fail("random pair " + std::to_string(t));
  }
  for (int t = 0; t < 20; ++t) {
    const Polynomial g = random_polynomial(rng, 3, 4);
    const Rational a = uniform(rng, -3, 3);
    const Polynomial pa = x(3, 0) * a + s3 * g.derivative(0);
    const Polynomial pb = x(3, 1) * a + s3 * g.derivative(1);
    const Polynomial pc = x(3, 2) * a + s3 * g.derivative(2);
    if (!triple_ok(naka_triple(pa, pb, pc), pa, pb, pc)) v.fail("random triple " + std::to_string(t));
  }
  return v;
}

Verdict flow_cross_check() {
  Verdict v;
  const auto t0 = Clock::now();
  const NambuStructure s = singular_r3();
  const auto c = s.chart();
  const std::vector<RationalFunction> fs{RationalFunction(x(3, 0).pow(2) + x(3, 1).pow(2)), coord(c, 2)};
  const auto drift = [&](double h, long n) {
    FlowConfig cfg;
    cfg.start = {1, 0, 0};
    cfg.step = h;
    cfg.steps = n;
    cfg.tolerance = 1e-8;
    return conservation_report(integrate_hamiltonian(s, fs, cfg), s, fs, {}, cfg.tolerance);
  };
  const ConservationReport coarse = drift(1e-3, 1000);
  const ConservationReport fine = drift(5e-4, 2000);
  if (!coarse.pass) v.fail("drift above tolerance");
  for (const auto& e : coarse.entries) {
    if (e.max_drift > 1e-8) v.fail("drift of " + e.label + " is " + std::to_string(e.max_drift));
  }
  const double ratio = coarse.entries.at(0).max_drift / fine.entries.at(0).max_drift;
  char buf[64];
  std::snprintf(buf, sizeof buf, "halving ratio %.2f", ratio);
  if (!(ratio >= 8 && ratio <= 32)) v.fail(buf);
  time_limit(v, seconds_since(t0), 1);
  if (v.pass) v.detail = buf;
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"golden Hamiltonian fields and modular tensor", golden_values},
      {"modular class not exact for D = 0..8", modular_non_exactness},
      {"truncated H1 = 1 for D = 2..6", truncated_h1},
      {"duality fails on the singular R^3 structure", duality_failure},
      {"duality holds for the regular R^3 and R^4 structures", regular_duality},
      {"identity suites", identity_suites_all},
      {"modular tensor membership in #1(forms)", subcomplex},
      {"basic volume of the R^4 normal form", basic_volume_r4},
      {"decomposition lemmas", naka},
      {"flow conservation and convergence order", flow_cross_check},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", seconds_since(t0));
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " (" << buf
              << (v.detail.empty() ? "" : "; " + v.detail) << ")\n";
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

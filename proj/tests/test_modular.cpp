#include <doctest.h>

#include "support/generators.hpp"
#include "support/identities.hpp"

#include "npc/modular/modular_class.hpp"
#include "npc/nambu/validity.hpp"

using namespace npc;
using namespace npc::testing;

namespace {

const ChartPtr c3 = singular_r3().chart();

RationalFunction x(int i) { return coordinate_function(c3, static_cast<std::size_t>(i)); }
RationalFunction r2() { return RationalFunction(r_squared(3)); }
RationalFunction k(long v) { return RationalFunction::constant(3, v); }
Multivector mv(IndexSet idx, const RationalFunction& f = RationalFunction::constant(3, 1)) {
  return Multivector::basis(c3, Variance::multivector, std::move(idx), f);
}
Form form(IndexSet idx, const RationalFunction& f = RationalFunction::constant(3, 1)) {
  return Form::basis(c3, Variance::form, std::move(idx), f);
}

Multivector singular_modular() { return mv({0, 1}, k(2) * x(2)) - mv({0, 2}, k(2) * x(1)) + mv({1, 2}, k(2) * x(0)); }

}  // namespace

TEST_CASE("flat examples") {
  const VolumeSpec nu = VolumeSpec::standard(c3);
  CHECK(flat(nu, mv({0, 1})).body == form({2}));
  const WeightedForm top = flat(nu, singular_r3().lambda());
  CHECK(top.body.degree() == 0);
  CHECK(top.body.scalar_value() == r2());
  const VolumeSpec w = VolumeSpec::make(c3, Polynomial::constant(3, 1), Polynomial::variable(3, 0));
  const WeightedForm f = flat(w, mv({0}));
  CHECK(f.weight == Polynomial::variable(3, 0));
  CHECK(f.body == form({1, 2}));
}

TEST_CASE("flat inverse examples") {
  const VolumeSpec nu = VolumeSpec::standard(c3);
  const Polynomial zero(3);
  CHECK(flat_inverse(nu, {zero, form({2})}) == mv({0, 1}));
  CHECK(flat_inverse(nu, {zero, form({0, 2})}) == -mv({1}));
  CHECK(flat_inverse(nu, {zero, form({1, 2}, x(0))}) == mv({0}, x(0)));
  CHECK_THROWS_AS(flat_inverse(nu, {Polynomial::variable(3, 0), form({2})}), WeightMismatch);
}

TEST_CASE("weighted differential") {
  const Polynomial zero(3);
  const Form body = form({1}, x(0) * x(2));
  CHECK(weighted_d({zero, body}).body == ext_d(body));
  CHECK(weighted_d({Polynomial::variable(3, 0), form({1})}).body == -form({0, 1}));
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const WeightedForm theta{random_polynomial(rng, 3, 2), random_form(rng, c3, uniform(rng, 0, 1))};
    CHECK(weighted_d(weighted_d(theta)).body.is_zero());
  }
}

TEST_CASE("delta examples") {
  const VolumeSpec nu = VolumeSpec::standard(c3);
  CHECK(delta(nu, mv({0}, x(0))).scalar_value() == k(1));
  CHECK(delta(nu, mv({0, 1}, x(0))) == -mv({1}));
  CHECK(delta(nu, singular_r3().lambda()) == singular_modular());
  CHECK_THROWS(delta(nu, Multivector::scalar(c3, k(1), Variance::multivector)));
}

TEST_CASE("divergence examples") {
  const VolumeSpec nu = VolumeSpec::standard(c3);
  CHECK(divergence(nu, mv({2}, r2())) == k(2) * x(2));
  CHECK(divergence(nu, mv({0})).is_zero());
  Rng rng(32);
  for (int t = 0; t < 40; ++t) {
    const Polynomial f = random_polynomial(rng, 3, 3);
    const Multivector xv = random_multivector(rng, c3, 1);
    const VolumeSpec w = VolumeSpec::make(c3, Polynomial::constant(3, 1), f);
    RationalFunction classical(3);
    for (int i = 0; i < 3; ++i) classical += xv.component({i}).derivative(static_cast<std::size_t>(i));
    CHECK(divergence(w, xv) == classical - apply_vector(xv, RationalFunction(f)));
    // Independent oracle: L_X nu = div(X) nu on the body of the weighted volume.
    const WeightedForm vol{f, standard_volume(c3)};
    CHECK(weighted_lie(xv, vol).body == vol.body * divergence(w, xv));
  }
}

TEST_CASE("modular tensor examples") {
  const NambuStructure s = singular_r3();
  CHECK(modular_tensor(s, VolumeSpec::standard(c3)) == singular_modular());
  const NambuStructure r4 = regular(4);
  CHECK(modular_tensor(r4, VolumeSpec::standard(r4.chart())).is_zero());
  // Weighting by exp(-x3) changes M by #1(d x3) up to the sign (-1)^(n-1).
  const VolumeSpec w = VolumeSpec::make(c3, Polynomial::constant(3, 1), Polynomial::variable(3, 2));
  const Multivector mw = modular_tensor(s, w);
  CHECK(mw == singular_modular() - sharp(s, 1, form({2})));
  for (const auto& idx : index_sets(3, 2)) {
    const Form beta = Form::basis(c3, Variance::form, idx);
    CHECK(pair(beta, mw) == divergence(w, contract_form(beta, s.lambda())));
  }
}

TEST_CASE("modular potential") {
  const NambuStructure r4 = regular(4);
  const PotentialResult zero = modular_potential(r4, VolumeSpec::standard(r4.chart()), 3);
  REQUIRE(zero.feasible);
  CHECK(zero.potential->is_zero());
  const NambuStructure s = singular_r3();
  for (int d = 0; d <= 8; ++d) {
    const PotentialResult r = modular_potential(s, VolumeSpec::standard(c3), d);
    CHECK_FALSE(r.feasible);
    CHECK_FALSE(r.certificate.empty());
  }
  // Regular structure on R^3 weighted by exp(-x1): M = #1(-dx1) and the potential is -x1 up to the sign.
  const NambuStructure r3 = regular(3);
  const VolumeSpec w = VolumeSpec::make(c3, Polynomial::constant(3, 1), Polynomial::variable(3, 0));
  const PotentialResult p = modular_potential(r3, w, 2);
  REQUIRE(p.feasible);
  const Multivector target = sharp(r3, 1, differential(c3, RationalFunction(*p.potential)));
  CHECK(p.modular == target);
  CHECK(p.modular == modular_tensor(r3, w));
  CHECK_FALSE(p.potential->is_zero());
  // Folding the potential into the volume kills the modular tensor.
  CHECK(modular_tensor(r3, w.weighted(*p.potential)).is_zero());
}

TEST_CASE("basic volumes") {
  const NambuStructure r4 = regular(4);
  const WeightedForm mu = basic_volume(r4, VolumeSpec::standard(r4.chart()), Polynomial(4));
  CHECK(mu.body == coordinate_differential(r4.chart(), 3));
  CHECK(check_basic(r4, mu, default_family(r4.chart(), FamilyKind::coords)).pass);
  const WeightedForm one = basic_volume(regular(3), VolumeSpec::standard(c3), Polynomial(3));
  CHECK(one.body.degree() == 0);
  CHECK(one.body.scalar_value() == k(1));
  CHECK_THROWS_AS(basic_volume(singular_r3(), VolumeSpec::standard(c3), Polynomial(3)), PreconditionError);
  const WeightedForm bad{Polynomial(4), coordinate_differential(r4.chart(), 0)};
  const BasicReport rep = check_basic(r4, bad, default_family(r4.chart(), FamilyKind::coords));
  CHECK_FALSE(rep.pass);
  REQUIRE_FALSE(rep.violations.empty());
  CHECK(rep.violations[0].condition == "interior");
  const std::vector<RationalFunction> constants{RationalFunction::constant(4, 1), RationalFunction::constant(4, 2)};
  CHECK(check_basic(r4, bad, constants).pass);
}

TEST_CASE("tangency examples") {
  Rng rng(33);
  const NambuStructure s = singular_r3();
  for (int t = 0; t < 10; ++t) CHECK(is_tangent(s, random_multivector(rng, c3, uniform(rng, 1, 3)), 3));
  const NambuStructure r4 = regular(4);
  const auto c4 = r4.chart();
  CHECK_FALSE(is_tangent(r4, Multivector::basis(c4, Variance::multivector, {3}), 2));
  CHECK(is_tangent(r4, Multivector::basis(c4, Variance::multivector, {0, 1}, coordinate_function(c4, 3)), 2));
}

TEST_CASE("identity suites") {
  unsigned seed = 100;
  for (const auto& suite : identity_suites()) {
    CAPTURE(suite.name);
    const SuiteResult r = suite.run(seed++, 25);
    CAPTURE(r.first_failure);
    CHECK(r.pass());
  }
}

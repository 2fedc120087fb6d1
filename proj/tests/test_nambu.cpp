#include <doctest.h>

#include "support/generators.hpp"

#include "npc/nambu/validity.hpp"

using namespace npc;
using namespace npc::testing;

namespace {

const ChartPtr c3 = singular_r3().chart();

RationalFunction x(int i) { return coordinate_function(c3, static_cast<std::size_t>(i)); }
RationalFunction r2() { return RationalFunction(r_squared(3)); }
Form form(const ChartPtr& c, IndexSet idx, const RationalFunction& f) { return Form::basis(c, Variance::form, std::move(idx), f); }
Form form(const ChartPtr& c, IndexSet idx) { return Form::basis(c, Variance::form, std::move(idx)); }
Multivector vec(const ChartPtr& c, int i, const RationalFunction& f) { return Multivector::basis(c, Variance::multivector, {i}, f); }

NambuStructure non_decomposable() {
  auto c = make_chart(5);
  return NambuStructure(Multivector::basis(c, Variance::multivector, {0, 1, 2}) +
                            Multivector::basis(c, Variance::multivector, {0, 3, 4}),
                        3);
}

}  // namespace

TEST_CASE("construction rules") {
  CHECK_THROWS(NambuStructure(Multivector::basis(c3, Variance::multivector, {0, 1}), 2));
  CHECK_THROWS(NambuStructure(Multivector::basis(c3, Variance::multivector, {0, 1}), 3));
  CHECK_THROWS(NambuStructure(Multivector::basis(c3, Variance::multivector, {0, 1, 2},
                                                 RationalFunction(Polynomial::constant(3, 1), r_squared(3))),
                              3));
  CHECK(singular_r3().is_top_order());
  CHECK_FALSE(regular(4).is_top_order());
  CHECK(regular(4).has_constant_coefficients());
  CHECK(singular_r3().top_coefficient() == r_squared(3));
}

TEST_CASE("bracket examples") {
  const std::vector<RationalFunction> xs{x(0), x(1), x(2)};
  CHECK(nambu_bracket(singular_r3(), xs) == r2());
  CHECK(nambu_bracket(regular(3), xs) == RationalFunction::constant(3, 1));
  const std::vector<RationalFunction> repeated{x(0), x(0), x(2)};
  CHECK(nambu_bracket(singular_r3(), repeated).is_zero());
  const std::vector<RationalFunction> two{x(0), x(1)};
  CHECK_THROWS_AS(nambu_bracket(singular_r3(), two), ArityError);
}

TEST_CASE("sharp examples") {
  const NambuStructure s = singular_r3();
  CHECK(sharp(s, 2, form(c3, {0, 1})) == vec(c3, 2, r2()));
  CHECK(sharp(s, 2, form(c3, {0, 2})) == vec(c3, 1, -r2()));
  CHECK(sharp(s, 0, Form::scalar(c3, RationalFunction::constant(3, 1))) == s.lambda());
  CHECK_THROWS(sharp(s, 4, form(c3, {0, 1})));
}

TEST_CASE("Hamiltonian field examples") {
  const NambuStructure s = singular_r3();
  const std::vector<RationalFunction> a{x(1), x(2)}, b{x(0), x(0)};
  CHECK(hamiltonian_vf(s, a) == vec(c3, 0, r2()));
  CHECK(hamiltonian_vf(s, b).is_zero());
  const NambuStructure r4 = regular(4);
  const std::vector<RationalFunction> c{coord(r4.chart(), 0), coord(r4.chart(), 1)};
  CHECK(hamiltonian_vf(r4, c) == vec(r4.chart(), 2, RationalFunction::constant(4, 1)));
  const std::vector<RationalFunction> one{x(0)};
  CHECK_THROWS_AS(hamiltonian_vf(s, one), ArityError);
}

TEST_CASE("fundamental identity") {
  const NambuStructure s = singular_r3();
  CHECK(check_fundamental_identity(s, default_family(c3, FamilyKind::coords), "coords").pass);
  const NambuStructure r4 = regular(4);
  const auto rep = check_fundamental_identity(r4, default_family(r4.chart(), FamilyKind::quadratics), "q");
  CHECK(rep.pass);
  CHECK(rep.pairs_checked > 0);
  const NambuStructure bad = non_decomposable();
  const auto fail = check_fundamental_identity(bad, default_family(bad.chart(), FamilyKind::quadratics), "q");
  CHECK_FALSE(fail.pass);
  REQUIRE_FALSE(fail.violations.empty());
  CHECK_FALSE(fail.violations[0].residual.is_zero());
  CHECK(fail.violation_count >= fail.violations.size());
}

TEST_CASE("decomposability") {
  CHECK(check_decomposability(singular_r3()).pass);
  CHECK(check_decomposability(regular(4)).pass);
  const DecomposabilityReport r = check_decomposability(non_decomposable());
  CHECK_FALSE(r.pass);
  REQUIRE(r.witness);
  CHECK(r.witness->degree() == 2);
  CHECK_FALSE(r.residual->is_zero());
  CHECK(validate(singular_r3()).valid());
  CHECK_FALSE(validate(non_decomposable()).valid());
}

TEST_CASE("Leibniz bracket examples") {
  const NambuStructure r3 = regular(3);
  CHECK(leibniz_bracket(r3, form(c3, {0, 1}), form(c3, {0, 2})).is_zero());
  const NambuStructure s = singular_r3();
  const Form expected = form(c3, {0, 1}, x(1) * RationalFunction::constant(3, 2)) +
                        form(c3, {0, 2}, x(2) * RationalFunction::constant(3, 2));
  const Form got = leibniz_bracket(s, form(c3, {0, 1}), form(c3, {0, 2}));
  CHECK(got == expected);
  CHECK(sharp(s, 2, got) == vector_bracket(vec(c3, 2, r2()), vec(c3, 1, -r2())));
  const NambuStructure r4 = regular(4);
  const Form center = form(r4.chart(), {0, 3}) * RationalFunction::constant(4, -1);
  for (const auto& idx : index_sets(4, 2)) CHECK(leibniz_bracket(r4, center, form(r4.chart(), idx)).is_zero());
  CHECK_THROWS(leibniz_bracket(s, Form::basis(c3, Variance::form, {0}), form(c3, {0, 1})));
}

TEST_CASE("automorphism examples") {
  const NambuStructure s = singular_r3();
  const std::vector<RationalFunction> a{x(0), x(1)};
  CHECK(check_automorphism(s, a).pass);
  const std::vector<RationalFunction> b{x(0) * x(0) + x(1) * x(1), x(2)};
  CHECK(check_automorphism(s, b).pass);
  const std::vector<RationalFunction> k{RationalFunction::constant(3, 1), RationalFunction::constant(3, 1)};
  const AutomorphismReport r = check_automorphism(s, k);
  CHECK(r.pass);
  CHECK(r.field.is_zero());
}

TEST_CASE("bracket properties on random inputs") {
  Rng rng(21);
  for (int t = 0; t < 60; ++t) {
    const NambuStructure s = t % 3 == 0 ? singular_r3() : random_scaled(rng, static_cast<std::size_t>(uniform(rng, 3, 4)));
    const std::size_t m = s.dim();
    std::vector<RationalFunction> fs;
    for (int i = 0; i < 3; ++i) fs.push_back(RationalFunction(random_polynomial(rng, m, 3)));
    const RationalFunction g(random_polynomial(rng, m, 2));
    // Derivation in the first slot.
    std::vector<RationalFunction> fg = fs, gs = fs;
    fg[0] = fs[0] * g;
    gs[0] = g;
    CHECK(nambu_bracket(s, fg) == fs[0] * nambu_bracket(s, gs) + g * nambu_bracket(s, fs));
    // Skew-symmetry.
    std::vector<RationalFunction> swapped{fs[1], fs[0], fs[2]};
    CHECK(nambu_bracket(s, swapped) == -nambu_bracket(s, fs));
    // Hamiltonian fields are images of sharp and preserve Lambda.
    const std::vector<RationalFunction> h{fs[0], fs[1]};
    const Multivector xf = hamiltonian_vf(s, h);
    CHECK(xf == sharp(s, 2, wedge_of_differentials(s.chart(), h)));
    CHECK(apply_vector(xf, fs[2]) == nambu_bracket(s, fs));
    CHECK(check_automorphism(s, h).pass);
  }
}

TEST_CASE("random multiples of the standard tensor pass both validity tests") {
  Rng rng(22);
  for (int t = 0; t < 10; ++t) {
    const NambuStructure s = random_scaled(rng, static_cast<std::size_t>(uniform(rng, 3, 4)));
    CHECK(validate(s, FamilyKind::coords).valid());
  }
}

TEST_CASE("combinations") {
  CHECK(combinations(4, 2).size() == 6);
  CHECK(combinations(3, 0).size() == 1);
  CHECK(combinations(2, 3).empty());
}

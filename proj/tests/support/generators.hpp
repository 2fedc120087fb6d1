#pragma once

#include "npc/exterior/calculus.hpp"
#include "npc/modular/volume.hpp"
#include "npc/nambu/structure.hpp"

#include <random>

namespace npc::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Sparse polynomial: up to `terms` monomials of degree <= max_degree, small integer coefficients.
inline Polynomial random_polynomial(Rng& rng, std::size_t nvars, int max_degree, int terms = 4) {
  Polynomial p(nvars);
  const int count = uniform(rng, 1, terms);
  for (int t = 0; t < count; ++t) {
    Exponent e(nvars, 0);
    const int deg = uniform(rng, 0, max_degree);
    for (int k = 0; k < deg; ++k) e[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(nvars) - 1))] += 1;
    int c = uniform(rng, -3, 3);
    if (c == 0) c = 1;
    p.add_term(e, c);
  }
  return p;
}

inline Polynomial random_nonzero_polynomial(Rng& rng, std::size_t nvars, int max_degree, int terms = 4) {
  for (;;) {
    Polynomial p = random_polynomial(rng, nvars, max_degree, terms);
    if (!p.is_zero()) return p;
  }
}

/// Random tensor; each basis slot is filled with probability `density` percent.
inline GradedTensor random_tensor(Rng& rng, const ChartPtr& chart, Variance v, int degree, int max_degree,
                                  int density = 60) {
  GradedTensor t(chart, v, degree);
  for (const auto& idx : index_sets(chart->dim(), degree)) {
    if (uniform(rng, 0, 99) >= density) continue;
    t.add(idx, RationalFunction(random_polynomial(rng, chart->dim(), max_degree, 3)));
  }
  if (t.is_zero()) {
    const auto sets = index_sets(chart->dim(), degree);
    const auto& idx = sets[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(sets.size()) - 1))];
    t.add(idx, RationalFunction(random_nonzero_polynomial(rng, chart->dim(), max_degree, 3)));
  }
  return t;
}

inline Form random_form(Rng& rng, const ChartPtr& chart, int degree, int max_degree = 3) {
  return random_tensor(rng, chart, Variance::form, degree, max_degree);
}

inline Multivector random_multivector(Rng& rng, const ChartPtr& chart, int degree, int max_degree = 3) {
  return random_tensor(rng, chart, Variance::multivector, degree, max_degree);
}

inline VolumeSpec random_weighted_volume(Rng& rng, const ChartPtr& chart, int max_degree = 2) {
  return VolumeSpec::make(chart, Polynomial::constant(chart->dim(), uniform(rng, 1, 3)),
                          random_polynomial(rng, chart->dim(), max_degree, 3));
}

inline Polynomial r_squared(std::size_t nvars) {
  Polynomial r(nvars);
  for (std::size_t i = 0; i < nvars; ++i) r += Polynomial::variable(nvars, i).pow(2);
  return r;
}

/// (x1^2 + x2^2 + x3^2) @1^@2^@3 on R^3.
inline NambuStructure singular_r3() {
  auto chart = make_chart(3);
  return NambuStructure(Multivector::basis(chart, Variance::multivector, {0, 1, 2}, RationalFunction(r_squared(3))), 3);
}

/// @1^@2^@3 on R^m.
inline NambuStructure regular(std::size_t m) {
  auto chart = make_chart(m);
  return NambuStructure(Multivector::basis(chart, Variance::multivector, {0, 1, 2}), 3);
}

/// f @1^@2^@3 on R^m with f random; always Nambu-Poisson.
inline NambuStructure random_scaled(Rng& rng, std::size_t m, int max_degree = 2) {
  auto chart = make_chart(m);
  const Polynomial f = random_nonzero_polynomial(rng, m, max_degree, 3);
  return NambuStructure(Multivector::basis(chart, Variance::multivector, {0, 1, 2}, RationalFunction(f)), 3);
}

inline RationalFunction coord(const ChartPtr& chart, std::size_t i) { return coordinate_function(chart, i); }

}  // namespace npc::testing

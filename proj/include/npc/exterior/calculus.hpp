#pragma once

#include "npc/exterior/graded_tensor.hpp"

#include <span>

namespace npc {

RationalFunction coordinate_function(const ChartPtr& chart, std::size_t i);
/// dx_i as a 1-form.
Form coordinate_differential(const ChartPtr& chart, std::size_t i);
/// Basis vector field @_i.
Multivector coordinate_vector(const ChartPtr& chart, std::size_t i);
Form standard_volume(const ChartPtr& chart);

/// df as a 1-form.
Form differential(const ChartPtr& chart, const RationalFunction& f);
/// df1 ^ ... ^ dfk; the scalar 1 for an empty list.
Form wedge_of_differentials(const ChartPtr& chart, std::span<const RationalFunction> fs);

/// Exterior product; a degree-0 factor may have either variance.
GradedTensor wedge(const GradedTensor& a, const GradedTensor& b);

/// <omega, P> with <dx^I, @_J> = delta_{IJ}.
RationalFunction pair(const Form& omega, const Multivector& p);

/// i(beta)P, characterized by <gamma, i(beta)P> = <beta ^ gamma, P>.
Multivector contract_form(const Form& beta, const Multivector& p);

/// i(Q)omega, characterized by <i(Q)omega, R> = <omega, Q ^ R>.
Form interior(const Multivector& q, const Form& omega);

/// i(Q)nu for a top-degree form nu.
Form contract_vector(const Multivector& q, const Form& nu);

Form ext_d(const Form& omega);

/// X(f) for a vector field X.
RationalFunction apply_vector(const Multivector& x, const RationalFunction& f);

/// Cartan formula d i(X) + i(X) d.
Form lie_form(const Multivector& x, const Form& omega);

/// Lie derivative of a multivector along a vector field.
Multivector lie_mv(const Multivector& x, const Multivector& p);

/// Commutator [X, Y] of vector fields.
Multivector vector_bracket(const Multivector& x, const Multivector& y);

}  // namespace npc

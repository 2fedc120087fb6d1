#include "npc/modular/volume.hpp"

namespace npc {

VolumeSpec VolumeSpec::standard(const ChartPtr& chart) {
  return {chart, Polynomial::constant(chart->dim(), 1), Polynomial(chart->dim())};
}

VolumeSpec VolumeSpec::make(const ChartPtr& chart, Polynomial u, Polynomial w) {
  if (u.nvars() != chart->dim() || w.nvars() != chart->dim()) throw ChartMismatch("volume data over wrong chart");
  if (u.is_zero()) throw std::invalid_argument("volume coefficient must not be the zero polynomial");
  return {chart, std::move(u), std::move(w)};
}

VolumeSpec VolumeSpec::weighted(const Polynomial& f) const { return make(chart, u, w + f); }

VolumeSpec VolumeSpec::scaled(const Polynomial& g) const { return make(chart, u * g, w); }

std::string VolumeSpec::to_string() const {
  std::string s;
  if (!w.is_zero()) s += "exp(-(" + w.to_string(chart->names()) + ")) * ";
  if (!u.is_one()) s += "(" + u.to_string(chart->names()) + ") * ";
  return s + "std";
}

std::string VolumeSpec::to_dsl() const {
  std::string s;
  if (!w.is_zero()) s += "exp(-(" + w.to_dsl(chart->names()) + ")) * ";
  if (!u.is_one()) s += "(" + u.to_dsl(chart->names()) + ") * ";
  return s + "std";
}

std::string WeightedForm::to_string() const {
  if (weight.is_zero()) return body.to_string();
  return "exp(-(" + weight.to_string(body.chart()->names()) + ")) * (" + body.to_string() + ")";
}

WeightedForm flat(const VolumeSpec& v, const Multivector& p) {
  const Form nu = standard_volume(v.chart) * RationalFunction(v.u);
  return {v.w, contract_vector(p, nu)};
}

Multivector flat_inverse(const VolumeSpec& v, const WeightedForm& theta) {
  if (!(theta.weight == v.w)) throw WeightMismatch("form weight differs from the volume weight");
  if (!theta.body.is_form()) throw VarianceMismatch("flat_inverse expects a form");
  const std::size_t m = v.chart->dim();
  const int k = static_cast<int>(m) - theta.body.degree();
  Multivector out(v.chart, Variance::multivector, k);
  const RationalFunction u(v.u);
  for (const auto& [rest, c] : theta.body.components()) {
    IndexSet idx;
    for (int i = 0, r = 0; i < static_cast<int>(m); ++i) {
      if (r < static_cast<int>(rest.size()) && rest[r] == i) ++r;
      else idx.push_back(i);
    }
    RationalFunction value = c / u;
    if (shuffle_sign(idx, rest) < 0) value = -value;
    out.add(idx, value);
  }
  return out;
}

WeightedForm weighted_d(const WeightedForm& theta) {
  Form body = ext_d(theta.body);
  if (!theta.weight.is_zero()) body -= wedge(differential(theta.body.chart(), RationalFunction(theta.weight)), theta.body);
  return {theta.weight, std::move(body)};
}

WeightedForm weighted_lie(const Multivector& x, const WeightedForm& theta) {
  Form body = lie_form(x, theta.body);
  if (!theta.weight.is_zero()) body -= theta.body * apply_vector(x, RationalFunction(theta.weight));
  return {theta.weight, std::move(body)};
}

Multivector delta(const VolumeSpec& v, const Multivector& p) {
  if (p.degree() < 1) throw DegreeError("delta needs a multivector of degree at least 1");
  return flat_inverse(v, weighted_d(flat(v, p)));
}

RationalFunction divergence(const VolumeSpec& v, const Multivector& x) {
  if (x.is_form() || x.degree() != 1) throw DegreeError("divergence needs a vector field");
  RationalFunction div(x.dim());
  for (const auto& [idx, c] : x.components()) div += c.derivative(idx[0]);
  if (!v.u.is_constant()) div += apply_vector(x, RationalFunction(v.u)) / RationalFunction(v.u);
  if (!v.w.is_zero()) div -= apply_vector(x, RationalFunction(v.w));
  return div;
}

}  // namespace npc

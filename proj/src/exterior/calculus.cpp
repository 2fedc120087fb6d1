#include "npc/exterior/calculus.hpp"

#include <algorithm>

namespace npc {

namespace {

void require_vector_field(const Multivector& x) {
  if (x.is_form()) throw VarianceMismatch("expected a vector field, got a form");
  if (x.degree() != 1) throw DegreeError("expected a vector field (degree 1)");
}

void require_same_chart(const GradedTensor& a, const GradedTensor& b) {
  if (!(*a.chart() == *b.chart())) throw ChartMismatch("tensors live on different charts");
}

// Sorted union of disjoint sets and the sign of the sorting permutation; sign
// 0 when the sets overlap.
int merge_sign(const IndexSet& a, const IndexSet& b, IndexSet& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] == out[i - 1]) return 0;
  }
  return shuffle_sign(a, b);
}

// When a is a subset of b: the complement b \ a and shuffle_sign(a, b \ a).
int remove_sign(const IndexSet& a, const IndexSet& b, IndexSet& rest) {
  rest.clear();
  if (!std::includes(b.begin(), b.end(), a.begin(), a.end())) return 0;
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(rest));
  return shuffle_sign(a, rest);
}

// Sign of the permutation sorting `v` (distinct entries); 0 on repeats.
int sort_sign(IndexSet& v) {
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
      if (v[j - 1] == v[j]) return 0;
      std::swap(v[j - 1], v[j]);
      sign = -sign;
    }
  }
  return sign;
}

RationalFunction signed_value(const RationalFunction& c, int sign) { return sign > 0 ? c : -c; }

}  // namespace

RationalFunction coordinate_function(const ChartPtr& chart, std::size_t i) {
  return RationalFunction(Polynomial::variable(chart->dim(), i));
}

Form coordinate_differential(const ChartPtr& chart, std::size_t i) {
  return GradedTensor::basis(chart, Variance::form, {static_cast<int>(i)});
}

Multivector coordinate_vector(const ChartPtr& chart, std::size_t i) {
  return GradedTensor::basis(chart, Variance::multivector, {static_cast<int>(i)});
}

Form standard_volume(const ChartPtr& chart) {
  IndexSet all(chart->dim());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return GradedTensor::basis(chart, Variance::form, all);
}

Form differential(const ChartPtr& chart, const RationalFunction& f) {
  Form out(chart, Variance::form, 1);
  for (std::size_t i = 0; i < chart->dim(); ++i) out.add({static_cast<int>(i)}, f.derivative(i));
  return out;
}

Form wedge_of_differentials(const ChartPtr& chart, std::span<const RationalFunction> fs) {
  Form out = GradedTensor::scalar(chart, RationalFunction::constant(chart->dim(), 1));
  for (const auto& f : fs) out = wedge(out, differential(chart, f));
  return out;
}

GradedTensor wedge(const GradedTensor& a, const GradedTensor& b) {
  require_same_chart(a, b);
  if (a.degree() > 0 && b.degree() > 0 && a.variance() != b.variance()) {
    throw VarianceMismatch("wedge of a form with a multivector");
  }
  const Variance v = a.degree() > 0 ? a.variance() : b.variance();
  const int deg = a.degree() + b.degree();
  if (static_cast<std::size_t>(deg) > a.dim()) return GradedTensor(a.chart(), v, 0);
  GradedTensor out(a.chart(), v, deg);
  IndexSet merged;
  for (const auto& [ia, ca] : a.components()) {
    for (const auto& [ib, cb] : b.components()) {
      const int s = merge_sign(ia, ib, merged);
      if (s == 0) continue;
      out.add(merged, signed_value(ca * cb, s));
    }
  }
  return out;
}

RationalFunction pair(const Form& omega, const Multivector& p) {
  require_same_chart(omega, p);
  if (!omega.is_form() && omega.degree() > 0) throw VarianceMismatch("pairing expects a form first");
  if (p.is_form() && p.degree() > 0) throw VarianceMismatch("pairing expects a multivector second");
  if (omega.degree() != p.degree()) throw DegreeError("pairing of tensors with different degrees");
  RationalFunction sum(omega.dim());
  for (const auto& [i, c] : omega.components()) {
    auto it = p.components().find(i);
    if (it != p.components().end()) sum += c * it->second;
  }
  return sum;
}

Multivector contract_form(const Form& beta, const Multivector& p) {
  require_same_chart(beta, p);
  if (!beta.is_form() && beta.degree() > 0) throw VarianceMismatch("contract_form expects a form");
  if (p.is_form() && p.degree() > 0) throw VarianceMismatch("contract_form expects a multivector");
  if (beta.degree() > p.degree()) throw DegreeError("form degree exceeds multivector degree");
  Multivector out(p.chart(), Variance::multivector, p.degree() - beta.degree());
  IndexSet rest;
  for (const auto& [ib, cb] : beta.components()) {
    for (const auto& [ip, cp] : p.components()) {
      const int s = remove_sign(ib, ip, rest);
      if (s == 0) continue;
      out.add(rest, signed_value(cb * cp, s));
    }
  }
  return out;
}

Form interior(const Multivector& q, const Form& omega) {
  require_same_chart(q, omega);
  if (q.is_form() && q.degree() > 0) throw VarianceMismatch("interior expects a multivector");
  if (!omega.is_form() && omega.degree() > 0) throw VarianceMismatch("interior expects a form");
  if (q.degree() > omega.degree()) return Form(omega.chart(), Variance::form, 0);
  Form out(omega.chart(), Variance::form, omega.degree() - q.degree());
  IndexSet rest;
  for (const auto& [iq, cq] : q.components()) {
    for (const auto& [io, co] : omega.components()) {
      const int s = remove_sign(iq, io, rest);
      if (s == 0) continue;
      out.add(rest, signed_value(cq * co, s));
    }
  }
  return out;
}

Form contract_vector(const Multivector& q, const Form& nu) {
  if (!nu.is_form() || static_cast<std::size_t>(nu.degree()) != nu.dim()) {
    throw DegreeError("contract_vector needs a top-degree form");
  }
  return interior(q, nu);
}

Form ext_d(const Form& omega) {
  if (!omega.is_form() && omega.degree() > 0) throw VarianceMismatch("exterior derivative of a multivector");
  const int deg = omega.degree() + 1;
  if (static_cast<std::size_t>(deg) > omega.dim()) return Form(omega.chart(), Variance::form, 0);
  Form out(omega.chart(), Variance::form, deg);
  IndexSet merged;
  for (const auto& [idx, c] : omega.components()) {
    for (std::size_t j = 0; j < omega.dim(); ++j) {
      const int s = merge_sign({static_cast<int>(j)}, idx, merged);
      if (s == 0) continue;
      RationalFunction dc = c.derivative(j);
      if (dc.is_zero()) continue;
      out.add(merged, signed_value(dc, s));
    }
  }
  return out;
}

RationalFunction apply_vector(const Multivector& x, const RationalFunction& f) {
  require_vector_field(x);
  RationalFunction sum(x.dim());
  for (const auto& [idx, c] : x.components()) {
    RationalFunction df = f.derivative(idx[0]);
    if (!df.is_zero()) sum += c * df;
  }
  return sum;
}

Form lie_form(const Multivector& x, const Form& omega) {
  require_vector_field(x);
  if (!omega.is_form() && omega.degree() > 0) throw VarianceMismatch("lie_form expects a form");
  Form out(omega.chart(), Variance::form, omega.degree());
  if (static_cast<std::size_t>(omega.degree()) < omega.dim()) out += interior(x, ext_d(omega));
  if (omega.degree() > 0) out += ext_d(interior(x, omega));
  return out;
}

Multivector lie_mv(const Multivector& x, const Multivector& p) {
  require_vector_field(x);
  require_same_chart(x, p);
  if (p.is_form() && p.degree() > 0) throw VarianceMismatch("lie_mv expects a multivector");
  Multivector out(p.chart(), Variance::multivector, p.degree());
  const std::size_t m = p.dim();
  // d_i X^j, computed once.
  std::vector<std::vector<RationalFunction>> jac(m, std::vector<RationalFunction>(m, RationalFunction(m)));
  for (const auto& [idx, c] : x.components()) {
    for (std::size_t i = 0; i < m; ++i) jac[i][idx[0]] = c.derivative(i);
  }
  IndexSet slot;
  for (const auto& [idx, c] : p.components()) {
    out.add(idx, apply_vector(x, c));
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t j = 0; j < m; ++j) {
        const RationalFunction& dxj = jac[idx[a]][j];
        if (dxj.is_zero()) continue;
        slot = idx;
        slot[a] = static_cast<int>(j);
        const int s = sort_sign(slot);
        if (s == 0) continue;
        out.add(slot, signed_value(c * dxj, -s));
      }
    }
  }
  return out;
}

Multivector vector_bracket(const Multivector& x, const Multivector& y) {
  require_vector_field(x);
  require_vector_field(y);
  Multivector out(x.chart(), Variance::multivector, 1);
  for (std::size_t j = 0; j < x.dim(); ++j) {
    const IndexSet idx{static_cast<int>(j)};
    out.add(idx, apply_vector(x, y.component(idx)) - apply_vector(y, x.component(idx)));
  }
  return out;
}

}  // namespace npc

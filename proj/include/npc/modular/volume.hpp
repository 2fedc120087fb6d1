#pragma once

#include "npc/exterior/calculus.hpp"

namespace npc {

/// nu = exp(-w) * u * dx1 ^ ... ^ dxm. Nonvanishing of u is the caller's claim.
struct VolumeSpec {
  ChartPtr chart;
  Polynomial u;
  Polynomial w;

  static VolumeSpec standard(const ChartPtr& chart);
  static VolumeSpec make(const ChartPtr& chart, Polynomial u, Polynomial w);

  bool is_standard() const { return u.is_one() && w.is_zero(); }
  /// Same volume multiplied by exp(-f).
  VolumeSpec weighted(const Polynomial& f) const;
  /// Same volume multiplied by g.
  VolumeSpec scaled(const Polynomial& g) const;
  std::string to_string() const;
  std::string to_dsl() const;
};

/// exp(-weight) * body.
struct WeightedForm {
  Polynomial weight;
  Form body;

  friend bool operator==(const WeightedForm& a, const WeightedForm& b) {
    return a.weight == b.weight && a.body == b.body;
  }
  std::string to_string() const;
};

class WeightMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

WeightedForm flat(const VolumeSpec& v, const Multivector& p);
Multivector flat_inverse(const VolumeSpec& v, const WeightedForm& theta);
/// exp(w) d(exp(-w) body) = d body - dw ^ body.
WeightedForm weighted_d(const WeightedForm& theta);
/// L_X of a weighted form, keeping the weight.
WeightedForm weighted_lie(const Multivector& x, const WeightedForm& theta);
Multivector delta(const VolumeSpec& v, const Multivector& p);
RationalFunction divergence(const VolumeSpec& v, const Multivector& x);

}  // namespace npc

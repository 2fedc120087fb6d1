#pragma once

#include "npc/algebra/rational_function.hpp"
#include "npc/exterior/chart.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace npc {

enum class Variance { form, multivector };

/// Strictly increasing 0-based coordinate indices.
using IndexSet = std::vector<int>;

class ChartMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class VarianceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/*
 * Homogeneous differential form or multivector field of degree k on a chart.
 * Components are indexed by increasing k-tuples; zero components are dropped.
 */
class GradedTensor {
 public:
  using ComponentMap = std::map<IndexSet, RationalFunction>;

  GradedTensor(ChartPtr chart, Variance variance, int degree);

  static GradedTensor scalar(ChartPtr chart, const RationalFunction& f, Variance variance = Variance::form);
  static GradedTensor basis(ChartPtr chart, Variance variance, IndexSet indices,
                            const RationalFunction& coeff);
  static GradedTensor basis(ChartPtr chart, Variance variance, IndexSet indices);

  const ChartPtr& chart() const { return chart_; }
  std::size_t dim() const { return chart_->dim(); }
  Variance variance() const { return variance_; }
  int degree() const { return degree_; }
  bool is_form() const { return variance_ == Variance::form; }
  bool is_zero() const { return components_.empty(); }
  const ComponentMap& components() const { return components_; }

  RationalFunction component(const IndexSet& indices) const;
  /// Scalar value of a degree-0 tensor.
  RationalFunction scalar_value() const;
  void set(const IndexSet& indices, const RationalFunction& value);
  void add(const IndexSet& indices, const RationalFunction& value);

  /// True when every component is a polynomial.
  bool is_polynomial() const;
  /// Largest total degree among polynomial components, -1 for zero.
  int coefficient_degree() const;

  GradedTensor& operator+=(const GradedTensor& other);
  GradedTensor& operator-=(const GradedTensor& other);
  GradedTensor& operator*=(const RationalFunction& f);
  friend GradedTensor operator+(GradedTensor a, const GradedTensor& b) { return a += b; }
  friend GradedTensor operator-(GradedTensor a, const GradedTensor& b) { return a -= b; }
  friend GradedTensor operator*(GradedTensor a, const RationalFunction& f) { return a *= f; }
  friend GradedTensor operator*(const RationalFunction& f, GradedTensor a) { return a *= f; }
  GradedTensor operator-() const;

  friend bool operator==(const GradedTensor& a, const GradedTensor& b);

  /// e.g. "2*x3*@1^@2 - 2*x2*@1^@3" or "x1*dx1^dx2".
  std::string to_string() const;
  /// Same value in the model-file grammar.
  std::string to_dsl() const;

  void check_same_space(const GradedTensor& other) const;

 private:
  void check_indices(const IndexSet& indices) const;

  ChartPtr chart_;
  Variance variance_;
  int degree_;
  ComponentMap components_;
};

using Form = GradedTensor;
using Multivector = GradedTensor;

/// All increasing k-subsets of {0..m-1} in lexicographic order.
std::vector<IndexSet> index_sets(std::size_t m, int k);

/// (-1)^#{(i,k) in I x K : i > k}.
int shuffle_sign(const IndexSet& a, const IndexSet& b);

}  // namespace npc

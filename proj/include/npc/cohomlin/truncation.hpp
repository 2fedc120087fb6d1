#pragma once

#include "npc/algebra/exact_matrix.hpp"
#include "npc/exterior/graded_tensor.hpp"

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace npc {

struct BasisElement {
  IndexSet indices;
  Exponent monomial;
};

/// (index tuple, monomial) pair identifying one coefficient of a tensor.
using TensorKey = std::pair<IndexSet, Exponent>;

struct TensorKeyLess {
  bool operator()(const TensorKey& a, const TensorKey& b) const;
};

/*
 * Monomial basis of degree-k forms or multivectors whose coefficients have
 * total degree <= bound: index tuples in lexicographic order, and for each
 * tuple the monomials in ascending grlex order.
 */
class TruncatedBasis {
 public:
  TruncatedBasis(ChartPtr chart, Variance variance, int degree, int bound);

  const ChartPtr& chart() const { return chart_; }
  Variance variance() const { return variance_; }
  int degree() const { return degree_; }
  int bound() const { return bound_; }
  std::size_t size() const { return index_sets_.size() * monomials_.size(); }
  BasisElement element(std::size_t i) const;
  std::optional<std::size_t> index_of(const IndexSet& indices, const Exponent& monomial) const;

  GradedTensor tensor(std::size_t i) const;
  GradedTensor combine(const SparseVec& coeffs) const;
  GradedTensor combine(const DenseVec& coeffs) const;
  /// Coordinates of t; throws std::out_of_range if t does not lie in the span.
  SparseVec coordinates(const GradedTensor& t) const;

 private:
  ChartPtr chart_;
  Variance variance_;
  int degree_;
  int bound_;
  std::vector<IndexSet> index_sets_;
  std::vector<Exponent> monomials_;
  std::map<IndexSet, std::size_t> set_position_;
  std::map<Exponent, std::size_t, GrlexLess> monomial_position_;
};

/// Matrix of a linear map between truncated spaces.
class TruncatedOperator {
 public:
  TruncatedOperator(TruncatedBasis domain, TruncatedBasis codomain, ExactMatrix matrix);

  /// Applies `op` to every domain basis element; throws when an image leaves the codomain.
  static TruncatedOperator assemble(const TruncatedBasis& domain, const TruncatedBasis& codomain,
                                    const std::function<GradedTensor(const GradedTensor&)>& op);

  const TruncatedBasis& domain() const { return domain_; }
  const TruncatedBasis& codomain() const { return codomain_; }
  const ExactMatrix& matrix() const { return matrix_; }

  /// (*this) after `first`.
  TruncatedOperator after(const TruncatedOperator& first) const;

 private:
  TruncatedBasis domain_;
  TruncatedBasis codomain_;
  ExactMatrix matrix_;
};

/*
 * Open-ended coordinate system for tensors of one degree and variance: keys
 * are assigned indices on first sight. Used when the image of a map is not
 * known in advance.
 */
class SupportIndex {
 public:
  std::size_t size() const { return keys_.size(); }
  const TensorKey& key(std::size_t i) const { return keys_.at(i); }
  std::size_t index(const TensorKey& key);
  /// Throws std::domain_error on non-polynomial components.
  SparseVec encode(const GradedTensor& t);

 private:
  std::map<TensorKey, std::size_t, TensorKeyLess> positions_;
  std::vector<TensorKey> keys_;
};

/// Matrix with the given sparse columns.
ExactMatrix matrix_from_columns(const std::vector<SparseVec>& columns, std::size_t rows);

/// C(n, k).
std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace npc

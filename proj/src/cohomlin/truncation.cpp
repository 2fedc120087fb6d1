#include "npc/cohomlin/truncation.hpp"

#include <algorithm>

namespace npc {

bool TensorKeyLess::operator()(const TensorKey& a, const TensorKey& b) const {
  if (a.first != b.first) return a.first < b.first;
  return GrlexLess{}(a.second, b.second);
}

TruncatedBasis::TruncatedBasis(ChartPtr chart, Variance variance, int degree, int bound)
    : chart_(std::move(chart)), variance_(variance), degree_(degree), bound_(bound) {
  if (degree_ >= 0 && static_cast<std::size_t>(degree_) <= chart_->dim()) {
    index_sets_ = index_sets(chart_->dim(), degree_);
  }
  monomials_ = monomials_up_to(chart_->dim(), bound_);
  for (std::size_t i = 0; i < index_sets_.size(); ++i) set_position_.emplace(index_sets_[i], i);
  for (std::size_t i = 0; i < monomials_.size(); ++i) monomial_position_.emplace(monomials_[i], i);
}

BasisElement TruncatedBasis::element(std::size_t i) const {
  const std::size_t per = monomials_.size();
  return {index_sets_.at(i / per), monomials_.at(i % per)};
}

std::optional<std::size_t> TruncatedBasis::index_of(const IndexSet& indices, const Exponent& monomial) const {
  auto s = set_position_.find(indices);
  if (s == set_position_.end()) return std::nullopt;
  auto m = monomial_position_.find(monomial);
  if (m == monomial_position_.end()) return std::nullopt;
  return s->second * monomials_.size() + m->second;
}

GradedTensor TruncatedBasis::tensor(std::size_t i) const {
  const BasisElement e = element(i);
  return GradedTensor::basis(chart_, variance_, e.indices, RationalFunction(Polynomial::monomial(e.monomial)));
}

GradedTensor TruncatedBasis::combine(const SparseVec& coeffs) const {
  GradedTensor out(chart_, variance_, degree_);
  std::map<IndexSet, Polynomial> acc;
  for (const auto& [i, c] : coeffs) {
    const BasisElement e = element(i);
    auto [it, inserted] = acc.try_emplace(e.indices, Polynomial(chart_->dim()));
    it->second.add_term(e.monomial, c);
  }
  for (auto& [idx, p] : acc) out.add(idx, RationalFunction(std::move(p)));
  return out;
}

GradedTensor TruncatedBasis::combine(const DenseVec& coeffs) const { return combine(to_sparse(coeffs)); }

SparseVec TruncatedBasis::coordinates(const GradedTensor& t) const {
  if (t.degree() != degree_) throw DegreeError("tensor degree does not match truncated basis");
  SparseVec out;
  for (const auto& [idx, c] : t.components()) {
    auto p = c.as_polynomial();
    if (!p) throw std::domain_error("non-polynomial component in truncated space");
    for (const auto& [e, coeff] : p->terms()) {
      auto pos = index_of(idx, e);
      if (!pos) throw std::out_of_range("tensor leaves the truncated space (degree bound " + std::to_string(bound_) + ")");
      out.emplace_back(*pos, coeff);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

TruncatedOperator::TruncatedOperator(TruncatedBasis domain, TruncatedBasis codomain, ExactMatrix matrix)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != codomain_.size() || matrix_.cols() != domain_.size()) {
    throw std::invalid_argument("operator matrix does not match its bases");
  }
}

TruncatedOperator TruncatedOperator::assemble(const TruncatedBasis& domain, const TruncatedBasis& codomain,
                                              const std::function<GradedTensor(const GradedTensor&)>& op) {
  std::vector<SparseVec> columns;
  columns.reserve(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) columns.push_back(codomain.coordinates(op(domain.tensor(i))));
  return TruncatedOperator(domain, codomain, matrix_from_columns(columns, codomain.size()));
}

TruncatedOperator TruncatedOperator::after(const TruncatedOperator& first) const {
  if (first.codomain_.size() != domain_.size() || first.codomain_.degree() != domain_.degree()) {
    throw std::invalid_argument("operators cannot be composed");
  }
  return TruncatedOperator(first.domain_, codomain_, matrix_ * first.matrix_);
}

std::size_t SupportIndex::index(const TensorKey& key) {
  auto [it, inserted] = positions_.try_emplace(key, keys_.size());
  if (inserted) keys_.push_back(key);
  return it->second;
}

SparseVec SupportIndex::encode(const GradedTensor& t) {
  SparseVec out;
  for (const auto& [idx, c] : t.components()) {
    auto p = c.as_polynomial();
    if (!p) throw std::domain_error("non-polynomial component in a linear system");
    for (const auto& [e, coeff] : p->terms()) out.emplace_back(index({idx, e}), coeff);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

ExactMatrix matrix_from_columns(const std::vector<SparseVec>& columns, std::size_t rows) {
  return ExactMatrix::from_columns(columns, rows);
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace npc

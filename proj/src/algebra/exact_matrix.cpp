#include "npc/algebra/exact_matrix.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace npc {

SparseVec to_sparse(const DenseVec& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) != 0) out.emplace_back(i, v[i]);
  }
  return out;
}

DenseVec to_dense(const SparseVec& v, std::size_t dim) {
  DenseVec out(dim, Rational(0));
  for (const auto& [i, x] : v) out.at(i) = x;
  return out;
}

SparseVec axpy(const SparseVec& a, const Rational& alpha, const SparseVec& b) {
  if (sgn(alpha) == 0) return a;
  SparseVec out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, alpha * ib->second);
      ++ib;
    } else {
      Rational v = ia->second + alpha * ib->second;
      if (sgn(v) != 0) out.emplace_back(ia->first, std::move(v));
      ++ia;
      ++ib;
    }
  }
  return out;
}

Rational dot(const SparseVec& a, const DenseVec& b) {
  Rational s = 0;
  for (const auto& [i, x] : a) s += x * b.at(i);
  return s;
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
  return m;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<DenseVec>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    m.data_[r] = to_sparse(rows[r]);
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<SparseVec>& columns, std::size_t rows) {
  ExactMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [r, v] : columns[c]) {
      if (r >= rows) throw std::out_of_range("column entry outside matrix");
      m.data_[r].emplace_back(c, v);
    }
  }
  return m;
}

Rational ExactMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  const auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
  return (it != row.end() && it->first == c) ? it->second : Rational(0);
}

void ExactMatrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != row.end() && it->first == c) {
    if (sgn(v) == 0) row.erase(it);
    else it->second = v;
  } else if (sgn(v) != 0) {
    row.insert(it, {c, v});
  }
}

void ExactMatrix::add_to(std::size_t r, std::size_t c, const Rational& v) { set(r, c, at(r, c) + v); }

void ExactMatrix::set_row(std::size_t r, SparseVec v) {
  if (r >= rows_) throw std::out_of_range("matrix row out of range");
  if (!v.empty() && v.back().first >= cols_) throw std::out_of_range("row entry outside matrix");
  data_[r] = std::move(v);
}

void ExactMatrix::append_row(SparseVec v) {
  if (!v.empty() && v.back().first >= cols_) throw std::out_of_range("row entry outside matrix");
  data_.push_back(std::move(v));
  ++rows_;
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
  }
  return t;
}

DenseVec ExactMatrix::apply(const DenseVec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in matrix-vector product");
  DenseVec out(rows_, Rational(0));
  for (std::size_t r = 0; r < rows_; ++r) out[r] = dot(data_[r], x);
  return out;
}

SparseVec ExactMatrix::apply(const SparseVec& x) const {
  SparseVec out;
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational s = 0;
    auto ix = x.begin();
    for (const auto& [c, v] : data_[r]) {
      while (ix != x.end() && ix->first < c) ++ix;
      if (ix == x.end()) break;
      if (ix->first == c) s += v * ix->second;
    }
    if (sgn(s) != 0) out.emplace_back(r, std::move(s));
  }
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch in matrix product");
  ExactMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    SparseVec acc;
    for (const auto& [k, v] : a.data_[r]) acc = axpy(acc, v, b.data_[k]);
    out.data_[r] = std::move(acc);
  }
  return out;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

SparseVec EchelonBasis::reduce(SparseVec v) const {
  while (!v.empty()) {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end()) break;
    v = axpy(v, -v.front().second, it->second);
  }
  return v;
}

bool EchelonBasis::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return false;
  const Rational inv = 1 / r.front().second;
  for (auto& [i, x] : r) x *= inv;
  const std::size_t lead = r.front().first;
  pivots_.emplace(lead, std::move(r));
  return true;
}

bool EchelonBasis::contains(const SparseVec& v) const { return reduce(v).empty(); }

namespace {

// Forward elimination followed by back substitution. Rows are fed in order of
// increasing density to limit fill-in.
RrefResult reduce_rows(std::vector<SparseVec> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const SparseVec& a, const SparseVec& b) { return a.size() < b.size(); });
  std::map<std::size_t, SparseVec> pivots;
  for (auto& row : rows) {
    SparseVec v = std::move(row);
    while (!v.empty()) {
      auto it = pivots.find(v.front().first);
      if (it == pivots.end()) break;
      v = axpy(v, -v.front().second, it->second);
    }
    if (v.empty()) continue;
    const Rational inv = 1 / v.front().second;
    for (auto& [i, x] : v) x *= inv;
    const std::size_t lead = v.front().first;
    pivots.emplace(lead, std::move(v));
  }
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    SparseVec& v = it->second;
    SparseVec reduced;
    reduced.push_back(v.front());
    SparseVec rest(v.begin() + 1, v.end());
    // Later pivot rows are already fully reduced, so subtracting them never
    // reintroduces a pivot column.
    SparseVec acc = rest;
    for (const auto& [c, x] : rest) {
      auto p = pivots.find(c);
      if (p != pivots.end()) acc = axpy(acc, -x, p->second);
    }
    reduced.insert(reduced.end(), acc.begin(), acc.end());
    v = std::move(reduced);
  }
  RrefResult out;
  for (auto& [c, v] : pivots) {
    out.pivot_columns.push_back(c);
    out.rows.push_back(std::move(v));
  }
  return out;
}

std::vector<SparseVec> rows_of(const ExactMatrix& m) {
  std::vector<SparseVec> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!m.row(r).empty()) rows.push_back(m.row(r));
  }
  return rows;
}

std::optional<DenseVec> particular_solution(const ExactMatrix& m, const DenseVec& b) {
  std::vector<SparseVec> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    SparseVec row = m.row(r);
    if (sgn(b[r]) != 0) row.emplace_back(m.cols(), b[r]);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  RrefResult red = reduce_rows(std::move(rows));
  DenseVec x(m.cols(), Rational(0));
  for (std::size_t i = 0; i < red.rows.size(); ++i) {
    if (red.pivot_columns[i] == m.cols()) return std::nullopt;
    const SparseVec& row = red.rows[i];
    if (row.back().first == m.cols()) x[red.pivot_columns[i]] = row.back().second;
  }
  return x;
}

}  // namespace

RrefResult rref(const ExactMatrix& m) { return reduce_rows(rows_of(m)); }

std::size_t rank(const ExactMatrix& m) {
  EchelonBasis basis(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
  return basis.rank();
}

std::vector<DenseVec> nullspace(const ExactMatrix& m) {
  const RrefResult red = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : red.pivot_columns) is_pivot[c] = true;
  std::vector<DenseVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    DenseVec x(m.cols(), Rational(0));
    x[f] = 1;
    for (std::size_t i = 0; i < red.rows.size(); ++i) {
      for (const auto& [c, v] : red.rows[i]) {
        if (c == f) {
          x[red.pivot_columns[i]] = -v;
          break;
        }
        if (c > f) break;
      }
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

SolveResult solve_linear(const ExactMatrix& m, const DenseVec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side has wrong dimension");
  SolveResult out;
  if (auto x = particular_solution(m, b)) {
    out.feasible = true;
    out.solution = std::move(*x);
    return out;
  }
  // y^T m = 0 and y.b = 1: a consistent system whenever the original is not.
  ExactMatrix t = m.transpose();
  DenseVec rhs(m.cols(), Rational(0));
  t.append_row(to_sparse(b));
  rhs.push_back(1);
  auto y = particular_solution(t, rhs);
  if (!y) throw std::logic_error("failed to build an infeasibility certificate");
  auto first = std::find_if(y->begin(), y->end(), [](const Rational& v) { return sgn(v) != 0; });
  if (first != y->end() && sgn(*first) < 0) {
    for (auto& v : *y) v = -v;
  }
  out.certificate = std::move(*y);
  return out;
}

}  // namespace npc

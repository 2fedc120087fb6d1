#pragma once

#include "npc/algebra/polynomial.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace npc {

/// Sparse vector: (index, value) pairs, strictly increasing index, no zero values.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;
using DenseVec = std::vector<Rational>;

SparseVec to_sparse(const DenseVec& v);
DenseVec to_dense(const SparseVec& v, std::size_t dim);
/// Returns a + alpha * b.
SparseVec axpy(const SparseVec& a, const Rational& alpha, const SparseVec& b);
Rational dot(const SparseVec& a, const DenseVec& b);

/*
 * Exact rational matrix. Storage is row-sparse; the interface is the usual
 * dense one.
 */
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(std::size_t rows, std::size_t cols);
  static ExactMatrix identity(std::size_t n);
  static ExactMatrix from_dense(const std::vector<DenseVec>& rows);
  static ExactMatrix from_columns(const std::vector<SparseVec>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add_to(std::size_t r, std::size_t c, const Rational& v);
  const SparseVec& row(std::size_t r) const { return data_.at(r); }
  void set_row(std::size_t r, SparseVec v);
  void append_row(SparseVec v);
  std::size_t nonzeros() const;

  ExactMatrix transpose() const;
  DenseVec apply(const DenseVec& x) const;
  SparseVec apply(const SparseVec& x) const;
  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec> data_;
};

/*
 * Incrementally maintained row-echelon basis of a subspace of Q^dim. Used for
 * rank computations, span membership, and greedy complement extension.
 */
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return pivots_.size(); }
  /// Adds v; returns true when v was independent of the current span.
  bool insert(const SparseVec& v);
  bool contains(const SparseVec& v) const;
  /// Remainder of v after eliminating every leading entry that has a pivot.
  SparseVec reduce(SparseVec v) const;

 private:
  std::size_t dim_;
  std::map<std::size_t, SparseVec> pivots_;
};

struct RrefResult {
  /// Nonzero rows of the reduced row echelon form, pivot entries equal to 1.
  std::vector<SparseVec> rows;
  std::vector<std::size_t> pivot_columns;
};

RrefResult rref(const ExactMatrix& m);
std::size_t rank(const ExactMatrix& m);
/// Basis of {x : m x = 0}; one vector per free column.
std::vector<DenseVec> nullspace(const ExactMatrix& m);

struct SolveResult {
  bool feasible = false;
  /// Particular solution (free variables set to 0) when feasible.
  DenseVec solution;
  /// y with y^T m = 0 and y.b != 0 when infeasible; first nonzero entry positive.
  DenseVec certificate;
};

SolveResult solve_linear(const ExactMatrix& m, const DenseVec& b);

}  // namespace npc

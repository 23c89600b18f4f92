#pragma once

/// \file dense_matrix.hpp
/// Row-major dense matrix plus LU with partial pivoting. Dense kernels back
/// factor_exact on small blocks, the exact Schur complement, and the
/// spectral diagnostics; everything stays at desk scale.

#include <vector>

#include "msc/sparse_matrix.hpp"

namespace msc {

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  double* row(int i) { return a_.data() + static_cast<std::size_t>(i) * cols_; }
  const double* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * cols_; }

  const std::vector<double>& data() const { return a_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

DenseMatrix to_dense(const SparseMatrix& a);
/// Store densely-held values sparsely, keeping entries with |v| > prune_tol.
SparseMatrix to_sparse(const DenseMatrix& a, double prune_tol = 0.0);

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
/// a - b.
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
/// Dense product of a sparse left factor with a dense right factor.
DenseMatrix multiply(const SparseMatrix& a, const DenseMatrix& b);

double frobenius_norm(const DenseMatrix& a);

/// LU factors of a square matrix, P*A = L*U with partial (row) pivoting.
/// L sits strictly below the diagonal of `lu` with an implicit unit
/// diagonal; U occupies the upper triangle.
struct DenseLu {
  DenseMatrix lu;
  std::vector<int> row_perm;  // row_perm[k] = original row placed at step k
};

/// Throws SingularMatrixError naming the pivot index when the pivot column
/// is exactly zero.
DenseLu dense_lu(DenseMatrix a);

std::vector<double> lu_solve(const DenseLu& f, std::span<const double> b);
/// Solve with several right-hand sides given as the columns of `b`.
DenseMatrix lu_solve(const DenseLu& f, const DenseMatrix& b);

}  // namespace msc

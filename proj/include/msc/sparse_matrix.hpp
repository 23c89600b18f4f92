#pragma once

/// \file sparse_matrix.hpp
/// Compressed row-major sparse matrix storage and basic kernels.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace msc {

/// Coordinate-format entry used to assemble a SparseMatrix.
struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Thrown when a factorization meets a structurally or numerically zero
/// pivot. `pivot_index` names the offending row/column.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, int pivot_index)
      : std::runtime_error(what), pivot_index(pivot_index) {}
  int pivot_index = -1;
};

/// Sparse matrix in compressed row storage. Column indices within each row
/// are strictly increasing and no explicitly stored zeros survive
/// construction: assembly sums duplicate coordinates and then prunes exact
/// zeros, so nnz() always counts genuine entries.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int nrows, int ncols);

  /// Assemble from coordinate triplets: duplicates are summed, exact zeros
  /// (after summation) are pruned, rows end up with sorted column indices.
  static SparseMatrix from_triplets(int nrows, int ncols,
                                    std::vector<Triplet> entries);
  static SparseMatrix identity(int n);
  /// n x n matrix with the given diagonal values.
  static SparseMatrix diagonal(const std::vector<double>& diag);

  int rows() const { return nrows_; }
  int cols() const { return ncols_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }

  std::span<const int> row_cols(int i) const {
    return {col_indices_.data() + row_offsets_[i],
            col_indices_.data() + row_offsets_[i + 1]};
  }
  std::span<const double> row_values(int i) const {
    return {values_.data() + row_offsets_[i],
            values_.data() + row_offsets_[i + 1]};
  }

  /// Value at (i, j); zero when the entry is not stored. Binary search.
  double at(int i, int j) const;

  /// Scale row i in place by s (used by row equilibration).
  void scale_row(int i, double s);
  /// Divide row i in place by s; true division so s/s gives exactly 1.
  void divide_row(int i, double s);

  SparseMatrix transpose() const;

  bool same_pattern_and_values(const SparseMatrix& other) const;

 private:
  int nrows_ = 0;
  int ncols_ = 0;
  std::vector<int> row_offsets_ = {0};
  std::vector<int> col_indices_;
  std::vector<double> values_;

  friend SparseMatrix multiply(const SparseMatrix&, const SparseMatrix&);
};

/// y = A * x with row-major accumulation order.
std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x);

/// Submatrix A[row_begin:row_end, col_begin:col_end), re-indexed from 0.
SparseMatrix extract_block(const SparseMatrix& a, int row_begin, int row_end,
                           int col_begin, int col_end);

/// Gathered submatrix A[rows, cols] for sorted, duplicate-free index lists.
SparseMatrix extract_submatrix(const SparseMatrix& a,
                               std::span<const int> rows,
                               std::span<const int> cols);

/// Sparse-sparse product (row-merge); used for baseline operator assembly.
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

/// A + alpha * B on matching dimensions.
SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b,
                 double alpha = 1.0);

}  // namespace msc

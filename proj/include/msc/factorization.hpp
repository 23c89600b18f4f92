#pragma once

/// \file factorization.hpp
/// Exact and incomplete (ILUT) triangular factorizations of sparse blocks.

#include "msc/dense_matrix.hpp"
#include "msc/permutation.hpp"
#include "msc/sparse_matrix.hpp"

namespace msc {

enum class FactorKind { Exact, Incomplete };

/// Triangular factors of a square block. `lower` is strictly lower
/// triangular with an implicit unit diagonal; `upper` holds the diagonal.
/// Exact factors carry the partial-pivoting row permutation; ILUT does not
/// pivot, so its permutation is the identity.
struct TriangularFactors {
  SparseMatrix lower;
  SparseMatrix upper;
  Permutation row_perm;
  FactorKind kind = FactorKind::Exact;
  double drop_tol = 0.0;

  int dim() const { return upper.rows(); }
  std::size_t nnz() const { return lower.nnz() + upper.nnz(); }
};

/// LU with partial pivoting, stored sparse. Meant for blocks that are small
/// enough to densify. Throws SingularMatrixError naming the pivot on
/// structural or numerical singularity.
TriangularFactors factor_exact(const SparseMatrix& a);

/// Row-wise ILUT. An entry of the working row is dropped when its magnitude
/// falls below drop_tol times the 2-norm of the corresponding original row;
/// the diagonal is never dropped. No pivoting and no fill cap. A zero pivot
/// raises SingularMatrixError rather than being perturbed.
TriangularFactors factor_ilut(const SparseMatrix& a, double drop_tol);

/// x = U^-1 L^-1 P b.
std::vector<double> solve(const TriangularFactors& f, std::span<const double> b);
/// Multi-RHS variant; right-hand sides are the columns of b.
DenseMatrix solve(const TriangularFactors& f, const DenseMatrix& b);

}  // namespace msc

#pragma once

/// \file preconditioner.hpp
/// Applicable preconditioners: the MSC family in three-factor form, the
/// exact-Schur oracle (same machinery), and the PCD / LSC baselines.

#include <memory>
#include <string>
#include <vector>

#include "msc/factorization.hpp"
#include "msc/partitioned_matrix.hpp"
#include "msc/schur_approx.hpp"

namespace msc {

/// An applicable operator x = B^-1 y. Immutable after construction and safe
/// to apply from several threads at once.
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual std::vector<double> apply(std::span<const double> y) const = 0;
  virtual std::string kind() const = 0;
  virtual int dim() const = 0;
  /// Entries stored by the preconditioner: factor nonzeros plus retained
  /// coupling blocks. Numerator of the fill factor.
  virtual std::size_t stored_nnz() const = 0;
};

/// Mini-Schur-complement preconditioner
///   B = [D 0; F S^] [D^-1 0; 0 S^-1] [D E; 0 S^]
/// applied by a forward sweep over the D blocks and Schur blocks and a
/// backward correction sweep.
class MscPreconditioner : public Preconditioner {
 public:
  std::vector<double> apply(std::span<const double> y) const override;
  std::string kind() const override { return kind_; }
  int dim() const override { return n_; }
  std::size_t stored_nnz() const override;

  const std::vector<TriangularFactors>& d_factors() const { return d_factors_; }
  const std::vector<TriangularFactors>& schur_factors() const { return schur_factors_; }
  const SparseMatrix& retained_e() const { return e_; }
  const SparseMatrix& retained_f() const { return f_; }

 private:
  friend MscPreconditioner build_preconditioner(const PartitionedMatrix&,
                                                const SchurApproximation&,
                                                double, int);
  int n_ = 0;
  int p_ = 0;
  std::string kind_;
  std::vector<std::pair<int, int>> d_ranges_;
  std::vector<TriangularFactors> d_factors_;
  std::vector<std::pair<int, int>> schur_ranges_;    // block-diagonal case
  std::vector<TriangularFactors> schur_factors_;     // per block, or one for
                                                     // the overlapped band
  bool schur_single_ = false;
  SparseMatrix e_, f_;
};

/// Factor the interior D blocks (exactly up to dimension sA, ILUT(tolA)
/// above) and the Schur approximation (per block when block diagonal, one
/// sparse factorization of the overlapped band otherwise), retaining E and
/// F for the sweeps.
MscPreconditioner build_preconditioner(const PartitionedMatrix& c,
                                       const SchurApproximation& schur,
                                       double tolA, int sA);

/// User-supplied pressure-space operators for PCD.
struct PcdInputs {
  SparseMatrix A_p;  // pressure Laplacian
  SparseMatrix D_p;  // pressure convection-diffusion
  SparseMatrix Q_p;  // pressure mass
};

/// Block upper-triangular solve with S^ = -A_p D_p^-1 Q_p, applied as
/// S^-1 = -Q_p^-1 D_p A_p^-1. A_p and Q_p are factored exactly.
class PcdPreconditioner : public Preconditioner {
 public:
  std::vector<double> apply(std::span<const double> y) const override;
  std::string kind() const override { return "pcd"; }
  int dim() const override { return n_; }
  std::size_t stored_nnz() const override;

 private:
  friend PcdPreconditioner build_pcd(const PartitionedMatrix&, const PcdInputs&);
  int n_ = 0;
  int p_ = 0;
  TriangularFactors d_lu_, ap_lu_, qp_lu_;
  SparseMatrix dp_, e_;
};

PcdPreconditioner build_pcd(const PartitionedMatrix& c, const PcdInputs& aux);

/// Least-squares commutator: with the divergence-side block F and a
/// diagonal velocity mass approximation Q = diag(q), forms M = F Q^-1 F^T
/// once and applies S^-1 y = M^-1 (F Q^-1 D Q^-1 F^T) M^-1 y. A numerically
/// singular M (constant-pressure null space) is pinned at its last index.
class LscPreconditioner : public Preconditioner {
 public:
  std::vector<double> apply(std::span<const double> y) const override;
  std::string kind() const override { return "lsc"; }
  int dim() const override { return n_; }
  std::size_t stored_nnz() const override;

  bool pinned() const { return pinned_; }
  const SparseMatrix& m() const { return m_; }

 private:
  friend LscPreconditioner build_lsc(const PartitionedMatrix&,
                                     const std::vector<double>&);
  int n_ = 0;
  int p_ = 0;
  bool pinned_ = false;
  TriangularFactors d_lu_, m_lu_;
  SparseMatrix m_, f_, ft_, d_, e_;
  std::vector<double> q_inv_;
};

LscPreconditioner build_lsc(const PartitionedMatrix& c,
                            const std::vector<double>& q_diag);

/// nnz stored by the preconditioner over nnz of the coefficient matrix.
double fill_factor(const Preconditioner& b, const SparseMatrix& c);

}  // namespace msc

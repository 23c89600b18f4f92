#include "msc/preconditioner.hpp"

#include <algorithm>
#include <cmath>

#include "msc/dense_matrix.hpp"

namespace msc {

namespace {

// Blockwise z = blkDiag(factors)^-1 y over the given ranges.
void block_solve(const std::vector<std::pair<int, int>>& ranges,
                 const std::vector<TriangularFactors>& factors,
                 std::span<const double> y, double* z) {
  for (std::size_t b = 0; b < ranges.size(); ++b) {
    const auto [begin, end] = ranges[b];
    std::vector<double> local(y.begin() + begin, y.begin() + end);
    std::vector<double> x = solve(factors[b], local);
    std::copy(x.begin(), x.end(), z + begin);
  }
}

}  // namespace

MscPreconditioner build_preconditioner(const PartitionedMatrix& c,
                                       const SchurApproximation& schur,
                                       double tolA, int sA) {
  if (schur.s_hat.rows() != c.n_g()) {
    throw std::invalid_argument(
        "build_preconditioner: Schur approximation does not match the split");
  }
  if (c.d_block_ranges.empty()) {
    throw std::invalid_argument("build_preconditioner: no interior D blocks");
  }
  MscPreconditioner b;
  b.n_ = c.n();
  b.p_ = c.p;
  b.kind_ = schur.exact ? "exact-schur" : variant_name(schur.variant);
  b.d_ranges_ = c.d_block_ranges;
  b.e_ = c.E;
  b.f_ = c.F;

  for (std::size_t i = 0; i < b.d_ranges_.size(); ++i) {
    const auto [begin, end] = b.d_ranges_[i];
    SparseMatrix block = extract_block(c.D, begin, end, begin, end);
    try {
      const int dim = end - begin;
      b.d_factors_.push_back(dim <= sA ? factor_exact(block)
                                       : factor_ilut(block, tolA));
    } catch (const SingularMatrixError& err) {
      throw SingularMatrixError("build_preconditioner: (1,1) block " +
                                    std::to_string(i) + ": " + err.what(),
                                err.pivot_index);
    }
  }

  if (schur.overlapped) {
    b.schur_single_ = true;
    try {
      b.schur_factors_.push_back(factor_exact(schur.s_hat));
    } catch (const SingularMatrixError& err) {
      throw SingularMatrixError(
          std::string("build_preconditioner: overlapped Schur band: ") +
              err.what(),
          err.pivot_index);
    }
  } else {
    b.schur_ranges_ = schur.owned_ranges;
    for (std::size_t i = 0; i < schur.owned_ranges.size(); ++i) {
      const auto [begin, end] = schur.owned_ranges[i];
      SparseMatrix block = extract_block(schur.s_hat, begin, end, begin, end);
      try {
        b.schur_factors_.push_back(factor_exact(block));
      } catch (const SingularMatrixError& err) {
        throw SingularMatrixError("build_preconditioner: Schur block " +
                                      std::to_string(i) + ": " + err.what(),
                                  err.pivot_index);
      }
    }
  }
  return b;
}

std::vector<double> MscPreconditioner::apply(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != n_) {
    throw std::invalid_argument("MscPreconditioner::apply: length mismatch");
  }
  const int ng = n_ - p_;
  std::vector<double> x(n_, 0.0);

  // Forward sweep: z1 = D^-1 y1 blockwise, then z2 = S^-1 (y2 - F z1).
  std::vector<double> z1(p_, 0.0);
  block_solve(d_ranges_, d_factors_, y.first(p_), z1.data());

  std::vector<double> t = matvec(f_, z1);
  for (int i = 0; i < ng; ++i) t[i] = y[p_ + i] - t[i];

  std::vector<double> z2(ng, 0.0);
  if (schur_single_) {
    std::vector<double> s = solve(schur_factors_[0], t);
    std::copy(s.begin(), s.end(), z2.begin());
  } else {
    block_solve(schur_ranges_, schur_factors_, t, z2.data());
  }

  // Backward sweep: x2 = z2, x1 = z1 - D^-1 (E x2) blockwise.
  std::vector<double> w = matvec(e_, z2);
  std::vector<double> corr(p_, 0.0);
  block_solve(d_ranges_, d_factors_, w, corr.data());
  for (int i = 0; i < p_; ++i) x[i] = z1[i] - corr[i];
  std::copy(z2.begin(), z2.end(), x.begin() + p_);
  return x;
}

std::size_t MscPreconditioner::stored_nnz() const {
  std::size_t s = e_.nnz() + f_.nnz();
  for (const auto& f : d_factors_) s += f.nnz();
  for (const auto& f : schur_factors_) s += f.nnz();
  return s;
}

PcdPreconditioner build_pcd(const PartitionedMatrix& c, const PcdInputs& aux) {
  const int ng = c.n_g();
  if (aux.A_p.rows() != ng || aux.A_p.cols() != ng || aux.D_p.rows() != ng ||
      aux.D_p.cols() != ng || aux.Q_p.rows() != ng || aux.Q_p.cols() != ng) {
    throw std::invalid_argument(
        "build_pcd: auxiliary operators must match the pressure dimension");
  }
  PcdPreconditioner b;
  b.n_ = c.n();
  b.p_ = c.p;
  b.dp_ = aux.D_p;
  b.e_ = c.E;
  try {
    b.ap_lu_ = factor_exact(aux.A_p);
  } catch (const SingularMatrixError& err) {
    throw SingularMatrixError(std::string("build_pcd: singular A_p: ") +
                                  err.what(),
                              err.pivot_index);
  }
  try {
    b.qp_lu_ = factor_exact(aux.Q_p);
  } catch (const SingularMatrixError& err) {
    throw SingularMatrixError(std::string("build_pcd: singular Q_p: ") +
                                  err.what(),
                              err.pivot_index);
  }
  try {
    b.d_lu_ = factor_exact(c.D);
  } catch (const SingularMatrixError& err) {
    throw SingularMatrixError(std::string("build_pcd: singular D: ") + err.what(),
                              err.pivot_index);
  }
  return b;
}

std::vector<double> PcdPreconditioner::apply(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != n_) {
    throw std::invalid_argument("PcdPreconditioner::apply: length mismatch");
  }
  // x2 = S^-1 y2 = -Q_p^-1 D_p A_p^-1 y2.
  std::vector<double> y2(y.begin() + p_, y.end());
  std::vector<double> a = solve(ap_lu_, y2);
  std::vector<double> d = matvec(dp_, a);
  std::vector<double> x2 = solve(qp_lu_, d);
  for (double& v : x2) v = -v;
  // x1 = D^-1 (y1 - E x2).
  std::vector<double> w = matvec(e_, x2);
  std::vector<double> y1(p_);
  for (int i = 0; i < p_; ++i) y1[i] = y[i] - w[i];
  std::vector<double> x1 = solve(d_lu_, y1);

  std::vector<double> x(n_);
  std::copy(x1.begin(), x1.end(), x.begin());
  std::copy(x2.begin(), x2.end(), x.begin() + p_);
  return x;
}

std::size_t PcdPreconditioner::stored_nnz() const {
  return d_lu_.nnz() + ap_lu_.nnz() + qp_lu_.nnz() + dp_.nnz() + e_.nnz();
}

LscPreconditioner build_lsc(const PartitionedMatrix& c,
                            const std::vector<double>& q_diag) {
  if (static_cast<int>(q_diag.size()) != c.p) {
    throw std::invalid_argument("build_lsc: q_diag must have length p");
  }
  for (double v : q_diag) {
    if (!(v > 0.0)) {
      throw std::invalid_argument("build_lsc: q_diag entries must be positive");
    }
  }
  LscPreconditioner b;
  b.n_ = c.n();
  b.p_ = c.p;
  b.d_ = c.D;
  b.e_ = c.E;
  b.f_ = c.F;
  b.ft_ = c.F.transpose();
  b.q_inv_.resize(c.p);
  for (int i = 0; i < c.p; ++i) b.q_inv_[i] = 1.0 / q_diag[i];

  // M = F Q^-1 F^T, assembled once.
  SparseMatrix qinv_ft = b.ft_;
  for (int i = 0; i < qinv_ft.rows(); ++i) qinv_ft.scale_row(i, b.q_inv_[i]);
  b.m_ = multiply(c.F, qinv_ft);

  try {
    b.m_lu_ = factor_exact(b.m_);
  } catch (const SingularMatrixError&) {
    // Constant-pressure null space: pin the last index and refactor.
    const int ng = c.n_g();
    std::vector<Triplet> t;
    for (int i = 0; i < ng; ++i) {
      auto cols = b.m_.row_cols(i);
      auto vals = b.m_.row_values(i);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (i != ng - 1 && cols[k] != ng - 1) t.push_back({i, cols[k], vals[k]});
      }
    }
    t.push_back({ng - 1, ng - 1, 1.0});
    b.m_ = SparseMatrix::from_triplets(ng, ng, std::move(t));
    b.m_lu_ = factor_exact(b.m_);
    b.pinned_ = true;
  }

  try {
    b.d_lu_ = factor_exact(c.D);
  } catch (const SingularMatrixError& err) {
    throw SingularMatrixError(std::string("build_lsc: singular D: ") + err.what(),
                              err.pivot_index);
  }
  return b;
}

std::vector<double> LscPreconditioner::apply(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != n_) {
    throw std::invalid_argument("LscPreconditioner::apply: length mismatch");
  }
  // x2 = M^-1 (F Q^-1 D Q^-1 F^T) M^-1 y2.
  std::vector<double> y2(y.begin() + p_, y.end());
  std::vector<double> a = solve(m_lu_, y2);
  std::vector<double> t1 = matvec(ft_, a);
  for (int i = 0; i < p_; ++i) t1[i] *= q_inv_[i];
  std::vector<double> t2 = matvec(d_, t1);
  for (int i = 0; i < p_; ++i) t2[i] *= q_inv_[i];
  std::vector<double> t3 = matvec(f_, t2);
  std::vector<double> x2 = solve(m_lu_, t3);
  // x1 = D^-1 (y1 - E x2).
  std::vector<double> w = matvec(e_, x2);
  std::vector<double> y1(p_);
  for (int i = 0; i < p_; ++i) y1[i] = y[i] - w[i];
  std::vector<double> x1 = solve(d_lu_, y1);

  std::vector<double> x(n_);
  std::copy(x1.begin(), x1.end(), x.begin());
  std::copy(x2.begin(), x2.end(), x.begin() + p_);
  return x;
}

std::size_t LscPreconditioner::stored_nnz() const {
  return d_lu_.nnz() + m_lu_.nnz() + m_.nnz() + d_.nnz() + e_.nnz() +
         f_.nnz() + ft_.nnz() + q_inv_.size();
}

double fill_factor(const Preconditioner& b, const SparseMatrix& c) {
  return static_cast<double>(b.stored_nnz()) / static_cast<double>(c.nnz());
}

}  // namespace msc

#pragma once

/// \file spectrum.hpp
/// Dense eigenvalue diagnostics for preconditioned operators.

#include <complex>
#include <vector>

#include "msc/dense_matrix.hpp"
#include "msc/preconditioner.hpp"

namespace msc {

/// Eigenvalues of a dense-representable operator via a standard dense
/// nonsymmetric eigensolver (Hessenberg reduction + shifted QR). Throws on
/// non-convergence.
std::vector<std::complex<double>> spectrum(const DenseMatrix& m);

/// Count of eigenvalues with |lambda - 1| <= tol.
int count_unit_eigenvalues(const std::vector<std::complex<double>>& spec,
                           double tol);

/// Columnwise materialization of B^-1 C.
DenseMatrix dense_left_preconditioned(const SparseMatrix& c,
                                      const Preconditioner& b);
/// Columnwise materialization of C B^-1.
DenseMatrix dense_right_preconditioned(const SparseMatrix& c,
                                       const Preconditioner& b);

/// Greedy nearest-pair matching between two eigenvalue multisets; returns
/// the largest matched distance (infinity on size mismatch).
double max_multiset_distance(std::vector<std::complex<double>> a,
                             std::vector<std::complex<double>> b);

}  // namespace msc

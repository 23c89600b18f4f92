#include "msc/spectrum.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace msc {

std::vector<std::complex<double>> spectrum(const DenseMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("spectrum: matrix not square");
  }
  const int n = m.rows();
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = m(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectrum: QR iteration did not converge");
  }
  std::vector<std::complex<double>> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()[i];
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

int count_unit_eigenvalues(const std::vector<std::complex<double>>& spec,
                           double tol) {
  int count = 0;
  for (const auto& ev : spec) {
    if (std::abs(ev - std::complex<double>(1.0, 0.0)) <= tol) ++count;
  }
  return count;
}

DenseMatrix dense_left_preconditioned(const SparseMatrix& c,
                                      const Preconditioner& b) {
  const int n = c.rows();
  DenseMatrix m(n, n);
  std::vector<double> col(n, 0.0);
  for (int j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    std::vector<double> bc = b.apply(matvec(c, col));
    for (int i = 0; i < n; ++i) m(i, j) = bc[i];
  }
  return m;
}

DenseMatrix dense_right_preconditioned(const SparseMatrix& c,
                                       const Preconditioner& b) {
  const int n = c.rows();
  DenseMatrix m(n, n);
  std::vector<double> col(n, 0.0);
  for (int j = 0; j < n; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    std::vector<double> cb = matvec(c, b.apply(col));
    for (int i = 0; i < n; ++i) m(i, j) = cb[i];
  }
  return m;
}

double max_multiset_distance(std::vector<std::complex<double>> a,
                             std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  std::vector<char> used(b.size(), 0);
  for (const auto& ev : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(ev - b[j]);
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    used[pick] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace msc

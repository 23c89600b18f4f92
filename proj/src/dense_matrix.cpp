#include "msc/dense_matrix.hpp"

#include <cmath>
#include <numeric>

namespace msc {

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix to_dense(const SparseMatrix& a) {
  DenseMatrix m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    auto c = a.row_cols(i);
    auto v = a.row_values(i);
    for (std::size_t k = 0; k < c.size(); ++k) m(i, c[k]) = v[k];
  }
  return m;
}

SparseMatrix to_sparse(const DenseMatrix& a, double prune_tol) {
  std::vector<Triplet> t;
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j)) > prune_tol) t.push_back({i, j, a(i, j)});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("dense multiply: inner dimensions disagree");
  }
  DenseMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* brow = b.row(k);
      double* crow = c.row(i);
      for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("dense subtract: dimensions disagree");
  }
  DenseMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

DenseMatrix multiply(const SparseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("sparse-dense multiply: dimensions disagree");
  }
  DenseMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_values(i);
    double* crow = c.row(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const double aik = vals[k];
      const double* brow = b.row(cols[k]);
      for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

double frobenius_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

DenseLu dense_lu(DenseMatrix a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("dense_lu: matrix not square");
  }
  const int n = a.rows();
  DenseLu f;
  f.row_perm.resize(n);
  std::iota(f.row_perm.begin(), f.row_perm.end(), 0);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    }
    if (best == 0.0) {
      throw SingularMatrixError("dense_lu: zero pivot at index " +
                                    std::to_string(k),
                                k);
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(f.row_perm[k], f.row_perm[piv]);
    }
    const double pivot = a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double lik = a(i, k) / pivot;
      a(i, k) = lik;
      if (lik == 0.0) continue;
      const double* krow = a.row(k);
      double* irow = a.row(i);
      for (int j = k + 1; j < n; ++j) irow[j] -= lik * krow[j];
    }
  }
  f.lu = std::move(a);
  return f;
}

std::vector<double> lu_solve(const DenseLu& f, std::span<const double> b) {
  const int n = f.lu.rows();
  if (static_cast<int>(b.size()) != n) {
    throw std::invalid_argument("lu_solve: rhs length mismatch");
  }
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.row_perm[i]];
  for (int i = 1; i < n; ++i) {
    double s = x[i];
    const double* row = f.lu.row(i);
    for (int j = 0; j < i; ++j) s -= row[j] * x[j];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    const double* row = f.lu.row(i);
    for (int j = i + 1; j < n; ++j) s -= row[j] * x[j];
    x[i] = s / row[i];
  }
  return x;
}

DenseMatrix lu_solve(const DenseLu& f, const DenseMatrix& b) {
  const int n = f.lu.rows();
  if (b.rows() != n) {
    throw std::invalid_argument("lu_solve: rhs rows mismatch");
  }
  DenseMatrix x(n, b.cols());
  for (int i = 0; i < n; ++i) {
    const double* src = b.row(f.row_perm[i]);
    double* dst = x.row(i);
    for (int j = 0; j < b.cols(); ++j) dst[j] = src[j];
  }
  for (int i = 1; i < n; ++i) {
    const double* lrow = f.lu.row(i);
    double* xi = x.row(i);
    for (int j = 0; j < i; ++j) {
      const double lij = lrow[j];
      if (lij == 0.0) continue;
      const double* xj = x.row(j);
      for (int c = 0; c < b.cols(); ++c) xi[c] -= lij * xj[c];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    const double* urow = f.lu.row(i);
    double* xi = x.row(i);
    for (int j = i + 1; j < n; ++j) {
      const double uij = urow[j];
      if (uij == 0.0) continue;
      const double* xj = x.row(j);
      for (int c = 0; c < b.cols(); ++c) xi[c] -= uij * xj[c];
    }
    const double d = urow[i];
    for (int c = 0; c < b.cols(); ++c) xi[c] /= d;
  }
  return x;
}

}  // namespace msc

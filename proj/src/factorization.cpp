#include "msc/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "msc/dense_matrix.hpp"

namespace msc {

TriangularFactors factor_exact(const SparseMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("factor_exact: matrix not square");
  }
  DenseLu f = dense_lu(to_dense(a));
  const int n = a.rows();
  std::vector<Triplet> lt, ut;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (f.lu(i, j) != 0.0) lt.push_back({i, j, f.lu(i, j)});
    }
    for (int j = i; j < n; ++j) {
      if (f.lu(i, j) != 0.0) ut.push_back({i, j, f.lu(i, j)});
    }
  }
  TriangularFactors r;
  r.lower = SparseMatrix::from_triplets(n, n, std::move(lt));
  r.upper = SparseMatrix::from_triplets(n, n, std::move(ut));
  r.row_perm = Permutation::from_forward(std::move(f.row_perm));
  r.kind = FactorKind::Exact;
  return r;
}

TriangularFactors factor_ilut(const SparseMatrix& a, double drop_tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("factor_ilut: matrix not square");
  }
  if (drop_tol < 0.0) {
    throw std::invalid_argument("factor_ilut: negative drop tolerance");
  }
  const int n = a.rows();

  // Row-compressed U kept incrementally so that eliminated rows can be
  // replayed against the working row.
  std::vector<std::vector<int>> u_cols(n);
  std::vector<std::vector<double>> u_vals(n);
  std::vector<double> u_diag(n, 0.0);

  std::vector<Triplet> lt;
  std::vector<Triplet> ut;

  std::vector<double> work(n, 0.0);
  std::vector<char> present(n, 0);

  for (int i = 0; i < n; ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_values(i);
    double row_norm = 0.0;
    for (double v : vals) row_norm += v * v;
    row_norm = std::sqrt(row_norm);
    const double tau = drop_tol * row_norm;

    // Scatter the original row; active tracks pending pivots k < i.
    std::set<int> active;
    std::vector<int> touched;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      work[cols[k]] = vals[k];
      present[cols[k]] = 1;
      touched.push_back(cols[k]);
      if (cols[k] < i) active.insert(cols[k]);
    }

    while (!active.empty()) {
      const int k = *active.begin();
      active.erase(active.begin());
      const double mult = work[k] / u_diag[k];
      if (std::abs(mult) < tau || mult == 0.0) {
        work[k] = 0.0;
        continue;
      }
      work[k] = mult;
      const auto& ukc = u_cols[k];
      const auto& ukv = u_vals[k];
      for (std::size_t t = 0; t < ukc.size(); ++t) {
        const int j = ukc[t];
        if (!present[j]) {
          present[j] = 1;
          work[j] = 0.0;
          touched.push_back(j);
          if (j < i) active.insert(j);
        }
        work[j] -= mult * ukv[t];
      }
    }

    std::sort(touched.begin(), touched.end());
    double diag = 0.0;
    for (int j : touched) {
      const double v = work[j];
      if (j < i) {
        if (v != 0.0) lt.push_back({i, j, v});
      } else if (j == i) {
        diag = v;  // kept regardless of magnitude
      } else if (std::abs(v) >= tau && v != 0.0) {
        ut.push_back({i, j, v});
        u_cols[i].push_back(j);
        u_vals[i].push_back(v);
      }
      work[j] = 0.0;
      present[j] = 0;
    }
    if (diag == 0.0) {
      throw SingularMatrixError(
          "factor_ilut: zero pivot at index " + std::to_string(i), i);
    }
    ut.push_back({i, i, diag});
    u_diag[i] = diag;
  }

  TriangularFactors r;
  r.lower = SparseMatrix::from_triplets(n, n, std::move(lt));
  r.upper = SparseMatrix::from_triplets(n, n, std::move(ut));
  r.row_perm = Permutation::identity(n);
  r.kind = FactorKind::Incomplete;
  r.drop_tol = drop_tol;
  return r;
}

std::vector<double> solve(const TriangularFactors& f, std::span<const double> b) {
  const int n = f.dim();
  if (static_cast<int>(b.size()) != n) {
    throw std::invalid_argument("solve: rhs length mismatch");
  }
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[f.row_perm.forward[i]];
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    auto c = f.lower.row_cols(i);
    auto v = f.lower.row_values(i);
    for (std::size_t k = 0; k < c.size(); ++k) s -= v[k] * x[c[k]];
    x[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    auto c = f.upper.row_cols(i);
    auto v = f.upper.row_values(i);
    double diag = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == i) {
        diag = v[k];
      } else {
        s -= v[k] * x[c[k]];
      }
    }
    x[i] = s / diag;
  }
  return x;
}

DenseMatrix solve(const TriangularFactors& f, const DenseMatrix& b) {
  const int n = f.dim();
  if (b.rows() != n) {
    throw std::invalid_argument("solve: rhs rows mismatch");
  }
  const int m = b.cols();
  DenseMatrix x(n, m);
  for (int i = 0; i < n; ++i) {
    const double* src = b.row(f.row_perm.forward[i]);
    double* dst = x.row(i);
    for (int j = 0; j < m; ++j) dst[j] = src[j];
  }
  for (int i = 0; i < n; ++i) {
    auto c = f.lower.row_cols(i);
    auto v = f.lower.row_values(i);
    double* xi = x.row(i);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double* xk = x.row(c[k]);
      const double lik = v[k];
      for (int j = 0; j < m; ++j) xi[j] -= lik * xk[j];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    auto c = f.upper.row_cols(i);
    auto v = f.upper.row_values(i);
    double* xi = x.row(i);
    double diag = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == i) {
        diag = v[k];
        continue;
      }
      const double* xk = x.row(c[k]);
      const double uik = v[k];
      for (int j = 0; j < m; ++j) xi[j] -= uik * xk[j];
    }
    for (int j = 0; j < m; ++j) xi[j] /= diag;
  }
  return x;
}

}  // namespace msc

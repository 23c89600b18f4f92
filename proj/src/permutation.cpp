#include "msc/permutation.hpp"

#include <numeric>

namespace msc {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.forward.resize(n);
  std::iota(p.forward.begin(), p.forward.end(), 0);
  p.inverse = p.forward;
  return p;
}

Permutation Permutation::from_forward(std::vector<int> fwd) {
  const int n = static_cast<int>(fwd.size());
  Permutation p;
  p.inverse.assign(n, -1);
  for (int k = 0; k < n; ++k) {
    int v = fwd[k];
    if (v < 0 || v >= n || p.inverse[v] != -1) {
      throw std::invalid_argument("Permutation: forward map is not a bijection");
    }
    p.inverse[v] = k;
  }
  p.forward = std::move(fwd);
  return p;
}

SparseMatrix permute(const SparseMatrix& a, const Permutation& p) {
  if (a.rows() != a.cols() || p.size() != a.rows()) {
    throw std::invalid_argument("permute: permutation size must match a square matrix");
  }
  std::vector<Triplet> t;
  t.reserve(a.nnz());
  for (int i = 0; i < a.rows(); ++i) {
    int old_row = p.forward[i];
    auto c = a.row_cols(old_row);
    auto v = a.row_values(old_row);
    for (std::size_t k = 0; k < c.size(); ++k) {
      t.push_back({i, p.inverse[c[k]], v[k]});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

SparseMatrix permute_rows(const SparseMatrix& a, const Permutation& p) {
  if (p.size() != a.rows()) {
    throw std::invalid_argument("permute_rows: size mismatch");
  }
  std::vector<Triplet> t;
  t.reserve(a.nnz());
  for (int i = 0; i < a.rows(); ++i) {
    int old_row = p.forward[i];
    auto c = a.row_cols(old_row);
    auto v = a.row_values(old_row);
    for (std::size_t k = 0; k < c.size(); ++k) t.push_back({i, c[k], v[k]});
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

std::vector<double> permute_vector(std::span<const double> x,
                                   const Permutation& p) {
  std::vector<double> y(x.size());
  for (int i = 0; i < p.size(); ++i) y[i] = x[p.forward[i]];
  return y;
}

std::vector<double> unpermute_vector(std::span<const double> x,
                                     const Permutation& p) {
  std::vector<double> y(x.size());
  for (int i = 0; i < p.size(); ++i) y[p.forward[i]] = x[i];
  return y;
}

}  // namespace msc

#include "msc/sparse_matrix.hpp"

#include <algorithm>
#include <cstdlib>

namespace msc {

SparseMatrix::SparseMatrix(int nrows, int ncols)
    : nrows_(nrows), ncols_(ncols), row_offsets_(nrows + 1, 0) {
  if (nrows < 0 || ncols < 0) {
    throw std::invalid_argument("SparseMatrix: negative dimension");
  }
}

SparseMatrix SparseMatrix::from_triplets(int nrows, int ncols,
                                         std::vector<Triplet> entries) {
  SparseMatrix a(nrows, ncols);
  for (const Triplet& t : entries) {
    if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols) {
      throw std::invalid_argument("from_triplets: entry (" +
                                  std::to_string(t.row) + ", " +
                                  std::to_string(t.col) + ") out of range");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& x, const Triplet& y) {
              return x.row != y.row ? x.row < y.row : x.col < y.col;
            });

  a.col_indices_.reserve(entries.size());
  a.values_.reserve(entries.size());
  std::size_t i = 0;
  for (int row = 0; row < nrows; ++row) {
    while (i < entries.size() && entries[i].row == row) {
      int col = entries[i].col;
      double sum = 0.0;
      while (i < entries.size() && entries[i].row == row &&
             entries[i].col == col) {
        sum += entries[i].value;
        ++i;
      }
      if (sum != 0.0) {
        a.col_indices_.push_back(col);
        a.values_.push_back(sum);
      }
    }
    a.row_offsets_[row + 1] = static_cast<int>(a.col_indices_.size());
  }
  return a;
}

SparseMatrix SparseMatrix::identity(int n) {
  std::vector<Triplet> t(n);
  for (int i = 0; i < n; ++i) t[i] = {i, i, 1.0};
  return from_triplets(n, n, std::move(t));
}

SparseMatrix SparseMatrix::diagonal(const std::vector<double>& diag) {
  const int n = static_cast<int>(diag.size());
  std::vector<Triplet> t;
  t.reserve(diag.size());
  for (int i = 0; i < n; ++i) {
    if (diag[i] != 0.0) t.push_back({i, i, diag[i]});
  }
  return from_triplets(n, n, std::move(t));
}

double SparseMatrix::at(int i, int j) const {
  if (i < 0 || i >= nrows_ || j < 0 || j >= ncols_) {
    throw std::invalid_argument("SparseMatrix::at: index out of range");
  }
  auto cols = row_cols(i);
  auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return 0.0;
  return values_[row_offsets_[i] + (it - cols.begin())];
}

void SparseMatrix::scale_row(int i, double s) {
  for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) values_[k] *= s;
}

void SparseMatrix::divide_row(int i, double s) {
  for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) values_[k] /= s;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(ncols_, nrows_);
  t.col_indices_.resize(nnz());
  t.values_.resize(nnz());
  std::vector<int> count(ncols_, 0);
  for (int c : col_indices_) ++count[c];
  for (int j = 0; j < ncols_; ++j) t.row_offsets_[j + 1] = t.row_offsets_[j] + count[j];
  std::vector<int> next(t.row_offsets_.begin(), t.row_offsets_.end() - 1);
  for (int i = 0; i < nrows_; ++i) {
    for (int k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
      int pos = next[col_indices_[k]]++;
      t.col_indices_[pos] = i;
      t.values_[pos] = values_[k];
    }
  }
  return t;
}

bool SparseMatrix::same_pattern_and_values(const SparseMatrix& other) const {
  return nrows_ == other.nrows_ && ncols_ == other.ncols_ &&
         row_offsets_ == other.row_offsets_ &&
         col_indices_ == other.col_indices_ && values_ == other.values_;
}

std::vector<double> matvec(const SparseMatrix& a, std::span<const double> x) {
  if (static_cast<int>(x.size()) != a.cols()) {
    throw std::invalid_argument("matvec: x has length " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(a.cols()));
  }
  std::vector<double> y(a.rows(), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    auto cols = a.row_cols(i);
    auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) acc += vals[k] * x[cols[k]];
    y[i] = acc;
  }
  return y;
}

SparseMatrix extract_block(const SparseMatrix& a, int row_begin, int row_end,
                           int col_begin, int col_end) {
  if (row_begin < 0 || row_end < row_begin || row_end > a.rows() ||
      col_begin < 0 || col_end < col_begin || col_end > a.cols()) {
    throw std::invalid_argument("extract_block: range out of bounds");
  }
  std::vector<Triplet> t;
  for (int i = row_begin; i < row_end; ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_values(i);
    auto lo = std::lower_bound(cols.begin(), cols.end(), col_begin);
    for (auto it = lo; it != cols.end() && *it < col_end; ++it) {
      t.push_back({i - row_begin, *it - col_begin, vals[it - cols.begin()]});
    }
  }
  return SparseMatrix::from_triplets(row_end - row_begin, col_end - col_begin,
                                     std::move(t));
}

SparseMatrix extract_submatrix(const SparseMatrix& a,
                               std::span<const int> rows,
                               std::span<const int> cols) {
  std::vector<int> col_map(a.cols(), -1);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= a.cols()) {
      throw std::invalid_argument("extract_submatrix: column out of bounds");
    }
    col_map[cols[j]] = static_cast<int>(j);
  }
  std::vector<Triplet> t;
  for (std::size_t li = 0; li < rows.size(); ++li) {
    int i = rows[li];
    if (i < 0 || i >= a.rows()) {
      throw std::invalid_argument("extract_submatrix: row out of bounds");
    }
    auto rc = a.row_cols(i);
    auto rv = a.row_values(i);
    for (std::size_t k = 0; k < rc.size(); ++k) {
      int lj = col_map[rc[k]];
      if (lj >= 0) t.push_back({static_cast<int>(li), lj, rv[k]});
    }
  }
  return SparseMatrix::from_triplets(static_cast<int>(rows.size()),
                                     static_cast<int>(cols.size()),
                                     std::move(t));
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("multiply: inner dimensions disagree");
  }
  SparseMatrix c(a.rows(), b.cols());
  std::vector<double> acc(b.cols(), 0.0);
  std::vector<int> marked;
  for (int i = 0; i < a.rows(); ++i) {
    marked.clear();
    auto ac = a.row_cols(i);
    auto av = a.row_values(i);
    for (std::size_t k = 0; k < ac.size(); ++k) {
      const double aik = av[k];
      auto bc = b.row_cols(ac[k]);
      auto bv = b.row_values(ac[k]);
      for (std::size_t l = 0; l < bc.size(); ++l) {
        if (acc[bc[l]] == 0.0) marked.push_back(bc[l]);
        acc[bc[l]] += aik * bv[l];
      }
    }
    std::sort(marked.begin(), marked.end());
    for (int j : marked) {
      if (acc[j] != 0.0) {
        c.col_indices_.push_back(j);
        c.values_.push_back(acc[j]);
      }
      acc[j] = 0.0;
    }
    c.row_offsets_[i + 1] = static_cast<int>(c.col_indices_.size());
  }
  return c;
}

SparseMatrix add(const SparseMatrix& a, const SparseMatrix& b, double alpha) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("add: dimensions disagree");
  }
  std::vector<Triplet> t;
  t.reserve(a.nnz() + b.nnz());
  for (int i = 0; i < a.rows(); ++i) {
    auto c = a.row_cols(i);
    auto v = a.row_values(i);
    for (std::size_t k = 0; k < c.size(); ++k) t.push_back({i, c[k], v[k]});
    auto cb = b.row_cols(i);
    auto vb = b.row_values(i);
    for (std::size_t k = 0; k < cb.size(); ++k)
      t.push_back({i, cb[k], alpha * vb[k]});
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

}  // namespace msc

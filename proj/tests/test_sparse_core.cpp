#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "msc/dense_matrix.hpp"
#include "msc/factorization.hpp"
#include "msc/permutation.hpp"
#include "msc/sparse_matrix.hpp"
#include "oracles.hpp"

using namespace msc;

namespace {

SparseMatrix from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<Triplet> t;
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
    for (int j = 0; j < static_cast<int>(rows[i].size()); ++j) {
      if (rows[i][j] != 0.0) t.push_back({i, j, rows[i][j]});
    }
  }
  return SparseMatrix::from_triplets(static_cast<int>(rows.size()),
                                     static_cast<int>(rows[0].size()),
                                     std::move(t));
}

// Rebuild the original matrix from P^T L U.
DenseMatrix reconstruct(const TriangularFactors& f) {
  const int n = f.dim();
  DenseMatrix l = to_dense(f.lower);
  for (int i = 0; i < n; ++i) l(i, i) = 1.0;
  DenseMatrix lu = multiply(l, to_dense(f.upper));
  DenseMatrix a(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) a(f.row_perm.forward[k], j) = lu(k, j);
  }
  return a;
}

SparseMatrix spd_tridiag(int n) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, 4.0});
    if (i + 1 < n) {
      t.push_back({i, i + 1, -1.0});
      t.push_back({i + 1, i, -1.0});
    }
  }
  return SparseMatrix::from_triplets(n, n, std::move(t));
}

}  // namespace

TEST_CASE("construction sums duplicates and prunes zeros") {
  SparseMatrix a = SparseMatrix::from_triplets(
      2, 2, {{0, 0, 1.0}, {0, 0, 2.0}, {1, 0, 5.0}, {1, 0, -5.0}, {1, 1, 3.0}});
  CHECK(a.nnz() == 2);
  CHECK(a.at(0, 0) == 3.0);
  CHECK(a.at(1, 0) == 0.0);
  CHECK(a.at(1, 1) == 3.0);
  for (int i = 0; i < a.rows(); ++i) {
    auto cols = a.row_cols(i);
    for (std::size_t k = 1; k < cols.size(); ++k) CHECK(cols[k - 1] < cols[k]);
  }
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{2, 0, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("matvec basics") {
  std::vector<double> x{1.0, 2.0, 3.0};
  CHECK(matvec(SparseMatrix::identity(3), x) == x);

  SparseMatrix zero(2, 2);
  std::vector<double> y = matvec(zero, std::vector<double>{5.0, 7.0});
  CHECK(y == std::vector<double>{0.0, 0.0});

  SparseMatrix a = from_rows({{2.0, 0.0}, {1.0, 3.0}});
  CHECK(matvec(a, std::vector<double>{1.0, 1.0}) ==
        std::vector<double>{2.0, 4.0});

  CHECK_THROWS_AS(matvec(a, std::vector<double>{1.0, 2.0, 3.0}),
                  std::invalid_argument);
}

TEST_CASE("matvec additivity") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    SparseMatrix a = oracle::random_dd_sparse(40, 0.2, rng);
    std::vector<double> x = oracle::random_vector(40, rng);
    std::vector<double> y = oracle::random_vector(40, rng);
    std::vector<double> xy(40);
    for (int i = 0; i < 40; ++i) xy[i] = x[i] + y[i];
    std::vector<double> lhs = matvec(a, xy);
    std::vector<double> ax = matvec(a, x);
    std::vector<double> ay = matvec(a, y);
    for (int i = 0; i < 40; ++i) {
      CHECK(lhs[i] == doctest::Approx(ax[i] + ay[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("extract_block") {
  SparseMatrix i2 = extract_block(SparseMatrix::identity(4), 1, 3, 1, 3);
  CHECK(i2.same_pattern_and_values(SparseMatrix::identity(2)));

  // Off-diagonal block of a block-diagonal matrix is empty.
  SparseMatrix bd = from_rows({{1.0, 2.0, 0.0, 0.0},
                               {3.0, 4.0, 0.0, 0.0},
                               {0.0, 0.0, 5.0, 6.0},
                               {0.0, 0.0, 7.0, 8.0}});
  CHECK(extract_block(bd, 0, 2, 2, 4).nnz() == 0);

  CHECK_THROWS_AS(extract_block(bd, 0, 5, 0, 4), std::invalid_argument);

  // Gathered index lists with local re-indexing.
  std::vector<int> rows{1, 3}, cols{0, 3};
  SparseMatrix sub = extract_submatrix(bd, rows, cols);
  CHECK(sub.at(0, 0) == 3.0);
  CHECK(sub.at(1, 1) == 8.0);
  CHECK(sub.nnz() == 2);
}

TEST_CASE("factor_exact on identity and a permutation matrix") {
  TriangularFactors f = factor_exact(SparseMatrix::identity(5));
  std::vector<double> b{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(solve(f, b) == b);

  // Zero diagonal forces pivoting.
  SparseMatrix swap = from_rows({{0.0, 1.0}, {1.0, 0.0}});
  TriangularFactors fs = factor_exact(swap);
  std::vector<double> x = solve(fs, std::vector<double>{3.0, 9.0});
  CHECK(x[0] == doctest::Approx(9.0));
  CHECK(x[1] == doctest::Approx(3.0));
}

TEST_CASE("factor_exact matches the dense oracle on random systems") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    SparseMatrix a = oracle::random_dd_sparse(50, 0.15, rng);
    std::vector<double> b = oracle::random_vector(50, rng);
    TriangularFactors f = factor_exact(a);
    std::vector<double> got = solve(f, b);
    std::vector<double> want = oracle::gauss_solve(to_dense(a), b);
    CHECK(oracle::rel_err(got, want) < 1e-10);
  }
}

TEST_CASE("factor_exact reports the singular pivot") {
  SparseMatrix singular = from_rows({{1.0, 2.0}, {2.0, 4.0}});
  CHECK_THROWS_AS(factor_exact(singular), SingularMatrixError);
  try {
    factor_exact(singular);
  } catch (const SingularMatrixError& err) {
    CHECK(err.pivot_index == 1);
  }
}

TEST_CASE("ilut with zero drop tolerance reconstructs the matrix") {
  SparseMatrix a = spd_tridiag(10);
  TriangularFactors f = factor_ilut(a, 0.0);
  CHECK(oracle::rel_frobenius(reconstruct(f), to_dense(a)) < 1e-12);
}

TEST_CASE("ilut with a huge drop tolerance keeps only the diagonal") {
  std::mt19937 rng(3);
  SparseMatrix a = oracle::random_dd_sparse(12, 0.4, rng);
  TriangularFactors f = factor_ilut(a, 1e30);
  CHECK(f.lower.nnz() == 0);
  CHECK(f.upper.nnz() == 12);
  for (int i = 0; i < 12; ++i) CHECK(f.upper.at(i, i) == a.at(i, i));
}

TEST_CASE("ilut nnz is non-increasing in the drop tolerance") {
  std::mt19937 rng(5);
  SparseMatrix a = oracle::random_dd_sparse(60, 0.15, rng);
  std::size_t prev = static_cast<std::size_t>(-1);
  for (double tol : {0.0, 1e-6, 1e-3, 1e-1, 1e30}) {
    TriangularFactors f = factor_ilut(a, tol);
    CHECK(f.nnz() <= prev);
    prev = f.nnz();
  }
}

TEST_CASE("ilut fails loudly on a zero pivot") {
  SparseMatrix a = from_rows({{0.0, 1.0}, {1.0, 0.0}});
  CHECK_THROWS_AS(factor_ilut(a, 0.0), SingularMatrixError);
}

TEST_CASE("permute basics") {
  SparseMatrix d = SparseMatrix::diagonal({1.0, 2.0, 3.0});
  CHECK(permute(d, Permutation::identity(3)).same_pattern_and_values(d));

  Permutation rev = Permutation::from_forward({2, 1, 0});
  SparseMatrix rd = permute(d, rev);
  CHECK(rd.at(0, 0) == 3.0);
  CHECK(rd.at(1, 1) == 2.0);
  CHECK(rd.at(2, 2) == 1.0);

  CHECK_THROWS_AS(permute(d, Permutation::identity(4)), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_forward({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("permute round trip and value multiset preservation") {
  std::mt19937 rng(13);
  SparseMatrix a = oracle::random_dd_sparse(20, 0.25, rng);
  std::vector<int> fwd(20);
  std::iota(fwd.begin(), fwd.end(), 0);
  std::shuffle(fwd.begin(), fwd.end(), rng);
  Permutation p = Permutation::from_forward(fwd);

  SparseMatrix pa = permute(a, p);
  CHECK(pa.nnz() == a.nnz());
  std::vector<double> va(a.values());
  std::vector<double> vp(pa.values());
  std::sort(va.begin(), va.end());
  std::sort(vp.begin(), vp.end());
  CHECK(va == vp);

  SparseMatrix back = permute(pa, p.inverted());
  CHECK(back.same_pattern_and_values(a));
}

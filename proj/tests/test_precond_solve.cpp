#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <random>

#include "fixtures.hpp"
#include "msc/preconditioner.hpp"
#include "msc/spectrum.hpp"
#include "oracles.hpp"

using namespace msc;

namespace {

constexpr int kExact = std::numeric_limits<int>::max();

// Dense materialization of the three-factor B: [D E; F, F inv(D) E + S^].
DenseMatrix dense_b(const PartitionedMatrix& c, const SparseMatrix& s_hat) {
  const int n = c.n();
  const int p = c.p;
  DenseMatrix b(n, n);
  DenseMatrix d = to_dense(c.D);
  DenseMatrix e = to_dense(c.E);
  DenseMatrix f = to_dense(c.F);
  DenseMatrix corner = multiply(f, oracle::gauss_solve(d, e));
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) b(i, j) = d(i, j);
    for (int j = 0; j < n - p; ++j) b(i, p + j) = e(i, j);
  }
  DenseMatrix s = to_dense(s_hat);
  for (int i = 0; i < n - p; ++i) {
    for (int j = 0; j < p; ++j) b(p + i, j) = f(i, j);
    for (int j = 0; j < n - p; ++j) b(p + i, p + j) = corner(i, j) + s(i, j);
  }
  return b;
}

}  // namespace

TEST_CASE("apply is zero on zero and identity on the identity system") {
  PartitionedMatrix c = PartitionedMatrix::from_blocks(
      SparseMatrix::identity(4), SparseMatrix(4, 3), SparseMatrix(3, 4),
      SparseMatrix::identity(3));
  SchurApproximation s = build_msc(c, aggregate_by_numbering(3, {3}),
                                   MscVariant::Mscn);
  MscPreconditioner b = build_preconditioner(c, s, 0.0, kExact);

  std::vector<double> zero(7, 0.0);
  CHECK(b.apply(zero) == zero);

  std::mt19937 rng(2);
  std::vector<double> y = oracle::random_vector(7, rng);
  std::vector<double> x = b.apply(y);
  for (int i = 0; i < 7; ++i) CHECK(x[i] == doctest::Approx(y[i]).epsilon(1e-14));
}

TEST_CASE("block-diagonal system splits into independent solves") {
  std::mt19937 rng(23);
  SparseMatrix d = oracle::random_dd_sparse(10, 0.3, rng);
  SparseMatrix g = oracle::random_dd_sparse(4, 0.5, rng);
  PartitionedMatrix c = PartitionedMatrix::from_blocks(
      d, SparseMatrix(10, 4), SparseMatrix(4, 10), g);
  // With E = F = 0 the Schur complement is G itself, so a covering lumped
  // aggregate makes B = C and the round trip exact.
  SchurApproximation s =
      build_msc(c, aggregate_by_numbering(4, {4}), MscVariant::Lum);
  MscPreconditioner b = build_preconditioner(c, s, 0.0, kExact);

  std::vector<double> y = oracle::random_vector(14, rng);
  std::vector<double> x = b.apply(y);
  std::vector<double> roundtrip = matvec(c.C, x);
  CHECK(oracle::rel_err(roundtrip, y) < 1e-10);

  // MSCN with aggregates aligned to G's coupling pattern behaves the same.
  SchurApproximation s2 =
      build_msc(c, aggregate_by_numbering(4, {4}), MscVariant::Mscn);
  MscPreconditioner b2 = build_preconditioner(c, s2, 0.0, kExact);
  std::vector<double> x2 = b2.apply(y);
  CHECK(oracle::rel_err(matvec(c.C, x2), y) < 1e-10);
}

TEST_CASE("exact Schur and exact solves make B equal to C") {
  std::mt19937 rng(31);
  PartitionedMatrix c = oracle::random_saddle(24, 10, rng, 0.25);
  SchurApproximation s = build_exact_schur(c);
  MscPreconditioner b = build_preconditioner(c, s, 0.0, kExact);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> x = oracle::random_vector(34, rng);
    std::vector<double> got = b.apply(matvec(c.C, x));
    CHECK(oracle::rel_err(got, x) < 1e-9);
  }
}

TEST_CASE("apply matches the dense three-factor inverse") {
  std::mt19937 rng(37);
  PartitionedMatrix c = oracle::random_saddle(20, 8, rng, 0.3);
  AggregateSet agg = aggregate_by_numbering(8, {4, 4});
  SchurApproximation s = build_msc(c, agg, MscVariant::Mscn);
  MscPreconditioner b = build_preconditioner(c, s, 0.0, kExact);

  DenseMatrix bd = dense_b(c, s.s_hat);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<double> y = oracle::random_vector(28, rng);
    std::vector<double> want = oracle::gauss_solve(bd, y);
    std::vector<double> got = b.apply(y);
    CHECK(oracle::rel_err(got, want) < 1e-10);
  }
}

TEST_CASE("inner-solve policy switches between exact and ilut") {
  std::mt19937 rng(43);
  PartitionedMatrix base = oracle::random_saddle(16, 6, rng, 0.3);
  // Two interior blocks of size 8: sA = 8 -> exact, sA = 4 -> ILUT.
  PartitionedMatrix c = PartitionedMatrix::from_blocks(
      base.D, base.E, base.F, base.G, {{0, 8}, {8, 16}});
  // Zero the cross-block coupling so the range invariant holds.
  std::vector<Triplet> dt;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      const bool same = (i < 8) == (j < 8);
      const double v = base.D.at(i, j);
      if (same && v != 0.0) dt.push_back({i, j, v});
    }
  }
  c = PartitionedMatrix::from_blocks(
      SparseMatrix::from_triplets(16, 16, std::move(dt)), base.E, base.F,
      base.G, {{0, 8}, {8, 16}});
  CHECK(c.interblock_nnz() == 0);

  SchurApproximation s =
      build_msc(c, aggregate_by_numbering(6, {3, 3}), MscVariant::Mscn);
  MscPreconditioner exact = build_preconditioner(c, s, 1e-4, 8);
  for (const auto& f : exact.d_factors()) CHECK(f.kind == FactorKind::Exact);
  MscPreconditioner inexact = build_preconditioner(c, s, 1e-4, 4);
  for (const auto& f : inexact.d_factors()) {
    CHECK(f.kind == FactorKind::Incomplete);
  }
}

TEST_CASE("apply is linear") {
  std::mt19937 rng(47);
  PartitionedMatrix c = oracle::random_saddle(18, 8, rng, 0.3);
  SchurApproximation s =
      build_msc(c, aggregate_by_numbering(8, {4, 4}), MscVariant::Mscn);
  MscPreconditioner mscb = build_preconditioner(c, s, 0.0, kExact);

  std::vector<double> q(18, 1.0);
  LscPreconditioner lsc = build_lsc(c, q);

  PcdInputs aux{oracle::random_dd_sparse(8, 0.4, rng),
                oracle::random_dd_sparse(8, 0.4, rng),
                SparseMatrix::diagonal({1, 2, 3, 4, 5, 6, 7, 8})};
  PcdPreconditioner pcd = build_pcd(c, aux);

  for (const Preconditioner* b :
       std::initializer_list<const Preconditioner*>{&mscb, &lsc, &pcd}) {
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const double alpha = coef(rng), beta = coef(rng);
    std::vector<double> y = oracle::random_vector(26, rng);
    std::vector<double> z = oracle::random_vector(26, rng);
    std::vector<double> mix(26);
    for (int i = 0; i < 26; ++i) mix[i] = alpha * y[i] + beta * z[i];
    std::vector<double> lhs = b->apply(mix);
    std::vector<double> by = b->apply(y);
    std::vector<double> bz = b->apply(z);
    double scale = 0.0;
    for (int i = 0; i < 26; ++i) scale = std::max(scale, std::abs(lhs[i]));
    for (int i = 0; i < 26; ++i) {
      CHECK(std::abs(lhs[i] - (alpha * by[i] + beta * bz[i])) <=
            1e-12 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("unit eigenvalue theorem at unit-test scale") {
  std::mt19937 rng(51);
  PartitionedMatrix c = oracle::random_saddle(24, 8, rng, 0.3);
  AggregateSet agg = aggregate_by_numbering(8, {4, 4});
  SchurApproximation s = build_msc(c, agg, MscVariant::Mscn);
  MscPreconditioner b = build_preconditioner(c, s, 0.0, kExact);

  auto left = spectrum(dense_left_preconditioned(c.C, b));
  CHECK(count_unit_eigenvalues(left, 1e-6) >= 24);

  // Trailing spectrum = spectrum of S^-1 S, matched as multisets.
  SchurApproximation exact = build_exact_schur(c);
  DenseMatrix tail_op =
      oracle::gauss_solve(to_dense(s.s_hat), to_dense(exact.s_hat));
  auto tail = spectrum(tail_op);

  std::vector<std::complex<double>> rest = left;
  std::sort(rest.begin(), rest.end(),
            [](const std::complex<double>& a, const std::complex<double>& b) {
              return std::abs(a - 1.0) < std::abs(b - 1.0);
            });
  rest.erase(rest.begin(), rest.begin() + 24);
  CHECK(max_multiset_distance(rest, tail) < 1e-6);

  // Left and right preconditioned operators are similar.
  auto right = spectrum(dense_right_preconditioned(c.C, b));
  CHECK(max_multiset_distance(left, right) < 1e-6);
}

TEST_CASE("SPD D never raises for any variant") {
  std::mt19937 rng(57);
  // SPD tridiagonal D, diagonally dominant G.
  std::vector<Triplet> dt;
  const int p = 20;
  for (int i = 0; i < p; ++i) {
    dt.push_back({i, i, 4.0});
    if (i + 1 < p) {
      dt.push_back({i, i + 1, -1.0});
      dt.push_back({i + 1, i, -1.0});
    }
  }
  SparseMatrix d = SparseMatrix::from_triplets(p, p, std::move(dt));
  for (int trial = 0; trial < 5; ++trial) {
    PartitionedMatrix base = oracle::random_saddle(p, 10, rng, 0.3);
    PartitionedMatrix c =
        PartitionedMatrix::from_blocks(d, base.E, base.F, base.G);
    for (MscVariant v : {MscVariant::Mscn, MscVariant::Mscnr, MscVariant::Lum}) {
      SchurApproximation s =
          build_msc(c, aggregate_by_numbering(10, {5, 5}), v);
      CHECK_NOTHROW(build_preconditioner(c, s, 0.0, kExact));
    }
  }
}

TEST_CASE("pcd applies the reversed product") {
  std::mt19937 rng(61);

  SUBCASE("identity operators reduce to a sign flip") {
    PartitionedMatrix c = PartitionedMatrix::from_blocks(
        SparseMatrix::identity(4), SparseMatrix(4, 3), SparseMatrix(3, 4),
        SparseMatrix::identity(3));
    PcdInputs aux{SparseMatrix::identity(3), SparseMatrix::identity(3),
                  SparseMatrix::identity(3)};
    PcdPreconditioner b = build_pcd(c, aux);
    std::vector<double> y = oracle::random_vector(7, rng);
    std::vector<double> x = b.apply(y);
    for (int i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(y[i]));
    for (int i = 4; i < 7; ++i) CHECK(x[i] == doctest::Approx(-y[i]));
  }

  SUBCASE("diagonal operators act componentwise") {
    PartitionedMatrix c = PartitionedMatrix::from_blocks(
        SparseMatrix::identity(2), SparseMatrix(2, 3), SparseMatrix(3, 2),
        SparseMatrix::identity(3));
    PcdInputs aux{SparseMatrix::diagonal({2.0, 4.0, 8.0}),
                  SparseMatrix::diagonal({3.0, 5.0, 7.0}),
                  SparseMatrix::diagonal({1.0, 2.0, 4.0})};
    PcdPreconditioner b = build_pcd(c, aux);
    std::vector<double> y{0.0, 0.0, 1.0, 1.0, 1.0};
    std::vector<double> x = b.apply(y);
    // S^-1 y = -Qp^-1 Dp Ap^-1 y, componentwise -(d_i / (q_i a_i)).
    CHECK(x[2] == doctest::Approx(-(3.0 / (1.0 * 2.0))));
    CHECK(x[3] == doctest::Approx(-(5.0 / (2.0 * 4.0))));
    CHECK(x[4] == doctest::Approx(-(7.0 / (4.0 * 8.0))));
  }

  SUBCASE("singular auxiliaries are rejected") {
    PartitionedMatrix c = PartitionedMatrix::from_blocks(
        SparseMatrix::identity(2), SparseMatrix(2, 2), SparseMatrix(2, 2),
        SparseMatrix::identity(2));
    PcdInputs aux{SparseMatrix(2, 2), SparseMatrix::identity(2),
                  SparseMatrix::identity(2)};
    CHECK_THROWS_AS(build_pcd(c, aux), SingularMatrixError);
    PcdInputs aux2{SparseMatrix::identity(2), SparseMatrix::identity(2),
                   SparseMatrix(2, 2)};
    CHECK_THROWS_AS(build_pcd(c, aux2), SingularMatrixError);
  }
}

TEST_CASE("lsc collapses to the scaled Laplacian when Q = I, D = I") {
  std::mt19937 rng(67);
  std::uniform_real_distribution<double> val(0.5, 2.0);
  // Full-rank F so M needs no pinning.
  std::vector<Triplet> ft;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 6; ++j) ft.push_back({i, j, val(rng) + (i == j)});
  }
  SparseMatrix f = SparseMatrix::from_triplets(3, 6, std::move(ft));
  PartitionedMatrix c = PartitionedMatrix::from_blocks(
      SparseMatrix::identity(6), SparseMatrix(6, 3), f,
      SparseMatrix::identity(3));
  LscPreconditioner b = build_lsc(c, std::vector<double>(6, 1.0));
  CHECK(!b.pinned());

  // With D = I the sandwich equals M, so S^-1 = M^-1.
  std::vector<double> y(9, 0.0);
  y[6] = 1.0;
  y[7] = -2.0;
  y[8] = 0.5;
  std::vector<double> x = b.apply(y);
  DenseMatrix m = to_dense(b.m());
  std::vector<double> want =
      oracle::gauss_solve(m, std::vector<double>{1.0, -2.0, 0.5});
  for (int i = 0; i < 3; ++i) {
    CHECK(x[6 + i] == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("lsc matches the dense commutator formula") {
  std::mt19937 rng(71);
  PartitionedMatrix c = oracle::random_saddle(12, 4, rng, 0.5);
  std::uniform_real_distribution<double> qv(0.5, 2.0);
  std::vector<double> q(12);
  for (double& v : q) v = qv(rng);
  LscPreconditioner b = build_lsc(c, q);

  DenseMatrix f = to_dense(c.F);
  DenseMatrix ft = to_dense(c.F.transpose());
  DenseMatrix qinv(12, 12);
  for (int i = 0; i < 12; ++i) qinv(i, i) = 1.0 / q[i];
  DenseMatrix m = multiply(multiply(f, qinv), ft);
  DenseMatrix k =
      multiply(multiply(multiply(multiply(f, qinv), to_dense(c.D)), qinv), ft);
  DenseMatrix s_hat = multiply(m, oracle::gauss_solve(k, m));

  std::vector<double> y(16, 0.0);
  std::vector<double> y2 = oracle::random_vector(4, rng);
  for (int i = 0; i < 4; ++i) y[12 + i] = y2[i];
  std::vector<double> x = b.apply(y);
  std::vector<double> want = oracle::gauss_solve(s_hat, y2);
  std::vector<double> got(x.begin() + 12, x.end());
  CHECK(oracle::rel_err(got, want) < 1e-10);
}

TEST_CASE("lsc pins the constant-pressure null space") {
  // F with dependent rows: M = F F^T is singular before pinning.
  SparseMatrix f = SparseMatrix::from_triplets(
      2, 3, {{0, 0, 1.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 1.0}});
  PartitionedMatrix c = PartitionedMatrix::from_blocks(
      SparseMatrix::identity(3), SparseMatrix(3, 2), f,
      SparseMatrix::identity(2));
  LscPreconditioner b = build_lsc(c, std::vector<double>(3, 1.0));
  CHECK(b.pinned());
  std::vector<double> y = {0.0, 0.0, 0.0, 1.0, 2.0};
  CHECK_NOTHROW(b.apply(y));

  CHECK_THROWS_AS(build_lsc(c, std::vector<double>{1.0, -1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("fill factor bookkeeping") {
  SUBCASE("identity system gives exactly 1") {
    PartitionedMatrix c = PartitionedMatrix::from_blocks(
        SparseMatrix::identity(5), SparseMatrix(5, 3), SparseMatrix(3, 5),
        SparseMatrix::identity(3));
    SchurApproximation s =
        build_msc(c, aggregate_by_numbering(3, {3}), MscVariant::Lum);
    MscPreconditioner b = build_preconditioner(c, s, 0.0, kExact);
    CHECK(fill_factor(b, c.C) == 1.0);
  }

  SUBCASE("stored nnz matches a hand count") {
    std::mt19937 rng(73);
    PartitionedMatrix c = oracle::random_saddle(12, 6, rng, 0.3);
    SchurApproximation s =
        build_msc(c, aggregate_by_numbering(6, {3, 3}), MscVariant::Mscn);
    MscPreconditioner b = build_preconditioner(c, s, 0.0, kExact);
    std::size_t count = c.E.nnz() + c.F.nnz();
    for (const auto& f : b.d_factors()) count += f.lower.nnz() + f.upper.nnz();
    for (const auto& f : b.schur_factors()) count += f.lower.nnz() + f.upper.nnz();
    CHECK(b.stored_nnz() == count);
    CHECK(fill_factor(b, c.C) ==
          static_cast<double>(count) / static_cast<double>(c.C.nnz()));
  }
}

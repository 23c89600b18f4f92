#include "msc/schur_approx.hpp"

#include <algorithm>

#include "msc/dense_matrix.hpp"
#include "msc/factorization.hpp"
#include "msc/parallel.hpp"

namespace msc {

bool variant_overlapped(MscVariant v) {
  return v == MscVariant::Omscn || v == MscVariant::Omscnr ||
         v == MscVariant::Olum;
}

bool variant_rowsum(MscVariant v) {
  return v == MscVariant::Mscnr || v == MscVariant::Omscnr ||
         v == MscVariant::Mscer;
}

bool variant_lumped(MscVariant v) {
  return v == MscVariant::Lum || v == MscVariant::Olum;
}

bool variant_edge_based(MscVariant v) {
  return v == MscVariant::Msce || v == MscVariant::Mscer;
}

std::string variant_name(MscVariant v) {
  switch (v) {
    case MscVariant::Mscn: return "mscn";
    case MscVariant::Mscnr: return "mscnr";
    case MscVariant::Lum: return "lum";
    case MscVariant::Msce: return "msce";
    case MscVariant::Mscer: return "mscer";
    case MscVariant::Omscn: return "omscn";
    case MscVariant::Omscnr: return "omscnr";
    case MscVariant::Olum: return "olum";
  }
  return "?";
}

MscVariant variant_from_name(const std::string& name) {
  for (MscVariant v :
       {MscVariant::Mscn, MscVariant::Mscnr, MscVariant::Lum, MscVariant::Msce,
        MscVariant::Mscer, MscVariant::Omscn, MscVariant::Omscnr,
        MscVariant::Olum}) {
    if (variant_name(v) == name) return v;
  }
  throw std::invalid_argument("unknown MSC variant: " + name);
}

namespace {

void check_agg_compatible(const PartitionedMatrix& c, const AggregateSet& agg,
                          MscVariant variant) {
  if (agg.n_g != c.n_g()) {
    throw std::invalid_argument("build_msc: aggregate set is over " +
                                std::to_string(agg.n_g) +
                                " nodes, matrix has " +
                                std::to_string(c.n_g()));
  }
  const bool want_overlap = variant_overlapped(variant);
  const bool have_overlap = agg.scheme == AggregateScheme::NumberingOverlapped;
  if (want_overlap != have_overlap) {
    throw std::invalid_argument(
        "build_msc: variant " + variant_name(variant) +
        (want_overlap ? " needs an overlapped aggregate set"
                      : " needs a non-overlapped aggregate set"));
  }
  if (variant_edge_based(variant) && agg.scheme != AggregateScheme::Edge) {
    throw std::invalid_argument("build_msc: variant " + variant_name(variant) +
                                " needs edge-based aggregates");
  }
  for (int i = 0; i < agg.count(); ++i) {
    for (int d : agg.d_sets[i]) {
      if (d < 0 || d >= c.p) {
        throw std::invalid_argument(
            "build_msc: aggregate " + std::to_string(i) +
            " has a D-side index outside the (1,1) block");
      }
    }
  }
}

}  // namespace

SchurApproximation build_msc(const PartitionedMatrix& c, const AggregateSet& agg,
                             MscVariant variant, int workers) {
  check_agg_compatible(c, agg, variant);
  const int k = agg.count();

  std::vector<DenseMatrix> local(k);
  parallel_for(k, workers, [&](int i) {
    const auto [sb, se] = agg.span(i);
    const int m = se - sb;
    DenseMatrix s_ii = to_dense(extract_block(c.G, sb, se, sb, se));
    if (!variant_lumped(variant)) {
      const std::vector<int>& dset = agg.d_sets[i];
      std::vector<int> grange(m);
      for (int t = 0; t < m; ++t) grange[t] = sb + t;

      SparseMatrix d_ii = extract_submatrix(c.D, dset, dset);
      TriangularFactors d_lu;
      try {
        d_lu = factor_exact(d_ii);
      } catch (const SingularMatrixError& err) {
        throw SingularMatrixError("build_msc: singular D block of aggregate " +
                                      std::to_string(i) + " (" + err.what() + ")",
                                  err.pivot_index);
      }
      SparseMatrix e_ii = extract_submatrix(c.E, dset, grange);
      SparseMatrix f_ii = extract_submatrix(c.F, grange, dset);

      DenseMatrix correction;
      if (variant_rowsum(variant)) {
        if (static_cast<int>(dset.size()) != m) {
          throw std::invalid_argument(
              "build_msc: rowsum variant needs |d_set| == |aggregate| "
              "(aggregate " +
              std::to_string(i) + " has " + std::to_string(dset.size()) +
              " vs " + std::to_string(m) + ")");
        }
        // E_ii compressed to diag of its row sums; columns of D_ii^-1 are
        // only needed where the row sum is nonzero.
        std::vector<double> ones(m, 1.0);
        std::vector<double> rowsum = matvec(e_ii, ones);
        DenseMatrix rhs(m, m);
        for (int j = 0; j < m; ++j) rhs(j, j) = rowsum[j];
        DenseMatrix x = solve(d_lu, rhs);
        correction = multiply(f_ii, x);
      } else {
        DenseMatrix x = solve(d_lu, to_dense(e_ii));
        correction = multiply(f_ii, x);
      }
      s_ii = subtract(s_ii, correction);
    }
    local[i] = std::move(s_ii);
  });

  // Sequential merge: each global column is written by its owning
  // aggregate, rows covering that aggregate's whole span.
  std::vector<Triplet> t;
  for (int i = 0; i < k; ++i) {
    const auto [sb, se] = agg.span(i);
    const auto [ob, oe] = agg.g_ranges[i];
    for (int col = ob; col < oe; ++col) {
      for (int row = sb; row < se; ++row) {
        const double v = local[i](row - sb, col - sb);
        if (v != 0.0) t.push_back({row, col, v});
      }
    }
  }
  SchurApproximation s;
  s.s_hat = SparseMatrix::from_triplets(c.n_g(), c.n_g(), std::move(t));
  s.variant = variant;
  s.overlapped = variant_overlapped(variant);
  s.owned_ranges = agg.g_ranges;
  for (int i = 0; i < k; ++i) s.spans.push_back(agg.span(i));
  return s;
}

SchurApproximation build_exact_schur(const PartitionedMatrix& c) {
  DenseLu d_lu = [&] {
    try {
      return dense_lu(to_dense(c.D));
    } catch (const SingularMatrixError& err) {
      throw SingularMatrixError(
          std::string("build_exact_schur: singular D (") + err.what() + ")",
          err.pivot_index);
    }
  }();
  DenseMatrix x = lu_solve(d_lu, to_dense(c.E));
  DenseMatrix s = subtract(to_dense(c.G), multiply(c.F, x));
  SchurApproximation r;
  r.s_hat = to_sparse(s, 1e-14);
  r.exact = true;
  r.overlapped = false;
  r.owned_ranges = {{0, c.n_g()}};
  r.spans = {{0, c.n_g()}};
  return r;
}

}  // namespace msc

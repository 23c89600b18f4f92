#pragma once

/// \file schur_approx.hpp
/// Mini Schur complements: per-aggregate local Schur complements assembled
/// into a global approximation of S = G - F D^-1 E.

#include <string>
#include <utility>
#include <vector>

#include "msc/aggregates.hpp"
#include "msc/partitioned_matrix.hpp"

namespace msc {

enum class MscVariant { Mscn, Mscnr, Lum, Msce, Mscer, Omscn, Omscnr, Olum };

bool variant_overlapped(MscVariant v);
bool variant_rowsum(MscVariant v);
bool variant_lumped(MscVariant v);
bool variant_edge_based(MscVariant v);
std::string variant_name(MscVariant v);
MscVariant variant_from_name(const std::string& name);

/// Global approximate Schur complement. Block diagonal for the
/// non-overlapped variants; overlapped aggregates produce the banded
/// pattern in which each column is written by its owning aggregate.
struct SchurApproximation {
  SparseMatrix s_hat;                             // n_g x n_g
  MscVariant variant = MscVariant::Mscn;
  bool overlapped = false;
  bool exact = false;                             // built by build_exact_schur
  std::vector<std::pair<int, int>> owned_ranges;  // column ownership
  std::vector<std::pair<int, int>> spans;         // row extent per aggregate
};

/// Algorithm: for each aggregate, slice D_ii (by the aggregate's D-side
/// companion set), E_ii, F_ii, G_ii, and form
///   MSCN/OMSCN/MSCE:   S_ii = G_ii - F_ii D_ii^-1 E_ii
///   MSCNR/OMSCNR/MSCER: E_ii replaced by diag(E_ii * 1)
///   LUM/OLUM:          S_ii = G_ii
/// then write each S_ii into the columns its aggregate owns. D_ii is
/// factored exactly. Aggregates are processed concurrently when workers
/// allows; assembly is a deterministic sequential merge.
SchurApproximation build_msc(const PartitionedMatrix& c, const AggregateSet& agg,
                             MscVariant variant, int workers = 1);

/// Dense evaluation of the full S = G - F D^-1 E, stored sparse after
/// pruning magnitudes below 1e-14. Test oracle and small-problem mode.
SchurApproximation build_exact_schur(const PartitionedMatrix& c);

}  // namespace msc

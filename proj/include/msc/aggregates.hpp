#pragma once

/// \file aggregates.hpp
/// Aggregate sets over the (2,2)-block node numbering: consecutive
/// numbering, overlapped numbering, and edge-connectivity with a path
/// radius.

#include <utility>
#include <vector>

#include "msc/graph.hpp"

namespace msc {

enum class AggregateScheme { Numbering, NumberingOverlapped, Edge };

struct AggregateSet {
  int n_g = 0;
  AggregateScheme scheme = AggregateScheme::Numbering;
  /// Base (ownership) ranges, contiguous and covering [0, n_g).
  std::vector<std::pair<int, int>> g_ranges;
  /// Overlap widths w_i; last is always zero. Empty for the edge scheme.
  std::vector<int> overlaps;
  /// D-side index lists. Mirrors the (overlap-extended) g span for the
  /// numbering schemes; a path-radius neighborhood for the edge scheme.
  std::vector<std::vector<int>> d_sets;
  /// Path radii per aggregate (edge scheme only).
  std::vector<int> radii;

  int count() const { return static_cast<int>(g_ranges.size()); }
  /// Row extent of aggregate i in the (2,2) block: the base range extended
  /// by the overlap width.
  std::pair<int, int> span(int i) const {
    const int w = overlaps.empty() ? 0 : overlaps[i];
    return {g_ranges[i].first, g_ranges[i].second + w};
  }
};

/// Contiguous consecutive ranges; the D-side companion of each aggregate is
/// the same-numbered index range.
AggregateSet aggregate_by_numbering(int n_g, const std::vector<int>& sizes);

/// Overlapped variant: aggregate i additionally spans widths[i] indices of
/// its successor. Requires widths[i] < sizes[i], widths.back() == 0, and
/// spans staying inside [0, n_g).
AggregateSet aggregate_overlapped(int n_g, const std::vector<int>& sizes,
                                  const std::vector<int>& widths);

/// D-side companions from edge connectivity: all D-side nodes within
/// `radius` of the aggregate in the symmetrized graph of the full matrix.
/// `g` is the graph of the whole 2x2 system, whose first `p` nodes form the
/// (1,1) block. Throws when some aggregate reaches no D node.
AggregateSet aggregate_by_edges(const AdjacencyGraph& g, int p,
                                const std::vector<std::pair<int, int>>& g_ranges,
                                int radius);

/// Equal sizes `sz` with the last aggregate absorbing the remainder.
std::vector<int> equal_sizes(int n_g, int sz);

/// Clamp requested overlap widths to the admissible bound (used by the
/// "overlap = sz" convenience); returns true when anything was clipped.
bool clip_overlap_widths(int n_g, const std::vector<int>& sizes,
                         std::vector<int>& widths);

}  // namespace msc

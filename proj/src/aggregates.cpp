#include "msc/aggregates.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace msc {

namespace {

std::vector<std::pair<int, int>> ranges_from_sizes(int n_g,
                                                   const std::vector<int>& sizes) {
  if (sizes.empty()) {
    throw std::invalid_argument("aggregates: empty size list");
  }
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("aggregates: sizes must be >= 1");
  }
  if (std::accumulate(sizes.begin(), sizes.end(), 0) != n_g) {
    throw std::invalid_argument("aggregates: sizes sum to " +
                                std::to_string(std::accumulate(
                                    sizes.begin(), sizes.end(), 0)) +
                                ", expected " + std::to_string(n_g));
  }
  std::vector<std::pair<int, int>> r;
  int begin = 0;
  for (int s : sizes) {
    r.push_back({begin, begin + s});
    begin += s;
  }
  return r;
}

}  // namespace

AggregateSet aggregate_by_numbering(int n_g, const std::vector<int>& sizes) {
  AggregateSet a;
  a.n_g = n_g;
  a.scheme = AggregateScheme::Numbering;
  a.g_ranges = ranges_from_sizes(n_g, sizes);
  a.overlaps.assign(a.g_ranges.size(), 0);
  for (auto [b, e] : a.g_ranges) {
    std::vector<int> d(e - b);
    std::iota(d.begin(), d.end(), b);
    a.d_sets.push_back(std::move(d));
  }
  return a;
}

AggregateSet aggregate_overlapped(int n_g, const std::vector<int>& sizes,
                                  const std::vector<int>& widths) {
  if (widths.size() != sizes.size()) {
    throw std::invalid_argument("aggregate_overlapped: one width per aggregate");
  }
  AggregateSet a;
  a.n_g = n_g;
  a.scheme = AggregateScheme::NumberingOverlapped;
  a.g_ranges = ranges_from_sizes(n_g, sizes);
  const int k = static_cast<int>(sizes.size());
  for (int i = 0; i < k; ++i) {
    const int w = widths[i];
    if (w < 0 || (i + 1 == k && w != 0)) {
      throw std::invalid_argument(
          "aggregate_overlapped: widths must be >= 0 and end with 0");
    }
    if (w >= sizes[i]) {
      throw std::invalid_argument(
          "aggregate_overlapped: width " + std::to_string(w) +
          " of aggregate " + std::to_string(i) + " violates w < size");
    }
    if (a.g_ranges[i].second + w > n_g) {
      throw std::invalid_argument(
          "aggregate_overlapped: overlapped span of aggregate " +
          std::to_string(i) + " exceeds the block");
    }
  }
  a.overlaps = widths;
  for (int i = 0; i < k; ++i) {
    auto [b, e] = a.span(i);
    std::vector<int> d(e - b);
    std::iota(d.begin(), d.end(), b);
    a.d_sets.push_back(std::move(d));
  }
  return a;
}

AggregateSet aggregate_by_edges(const AdjacencyGraph& g, int p,
                                const std::vector<std::pair<int, int>>& g_ranges,
                                int radius) {
  if (radius < 1) {
    throw std::invalid_argument("aggregate_by_edges: radius must be >= 1");
  }
  if (p < 0 || p > g.n) {
    throw std::invalid_argument("aggregate_by_edges: split out of range");
  }
  const int n_g = g.n - p;
  AggregateSet a;
  a.n_g = n_g;
  a.scheme = AggregateScheme::Edge;
  a.g_ranges = g_ranges;
  int covered = 0;
  for (std::size_t i = 0; i < g_ranges.size(); ++i) {
    auto [b, e] = g_ranges[i];
    if (b != covered || e <= b || e > n_g) {
      throw std::invalid_argument(
          "aggregate_by_edges: ranges must be contiguous over the block");
    }
    covered = e;
    std::vector<int> seeds(e - b);
    std::iota(seeds.begin(), seeds.end(), p + b);
    std::vector<int> reach = neighborhood(g, seeds, radius);
    std::vector<int> d;
    for (int u : reach) {
      if (u < p) d.push_back(u);
    }
    if (d.empty()) {
      throw std::invalid_argument(
          "aggregate_by_edges: aggregate " + std::to_string(i) +
          " has no (1,1)-block coupling within radius " +
          std::to_string(radius));
    }
    a.d_sets.push_back(std::move(d));
    a.radii.push_back(radius);
  }
  if (covered != n_g) {
    throw std::invalid_argument("aggregate_by_edges: ranges do not cover the block");
  }
  a.overlaps.assign(a.g_ranges.size(), 0);
  return a;
}

std::vector<int> equal_sizes(int n_g, int sz) {
  if (sz < 1 || n_g < 1) {
    throw std::invalid_argument("equal_sizes: sz and n_g must be positive");
  }
  sz = std::min(sz, n_g);
  const int k = std::max(1, n_g / sz);
  std::vector<int> sizes(k, sz);
  sizes.back() = n_g - sz * (k - 1);  // last absorbs the remainder
  return sizes;
}

bool clip_overlap_widths(int n_g, const std::vector<int>& sizes,
                         std::vector<int>& widths) {
  bool clipped = false;
  std::vector<std::pair<int, int>> r = ranges_from_sizes(n_g, sizes);
  for (std::size_t i = 0; i < widths.size(); ++i) {
    int bound = std::min(sizes[i] - 1, n_g - r[i].second);
    if (i + 1 == widths.size()) bound = 0;
    if (widths[i] > bound) {
      widths[i] = bound;
      clipped = true;
    }
  }
  return clipped;
}

}  // namespace msc

#pragma once

/// \file graph.hpp
/// Adjacency graphs of sparse patterns, BFS neighborhoods, and a
/// vertex-separator nested dissection used to expose block-diagonal
/// structure in the (1,1) block.

#include <utility>
#include <vector>

#include "msc/permutation.hpp"
#include "msc/sparse_matrix.hpp"

namespace msc {

/// Directed pattern graph: an edge u -> v exists iff entry (u, v) of the
/// originating matrix is stored (and u != v). Neighborhood queries run on
/// the symmetrized closure, kept alongside.
struct AdjacencyGraph {
  int n = 0;
  std::vector<std::vector<int>> out;         // sorted, no self-loops
  std::vector<std::vector<int>> undirected;  // symmetrized closure, sorted
};

AdjacencyGraph build_graph(const SparseMatrix& a);

/// All nodes reachable from `seeds` by an undirected path of length at most
/// `radius` (BFS); seeds are included. Returned sorted.
std::vector<int> neighborhood(const AdjacencyGraph& g,
                              std::span<const int> seeds, int radius);

/// Result of nested dissection: interior blocks first, separator last.
struct SeparatorPartition {
  Permutation permutation;
  std::vector<std::pair<int, int>> block_ranges;  // [begin, end) per block
  std::pair<int, int> separator_range;            // tail of the numbering
};

/// Recursive level-set bisection with vertex separators. Splits to the
/// smallest power of two >= target_blocks; tiny or disconnected pieces may
/// yield fewer blocks, and block_ranges reports what was achieved.
/// target_blocks must lie in [1, n].
SeparatorPartition nested_dissection(const AdjacencyGraph& g, int target_blocks);

}  // namespace msc

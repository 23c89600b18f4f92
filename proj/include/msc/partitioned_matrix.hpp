#pragma once

/// \file partitioned_matrix.hpp
/// The block 2x2 saddle-point view C = [D E; F G] plus the reorderings
/// that expose a block-diagonal (1,1) block.

#include <utility>
#include <vector>

#include "msc/graph.hpp"
#include "msc/sparse_matrix.hpp"

namespace msc {

/// Block 2x2 partitioned system. `p` is the (1,1) dimension; the four
/// blocks are materialized copies of the index-range views into C.
/// `d_block_ranges` lists the independent diagonal blocks of D; with more
/// than one block, the coupling between distinct blocks must be zero.
struct PartitionedMatrix {
  SparseMatrix C;
  int p = 0;
  SparseMatrix D, E, F, G;
  std::vector<std::pair<int, int>> d_block_ranges;

  int n() const { return C.rows(); }
  int n_g() const { return C.rows() - p; }

  static PartitionedMatrix from_split(SparseMatrix c, int p,
                                      std::vector<std::pair<int, int>> d_ranges = {});
  static PartitionedMatrix from_blocks(const SparseMatrix& d, const SparseMatrix& e,
                                       const SparseMatrix& f, const SparseMatrix& g,
                                       std::vector<std::pair<int, int>> d_ranges = {});

  /// nnz of coupling between distinct interior blocks of D (0 when the
  /// block-diagonal invariant holds).
  std::size_t interblock_nnz() const;
};

enum class SaddleOrdering {
  /// Whole-system substructuring: interior blocks keep their attached
  /// second-block unknowns and the (1,1)-graph separator forms the new
  /// (2,2) block. See partition_saddle.
  Interleaved,
  /// Reorder only the given (1,1) block; its separator is appended to the
  /// (2,2) side, which otherwise keeps the physics split.
  SplitPreserving,
};

struct SaddleReorder {
  Permutation perm;           // new index k holds original index perm.forward[k]
  PartitionedMatrix matrix;   // permuted system with block-diagonal (1,1)
  int blocks = 0;             // interior block count achieved
  int separator_size = 0;     // (1,1)-graph separator cardinality
};

/// Reorder a saddle system C (physics split at `p`) so that the (1,1) block
/// becomes block diagonal with about `target_blocks` blocks.
///
/// Interleaved mode dissects the first-block graph enriched with
/// through-column cliques, assigns each second-block unknown to the interior
/// block holding all of its remaining couplings, and moves the separator
/// (plus any second-block unknown left without interior couplings) to the
/// (2,2) side. The resulting (2,2) block carries nonzero diagonals even
/// when G itself is zero, which the lumped variants require.
///
/// SplitPreserving mode keeps every second-block unknown on the (2,2) side
/// and only reorders the given (1,1) block, appending its vertex separator
/// to the (2,2) side.
SaddleReorder partition_saddle(const SparseMatrix& c, int p, int target_blocks,
                               SaddleOrdering mode = SaddleOrdering::Interleaved);

}  // namespace msc

#include "msc/partitioned_matrix.hpp"

#include <algorithm>
#include <string>

namespace msc {

PartitionedMatrix PartitionedMatrix::from_split(
    SparseMatrix c, int p, std::vector<std::pair<int, int>> d_ranges) {
  if (c.rows() != c.cols()) {
    throw std::invalid_argument("PartitionedMatrix: matrix not square");
  }
  if (p < 0 || p > c.rows()) {
    throw std::invalid_argument("PartitionedMatrix: split out of range");
  }
  PartitionedMatrix m;
  m.p = p;
  m.D = extract_block(c, 0, p, 0, p);
  m.E = extract_block(c, 0, p, p, c.cols());
  m.F = extract_block(c, p, c.rows(), 0, p);
  m.G = extract_block(c, p, c.rows(), p, c.cols());
  m.C = std::move(c);
  m.d_block_ranges = d_ranges.empty()
                         ? std::vector<std::pair<int, int>>{{0, p}}
                         : std::move(d_ranges);
  return m;
}

PartitionedMatrix PartitionedMatrix::from_blocks(
    const SparseMatrix& d, const SparseMatrix& e, const SparseMatrix& f,
    const SparseMatrix& g, std::vector<std::pair<int, int>> d_ranges) {
  const int p = d.rows();
  const int ng = g.rows();
  if (d.cols() != p || g.cols() != ng || e.rows() != p || e.cols() != ng ||
      f.rows() != ng || f.cols() != p) {
    throw std::invalid_argument("PartitionedMatrix: block dimensions disagree");
  }
  std::vector<Triplet> t;
  t.reserve(d.nnz() + e.nnz() + f.nnz() + g.nnz());
  auto append = [&t](const SparseMatrix& a, int roff, int coff) {
    for (int i = 0; i < a.rows(); ++i) {
      auto c = a.row_cols(i);
      auto v = a.row_values(i);
      for (std::size_t k = 0; k < c.size(); ++k)
        t.push_back({i + roff, c[k] + coff, v[k]});
    }
  };
  append(d, 0, 0);
  append(e, 0, p);
  append(f, p, 0);
  append(g, p, p);
  return from_split(SparseMatrix::from_triplets(p + ng, p + ng, std::move(t)),
                    p, std::move(d_ranges));
}

std::size_t PartitionedMatrix::interblock_nnz() const {
  std::size_t bad = 0;
  std::vector<int> owner(p, -1);
  for (std::size_t b = 0; b < d_block_ranges.size(); ++b) {
    for (int i = d_block_ranges[b].first; i < d_block_ranges[b].second; ++i)
      owner[i] = static_cast<int>(b);
  }
  for (int i = 0; i < p; ++i) {
    for (int j : D.row_cols(i)) {
      if (owner[i] != owner[j]) ++bad;
    }
  }
  return bad;
}

SaddleReorder partition_saddle(const SparseMatrix& c, int p, int target_blocks,
                               SaddleOrdering mode) {
  if (c.rows() != c.cols() || p < 1 || p > c.rows()) {
    throw std::invalid_argument("partition_saddle: bad split");
  }
  const int n = c.rows();
  const int n_g = n - p;

  if (mode == SaddleOrdering::SplitPreserving) {
    SparseMatrix d = extract_block(c, 0, p, 0, p);
    SeparatorPartition part = nested_dissection(build_graph(d), target_blocks);
    // Interior velocity blocks stay in front; the separator joins the
    // second block together with all original (2,2)-side unknowns.
    std::vector<int> fwd;
    fwd.reserve(n);
    for (int k = 0; k < p; ++k) fwd.push_back(part.permutation.forward[k]);
    for (int k = p; k < n; ++k) fwd.push_back(k);
    SaddleReorder r;
    r.separator_size = part.separator_range.second - part.separator_range.first;
    r.blocks = static_cast<int>(part.block_ranges.size());
    r.perm = Permutation::from_forward(std::move(fwd));
    const int new_p = p - r.separator_size;
    std::vector<std::pair<int, int>> ranges;
    for (auto [b, e] : part.block_ranges) ranges.push_back({b, e});
    r.matrix = PartitionedMatrix::from_split(permute(c, r.perm), new_p,
                                             std::move(ranges));
    return r;
  }

  // Interleaved mode. Build the (1,1)-block graph enriched with cliques of
  // first-block unknowns sharing a coupling column, so that a vertex
  // separator of the enriched graph never leaves a second-block unknown
  // attached to two interior blocks.
  std::vector<Triplet> enriched;
  for (int i = 0; i < p; ++i) {
    auto cols = c.row_cols(i);
    for (int j : cols) {
      if (j < p && j != i) enriched.push_back({i, j, 1.0});
    }
  }
  std::vector<std::vector<int>> attached(n_g);  // first-block nodes per column
  for (int i = 0; i < p; ++i) {
    auto cols = c.row_cols(i);
    for (int j : cols) {
      if (j >= p) attached[j - p].push_back(i);
    }
  }
  for (int q = p; q < n; ++q) {
    auto cols = c.row_cols(q);
    for (int j : cols) {
      if (j < p) attached[q - p].push_back(j);
    }
  }
  for (auto& nodes : attached) {
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    for (std::size_t a = 0; a < nodes.size(); ++a) {
      for (std::size_t b = a + 1; b < nodes.size(); ++b) {
        enriched.push_back({nodes[a], nodes[b], 1.0});
        enriched.push_back({nodes[b], nodes[a], 1.0});
      }
    }
  }
  AdjacencyGraph g;
  {
    SparseMatrix pattern =
        SparseMatrix::from_triplets(p, p, std::move(enriched));
    g = build_graph(pattern);
  }
  SeparatorPartition part = nested_dissection(g, target_blocks);

  std::vector<int> owner(p, -1);  // block id per first-block node, -1 = separator
  for (std::size_t b = 0; b < part.block_ranges.size(); ++b) {
    for (int k = part.block_ranges[b].first; k < part.block_ranges[b].second; ++k)
      owner[part.permutation.forward[k]] = static_cast<int>(b);
  }

  const int nblocks = static_cast<int>(part.block_ranges.size());
  std::vector<std::vector<int>> block_nodes(nblocks);
  for (std::size_t b = 0; b < part.block_ranges.size(); ++b) {
    for (int k = part.block_ranges[b].first; k < part.block_ranges[b].second; ++k)
      block_nodes[b].push_back(part.permutation.forward[k]);
  }
  for (auto& nodes : block_nodes) std::sort(nodes.begin(), nodes.end());

  // Every second-block unknown follows its interior couplings; the clique
  // enrichment guarantees they agree on a single block. Unknowns coupled
  // only to the separator (or to nothing, e.g. a pinned pressure) go to the
  // (2,2) side.
  std::vector<std::vector<int>> block_tail(nblocks);
  std::vector<int> g_side;
  for (int q = 0; q < n_g; ++q) {
    int blk = -1;
    for (int v : attached[q]) {
      if (owner[v] >= 0) {
        blk = owner[v];
        break;
      }
    }
    if (blk < 0) {
      g_side.push_back(p + q);
    } else {
      block_tail[blk].push_back(p + q);
    }
  }

  std::vector<int> fwd;
  fwd.reserve(n);
  std::vector<std::pair<int, int>> ranges;
  for (int b = 0; b < nblocks; ++b) {
    const int begin = static_cast<int>(fwd.size());
    fwd.insert(fwd.end(), block_nodes[b].begin(), block_nodes[b].end());
    fwd.insert(fwd.end(), block_tail[b].begin(), block_tail[b].end());
    ranges.push_back({begin, static_cast<int>(fwd.size())});
  }
  const int new_p = static_cast<int>(fwd.size());
  for (int k = part.separator_range.first; k < part.separator_range.second; ++k)
    fwd.push_back(part.permutation.forward[k]);
  fwd.insert(fwd.end(), g_side.begin(), g_side.end());

  SaddleReorder r;
  r.blocks = nblocks;
  r.separator_size = part.separator_range.second - part.separator_range.first;
  r.perm = Permutation::from_forward(std::move(fwd));
  r.matrix = PartitionedMatrix::from_split(permute(c, r.perm), new_p,
                                           std::move(ranges));
  if (r.matrix.interblock_nnz() != 0) {
    throw std::runtime_error(
        "partition_saddle: interior blocks remained coupled (" +
        std::to_string(r.matrix.interblock_nnz()) + " entries)");
  }
  return r;
}

}  // namespace msc

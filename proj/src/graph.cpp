#include "msc/graph.hpp"

#include <algorithm>
#include <queue>

namespace msc {

AdjacencyGraph build_graph(const SparseMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("build_graph: matrix not square");
  }
  AdjacencyGraph g;
  g.n = a.rows();
  g.out.resize(g.n);
  g.undirected.resize(g.n);
  for (int i = 0; i < g.n; ++i) {
    for (int j : a.row_cols(i)) {
      if (j != i) g.out[i].push_back(j);  // row order keeps these sorted
    }
  }
  for (int i = 0; i < g.n; ++i) {
    g.undirected[i] = g.out[i];
    for (int j : g.out[i]) g.undirected[j].push_back(i);
  }
  for (auto& nbrs : g.undirected) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return g;
}

std::vector<int> neighborhood(const AdjacencyGraph& g,
                              std::span<const int> seeds, int radius) {
  if (radius < 0) {
    throw std::invalid_argument("neighborhood: negative radius");
  }
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  for (int s : seeds) {
    if (s < 0 || s >= g.n) {
      throw std::invalid_argument("neighborhood: seed out of range");
    }
    if (dist[s] != 0) {
      dist[s] = 0;
      q.push(s);
    }
  }
  std::vector<int> result;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    result.push_back(u);
    if (dist[u] == radius) continue;
    for (int v : g.undirected[u]) {
      if (dist[v] == -1) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

// BFS visitation bookkeeping over the subgraph induced by `member`.
// Visits components in ascending order of their smallest member; neighbor
// ties break by smallest index via sorted adjacency.
struct LevelOrder {
  std::vector<int> order;
  std::vector<int> level;  // parallel to order; restarts per component
};

LevelOrder bfs_levels(const AdjacencyGraph& g, const std::vector<int>& nodes,
                      const std::vector<char>& member, int start) {
  std::vector<int> dist(g.n, -1);
  LevelOrder lo;
  lo.order.reserve(nodes.size());
  lo.level.reserve(nodes.size());
  std::queue<int> q;
  auto run = [&](int s) {
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      lo.order.push_back(u);
      lo.level.push_back(dist[u]);
      for (int v : g.undirected[u]) {
        if (member[v] && dist[v] == -1) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
      }
    }
  };
  if (start >= 0) run(start);
  for (int u : nodes) {
    if (dist[u] == -1) run(u);
  }
  return lo;
}

// Double BFS sweep; the smaller endpoint of the final pseudo-diameter is the
// split origin, which keeps results reproducible.
int pseudo_peripheral(const AdjacencyGraph& g, const std::vector<int>& nodes,
                      const std::vector<char>& member) {
  int start = nodes.front();
  std::size_t best_deg = g.undirected[start].size();
  for (int u : nodes) {
    if (g.undirected[u].size() < best_deg) {
      best_deg = g.undirected[u].size();
      start = u;
    }
  }
  // Farthest node within the start's component; the component ends where
  // the recorded level restarts at 0.
  LevelOrder lo = bfs_levels(g, nodes, member, start);
  std::size_t end1 = 1;
  while (end1 < lo.order.size() && lo.level[end1] != 0) ++end1;
  int f1 = lo.order[end1 - 1];
  LevelOrder lo2 = bfs_levels(g, nodes, member, f1);
  std::size_t end2 = 1;
  while (end2 < lo2.order.size() && lo2.level[end2] != 0) ++end2;
  int f2 = lo2.order[end2 - 1];
  return std::min(f1, f2);
}

struct SplitResult {
  std::vector<int> left;
  std::vector<int> right;
  std::vector<int> separator;
};

SplitResult bisect(const AdjacencyGraph& g, const std::vector<int>& nodes) {
  std::vector<char> member(g.n, 0);
  for (int u : nodes) member[u] = 1;
  const int origin = pseudo_peripheral(g, nodes, member);
  LevelOrder lo = bfs_levels(g, nodes, member, origin);

  // Cut at half the nodes, then extend to the end of the current level so
  // the halves are unions of complete level sets.
  std::size_t cut = nodes.size() / 2;
  while (cut < lo.order.size() && cut > 0 &&
         lo.level[cut] == lo.level[cut - 1] && lo.level[cut] != 0) {
    ++cut;
  }
  SplitResult r;
  std::vector<char> in_left(g.n, 0);
  for (std::size_t i = 0; i < lo.order.size(); ++i) {
    if (i < cut) {
      r.left.push_back(lo.order[i]);
      in_left[lo.order[i]] = 1;
    } else {
      r.right.push_back(lo.order[i]);
    }
  }
  // The boundary layer of the right half becomes the vertex separator.
  std::vector<int> kept;
  for (int u : r.right) {
    bool boundary = false;
    for (int v : g.undirected[u]) {
      if (in_left[v]) {
        boundary = true;
        break;
      }
    }
    (boundary ? r.separator : kept).push_back(u);
  }
  r.right = std::move(kept);
  std::sort(r.left.begin(), r.left.end());
  std::sort(r.right.begin(), r.right.end());
  std::sort(r.separator.begin(), r.separator.end());
  return r;
}

void dissect(const AdjacencyGraph& g, std::vector<int> nodes, int depth,
             std::vector<std::vector<int>>& blocks, std::vector<int>& separator) {
  if (nodes.empty()) return;
  if (depth == 0 || nodes.size() == 1) {
    blocks.push_back(std::move(nodes));
    return;
  }
  SplitResult s = bisect(g, nodes);
  if (s.left.empty() || s.right.empty()) {
    // Degenerate split: stop refining this piece.
    blocks.push_back(std::move(nodes));
    return;
  }
  separator.insert(separator.end(), s.separator.begin(), s.separator.end());
  dissect(g, std::move(s.left), depth - 1, blocks, separator);
  dissect(g, std::move(s.right), depth - 1, blocks, separator);
}

}  // namespace

SeparatorPartition nested_dissection(const AdjacencyGraph& g, int target_blocks) {
  if (target_blocks < 1 || target_blocks > std::max(g.n, 1)) {
    throw std::invalid_argument("nested_dissection: target_blocks out of range");
  }
  SeparatorPartition part;
  if (target_blocks == 1 || g.n <= 1) {
    part.permutation = Permutation::identity(g.n);
    part.block_ranges = {{0, g.n}};
    part.separator_range = {g.n, g.n};
    return part;
  }
  int depth = 0;
  while ((1 << depth) < target_blocks) ++depth;

  std::vector<int> all(g.n);
  for (int i = 0; i < g.n; ++i) all[i] = i;
  std::vector<std::vector<int>> blocks;
  std::vector<int> separator;
  dissect(g, std::move(all), depth, blocks, separator);
  std::sort(separator.begin(), separator.end());

  std::vector<int> fwd;
  fwd.reserve(g.n);
  for (const auto& b : blocks) {
    part.block_ranges.push_back(
        {static_cast<int>(fwd.size()), static_cast<int>(fwd.size() + b.size())});
    fwd.insert(fwd.end(), b.begin(), b.end());
  }
  part.separator_range = {static_cast<int>(fwd.size()), g.n};
  fwd.insert(fwd.end(), separator.begin(), separator.end());
  part.permutation = Permutation::from_forward(std::move(fwd));
  return part;
}

}  // namespace msc

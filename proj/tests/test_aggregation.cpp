#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "msc/aggregates.hpp"

using namespace msc;

TEST_CASE("aggregate_by_numbering follows the worked-example split") {
  AggregateSet a = aggregate_by_numbering(16, {2, 3, 4, 2, 2, 3});
  REQUIRE(a.count() == 6);
  CHECK(a.g_ranges[0] == std::pair<int, int>{0, 2});
  CHECK(a.g_ranges[1] == std::pair<int, int>{2, 5});
  CHECK(a.g_ranges[2] == std::pair<int, int>{5, 9});
  CHECK(a.g_ranges[3] == std::pair<int, int>{9, 11});  // the 4th aggregate
  CHECK(a.g_ranges[4] == std::pair<int, int>{11, 13});
  CHECK(a.g_ranges[5] == std::pair<int, int>{13, 16});
  CHECK(a.d_sets[3] == std::vector<int>{9, 10});

  AggregateSet single = aggregate_by_numbering(5, {5});
  CHECK(single.count() == 1);
  CHECK(single.g_ranges[0] == std::pair<int, int>{0, 5});

  AggregateSet singletons = aggregate_by_numbering(6, {1, 1, 1, 1, 1, 1});
  CHECK(singletons.count() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(singletons.g_ranges[i] == std::pair<int, int>{i, i + 1});
  }

  CHECK_THROWS_AS(aggregate_by_numbering(6, {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(aggregate_by_numbering(4, {2, 0, 2}), std::invalid_argument);
}

TEST_CASE("aggregation covers the block and numbering is disjoint") {
  for (auto sizes : {std::vector<int>{4, 4, 4}, std::vector<int>{1, 5, 6},
                     std::vector<int>{12}}) {
    AggregateSet a = aggregate_by_numbering(12, sizes);
    std::set<int> seen;
    for (auto [b, e] : a.g_ranges) {
      for (int i = b; i < e; ++i) {
        CHECK(!seen.count(i));  // disjoint
        seen.insert(i);
      }
    }
    CHECK(seen.size() == 12);  // coverage
  }
}

TEST_CASE("aggregate_overlapped") {
  SUBCASE("zero widths degenerate to plain numbering") {
    AggregateSet plain = aggregate_by_numbering(10, {5, 5});
    AggregateSet zero = aggregate_overlapped(10, {5, 5}, {0, 0});
    CHECK(zero.g_ranges == plain.g_ranges);
    CHECK(zero.d_sets == plain.d_sets);
    CHECK(zero.span(0) == plain.g_ranges[0]);
  }

  SUBCASE("spans extend into the successor") {
    AggregateSet a = aggregate_overlapped(6, {3, 3}, {2, 0});
    CHECK(a.span(0) == std::pair<int, int>{0, 5});  // {0..4}
    CHECK(a.span(1) == std::pair<int, int>{3, 6});  // {3..5}
    CHECK(a.d_sets[0] == std::vector<int>{0, 1, 2, 3, 4});
    // Consecutive aggregates share exactly w_0 indices.
    std::set<int> s0(a.d_sets[0].begin(), a.d_sets[0].end());
    int shared = 0;
    for (int i = a.g_ranges[1].first; i < a.g_ranges[1].second; ++i) {
      shared += s0.count(i);
    }
    CHECK(shared == 2);
  }

  SUBCASE("width bounds are enforced") {
    CHECK_THROWS_AS(aggregate_overlapped(6, {3, 3}, {3, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(aggregate_overlapped(6, {3, 3}, {2, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(aggregate_overlapped(7, {3, 4}, {-1, 0}),
                    std::invalid_argument);
  }

  SUBCASE("the overlap = sz convenience clips to the bound") {
    std::vector<int> sizes{3, 3, 3};
    std::vector<int> widths{3, 3, 3};  // requested "overlap = sz"
    CHECK(clip_overlap_widths(9, sizes, widths));
    CHECK(widths == std::vector<int>{2, 2, 0});
    AggregateSet a = aggregate_overlapped(9, sizes, widths);
    CHECK(a.span(0) == std::pair<int, int>{0, 5});
    CHECK(a.span(2) == std::pair<int, int>{6, 9});
  }
}

TEST_CASE("aggregate_by_edges on the worked-example fixture") {
  PartitionedMatrix fix = fixtures::worked_example_fixture();
  AdjacencyGraph g = build_graph(fix.C);

  AggregateSet a =
      aggregate_by_edges(g, 16, {{0, 2}, {2, 5}, {5, 9}, {9, 11}, {11, 13}, {13, 16}}, 1);
  // Radius 1 reaches exactly the same-numbered D nodes.
  CHECK(a.d_sets[3] == std::vector<int>{9, 10});
  CHECK(a.d_sets[0] == std::vector<int>{0, 1});

  // Saturation: a large radius reaches every D node of the component.
  AggregateSet sat = aggregate_by_edges(g, 16, {{0, 16}}, 99);
  CHECK(sat.d_sets[0].size() == 16);
}

TEST_CASE("aggregate_by_edges picks up shifted couplings") {
  // G node i couples to D node i+4 (and D is a 12-node path): the edge
  // scheme must find the shifted set, not the same-numbered one.
  const int p = 12, n_g = 8;
  std::vector<Triplet> t;
  for (int i = 0; i < p; ++i) {
    t.push_back({i, i, 2.0});
    if (i + 1 < p) {
      t.push_back({i, i + 1, -1.0});
      t.push_back({i + 1, i, -1.0});
    }
  }
  for (int i = 0; i < n_g; ++i) {
    t.push_back({p + i, p + i, 1.0});
    t.push_back({i + 4, p + i, 1.0});   // E entry
    t.push_back({p + i, i + 4, -1.0});  // F entry
  }
  SparseMatrix c = SparseMatrix::from_triplets(p + n_g, p + n_g, std::move(t));
  AggregateSet a = aggregate_by_edges(build_graph(c), p, {{0, 4}, {4, 8}}, 1);
  CHECK(a.d_sets[0] == std::vector<int>{4, 5, 6, 7});
  CHECK(a.d_sets[1] == std::vector<int>{8, 9, 10, 11});

  // Radius >= 1 in the symmetrized graph always reaches these through E/F.
  AggregateSet plain = aggregate_by_numbering(n_g, {4, 4});
  CHECK(a.d_sets[0] != plain.d_sets[0]);
}

TEST_CASE("aggregate_by_edges rejects uncoupled aggregates") {
  // Second G aggregate has no E/F entries at all.
  std::vector<Triplet> t{{0, 0, 1.0}, {1, 1, 1.0}, {2, 2, 1.0}, {3, 3, 1.0},
                         {0, 2, 1.0}, {2, 0, -1.0}};
  SparseMatrix c = SparseMatrix::from_triplets(4, 4, std::move(t));
  CHECK_THROWS_AS(aggregate_by_edges(build_graph(c), 2, {{0, 1}, {1, 2}}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(aggregate_by_edges(build_graph(c), 2, {{0, 2}}, 0),
                  std::invalid_argument);
}

TEST_CASE("equal_sizes gives the remainder to the last aggregate") {
  CHECK(equal_sizes(10, 3) == std::vector<int>{3, 3, 4});
  CHECK(equal_sizes(9, 3) == std::vector<int>{3, 3, 3});
  CHECK(equal_sizes(5, 8) == std::vector<int>{5});
  CHECK_THROWS_AS(equal_sizes(5, 0), std::invalid_argument);
}

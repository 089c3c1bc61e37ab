#include <doctest.h>

#include <algorithm>

#include "common/oracles.hpp"
#include "graphtd/tree_decomp.hpp"

using namespace graphtd;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

Graph cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

Graph path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
  return Graph(n, std::move(edges));
}

std::vector<std::vector<int>> sorted_bags(const TreeDecomposition& td) {
  auto bags = td.bags;
  std::sort(bags.begin(), bags.end());
  return bags;
}

}  // namespace

TEST_CASE("min_fill on cliques and cycles") {
  const auto k3 = minimize_decomposition(
      min_fill_decomposition(triangle(), Permutation::identity(3)));
  CHECK(k3.supernode_count() == 1);
  CHECK(k3.bags[0] == std::vector<int>{0, 1, 2});

  const auto c4 = minimize_decomposition(min_fill_decomposition(cycle(4), Permutation::identity(4)));
  CHECK(c4.supernode_count() == 2);
  CHECK(width(c4) == 3);
  CHECK(sorted_bags(c4) == std::vector<std::vector<int>>{{0, 1, 3}, {1, 2, 3}});
  CHECK(validate_decomposition(cycle(4), c4).ok);

  CHECK_THROWS_AS(min_fill_decomposition(Graph(2, {}), Permutation::identity(2)),
                  std::invalid_argument);
}

TEST_CASE("trees decompose into their edges") {
  const Graph t = path(4);
  const auto td = minimize_decomposition(min_fill_decomposition(t, Permutation::identity(4)));
  CHECK(width(td) == 2);
  CHECK(td.supernode_count() == 3);
  CHECK(validate_decomposition(t, td).ok);
  CHECK(is_minimal_decomposition(td));
}

TEST_CASE("minimize merges nested bags") {
  // Chain of bags {0,1} - {1} - {1,2} collapses to {0,1} - {1,2}.
  TreeDecomposition td;
  td.tree.r = 3;
  td.tree.root = 0;
  td.tree.parent = {-1, 0, 1};
  td.bags = {{0, 1}, {1}, {1, 2}};
  const auto merged = minimize_decomposition(td);
  CHECK(merged.supernode_count() == 2);
  CHECK(sorted_bags(merged) == std::vector<std::vector<int>>{{0, 1}, {1, 2}});
  CHECK(validate_decomposition(path(3), merged).ok);

  TreeDecomposition pair;
  pair.tree.r = 2;
  pair.tree.root = 0;
  pair.tree.parent = {-1, 0};
  pair.bags = {{0, 1}, {0, 1, 2}};
  const auto one = minimize_decomposition(pair);
  CHECK(one.supernode_count() == 1);
  CHECK(one.bags[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("minimize is idempotent") {
  Rng rng(41);
  for (int it = 0; it < 60; ++it) {
    const int n = rng.range(1, 20);
    const Graph g = oracle::random_connected_graph(rng, n, rng.range(0, 10));
    const auto once =
        minimize_decomposition(min_fill_decomposition(g, oracle::random_permutation(rng, n)));
    const auto twice = minimize_decomposition(once);
    CHECK(once.supernode_count() == twice.supernode_count());
    CHECK(sorted_bags(once) == sorted_bags(twice));
    CHECK(is_minimal_decomposition(once));
  }
}

TEST_CASE("validate_decomposition catches violations") {
  CHECK(validate_decomposition(triangle(), TreeDecomposition{{1, 0, {-1}}, {{0, 1, 2}}}).ok);

  // C4 with bags missing the closing edge.
  TreeDecomposition bad;
  bad.tree.r = 3;
  bad.tree.root = 0;
  bad.tree.parent = {-1, 0, 1};
  bad.bags = {{0, 1}, {1, 2}, {2, 3}};
  const auto report = validate_decomposition(cycle(4), bad);
  CHECK_FALSE(report.ok);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].find("(0, 3)") != std::string::npos);

  // Node 0 appears in the two end bags but not the middle one.
  TreeDecomposition split;
  split.tree.r = 3;
  split.tree.root = 0;
  split.tree.parent = {-1, 0, 1};
  split.bags = {{0, 1}, {1, 2}, {0, 2}};
  const auto report2 = validate_decomposition(Graph(3, {{0, 1}, {1, 2}, {0, 2}}), split);
  CHECK_FALSE(report2.ok);
  CHECK(report2.violations[0].find("node 0") != std::string::npos);
}

TEST_CASE("width") {
  CHECK(width(TreeDecomposition{{1, 0, {-1}}, {{0, 1, 2}}}) == 3);
  const Graph t = path(4);
  const auto td = minimize_decomposition(min_fill_decomposition(t, Permutation::identity(4)));
  CHECK(width(td) == 2);
}

TEST_CASE("bfs_layer_decomposition") {
  const auto p3 = bfs_layer_decomposition(path(3), 0);
  CHECK(sorted_bags(p3) == std::vector<std::vector<int>>{{0, 1}, {1, 2}});
  CHECK(validate_decomposition(path(3), p3).ok);

  const Graph st(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const auto star_td = bfs_layer_decomposition(st, 0);
  CHECK(star_td.supernode_count() == 1);
  CHECK(star_td.bags[0] == std::vector<int>{0, 1, 2, 3, 4});

  const auto c6 = bfs_layer_decomposition(cycle(6), 0);
  CHECK(width(c6) == 4);
  CHECK(validate_decomposition(cycle(6), c6).ok);

  const auto single = bfs_layer_decomposition(Graph(1, {}), 0);
  CHECK(single.supernode_count() == 1);
  CHECK(single.bags[0] == std::vector<int>{0});
}

TEST_CASE("random decompositions validate and satisfy the bounds") {
  Rng rng(42);
  for (int it = 0; it < 120; ++it) {
    const int n = rng.range(1, 30);
    const Graph g = oracle::random_connected_graph(rng, n, rng.range(0, 15));
    const auto raw = min_fill_decomposition(g, oracle::random_permutation(rng, n));
    CHECK(validate_decomposition(g, raw).ok);
    const auto td = minimize_decomposition(raw);
    CHECK(validate_decomposition(g, td).ok);
    const int k = width(td);
    CHECK(td.supernode_count() <= n - k + 1);
    CHECK(width(raw) == k);

    const int root = rng.range(0, n - 1);
    const auto layered = bfs_layer_decomposition(g, root);
    CHECK(validate_decomposition(g, layered).ok);
    size_t max_layer = 0;
    for (const auto& layer : bfs_layers(g, root, Permutation::identity(n)))
      max_layer = std::max(max_layer, layer.size());
    CHECK(width(layered) <= 2 * static_cast<int>(max_layer));
  }
}

TEST_CASE("decomposition text round trip") {
  const Graph g = cycle(5);
  const auto td = minimize_decomposition(min_fill_decomposition(g, Permutation::identity(5)));
  const auto back = decomposition_from_text(to_text(td));
  CHECK(back.tree.parent == td.tree.parent);
  CHECK(back.bags == td.bags);
  CHECK_THROWS_AS(decomposition_from_text("nope"), std::invalid_argument);
}

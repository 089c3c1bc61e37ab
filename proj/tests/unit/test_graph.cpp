#include <doctest.h>

#include <set>

#include "common/oracles.hpp"
#include "graphtd/graph.hpp"
#include "graphtd/rng.hpp"

using namespace graphtd;

namespace {

Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

Graph path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
  return Graph(n, std::move(edges));
}

Graph cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(edges));
}

Graph star(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, std::move(edges));
}

}  // namespace

TEST_CASE("parse_edge_list basics") {
  const Graph g = parse_edge_list("n 3\n0 1\n1 2\n");
  CHECK(g.node_count() == 3);
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

  const Graph dup = parse_edge_list("0 1\n1 0\n");
  CHECK(dup.node_count() == 2);
  CHECK(dup.edge_count() == 1);

  CHECK_THROWS_AS(parse_edge_list("0 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edge_list("0 x\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_edge_list("n 2\n0 5\n"), std::invalid_argument);

  const Graph commented = parse_edge_list("# hello\n\nn 2\n0 1\n");
  CHECK(commented.node_count() == 2);
}

TEST_CASE("edge list round trip") {
  Rng rng(11);
  for (int it = 0; it < 25; ++it) {
    const Graph g = oracle::random_connected_graph(rng, rng.range(1, 20), rng.range(0, 10));
    CHECK(parse_edge_list(to_edge_list(g)) == g);
  }
}

TEST_CASE("bfs_layers") {
  const auto id3 = Permutation::identity(3);
  CHECK(bfs_layers(path(3), 0, id3) ==
        std::vector<std::vector<int>>{{0}, {1}, {2}});
  CHECK(bfs_layers(triangle(), 0, id3) == std::vector<std::vector<int>>{{0}, {1, 2}});
  // Star with center 0 and leaves 1..4, rooted at a leaf.
  CHECK(bfs_layers(star(4), 1, Permutation::identity(5)) ==
        std::vector<std::vector<int>>{{1}, {0}, {2, 3, 4}});
  CHECK_THROWS_AS(bfs_layers(Graph(2, {}), 0, Permutation::identity(2)), std::invalid_argument);
}

TEST_CASE("bfs_layers partition the nodes") {
  Rng rng(12);
  for (int it = 0; it < 30; ++it) {
    const int n = rng.range(2, 30);
    const Graph g = oracle::random_connected_graph(rng, n, rng.range(0, 12));
    const auto layers = bfs_layers(g, rng.range(0, n - 1), oracle::random_permutation(rng, n));
    size_t total = 0;
    std::set<int> seen;
    for (const auto& layer : layers) {
      total += layer.size();
      seen.insert(layer.begin(), layer.end());
    }
    CHECK(total == static_cast<size_t>(n));
    CHECK(seen.size() == static_cast<size_t>(n));
  }
}

TEST_CASE("is_connected") {
  CHECK(is_connected(triangle()));
  CHECK_FALSE(is_connected(Graph(2, {})));
  // Two triangles joined by one edge.
  const Graph two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  CHECK(is_connected(two));
  CHECK(is_connected(Graph(1, {})));
  CHECK(is_connected(Graph(0, {})));
}

TEST_CASE("diameter") {
  CHECK(diameter(Graph(1, {})) == 0);
  CHECK(diameter(path(5)) == 4);
  CHECK(diameter(cycle(6)) == 3);
  CHECK_THROWS_AS(diameter(Graph(2, {})), std::invalid_argument);
}

TEST_CASE("diameter equals max eccentricity from layers") {
  Rng rng(13);
  for (int it = 0; it < 20; ++it) {
    const int n = rng.range(2, 25);
    const Graph g = oracle::random_connected_graph(rng, n, rng.range(0, 8));
    int best = 0;
    for (int root = 0; root < n; ++root) {
      const auto layers = bfs_layers(g, root, Permutation::identity(n));
      best = std::max(best, static_cast<int>(layers.size()) - 1);
    }
    CHECK(diameter(g) == best);
  }
}

TEST_CASE("graph_isomorphic") {
  const Graph k3_relabeled(3, {{2, 1}, {0, 2}, {1, 0}});
  CHECK(graph_isomorphic(triangle(), k3_relabeled));
  CHECK_FALSE(graph_isomorphic(path(4), star(3)));

  std::vector<std::pair<int, int>> two_triangles{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}};
  CHECK_FALSE(graph_isomorphic(cycle(6), Graph(6, two_triangles)));
}

TEST_CASE("relabeled graphs stay isomorphic") {
  Rng rng(14);
  for (int it = 0; it < 30; ++it) {
    const int n = rng.range(1, 10);
    const Graph g = oracle::random_connected_graph(rng, n, rng.range(0, 6));
    const Graph h = relabel(g, oracle::random_permutation(rng, n));
    CHECK(graph_isomorphic(g, h));
    CHECK(oracle::brute_force_isomorphic(g, h));
  }
}

TEST_CASE("graph_isomorphic agrees with brute force on random pairs") {
  Rng rng(15);
  for (int it = 0; it < 60; ++it) {
    const int n = rng.range(2, 7);
    const Graph a = oracle::random_connected_graph(rng, n, rng.range(0, 5));
    const Graph b = oracle::random_connected_graph(rng, n, rng.range(0, 5));
    CHECK(graph_isomorphic(a, b) == oracle::brute_force_isomorphic(a, b));
  }
}

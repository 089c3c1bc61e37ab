#include <doctest.h>

#include <algorithm>

#include "common/oracles.hpp"
#include "graphtd/tree_canon.hpp"

using namespace graphtd;

namespace {

Graph path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
  return Graph(n, std::move(edges));
}

Graph star(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph(leaves + 1, std::move(edges));
}

}  // namespace

TEST_CASE("canonical names of small trees") {
  const auto p2 = RootedTree::from_graph(path(2), 0);
  CHECK(canonical_name(p2, 1) == "ab");
  CHECK(canonical_name(p2, 0) == "aabb");
  const auto p2b = RootedTree::from_graph(path(2), 1);
  CHECK(canonical_name(p2b, 1) == "aabb");

  const auto k13 = RootedTree::from_graph(star(3), 0);
  CHECK(canonical_name(k13, 0) == "aabababb");
}

TEST_CASE("name comparison ranks deeper subtrees higher") {
  // "aabb" is a two-node chain, "ab" a leaf; the chain outranks the leaf.
  CHECK(name_greater("aabb", "ab"));
  CHECK(name_less("ab", "aabb"));
  CHECK(name_greater("aababb", "aabb"));  // two leaves outrank one
  CHECK_FALSE(name_less("ab", "ab"));
}

TEST_CASE("canonical name invariants on random trees") {
  Rng rng(21);
  for (int it = 0; it < 1000; ++it) {
    const int n = rng.range(1, 50);
    const Graph t = oracle::random_tree(rng, n);
    const int root = canonical_root(t);
    const auto rooted = RootedTree::from_graph(t, root);
    const auto names = canonical_names(rooted);

    // Subtree sizes by counting descendants.
    std::vector<int> size(n, 1);
    const auto order = canonical_order(rooted);
    for (auto it2 = order.rbegin(); it2 != order.rend(); ++it2)
      if (rooted.parent[*it2] >= 0) size[rooted.parent[*it2]] += size[*it2];

    for (int v = 0; v < n; ++v) {
      CHECK(names[v].size() == 2 * static_cast<size_t>(size[v]));
      int balance = 0;
      for (size_t i = 0; i + 1 < names[v].size(); ++i) {
        balance += names[v][i] == 'a' ? 1 : -1;
        CHECK(balance > 0);
      }
      CHECK(std::count(names[v].begin(), names[v].end(), 'a') ==
            std::count(names[v].begin(), names[v].end(), 'b'));
    }
  }
}

TEST_CASE("canonical_root picks the center") {
  CHECK(canonical_root(path(5)) == 2);
  CHECK(canonical_root(path(2)) == 0);  // names tie; smaller id
  CHECK(canonical_root(star(4)) == 0);
  CHECK_THROWS_AS(canonical_root(Graph(3, {{0, 1}})), std::invalid_argument);
}

TEST_CASE("canonical_root equivariance") {
  Rng rng(22);
  for (int it = 0; it < 300; ++it) {
    const int n = rng.range(1, 30);
    const Graph t = oracle::random_tree(rng, n);
    const Permutation sigma = oracle::random_permutation(rng, n);
    const Graph relabeled = relabel(t, sigma);

    const int r1 = canonical_root(t);
    const int r2 = canonical_root(relabeled);
    const auto centers = tree_centers(t);
    if (centers.size() == 1) {
      CHECK(r2 == sigma.order[r1]);
      continue;
    }
    // With two centers the id tie-break may land on either center when the
    // rooted names tie, but the rooted canonical name is always the same.
    const auto name_of = [](const Graph& tree, int root) {
      return canonical_name(RootedTree::from_graph(tree, root), root);
    };
    CHECK(name_of(relabeled, r2) == name_of(t, r1));
    CHECK((r2 == sigma.order[centers[0]] || r2 == sigma.order[centers[1]]));
  }
}

TEST_CASE("canonical_order of small trees") {
  const Graph single(1, {});
  CHECK(canonical_order(RootedTree::from_graph(single, 0)) == std::vector<int>{0});

  const auto k13 = RootedTree::from_graph(star(3), 0);
  CHECK(canonical_order(k13) == std::vector<int>{0, 1, 2, 3});

  // P5 rooted at its center: child then its leaf, then the other child.
  const auto p5 = RootedTree::from_graph(path(5), 2);
  CHECK(canonical_order(p5) == std::vector<int>{2, 1, 0, 3, 4});
}

TEST_CASE("tree_isomorphic") {
  Rng rng(23);
  const Graph p5 = path(5);
  Graph shuffled = relabel(p5, oracle::random_permutation(rng, 5));
  CHECK(tree_isomorphic(p5, shuffled));
  CHECK_FALSE(tree_isomorphic(path(4), star(3)));
  CHECK_THROWS_AS(tree_isomorphic(Graph(3, {{0, 1}}), path(3)), std::invalid_argument);
}

TEST_CASE("tree_isomorphic agrees with brute force") {
  // Exhaustive over all labeled tree pairs up to 5 nodes.
  for (int n = 1; n <= 5; ++n) {
    const auto trees = oracle::all_labeled_trees(n);
    for (size_t i = 0; i < trees.size(); ++i)
      for (size_t j = i; j < trees.size(); ++j)
        CHECK(tree_isomorphic(trees[i], trees[j]) ==
              oracle::brute_force_isomorphic(trees[i], trees[j]));
  }
  // Random pairs at 6 and 7 nodes.
  Rng rng(24);
  for (int it = 0; it < 200; ++it) {
    const int n = rng.range(6, 7);
    const Graph a = oracle::random_tree(rng, n);
    const Graph b = oracle::random_tree(rng, n);
    CHECK(tree_isomorphic(a, b) == oracle::brute_force_isomorphic(a, b));
  }
}

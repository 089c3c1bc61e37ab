#include <doctest.h>

#include <algorithm>
#include <set>

#include "common/oracles.hpp"
#include "graphtd/plr.hpp"

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

TEST_CASE("plr_encode on small trees") {
  CHECK(plr_encode(Graph(1, {})).lengths == std::vector<int>{0});
  CHECK(plr_encode(star(3)).lengths == std::vector<int>{1, 1, 1, 0});
  CHECK(plr_encode(path(5)).lengths == std::vector<int>{2, 0, 2, 0, 0});
  CHECK(plr_encode(path(4)).lengths == std::vector<int>{2, 0, 1, 0});
}

TEST_CASE("plr_decode_prefix") {
  const auto partial = plr_decode_prefix({2});
  CHECK(partial.tree.r == 3);
  CHECK_FALSE(partial.complete);
  CHECK(partial.extending_node == 1);  // the parent of the new leaf

  const auto star_dec = plr_decode_prefix({1, 1, 1, 0});
  CHECK(star_dec.complete);
  CHECK(tree_isomorphic(star_dec.tree.to_graph(), star(3)));

  const auto p5_dec = plr_decode_prefix({2, 0, 2, 0, 0});
  CHECK(p5_dec.complete);
  CHECK(tree_isomorphic(p5_dec.tree.to_graph(), path(5)));

  CHECK_THROWS_AS(plr_decode_prefix({1, 2, 0, 0}), std::invalid_argument);
}

TEST_CASE("plr_bounds frozen cases") {
  const auto empty = plr_bounds({}, 10);
  CHECK(empty.lower == 1);
  CHECK(empty.upper == 10);
  CHECK(empty.terminal_zero_allowed);

  // After [2] the extension point sits above a single leaf; the left
  // brother caps the new sibling's subtree at one node.
  const auto deeper = plr_bounds({2}, 10);
  CHECK(deeper.lower == 0);
  CHECK(deeper.upper == 1);
  CHECK_FALSE(deeper.terminal_zero_allowed);

  // Second root branch must nearly match the first descent.
  const auto second = plr_bounds({2, 0}, 10);
  CHECK(second.lower == 1);
  CHECK(second.upper == 2);
  CHECK_FALSE(second.terminal_zero_allowed);
}

TEST_CASE("plr_is_valid") {
  CHECK(plr_is_valid({0}));
  CHECK_FALSE(plr_is_valid({1}));
  CHECK_FALSE(plr_is_valid({1, 2, 0, 0}));
  CHECK(plr_is_valid({1, 0}));
  CHECK(plr_is_valid({2, 0, 1, 0}));
  CHECK_FALSE(plr_is_valid({2, 0, 0}));  // path rooted at an end
  CHECK(plr_is_valid({2, 1, 0, 1, 0}));
  CHECK_FALSE(plr_is_valid({2, 0, 1, 1, 0}));  // root minus first branch outgrows it
  CHECK_FALSE(plr_is_valid({0, 0}));
}

TEST_CASE("enumerate_valid_plrs matches the labeled-tree oracle") {
  const std::vector<int> expected = {1, 1, 1, 2, 3, 6, 11};
  for (int r = 1; r <= 7; ++r) {
    const auto plrs = enumerate_valid_plrs(r);
    CHECK(static_cast<int>(plrs.size()) == expected[r - 1]);
    CHECK(static_cast<int>(plrs.size()) == oracle::tree_class_count(r));
  }
  CHECK(enumerate_valid_plrs(1) == std::vector<Plr>{Plr{{0}}});
  CHECK_THROWS_AS(enumerate_valid_plrs(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_valid_plrs(10), std::invalid_argument);
}

TEST_CASE("enumeration agrees with direct validation over all short sequences") {
  // Brute force every sequence of length r with entries in 0..r-1.
  for (int r = 1; r <= 6; ++r) {
    std::set<std::vector<int>> from_filter;
    std::vector<int> seq(r, 0);
    while (true) {
      if (plr_is_valid(seq)) from_filter.insert(seq);
      int i = r - 1;
      while (i >= 0 && seq[i] == r - 1) seq[i--] = 0;
      if (i < 0) break;
      ++seq[i];
    }
    std::set<std::vector<int>> from_enum;
    for (const auto& p : enumerate_valid_plrs(r)) from_enum.insert(p.lengths);
    CHECK(from_enum == from_filter);
  }
}

TEST_CASE("each enumerated PLR decodes to a distinct tree class") {
  for (int r = 4; r <= 7; ++r) {
    const auto plrs = enumerate_valid_plrs(r);
    std::vector<Graph> decoded;
    for (const auto& p : plrs) {
      const auto dec = plr_decode_prefix(p.lengths);
      REQUIRE(dec.complete);
      decoded.push_back(dec.tree.to_graph());
    }
    for (size_t i = 0; i < decoded.size(); ++i)
      for (size_t j = i + 1; j < decoded.size(); ++j)
        CHECK_FALSE(oracle::brute_force_isomorphic(decoded[i], decoded[j]));
  }
}

TEST_CASE("round trip and permutation invariance on random trees") {
  Rng rng(31);
  for (int it = 0; it < 400; ++it) {
    const int n = rng.range(1, 50);
    const Graph t = oracle::random_tree(rng, n);
    const Plr plr = plr_encode(t);
    CHECK(plr.lengths.size() == static_cast<size_t>(n));
    CHECK(plr_is_valid(plr.lengths));

    const auto decoded = plr_decode_prefix(plr.lengths);
    CHECK(decoded.complete);
    CHECK(tree_isomorphic(decoded.tree.to_graph(), t));

    const Graph shuffled = relabel(t, oracle::random_permutation(rng, n));
    CHECK(plr_encode(shuffled) == plr);
  }
}

TEST_CASE("leaf and internal counts match nonzero and zero entries") {
  Rng rng(32);
  for (int it = 0; it < 200; ++it) {
    const int n = rng.range(2, 40);
    const Graph t = oracle::random_tree(rng, n);
    const Plr plr = plr_encode(t);
    const auto decoded = plr_decode_prefix(plr.lengths);
    const auto children = decoded.tree.children();
    int leaves = 0;
    for (int v = 0; v < decoded.tree.r; ++v)
      if (children[v].empty()) ++leaves;
    const int nonzero =
        static_cast<int>(std::count_if(plr.lengths.begin(), plr.lengths.end(),
                                       [](int x) { return x > 0; }));
    CHECK(nonzero == leaves);
    CHECK(static_cast<int>(plr.lengths.size()) - nonzero == decoded.tree.r - leaves);
  }
}

TEST_CASE("plr string round trip") {
  const Plr p{{2, 0, 2, 0, 0}};
  CHECK(plr_to_string(p) == "2,0,2,0,0");
  CHECK(plr_from_string("2,0,2,0,0") == p);
  CHECK_THROWS_AS(plr_from_string("2,x"), std::invalid_argument);
  CHECK_THROWS_AS(plr_from_string(""), std::invalid_argument);
}

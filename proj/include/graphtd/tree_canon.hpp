#pragma once

#include <string>
#include <vector>

#include "graphtd/graph.hpp"

namespace graphtd {

/// Rooted tree over node ids 0..r-1, stored as a parent array.
struct RootedTree {
  int r = 0;
  int root = 0;
  std::vector<int> parent;  // parent[root] == -1

  std::vector<std::vector<int>> children() const;
  static RootedTree from_graph(const Graph& tree, int root);
  Graph to_graph() const;
};

/// Names are strings over {a, b}; a leaf is "ab" and an internal node is
/// "a" + children names in non-increasing order + "b". Comparison treats
/// 'a' as ranking above 'b', so a taller subtree always outranks a
/// shorter one and the leading run of 'a's has length height+1.
bool name_less(const std::string& x, const std::string& y);
inline bool name_greater(const std::string& x, const std::string& y) {
  return name_less(y, x);
}

/// Canonical name of every node of t (indexed by node id).
std::vector<std::string> canonical_names(const RootedTree& t);
std::string canonical_name(const RootedTree& t, int v);

/// Centers of an unrooted tree (one or two), sorted by id.
std::vector<int> tree_centers(const Graph& tree);

/// The center; with two centers, the one whose rooted name is greater,
/// and the smaller id when the names tie. Throws if the input is not a tree.
int canonical_root(const Graph& tree);

/// DFS preorder from the root, visiting children in non-increasing name
/// order; equal-name siblings are visited in id order.
std::vector<int> canonical_order(const RootedTree& t);

/// True iff the rooted canonical names from the canonical roots match.
bool tree_isomorphic(const Graph& t1, const Graph& t2);

bool is_tree(const Graph& g);

}  // namespace graphtd

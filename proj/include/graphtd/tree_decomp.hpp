#pragma once

#include <string>
#include <vector>

#include "graphtd/graph.hpp"
#include "graphtd/tree_canon.hpp"

namespace graphtd {

/// Tree over supernodes plus one bag of graph node ids per supernode.
/// Bags are sorted. The tree is rooted at its canonical root.
struct TreeDecomposition {
  RootedTree tree;
  std::vector<std::vector<int>> bags;

  int supernode_count() const { return tree.r; }
};

struct DecompositionReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Fill-in heuristic: repeatedly eliminates the node whose neighborhood
/// needs the fewest fill edges (ties broken by tie_order), one bag per
/// elimination, each bag linked to the bag of the earliest-eliminated
/// remaining member. Throws on disconnected input.
TreeDecomposition min_fill_decomposition(const Graph& g, const Permutation& tie_order);

/// Merges adjacent bags where one contains the other, scanning supernodes
/// in canonical-name order and rescanning after every merge until none
/// remain. Width is preserved.
TreeDecomposition minimize_decomposition(const TreeDecomposition& td);

/// True iff no bag is contained in an adjacent bag.
bool is_minimal_decomposition(const TreeDecomposition& td);

/// Checks node coverage, edge coverage and running intersection;
/// violations carry a witness each.
DecompositionReport validate_decomposition(const Graph& g, const TreeDecomposition& td);

/// Largest bag size (this codebase counts bag size, not size minus one).
int width(const TreeDecomposition& td);

/// Path-shaped decomposition with bags of consecutive BFS layers.
/// Width is at most twice the largest layer.
TreeDecomposition bfs_layer_decomposition(const Graph& g, int root);

std::string to_text(const TreeDecomposition& td);
TreeDecomposition decomposition_from_text(const std::string& text);

}  // namespace graphtd

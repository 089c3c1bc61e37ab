#pragma once

// Independent oracles for property and acceptance tests. Everything here
// is deliberately brute force and kept separate from the library code it
// checks.

#include <array>
#include <cstdint>
#include <vector>

#include "graphtd/graph.hpp"
#include "graphtd/rng.hpp"

namespace graphtd::oracle {

/// Labeled tree from a Pruefer sequence (length n-2, entries in 0..n-1).
Graph prufer_tree(const std::vector<int>& seq, int n);

/// All labeled trees on n nodes via Pruefer enumeration (n <= 7).
std::vector<Graph> all_labeled_trees(int n);

/// Exhaustive bijection search over all node mappings, degree-pruned.
bool brute_force_isomorphic(const Graph& a, const Graph& b);

/// Number of tree isomorphism classes on n nodes, by bucketing all
/// labeled trees against brute-force-matched representatives.
int tree_class_count(int n);

/// Per-node orbit counts of connected four-node subgraphs, classified by
/// permutation closure over reference graphlets rather than degree rules.
std::vector<std::int64_t> orbit4_census(const Graph& g);

/// Uniform random labeled tree (random Pruefer sequence).
Graph random_tree(Rng& rng, int n);

/// Random connected graph: a random spanning tree plus extra random edges.
Graph random_connected_graph(Rng& rng, int n, int extra_edges);

Permutation random_permutation(Rng& rng, int n);

}  // namespace graphtd::oracle

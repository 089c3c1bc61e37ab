#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphtd/graph.hpp"
#include "graphtd/plr.hpp"
#include "graphtd/tree_decomp.hpp"

namespace graphtd {

/// Decisions for one supernode, in the order they are replayed.
/// sharing has one bit per parent-bag member (parent member order) and is
/// empty for the root. edge_bits holds one row per added node; row i has
/// one bit per bag member present before that node (shared members first,
/// then earlier additions). The first add of every supernode is implicit
/// and each supernode ends with an uncharged structural stop.
struct SupernodeDecisions {
  std::vector<uint8_t> sharing;
  std::vector<std::vector<uint8_t>> edge_bits;
};

struct DecisionSequence {
  Plr tree_plr;
  std::vector<SupernodeDecisions> supernodes;
  bool operator==(const DecisionSequence&) const = default;
};

struct DecisionCounts {
  std::int64_t tree_steps = 0;
  std::int64_t sharing_steps = 0;
  std::int64_t add_steps = 0;  // explicit node additions (first-of-bag and stops excluded)
  std::int64_t edge_steps = 0;
};

/// Encodes (g, perm): min-fill + minimize under perm, canonical rooting,
/// then per supernode in canonical order the sharing bits, the added
/// nodes (in perm order) and their edge bits. decode_graph inverts it up
/// to isomorphism. Throws on disconnected input.
DecisionSequence encode_graph(const Graph& g, const Permutation& perm);

/// Replays a decision sequence into a graph with fresh sequential ids.
/// Throws on malformed bit lengths, empty sharing sets or zero-node bags.
Graph decode_graph(const DecisionSequence& ds);

/// The decomposition the sequence replays to (bags over decoded node ids).
TreeDecomposition replay_decomposition(const DecisionSequence& ds);

DecisionCounts decision_counts(const DecisionSequence& ds);

enum class NodeOrdering { Bfs, Dfs };

/// Upper-triangle adjacency bits, row-wise, after reordering nodes by a
/// BFS or DFS from perm's first node with ties broken by perm.
std::vector<uint8_t> adjacency_sequence(const Graph& g, const Permutation& perm,
                                        NodeOrdering ordering);

enum class SequenceMethod { TD, BFS, DFS };

/// Number of distinct serializations over n_perms seeded permutations.
std::int64_t unique_sequence_count(const Graph& g, int n_perms, SequenceMethod method,
                                   uint64_t seed);

/// Line-oriented text form (one section per supernode).
std::string to_text(const DecisionSequence& ds);
DecisionSequence decision_sequence_from_text(const std::string& text);

/// Compact canonical byte form used for distinctness counting.
std::string to_bytes(const DecisionSequence& ds);

}  // namespace graphtd

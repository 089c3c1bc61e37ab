#pragma once

#include <string>
#include <utility>
#include <vector>

namespace graphtd {

/// Undirected simple graph over dense node ids 0..n-1.
/// Edges are kept sorted and unique as (u, v) pairs with u < v.
class Graph {
 public:
  Graph() = default;
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_edge(int u, int v) const;
  std::vector<std::vector<int>> adjacency() const;
  std::vector<int> degrees() const;

  bool operator==(const Graph&) const = default;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

/// A listing of the node ids 0..n-1; order[i] is the id in position i.
struct Permutation {
  std::vector<int> order;

  static Permutation identity(int n);
  int size() const { return static_cast<int>(order.size()); }
  /// ranks()[id] = position of id in the listing.
  std::vector<int> ranks() const;
  bool valid(int n) const;
};

/// Parses the edge-list text format: optional leading "n <count>" line,
/// then one "u v" pair per line. Blank lines and lines starting with '#'
/// are ignored. Duplicate edges collapse.
Graph parse_edge_list(const std::string& text);

/// Inverse of parse_edge_list: "n <count>" then sorted "u v" lines, u < v.
std::string to_edge_list(const Graph& g);

/// Maps node v to sigma.order[v].
Graph relabel(const Graph& g, const Permutation& sigma);

/// Distance layers from root: layer d holds all nodes at distance d,
/// as a sorted id list. Neighbor visitation follows tie_order.
/// Throws on disconnected input.
std::vector<std::vector<int>> bfs_layers(const Graph& g, int root,
                                         const Permutation& tie_order);

bool is_connected(const Graph& g);

/// Maximum shortest-path distance over all pairs. Throws on disconnected
/// input; a single node has diameter 0.
int diameter(const Graph& g);

/// Exact isomorphism test by backtracking with degree pruning.
/// Intended for small instances (n <= 10); larger inputs may be slow.
bool graph_isomorphic(const Graph& a, const Graph& b);

}  // namespace graphtd

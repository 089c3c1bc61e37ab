#include "graphtd/tree_canon.hpp"

#include <algorithm>
#include <stdexcept>

namespace graphtd {

std::vector<std::vector<int>> RootedTree::children() const {
  std::vector<std::vector<int>> ch(r);
  for (int v = 0; v < r; ++v)
    if (parent[v] >= 0) ch[parent[v]].push_back(v);
  return ch;
}

RootedTree RootedTree::from_graph(const Graph& tree, int root) {
  if (!is_tree(tree)) throw std::invalid_argument("rooted tree: input is not a tree");
  const int n = tree.node_count();
  if (root < 0 || root >= n) throw std::invalid_argument("rooted tree: root out of range");
  RootedTree t;
  t.r = n;
  t.root = root;
  t.parent.assign(n, -1);
  const auto adj = tree.adjacency();
  std::vector<int> stack{root};
  std::vector<bool> seen(n, false);
  seen[root] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        t.parent[v] = u;
        stack.push_back(v);
      }
    }
  }
  return t;
}

Graph RootedTree::to_graph() const {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(r > 0 ? r - 1 : 0);
  for (int v = 0; v < r; ++v)
    if (parent[v] >= 0) edges.emplace_back(parent[v], v);
  return Graph(r, std::move(edges));
}

bool is_tree(const Graph& g) {
  return g.node_count() >= 1 && g.edge_count() == g.node_count() - 1 && is_connected(g);
}

bool name_less(const std::string& x, const std::string& y) {
  // 'a' outranks 'b'. Names are prefix-free, so the first differing
  // character decides; a shared prefix with differing lengths cannot occur
  // between two well-formed names, but std::mismatch handles it anyway.
  const auto [ix, iy] = std::mismatch(x.begin(), x.end(), y.begin(), y.end());
  if (ix == x.end()) return iy != y.end();
  if (iy == y.end()) return false;
  return *ix == 'b' && *iy == 'a';
}

std::vector<std::string> canonical_names(const RootedTree& t) {
  std::vector<std::string> names(t.r);
  const auto children = t.children();
  // Post-order without recursion; trees can be path-shaped.
  std::vector<std::pair<int, bool>> stack{{t.root, false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    if (!expanded) {
      stack.emplace_back(v, true);
      for (const int c : children[v]) stack.emplace_back(c, false);
      continue;
    }
    if (children[v].empty()) {
      names[v] = "ab";
      continue;
    }
    std::vector<const std::string*> kid_names;
    kid_names.reserve(children[v].size());
    for (const int c : children[v]) kid_names.push_back(&names[c]);
    std::sort(kid_names.begin(), kid_names.end(),
              [](const std::string* a, const std::string* b) { return name_greater(*a, *b); });
    std::string name = "a";
    for (const auto* s : kid_names) name += *s;
    name += 'b';
    names[v] = std::move(name);
  }
  return names;
}

std::string canonical_name(const RootedTree& t, int v) {
  if (v < 0 || v >= t.r) throw std::invalid_argument("canonical_name: node out of range");
  return canonical_names(t)[v];
}

std::vector<int> tree_centers(const Graph& tree) {
  if (!is_tree(tree)) throw std::invalid_argument("tree_centers: input is not a tree");
  const int n = tree.node_count();
  if (n == 1) return {0};
  auto adj = tree.adjacency();
  std::vector<int> degree(n);
  for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(adj[v].size());
  std::vector<int> frontier;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) frontier.push_back(v);
  int remaining = n;
  std::vector<bool> removed(n, false);
  while (remaining > 2) {
    std::vector<int> next;
    for (const int v : frontier) {
      removed[v] = true;
      --remaining;
      for (const int u : adj[v]) {
        if (!removed[u] && --degree[u] == 1) next.push_back(u);
      }
    }
    frontier = std::move(next);
  }
  std::vector<int> centers;
  for (int v = 0; v < n; ++v)
    if (!removed[v]) centers.push_back(v);
  return centers;
}

int canonical_root(const Graph& tree) {
  const auto centers = tree_centers(tree);
  if (centers.size() == 1) return centers[0];
  const auto t1 = RootedTree::from_graph(tree, centers[0]);
  const auto t2 = RootedTree::from_graph(tree, centers[1]);
  const auto name1 = canonical_name(t1, centers[0]);
  const auto name2 = canonical_name(t2, centers[1]);
  if (name_greater(name1, name2)) return centers[0];
  if (name_greater(name2, name1)) return centers[1];
  return std::min(centers[0], centers[1]);
}

std::vector<int> canonical_order(const RootedTree& t) {
  const auto names = canonical_names(t);
  auto children = t.children();
  for (auto& ch : children) {
    std::sort(ch.begin(), ch.end(), [&](int a, int b) {
      if (names[a] != names[b]) return name_greater(names[a], names[b]);
      return a < b;
    });
  }
  std::vector<int> order;
  order.reserve(t.r);
  std::vector<int> stack{t.root};
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
  }
  return order;
}

bool tree_isomorphic(const Graph& t1, const Graph& t2) {
  if (!is_tree(t1) || !is_tree(t2)) throw std::invalid_argument("tree_isomorphic: non-tree input");
  if (t1.node_count() != t2.node_count()) return false;
  const int r1 = canonical_root(t1);
  const int r2 = canonical_root(t2);
  return canonical_name(RootedTree::from_graph(t1, r1), r1) ==
         canonical_name(RootedTree::from_graph(t2, r2), r2);
}

}  // namespace graphtd

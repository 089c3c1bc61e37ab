#include "graphtd/tree_decomp.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace graphtd {

namespace {

// Re-roots the decomposition tree at the canonical root of its shape.
TreeDecomposition canonically_rooted(RootedTree tree, std::vector<std::vector<int>> bags) {
  const Graph shape = tree.to_graph();
  const int root = canonical_root(shape);
  TreeDecomposition td;
  td.tree = RootedTree::from_graph(shape, root);
  td.bags = std::move(bags);
  return td;
}

}  // namespace

TreeDecomposition min_fill_decomposition(const Graph& g, const Permutation& tie_order) {
  const int n = g.node_count();
  if (n < 1) throw std::invalid_argument("min_fill: empty graph");
  if (!tie_order.valid(n)) throw std::invalid_argument("min_fill: invalid tie order");
  if (!is_connected(g)) throw std::invalid_argument("min_fill: graph is disconnected");

  const auto rank = tie_order.ranks();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& [u, v] : g.edges()) adj[u][v] = adj[v][u] = true;
  std::vector<bool> alive(n, true);

  std::vector<std::vector<int>> bags(n);
  std::vector<int> elim_step(n, -1);
  std::vector<int> eliminated(n);

  for (int step = 0; step < n; ++step) {
    int best = -1;
    long best_fill = -1;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      std::vector<int> nbrs;
      for (int u = 0; u < n; ++u)
        if (alive[u] && adj[v][u]) nbrs.push_back(u);
      long fill = 0;
      for (size_t i = 0; i < nbrs.size(); ++i)
        for (size_t j = i + 1; j < nbrs.size(); ++j)
          if (!adj[nbrs[i]][nbrs[j]]) ++fill;
      if (best < 0 || fill < best_fill ||
          (fill == best_fill && rank[v] < rank[best])) {
        best = v;
        best_fill = fill;
      }
    }

    std::vector<int> nbrs;
    for (int u = 0; u < n; ++u)
      if (alive[u] && adj[best][u]) nbrs.push_back(u);
    bags[step] = nbrs;
    bags[step].push_back(best);
    std::sort(bags[step].begin(), bags[step].end());
    for (size_t i = 0; i < nbrs.size(); ++i)
      for (size_t j = i + 1; j < nbrs.size(); ++j)
        adj[nbrs[i]][nbrs[j]] = adj[nbrs[j]][nbrs[i]] = true;
    alive[best] = false;
    elim_step[best] = step;
    eliminated[step] = best;
  }

  // Each bag links to the bag of the earliest-eliminated remaining member;
  // that bag contains the whole separator because it was made a clique here.
  RootedTree tree;
  tree.r = n;
  tree.parent.assign(n, -1);
  tree.root = n - 1;
  for (int step = 0; step < n; ++step) {
    int parent_step = -1;
    for (const int u : bags[step]) {
      if (u == eliminated[step]) continue;
      if (parent_step < 0 || elim_step[u] < parent_step) parent_step = elim_step[u];
    }
    if (parent_step >= 0) tree.parent[step] = parent_step;
  }
  return canonically_rooted(std::move(tree), std::move(bags));
}

namespace {

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool is_minimal_decomposition(const TreeDecomposition& td) {
  for (int v = 0; v < td.tree.r; ++v) {
    const int p = td.tree.parent[v];
    if (p < 0) continue;
    if (subset_of(td.bags[v], td.bags[p]) || subset_of(td.bags[p], td.bags[v])) return false;
  }
  return true;
}

TreeDecomposition minimize_decomposition(const TreeDecomposition& td) {
  if (td.tree.r < 1 || static_cast<int>(td.bags.size()) != td.tree.r)
    throw std::invalid_argument("minimize: malformed decomposition");
  for (const auto& bag : td.bags)
    if (bag.empty()) throw std::invalid_argument("minimize: empty bag");

  std::vector<int> parent = td.tree.parent;
  std::vector<std::vector<int>> bags = td.bags;
  std::vector<bool> alive(td.tree.r, true);
  int alive_count = td.tree.r;

  auto rebuild_shape = [&]() {
    // Graph over alive supernodes with compacted ids, plus the id map.
    std::vector<int> compact(parent.size(), -1);
    std::vector<int> original;
    for (size_t v = 0; v < parent.size(); ++v) {
      if (alive[v]) {
        compact[v] = static_cast<int>(original.size());
        original.push_back(static_cast<int>(v));
      }
    }
    std::vector<std::pair<int, int>> edges;
    for (size_t v = 0; v < parent.size(); ++v)
      if (alive[v] && parent[v] >= 0) edges.emplace_back(compact[v], compact[parent[v]]);
    return std::make_pair(Graph(alive_count, std::move(edges)), original);
  };

  bool merged = true;
  while (merged && alive_count > 1) {
    merged = false;
    auto [shape, original] = rebuild_shape();
    const int root = canonical_root(shape);
    const auto rooted = RootedTree::from_graph(shape, root);
    for (const int cv : canonical_order(rooted)) {
      const int v = original[cv];
      const int cp = rooted.parent[cv];
      if (cp < 0) continue;
      const int p = original[cp];
      if (!subset_of(bags[v], bags[p]) && !subset_of(bags[p], bags[v])) continue;
      // Merge v into p: union bag, contract the edge. The stored parent
      // orientation may disagree with the canonical rooting, so fix p's
      // own link before redirecting v's other neighbors.
      std::vector<int> merged_bag;
      std::set_union(bags[v].begin(), bags[v].end(), bags[p].begin(), bags[p].end(),
                     std::back_inserter(merged_bag));
      bags[p] = std::move(merged_bag);
      if (parent[p] == v) parent[p] = parent[v];
      for (size_t w = 0; w < parent.size(); ++w)
        if (alive[w] && static_cast<int>(w) != p && parent[w] == v) parent[w] = p;
      alive[v] = false;
      --alive_count;
      merged = true;
      break;
    }
  }

  auto [shape, original] = rebuild_shape();
  (void)shape;
  std::vector<int> compact(parent.size(), -1);
  for (int cv = 0; cv < alive_count; ++cv) compact[original[cv]] = cv;
  std::vector<std::vector<int>> final_bags(alive_count);
  for (int cv = 0; cv < alive_count; ++cv) final_bags[cv] = bags[original[cv]];
  RootedTree flat;
  flat.r = alive_count;
  flat.root = 0;
  flat.parent.assign(alive_count, -1);
  for (size_t v = 0; v < parent.size(); ++v)
    if (alive[v] && parent[v] >= 0) flat.parent[compact[v]] = compact[parent[v]];
  return canonically_rooted(std::move(flat), std::move(final_bags));
}

DecompositionReport validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  DecompositionReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };

  const int n = g.node_count();
  const int r = td.tree.r;
  if (static_cast<int>(td.bags.size()) != r) {
    fail("bag count does not match supernode count");
    return report;
  }

  std::vector<std::vector<int>> holders(n);
  for (int s = 0; s < r; ++s) {
    if (td.bags[s].empty()) fail("supernode " + std::to_string(s) + " has an empty bag");
    for (const int v : td.bags[s]) {
      if (v < 0 || v >= n) {
        fail("bag " + std::to_string(s) + " references node " + std::to_string(v));
        continue;
      }
      holders[v].push_back(s);
    }
  }

  for (int v = 0; v < n; ++v)
    if (holders[v].empty()) fail("node " + std::to_string(v) + " is not covered by any bag");

  for (const auto& [u, v] : g.edges()) {
    bool covered = false;
    for (const int s : holders[u]) {
      if (std::binary_search(td.bags[s].begin(), td.bags[s].end(), v)) {
        covered = true;
        break;
      }
    }
    if (!covered)
      fail("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") lies in no bag");
  }

  // Running intersection: the supernodes holding each node must induce a
  // connected subtree.
  const auto children = td.tree.children();
  for (int v = 0; v < n; ++v) {
    if (holders[v].size() <= 1) continue;
    std::vector<bool> holds(r, false);
    for (const int s : holders[v]) holds[s] = true;
    std::vector<bool> seen(r, false);
    std::vector<int> stack{holders[v][0]};
    seen[holders[v][0]] = true;
    size_t reached = 1;
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      auto visit = [&](int t) {
        if (t >= 0 && holds[t] && !seen[t]) {
          seen[t] = true;
          ++reached;
          stack.push_back(t);
        }
      };
      visit(td.tree.parent[s]);
      for (const int c : children[s]) visit(c);
    }
    if (reached != holders[v].size())
      fail("node " + std::to_string(v) + " induces a disconnected supernode set");
  }
  return report;
}

int width(const TreeDecomposition& td) {
  if (td.bags.empty()) throw std::invalid_argument("width: empty decomposition");
  size_t w = 0;
  for (const auto& bag : td.bags) w = std::max(w, bag.size());
  return static_cast<int>(w);
}

TreeDecomposition bfs_layer_decomposition(const Graph& g, int root) {
  const auto layers = bfs_layers(g, root, Permutation::identity(g.node_count()));
  const int depth = static_cast<int>(layers.size()) - 1;
  std::vector<std::vector<int>> bags;
  if (depth == 0) {
    bags.push_back(layers[0]);
  } else {
    for (int d = 1; d <= depth; ++d) {
      std::vector<int> bag;
      std::merge(layers[d - 1].begin(), layers[d - 1].end(), layers[d].begin(),
                 layers[d].end(), std::back_inserter(bag));
      bags.push_back(std::move(bag));
    }
  }
  const int r = static_cast<int>(bags.size());
  RootedTree path;
  path.r = r;
  path.root = 0;
  path.parent.assign(r, -1);
  for (int i = 1; i < r; ++i) path.parent[i] = i - 1;
  return canonically_rooted(std::move(path), std::move(bags));
}

std::string to_text(const TreeDecomposition& td) {
  std::ostringstream out;
  out << "supernodes " << td.tree.r << "\n";
  out << "root " << td.tree.root << "\n";
  out << "parents";
  for (int v = 0; v < td.tree.r; ++v) out << ' ' << td.tree.parent[v];
  out << "\n";
  for (const auto& bag : td.bags) {
    out << "bag";
    for (const int v : bag) out << ' ' << v;
    out << "\n";
  }
  return out.str();
}

TreeDecomposition decomposition_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string key;
  TreeDecomposition td;
  int r = 0;
  if (!(in >> key >> r) || key != "supernodes" || r < 1)
    throw std::invalid_argument("decomposition: bad header");
  td.tree.r = r;
  if (!(in >> key >> td.tree.root) || key != "root")
    throw std::invalid_argument("decomposition: bad root line");
  if (!(in >> key) || key != "parents") throw std::invalid_argument("decomposition: bad parents");
  td.tree.parent.resize(r);
  for (int v = 0; v < r; ++v)
    if (!(in >> td.tree.parent[v])) throw std::invalid_argument("decomposition: short parents");
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ls >> key;
    if (key != "bag") throw std::invalid_argument("decomposition: expected bag line");
    std::vector<int> bag;
    int v;
    while (ls >> v) bag.push_back(v);
    if (bag.empty()) throw std::invalid_argument("decomposition: empty bag line");
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
  }
  if (static_cast<int>(td.bags.size()) != r)
    throw std::invalid_argument("decomposition: bag count mismatch");
  return td;
}

}  // namespace graphtd

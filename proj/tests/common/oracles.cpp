#include "common/oracles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace graphtd::oracle {

Graph prufer_tree(const std::vector<int>& seq, int n) {
  if (n == 1) return Graph(1, {});
  if (n == 2) return Graph(2, {{0, 1}});
  if (static_cast<int>(seq.size()) != n - 2)
    throw std::invalid_argument("prufer: sequence length must be n-2");
  std::vector<int> degree(n, 1);
  for (const int v : seq) ++degree[v];
  std::vector<std::pair<int, int>> edges;
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  for (const int v : seq) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, v);
    if (--degree[v] == 1) leaves.insert(v);
  }
  const int a = *leaves.begin();
  const int b = *std::next(leaves.begin());
  edges.emplace_back(a, b);
  return Graph(n, std::move(edges));
}

std::vector<Graph> all_labeled_trees(int n) {
  if (n < 1 || n > 7) throw std::invalid_argument("all_labeled_trees: n must be 1..7");
  if (n <= 2) return {prufer_tree({}, n)};
  std::vector<Graph> trees;
  std::vector<int> seq(n - 2, 0);
  while (true) {
    trees.push_back(prufer_tree(seq, n));
    int i = n - 3;
    while (i >= 0 && seq[i] == n - 1) seq[i--] = 0;
    if (i < 0) break;
    ++seq[i];
  }
  return trees;
}

bool brute_force_isomorphic(const Graph& a, const Graph& b) {
  const int n = a.node_count();
  if (n != b.node_count() || a.edge_count() != b.edge_count()) return false;
  auto deg_a = a.degrees();
  auto deg_b = b.degrees();
  {
    auto sa = deg_a;
    auto sb = deg_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<int> map_ab(n, -1);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, int u) -> bool {
    if (u == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || deg_a[u] != deg_b[w]) continue;
      bool ok = true;
      for (int p = 0; p < u && ok; ++p)
        if (a.has_edge(u, p) != b.has_edge(w, map_ab[p])) ok = false;
      if (!ok) continue;
      map_ab[u] = w;
      used[w] = true;
      if (self(self, u + 1)) return true;
      used[w] = false;
      map_ab[u] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

int tree_class_count(int n) {
  const auto trees = all_labeled_trees(n);
  std::vector<Graph> representatives;
  for (const auto& t : trees) {
    bool known = false;
    for (const auto& rep : representatives) {
      if (brute_force_isomorphic(t, rep)) {
        known = true;
        break;
      }
    }
    if (!known) representatives.push_back(t);
  }
  return static_cast<int>(representatives.size());
}

namespace {

// Orbit table built by closing reference graphlets over all 4! relabelings.
// Orbit ids match graphtd::orbit4_counts:
//   0/1 path ends/middles, 2/3 star leaves/center, 4 cycle,
//   5/6/7 paw pendant/rim/hinge, 8/9 diamond rim/hinge, 10 clique.
struct QuadTable {
  // mask (6 bits over pairs 01,02,03,12,13,23) -> orbit of each position, or -1
  std::array<std::array<int, 4>, 64> orbit;

  QuadTable() {
    for (auto& row : orbit) row = {-1, -1, -1, -1};

    struct Ref {
      std::vector<std::pair<int, int>> edges;
      std::array<int, 4> orbits;
    };
    const std::vector<Ref> refs = {
        {{{0, 1}, {1, 2}, {2, 3}}, {0, 1, 1, 0}},                  // path
        {{{0, 1}, {0, 2}, {0, 3}}, {3, 2, 2, 2}},                  // star
        {{{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {4, 4, 4, 4}},          // cycle
        {{{0, 1}, {1, 2}, {2, 0}, {0, 3}}, {7, 6, 6, 5}},          // paw
        {{{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}}, {9, 9, 8, 8}},  // diamond
        {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {10, 10, 10, 10}},  // clique
    };

    const int pair_index[4][4] = {
        {-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    std::array<int, 4> perm = {0, 1, 2, 3};
    for (const auto& ref : refs) {
      std::sort(perm.begin(), perm.end());
      do {
        int mask = 0;
        for (const auto& [u, v] : ref.edges) mask |= 1 << pair_index[perm[u]][perm[v]];
        for (int i = 0; i < 4; ++i) orbit[mask][perm[i]] = ref.orbits[i];
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
};

}  // namespace

std::vector<std::int64_t> orbit4_census(const Graph& g) {
  static const QuadTable table;
  const int pair_index[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  std::vector<std::int64_t> counts(11, 0);
  const int n = g.node_count();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const int q[4] = {a, b, c, d};
          int mask = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
              if (g.has_edge(q[i], q[j])) mask |= 1 << pair_index[i][j];
          const auto& orbits = table.orbit[mask];
          for (int i = 0; i < 4; ++i)
            if (orbits[i] >= 0) ++counts[orbits[i]];
        }
  return counts;
}

Graph random_tree(Rng& rng, int n) {
  if (n <= 2) return prufer_tree({}, n);
  std::vector<int> seq(n - 2);
  for (int& v : seq) v = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
  return prufer_tree(seq, n);
}

Graph random_connected_graph(Rng& rng, int n, int extra_edges) {
  Graph tree = random_tree(rng, n);
  auto edges = tree.edges();
  for (int i = 0; i < extra_edges; ++i) {
    const int u = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    const int v = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    if (u != v) edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

Permutation random_permutation(Rng& rng, int n) { return Permutation{rng.shuffled_ids(n)}; }

}  // namespace graphtd::oracle

#include "graphtd/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace graphtd {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 0) throw std::invalid_argument("graph: negative node count");
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("graph: self-loop at node " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("graph: endpoint out of range: (" + std::to_string(u) +
                                  ", " + std::to_string(v) + ") with n=" + std::to_string(n));
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(u, v));
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n_);
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const auto& [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

Permutation Permutation::identity(int n) {
  Permutation p;
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), 0);
  return p;
}

std::vector<int> Permutation::ranks() const {
  std::vector<int> r(order.size(), -1);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) r[order[i]] = i;
  return r;
}

bool Permutation::valid(int n) const {
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<bool> seen(n, false);
  for (const int v : order) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool first_content = true;
  long declared_n = -1;
  std::vector<std::pair<int, int>> edges;
  int max_id = -1;

  auto parse_int = [](const std::string& tok) {
    size_t used = 0;
    long v;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("edge list: non-integer token '" + tok + "'");
    }
    if (used != tok.size())
      throw std::invalid_argument("edge list: non-integer token '" + tok + "'");
    return v;
  };

  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;        // blank
    if (a[0] == '#') continue;       // comment
    if (first_content && a == "n") {
      if (!(ls >> b)) throw std::invalid_argument("edge list: missing count after 'n'");
      declared_n = parse_int(b);
      if (declared_n < 0) throw std::invalid_argument("edge list: negative node count");
      first_content = false;
      continue;
    }
    first_content = false;
    if (!(ls >> b)) throw std::invalid_argument("edge list: expected 'u v', got '" + line + "'");
    if (ls >> extra) throw std::invalid_argument("edge list: trailing tokens in '" + line + "'");
    const long u = parse_int(a);
    const long v = parse_int(b);
    if (u < 0 || v < 0) throw std::invalid_argument("edge list: negative endpoint");
    if (u == v) throw std::invalid_argument("edge list: self-loop at node " + std::to_string(u));
    if (declared_n >= 0 && (u >= declared_n || v >= declared_n))
      throw std::invalid_argument("edge list: endpoint exceeds declared n");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_id = std::max(max_id, static_cast<int>(std::max(u, v)));
  }
  const int n = declared_n >= 0 ? static_cast<int>(declared_n) : max_id + 1;
  return Graph(n, std::move(edges));
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.node_count() << "\n";
  for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
  return out.str();
}

Graph relabel(const Graph& g, const Permutation& sigma) {
  if (!sigma.valid(g.node_count())) throw std::invalid_argument("relabel: invalid permutation");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.edges().size());
  for (const auto& [u, v] : g.edges()) edges.emplace_back(sigma.order[u], sigma.order[v]);
  return Graph(g.node_count(), std::move(edges));
}

std::vector<std::vector<int>> bfs_layers(const Graph& g, int root, const Permutation& tie_order) {
  const int n = g.node_count();
  if (root < 0 || root >= n) throw std::invalid_argument("bfs_layers: root out of range");
  if (!tie_order.valid(n)) throw std::invalid_argument("bfs_layers: invalid tie order");
  const auto ranks = tie_order.ranks();
  auto adj = g.adjacency();
  for (auto& nbrs : adj)
    std::sort(nbrs.begin(), nbrs.end(), [&](int a, int b) { return ranks[a] < ranks[b]; });

  std::vector<int> dist(n, -1);
  std::deque<int> queue{root};
  dist[root] = 0;
  int max_dist = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const int v : adj[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        max_dist = std::max(max_dist, dist[v]);
        queue.push_back(v);
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (dist[v] < 0) throw std::invalid_argument("bfs_layers: graph is disconnected");

  std::vector<std::vector<int>> layers(max_dist + 1);
  for (int v = 0; v < n; ++v) layers[dist[v]].push_back(v);
  for (auto& layer : layers) std::sort(layer.begin(), layer.end());
  return layers;
}

bool is_connected(const Graph& g) {
  const int n = g.node_count();
  if (n <= 1) return true;
  const auto adj = g.adjacency();
  std::vector<bool> seen(n, false);
  std::deque<int> queue{0};
  seen[0] = true;
  int reached = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  return reached == n;
}

int diameter(const Graph& g) {
  const int n = g.node_count();
  if (n == 0) throw std::invalid_argument("diameter: empty graph");
  const auto adj = g.adjacency();
  int best = 0;
  std::vector<int> dist(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (const int v : adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          best = std::max(best, dist[v]);
          queue.push_back(v);
        }
      }
    }
    for (int v = 0; v < n; ++v)
      if (dist[v] < 0) throw std::invalid_argument("diameter: graph is disconnected");
  }
  return best;
}

namespace {

// Backtracking isomorphism with degree pruning; adjacency as bitmasks for
// n <= 64, which covers every use in this codebase.
bool iso_small(const Graph& a, const Graph& b) {
  const int n = a.node_count();
  std::vector<uint64_t> adj_a(n, 0), adj_b(n, 0);
  for (const auto& [u, v] : a.edges()) {
    adj_a[u] |= 1ull << v;
    adj_a[v] |= 1ull << u;
  }
  for (const auto& [u, v] : b.edges()) {
    adj_b[u] |= 1ull << v;
    adj_b[v] |= 1ull << u;
  }
  const auto deg_a = a.degrees();
  const auto deg_b = b.degrees();

  // Assign high-degree nodes first; they constrain the search most.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return deg_a[x] > deg_a[y]; });

  std::vector<int> map_ab(n, -1);
  std::vector<bool> used(n, false);

  auto backtrack = [&](auto&& self, int idx) -> bool {
    if (idx == n) return true;
    const int u = order[idx];
    for (int w = 0; w < n; ++w) {
      if (used[w] || deg_b[w] != deg_a[u]) continue;
      bool ok = true;
      for (int j = 0; j < idx && ok; ++j) {
        const int p = order[j];
        const bool ea = (adj_a[u] >> p) & 1;
        const bool eb = (adj_b[w] >> map_ab[p]) & 1;
        if (ea != eb) ok = false;
      }
      if (!ok) continue;
      map_ab[u] = w;
      used[w] = true;
      if (self(self, idx + 1)) return true;
      used[w] = false;
      map_ab[u] = -1;
    }
    return false;
  };
  return backtrack(backtrack, 0);
}

}  // namespace

bool graph_isomorphic(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  auto deg_a = a.degrees();
  auto deg_b = b.degrees();
  std::sort(deg_a.begin(), deg_a.end());
  std::sort(deg_b.begin(), deg_b.end());
  if (deg_a != deg_b) return false;
  if (a.node_count() == 0) return true;
  if (a.node_count() <= 64) return iso_small(a, b);
  throw std::invalid_argument("graph_isomorphic: supported up to 64 nodes");
}

}  // namespace graphtd

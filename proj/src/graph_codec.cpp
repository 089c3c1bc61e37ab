#include "graphtd/graph_codec.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "graphtd/rng.hpp"

namespace graphtd {

namespace {

bool in_sorted(const std::vector<int>& xs, int v) {
  return std::binary_search(xs.begin(), xs.end(), v);
}

// Replays the structural part of a decision sequence: member lists per
// supernode (shared members in parent order, then additions), edges, and
// bags. Shared by decode_graph and replay_decomposition.
struct Replay {
  RootedTree tree;
  std::vector<std::vector<int>> members;
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> edges;
  int node_count = 0;
};

Replay replay(const DecisionSequence& ds) {
  const auto decoded = plr_decode_prefix(ds.tree_plr.lengths);
  if (!decoded.complete)
    throw std::invalid_argument("decision sequence: tree sequence is incomplete");
  const int r = decoded.tree.r;
  if (static_cast<int>(ds.supernodes.size()) != r)
    throw std::invalid_argument("decision sequence: expected " + std::to_string(r) +
                                " supernode sections, got " +
                                std::to_string(ds.supernodes.size()));

  Replay out;
  out.tree = decoded.tree;
  out.members.resize(r);
  out.bags.resize(r);

  // PLR reconstruction assigns supernode ids in canonical DFS visit order,
  // so sections replay in id order and every parent precedes its children.
  for (int s = 0; s < r; ++s) {
    const auto& section = ds.supernodes[s];
    std::vector<int> current;
    if (s == 0) {
      if (!section.sharing.empty())
        throw std::invalid_argument("decision sequence: root section has sharing bits");
    } else {
      const int p = out.tree.parent[s];
      const auto& parent_members = out.members[p];
      if (section.sharing.size() != parent_members.size())
        throw std::invalid_argument("decision sequence: sharing length mismatch at supernode " +
                                    std::to_string(s));
      for (size_t j = 0; j < section.sharing.size(); ++j)
        if (section.sharing[j]) current.push_back(parent_members[j]);
      if (current.empty())
        throw std::invalid_argument("decision sequence: empty sharing set at supernode " +
                                    std::to_string(s));
    }
    if (section.edge_bits.empty())
      throw std::invalid_argument("decision sequence: supernode " + std::to_string(s) +
                                  " adds no node");
    for (const auto& row : section.edge_bits) {
      if (row.size() != current.size())
        throw std::invalid_argument("decision sequence: edge row length mismatch at supernode " +
                                    std::to_string(s));
      const int id = out.node_count++;
      for (size_t k = 0; k < row.size(); ++k)
        if (row[k]) out.edges.emplace_back(current[k], id);
      current.push_back(id);
    }
    out.bags[s] = current;
    std::sort(out.bags[s].begin(), out.bags[s].end());
    out.members[s] = std::move(current);
  }
  return out;
}

}  // namespace

DecisionSequence encode_graph(const Graph& g, const Permutation& perm) {
  if (!perm.valid(g.node_count())) throw std::invalid_argument("encode: invalid permutation");
  if (!is_connected(g)) throw std::invalid_argument("encode: graph is disconnected");

  const TreeDecomposition td = minimize_decomposition(min_fill_decomposition(g, perm));
  const auto order = canonical_order(td.tree);
  const auto rank = perm.ranks();

  DecisionSequence ds;
  ds.tree_plr = plr_encode(td.tree);
  ds.supernodes.resize(td.tree.r);

  std::vector<std::vector<int>> members(td.tree.r);
  std::vector<int> position(td.tree.r, -1);
  for (int i = 0; i < td.tree.r; ++i) position[order[i]] = i;

  for (int i = 0; i < td.tree.r; ++i) {
    const int s = order[i];
    SupernodeDecisions& section = ds.supernodes[i];
    std::vector<int> current;
    if (i > 0) {
      const int p = td.tree.parent[s];
      const auto& parent_members = members[p];
      section.sharing.reserve(parent_members.size());
      for (const int x : parent_members) {
        const bool shared = in_sorted(td.bags[s], x);
        section.sharing.push_back(shared ? 1 : 0);
        if (shared) current.push_back(x);
      }
      if (current.empty())
        throw std::logic_error("encode: adjacent bags do not intersect on a connected graph");
    }
    std::vector<int> fresh;
    for (const int x : td.bags[s])
      if (std::find(current.begin(), current.end(), x) == current.end()) fresh.push_back(x);
    std::sort(fresh.begin(), fresh.end(), [&](int a, int b) { return rank[a] < rank[b]; });
    for (const int x : fresh) {
      std::vector<uint8_t> row;
      row.reserve(current.size());
      for (const int m : current) row.push_back(g.has_edge(x, m) ? 1 : 0);
      section.edge_bits.push_back(std::move(row));
      current.push_back(x);
    }
    members[s] = std::move(current);
  }
  return ds;
}

Graph decode_graph(const DecisionSequence& ds) {
  Replay r = replay(ds);
  return Graph(r.node_count, std::move(r.edges));
}

TreeDecomposition replay_decomposition(const DecisionSequence& ds) {
  Replay r = replay(ds);
  TreeDecomposition td;
  td.tree = std::move(r.tree);
  td.bags = std::move(r.bags);
  return td;
}

DecisionCounts decision_counts(const DecisionSequence& ds) {
  DecisionCounts c;
  c.tree_steps = static_cast<std::int64_t>(ds.tree_plr.lengths.size());
  for (const auto& section : ds.supernodes) {
    c.sharing_steps += static_cast<std::int64_t>(section.sharing.size());
    if (!section.edge_bits.empty())
      c.add_steps += static_cast<std::int64_t>(section.edge_bits.size()) - 1;
    for (const auto& row : section.edge_bits)
      c.edge_steps += static_cast<std::int64_t>(row.size());
  }
  return c;
}

std::vector<uint8_t> adjacency_sequence(const Graph& g, const Permutation& perm,
                                        NodeOrdering ordering) {
  const int n = g.node_count();
  if (!perm.valid(n)) throw std::invalid_argument("adjacency_sequence: invalid permutation");
  if (n == 0) throw std::invalid_argument("adjacency_sequence: empty graph");
  const auto rank = perm.ranks();
  auto adj = g.adjacency();
  for (auto& nbrs : adj)
    std::sort(nbrs.begin(), nbrs.end(), [&](int a, int b) { return rank[a] < rank[b]; });

  std::vector<int> visit;
  visit.reserve(n);
  std::vector<bool> seen(n, false);
  const int start = perm.order[0];
  if (ordering == NodeOrdering::Bfs) {
    std::vector<int> queue{start};
    seen[start] = true;
    for (size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      visit.push_back(u);
      for (const int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
  } else {
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      if (seen[u]) continue;
      seen[u] = true;
      visit.push_back(u);
      for (auto it = adj[u].rbegin(); it != adj[u].rend(); ++it)
        if (!seen[*it]) stack.push_back(*it);
    }
  }
  if (static_cast<int>(visit.size()) != n)
    throw std::invalid_argument("adjacency_sequence: graph is disconnected");

  std::vector<uint8_t> bits;
  bits.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      bits.push_back(g.has_edge(visit[i], visit[j]) ? 1 : 0);
  return bits;
}

std::int64_t unique_sequence_count(const Graph& g, int n_perms, SequenceMethod method,
                                   uint64_t seed) {
  if (n_perms < 1) throw std::invalid_argument("unique_sequence_count: n_perms must be positive");
  if (!is_connected(g))
    throw std::invalid_argument("unique_sequence_count: graph is disconnected");
  const Rng root(seed);
  std::set<std::string> distinct;
  for (int i = 0; i < n_perms; ++i) {
    Rng stream = root.substream("perm", static_cast<uint64_t>(i));
    Permutation perm{stream.shuffled_ids(g.node_count())};
    if (method == SequenceMethod::TD) {
      distinct.insert(to_bytes(encode_graph(g, perm)));
    } else {
      const auto bits = adjacency_sequence(
          g, perm, method == SequenceMethod::BFS ? NodeOrdering::Bfs : NodeOrdering::Dfs);
      std::string s(bits.size(), '0');
      for (size_t k = 0; k < bits.size(); ++k)
        if (bits[k]) s[k] = '1';
      distinct.insert(std::move(s));
    }
  }
  return static_cast<std::int64_t>(distinct.size());
}

namespace {

std::string bits_to_string(const std::vector<uint8_t>& bits) {
  std::string s(bits.size(), '0');
  for (size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

std::vector<uint8_t> bits_from_string(const std::string& s) {
  std::vector<uint8_t> bits;
  bits.reserve(s.size());
  for (const char c : s) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("decision sequence: bad bit character");
    bits.push_back(c == '1' ? 1 : 0);
  }
  return bits;
}

}  // namespace

std::string to_text(const DecisionSequence& ds) {
  std::ostringstream out;
  out << "plr " << plr_to_string(ds.tree_plr) << "\n";
  for (size_t s = 0; s < ds.supernodes.size(); ++s) {
    const auto& section = ds.supernodes[s];
    out << "supernode " << s << "\n";
    if (s > 0) out << "share " << bits_to_string(section.sharing) << "\n";
    out << "adds " << section.edge_bits.size() << "\n";
    for (const auto& row : section.edge_bits) {
      out << "e";
      if (!row.empty()) out << ' ' << bits_to_string(row);
      out << "\n";
    }
  }
  return out.str();
}

DecisionSequence decision_sequence_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  DecisionSequence ds;
  bool have_plr = false;
  std::vector<int> declared_adds;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "plr") {
      std::string body;
      ls >> body;
      ds.tree_plr = plr_from_string(body);
      have_plr = true;
    } else if (key == "supernode") {
      int idx;
      if (!(ls >> idx) || idx != static_cast<int>(ds.supernodes.size()))
        throw std::invalid_argument("decision sequence: bad supernode index");
      ds.supernodes.emplace_back();
      declared_adds.push_back(-1);
    } else if (key == "share") {
      std::string body;
      ls >> body;
      if (ds.supernodes.empty() || ds.supernodes.size() == 1)
        throw std::invalid_argument("decision sequence: sharing bits outside a child section");
      ds.supernodes.back().sharing = bits_from_string(body);
    } else if (key == "adds") {
      int declared = 0;
      if (declared_adds.empty() || !(ls >> declared) || declared < 1)
        throw std::invalid_argument("decision sequence: bad adds count");
      declared_adds.back() = declared;
    } else if (key == "e") {
      if (ds.supernodes.empty())
        throw std::invalid_argument("decision sequence: edge row outside a section");
      std::string body;
      if (ls >> body)
        ds.supernodes.back().edge_bits.push_back(bits_from_string(body));
      else
        ds.supernodes.back().edge_bits.emplace_back();
    } else {
      throw std::invalid_argument("decision sequence: unknown line '" + line + "'");
    }
  }
  if (!have_plr) throw std::invalid_argument("decision sequence: missing plr line");
  for (size_t s = 0; s < ds.supernodes.size(); ++s) {
    if (ds.supernodes[s].edge_bits.empty())
      throw std::invalid_argument("decision sequence: section without added nodes");
    if (declared_adds[s] != static_cast<int>(ds.supernodes[s].edge_bits.size()))
      throw std::invalid_argument("decision sequence: adds count mismatch in section " +
                                  std::to_string(s));
  }
  return ds;
}

std::string to_bytes(const DecisionSequence& ds) {
  std::string out = "P";
  out += plr_to_string(ds.tree_plr);
  for (const auto& section : ds.supernodes) {
    out += '|';
    out += bits_to_string(section.sharing);
    out += ';';
    for (size_t t = 0; t < section.edge_bits.size(); ++t) {
      if (t > 0) out += ',';
      out += bits_to_string(section.edge_bits[t]);
    }
  }
  return out;
}

}  // namespace graphtd

#include "graphtd/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "graphtd/rng.hpp"

namespace graphtd {

namespace {

int geometric_length(Rng& rng, double mean) {
  // Support starts at 1; success probability 1/mean.
  const double p = 1.0 / mean;
  int k = 1;
  while (!rng.bernoulli(p)) ++k;
  return k;
}

}  // namespace

Dataset gen_community(int count, int min_n, int max_n, double p_in, double inter_frac,
                      uint64_t seed) {
  if (count < 1) throw std::invalid_argument("gen_community: count must be positive");
  if (min_n < 4 || max_n < min_n) throw std::invalid_argument("gen_community: bad size range");
  if (!(p_in > 0.0) || p_in > 1.0) throw std::invalid_argument("gen_community: p_in in (0, 1]");
  if (!(inter_frac > 0.0)) throw std::invalid_argument("gen_community: inter_frac must be positive");

  Dataset ds;
  ds.name = "community";
  ds.seed = seed;
  const Rng root(seed);
  for (int g = 0; g < count; ++g) {
    Rng stream = root.substream("graph", static_cast<uint64_t>(g));
    bool done = false;
    for (int attempt = 0; attempt < 1000 && !done; ++attempt) {
      const int n = stream.range(min_n, max_n);
      const int half = (n + 1) / 2;
      std::vector<std::pair<int, int>> edges;
      auto intra = [&](int lo, int hi) {
        for (int u = lo; u < hi; ++u)
          for (int v = u + 1; v < hi; ++v)
            if (stream.bernoulli(p_in)) edges.emplace_back(u, v);
      };
      intra(0, half);
      intra(half, n);

      const long cross_total = static_cast<long>(half) * (n - half);
      const long want = static_cast<long>(std::ceil(inter_frac * n));
      if (want > cross_total)
        throw std::invalid_argument("gen_community: more cross edges requested than exist");
      // Uniform without replacement over the cross pairs.
      std::vector<long> picks;
      while (static_cast<long>(picks.size()) < want) {
        const long pick = static_cast<long>(stream.below(static_cast<uint64_t>(cross_total)));
        if (std::find(picks.begin(), picks.end(), pick) == picks.end()) picks.push_back(pick);
      }
      for (const long pick : picks)
        edges.emplace_back(static_cast<int>(pick / (n - half)),
                           half + static_cast<int>(pick % (n - half)));

      Graph candidate(n, std::move(edges));
      if (is_connected(candidate)) {
        ds.graphs.push_back(std::move(candidate));
        done = true;
      }
    }
    if (!done)
      throw std::runtime_error("gen_community: no connected sample in 1000 attempts");
  }
  return ds;
}

Dataset gen_lobster(int count, double expected_backbone, double p1, double p2, int max_n,
                    uint64_t seed) {
  if (count < 1) throw std::invalid_argument("gen_lobster: count must be positive");
  if (expected_backbone < 2) throw std::invalid_argument("gen_lobster: expected_backbone >= 2");
  if (p1 < 0 || p1 >= 1 || p2 < 0 || p2 >= 1)
    throw std::invalid_argument("gen_lobster: p1, p2 must lie in [0, 1)");
  if (max_n < 1) throw std::invalid_argument("gen_lobster: max_n must be positive");

  Dataset ds;
  ds.name = "lobster";
  ds.seed = seed;
  const Rng root(seed);
  for (int g = 0; g < count; ++g) {
    Rng stream = root.substream("graph", static_cast<uint64_t>(g));
    const int backbone = std::min(geometric_length(stream, expected_backbone), max_n);
    std::vector<std::pair<int, int>> edges;
    int next_id = backbone;
    for (int i = 1; i < backbone; ++i) edges.emplace_back(i - 1, i);

    std::vector<int> level1;
    for (int i = 0; i < backbone && next_id < max_n; ++i) {
      while (next_id < max_n && stream.bernoulli(p1)) {
        edges.emplace_back(i, next_id);
        level1.push_back(next_id);
        ++next_id;
      }
    }
    for (const int v : level1) {
      if (next_id >= max_n) break;
      while (next_id < max_n && stream.bernoulli(p2)) {
        edges.emplace_back(v, next_id);
        ++next_id;
      }
    }
    ds.graphs.emplace_back(next_id, std::move(edges));
  }
  return ds;
}

std::string dataset_to_text(const Dataset& ds) {
  std::ostringstream out;
  for (size_t i = 0; i < ds.graphs.size(); ++i) {
    const Graph& g = ds.graphs[i];
    out << "# graph " << i << " " << g.node_count() << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
    out << "\n";
  }
  return out.str();
}

Dataset dataset_from_text(const std::string& text, const std::string& name) {
  Dataset ds;
  ds.name = name;
  std::istringstream in(text);
  std::string line;
  bool in_graph = false;
  int declared_n = 0;
  std::vector<std::pair<int, int>> edges;

  auto flush = [&]() {
    if (!in_graph) return;
    Graph g(declared_n, std::move(edges));
    if (!is_connected(g))
      throw std::invalid_argument("dataset: graph " + std::to_string(ds.graphs.size()) +
                                  " is disconnected");
    ds.graphs.push_back(std::move(g));
    edges.clear();
    in_graph = false;
  };

  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "#") {
      std::string kw;
      long index, n;
      if (!(ls >> kw)) continue;
      if (kw != "graph") continue;  // ordinary comment (config echo etc.)
      flush();
      if (!(ls >> index >> n) || n < 1)
        throw std::invalid_argument("dataset: malformed header '" + line + "'");
      if (index != static_cast<long>(ds.graphs.size()))
        throw std::invalid_argument("dataset: out-of-order graph index in '" + line + "'");
      declared_n = static_cast<int>(n);
      in_graph = true;
      continue;
    }
    if (!in_graph) throw std::invalid_argument("dataset: edge line before any header");
    int u, v;
    std::istringstream es(line);
    if (!(es >> u >> v))
      throw std::invalid_argument("dataset: malformed edge line '" + line + "'");
    edges.emplace_back(u, v);
  }
  flush();
  if (ds.graphs.empty()) throw std::invalid_argument("dataset: no graphs");
  return ds;
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("dataset: cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string name = path;
  const size_t slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  return dataset_from_text(buffer.str(), name);
}

void save_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("dataset: cannot write " + path);
  out << dataset_to_text(ds);
}

DatasetSplit split_dataset(const Dataset& ds, uint64_t seed) {
  const int n = ds.size();
  if (n < 10) throw std::invalid_argument("split_dataset: need at least 10 graphs");
  Rng rng = Rng(seed).substream("split");
  const auto order = rng.shuffled_ids(n);
  const int n_train = n * 7 / 10;
  const int n_val = n / 10;

  DatasetSplit split;
  split.train.name = ds.name + ".train";
  split.validation.name = ds.name + ".val";
  split.test.name = ds.name + ".test";
  split.train.seed = split.validation.seed = split.test.seed = seed;
  for (int i = 0; i < n; ++i) {
    const Graph& g = ds.graphs[order[i]];
    if (i < n_train)
      split.train.graphs.push_back(g);
    else if (i < n_train + n_val)
      split.validation.graphs.push_back(g);
    else
      split.test.graphs.push_back(g);
  }
  return split;
}

}  // namespace graphtd

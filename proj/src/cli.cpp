#include "graphtd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "graphtd/datasets.hpp"
#include "graphtd/decision_model.hpp"
#include "graphtd/graph.hpp"
#include "graphtd/graph_codec.hpp"
#include "graphtd/plr.hpp"
#include "graphtd/rng.hpp"
#include "graphtd/stats.hpp"
#include "graphtd/tree_decomp.hpp"

namespace graphtd {

namespace {

// Config lines echoed into every artifact for provenance.
struct ConfigEcho {
  std::vector<std::pair<std::string, std::string>> items;

  void add(const std::string& key, const std::string& value) { items.emplace_back(key, value); }
  void add(const std::string& key, long long value) { add(key, std::to_string(value)); }
  void add(const std::string& key, double value) {
    std::ostringstream out;
    out << value;
    add(key, out.str());
  }

  std::string lines(const std::string& subcommand) const {
    std::ostringstream out;
    out << "# graphtd " << subcommand << "\n";
    for (const auto& [k, v] : items) out << "# " << k << "=" << v << "\n";
    return out.str();
  }
};

// Outputs are staged and written only after the subcommand succeeds;
// a failed write removes everything written so far.
class OutputStage {
 public:
  void stage(const std::string& path, std::string content) {
    staged_.emplace_back(path, std::move(content));
  }
  void commit() {
    std::vector<std::string> written;
    try {
      for (const auto& [path, content] : staged_) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << content;
        if (!out.good()) throw std::runtime_error("write failed for " + path);
        written.push_back(path);
      }
    } catch (...) {
      for (const auto& path : written) std::remove(path.c_str());
      throw;
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> staged_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Permutation permutation_for(const Graph& g, const std::string& perm_csv, uint64_t seed,
                            const std::string& stream) {
  if (!perm_csv.empty()) {
    Permutation p;
    std::istringstream in(perm_csv);
    std::string tok;
    while (std::getline(in, tok, ',')) p.order.push_back(std::stoi(tok));
    if (!p.valid(g.node_count())) throw std::runtime_error("invalid --perm for this graph");
    return p;
  }
  Rng rng = Rng(seed).substream(stream);
  return Permutation{rng.shuffled_ids(g.node_count())};
}

GraphStatistic statistic_from_name(const std::string& name) {
  if (name == "deg") return GraphStatistic::Degree;
  if (name == "clus") return GraphStatistic::Clustering;
  if (name == "orbit") return GraphStatistic::Orbit4;
  if (name == "spec") return GraphStatistic::Spectral;
  throw std::runtime_error("unknown statistic '" + name + "' (expected deg|clus|orbit|spec)");
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(tok);
  return out;
}

double stddev_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (const double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / (static_cast<double>(xs.size()) - 1));
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"tree-decomposition graph codec and generation toolkit"};
  app.require_subcommand(1);

  uint64_t seed = 0;
  app.add_option("--seed", seed, "base seed for all randomness")->capture_default_str();

  // decompose
  auto* cmd_decompose = app.add_subcommand("decompose", "decompose a graph and report checks");
  std::string dec_input, dec_perm, dec_out;
  cmd_decompose->add_option("--input", dec_input, "edge-list file")->required();
  cmd_decompose->add_option("--perm", dec_perm, "elimination tie order as csv node ids");
  cmd_decompose->add_option("--out", dec_out, "write the decomposition text here");

  // encode / decode
  auto* cmd_encode = app.add_subcommand("encode", "encode a graph into a decision sequence");
  std::string enc_input, enc_perm, enc_out;
  cmd_encode->add_option("--input", enc_input, "edge-list file")->required();
  cmd_encode->add_option("--perm", enc_perm, "ordering permutation as csv node ids");
  cmd_encode->add_option("--out", enc_out, "decision sequence output file")->required();

  auto* cmd_decode = app.add_subcommand("decode", "decode a decision sequence into a graph");
  std::string decd_input, decd_out;
  cmd_decode->add_option("--input", decd_input, "decision sequence file")->required();
  cmd_decode->add_option("--out", decd_out, "edge-list output file")->required();

  // space
  auto* cmd_space = app.add_subcommand("space", "count unique sequences per graph");
  std::string space_dataset, space_methods = "td,bfs,dfs", space_out;
  int space_perms = 1000;
  cmd_space->add_option("--dataset", space_dataset, "dataset file")->required();
  cmd_space->add_option("--perms", space_perms, "permutations per graph")->capture_default_str();
  cmd_space->add_option("--methods", space_methods, "csv of td,bfs,dfs")->capture_default_str();
  cmd_space->add_option("--out", space_out, "csv output")->required();

  // gen-dataset
  auto* cmd_gen = app.add_subcommand("gen-dataset", "generate a synthetic dataset");
  std::string gen_kind, gen_out;
  int gen_count = 0;
  int gen_min_n = -1, gen_max_n = -1, gen_cap_n = 80;
  double gen_p_in = 0.7, gen_inter = 0.05, gen_backbone = 40.0, gen_p1 = 0.7, gen_p2 = 0.7;
  cmd_gen->add_option("--kind", gen_kind, "community|community-small|lobster")->required();
  cmd_gen->add_option("--count", gen_count, "number of graphs");
  cmd_gen->add_option("--min-n", gen_min_n, "minimum node count");
  cmd_gen->add_option("--max-n", gen_max_n, "maximum node count");
  cmd_gen->add_option("--p-in", gen_p_in, "intra-community edge probability")->capture_default_str();
  cmd_gen->add_option("--inter-frac", gen_inter, "cross edges per node")->capture_default_str();
  cmd_gen->add_option("--expected-backbone", gen_backbone, "mean lobster backbone length")
      ->capture_default_str();
  cmd_gen->add_option("--p1", gen_p1, "level-1 leaf probability")->capture_default_str();
  cmd_gen->add_option("--p2", gen_p2, "level-2 leaf probability")->capture_default_str();
  cmd_gen->add_option("--node-cap", gen_cap_n, "lobster node cap")->capture_default_str();
  cmd_gen->add_option("--out", gen_out, "dataset output file")->required();

  // split
  auto* cmd_split = app.add_subcommand("split", "70/10/20 split of a dataset");
  std::string split_dataset_path, split_prefix;
  cmd_split->add_option("--dataset", split_dataset_path, "dataset file")->required();
  cmd_split->add_option("--out-prefix", split_prefix, "output prefix")->required();

  // train
  auto* cmd_train = app.add_subcommand("train", "train the count model");
  std::string train_dataset, train_out;
  int train_epochs = 25;
  double train_alpha = 1.0;
  cmd_train->add_option("--dataset", train_dataset, "training dataset")->required();
  cmd_train->add_option("--epochs", train_epochs, "permutation passes")->capture_default_str();
  cmd_train->add_option("--alpha", train_alpha, "Laplace smoothing")->capture_default_str();
  cmd_train->add_option("--out", train_out, "model json output")->required();

  // sample / sample-trees
  auto* cmd_sample = app.add_subcommand("sample", "sample graphs from a model");
  std::string sample_model, sample_out;
  int sample_count = 100, sample_cap = 24, sample_max_nodes = 64;
  cmd_sample->add_option("--model", sample_model, "model json (omit for the uniform model)");
  cmd_sample->add_option("--count", sample_count, "number of samples")->capture_default_str();
  cmd_sample->add_option("--plr-cap", sample_cap, "tree length cap")->capture_default_str();
  cmd_sample->add_option("--max-nodes", sample_max_nodes, "node budget")->capture_default_str();
  cmd_sample->add_option("--out", sample_out, "dataset output file")->required();

  auto* cmd_sample_trees = app.add_subcommand("sample-trees", "sample trees from a model");
  std::string stree_model, stree_out;
  int stree_count = 100, stree_cap = 24, stree_max_nodes = 64;
  cmd_sample_trees->add_option("--model", stree_model, "model json (omit for the uniform model)");
  cmd_sample_trees->add_option("--count", stree_count, "number of samples")->capture_default_str();
  cmd_sample_trees->add_option("--plr-cap", stree_cap, "tree length cap")->capture_default_str();
  cmd_sample_trees->add_option("--max-nodes", stree_max_nodes, "node budget")
      ->capture_default_str();
  cmd_sample_trees->add_option("--out", stree_out, "dataset output file")->required();

  // eval-nll
  auto* cmd_nll = app.add_subcommand("eval-nll", "expected and marginal NLL per split");
  std::string nll_model, nll_out;
  std::vector<std::string> nll_splits;
  int nll_perms = 20, nll_cap = 24;
  cmd_nll->add_option("--model", nll_model, "model json (omit for the uniform model)");
  cmd_nll->add_option("--split", nll_splits, "name=datasetfile (repeatable)")->required();
  cmd_nll->add_option("--perms", nll_perms, "permutations per graph")->capture_default_str();
  cmd_nll->add_option("--plr-cap", nll_cap, "tree length cap for the uniform model")
      ->capture_default_str();
  cmd_nll->add_option("--out", nll_out, "csv output")->required();

  // eval-stats
  auto* cmd_stats = app.add_subcommand("eval-stats", "MMD between two graph sets");
  std::string stats_ref, stats_gen, stats_out, stats_metrics = "deg,clus,orbit,spec";
  std::string stats_kernel = "gaussian-emd";
  double stats_sigma = 1.0;
  cmd_stats->add_option("--reference", stats_ref, "reference dataset")->required();
  cmd_stats->add_option("--generated", stats_gen, "generated dataset")->required();
  cmd_stats->add_option("--metrics", stats_metrics, "csv of deg,clus,orbit,spec")
      ->capture_default_str();
  cmd_stats->add_option("--kernel", stats_kernel, "gaussian-emd|tv")->capture_default_str();
  cmd_stats->add_option("--sigma", stats_sigma, "gaussian kernel width")->capture_default_str();
  cmd_stats->add_option("--out", stats_out, "csv output")->required();

  // lobster-acc
  auto* cmd_lob = app.add_subcommand("lobster-acc", "fraction of lobster trees in a dataset");
  std::string lob_dataset, lob_out;
  cmd_lob->add_option("--dataset", lob_dataset, "dataset file")->required();
  cmd_lob->add_option("--out", lob_out, "csv output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    OutputStage stage;

    if (*cmd_decompose) {
      const Graph g = parse_edge_list(read_file(dec_input));
      const Permutation perm = permutation_for(g, dec_perm, seed, "decompose");
      const TreeDecomposition td = minimize_decomposition(min_fill_decomposition(g, perm));
      const auto report = validate_decomposition(g, td);
      const int n = g.node_count();
      const int k = width(td);
      const int r = td.supernode_count();

      std::ostringstream out;
      out << "validation " << (report.ok ? "ok" : "failed") << "\n";
      for (const auto& v : report.violations) out << "violation " << v << "\n";
      out << "width " << k << "\n";
      out << "supernodes " << r << "\n";
      out << "minimal " << (is_minimal_decomposition(td) ? "yes" : "no") << "\n";
      out << "prop3 r=" << r << " <= n-k+1=" << (n - k + 1)
          << " : " << (r <= n - k + 1 ? "ok" : "VIOLATED") << "\n";
      const TreeDecomposition layered = bfs_layer_decomposition(g, perm.order[0]);
      size_t max_layer = 0;
      for (const auto& layer : bfs_layers(g, perm.order[0], Permutation::identity(n)))
        max_layer = std::max(max_layer, layer.size());
      out << "prop5 bfs-width=" << width(layered) << " <= 2*max-layer="
          << 2 * max_layer << " : "
          << (width(layered) <= 2 * static_cast<int>(max_layer) ? "ok" : "VIOLATED") << "\n";
      std::cout << out.str();
      if (!dec_out.empty()) stage.stage(dec_out, to_text(td));
      stage.commit();
      return report.ok ? 0 : 2;
    }

    if (*cmd_encode) {
      const Graph g = parse_edge_list(read_file(enc_input));
      const Permutation perm = permutation_for(g, enc_perm, seed, "encode");
      stage.stage(enc_out, to_text(encode_graph(g, perm)));
      stage.commit();
      return 0;
    }

    if (*cmd_decode) {
      const DecisionSequence ds = decision_sequence_from_text(read_file(decd_input));
      stage.stage(decd_out, to_edge_list(decode_graph(ds)));
      stage.commit();
      return 0;
    }

    if (*cmd_space) {
      const Dataset ds = load_dataset(space_dataset);
      const auto methods = split_csv(space_methods);
      ConfigEcho cfg;
      cfg.add("seed", static_cast<long long>(seed));
      cfg.add("dataset", space_dataset);
      cfg.add("perms", space_perms);
      cfg.add("methods", space_methods);

      std::ostringstream out;
      out << cfg.lines("space");
      out << "graph,n";
      for (const auto& m : methods) out << ',' << m;
      out << "\n";
      for (int i = 0; i < ds.size(); ++i) {
        out << i << ',' << ds.graphs[i].node_count();
        for (const auto& m : methods) {
          SequenceMethod method;
          if (m == "td") method = SequenceMethod::TD;
          else if (m == "bfs") method = SequenceMethod::BFS;
          else if (m == "dfs") method = SequenceMethod::DFS;
          else throw std::runtime_error("unknown method '" + m + "'");
          const uint64_t graph_seed = Rng(seed).substream("space", i).next();
          out << ',' << unique_sequence_count(ds.graphs[i], space_perms, method, graph_seed);
        }
        out << "\n";
      }
      stage.stage(space_out, out.str());
      stage.commit();
      return 0;
    }

    if (*cmd_gen) {
      ConfigEcho cfg;
      cfg.add("seed", static_cast<long long>(seed));
      cfg.add("kind", gen_kind);
      Dataset ds;
      if (gen_kind == "community" || gen_kind == "community-small") {
        const bool small = gen_kind == "community-small";
        if (gen_count <= 0) gen_count = 500;
        if (gen_min_n < 0) gen_min_n = small ? 12 : 60;
        if (gen_max_n < 0) gen_max_n = small ? 20 : 160;
        cfg.add("count", gen_count);
        cfg.add("min_n", gen_min_n);
        cfg.add("max_n", gen_max_n);
        cfg.add("p_in", gen_p_in);
        cfg.add("inter_frac", gen_inter);
        ds = gen_community(gen_count, gen_min_n, gen_max_n, gen_p_in, gen_inter, seed);
      } else if (gen_kind == "lobster") {
        if (gen_count <= 0) gen_count = 100;
        cfg.add("count", gen_count);
        cfg.add("expected_backbone", gen_backbone);
        cfg.add("p1", gen_p1);
        cfg.add("p2", gen_p2);
        cfg.add("node_cap", gen_cap_n);
        ds = gen_lobster(gen_count, gen_backbone, gen_p1, gen_p2, gen_cap_n, seed);
      } else {
        throw std::runtime_error("unknown dataset kind '" + gen_kind + "'");
      }
      stage.stage(gen_out, cfg.lines("gen-dataset") + dataset_to_text(ds));
      stage.commit();
      return 0;
    }

    if (*cmd_split) {
      const Dataset ds = load_dataset(split_dataset_path);
      const DatasetSplit split = split_dataset(ds, seed);
      ConfigEcho cfg;
      cfg.add("seed", static_cast<long long>(seed));
      cfg.add("dataset", split_dataset_path);
      stage.stage(split_prefix + ".train.txt",
                  cfg.lines("split") + dataset_to_text(split.train));
      stage.stage(split_prefix + ".val.txt",
                  cfg.lines("split") + dataset_to_text(split.validation));
      stage.stage(split_prefix + ".test.txt", cfg.lines("split") + dataset_to_text(split.test));
      stage.commit();
      return 0;
    }

    if (*cmd_train) {
      const Dataset ds = load_dataset(train_dataset);
      const DecisionModel model = train_count_model(ds.graphs, train_epochs, train_alpha, seed);
      stage.stage(train_out, model.to_json());
      stage.commit();
      return 0;
    }

    if (*cmd_sample || *cmd_sample_trees) {
      const bool trees = static_cast<bool>(*cmd_sample_trees);
      const std::string& model_path = trees ? stree_model : sample_model;
      const int count = trees ? stree_count : sample_count;
      const int cap = trees ? stree_cap : sample_cap;
      const int max_nodes = trees ? stree_max_nodes : sample_max_nodes;
      const std::string& out_path = trees ? stree_out : sample_out;

      const DecisionModel model =
          model_path.empty() ? uniform_model(cap) : DecisionModel::load(model_path);
      ConfigEcho cfg;
      cfg.add("seed", static_cast<long long>(seed));
      cfg.add("model", model_path.empty() ? std::string("uniform") : model_path);
      cfg.add("count", count);
      cfg.add("plr_cap", cap);
      cfg.add("max_nodes", max_nodes);

      Dataset ds;
      ds.name = trees ? "sampled-trees" : "sampled";
      ds.seed = seed;
      for (int i = 0; i < count; ++i) {
        const uint64_t sample_seed = Rng(seed).substream("sample", i).next();
        ds.graphs.push_back(trees ? sample_tree(model, cap, max_nodes, sample_seed)
                                  : sample_graph(model, {cap, max_nodes}, sample_seed));
      }
      stage.stage(out_path, cfg.lines(trees ? "sample-trees" : "sample") + dataset_to_text(ds));
      stage.commit();
      return 0;
    }

    if (*cmd_nll) {
      DecisionModel model =
          nll_model.empty() ? uniform_model(nll_cap) : DecisionModel::load(nll_model);
      ConfigEcho cfg;
      cfg.add("seed", static_cast<long long>(seed));
      cfg.add("model", nll_model.empty() ? std::string("uniform") : nll_model);
      cfg.add("perms", nll_perms);
      cfg.add("plr_cap", model.plr_cap());

      std::ostringstream out;
      out << cfg.lines("eval-nll");
      out << "split,graph,n,expected_nll,stderr,marginal_nll\n";
      for (const auto& spec_item : nll_splits) {
        const size_t eq = spec_item.find('=');
        if (eq == std::string::npos)
          throw std::runtime_error("--split expects name=path, got '" + spec_item + "'");
        const std::string split_name = spec_item.substr(0, eq);
        const Dataset ds = load_dataset(spec_item.substr(eq + 1));
        double sum_expected = 0.0, sum_marginal = 0.0;
        for (int i = 0; i < ds.size(); ++i) {
          const uint64_t graph_seed = Rng(seed).substream("nll", i).next();
          const NllResult res = nll(model, ds.graphs[i], nll_perms, graph_seed);
          const double sd = stddev_of(res.per_perm, res.expected);
          out << split_name << ',' << i << ',' << ds.graphs[i].node_count() << ','
              << res.expected << ',' << sd / std::sqrt(static_cast<double>(nll_perms)) << ','
              << res.marginal << "\n";
          sum_expected += res.expected;
          sum_marginal += res.marginal;
        }
        out << split_name << ",mean," << ds.size() << ',' << sum_expected / ds.size() << ",,"
            << sum_marginal / ds.size() << "\n";
      }
      stage.stage(nll_out, out.str());
      stage.commit();
      return 0;
    }

    if (*cmd_stats) {
      const Dataset ref = load_dataset(stats_ref);
      const Dataset gen = load_dataset(stats_gen);
      MmdKernel kernel;
      if (stats_kernel == "gaussian-emd")
        kernel.type = MmdKernel::Type::GaussianEmd;
      else if (stats_kernel == "tv")
        kernel.type = MmdKernel::Type::TotalVariation;
      else
        throw std::runtime_error("unknown kernel '" + stats_kernel + "'");
      kernel.sigma = stats_sigma;

      ConfigEcho cfg;
      cfg.add("seed", static_cast<long long>(seed));
      cfg.add("reference", stats_ref);
      cfg.add("generated", stats_gen);
      cfg.add("kernel", stats_kernel);
      cfg.add("sigma", stats_sigma);

      std::ostringstream out;
      out << cfg.lines("eval-stats");
      out << "metric,kernel,sigma,mmd,mmd_squared\n";
      for (const auto& name : split_csv(stats_metrics)) {
        const GraphStatistic kind = statistic_from_name(name);
        std::vector<Histogram> ref_h, gen_h;
        for (const auto& g : ref.graphs) ref_h.push_back(graph_statistic(g, kind));
        for (const auto& g : gen.graphs) gen_h.push_back(graph_statistic(g, kind));
        const double m2 = mmd_squared(ref_h, gen_h, kernel);
        out << name << ',' << stats_kernel << ',' << stats_sigma << ',' << std::sqrt(m2) << ','
            << m2 << "\n";
      }
      stage.stage(stats_out, out.str());
      stage.commit();
      return 0;
    }

    if (*cmd_lob) {
      const Dataset ds = load_dataset(lob_dataset);
      const double acc = lobster_accuracy(ds.graphs);
      std::cout << "lobster_accuracy " << acc << "\n";
      if (!lob_out.empty()) {
        ConfigEcho cfg;
        cfg.add("seed", static_cast<long long>(seed));
        cfg.add("dataset", lob_dataset);
        stage.stage(lob_out, cfg.lines("lobster-acc") + "graphs,accuracy\n" +
                                 std::to_string(ds.size()) + "," + std::to_string(acc) + "\n");
      }
      stage.commit();
      return 0;
    }

    throw std::runtime_error("no subcommand handled");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace graphtd

#include "graphtd/decision_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "graphtd/rng.hpp"

namespace graphtd {

namespace {

int clamp_feature(int v, int cap) { return std::min(v, cap); }

ContextKey tree_ctx(int depth, bool lower_positive, int span) {
  return {clamp_feature(depth, 8), lower_positive ? 1 : 0, clamp_feature(span, 15)};
}
ContextKey share_ctx(int index, int parent_size, int ones) {
  return {clamp_feature(index, 15), clamp_feature(parent_size, 15), clamp_feature(ones, 15)};
}
ContextKey add_ctx(int added, int shared) {
  return {clamp_feature(added, 15), clamp_feature(shared, 15), 0};
}
ContextKey edge_ctx(int candidate, int degree) {
  return {clamp_feature(candidate, 15), clamp_feature(degree, 15), 0};
}

const std::vector<int> kBinary{0, 1};

// Sharing bits must select a non-empty proper subset of the parent bag:
// an empty selection splits the graph and a full selection makes the
// parent bag a subset of the child's. Returns -1 when free, else the
// forced bit. Non-emptiness wins the (degenerate) size-one conflict.
int share_forced(int index, int parent_size, int ones) {
  if (index == parent_size - 1) {
    if (ones == 0) return 1;
    if (ones == index && parent_size >= 2) return 0;
  }
  return -1;
}

// A supernode with children needs at least two bag members, otherwise the
// child could only share the whole bag. Binds only at the root (children
// of non-root supernodes inherit shared + fresh >= 2).
bool add_forced_on(int bag_size, bool has_children) { return bag_size == 1 && has_children; }

}  // namespace

void DecisionModel::observe(DecisionKind kind, const ContextKey& ctx, int outcome) {
  ++tables_[static_cast<int>(kind)][ctx][outcome];
}

std::uint64_t DecisionModel::count(DecisionKind kind, const ContextKey& ctx, int outcome) const {
  const auto kit = tables_.find(static_cast<int>(kind));
  if (kit == tables_.end()) return 0;
  const auto cit = kit->second.find(ctx);
  if (cit == kit->second.end()) return 0;
  const auto oit = cit->second.find(outcome);
  return oit == cit->second.end() ? 0 : oit->second;
}

double DecisionModel::probability(DecisionKind kind, const ContextKey& ctx,
                                  const std::vector<int>& admissible, int outcome) const {
  if (admissible.empty()) throw std::invalid_argument("model: empty admissible set");
  if (admissible.size() == 1) {
    if (admissible[0] != outcome)
      throw std::invalid_argument("model: outcome violates a structural constraint");
    return 1.0;
  }
  if (uniform_) return 1.0 / static_cast<double>(admissible.size());
  double total = 0.0;
  for (const int o : admissible) total += static_cast<double>(count(kind, ctx, o));
  const double denom = total + alpha_ * static_cast<double>(admissible.size());
  return (static_cast<double>(count(kind, ctx, outcome)) + alpha_) / denom;
}

double DecisionModel::probability_one(DecisionKind kind, const ContextKey& ctx) const {
  return probability(kind, ctx, kBinary, 1);
}

DecisionModel uniform_model(int plr_cap) { return DecisionModel(true, 1.0, plr_cap); }

namespace {

// ---- tree-length decisions -------------------------------------------------

struct TreeLengthStep {
  ContextKey ctx;
  std::vector<int> admissible;  // offsets from lo; kTerminalOutcome for the end
  int lo = 0;
};

// Admissible outcomes for the next descent length given the builder
// state. Scoring widens the cap to keep every real sequence in support;
// offsets past the model cap share its top table slot.
TreeLengthStep tree_length_step(const PlrBuilder& builder, int cap, int budget_hi) {
  const PlrBounds b = builder.bounds(cap);
  TreeLengthStep step;
  const bool at_root = builder.extending_node() == 0;
  step.lo = at_root ? std::max(1, b.lower) : b.lower;
  int hi = std::min(b.upper, budget_hi);
  if (b.terminal_zero_allowed) step.admissible.push_back(DecisionModel::kTerminalOutcome);
  for (int v = step.lo; v <= hi; ++v) {
    if (v == 0 && at_root) continue;
    step.admissible.push_back(v - step.lo);
  }
  step.ctx = tree_ctx(builder.extending_depth(), step.lo > 0,
                      hi >= step.lo ? hi - step.lo : 0);
  return step;
}

int tree_outcome_id(int outcome, int plr_cap) {
  return outcome == DecisionModel::kTerminalOutcome ? outcome : std::min(outcome, plr_cap);
}

double tree_outcome_probability(const DecisionModel& model, const TreeLengthStep& step,
                                int outcome) {
  if (step.admissible.size() == 1) {
    if (step.admissible[0] != outcome)
      throw std::invalid_argument("model: tree length violates bounds");
    return 1.0;
  }
  if (model.uniform()) return 1.0 / static_cast<double>(step.admissible.size());
  double total = 0.0;
  for (const int o : step.admissible)
    total += static_cast<double>(
        model.count(DecisionKind::TreeLength, step.ctx, tree_outcome_id(o, model.plr_cap())));
  const double denom =
      total + model.alpha() * static_cast<double>(step.admissible.size());
  return (static_cast<double>(model.count(DecisionKind::TreeLength, step.ctx,
                                          tree_outcome_id(outcome, model.plr_cap()))) +
          model.alpha()) /
         denom;
}

constexpr int kNoBudget = std::numeric_limits<int>::max();

// ---- scoring / training ----------------------------------------------------

// Walks a decision sequence and either accumulates its negative
// log-likelihood or updates count tables (teacher forcing). Forced
// decisions are charged at probability one and never counted.
double walk_sequence(const DecisionModel& model, DecisionModel* learn,
                     const DecisionSequence& ds) {
  double nll = 0.0;

  PlrBuilder builder;
  for (const int len : ds.tree_plr.lengths) {
    const int cap = std::max(model.plr_cap(), std::max(1, len));
    const TreeLengthStep step = tree_length_step(builder, cap, kNoBudget);
    const bool terminal = len == 0 && builder.extending_node() == 0;
    const int outcome = terminal ? DecisionModel::kTerminalOutcome : len - step.lo;
    if (learn) {
      if (step.admissible.size() > 1)
        learn->observe(DecisionKind::TreeLength, step.ctx,
                       tree_outcome_id(outcome, learn->plr_cap()));
    } else {
      nll -= std::log(tree_outcome_probability(model, step, outcome));
    }
    builder.append(len);
  }
  if (!builder.complete())
    throw std::invalid_argument("model: tree sequence is incomplete");

  const RootedTree tree = builder.tree();
  std::vector<int> child_count(tree.r, 0);
  for (int v = 0; v < tree.r; ++v)
    if (tree.parent[v] >= 0) ++child_count[tree.parent[v]];
  if (static_cast<int>(ds.supernodes.size()) != tree.r)
    throw std::invalid_argument("model: section count mismatch");

  auto charge_binary = [&](DecisionKind kind, const ContextKey& ctx, int forced, int actual) {
    if (forced >= 0) {
      if (forced != actual)
        throw std::invalid_argument("model: sequence violates a structural constraint");
      return;
    }
    if (learn) {
      learn->observe(kind, ctx, actual);
    } else {
      const double p1 = model.probability_one(kind, ctx);
      nll -= std::log(actual ? p1 : 1.0 - p1);
    }
  };

  std::vector<int> member_count(tree.r, 0);
  for (int s = 0; s < tree.r; ++s) {
    const auto& section = ds.supernodes[s];
    int shared = 0;
    if (s > 0) {
      const int parent_size = member_count[tree.parent[s]];
      if (static_cast<int>(section.sharing.size()) != parent_size)
        throw std::invalid_argument("model: sharing length mismatch");
      for (int j = 0; j < parent_size; ++j) {
        const int bit = section.sharing[j] ? 1 : 0;
        charge_binary(DecisionKind::Share, share_ctx(j, parent_size, shared),
                      share_forced(j, parent_size, shared), bit);
        shared += bit;
      }
      if (shared == 0) throw std::invalid_argument("model: empty sharing set");
    }

    const int adds = static_cast<int>(section.edge_bits.size());
    if (adds < 1) throw std::invalid_argument("model: supernode adds no node");
    int bag_size = shared;
    for (int t = 0; t < adds; ++t) {
      if (t > 0) {
        // The first addition is implicit; later ones are decisions.
        charge_binary(DecisionKind::Add, add_ctx(t, shared),
                      add_forced_on(bag_size, child_count[s] > 0) ? 1 : -1, 1);
      }
      const auto& row = section.edge_bits[t];
      if (static_cast<int>(row.size()) != bag_size)
        throw std::invalid_argument("model: edge row length mismatch");
      int degree = 0;
      for (int k = 0; k < bag_size; ++k) {
        const int bit = row[k] ? 1 : 0;
        charge_binary(DecisionKind::Edge, edge_ctx(k, degree), -1, bit);
        degree += bit;
      }
      ++bag_size;
    }
    // Stop decision closes the supernode.
    charge_binary(DecisionKind::Add, add_ctx(adds, shared),
                  add_forced_on(bag_size, child_count[s] > 0) ? 1 : -1, 0);
    member_count[s] = bag_size;
  }
  return nll;
}

// ---- sampling ----------------------------------------------------------

int sample_outcome(const DecisionModel& model, const TreeLengthStep& step, Rng& rng) {
  if (step.admissible.size() == 1) return step.admissible[0];
  double u = rng.unit();
  double acc = 0.0;
  for (const int o : step.admissible) {
    acc += tree_outcome_probability(model, step, o);
    if (u < acc) return o;
  }
  return step.admissible.back();
}

int sample_binary(const DecisionModel& model, DecisionKind kind, const ContextKey& ctx,
                  int forced, Rng& rng) {
  if (forced >= 0) return forced;
  return rng.bernoulli(model.probability_one(kind, ctx)) ? 1 : 0;
}

// Samples the tree stage. The node budget reserves room for the mandatory
// second root branch so termination never violates centrality.
void sample_plr_into(PlrBuilder& builder, const DecisionModel& model, int plr_cap,
                     int max_nodes, Rng& rng) {
  while (!builder.complete()) {
    const int budget = max_nodes - builder.node_count();
    int budget_hi;
    if (builder.root_branch_count() == 0) {
      budget_hi = (budget + 1) / 2;
    } else if (builder.root_branch_count() == 1) {
      const int first_len = builder.entries()[0];
      budget_hi = builder.extending_node() == 0 ? budget : budget - (first_len - 1);
    } else {
      budget_hi = budget;
    }
    const TreeLengthStep step = tree_length_step(builder, plr_cap, std::max(budget_hi, 0));
    const int outcome = sample_outcome(model, step, rng);
    builder.append(outcome == DecisionModel::kTerminalOutcome ? 0 : step.lo + outcome);
  }
}

}  // namespace

DecisionSequence sample_decision_sequence(const DecisionModel& model,
                                          const SampleLimits& limits, uint64_t seed) {
  if (limits.plr_cap < 1 || limits.max_nodes < 1)
    throw std::invalid_argument("sample: limits must be positive");
  Rng rng = Rng(seed).substream("sample");

  // Reserve one node of the graph budget so the root bag can always grow
  // to two members when the tree has more than one supernode.
  const int tree_budget = std::max(1, limits.max_nodes - 1);
  PlrBuilder builder;
  sample_plr_into(builder, model, limits.plr_cap, tree_budget, rng);

  DecisionSequence ds;
  ds.tree_plr = Plr{builder.entries()};
  const RootedTree tree = builder.tree();
  const int r = tree.r;
  std::vector<int> child_count(r, 0);
  for (int v = 0; v < r; ++v)
    if (tree.parent[v] >= 0) ++child_count[tree.parent[v]];

  ds.supernodes.resize(r);
  std::vector<int> member_count(r, 0);
  int total_nodes = 0;

  for (int s = 0; s < r; ++s) {
    SupernodeDecisions& section = ds.supernodes[s];
    int shared = 0;
    if (s > 0) {
      const int parent_size = member_count[tree.parent[s]];
      section.sharing.resize(parent_size);
      for (int j = 0; j < parent_size; ++j) {
        const int bit = sample_binary(model, DecisionKind::Share, share_ctx(j, parent_size, shared),
                                      share_forced(j, parent_size, shared), rng);
        section.sharing[j] = static_cast<uint8_t>(bit);
        shared += bit;
      }
    }

    const int reserve = r - 1 - s;  // one node for each unprocessed supernode
    int bag_size = shared;
    int added = 0;
    while (true) {
      bool add;
      if (added == 0) {
        add = true;  // implicit first addition
      } else if (add_forced_on(bag_size, child_count[s] > 0)) {
        add = true;
      } else if (total_nodes >= limits.max_nodes - reserve) {
        add = false;  // budget stop
      } else {
        add = sample_binary(model, DecisionKind::Add, add_ctx(added, shared), -1, rng) == 1;
      }
      if (!add) break;

      std::vector<uint8_t> row(bag_size, 0);
      int degree = 0;
      for (int k = 0; k < bag_size; ++k) {
        // The last chance to attach an otherwise isolated node: keeping
        // every bag internally connected keeps the whole graph connected.
        const int forced = (k == bag_size - 1 && degree == 0) ? 1 : -1;
        const int bit =
            sample_binary(model, DecisionKind::Edge, edge_ctx(k, degree), forced, rng);
        row[k] = static_cast<uint8_t>(bit);
        degree += bit;
      }
      section.edge_bits.push_back(std::move(row));
      ++bag_size;
      ++added;
      ++total_nodes;
    }
    member_count[s] = bag_size;
  }
  return ds;
}

Graph sample_graph(const DecisionModel& model, const SampleLimits& limits, uint64_t seed) {
  return decode_graph(sample_decision_sequence(model, limits, seed));
}

Plr sample_plr(const DecisionModel& model, int plr_cap, int max_nodes, uint64_t seed) {
  if (plr_cap < 1 || max_nodes < 1)
    throw std::invalid_argument("sample: limits must be positive");
  Rng rng = Rng(seed).substream("sample-tree");
  PlrBuilder builder;
  sample_plr_into(builder, model, plr_cap, max_nodes, rng);
  return Plr{builder.entries()};
}

Graph sample_tree(const DecisionModel& model, int plr_cap, int max_nodes, uint64_t seed) {
  const Plr plr = sample_plr(model, plr_cap, max_nodes, seed);
  return plr_decode_prefix(plr.lengths).tree.to_graph();
}

DecisionModel train_count_model(const std::vector<Graph>& dataset, int epochs, double alpha,
                                uint64_t seed) {
  if (dataset.empty()) throw std::invalid_argument("train: empty dataset");
  if (epochs < 1) throw std::invalid_argument("train: epochs must be positive");
  if (!(alpha > 0)) throw std::invalid_argument("train: alpha must be positive");
  for (const auto& g : dataset)
    if (!is_connected(g)) throw std::invalid_argument("train: disconnected graph in dataset");

  // Fix the tree-length alphabet from the data before counting.
  int max_len = 1;
  for (const auto& g : dataset) {
    const auto ds = encode_graph(g, Permutation::identity(g.node_count()));
    for (const int len : ds.tree_plr.lengths) max_len = std::max(max_len, len);
  }
  DecisionModel model(false, alpha, max_len + 4);

  const Rng root(seed);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    for (size_t i = 0; i < dataset.size(); ++i) {
      Rng stream = root.substream("epoch", static_cast<uint64_t>(epoch))
                       .substream("graph", static_cast<uint64_t>(i));
      const Permutation perm{stream.shuffled_ids(dataset[i].node_count())};
      const DecisionSequence ds = encode_graph(dataset[i], perm);
      walk_sequence(model, &model, ds);
    }
  }
  return model;
}

double sequence_nll(const DecisionModel& model, const DecisionSequence& ds) {
  return walk_sequence(model, nullptr, ds);
}

NllResult nll(const DecisionModel& model, const Graph& g, int n_perms, uint64_t seed) {
  if (n_perms < 1) throw std::invalid_argument("nll: n_perms must be positive");
  if (!is_connected(g)) throw std::invalid_argument("nll: graph is disconnected");

  const Rng root(seed);
  NllResult result;
  result.per_perm.reserve(n_perms);
  std::map<std::string, double> distinct;
  for (int i = 0; i < n_perms; ++i) {
    Rng stream = root.substream("perm", static_cast<uint64_t>(i));
    const Permutation perm{stream.shuffled_ids(g.node_count())};
    const DecisionSequence ds = encode_graph(g, perm);
    const double value = sequence_nll(model, ds);
    result.per_perm.push_back(value);
    distinct.emplace(to_bytes(ds), value);
  }
  double sum = 0.0;
  for (const double v : result.per_perm) sum += v;
  result.expected = sum / static_cast<double>(n_perms);

  // -log sum of the distinct sequences' probabilities, via log-sum-exp.
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [bytes, value] : distinct) best = std::min(best, value);
  double acc = 0.0;
  for (const auto& [bytes, value] : distinct) acc += std::exp(best - value);
  result.marginal = best - std::log(acc);
  return result;
}

// ---- persistence -----------------------------------------------------------

namespace {

const char* kind_name(int kind) {
  switch (static_cast<DecisionKind>(kind)) {
    case DecisionKind::TreeLength: return "tree_length";
    case DecisionKind::Share: return "share";
    case DecisionKind::Add: return "add";
    case DecisionKind::Edge: return "edge";
  }
  throw std::logic_error("unknown decision kind");
}

int kind_from_name(const std::string& name) {
  for (int k = 0; k < 4; ++k)
    if (name == kind_name(k)) return k;
  throw std::invalid_argument("model: unknown table '" + name + "'");
}

}  // namespace

std::string DecisionModel::to_json() const {
  nlohmann::json doc;
  doc["format"] = "graphtd-model";
  doc["version"] = 1;
  doc["uniform"] = uniform_;
  doc["alpha"] = alpha_;
  doc["plr_cap"] = plr_cap_;
  nlohmann::json tables = nlohmann::json::object();
  for (const auto& [kind, contexts] : tables_) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [ctx, outcomes] : contexts)
      for (const auto& [outcome, n] : outcomes)
        rows.push_back({ctx[0], ctx[1], ctx[2], outcome, n});
    tables[kind_name(kind)] = std::move(rows);
  }
  doc["tables"] = std::move(tables);
  return doc.dump(2) + "\n";
}

DecisionModel DecisionModel::from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (doc.value("format", "") != std::string("graphtd-model"))
    throw std::invalid_argument("model: unrecognized file format");
  DecisionModel model(doc.at("uniform").get<bool>(), doc.at("alpha").get<double>(),
                      doc.at("plr_cap").get<int>());
  for (const auto& [name, rows] : doc.at("tables").items()) {
    const int kind = kind_from_name(name);
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != 5)
        throw std::invalid_argument("model: malformed count row");
      const ContextKey ctx{row[0].get<int>(), row[1].get<int>(), row[2].get<int>()};
      model.tables_[kind][ctx][row[3].get<int>()] = row[4].get<std::uint64_t>();
    }
  }
  return model;
}

void DecisionModel::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("model: cannot write " + path);
  out << to_json();
}

DecisionModel DecisionModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("model: cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

}  // namespace graphtd

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphtd/graph.hpp"
#include "graphtd/graph_codec.hpp"

namespace graphtd {

enum class DecisionKind { TreeLength, Share, Add, Edge };

/// Discrete conditioning context: small tuples of bounded integers.
///   TreeLength: (min(extension depth, 8), lower-bound-positive, min(range width, 15))
///   Share:      (min(bit index, 15), min(parent bag size, 15), min(ones so far, 15))
///   Add:        (min(new nodes so far, 15), min(shared count, 15), 0)
///   Edge:       (min(candidate index, 15), min(new node's in-bag degree, 15), 0)
using ContextKey = std::array<int, 3>;

/// Count-based probability tables over decision outcomes, Laplace-smoothed.
/// TreeLength outcomes are offsets from the instance lower bound within a
/// fixed alphabet of plr_cap + 1 values plus one terminal slot; binary
/// decisions have outcomes {0, 1}. Per instance, probabilities are
/// renormalized over the admissible outcome set.
class DecisionModel {
 public:
  static constexpr int kTerminalOutcome = -1;

  DecisionModel() = default;
  DecisionModel(bool uniform, double alpha, int plr_cap)
      : uniform_(uniform), alpha_(alpha), plr_cap_(plr_cap) {}

  bool uniform() const { return uniform_; }
  double alpha() const { return alpha_; }
  int plr_cap() const { return plr_cap_; }
  void set_plr_cap(int cap) { plr_cap_ = cap; }

  void observe(DecisionKind kind, const ContextKey& ctx, int outcome);
  std::uint64_t count(DecisionKind kind, const ContextKey& ctx, int outcome) const;

  /// Probability of `outcome` among the admissible outcomes. Positive for
  /// every admissible outcome whenever alpha > 0 or the model is uniform.
  double probability(DecisionKind kind, const ContextKey& ctx,
                     const std::vector<int>& admissible, int outcome) const;

  /// p(bit = 1) for a binary decision with both outcomes admissible.
  double probability_one(DecisionKind kind, const ContextKey& ctx) const;

  std::string to_json() const;
  static DecisionModel from_json(const std::string& text);
  void save(const std::string& path) const;
  static DecisionModel load(const std::string& path);

  bool operator==(const DecisionModel&) const = default;

 private:
  bool uniform_ = true;
  double alpha_ = 1.0;
  int plr_cap_ = 24;
  // kind -> context -> outcome -> count
  std::map<int, std::map<ContextKey, std::map<int, std::uint64_t>>> tables_;
};

/// Every admissible outcome equiprobable.
DecisionModel uniform_model(int plr_cap = 24);

/// One fresh permutation per graph per epoch; counts every charged
/// decision of the exact replayed sequence. The tree-length cap is set to
/// the longest observed descent plus slack.
DecisionModel train_count_model(const std::vector<Graph>& dataset, int epochs,
                                double alpha, uint64_t seed);

struct SampleLimits {
  int plr_cap = 24;
  int max_nodes = 64;
};

/// Samples a full decision sequence (tree, sharing, adds, edges) and
/// decodes it. Structural forcings keep the replayed decomposition valid
/// and minimal and the graph connected; node budgets force stops, so
/// termination is unconditional.
Graph sample_graph(const DecisionModel& model, const SampleLimits& limits, uint64_t seed);
DecisionSequence sample_decision_sequence(const DecisionModel& model,
                                          const SampleLimits& limits, uint64_t seed);

/// Samples only the tree stage and returns the decoded tree.
Graph sample_tree(const DecisionModel& model, int plr_cap, int max_nodes, uint64_t seed);
Plr sample_plr(const DecisionModel& model, int plr_cap, int max_nodes, uint64_t seed);

struct NllResult {
  std::vector<double> per_perm;
  double expected = 0.0;
  double marginal = 0.0;
};

/// Negative log-likelihood of one graph's decision sequence per sampled
/// permutation (natural log), the mean, and the distinct-sequence
/// marginal estimate -log sum over distinct observed sequences.
NllResult nll(const DecisionModel& model, const Graph& g, int n_perms, uint64_t seed);

/// NLL of one explicit sequence under the model.
double sequence_nll(const DecisionModel& model, const DecisionSequence& ds);

}  // namespace graphtd

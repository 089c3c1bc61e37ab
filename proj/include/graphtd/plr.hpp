#pragma once

#include <string>
#include <vector>

#include "graphtd/graph.hpp"
#include "graphtd/tree_canon.hpp"

namespace graphtd {

/// Path-length representation of an unlabeled tree: the sequence of DFS
/// descent lengths, with a 0 appended each time an internal node finishes.
/// One entry per node; nonzero entries correspond to leaves.
struct Plr {
  std::vector<int> lengths;
  bool operator==(const Plr&) const = default;
};

/// Admissible range for the next entry given a prefix. Values in
/// [lower, upper] continue the tree; a 0 at the root ends it and is
/// reported through terminal_zero_allowed instead of the range. When no
/// continuing value is admissible, lower == upper == 0.
struct PlrBounds {
  int lower = 0;
  int upper = 0;
  bool terminal_zero_allowed = false;
};

struct PlrPrefixDecode {
  RootedTree tree;
  int extending_node = 0;
  bool complete = false;
};

/// Thrown when a sequence entry falls outside the admissible bounds of
/// its prefix; position is the offending index.
struct PlrValidityError {
  int position;
  int value;
  std::string reason;
};

/// Incremental construction of a tree from PLR entries, with exact
/// admissible bounds at every step. Used by the codec, the validator,
/// the enumerator and the samplers.
class PlrBuilder {
 public:
  PlrBuilder();

  /// Bounds for the next entry; cap limits the upper bound where the
  /// structural constraints leave it open (the first descent).
  PlrBounds bounds(int cap) const;

  /// Appends one entry after checking it against bounds(). Throws
  /// std::invalid_argument with the offending position on violation.
  void append(int value);

  bool complete() const { return complete_; }
  int node_count() const { return static_cast<int>(parent_.size()); }
  int entry_count() const { return static_cast<int>(entries_.size()); }
  int extending_node() const { return ext_; }
  int extending_depth() const { return depth_[ext_]; }
  int root_branch_count() const { return root_branches_; }
  const std::vector<int>& entries() const { return entries_; }

  RootedTree tree() const;

 private:
  bool continue_value_ok(int value) const;
  std::string tentative_name_violation(int value) const;
  void freeze(int node);

  std::vector<int> entries_;
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<int> height_;        // fixed at creation: chain below at add time
  std::vector<int> left_brother_;  // -1 when first child
  std::vector<int> last_child_;    // -1 when none
  std::vector<std::string> frozen_name_;
  std::vector<std::string> kids_concat_;  // frozen children names, creation order
  std::vector<bool> frozen_;

  int ext_ = 0;
  bool complete_ = false;
  int root_branches_ = 0;
  int first_len_ = 0;          // first descent length = final height of branch 1
  bool two_center_ = false;    // second root branch one shorter than the first
  std::string first_branch_name_;  // frozen name of the first root child
};

/// Encodes a tree, rooting it at its canonical root and visiting children
/// in canonical order. Isomorphic trees yield identical sequences.
Plr plr_encode(const Graph& tree);
Plr plr_encode(const RootedTree& rooted);

/// Reconstructs the partial tree of a valid prefix together with the
/// extension point. complete is true when the prefix is a whole PLR.
PlrPrefixDecode plr_decode_prefix(const std::vector<int>& prefix);

PlrBounds plr_bounds(const std::vector<int>& prefix, int cap);

bool plr_is_valid(const std::vector<int>& seq);

/// All valid PLRs of length exactly r, lexicographically sorted.
/// Supported for r <= 9.
std::vector<Plr> enumerate_valid_plrs(int r);

std::string plr_to_string(const Plr& p);
Plr plr_from_string(const std::string& text);

}  // namespace graphtd

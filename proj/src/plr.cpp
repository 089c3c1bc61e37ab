#include "graphtd/plr.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace graphtd {

namespace {

constexpr int kNoCap = std::numeric_limits<int>::max();

std::string chain_name(int len) {
  std::string s(static_cast<size_t>(len), 'a');
  s.append(static_cast<size_t>(len), 'b');
  return s;
}

}  // namespace

PlrBuilder::PlrBuilder() {
  // Root node 0 exists before any entry.
  parent_.push_back(-1);
  depth_.push_back(0);
  height_.push_back(0);
  left_brother_.push_back(-1);
  last_child_.push_back(-1);
  frozen_name_.emplace_back();
  kids_concat_.emplace_back();
  frozen_.push_back(false);
}

void PlrBuilder::freeze(int node) {
  frozen_[node] = true;
  frozen_name_[node] = "a" + kids_concat_[node] + "b";
  const int p = parent_[node];
  if (p >= 0) {
    kids_concat_[p] += frozen_name_[node];
    if (p == 0 && left_brother_[node] == -1) first_branch_name_ = frozen_name_[node];
  }
}

// Checks whether a path of length value appended at the extension point
// keeps every name constraint satisfiable: along the ancestor chain each
// node with an equal-height left brother must not outgrow it, and in the
// two-center state the root minus its first branch must not outgrow the
// first branch. Names of nodes strictly shorter than their left brother
// can never catch up (the leading 'a' run encodes height), so only
// equal-height comparisons are evaluated.
bool PlrBuilder::continue_value_ok(int value) const {
  std::string cur = chain_name(value);
  int w = ext_;
  while (true) {
    if (w == 0) {
      if (two_center_) {
        std::string rest = "a";
        rest += kids_concat_[0].substr(first_branch_name_.size());
        rest += cur;
        rest += 'b';
        if (name_greater(rest, first_branch_name_)) return false;
      }
      return true;
    }
    const int lb = left_brother_[w];
    std::string tent = "a";
    tent += kids_concat_[w];
    tent += cur;
    tent += 'b';
    if (lb != -1 && height_[w] == height_[lb] && name_greater(tent, frozen_name_[lb]))
      return false;
    cur = std::move(tent);
    w = parent_[w];
  }
}

PlrBounds PlrBuilder::bounds(int cap) const {
  if (complete_) throw std::invalid_argument("plr: sequence already complete");
  if (cap < 1) throw std::invalid_argument("plr: cap must be positive");
  PlrBounds b;
  if (ext_ == 0) {
    const int m = root_branches_;
    if (m == 0) {
      b.lower = 1;
      b.upper = cap;
      b.terminal_zero_allowed = true;
      return b;
    }
    if (m == 1) {
      // The second root branch fixes centrality: its descent must be the
      // first descent or one shorter.
      b.terminal_zero_allowed = first_len_ <= 1;
      b.lower = std::max(1, first_len_ - 1);
      b.upper = std::min(first_len_, cap);
      if (b.upper < b.lower) {
        if (!b.terminal_zero_allowed)
          throw std::invalid_argument("plr: cap too small to extend this prefix");
        b.lower = b.upper = 0;
      }
      return b;
    }
    b.terminal_zero_allowed = true;
    const int hi = std::min(cap, height_[last_child_[0]] + 1);
    int found = 0;
    for (int v = hi; v >= 1; --v) {
      if (continue_value_ok(v)) {
        found = v;
        break;
      }
    }
    b.lower = found >= 1 ? 1 : 0;
    b.upper = found;
    return b;
  }
  b.lower = 0;
  const int hi = std::min(cap, height_[last_child_[ext_]] + 1);
  int found = 0;
  for (int v = hi; v >= 1; --v) {
    if (continue_value_ok(v)) {
      found = v;
      break;
    }
  }
  b.upper = found;
  return b;
}

void PlrBuilder::append(int value) {
  const int position = entry_count();
  if (complete_)
    throw std::invalid_argument("plr: entry " + std::to_string(position) +
                                " after the sequence completed");
  if (value < 0)
    throw std::invalid_argument("plr: negative entry at position " + std::to_string(position));
  const PlrBounds b = bounds(kNoCap);
  if (value == 0) {
    if (ext_ == 0 && !b.terminal_zero_allowed)
      throw std::invalid_argument("plr: premature terminal at position " +
                                  std::to_string(position));
  } else {
    const bool in_range = b.upper >= 1 && value >= std::max(1, b.lower) && value <= b.upper;
    if (!in_range)
      throw std::invalid_argument("plr: entry " + std::to_string(value) + " at position " +
                                  std::to_string(position) + " outside bounds [" +
                                  std::to_string(b.lower) + ", " + std::to_string(b.upper) + "]");
  }

  if (value == 0) {
    if (ext_ == 0) {
      complete_ = true;
    } else {
      freeze(ext_);
      ext_ = parent_[ext_];
    }
    entries_.push_back(0);
    return;
  }

  if (ext_ == 0) {
    ++root_branches_;
    if (root_branches_ == 1) first_len_ = value;
    else if (root_branches_ == 2 && value == first_len_ - 1) two_center_ = true;
  }
  int prev = ext_;
  for (int j = 0; j < value; ++j) {
    const int id = node_count();
    parent_.push_back(prev);
    depth_.push_back(depth_[prev] + 1);
    height_.push_back(value - 1 - j);
    left_brother_.push_back(j == 0 ? last_child_[prev] : -1);
    last_child_.push_back(-1);
    frozen_name_.emplace_back();
    kids_concat_.emplace_back();
    frozen_.push_back(false);
    last_child_[prev] = id;
    prev = id;
  }
  freeze(prev);  // the new leaf
  ext_ = parent_[prev];
  entries_.push_back(value);
}

RootedTree PlrBuilder::tree() const {
  RootedTree t;
  t.r = node_count();
  t.root = 0;
  t.parent = parent_;
  return t;
}

Plr plr_encode(const RootedTree& rooted) {
  const auto names = canonical_names(rooted);
  auto children = rooted.children();
  for (auto& ch : children) {
    std::sort(ch.begin(), ch.end(), [&](int a, int b) {
      if (names[a] != names[b]) return name_greater(names[a], names[b]);
      return a < b;
    });
  }
  Plr plr;
  plr.lengths.reserve(rooted.r);
  auto dfs = [&](auto&& self, int v, int len) -> void {
    for (const int u : children[v]) {
      self(self, u, len + 1);
      len = 0;
    }
    plr.lengths.push_back(len);
  };
  dfs(dfs, rooted.root, 0);
  return plr;
}

Plr plr_encode(const Graph& tree) {
  const int root = canonical_root(tree);
  return plr_encode(RootedTree::from_graph(tree, root));
}

PlrPrefixDecode plr_decode_prefix(const std::vector<int>& prefix) {
  PlrBuilder builder;
  for (const int v : prefix) builder.append(v);
  PlrPrefixDecode out;
  out.tree = builder.tree();
  out.extending_node = builder.extending_node();
  out.complete = builder.complete();
  return out;
}

PlrBounds plr_bounds(const std::vector<int>& prefix, int cap) {
  if (cap < 1) throw std::invalid_argument("plr_bounds: cap must be positive");
  PlrBuilder builder;
  for (const int v : prefix) builder.append(v);
  return builder.bounds(cap);
}

bool plr_is_valid(const std::vector<int>& seq) {
  PlrBuilder builder;
  try {
    for (const int v : seq) builder.append(v);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return builder.complete();
}

namespace {

void enumerate_rec(const PlrBuilder& builder, int r, std::vector<Plr>& out) {
  const PlrBounds b = builder.bounds(r);  // no descent can exceed r - 1 < r
  const int used = builder.entry_count();
  const int nodes = builder.node_count();

  if (builder.extending_node() == 0 && b.terminal_zero_allowed && used + 1 == r) {
    PlrBuilder done = builder;
    done.append(0);
    out.push_back(Plr{done.entries()});
  }
  const int lo = builder.extending_node() == 0 ? std::max(1, b.lower) : b.lower;
  for (int v = lo; v <= b.upper; ++v) {
    if (v == 0 && builder.extending_node() == 0) continue;
    if (nodes + v > r) continue;
    // After this entry we still need pops back to the root plus the final 0.
    const int new_ext_depth =
        v == 0 ? builder.extending_depth() - 1 : builder.extending_depth() + v - 1;
    if (used + 1 + new_ext_depth + 1 > r) continue;
    PlrBuilder next = builder;
    next.append(v);
    enumerate_rec(next, r, out);
  }
}

}  // namespace

std::vector<Plr> enumerate_valid_plrs(int r) {
  if (r < 1 || r > 9)
    throw std::invalid_argument("enumerate_valid_plrs: r must be between 1 and 9");
  std::vector<Plr> out;
  enumerate_rec(PlrBuilder(), r, out);
  std::sort(out.begin(), out.end(),
            [](const Plr& a, const Plr& b) { return a.lengths < b.lengths; });
  return out;
}

std::string plr_to_string(const Plr& p) {
  std::ostringstream out;
  for (size_t i = 0; i < p.lengths.size(); ++i) {
    if (i > 0) out << ',';
    out << p.lengths[i];
  }
  return out.str();
}

Plr plr_from_string(const std::string& text) {
  Plr p;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    size_t used = 0;
    int v;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("plr: bad token '" + token + "'");
    }
    if (used != token.size() || v < 0)
      throw std::invalid_argument("plr: bad token '" + token + "'");
    p.lengths.push_back(v);
  }
  if (p.lengths.empty()) throw std::invalid_argument("plr: empty sequence");
  return p;
}

}  // namespace graphtd

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphtd/graph.hpp"

namespace graphtd {

struct Dataset {
  std::vector<Graph> graphs;
  std::string name;
  uint64_t seed = 0;

  int size() const { return static_cast<int>(graphs.size()); }
};

/// Two-community graphs: |V| uniform in [min_n, max_n], halves of size
/// ceil/floor, intra-community edges i.i.d. with probability p_in, and
/// ceil(inter_frac * |V|) distinct cross edges drawn without replacement.
/// Whole graphs are resampled until connected (error after 1000 tries).
Dataset gen_community(int count, int min_n, int max_n, double p_in, double inter_frac,
                      uint64_t seed);

/// Lobster trees: geometric backbone length with the given mean, then
/// level-1 leaves per backbone node with probability p1 (repeated until
/// failure) and level-2 leaves per level-1 node with probability p2,
/// truncated at max_n nodes.
Dataset gen_lobster(int count, double expected_backbone, double p1, double p2, int max_n,
                    uint64_t seed);

/// Multi-graph text format: per graph a "# graph <index> <n>" header then
/// edge lines, blank-line separated. Loading rejects disconnected graphs
/// and empty files.
Dataset load_dataset(const std::string& path);
void save_dataset(const Dataset& ds, const std::string& path);
Dataset dataset_from_text(const std::string& text, const std::string& name);
std::string dataset_to_text(const Dataset& ds);

struct DatasetSplit {
  Dataset train;
  Dataset validation;
  Dataset test;
};

/// Seeded shuffle then 70/10/20 split (floor for train and validation,
/// remainder test). Requires at least 10 graphs.
DatasetSplit split_dataset(const Dataset& ds, uint64_t seed);

}  // namespace graphtd

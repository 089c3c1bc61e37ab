#pragma once

#include <string>
#include <vector>

#include "graphtd/graph.hpp"

namespace graphtd {

/// 1D histogram with explicit bin edges; masses sum to 1 unless the
/// support is empty (all-zero masses).
struct Histogram {
  std::vector<double> edges;   // size = bins + 1, strictly increasing
  std::vector<double> masses;  // size = bins
};

enum class GraphStatistic { Degree, Clustering, Orbit4, Spectral };

/// Degree: unit-width integer bins 0..max degree.
/// Clustering: local coefficients, 100 uniform bins on [0, 1].
/// Orbit4: the 11 node orbits of connected four-node subgraphs by
///   exhaustive enumeration (bins 0..10, see stats.cpp for the order).
/// Spectral: normalized Laplacian eigenvalues, 200 uniform bins on [0, 2]
///   (connected input required).
Histogram graph_statistic(const Graph& g, GraphStatistic kind);

/// Raw orbit incidence counts, exposed for census checks.
std::vector<std::int64_t> orbit4_counts(const Graph& g);

struct MmdKernel {
  enum class Type { GaussianEmd, TotalVariation };
  Type type = Type::GaussianEmd;
  double sigma = 1.0;
};

/// 1D earth mover's distance: L1 distance of the CDFs times the bin
/// width. Histograms must share bin width and origin; supports of
/// different extents are aligned first.
double emd(const Histogram& p, const Histogram& q);

double total_variation(const Histogram& p, const Histogram& q);

/// Biased estimate: mean k(a,a') + mean k(b,b') - 2 mean k(a,b),
/// clamped at zero. Identical sets give exactly zero.
double mmd_squared(const std::vector<Histogram>& a, const std::vector<Histogram>& b,
                   const MmdKernel& kernel);
double mmd(const std::vector<Histogram>& a, const std::vector<Histogram>& b,
           const MmdKernel& kernel);

/// True iff g is a tree that becomes a path (possibly empty or a single
/// node) after removing all leaves twice.
bool is_lobster(const Graph& g);

/// Fraction of graphs satisfying is_lobster. Throws on empty input.
double lobster_accuracy(const std::vector<Graph>& gs);

}  // namespace graphtd

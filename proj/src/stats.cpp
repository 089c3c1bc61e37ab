#include "graphtd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace graphtd {

namespace {

Histogram uniform_histogram(double lo, double hi, int bins) {
  Histogram h;
  h.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i)
    h.edges[i] = lo + (hi - lo) * static_cast<double>(i) / bins;
  h.masses.assign(bins, 0.0);
  return h;
}

void deposit(Histogram& h, double value) {
  const double lo = h.edges.front();
  const double hi = h.edges.back();
  const int bins = static_cast<int>(h.masses.size());
  int idx = static_cast<int>(std::floor((value - lo) / (hi - lo) * bins));
  idx = std::clamp(idx, 0, bins - 1);
  h.masses[idx] += 1.0;
}

void normalize(Histogram& h) {
  double total = 0.0;
  for (const double m : h.masses) total += m;
  if (total > 0)
    for (double& m : h.masses) m /= total;
}

Histogram degree_histogram(const Graph& g) {
  const auto degs = g.degrees();
  const int max_deg = *std::max_element(degs.begin(), degs.end());
  Histogram h;
  h.edges.resize(max_deg + 2);
  for (int i = 0; i <= max_deg + 1; ++i) h.edges[i] = i;
  h.masses.assign(max_deg + 1, 0.0);
  for (const int d : degs) h.masses[d] += 1.0;
  normalize(h);
  return h;
}

Histogram clustering_histogram(const Graph& g) {
  Histogram h = uniform_histogram(0.0, 1.0, 100);
  const auto adj = g.adjacency();
  for (int v = 0; v < g.node_count(); ++v) {
    const int d = static_cast<int>(adj[v].size());
    double coeff = 0.0;
    if (d >= 2) {
      int links = 0;
      for (size_t i = 0; i < adj[v].size(); ++i)
        for (size_t j = i + 1; j < adj[v].size(); ++j)
          if (g.has_edge(adj[v][i], adj[v][j])) ++links;
      coeff = 2.0 * links / (static_cast<double>(d) * (d - 1));
    }
    deposit(h, coeff);
  }
  normalize(h);
  return h;
}

// Node orbits of the connected four-node subgraphs:
//   0/1 path ends/middles, 2/3 star leaves/center, 4 cycle,
//   5/6/7 paw pendant/rim/hinge, 8/9 diamond rim/hinge, 10 clique.
void classify_quad(const Graph& g, const int q[4], std::vector<std::int64_t>& counts) {
  int deg[4] = {0, 0, 0, 0};
  int edges = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (g.has_edge(q[i], q[j])) {
        ++edges;
        ++deg[i];
        ++deg[j];
      }
  if (edges < 3) return;
  const int min_deg = *std::min_element(deg, deg + 4);
  if (min_deg == 0) return;  // triangle plus an isolated node
  const int max_deg = *std::max_element(deg, deg + 4);
  for (int i = 0; i < 4; ++i) {
    int orbit;
    switch (edges) {
      case 3:
        orbit = max_deg == 3 ? (deg[i] == 1 ? 2 : 3) : (deg[i] == 1 ? 0 : 1);
        break;
      case 4:
        orbit = max_deg == 2 ? 4 : (deg[i] == 1 ? 5 : deg[i] == 2 ? 6 : 7);
        break;
      case 5:
        orbit = deg[i] == 2 ? 8 : 9;
        break;
      default:
        orbit = 10;
        break;
    }
    ++counts[orbit];
  }
}

Histogram spectral_histogram(const Graph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("graph_statistic: spectral statistic needs a connected graph");
  const int n = g.node_count();
  const auto degs = g.degrees();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) lap(v, v) = degs[v] > 0 ? 1.0 : 0.0;
  for (const auto& [u, v] : g.edges()) {
    const double w = -1.0 / std::sqrt(static_cast<double>(degs[u]) * degs[v]);
    lap(u, v) = w;
    lap(v, u) = w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  Histogram h = uniform_histogram(0.0, 2.0, 200);
  for (int i = 0; i < n; ++i) deposit(h, solver.eigenvalues()[i]);
  normalize(h);
  return h;
}

}  // namespace

std::vector<std::int64_t> orbit4_counts(const Graph& g) {
  std::vector<std::int64_t> counts(11, 0);
  const int n = g.node_count();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          const int q[4] = {a, b, c, d};
          classify_quad(g, q, counts);
        }
  return counts;
}

Histogram graph_statistic(const Graph& g, GraphStatistic kind) {
  if (g.node_count() < 1) throw std::invalid_argument("graph_statistic: empty graph");
  switch (kind) {
    case GraphStatistic::Degree:
      return degree_histogram(g);
    case GraphStatistic::Clustering:
      return clustering_histogram(g);
    case GraphStatistic::Orbit4: {
      const auto counts = orbit4_counts(g);
      Histogram h;
      h.edges.resize(12);
      for (int i = 0; i <= 11; ++i) h.edges[i] = i;
      h.masses.assign(11, 0.0);
      for (int i = 0; i < 11; ++i) h.masses[i] = static_cast<double>(counts[i]);
      normalize(h);
      return h;
    }
    case GraphStatistic::Spectral:
      return spectral_histogram(g);
  }
  throw std::logic_error("graph_statistic: unknown kind");
}

namespace {

// Aligns two histograms that share bin width and origin but may differ in
// extent (integer-binned degree histograms).
std::pair<std::vector<double>, std::vector<double>> aligned(const Histogram& p,
                                                            const Histogram& q,
                                                            double* width) {
  if (p.edges.size() < 2 || q.edges.size() < 2)
    throw std::invalid_argument("histogram: missing bins");
  const double wp = p.edges[1] - p.edges[0];
  const double wq = q.edges[1] - q.edges[0];
  if (std::abs(wp - wq) > 1e-9 || std::abs(p.edges[0] - q.edges[0]) > 1e-9)
    throw std::invalid_argument("histogram: incompatible binnings");
  const size_t bins = std::max(p.masses.size(), q.masses.size());
  std::vector<double> a(bins, 0.0), b(bins, 0.0);
  std::copy(p.masses.begin(), p.masses.end(), a.begin());
  std::copy(q.masses.begin(), q.masses.end(), b.begin());
  if (width) *width = wp;
  return {std::move(a), std::move(b)};
}

}  // namespace

double emd(const Histogram& p, const Histogram& q) {
  double width = 0.0;
  const auto [a, b] = aligned(p, q, &width);
  double acc = 0.0, diff = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    diff += a[i] - b[i];
    acc += std::abs(diff);
  }
  return acc * width;
}

double total_variation(const Histogram& p, const Histogram& q) {
  const auto [a, b] = aligned(p, q, nullptr);
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
  return 0.5 * acc;
}

namespace {

double kernel_value(const Histogram& p, const Histogram& q, const MmdKernel& kernel) {
  if (kernel.type == MmdKernel::Type::GaussianEmd) {
    const double d = emd(p, q);
    return std::exp(-d * d / (2.0 * kernel.sigma * kernel.sigma));
  }
  return std::exp(-total_variation(p, q));
}

}  // namespace

double mmd_squared(const std::vector<Histogram>& a, const std::vector<Histogram>& b,
                   const MmdKernel& kernel) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mmd: empty histogram set");
  double kaa = 0.0, kbb = 0.0, kab = 0.0;
  for (const auto& x : a)
    for (const auto& y : a) kaa += kernel_value(x, y, kernel);
  for (const auto& x : b)
    for (const auto& y : b) kbb += kernel_value(x, y, kernel);
  for (const auto& x : a)
    for (const auto& y : b) kab += kernel_value(x, y, kernel);
  const double value = kaa / (static_cast<double>(a.size()) * a.size()) +
                       kbb / (static_cast<double>(b.size()) * b.size()) -
                       2.0 * kab / (static_cast<double>(a.size()) * b.size());
  return std::max(0.0, value);
}

double mmd(const std::vector<Histogram>& a, const std::vector<Histogram>& b,
           const MmdKernel& kernel) {
  return std::sqrt(mmd_squared(a, b, kernel));
}

bool is_lobster(const Graph& g) {
  if (g.node_count() == 0) return false;
  if (g.edge_count() != g.node_count() - 1 || !is_connected(g)) return false;

  // Two rounds of leaf removal, then the rest must be a path. Stripping
  // the leaves of a tree keeps the remainder connected.
  std::vector<bool> removed(g.node_count(), false);
  const auto adj = g.adjacency();
  auto live_degree = [&](int v) {
    int d = 0;
    for (const int u : adj[v])
      if (!removed[u]) ++d;
    return d;
  };
  for (int round = 0; round < 2; ++round) {
    std::vector<int> leaves;
    for (int v = 0; v < g.node_count(); ++v)
      if (!removed[v] && live_degree(v) == 1) leaves.push_back(v);
    for (const int v : leaves) removed[v] = true;
  }
  for (int v = 0; v < g.node_count(); ++v)
    if (!removed[v] && live_degree(v) > 2) return false;
  return true;
}

double lobster_accuracy(const std::vector<Graph>& gs) {
  if (gs.empty()) throw std::invalid_argument("lobster_accuracy: empty input");
  int hits = 0;
  for (const auto& g : gs)
    if (is_lobster(g)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(gs.size());
}

}  // namespace graphtd

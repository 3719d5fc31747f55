#ifndef RSPFL_METRIC_HPP_
#define RSPFL_METRIC_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "rspfl/rng.hpp"

namespace rspfl {

// i.i.d. Exp(1) weights on the edges of a complete graph, stored
// upper-triangular in (u<v) lexicographic order (0-based vertices).
struct EdgeWeights {
  int n = 0;
  std::vector<double> w;  // n(n-1)/2 entries

  static std::size_t edge_count(int n) {
    return static_cast<std::size_t>(n) * (n - 1) / 2;
  }
  // Linear index of edge {u,v} with u < v.
  std::size_t index(int u, int v) const;
  double at(int u, int v) const { return w[index(u, v)]; }
};

// Shortest-path closure of EdgeWeights: a random shortest path metric.
struct Metric {
  int n = 0;
  std::vector<double> d;  // row-major n*n

  double at(int u, int v) const {
    return d[static_cast<std::size_t>(u) * n + v];
  }
  double& at(int u, int v) { return d[static_cast<std::size_t>(u) * n + v]; }
};

struct MetricViolation {
  enum Kind { kDiagonal, kSymmetry, kTriangle } kind;
  int u, v, s;     // s only meaningful for triangle violations
  double excess;   // amount by which the property fails
  std::string describe() const;
};

EdgeWeights sample_edge_weights(int n, Rng& rng);
Metric build_metric(const EdgeWeights& weights);
std::vector<MetricViolation> validate_metric(const Metric& m,
                                             double rel_tol = 1e-9);

}  // namespace rspfl

#endif  // RSPFL_METRIC_HPP_

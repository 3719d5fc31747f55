#include "rspfl/metric.hpp"

#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace rspfl {

std::size_t EdgeWeights::index(int u, int v) const {
  if (u > v) std::swap(u, v);
  // Row u starts after all rows 0..u-1 of lengths (n-1), (n-2), ...
  return static_cast<std::size_t>(u) * (2 * n - u - 1) / 2 + (v - u - 1);
}

std::string MetricViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case kDiagonal:
      os << "nonzero diagonal at " << u << " (value " << excess << ")";
      break;
    case kSymmetry:
      os << "asymmetry at (" << u << "," << v << "), |d(u,v)-d(v,u)| = "
         << excess;
      break;
    case kTriangle:
      os << "triangle violation at (" << u << "," << v << ") via " << s
         << ": excess " << excess;
      break;
  }
  return os.str();
}

EdgeWeights sample_edge_weights(int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("sample_edge_weights: need n >= 2");
  EdgeWeights ew;
  ew.n = n;
  ew.w.reserve(EdgeWeights::edge_count(n));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) ew.w.push_back(exp_draw(rng));
  return ew;
}

Metric build_metric(const EdgeWeights& weights) {
  const int n = weights.n;
  if (n < 2 || weights.w.size() != EdgeWeights::edge_count(n))
    throw std::invalid_argument("build_metric: malformed EdgeWeights");
  for (double x : weights.w)
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::invalid_argument("build_metric: weights must be positive");

  Metric m;
  m.n = n;
  m.d.assign(static_cast<std::size_t>(n) * n, 0.0);

  // Dijkstra from every source over the complete graph.
  using Item = std::pair<double, int>;
  std::vector<double> dist(n);
  std::vector<char> done(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(),
              std::numeric_limits<double>::infinity());
    std::fill(done.begin(), done.end(), 0);
    dist[s] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (done[u]) continue;
      done[u] = 1;
      for (int v = 0; v < n; ++v) {
        if (v == u || done[v]) continue;
        double nd = du + weights.at(u, v);
        if (nd < dist[v]) {
          dist[v] = nd;
          pq.emplace(nd, v);
        }
      }
    }
    for (int v = 0; v < n; ++v) m.at(s, v) = dist[v];
  }
  // Enforce exact symmetry; per-source runs can differ in the last ulp.
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double x = std::min(m.at(u, v), m.at(v, u));
      m.at(u, v) = x;
      m.at(v, u) = x;
    }
  return m;
}

std::vector<MetricViolation> validate_metric(const Metric& m, double rel_tol) {
  std::vector<MetricViolation> out;
  const int n = m.n;
  for (int u = 0; u < n; ++u)
    if (m.at(u, u) != 0.0)
      out.push_back({MetricViolation::kDiagonal, u, u, -1, m.at(u, u)});
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      double diff = std::abs(m.at(u, v) - m.at(v, u));
      if (diff > 0.0)
        out.push_back({MetricViolation::kSymmetry, u, v, -1, diff});
    }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (v == u) continue;
      for (int s = 0; s < n; ++s) {
        if (s == u || s == v) continue;
        double via = m.at(u, s) + m.at(s, v);
        double slack = rel_tol * std::max(m.at(u, v), via);
        if (m.at(u, v) > via + slack)
          out.push_back(
              {MetricViolation::kTriangle, u, v, s, m.at(u, v) - via});
      }
    }
  return out;
}

}  // namespace rspfl

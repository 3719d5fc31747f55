#include "rspfl/flp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rspfl/stochastics.hpp"

namespace rspfl {

CostProfile make_cost_profile(std::vector<double> raw_costs) {
  if (raw_costs.empty())
    throw std::invalid_argument("make_cost_profile: empty cost list");
  for (double c : raw_costs)
    if (!(c > 0.0) || !std::isfinite(c))
      throw std::invalid_argument("make_cost_profile: costs must be positive");
  std::sort(raw_costs.begin(), raw_costs.end());
  CostProfile p;
  p.F.reserve(raw_costs.size());
  double acc = 0.0;
  for (double c : raw_costs) {
    acc += c;
    p.F.push_back(acc);
  }
  p.f = std::move(raw_costs);
  return p;
}

Instance make_instance(Metric metric, const std::vector<double>& raw_costs,
                       double ratio_exponent) {
  if (static_cast<int>(raw_costs.size()) != metric.n)
    throw std::invalid_argument("make_instance: cost count != vertex count");
  Instance inst;
  inst.costs = make_cost_profile(raw_costs);
  inst.metric = std::move(metric);
  double ratio = inst.costs.f.back() / inst.costs.f.front();
  inst.cost_ratio_warning =
      ratio > std::pow(static_cast<double>(inst.metric.n), ratio_exponent);
  return inst;
}

KappaInfo kappa(const CostProfile& costs) {
  const int n = costs.n();
  int k = 1;  // f_1 < 1/0 = +inf always
  // The predicate f_i < 1/(i-1) is monotone (f ascending, threshold
  // descending), so the first failure ends the scan.
  for (int i = 2; i <= n; ++i) {
    if (costs.cost(i) < 1.0 / (i - 1))
      k = i;
    else
      break;
  }
  return {k, costs.prefix(k)};
}

Solution solution_cost(const Instance& inst, const std::vector<int>& open) {
  if (open.empty())
    throw std::invalid_argument("solution_cost: facility set must be nonempty");
  const int n = inst.n();
  Solution sol;
  sol.open = open;
  std::sort(sol.open.begin(), sol.open.end());
  for (int u : sol.open) {
    if (u < 0 || u >= n)
      throw std::invalid_argument("solution_cost: vertex out of range");
    sol.opening_cost += inst.costs.f[u];
  }
  for (int v = 0; v < n; ++v) {
    double best = std::numeric_limits<double>::infinity();
    for (int u : sol.open) best = std::min(best, inst.metric.at(u, v));
    sol.connection_cost += best;
  }
  sol.total = sol.opening_cost + sol.connection_cost;
  return sol;
}

Solution alg_solve(const Instance& inst) {
  const int k = kappa(inst.costs).kappa;
  std::vector<int> open(k);
  for (int i = 0; i < k; ++i) open[i] = i;
  return solution_cost(inst, open);
}

namespace {

std::vector<int> mask_to_vertices(std::uint32_t mask, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (mask & (1u << v)) out.push_back(v);
  return out;
}

bool mask_lex_less(std::uint32_t a, std::uint32_t b, int n) {
  // Lexicographic order of the ascending vertex lists.
  int ia = 0, ib = 0;
  while (true) {
    while (ia < n && !(a & (1u << ia))) ++ia;
    while (ib < n && !(b & (1u << ib))) ++ib;
    if (ia == n && ib == n) return false;
    if (ia == n) return true;   // a is a proper prefix of b
    if (ib == n) return false;
    if (ia != ib) return ia < ib;
    ++ia;
    ++ib;
  }
}

struct Enumerator {
  const Instance& inst;
  int n;
  // buf[c] / sum[c]: per-vertex min distance and its total when c facilities
  // are open on the current DFS path.
  std::vector<std::vector<double>> buf;
  std::vector<double> sum;
  std::vector<double> best_cost;          // by size 1..n
  std::vector<std::uint32_t> best_mask;   // by size 1..n

  explicit Enumerator(const Instance& i)
      : inst(i),
        n(i.n()),
        buf(n + 1, std::vector<double>(n)),
        sum(n + 1, 0.0),
        best_cost(n + 1, std::numeric_limits<double>::infinity()),
        best_mask(n + 1, 0) {
    std::fill(buf[0].begin(), buf[0].end(),
              std::numeric_limits<double>::infinity());
  }

  void consider(int count, double cost, std::uint32_t mask) {
    if (cost < best_cost[count] ||
        (cost == best_cost[count] && mask_lex_less(mask, best_mask[count], n)))
      {
        best_cost[count] = cost;
        best_mask[count] = mask;
      }
  }

  void dfs(int i, int count, double opening, std::uint32_t mask) {
    if (i == n) {
      if (count > 0) consider(count, opening + sum[count], mask);
      return;
    }
    // include facility i
    {
      const double* prev = buf[count].data();
      double* cur = buf[count + 1].data();
      double s = 0.0;
      for (int v = 0; v < n; ++v) {
        double x = std::min(prev[v], inst.metric.at(i, v));
        cur[v] = x;
        s += x;
      }
      sum[count + 1] = s;
      dfs(i + 1, count + 1, opening + inst.costs.f[i], mask | (1u << i));
    }
    // exclude facility i
    dfs(i + 1, count, opening, mask);
  }
};

}  // namespace

std::vector<Solution> opt_exact_all_k(const Instance& inst) {
  const int n = inst.n();
  if (n > kMaxExactN)
    throw std::length_error("opt_exact: instance exceeds enumeration cap");
  Enumerator e(inst);
  e.dfs(0, 0, 0.0, 0);
  std::vector<Solution> out;
  out.reserve(n);
  for (int k = 1; k <= n; ++k)
    out.push_back(solution_cost(inst, mask_to_vertices(e.best_mask[k], n)));
  return out;
}

Solution opt_exact(const Instance& inst) {
  auto by_k = opt_exact_all_k(inst);
  const Solution* best = &by_k[0];
  for (const auto& s : by_k)
    if (s.total < best->total ||
        (s.total == best->total &&
         std::lexicographical_compare(s.open.begin(), s.open.end(),
                                      best->open.begin(), best->open.end())))
      best = &s;
  return *best;
}

Solution opt_exact_k(const Instance& inst, int k) {
  if (k < 1 || k > inst.n())
    throw std::invalid_argument("opt_exact_k: k out of range");
  return opt_exact_all_k(inst)[k - 1];
}

AlgMoments alg_moments(const CostProfile& costs) {
  const int n = costs.n();
  const KappaInfo ki = kappa(costs);
  if (ki.kappa == n) return {costs.prefix(n), costs.prefix(n) * costs.prefix(n)};
  double mean = ki.F_kappa + harmonic(n - 1) - harmonic(ki.kappa - 1);
  double var = 0.0;
  for (int i = n - 1; i >= ki.kappa; --i) var += 1.0 / (static_cast<double>(i) * i);
  return {mean, mean * mean + var};
}

double expected_cost_k_cheapest(const CostProfile& costs, int k) {
  const int n = costs.n();
  if (k < 1 || k > n)
    throw std::invalid_argument("expected_cost_k_cheapest: k out of range");
  if (k == n) return costs.prefix(n);
  return costs.prefix(k) + harmonic(n - 1) - harmonic(k - 1);
}

}  // namespace rspfl

#ifndef RSPFL_FLP_HPP_
#define RSPFL_FLP_HPP_

#include <cstdint>
#include <vector>

#include "rspfl/metric.hpp"

namespace rspfl {

// Largest instance for which exact enumeration of facility sets is allowed.
inline constexpr int kMaxExactN = 20;

// Sorted opening costs together with their prefix sums.
struct CostProfile {
  std::vector<double> f;  // ascending
  std::vector<double> F;  // F[k-1] = f_1 + ... + f_k

  int n() const { return static_cast<int>(f.size()); }
  double cost(int i) const { return f[i - 1]; }        // 1-based f_i
  double prefix(int k) const { return k == 0 ? 0.0 : F[k - 1]; }  // F_k
};

CostProfile make_cost_profile(std::vector<double> raw_costs);

// Facility i of the sorted profile sits at vertex i-1 (0-based).
struct Instance {
  Metric metric;
  CostProfile costs;
  bool cost_ratio_warning = false;  // f_n/f_1 > n^q

  int n() const { return metric.n; }
};

struct Solution {
  std::vector<int> open;  // 0-based vertices, ascending
  double opening_cost = 0.0;
  double connection_cost = 0.0;
  double total = 0.0;
};

struct KappaInfo {
  int kappa = 1;
  double F_kappa = 0.0;
};

Instance make_instance(Metric metric, const std::vector<double>& raw_costs,
                       double ratio_exponent = 3.0);

// kappa = max{ i : f_i < 1/(i-1) }, with the i=1 predicate vacuously true.
KappaInfo kappa(const CostProfile& costs);

Solution solution_cost(const Instance& inst, const std::vector<int>& open);

// Opens the kappa cheapest facilities (lowest-index tie-breaking is implied
// by the facility-to-vertex pinning).
Solution alg_solve(const Instance& inst);

// Exact optimum over all nonempty facility sets; n <= kMaxExactN.
Solution opt_exact(const Instance& inst);

// Exact optimum over sets of exactly k facilities.
Solution opt_exact_k(const Instance& inst, int k);

// One enumeration pass returning the optimum for every set size 1..n.
std::vector<Solution> opt_exact_all_k(const Instance& inst);

// Analytic (mean, second moment) of ALG for the given cost profile.
struct AlgMoments {
  double mean = 0.0;
  double second_moment = 0.0;
};
AlgMoments alg_moments(const CostProfile& costs);

// Expected cost of opening the k cheapest facilities: F_k + H_{n-1} - H_{k-1}.
double expected_cost_k_cheapest(const CostProfile& costs, int k);

}  // namespace rspfl

#endif  // RSPFL_FLP_HPP_

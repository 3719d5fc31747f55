#ifndef RSPFL_EXPERIMENTS_HPP_
#define RSPFL_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rspfl/bounds.hpp"
#include "rspfl/flp.hpp"
#include "rspfl/stochastics.hpp"

namespace rspfl {

// Equal-cost shorthand or an explicit cost list.
struct CostSpec {
  double equal_f = 0.0;
  std::vector<double> explicit_costs;

  static CostSpec equal(double f) { return {f, {}}; }
  static CostSpec list(std::vector<double> c) { return {0.0, std::move(c)}; }
  bool is_equal() const { return equal_f > 0.0; }
  std::vector<double> materialize(int n) const;
};

struct ExperimentConfig {
  int n = 10;
  CostSpec costs;
  int replications = 1000;
  std::uint64_t master_seed = 0;
  double alpha = 0.01;
  std::string kind;
  int threads = 1;
};

struct RepRecord {
  int rep = 0;
  std::uint64_t seed = 0;
  double alg = 0.0;
  double opt = 0.0;    // NaN when the run does not compute OPT
  double ratio = 0.0;  // likewise
};

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Aggregates {
  double mean = 0.0;
  double se = 0.0;
  double min = 0.0;
  double max = 0.0;
};
Aggregates aggregate(const std::vector<double>& xs);

struct ExperimentResult {
  ExperimentConfig config;
  bool has_opt = false;
  std::vector<RepRecord> records;
  Aggregates alg_agg;
  Aggregates ratio_agg;  // valid iff has_opt
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, KsResult>> ks_results;

  bool all_pass() const;
  nlohmann::json to_json() const;
  std::string to_csv() const;    // per-replication rows
  std::string summary_table() const;
};

// Exact OPT per replication; mean ratio compared against expected_ratio_bound
// when kappa >= n/2.
ExperimentResult run_ratio_experiment(const ExperimentConfig& cfg);

// KS checks of the closed-form ALG law, the direct sampler, the Renyi
// identity, and the analytic mean.
ExperimentResult run_distribution_suite(const ExperimentConfig& cfg);

struct ZGrid {
  double lo = 0.0;
  double hi = 3.0;
  int steps = 20;
};

// OPT lower-tail bound on a z-grid and the Gamma lower-bound dominance
// check for every OPT_{n-k}.
ExperimentResult run_bound_suite(const ExperimentConfig& cfg,
                                 const ZGrid* grid = nullptr);

// Ratio experiments across several n with per-n derived seeds.
std::vector<ExperimentResult> run_sweep(const ExperimentConfig& tmpl,
                                        const std::vector<int>& n_values);
Verdict sweep_trend_verdict(const std::vector<ExperimentResult>& rows,
                            double slack = 0.05);

// P(ALG > x and OPT < y) <= 2 sqrt(P(ALG > x) P(OPT < y)) + 3 SE on a
// grid of empirical quantiles of the recorded data.
Verdict joint_event_verdict(const std::vector<RepRecord>& records,
                            int grid = 3);

}  // namespace rspfl

#endif  // RSPFL_EXPERIMENTS_HPP_

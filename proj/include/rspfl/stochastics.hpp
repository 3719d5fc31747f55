#ifndef RSPFL_STOCHASTICS_HPP_
#define RSPFL_STOCHASTICS_HPP_

#include <functional>
#include <vector>

#include "rspfl/rng.hpp"

namespace rspfl {

struct CostProfile;  // flp.hpp

// H_n = sum_{i<=n} 1/i, H_0 = 0. Summed smallest-terms-first.
double harmonic(int n);

// log of the binomial coefficient C(n,k).
double log_binom(int n, int k);

// Exponential rate parameters for a sum of independent Exp variables.
struct RateList {
  std::vector<double> rates;
};

// Integer-shape Gamma (Erlang) distribution.
struct GammaSpec {
  int shape = 1;
  double rate = 1.0;
};

struct KsResult {
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::size_t n_a = 0;
  std::size_t n_b = 0;  // 0 for one-sample tests
};

struct DominanceResult {
  bool dominates = false;
  double max_violation = 0.0;
};

double sample_exp_sum(const RateList& rates, Rng& rng);
double sample_gamma_int(const GammaSpec& spec, Rng& rng);

// CDF of sum_{i=kappa}^{n-1} Exp(i), via the order-statistic identity
// P(Y_{(n-kappa)} <= x) for n-1 unit exponentials.
double sum_exp_range_cdf(double x, int kappa, int n);

// (1 - e^{-cx})^m: CDF of max of m Exp(c), equivalently of sum Exp(ci).
double scaled_max_cdf(double x, double c, int m);

// One draw of ALG straight from its closed-form law (no metric built).
double sample_alg_direct(const CostProfile& costs, Rng& rng);

// Asymptotic Kolmogorov critical value c(alpha); only 0.05 and 0.01 are
// supported.
double ks_critical(double alpha);

KsResult ks_one_sample(std::vector<double> samples,
                       const std::function<double(double)>& cdf, double alpha);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b,
                       double alpha);

// Empirical check that `dominant` stochastically dominates `dominated`:
// ECDF_dominant <= ECDF_dominated + band at every pooled sample point.
DominanceResult dominance_check(std::vector<double> dominant,
                                std::vector<double> dominated, double band);

// Default noise band for dominance_check between two sample sets.
double ks_two_sample_band(std::size_t n_a, std::size_t n_b,
                          double alpha = 0.01);

// True iff sum Exp(lambda_i) is stochastically dominated from below by
// Gamma(m, eta), i.e. prod lambda_i <= eta^m (evaluated in log space).
bool gamma_dominance_condition(const RateList& rates, double eta);

}  // namespace rspfl

#endif  // RSPFL_STOCHASTICS_HPP_

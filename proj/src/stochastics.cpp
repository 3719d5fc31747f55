#include "rspfl/stochastics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rspfl/flp.hpp"

namespace rspfl {

double harmonic(int n) {
  if (n < 0) throw std::invalid_argument("harmonic: n must be >= 0");
  double h = 0.0;
  for (int i = n; i >= 1; --i) h += 1.0 / i;
  return h;
}

double log_binom(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("log_binom: k out of range");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double sample_exp_sum(const RateList& rates, Rng& rng) {
  if (rates.rates.empty())
    throw std::invalid_argument("sample_exp_sum: empty rate list");
  double s = 0.0;
  for (double r : rates.rates) {
    if (!(r > 0.0)) throw std::invalid_argument("sample_exp_sum: rate <= 0");
    s += exp_draw(rng, r);
  }
  return s;
}

double sample_gamma_int(const GammaSpec& spec, Rng& rng) {
  if (spec.shape < 1 || !(spec.rate > 0.0))
    throw std::invalid_argument("sample_gamma_int: invalid GammaSpec");
  // Exact Erlang draw as a sum of shape i.i.d. exponentials.
  double s = 0.0;
  for (int i = 0; i < spec.shape; ++i) s += exp_draw(rng, spec.rate);
  return s;
}

double sum_exp_range_cdf(double x, int kappa, int n) {
  if (kappa < 1 || kappa > n - 1)
    throw std::invalid_argument("sum_exp_range_cdf: need 1 <= kappa <= n-1");
  if (x <= 0.0) return 0.0;
  const int m = n - 1;
  const double log_p = std::log(-std::expm1(-x));   // log(1 - e^{-x})
  double cdf = 0.0;
  for (int j = n - kappa; j <= m; ++j)
    cdf += std::exp(log_binom(m, j) + j * log_p - (m - j) * x);
  return std::min(cdf, 1.0);
}

double scaled_max_cdf(double x, double c, int m) {
  if (!(c > 0.0) || m < 1)
    throw std::invalid_argument("scaled_max_cdf: need c > 0, m >= 1");
  if (x <= 0.0) return 0.0;
  return std::pow(-std::expm1(-c * x), m);
}

double sample_alg_direct(const CostProfile& costs, Rng& rng) {
  const int n = costs.n();
  const KappaInfo ki = kappa(costs);
  if (ki.kappa == n) return costs.prefix(n);
  double s = ki.F_kappa;
  for (int i = ki.kappa; i <= n - 1; ++i) s += exp_draw(rng, i);
  return s;
}

double ks_critical(double alpha) {
  if (alpha == 0.05) return 1.358;
  if (alpha == 0.01) return 1.628;
  throw std::invalid_argument("ks_critical: alpha must be 0.05 or 0.01");
}

KsResult ks_one_sample(std::vector<double> samples,
                       const std::function<double(double)>& cdf,
                       double alpha) {
  const std::size_t n = samples.size();
  if (n < 10) throw std::invalid_argument("ks_one_sample: need >= 10 samples");
  std::sort(samples.begin(), samples.end());
  double stat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fx = cdf(samples[i]);
    stat = std::max(stat, fx - static_cast<double>(i) / n);
    stat = std::max(stat, static_cast<double>(i + 1) / n - fx);
  }
  KsResult r;
  r.statistic = stat;
  r.threshold = ks_critical(alpha) / std::sqrt(static_cast<double>(n));
  r.pass = stat <= r.threshold;
  r.n_a = n;
  return r;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b,
                       double alpha) {
  if (a.size() < 10 || b.size() < 10)
    throw std::invalid_argument("ks_two_sample: need >= 10 samples each");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double stat = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    stat = std::max(stat, std::abs(ia / na - ib / nb));
  }
  KsResult r;
  r.statistic = stat;
  r.threshold = ks_two_sample_band(a.size(), b.size(), alpha);
  r.pass = stat <= r.threshold;
  r.n_a = a.size();
  r.n_b = b.size();
  return r;
}

double ks_two_sample_band(std::size_t n_a, std::size_t n_b, double alpha) {
  const double na = static_cast<double>(n_a);
  const double nb = static_cast<double>(n_b);
  return ks_critical(alpha) * std::sqrt((na + nb) / (na * nb));
}

DominanceResult dominance_check(std::vector<double> dominant,
                                std::vector<double> dominated, double band) {
  if (dominant.empty() || dominated.empty())
    throw std::invalid_argument("dominance_check: empty sample set");
  std::sort(dominant.begin(), dominant.end());
  std::sort(dominated.begin(), dominated.end());
  const double na = static_cast<double>(dominant.size());
  const double nb = static_cast<double>(dominated.size());
  double worst = -1.0;  // max of ECDF_dominant - ECDF_dominated
  std::size_t ia = 0, ib = 0;
  while (ia < dominant.size() || ib < dominated.size()) {
    double x;
    if (ia == dominant.size())
      x = dominated[ib];
    else if (ib == dominated.size())
      x = dominant[ia];
    else
      x = std::min(dominant[ia], dominated[ib]);
    while (ia < dominant.size() && dominant[ia] <= x) ++ia;
    while (ib < dominated.size() && dominated[ib] <= x) ++ib;
    worst = std::max(worst, ia / na - ib / nb);
  }
  return {worst <= band, worst};
}

bool gamma_dominance_condition(const RateList& rates, double eta) {
  if (rates.rates.empty())
    throw std::invalid_argument("gamma_dominance_condition: empty rate list");
  if (!(eta > 0.0))
    throw std::invalid_argument("gamma_dominance_condition: eta <= 0");
  double log_sum = 0.0;
  for (double r : rates.rates) {
    if (!(r > 0.0))
      throw std::invalid_argument("gamma_dominance_condition: rate <= 0");
    log_sum += std::log(r);
  }
  const double rhs = rates.rates.size() * std::log(eta);
  // Tolerate rounding at the exact boundary prod lambda_i = eta^m.
  return log_sum <= rhs + 1e-9 * std::max(1.0, std::abs(rhs));
}

}  // namespace rspfl

#ifndef RSPFL_BOUNDS_HPP_
#define RSPFL_BOUNDS_HPP_

#include <optional>
#include <vector>

#include "rspfl/flp.hpp"
#include "rspfl/rng.hpp"

namespace rspfl {

// Generalized exponential integral E_m(alpha) = int_alpha^inf e^{-t}/t^m dt,
// by adaptive quadrature with an analytically bounded tail remainder.
double exp_integral(double alpha, int m);

// Normalized form alpha^m e^alpha E_m(alpha), in (0,1); well conditioned for
// arbitrarily large alpha.
double exp_integral_normalized(double alpha, int m);

// Rational lower/upper bounds on the normalized exponential integral.
// Supported combinations (m = integrand exponent):
//   order 1: m = 1, both sides
//   order 2: any m >= 1, both sides
//   order 3: m = 1, upper only
//   order 4: m = 1 both sides; m >= 2 upper only
struct PadeSandwich {
  double alpha = 0.0;
  int m = 1;
  int order = 1;
  std::optional<double> lower;
  std::optional<double> upper;
};
PadeSandwich pade_bounds(double alpha, int m, int order);

// Upper bound on P(OPT < z), clamped to [0,1].
double opt_lower_tail_bound(double z, const CostProfile& costs);

// One draw of the stochastic lower bound F_{n-k} + Gamma(k, e*C(n,2)/k)
// for OPT_{n-k}.
double sample_opt_nk_lb(const CostProfile& costs, int k, Rng& rng);

// Bounds on the moments of X_k = 1/(F_{n-k} + Z_k)^2.
struct MomentBounds {
  int k = 0;
  double F = 0.0;  // F_{n-k}
  double exk_lower = 0.0;
  double exk_upper = 0.0;
  double exk2_upper = 0.0;
  double var_upper = 0.0;
};
MomentBounds moment_bounds(int n, int k, double F);

struct BoundReport {
  double ratio_bound = 0.0;
  std::vector<MomentBounds> per_k;
  double max_term = 0.0;       // max{1/F_n^2, max_k exk_upper}
  double variance_sum = 0.0;   // sum_k var_upper
  double alg_second_moment = 0.0;
};
BoundReport expected_ratio_bound(const CostProfile& costs);

enum class Regime { kQuarterRootLog, kConstant, kOnePlusO1, kNotApplicable };
const char* regime_name(Regime r);

// Classifies the equal-cost (n, f) pair against the printed thresholds.
Regime equal_cost_regime(int n, double f);

}  // namespace rspfl

#endif  // RSPFL_BOUNDS_HPP_

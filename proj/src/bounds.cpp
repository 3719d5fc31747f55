#include "rspfl/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "rspfl/stochastics.hpp"

namespace rspfl {

namespace {

constexpr double kE = 2.718281828459045235;

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double fa, double b,
                            double fb, double fm, double whole, double eps,
                            int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(a, fa, m, fm, flm);
  double right = simpson(m, fm, b, fb, frm);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, flm, left, 0.5 * eps,
                              depth - 1) +
         adaptive_simpson_rec(f, m, fm, b, fb, frm, right, 0.5 * eps,
                              depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double eps) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = simpson(a, fa, b, fb, fm);
  return adaptive_simpson_rec(f, a, fa, b, fb, fm, whole, eps, 48);
}

}  // namespace

double exp_integral_normalized(double alpha, int m) {
  if (!(alpha > 0.0)) throw std::invalid_argument("exp_integral: alpha <= 0");
  if (m < 1) throw std::invalid_argument("exp_integral: m < 1");
  // Substituting t = alpha + s gives
  //   alpha^m e^alpha E_m(alpha) = int_0^inf e^{-s} (alpha/(alpha+s))^m ds.
  // The integrand is bounded by e^{-s}, so truncation at S leaves a tail
  // below e^{-S}; S = 42 keeps it under 1e-18.
  const double S = 42.0;
  auto integrand = [alpha, m](double s) {
    return std::exp(-s + m * (std::log(alpha) - std::log(alpha + s)));
  };
  // Split near 0 where the integrand varies fastest for small alpha.
  double cut = std::min(1.0, alpha);
  double v = adaptive_simpson(integrand, 0.0, cut, 2.5e-14) +
             adaptive_simpson(integrand, cut, S, 2.5e-14);
  return v;
}

double exp_integral(double alpha, int m) {
  return exp_integral_normalized(alpha, m) *
         std::exp(-alpha - m * std::log(alpha));
}

PadeSandwich pade_bounds(double alpha, int m, int order) {
  if (!(alpha > 0.0)) throw std::invalid_argument("pade_bounds: alpha <= 0");
  if (m < 1) throw std::invalid_argument("pade_bounds: m < 1");
  PadeSandwich s;
  s.alpha = alpha;
  s.m = m;
  s.order = order;
  const double a = alpha;
  switch (order) {
    case 1:
      if (m != 1) break;
      s.lower = a / (a + 1.0);
      s.upper = (a + 1.0) / (a + 2.0);
      return s;
    case 2: {
      // Printed for exponent k-1 with parameter k > 1; here k = m + 1.
      const double k = m + 1;
      s.lower = (a * a + (k + 1) * a) / (a * a + 2 * k * a + k * (k - 1));
      s.upper = (a * a + (k + 3) * a + 2) /
                (a * a + 2 * (k + 1) * a + k * (k + 1));
      return s;
    }
    case 3:
      if (m != 1) break;
      s.upper = (a * a * a + 11 * a * a + 26 * a + 6) /
                (a * a * a + 12 * a * a + 36 * a + 24);
      return s;
    case 4: {
      const double a2 = a * a, a3 = a2 * a, a4 = a2 * a2;
      if (m == 1)
        s.lower = (a4 + 15 * a3 + 58 * a2 + 50 * a) /
                  (a4 + 16 * a3 + 72 * a2 + 96 * a + 24);
      // Printed for exponent k-3 with parameter k > 3; here k = m + 3.
      const double k = m + 3;
      s.upper = (a4 + (3 * k + 7) * a3 + 3 * (k * k + 3 * k + 6) * a2 +
                 (k + 3) * (k * k - k + 10) * a + 24) /
                (a4 + 4 * (k + 1) * a3 + 6 * k * (k + 1) * a2 +
                 4 * k * (k * k - 1) * a + k * (k * k - 1) * (k - 2));
      return s;
    }
    default:
      break;
  }
  throw std::invalid_argument("pade_bounds: unsupported (m, order)");
}

double opt_lower_tail_bound(double z, const CostProfile& costs) {
  const int n = costs.n();
  if (z < costs.prefix(1)) return 0.0;
  if (z > costs.prefix(n)) return 1.0;
  int zeta = 1;
  while (zeta < n && z >= costs.prefix(zeta + 1)) ++zeta;
  double sum = 0.0;
  for (int i = 1; i <= zeta; ++i) {
    double gap = z - costs.prefix(i);
    if (gap <= 0.0) continue;  // (1 - e^0)^{n-i} = 0 (for i < n)
    double log_term = log_binom(n, i) + log_binom(n - 1, i - 1);
    if (n - i > 0) log_term += (n - i) * std::log(-std::expm1(-gap));
    sum += std::exp(log_term);
    if (sum >= 1.0) return 1.0;
  }
  return std::min(sum, 1.0);
}

double sample_opt_nk_lb(const CostProfile& costs, int k, Rng& rng) {
  const int n = costs.n();
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("sample_opt_nk_lb: k out of range");
  const double C = static_cast<double>(n) * (n - 1) / 2.0;
  GammaSpec g{k, kE * C / k};
  return costs.prefix(n - k) + sample_gamma_int(g, rng);
}

MomentBounds moment_bounds(int n, int k, double F) {
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("moment_bounds: k out of range");
  if (!(F > 0.0)) throw std::invalid_argument("moment_bounds: F <= 0");
  const double C = static_cast<double>(n) * (n - 1) / 2.0;
  const double eC = kE * C;
  const double eC2 = eC * eC;
  const double kd = k;

  MomentBounds mb;
  mb.k = k;
  mb.F = F;

  mb.exk_upper =
      (eC2 * F + 2 * kd * eC) /
      (eC2 * F * F * F + 2 * kd * (kd + 1) * eC * F * F +
       kd * kd * kd * (kd + 1) * F);
  mb.exk_lower =
      eC2 / (eC2 * F * F + 2 * kd * kd * eC * F + kd * kd * kd * (kd - 1));

  if (k == 1) {
    const double F3 = F * F * F;
    mb.exk2_upper = (3 * eC2 * F + 2 * eC) /
                    (3 * eC2 * F3 * F * F + 12 * eC * F3 * F + 6 * F3);
  } else {
    const double eC3 = eC2 * eC, eC4 = eC2 * eC2;
    const double F2 = F * F, F3 = F2 * F, F4 = F2 * F2, F5 = F4 * F;
    const double k2 = kd * kd, k3 = k2 * kd, k4 = k2 * k2, k5 = k4 * kd;
    // The k^5(k^2-1)(k-2) term vanishes exactly at k = 2.
    mb.exk2_upper =
        (eC4 * F + 4 * kd * eC3) /
        (eC4 * F5 + 4 * kd * (kd + 1) * eC3 * F4 +
         6 * k3 * (kd + 1) * eC2 * F3 + 4 * k4 * (k2 - 1) * eC * F2 +
         k5 * (k2 - 1) * (kd - 2) * F);
  }
  mb.var_upper = mb.exk2_upper - mb.exk_lower * mb.exk_lower;
  return mb;
}

BoundReport expected_ratio_bound(const CostProfile& costs) {
  const int n = costs.n();
  BoundReport rep;
  rep.alg_second_moment = alg_moments(costs).second_moment;
  const double Fn = costs.prefix(n);
  rep.max_term = 1.0 / (Fn * Fn);  // k = 0: Z_0 = 0, E[X_0] = 1/F_n^2
  rep.variance_sum = 0.0;
  for (int k = 1; k <= n - 1; ++k) {
    MomentBounds mb = moment_bounds(n, k, costs.prefix(n - k));
    rep.max_term = std::max(rep.max_term, mb.exk_upper);
    rep.variance_sum += mb.var_upper;
    rep.per_k.push_back(mb);
  }
  rep.ratio_bound =
      std::sqrt(rep.alg_second_moment) *
      std::sqrt(rep.max_term + std::sqrt(rep.variance_sum));
  return rep;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::kQuarterRootLog: return "quarter-root-log";
    case Regime::kConstant: return "constant";
    case Regime::kOnePlusO1: return "one-plus-o1";
    case Regime::kNotApplicable: return "not-applicable";
  }
  return "?";
}

Regime equal_cost_regime(int n, double f) {
  if (n < 2 || !(f > 0.0))
    throw std::invalid_argument("equal_cost_regime: bad arguments");
  const double nd = n;
  if (f * nd * nd * nd < 1.0) return Regime::kOnePlusO1;
  if (f * nd * std::cbrt(std::log(nd)) <= 1.0) return Regime::kConstant;
  int kap = std::min(static_cast<long long>(std::ceil(1.0 / f)),
                     static_cast<long long>(n));
  if (2 * kap >= n) return Regime::kQuarterRootLog;
  return Regime::kNotApplicable;
}

}  // namespace rspfl

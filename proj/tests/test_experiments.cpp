#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "rspfl/experiments.hpp"

using namespace rspfl;

namespace {

ExperimentConfig base_config(int n, double f, int reps, std::uint64_t seed,
                             int threads = 1) {
  ExperimentConfig cfg;
  cfg.n = n;
  cfg.costs = CostSpec::equal(f);
  cfg.replications = reps;
  cfg.master_seed = seed;
  cfg.alpha = 0.01;
  cfg.threads = threads;
  return cfg;
}

bool same_records(const ExperimentResult& a, const ExperimentResult& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const auto& x = a.records[i];
    const auto& y = b.records[i];
    if (x.rep != y.rep || x.seed != y.seed || x.alg != y.alg) return false;
    if (x.opt == x.opt && x.opt != y.opt) return false;  // NaN-tolerant
  }
  return true;
}

}  // namespace

TEST_CASE("cost spec materialization") {
  CHECK(CostSpec::equal(0.3).materialize(4) ==
        std::vector<double>{0.3, 0.3, 0.3, 0.3});
  CHECK(CostSpec::list({1, 2}).materialize(2) == std::vector<double>{1, 2});
  CHECK_THROWS_AS(CostSpec::list({1, 2}).materialize(3),
                  std::invalid_argument);
}

TEST_CASE("aggregate matches manual computation") {
  Aggregates a = aggregate({1.0, 2.0, 3.0, 6.0});
  CHECK(a.mean == doctest::Approx(3.0));
  CHECK(a.min == 1.0);
  CHECK(a.max == 6.0);
  // sample variance 14/3
  CHECK(a.se == doctest::Approx(std::sqrt(14.0 / 3.0 / 4.0)));
}

TEST_CASE("ratio experiment invariants and determinism") {
  ExperimentConfig cfg = base_config(10, 0.3, 2000, 42);
  ExperimentResult res = run_ratio_experiment(cfg);
  REQUIRE(res.records.size() == 2000);
  CHECK(res.has_opt);
  for (const auto& r : res.records) {
    CHECK(r.opt >= 0.3 - 1e-12);  // f_1 <= OPT
    CHECK(r.opt <= r.alg + 1e-12);
    CHECK(r.ratio >= 1.0 - 1e-12);
  }
  CHECK(res.ratio_agg.mean >= 1.0);
  CHECK(res.ratio_agg.mean <= 3.0);
  CHECK(res.all_pass());

  ExperimentResult again = run_ratio_experiment(cfg);
  CHECK(same_records(res, again));
  CHECK(res.to_csv() == again.to_csv());

  // Aggregates are recomputable from the records.
  std::vector<double> ratios;
  for (const auto& r : res.records) ratios.push_back(r.ratio);
  Aggregates re = aggregate(ratios);
  CHECK(re.mean == res.ratio_agg.mean);
  CHECK(re.se == res.ratio_agg.se);
}

TEST_CASE("parallel and serial runs are bit-identical") {
  ExperimentConfig serial = base_config(8, 0.4, 400, 7, 1);
  ExperimentConfig parallel = base_config(8, 0.4, 400, 7, 4);
  ExperimentResult a = run_ratio_experiment(serial);
  ExperimentResult b = run_ratio_experiment(parallel);
  CHECK(same_records(a, b));
  CHECK(a.to_csv() == b.to_csv());

  ExperimentResult da = run_distribution_suite(serial);
  ExperimentResult db = run_distribution_suite(parallel);
  CHECK(same_records(da, db));
  for (std::size_t i = 0; i < da.ks_results.size(); ++i)
    CHECK(da.ks_results[i].second.statistic ==
          db.ks_results[i].second.statistic);
}

TEST_CASE("ratio experiment rejects bad configs") {
  CHECK_THROWS(run_ratio_experiment(base_config(21, 0.3, 10, 1)));
  CHECK_THROWS_AS(run_ratio_experiment(base_config(1, 0.3, 10, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_ratio_experiment(base_config(8, 0.3, 0, 1)),
                  std::invalid_argument);
}

TEST_CASE("distribution suite passes under the true model") {
  ExperimentConfig cfg = base_config(10, 0.3, 4000, 12);
  ExperimentResult res = run_distribution_suite(cfg);
  CHECK(res.all_pass());
  // Renyi verdicts for i = 1..9 plus KS (a), KS2 (b), and the mean check.
  CHECK(res.verdicts.size() == 12);
}

TEST_CASE("distribution suite with kappa = n reports constant ALG") {
  ExperimentConfig cfg = base_config(6, 0.05, 200, 3);
  ExperimentResult res = run_distribution_suite(cfg);
  CHECK(res.all_pass());
  CHECK(res.alg_agg.min == res.alg_agg.max);
  CHECK(res.alg_agg.min == doctest::Approx(0.3));
}

TEST_CASE("bound suite verdicts at small scale") {
  ExperimentConfig cfg = base_config(8, 0.3, 1500, 19);
  ExperimentResult res = run_bound_suite(cfg);
  CHECK(res.all_pass());
  // 20 z-grid verdicts plus 7 dominance verdicts.
  CHECK(res.verdicts.size() == 27);
  CHECK_THROWS(run_bound_suite(base_config(17, 0.3, 100, 1)));

  // A z below F_1 contributes a trivially passing verdict: bound 0 and
  // empirical probability 0.
  ZGrid low{0.1, 0.2, 2};
  ExperimentResult below = run_bound_suite(cfg, &low);
  CHECK(below.all_pass());
}

TEST_CASE("sweep rows and trend verdict") {
  ExperimentConfig tmpl = base_config(0, 1.0, 800, 23);
  auto rows = run_sweep(tmpl, {8, 12});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].config.n == 8);
  CHECK(rows[1].config.n == 12);
  for (const auto& r : rows) CHECK(r.all_pass());
  Verdict trend = sweep_trend_verdict(rows);
  CHECK(trend.pass);

  auto single = run_sweep(tmpl, {8});
  CHECK(sweep_trend_verdict(single).pass);

  // Per-n seed derivation makes rows reproducible independent of order.
  auto again = run_sweep(tmpl, {12, 8});
  CHECK(same_records(rows[0], again[1]));
  CHECK(same_records(rows[1], again[0]));
}

TEST_CASE("joint-event inequality holds on experiment data") {
  ExperimentResult res = run_ratio_experiment(base_config(10, 0.3, 3000, 5));
  Verdict v = joint_event_verdict(res.records);
  CHECK(v.pass);
}

TEST_CASE("conditional-ratio inequality holds on experiment data") {
  // E[(ALG/OPT) 1{OPT<y}] <= P(OPT<y)/delta^2 + E[max(ALG^2 - 1/delta^2, 0)]
  // with delta = f_1 and y mid-range, allowing 3 SE of Monte Carlo noise.
  ExperimentResult res = run_ratio_experiment(base_config(10, 0.3, 3000, 29));
  const double delta = 0.3;
  const double inv = 1.0 / (delta * delta);
  double lo = res.records[0].opt, hi = lo;
  for (const auto& r : res.records) {
    lo = std::min(lo, r.opt);
    hi = std::max(hi, r.opt);
  }
  const double y = 0.5 * (lo + hi);
  std::vector<double> diff;
  diff.reserve(res.records.size());
  for (const auto& r : res.records) {
    double lhs = r.opt < y ? r.ratio : 0.0;
    double rhs = (r.opt < y ? inv : 0.0) +
                 std::max(r.alg * r.alg - inv, 0.0);
    diff.push_back(lhs - rhs);
  }
  Aggregates d = aggregate(diff);
  CHECK(d.mean <= 3.0 * d.se);
}

TEST_CASE("result serialization shapes") {
  ExperimentResult res = run_ratio_experiment(base_config(6, 0.5, 50, 2));
  auto j = res.to_json();
  CHECK(j["config"]["n"] == 6);
  CHECK(j["records"].size() == 50);
  CHECK(j["records"][0].contains("ratio"));
  std::string csv = res.to_csv();
  CHECK(csv.rfind("rep,seed,alg,opt,ratio\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 51);
  std::string table = res.summary_table();
  CHECK(table.find("pass") != std::string::npos);
}

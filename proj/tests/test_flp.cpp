#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "rspfl/flp.hpp"
#include "rspfl/stochastics.hpp"

using namespace rspfl;

namespace {

// The 3-vertex worked example: d already metric, costs unsorted on input.
Instance small3() {
  Metric m;
  m.n = 3;
  m.d = {0, 1, 2, 1, 0, 1.5, 2, 1.5, 0};
  return make_instance(std::move(m), {1.0, 0.4, 0.8});
}

Instance random_instance(int n, double f, std::uint64_t seed) {
  Rng rng(seed);
  return make_instance(build_metric(sample_edge_weights(n, rng)),
                       std::vector<double>(n, f));
}

}  // namespace

TEST_CASE("make_cost_profile sorts and accumulates") {
  CostProfile p = make_cost_profile({1.0, 0.4, 0.8});
  CHECK(p.f == std::vector<double>{0.4, 0.8, 1.0});
  CHECK(p.prefix(1) == doctest::Approx(0.4));
  CHECK(p.prefix(2) == doctest::Approx(1.2));
  CHECK(p.prefix(3) == doctest::Approx(2.2));
  CHECK(p.prefix(0) == 0.0);
  CHECK_THROWS_AS(make_cost_profile({1.0, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(make_cost_profile({}), std::invalid_argument);
}

TEST_CASE("equal costs give linear prefix sums") {
  CostProfile p = make_cost_profile(std::vector<double>(10, 0.3));
  for (int k = 1; k <= 10; ++k)
    CHECK(p.prefix(k) == doctest::Approx(0.3 * k));
}

TEST_CASE("make_instance warns on huge cost ratios") {
  Metric m;
  m.n = 2;
  m.d = {0, 1, 1, 0};
  Instance warned = make_instance(m, {1e-9, 1.0});
  CHECK(warned.cost_ratio_warning);
  Instance fine = make_instance(m, {0.5, 0.5});
  CHECK(!fine.cost_ratio_warning);
  CHECK_THROWS_AS(make_instance(m, {0.5}), std::invalid_argument);
}

TEST_CASE("kappa examples") {
  CHECK(kappa(make_cost_profile({0.5, 0.6, 0.7})).kappa == 2);
  KappaInfo k10 = kappa(make_cost_profile(std::vector<double>(10, 0.3)));
  CHECK(k10.kappa == 4);
  CHECK(k10.F_kappa == doctest::Approx(1.2));
  CHECK(kappa(make_cost_profile(std::vector<double>(5, 2.0))).kappa == 1);
  CHECK(kappa(make_cost_profile(std::vector<double>(7, 0.01))).kappa == 7);
}

TEST_CASE("kappa matches min(ceil(1/f), n) on equal costs") {
  for (int n : {2, 5, 10, 17}) {
    for (double f : {0.05, 0.11, 0.3, 0.5, 0.99, 1.7, 4.0}) {
      int expect = std::min<int>(static_cast<int>(std::ceil(1.0 / f)), n);
      CHECK(kappa(make_cost_profile(std::vector<double>(n, f))).kappa ==
            expect);
    }
  }
}

TEST_CASE("kappa maximality on randomized profiles") {
  Rng rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    int n = 2 + static_cast<int>(rng() % 12);
    std::vector<double> raw(n);
    for (double& x : raw) x = exp_draw(rng, 2.0) + 1e-3;
    CostProfile p = make_cost_profile(raw);
    KappaInfo ki = kappa(p);
    if (ki.kappa > 1) CHECK(p.cost(ki.kappa) < 1.0 / (ki.kappa - 1));
    if (ki.kappa < n) CHECK(p.cost(ki.kappa + 1) >= 1.0 / ki.kappa);
  }
}

TEST_CASE("solution_cost on the worked example") {
  Instance inst = small3();
  Solution s1 = solution_cost(inst, {0});
  CHECK(s1.total == doctest::Approx(3.4));
  Solution all = solution_cost(inst, {0, 1, 2});
  CHECK(all.total == doctest::Approx(2.2));
  CHECK(all.connection_cost == doctest::Approx(0.0));
  Solution s13 = solution_cost(inst, {0, 2});
  CHECK(s13.total == doctest::Approx(2.4));
  CHECK_THROWS_AS(solution_cost(inst, {}), std::invalid_argument);
}

TEST_CASE("alg_solve opens the kappa cheapest facilities") {
  Instance inst = small3();
  // f=[0.4,0.8,1.0] gives kappa=2.
  Solution alg = alg_solve(inst);
  CHECK(alg.open == std::vector<int>{0, 1});
  CHECK(alg.total == doctest::Approx(2.7));

  Instance eq = random_instance(10, 0.3, 5);
  CHECK(alg_solve(eq).open.size() == 4);
}

TEST_CASE("kappa = n means ALG = F_n with no connection cost") {
  Instance inst = random_instance(6, 0.05, 9);
  Solution alg = alg_solve(inst);
  CHECK(alg.connection_cost == 0.0);
  CHECK(alg.total == doctest::Approx(inst.costs.prefix(6)));
}

TEST_CASE("opt_exact on the worked example") {
  Instance inst = small3();
  Solution opt = opt_exact(inst);
  CHECK(opt.total == doctest::Approx(2.2));
  CHECK(opt.open == std::vector<int>{0, 1, 2});
  Solution k2 = opt_exact_k(inst, 2);
  CHECK(k2.total == doctest::Approx(2.4));
  CHECK(k2.open == std::vector<int>{0, 2});
  CHECK(opt_exact_k(inst, 3).total == doctest::Approx(2.2));
  CHECK_THROWS_AS(opt_exact_k(inst, 0), std::invalid_argument);
  CHECK_THROWS_AS(opt_exact_k(inst, 4), std::invalid_argument);
}

TEST_CASE("opt_exact equals the min over subset sizes") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = random_instance(8, 0.4, seed);
    Solution opt = opt_exact(inst);
    auto all = opt_exact_all_k(inst);
    REQUIRE(all.size() == 8);
    double best = all[0].total;
    for (const auto& s : all) best = std::min(best, s.total);
    CHECK(opt.total == doctest::Approx(best).epsilon(1e-12));
    CHECK(all.back().total == doctest::Approx(inst.costs.prefix(8)));

    Solution alg = alg_solve(inst);
    CHECK(opt.total <= alg.total + 1e-12);
    CHECK(opt.total >= inst.costs.cost(1) - 1e-12);
  }
}

TEST_CASE("opt_exact rejects oversized instances") {
  Metric m;
  m.n = 21;
  m.d.assign(21 * 21, 1.0);
  for (int u = 0; u < 21; ++u) m.at(u, u) = 0.0;
  Instance inst = make_instance(std::move(m), std::vector<double>(21, 1.0));
  CHECK_THROWS(opt_exact(inst));
}

TEST_CASE("opt_exact tie-break picks the lexicographically smallest set") {
  // Symmetric 2-point instance: {0} and {1} tie, {0,1} also ties.
  Metric m;
  m.n = 2;
  m.d = {0, 1, 1, 0};
  Instance inst = make_instance(std::move(m), {1.0, 1.0});
  Solution opt = opt_exact(inst);
  CHECK(opt.total == doctest::Approx(2.0));
  CHECK(opt.open == std::vector<int>{0});
}

TEST_CASE("alg_moments closed forms") {
  AlgMoments kn = alg_moments(make_cost_profile({0.5, 0.5}));
  CHECK(kn.mean == doctest::Approx(1.0));
  CHECK(kn.second_moment == doctest::Approx(1.0));

  AlgMoments m10 = alg_moments(make_cost_profile(std::vector<double>(10, 0.3)));
  double expect = 1.2 + harmonic(9) - harmonic(3);
  CHECK(m10.mean == doctest::Approx(expect));
  CHECK(m10.mean == doctest::Approx(2.195635).epsilon(1e-6));
  double var = 0.0;
  for (int i = 4; i <= 9; ++i) var += 1.0 / (double(i) * i);
  CHECK(m10.second_moment == doctest::Approx(expect * expect + var));

  AlgMoments k1 = alg_moments(make_cost_profile({2.0, 2.0}));
  CHECK(k1.mean == doctest::Approx(3.0));
}

TEST_CASE("alg_moments and kappa ignore input cost order") {
  std::vector<double> raw = {0.9, 0.1, 0.5, 0.3, 0.7};
  CostProfile sorted = make_cost_profile(raw);
  std::vector<double> shuffled = {0.5, 0.9, 0.3, 0.7, 0.1};
  CostProfile other = make_cost_profile(shuffled);
  CHECK(kappa(sorted).kappa == kappa(other).kappa);
  CHECK(alg_moments(sorted).mean == alg_moments(other).mean);
}

TEST_CASE("expected cost of k cheapest facilities decreases while f_{k+1} < 1/k"
          " and is convex") {
  CostProfile p = make_cost_profile(std::vector<double>(10, 0.3));
  int n = p.n();
  for (int k = 1; k < n; ++k) {
    double gk = expected_cost_k_cheapest(p, k);
    double gk1 = expected_cost_k_cheapest(p, k + 1);
    if (p.cost(k + 1) < 1.0 / k)
      CHECK(gk1 < gk);
    else
      CHECK(gk1 >= gk);
  }
  for (int k = 2; k < n; ++k) {
    double second = expected_cost_k_cheapest(p, k + 1) -
                    2 * expected_cost_k_cheapest(p, k) +
                    expected_cost_k_cheapest(p, k - 1);
    CHECK(second >= -1e-12);
  }
}

// Command-line frontend: instance generation, solving, distributional
// verification, analytic bound reports, and Monte Carlo experiments.
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 usage or I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rspfl/bounds.hpp"
#include "rspfl/experiments.hpp"
#include "rspfl/flp.hpp"
#include "rspfl/io.hpp"
#include "rspfl/metric.hpp"

namespace {

using namespace rspfl;
using nlohmann::json;

struct CommonOpts {
  int n = 10;
  std::uint64_t seed = 0;
  double equal_cost = 0.0;
  std::string costs_file;
  int reps = 1000;
  double alpha = 0.01;
  std::string z_grid;
  int k = 0;
  std::string out;
  std::string format = "json";
  int threads = 1;
  std::string in_file;
};

std::vector<double> load_costs(const CommonOpts& o) {
  if (o.equal_cost > 0.0 && !o.costs_file.empty())
    throw IoError("--equal-cost and --costs are mutually exclusive");
  if (o.equal_cost > 0.0) return std::vector<double>(o.n, o.equal_cost);
  if (o.costs_file.empty())
    throw IoError("one of --equal-cost or --costs is required");
  std::ifstream in(o.costs_file);
  if (!in) throw IoError("cannot open '" + o.costs_file + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed JSON in costs file: ") + e.what());
  }
  if (j.is_object() && j.contains("costs")) j = j["costs"];
  if (!j.is_array()) throw IoError("costs file must hold a JSON array");
  std::vector<double> costs;
  for (const auto& x : j) {
    if (!x.is_number() || !(x.get<double>() > 0.0))
      throw IoError("costs file entries must be positive numbers");
    costs.push_back(x.get<double>());
  }
  return costs;
}

CostSpec cost_spec(const CommonOpts& o) {
  if (o.equal_cost > 0.0) return CostSpec::equal(o.equal_cost);
  return CostSpec::list(load_costs(o));
}

ZGrid parse_z_grid(const std::string& s) {
  ZGrid g;
  char c1 = 0, c2 = 0;
  std::istringstream is(s);
  if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.steps) || c1 != ':' ||
      c2 != ':' || g.steps < 1)
    throw IoError("--z-grid expects lo:hi:steps");
  return g;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + out_path + "'");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }
}

void warn_ratio(const Instance& inst) {
  if (inst.cost_ratio_warning)
    std::cerr << "warning: opening-cost ratio f_n/f_1 exceeds n^3\n";
}

int cmd_gen(const CommonOpts& o) {
  Rng rng(o.seed);
  EdgeWeights ew = sample_edge_weights(o.n, rng);
  Instance inst = make_instance(build_metric(ew), load_costs(o));
  warn_ratio(inst);
  emit(instance_to_json(inst, &ew), o.out);
  return 0;
}

int cmd_solve(const CommonOpts& o) {
  Instance inst = o.in_file.empty()
                      ? [&] {
                          Rng rng(o.seed);
                          EdgeWeights ew = sample_edge_weights(o.n, rng);
                          return make_instance(build_metric(ew),
                                               load_costs(o));
                        }()
                      : read_instance_file(o.in_file);
  warn_ratio(inst);
  std::ostringstream os;
  os << "{\"kappa\":" << kappa(inst.costs).kappa
     << ",\"alg\":" << solution_to_json(alg_solve(inst));
  if (inst.n() <= kMaxExactN)
    os << ",\"opt\":" << solution_to_json(opt_exact(inst));
  os << '}';
  emit(os.str(), o.out);
  return 0;
}

int cmd_verify(const CommonOpts& o) {
  ExperimentConfig cfg{o.n, cost_spec(o), o.reps, o.seed,
                       o.alpha, "distribution", o.threads};
  ExperimentResult res = run_distribution_suite(cfg);
  emit(res.summary_table(), o.out);
  return res.all_pass() ? 0 : 1;
}

int cmd_bounds(const CommonOpts& o) {
  CostProfile profile = make_cost_profile(cost_spec(o).materialize(o.n));
  BoundReport rep = expected_ratio_bound(profile);
  json j;
  j["n"] = o.n;
  j["ratio_bound"] = rep.ratio_bound;
  j["max_term"] = rep.max_term;
  j["variance_sum"] = rep.variance_sum;
  j["alg_second_moment"] = rep.alg_second_moment;
  if (cost_spec(o).is_equal())
    j["regime"] = regime_name(equal_cost_regime(o.n, o.equal_cost));
  j["per_k"] = json::array();
  for (const auto& mb : rep.per_k)
    j["per_k"].push_back({{"k", mb.k},
                          {"F", mb.F},
                          {"exk_lower", mb.exk_lower},
                          {"exk_upper", mb.exk_upper},
                          {"exk2_upper", mb.exk2_upper},
                          {"var_upper", mb.var_upper}});
  ZGrid g{profile.prefix(1), 3.0, 20};
  if (!o.z_grid.empty()) g = parse_z_grid(o.z_grid);
  j["opt_lower_tail"] = json::array();
  for (int s = 0; s < g.steps; ++s) {
    double z = g.steps == 1 ? g.lo : g.lo + (g.hi - g.lo) * s / (g.steps - 1);
    j["opt_lower_tail"].push_back(
        {{"z", z}, {"bound", opt_lower_tail_bound(z, profile)}});
  }
  if (o.format == "csv") {
    std::ostringstream os;
    os << "k,F,exk_lower,exk_upper,exk2_upper,var_upper\n";
    char buf[64];
    auto put = [&](double x) {
      std::snprintf(buf, sizeof(buf), "%.12g", x);
      os << buf;
    };
    for (const auto& mb : rep.per_k) {
      os << mb.k << ',';
      put(mb.F); os << ',';
      put(mb.exk_lower); os << ',';
      put(mb.exk_upper); os << ',';
      put(mb.exk2_upper); os << ',';
      put(mb.var_upper); os << '\n';
    }
    emit(os.str(), o.out);
  } else {
    emit(j.dump(2), o.out);
  }
  return 0;
}

int cmd_experiment(const CommonOpts& o) {
  ExperimentConfig cfg{o.n, cost_spec(o), o.reps, o.seed,
                       o.alpha, "ratio", o.threads};
  ExperimentResult res = run_ratio_experiment(cfg);
  emit(o.format == "csv" ? res.to_csv() : res.to_json().dump(2), o.out);
  std::cerr << res.summary_table();
  return res.all_pass() ? 0 : 1;
}

int cmd_sweep(const CommonOpts& o, const std::vector<int>& n_values) {
  ExperimentConfig tmpl{o.n, cost_spec(o), o.reps, o.seed,
                        o.alpha, "sweep", o.threads};
  auto rows = run_sweep(tmpl, n_values);
  Verdict trend = sweep_trend_verdict(rows);
  if (o.format == "csv") {
    std::ostringstream os;
    os << "n,mean_ratio,se,min_ratio,max_ratio\n";
    char buf[64];
    for (const auto& r : rows) {
      std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g,%.12g\n",
                    r.config.n, r.ratio_agg.mean, r.ratio_agg.se,
                    r.ratio_agg.min, r.ratio_agg.max);
      os << buf;
    }
    emit(os.str(), o.out);
  } else {
    json j;
    j["rows"] = json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"n", r.config.n},
                           {"mean_ratio", r.ratio_agg.mean},
                           {"se", r.ratio_agg.se},
                           {"min_ratio", r.ratio_agg.min},
                           {"max_ratio", r.ratio_agg.max}});
    j["trend"] = {{"pass", trend.pass}, {"detail", trend.detail}};
    emit(j.dump(2), o.out);
  }
  bool ok = trend.pass;
  for (const auto& r : rows) ok = ok && r.all_pass();
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random shortest path metrics + kappa-cheapest facility "
               "location: solvers, distribution checks, analytic bounds"};
  app.require_subcommand(1);

  CommonOpts o;
  std::vector<int> sweep_n;

  auto add_common = [&](CLI::App* sub, bool needs_costs = true) {
    sub->add_option("--n", o.n, "vertex count");
    sub->add_option("--seed", o.seed, "master seed");
    if (needs_costs) {
      sub->add_option("--equal-cost", o.equal_cost,
                      "equal opening cost per facility");
      sub->add_option("--costs", o.costs_file,
                      "JSON file with explicit opening costs");
    }
    sub->add_option("--reps", o.reps, "Monte Carlo replications");
    sub->add_option("--alpha", o.alpha, "KS significance level")
        ->check(CLI::IsMember({0.05, 0.01}));
    sub->add_option("--out", o.out, "output path (default stdout)");
    sub->add_option("--format", o.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", o.threads, "worker thread cap")
        ->check(CLI::PositiveNumber);
  };

  auto* gen = app.add_subcommand("gen", "generate a seeded instance");
  add_common(gen);
  auto* solve = app.add_subcommand("solve", "run ALG and exact OPT");
  add_common(solve);
  solve->add_option("--in", o.in_file, "instance JSON to solve");
  auto* verify =
      app.add_subcommand("verify", "distributional verification suite");
  add_common(verify);
  auto* bounds = app.add_subcommand("bounds", "analytic bound report");
  add_common(bounds);
  bounds->add_option("--z-grid", o.z_grid, "lo:hi:steps for the tail bound");
  bounds->add_option("--k", o.k, "unused filter (reserved)");
  auto* experiment =
      app.add_subcommand("experiment", "seeded approximation-ratio run");
  add_common(experiment);
  auto* sweep = app.add_subcommand("sweep", "ratio trend across n");
  add_common(sweep);
  sweep->add_option("--n-values", sweep_n, "list of n values")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(o);
    if (solve->parsed()) return cmd_solve(o);
    if (verify->parsed()) return cmd_verify(o);
    if (bounds->parsed()) return cmd_bounds(o);
    if (experiment->parsed()) return cmd_experiment(o);
    if (sweep->parsed()) return cmd_sweep(o, sweep_n);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

// Command-line surface for the monotonicity-testing toolkit: function
// generation, exact metrics, tester runs, rejection-rate estimation,
// and the verification sweeps.  Sweeps exit nonzero if any row fails.
//
// Every subcommand takes one --seed: it is the master seed for tester
// randomness (trial t derives its stream from it) and, unless
// --family-seed overrides it, also seeds the seeded families.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "monotest/blue.hpp"
#include "monotest/dichotomy.hpp"
#include "monotest/metrics.hpp"
#include "monotest/oracle.hpp"
#include "monotest/sweeps.hpp"
#include "monotest/testers.hpp"
#include "monotest/truth_table.hpp"

namespace {

using namespace monotest;

struct FunctionOpts {
  std::string family;
  std::string table_path;
  int n = 4;
  std::optional<std::uint64_t> family_seed;

  TruthTable make(std::uint64_t master_seed) const {
    if (!table_path.empty()) return read_bftt(table_path);
    if (family.empty()) throw CLI::ValidationError("provide --family or --table");
    return make_family(family, n, family_seed.value_or(master_seed));
  }
};

void add_function_opts(CLI::App* cmd, FunctionOpts& opts) {
  cmd->add_option("--family", opts.family,
                  "family name[:param], e.g. anti_dictator:0, anti_majority, random");
  cmd->add_option("--table", opts.table_path, "BFTT truth-table file");
  cmd->add_option("--n", opts.n, "dimension (family param; two_block yields n+1)");
  cmd->add_option("--family-seed", opts.family_seed,
                  "seed for seeded families (default: the master --seed)");
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_text_file(out_path, content);
}

nlohmann::json verdict_json(const Verdict& v) {
  nlohmann::json j{{"rejected", v.rejected}, {"queries", v.queries_used}};
  if (v.witness) {
    j["witness"] = {{"x", v.witness->x.bits},
                    {"y", v.witness->y.bits},
                    {"fx", v.witness->fx},
                    {"fy", v.witness->fy}};
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monotonicity testers and exact violation metrics on the hypercube"};
  app.require_subcommand(1);

  std::string out_path;
  std::string format = "csv";

  // --- gen -----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "emit a BFTT truth-table file for a family");
  FunctionOpts gen_fn;
  std::uint64_t gen_seed = 1;
  add_function_opts(gen, gen_fn);
  gen->add_option("--seed", gen_seed, "master seed");
  std::string gen_out;
  gen->add_option("--out", gen_out, "output file")->required();
  gen->callback([&] { write_bftt(gen_fn.make(gen_seed), gen_out); });

  // --- metrics ---------------------------------------------------------------
  auto* metrics = app.add_subcommand("metrics", "exact metrics report (JSON)");
  FunctionOpts metrics_fn;
  std::uint64_t metrics_seed = 1;
  add_function_opts(metrics, metrics_fn);
  metrics->add_option("--seed", metrics_seed, "master seed");
  metrics->add_option("--out", out_path, "output file (default stdout)");
  metrics->callback([&] {
    const auto rep = compute_metrics(metrics_fn.make(metrics_seed));
    emit(out_path, to_json(rep).dump(2) + "\n");
  });

  // --- test ------------------------------------------------------------------
  auto* test = app.add_subcommand("test", "run one tester and print the verdict (JSON)");
  FunctionOpts test_fn;
  add_function_opts(test, test_fn);
  std::string tester = "combined";
  double eps = 0.5, sigma = 0.25, budget = 200;
  std::uint64_t test_seed = 1;
  test->add_option("--tester", tester, "edge | path | combined | sensitivity");
  test->add_option("--eps", eps, "distance parameter in (0, 1/2]");
  test->add_option("--sigma", sigma, "path-tester sigma");
  test->add_option("--budget-constant", budget, "repetition budget constant");
  test->add_option("--seed", test_seed, "master seed (tester randomness)");
  test->add_option("--out", out_path, "output file (default stdout)");
  test->callback([&] {
    const TruthTable f = test_fn.make(test_seed);
    QueryOracle oracle(f.n(), [&f](Point p) { return f.get(p.bits); });
    nlohmann::json j;
    switch (tester_kind_from_string(tester)) {
      case TesterKind::Edge: {
        Rng rng(test_seed);
        j = verdict_json(edge_test_once(oracle, rng));
        break;
      }
      case TesterKind::Path: {
        Rng rng(test_seed);
        j = verdict_json(path_test_once(oracle, make_params(f.n(), eps, sigma), rng));
        break;
      }
      case TesterKind::Combined: {
        const TesterRun run = combined_test(oracle, eps, budget, test_seed);
        j = verdict_json(run.verdict);
        j["rounds"] = run.rounds_executed;
        j["repetitions"] = run.repetitions;
        j["edge_only"] = run.edge_only;
        break;
      }
      case TesterKind::Sensitivity: {
        const double sens = to_double(average_sensitivity(f));
        const TesterRun run = sensitivity_test(oracle, eps, sens, budget, test_seed);
        j = verdict_json(run.verdict);
        j["rounds"] = run.rounds_executed;
        j["repetitions"] = run.repetitions;
        j["avg_sensitivity"] = sens;
        break;
      }
    }
    emit(out_path, j.dump(2) + "\n");
  });

  // --- estimate ----------------------------------------------------------------
  auto* estimate = app.add_subcommand("estimate", "rejection-rate estimate with Wilson interval");
  FunctionOpts est_fn;
  add_function_opts(estimate, est_fn);
  EstimateSpec est_spec;
  std::string est_tester = "edge";
  estimate->add_option("--tester", est_tester, "edge | path | combined | sensitivity");
  estimate->add_option("--eps", est_spec.eps, "distance parameter");
  estimate->add_option("--sigma", est_spec.sigma, "path-tester sigma");
  estimate->add_option("--budget-constant", est_spec.budget_constant, "budget constant");
  estimate->add_option("--trials", est_spec.trials, "number of trials");
  estimate->add_option("--seed", est_spec.master_seed, "master seed (per-trial derived)");
  estimate->add_option("--out", out_path, "output file (default stdout)");
  estimate->callback([&] {
    est_spec.kind = tester_kind_from_string(est_tester);
    const auto res = estimate_rejection(est_fn.make(est_spec.master_seed), est_spec);
    emit(out_path, to_json(res).dump(2) + "\n");
  });

  // --- sweep -------------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "verification sweeps (exit 1 on any failed row)");
  std::string kind = "dichotomy";
  int sweep_n = 4;
  bool exhaustive = false;
  std::uint64_t trials = 1000, master_seed = 1;
  double sweep_eps = 0.25;
  std::vector<double> sweep_sigmas{0.05, 0.1, 0.2};
  std::uint64_t draws = 1000000;
  sweep->add_option("--kind", kind, "dichotomy | lemmas | blue | pairprob | routing");
  sweep->add_option("--n", sweep_n, "dimension");
  sweep->add_flag("--exhaustive", exhaustive, "all functions at this dimension (dichotomy, n <= 4)");
  sweep->add_option("--trials", trials, "random instances");
  sweep->add_option("--seed", master_seed, "master seed");
  sweep->add_option("--eps", sweep_eps, "distance parameter (blue/pairprob)");
  sweep->add_option("--sigma", sweep_sigmas, "sigma values (blue) or single sigma (pairprob)");
  sweep->add_option("--draws", draws, "Monte Carlo draws (pairprob)");
  sweep->add_option("--out", out_path, "output file (default stdout)");
  sweep->add_option("--format", format, "csv | json");
  sweep->callback([&] {
    if (format != "csv" && format != "json")
      throw CLI::ValidationError("--format must be csv or json");
    const bool json = format == "json";
    bool all_pass = true;
    std::string text;
    if (kind == "dichotomy") {
      const DichotomySweep s = exhaustive ? dichotomy_sweep_exhaustive(sweep_n)
                                          : dichotomy_sweep_random(sweep_n, trials, master_seed);
      all_pass = s.all_pass;
      text = json ? dichotomy_sweep_json(s).dump(2) + "\n" : dichotomy_sweep_csv(s);
    } else if (kind == "lemmas") {
      const LemmaSweep s = lemma_sweep_random(sweep_n, trials, master_seed);
      all_pass = s.all_pass;
      text = json ? lemma_sweep_json(s).dump(2) + "\n" : lemma_sweep_csv(s);
    } else if (kind == "blue") {
      const BlueSweep s = blue_sweep(sweep_n, sweep_eps, sweep_sigmas, trials, master_seed);
      all_pass = s.all_pass;
      text = json ? blue_sweep_json(s).dump(2) + "\n" : blue_sweep_csv(s);
    } else if (kind == "pairprob") {
      const double sg = sweep_sigmas.empty() ? 0.5 : sweep_sigmas.front();
      const PairProbSweep s = pairprob_sweep(sweep_n, sweep_eps, sg, draws, master_seed);
      all_pass = s.all_pass;
      text = json ? pairprob_sweep_json(s).dump(2) + "\n" : pairprob_sweep_csv(s);
    } else if (kind == "routing") {
      const RoutingSweep s = routing_sweep(sweep_n, trials, master_seed);
      all_pass = s.all_pass;
      text = json ? routing_sweep_json(s).dump(2) + "\n" : routing_sweep_csv(s);
    } else {
      throw CLI::ValidationError("unknown sweep kind: " + kind);
    }
    emit(out_path, text);
    if (!all_pass) {
      std::cerr << "sweep had failing rows\n";
      throw CLI::RuntimeError(1);
    }
  });

  // --- routing-check / blue-sweep shortcuts -------------------------------------
  auto* routing_cmd = app.add_subcommand("routing-check", "routing sweep over random functions");
  int rc_n = 8;
  std::uint64_t rc_trials = 100, rc_seed = 1;
  std::string rc_out, rc_format = "csv";
  routing_cmd->add_option("--n", rc_n, "dimension");
  routing_cmd->add_option("--trials", rc_trials, "functions to harvest from");
  routing_cmd->add_option("--seed", rc_seed, "master seed");
  routing_cmd->add_option("--out", rc_out, "output file (default stdout)");
  routing_cmd->add_option("--format", rc_format, "csv | json");
  routing_cmd->callback([&] {
    const RoutingSweep s = routing_sweep(rc_n, rc_trials, rc_seed);
    emit(rc_out, rc_format == "json" ? routing_sweep_json(s).dump(2) + "\n" : routing_sweep_csv(s));
    if (!s.all_pass) {
      std::cerr << "routing check failed\n";
      throw CLI::RuntimeError(1);
    }
  });

  auto* blue_cmd = app.add_subcommand("blue-sweep", "blue-chain sweep over random blue sets");
  int bl_n = 12;
  double bl_eps = 0.25;
  std::vector<double> bl_sigmas{0.05, 0.1, 0.2};
  std::uint64_t bl_trials = 100, bl_seed = 1;
  std::string bl_out, bl_format = "csv";
  blue_cmd->add_option("--n", bl_n, "dimension");
  blue_cmd->add_option("--eps", bl_eps, "distance parameter");
  blue_cmd->add_option("--sigma", bl_sigmas, "sigma values");
  blue_cmd->add_option("--trials", bl_trials, "instances per sigma");
  blue_cmd->add_option("--seed", bl_seed, "master seed");
  blue_cmd->add_option("--out", bl_out, "output file (default stdout)");
  blue_cmd->add_option("--format", bl_format, "csv | json");
  blue_cmd->callback([&] {
    const BlueSweep s = blue_sweep(bl_n, bl_eps, bl_sigmas, bl_trials, bl_seed);
    emit(bl_out, bl_format == "json" ? blue_sweep_json(s).dump(2) + "\n" : blue_sweep_csv(s));
    if (!s.all_pass) {
      std::cerr << "blue sweep failed\n";
      throw CLI::RuntimeError(1);
    }
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

// Copyright 2026 The dks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: instance generation, solving, certificates,
// exhaustive oracle and phase-diagram sweeps.
//
// Exit codes: 0 success, 2 bad input, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dks/dks.hpp"

namespace {

using nlohmann::json;

constexpr int kBadInput = 2;
constexpr int kNumericalFailure = 3;

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json subset_json(const dks::NodeSubset& s) { return s.members(); }

void emit_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  dks::write_file(path, [&j](std::ostream& out) { out << j.dump(2) << '\n'; });
}

std::optional<dks::GroundTruth> find_truth(const std::string& graph_path,
                                           const std::string& explicit_path, int n1,
                                           int n2) {
  if (!explicit_path.empty()) return dks::load_ground_truth(explicit_path, n1, n2);
  const std::string sidecar = graph_path + ".truth";
  if (std::filesystem::exists(sidecar)) return dks::load_ground_truth(sidecar, n1, n2);
  return std::nullopt;
}

// generate ---------------------------------------------------------------

struct GenerateArgs {
  int n = 0, k = 0, n1 = 0, n2 = 0, k1 = 0, k2 = 0;
  double p = 0.0, q = 0.0;
  std::uint64_t seed = 1;
  bool no_permute = false;
  bool adversarial = false;
  long long r = 0, s = 0;
  double delta1 = 0.0, delta2 = 0.0;
  double alpha1 = 0.0, alpha2 = 0.0, beta1 = 0.0, beta2 = 0.0;
  std::string out, truth;
};

void add_generate(CLI::App& app, GenerateArgs& a) {
  auto* cmd = app.add_subcommand("generate", "Sample a planted instance");
  cmd->add_option("--n", a.n, "Nodes (simple graph)");
  cmd->add_option("--k", a.k, "Planted set size");
  cmd->add_option("--n1", a.n1, "Left part size (bipartite)");
  cmd->add_option("--n2", a.n2, "Right part size (bipartite)");
  cmd->add_option("--k1", a.k1, "Planted left size");
  cmd->add_option("--k2", a.k2, "Planted right size");
  cmd->add_option("--p", a.p, "Probability of each pair outside the planted block");
  cmd->add_option("--q", a.q, "Deletion probability inside the planted block");
  cmd->add_option("--seed", a.seed, "Instance seed");
  cmd->add_flag("--no-permute", a.no_permute, "Keep planted nodes at the lowest labels");
  cmd->add_flag("--adversarial", a.adversarial,
                "Corrupt a clean planted clique/biclique deterministically");
  cmd->add_option("--r", a.r, "Adversarial additions");
  cmd->add_option("--s", a.s, "Adversarial deletions");
  cmd->add_option("--delta1", a.delta1, "Per-node inside-deletion fraction");
  cmd->add_option("--delta2", a.delta2, "Per-outside-node attachment fraction");
  cmd->add_option("--alpha1", a.alpha1);
  cmd->add_option("--alpha2", a.alpha2);
  cmd->add_option("--beta1", a.beta1);
  cmd->add_option("--beta2", a.beta2);
  cmd->add_option("--out", a.out, "Edge-list output path")->required();
  cmd->add_option("--truth", a.truth, "Ground-truth path (default <out>.truth)");
}

int run_generate(const GenerateArgs& a) {
  const bool bipartite = a.n1 > 0 || a.n2 > 0;
  const std::string truth_path = a.truth.empty() ? a.out + ".truth" : a.truth;
  dks::GroundTruth truth;
  if (bipartite) {
    dks::PlantedDkbParams params{a.n1, a.n2, a.k1, a.k2, a.p, a.q, a.seed, !a.no_permute};
    if (a.adversarial) params.p = params.q = 0.0;
    auto inst = dks::sample_dkb(params);
    if (a.adversarial)
      inst = dks::corrupt_adversarial_bipartite(
          inst, {a.r, a.s, a.alpha1, a.alpha2, a.beta1, a.beta2}, a.seed);
    dks::write_file(a.out, [&](std::ostream& o) { dks::write_edge_list(o, inst.graph); });
    truth = {inst.planted_u, inst.planted_v, dks::params_json(inst)};
  } else {
    dks::PlantedDksParams params{a.n, a.k, a.p, a.q, a.seed, !a.no_permute};
    if (a.adversarial) params.p = params.q = 0.0;
    auto inst = dks::sample_dks(params);
    if (a.adversarial)
      inst = dks::corrupt_adversarial(inst, {a.r, a.s, a.delta1, a.delta2}, a.seed);
    dks::write_file(a.out, [&](std::ostream& o) { dks::write_edge_list(o, inst.graph); });
    truth = {inst.planted, std::nullopt, dks::params_json(inst)};
  }
  dks::write_file(truth_path, [&](std::ostream& o) { dks::write_ground_truth(o, truth); });
  std::cerr << "wrote " << a.out << " and " << truth_path << '\n';
  return 0;
}

// solve ------------------------------------------------------------------

struct SolveArgs {
  std::string graph, truth, out, mode = "derived";
  int k = 0, k1 = 0, k2 = 0, max_iter = 5000;
  std::optional<double> gamma;
  double tau = 0.35, tol = 1e-4;
};

void add_solver_flags(CLI::App* cmd, SolveArgs& a) {
  cmd->add_option("--gamma", a.gamma, "l1 weight (default 6/k or 6/sqrt(k1 k2))");
  cmd->add_option("--tau", a.tau, "ADMM parameter")->capture_default_str();
  cmd->add_option("--tol", a.tol, "Stopping tolerance")->capture_default_str();
  cmd->add_option("--max-iter", a.max_iter, "Iteration cap")->capture_default_str();
  cmd->add_option("--mode", a.mode, "Update rule")
      ->check(CLI::IsMember({"paper", "derived"}))
      ->capture_default_str();
}

void add_solve(CLI::App& app, SolveArgs& a) {
  auto* cmd = app.add_subcommand("solve", "Run the ADMM solver on an edge list");
  cmd->add_option("--graph", a.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--k", a.k, "Subgraph size (simple graph)");
  cmd->add_option("--k1", a.k1, "Left size (bipartite)");
  cmd->add_option("--k2", a.k2, "Right size (bipartite)");
  cmd->add_option("--truth", a.truth, "Ground-truth sidecar (default <graph>.truth if present)");
  cmd->add_option("--out", a.out, "JSON output path (default stdout)");
  add_solver_flags(cmd, a);
}

dks::SolverConfig solver_config(const SolveArgs& a, double default_gamma) {
  dks::SolverConfig cfg;
  cfg.gamma = a.gamma.value_or(default_gamma);
  cfg.tau = a.tau;
  cfg.tol = a.tol;
  cfg.max_iter = a.max_iter;
  cfg.mode = dks::parse_mode(a.mode);
  cfg.keep_history = false;
  return cfg;
}

json result_json(const dks::SolverResult& r) {
  return {{"converged", r.converged},
          {"status", dks::to_string(r.status)},
          {"iterations", r.iterations},
          {"objective", r.objective},
          {"primal_residual", r.primal_residual},
          {"dual_residual", r.dual_residual}};
}

int run_solve(const SolveArgs& a) {
  const auto any = dks::load_edge_list(a.graph);
  json out;
  dks::SolverResult res;
  if (const auto* g = std::get_if<dks::Graph>(&any)) {
    if (a.k < 1) throw dks::DomainError("solve on a simple graph needs --k");
    res = dks::solve_dks(*g, a.k, solver_config(a, dks::default_gamma(a.k)));
    out = result_json(res);
    out["recovered_subset"] = subset_json(dks::round_to_subset(res.X, a.k));
    if (auto t = find_truth(a.graph, a.truth, g->n(), 0)) {
      if (t->bipartite()) throw dks::DomainError("bipartite sidecar for a simple graph");
      out["X_relative_error_vs_ground_truth"] = dks::relative_error(res.X, t->planted);
    }
  } else {
    const auto& b = std::get<dks::BipartiteGraph>(any);
    if (a.k1 < 1 || a.k2 < 1) throw dks::DomainError("solve on a bipartite graph needs --k1 --k2");
    res = dks::solve_dkb(b, a.k1, a.k2, solver_config(a, dks::default_gamma(a.k1, a.k2)));
    out = result_json(res);
    const auto pair = dks::round_to_subsets(res.X, a.k1, a.k2);
    out["recovered_subset"] = {{"u", subset_json(pair.u)}, {"v", subset_json(pair.v)}};
    if (auto t = find_truth(a.graph, a.truth, b.n1(), b.n2())) {
      if (!t->bipartite()) throw dks::DomainError("simple-graph sidecar for a bipartite graph");
      out["X_relative_error_vs_ground_truth"] =
          dks::relative_error(res.X, t->planted, *t->planted_v);
    }
  }
  if (res.status == dks::SolverStatus::diverged) {
    out["message"] = res.message;
    emit_json(out, a.out);
    throw NumericalFailure("solver diverged: " + res.message);
  }
  emit_json(out, a.out);
  return 0;
}

// certify ----------------------------------------------------------------

struct CertifyArgs {
  std::string graph, truth, out;
  std::optional<double> gamma, epsilon;
  double atol = 1e-8;
  bool estimate = false;
};

void add_certify(CLI::App& app, CertifyArgs& a) {
  auto* cmd = app.add_subcommand("certify", "Build and verify the dual certificate");
  cmd->add_option("--graph", a.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--ground-truth", a.truth, "Sidecar (default <graph>.truth)");
  cmd->add_option("--gamma", a.gamma, "l1 weight (default 6/k)");
  cmd->add_option("--epsilon", a.epsilon, "Slack (default (1-p-q)/3)");
  cmd->add_option("--atol", a.atol, "Residual tolerance")->capture_default_str();
  cmd->add_flag("--estimate", a.estimate,
                "Use empirical p, q instead of the sidecar parameters");
  cmd->add_option("--out", a.out, "JSON output path (default stdout)");
}

int run_certify(const CertifyArgs& a) {
  const auto any = dks::load_edge_list(a.graph);
  const auto* g = std::get_if<dks::Graph>(&any);
  if (!g) throw dks::DomainError("certificates are only built for simple graphs");
  const auto truth = find_truth(a.graph, a.truth, g->n(), 0);
  if (!truth || truth->bipartite())
    throw dks::DomainError("certify needs a ground-truth sidecar with a planted set");

  const int k = truth->planted.size();
  double p, q;
  const bool from_params = !a.estimate && truth->params.contains("p") && truth->params.contains("q");
  if (from_params) {
    p = truth->params.at("p").get<double>();
    q = truth->params.at("q").get<double>();
  } else {
    const auto f = dks::estimate_pq(*g, truth->planted);
    p = f.p;
    q = f.q;
  }
  const double gamma = a.gamma.value_or(dks::default_gamma(k));
  const double eps = a.epsilon ? *a.epsilon : dks::default_epsilon(p, q);
  json out = {{"k", k}, {"p", p}, {"q", q}, {"pq_source", from_params ? "params" : "estimated"},
              {"gamma", gamma}, {"epsilon", eps}};
  dks::Multipliers mu;
  try {
    mu = dks::build_multipliers(*g, truth->planted, p, q, gamma, eps);
  } catch (const dks::CertificateInfeasible& e) {
    out["infeasible_node"] = e.node();
    out["error"] = e.what();
    emit_json(out, a.out);
    throw NumericalFailure(e.what());
  }
  const auto r = dks::verify(mu, *g, truth->planted, a.atol);
  out["lambda"] = mu.lambda;
  out["lambda_tilde"] = mu.lambda_tilde;
  out["stationarity_residual"] = r.stationarity_residual;
  out["Wv_residual"] = r.Wv_residual;
  out["W_spectral_norm"] = r.W_spectral_norm;
  out["F_inf_norm"] = r.F_inf_norm;
  out["min_M_on_block"] = r.min_M_on_block;
  out["W_margin"] = r.W_margin();
  out["F_margin"] = r.F_margin();
  out["M_margin"] = r.M_margin();
  out["F_support_ok"] = r.F_support_ok;
  out["M_support_ok"] = r.M_support_ok;
  out["atol"] = r.atol;
  out["valid_strict"] = r.valid_strict;
  emit_json(out, a.out);
  return 0;
}

// oracle -----------------------------------------------------------------

struct OracleArgs {
  std::string graph, out;
  int k = 0, k1 = 0, k2 = 0;
};

void add_oracle(CLI::App& app, OracleArgs& a) {
  auto* cmd = app.add_subcommand("oracle", "Exhaustive densest subgraph search");
  cmd->add_option("--graph", a.graph, "Edge-list file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--k", a.k, "Subgraph size (simple graph)");
  cmd->add_option("--k1", a.k1, "Left size (bipartite)");
  cmd->add_option("--k2", a.k2, "Right size (bipartite)");
  cmd->add_option("--out", a.out, "JSON output path (default stdout)");
}

int run_oracle(const OracleArgs& a) {
  const auto any = dks::load_edge_list(a.graph);
  json out;
  if (const auto* g = std::get_if<dks::Graph>(&any)) {
    if (a.k < 1) throw dks::DomainError("oracle on a simple graph needs --k");
    const auto r = dks::brute_force_dks(*g, a.k);
    out = {{"best_edge_count", r.best_edge_count},
           {"num_optima", r.optimal_subsets.size()},
           {"unique", r.unique},
           {"first_optimum", subset_json(r.optimal_subsets.front())}};
  } else {
    if (a.k1 < 1 || a.k2 < 1) throw dks::DomainError("oracle on a bipartite graph needs --k1 --k2");
    const auto r = dks::brute_force_dkb(std::get<dks::BipartiteGraph>(any), a.k1, a.k2);
    const auto& first = r.optimal_subsets.front();
    out = {{"best_edge_count", r.best_edge_count},
           {"num_optima", r.optimal_subsets.size()},
           {"unique", r.unique},
           {"first_optimum", {{"u", subset_json(first.u)}, {"v", subset_json(first.v)}}}};
  }
  emit_json(out, a.out);
  return 0;
}

// phase ------------------------------------------------------------------

struct PhaseArgs {
  std::string config, out_csv = "phase.csv", out_svg, out_trials;
  std::optional<int> n, trials, jobs, max_iter;
  std::optional<double> q, tau, tol, gamma;
  std::optional<std::vector<double>> p_list;
  std::optional<std::vector<int>> k_list;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  bool full_grid = false, quiet = false;
};

void add_phase(CLI::App& app, PhaseArgs& a) {
  auto* cmd = app.add_subcommand("phase", "Recovery phase diagram over a (p, k) grid");
  cmd->add_option("--config", a.config, "JSON grid settings; flags override")
      ->check(CLI::ExistingFile);
  cmd->add_option("--n", a.n, "Nodes per graph (default 250)");
  cmd->add_option("--q", a.q, "Inside deletion probability (default 0.25)");
  cmd->add_option("--p-list", a.p_list, "Comma-separated p values")->delimiter(',');
  cmd->add_option("--k-list", a.k_list, "Comma-separated k values")->delimiter(',');
  cmd->add_option("--trials", a.trials, "Trials per cell (default 10)");
  cmd->add_option("--seed", a.seed, "Master seed (default 1)");
  cmd->add_option("--mode", a.mode, "Update rule")->check(CLI::IsMember({"paper", "derived"}));
  cmd->add_option("--jobs", a.jobs, "Worker threads (default 1)");
  cmd->add_option("--tau", a.tau);
  cmd->add_option("--tol", a.tol);
  cmd->add_option("--max-iter", a.max_iter);
  cmd->add_option("--gamma", a.gamma, "Fixed l1 weight instead of 6/k");
  cmd->add_flag("--full-grid", a.full_grid,
                "p in steps of 0.025 over [0, q), k in steps of n/25 over (0, n)");
  cmd->add_option("--out-csv", a.out_csv, "Cell table")->capture_default_str();
  cmd->add_option("--out-svg", a.out_svg, "Grayscale heatmap");
  cmd->add_option("--out-trials", a.out_trials, "Per-trial records");
  cmd->add_flag("--quiet", a.quiet, "No per-trial progress on stderr");
}

int run_phase(const PhaseArgs& a) {
  dks::PhaseGridConfig cfg;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    try {
      dks::apply_json(json::parse(in), cfg);
    } catch (const json::exception& e) {
      throw dks::ParseError(a.config + ": " + e.what());
    }
  }
  if (a.n) cfg.n = *a.n;
  if (a.q) cfg.q = *a.q;
  if (a.full_grid) {
    cfg.p_values.clear();
    for (int i = 0; 0.025 * i < cfg.q - 1e-12; ++i) cfg.p_values.push_back(0.025 * i);
    cfg.k_values.clear();
    const int step = std::max(1, cfg.n / 25);
    for (int k = step; k < cfg.n; k += step) cfg.k_values.push_back(k);
  }
  if (a.p_list) cfg.p_values = *a.p_list;
  if (a.k_list) cfg.k_values = *a.k_list;
  if (a.trials) cfg.trials = *a.trials;
  if (a.seed) cfg.master_seed = *a.seed;
  if (a.jobs) cfg.jobs = *a.jobs;
  if (a.mode) cfg.solver.mode = dks::parse_mode(*a.mode);
  if (a.tau) cfg.solver.tau = *a.tau;
  if (a.tol) cfg.solver.tol = *a.tol;
  if (a.max_iter) cfg.solver.max_iter = *a.max_iter;
  if (a.gamma) cfg.gamma_override = *a.gamma;
  for (const auto& w : cfg.validate()) std::cerr << "warning: " << w << '\n';

  const std::size_t total = cfg.p_values.size() * cfg.k_values.size() * cfg.trials;
  std::size_t done = 0;
  const auto start = std::chrono::steady_clock::now();
  const auto result = dks::run_phase_diagram(cfg, [&](const dks::TrialRecord& t) {
    ++done;
    if (a.quiet) return;
    std::cerr << '[' << done << '/' << total << "] p=" << t.p << " k=" << t.k
              << " trial=" << t.trial << ' ' << (t.recovered ? "recovered" : "missed") << " ("
              << t.status << ", " << t.iterations << " it, " << t.wall_time << " s)";
    if (!t.error.empty()) std::cerr << " error: " << t.error;
    std::cerr << '\n';
  });
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  dks::write_file(a.out_csv, [&](std::ostream& o) { dks::emit_csv(o, result.cells); });
  if (!a.out_svg.empty())
    dks::write_file(a.out_svg, [&](std::ostream& o) { dks::emit_heatmap_svg(o, result.cells); });
  if (!a.out_trials.empty())
    dks::write_file(a.out_trials,
                    [&](std::ostream& o) { dks::emit_trials_csv(o, result.trials); });
  std::cerr << "phase grid: " << total << " trials in " << elapsed << " s, "
            << cfg.jobs << " worker(s); wrote " << a.out_csv << '\n';
  return 0;
}

// bench ------------------------------------------------------------------

struct BenchArgs {
  int n = 250, k = 100, repeats = 3;
  double p = 0.05, q = 0.25;
  std::uint64_t seed = 1;
  SolveArgs solver;
};

void add_bench(CLI::App& app, BenchArgs& a) {
  auto* cmd = app.add_subcommand("bench", "Wall time per solve on sampled instances");
  cmd->add_option("--n", a.n)->capture_default_str();
  cmd->add_option("--k", a.k)->capture_default_str();
  cmd->add_option("--p", a.p)->capture_default_str();
  cmd->add_option("--q", a.q)->capture_default_str();
  cmd->add_option("--seed", a.seed, "First instance seed")->capture_default_str();
  cmd->add_option("--repeats", a.repeats, "Instances to solve")->capture_default_str();
  add_solver_flags(cmd, a.solver);
}

int run_bench(const BenchArgs& a) {
  const auto cfg = solver_config(a.solver, dks::default_gamma(a.k));
  json runs = json::array();
  double total = 0.0;
  for (int i = 0; i < a.repeats; ++i) {
    const auto inst = dks::sample_dks({a.n, a.k, a.p, a.q, a.seed + static_cast<std::uint64_t>(i)});
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = dks::solve_dks(inst.graph, a.k, cfg);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += dt;
    runs.push_back({{"seed", a.seed + i},
                    {"seconds", dt},
                    {"iterations", r.iterations},
                    {"status", dks::to_string(r.status)},
                    {"seconds_per_iteration", r.iterations ? dt / r.iterations : 0.0},
                    {"relative_error", dks::relative_error(r.X, inst.planted)}});
  }
  emit_json({{"n", a.n}, {"k", a.k}, {"p", a.p}, {"q", a.q}, {"mode", a.solver.mode},
             {"mean_seconds", a.repeats ? total / a.repeats : 0.0}, {"runs", runs}},
            "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densest k-subgraph relaxation toolkit"};
  app.require_subcommand(1);
  GenerateArgs gen;
  SolveArgs solve;
  CertifyArgs cert;
  OracleArgs orac;
  PhaseArgs phase;
  BenchArgs bench;
  add_generate(app, gen);
  add_solve(app, solve);
  add_certify(app, cert);
  add_oracle(app, orac);
  add_phase(app, phase);
  add_bench(app, bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kBadInput;
  }

  try {
    if (app.got_subcommand("generate")) return run_generate(gen);
    if (app.got_subcommand("solve")) return run_solve(solve);
    if (app.got_subcommand("certify")) return run_certify(cert);
    if (app.got_subcommand("oracle")) return run_oracle(orac);
    if (app.got_subcommand("phase")) return run_phase(phase);
    if (app.got_subcommand("bench")) return run_bench(bench);
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const dks::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const json::exception& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::invalid_argument& e) {  // dimension, budget, shape
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::domain_error& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::length_error& e) {  // oracle size guard
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const dks::ParseError& e) {
    std::cerr << "bad input: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return 0;
}

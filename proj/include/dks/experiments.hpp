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

#ifndef DKS_EXPERIMENTS_HPP_
#define DKS_EXPERIMENTS_HPP_

// Recovery phase diagrams over (p, k) grids of planted instances.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "dks/admm.hpp"
#include "dks/errors.hpp"
#include "dks/planted.hpp"
#include "dks/rng.hpp"

namespace dks {

struct PhaseGridConfig {
  int n = 250;
  double q = 0.25;
  std::vector<double> p_values{0.0, 0.05, 0.10, 0.15, 0.20};
  std::vector<int> k_values{10, 25, 50, 75, 100, 125, 150};
  int trials = 10;
  std::uint64_t master_seed = 1;
  SolverConfig solver;                  // gamma <= 0 means 6/k per cell
  std::optional<double> gamma_override;
  double recovery_tol = 1e-3;
  int jobs = 1;

  /// Throws DomainError on unusable settings; returns soft warnings.
  std::vector<std::string> validate() const {
    if (n < 1) throw DomainError("grid n must be >= 1");
    if (trials < 1) throw DomainError("trials must be >= 1");
    if (p_values.empty() || k_values.empty()) throw DomainError("p and k grids must be nonempty");
    if (jobs < 1) throw DomainError("jobs must be >= 1");
    if (!(q >= 0.0 && q <= 1.0)) throw DomainError("q must lie in [0,1]");
    std::vector<std::string> warnings;
    for (double p : p_values) {
      if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p values must lie in [0,1]");
      if (p + q >= 1.0)
        warnings.push_back("p + q = " + std::to_string(p + q) +
                           " >= 1: the planted set is not denser than the rest");
    }
    for (int k : k_values)
      if (k < 1 || k > n) throw DomainError("k values must lie in [1, n]");
    return warnings;
  }
};

struct TrialRecord {
  double p = 0.0;
  int k = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  bool recovered = false;
  bool converged = false;
  int iterations = 0;
  double relative_error = 0.0;
  double wall_time = 0.0;  // seconds
  std::string status;      // solver status, or "error"
  std::string error;       // empty unless the trial failed
};

struct PhaseCell {
  int n = 0;
  double q = 0.0;
  double p = 0.0;
  int k = 0;
  int trials = 0;
  int recoveries = 0;
  double mean_iterations = 0.0;
  double mean_relative_error = 0.0;

  friend bool operator==(const PhaseCell&, const PhaseCell&) = default;
};

struct PhaseDiagram {
  std::vector<PhaseCell> cells;     // sorted by (p, k)
  std::vector<TrialRecord> trials;  // cell-major, trial order within a cell
};

/// Seed of one trial, a function of its grid coordinates only.
inline std::uint64_t trial_seed(std::uint64_t master, std::size_t p_index,
                                std::size_t k_index, int trial) {
  return derive_key(master, {p_index, k_index, static_cast<std::uint64_t>(trial)});
}

inline TrialRecord run_trial(const PhaseGridConfig& cfg, std::size_t pi, std::size_t ki,
                             int trial) {
  TrialRecord rec;
  rec.p = cfg.p_values[pi];
  rec.k = cfg.k_values[ki];
  rec.trial = trial;
  rec.seed = trial_seed(cfg.master_seed, pi, ki, trial);
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto inst = sample_dks({cfg.n, rec.k, rec.p, cfg.q, rec.seed, true});
    SolverConfig sc = cfg.solver;
    sc.gamma = cfg.gamma_override ? *cfg.gamma_override : default_gamma(rec.k);
    sc.keep_history = false;
    const auto res = solve_dks(inst.graph, rec.k, sc);
    rec.converged = res.converged;
    rec.iterations = res.iterations;
    rec.status = to_string(res.status);
    rec.relative_error = relative_error(res.X, inst.planted);
    rec.recovered = std::isfinite(rec.relative_error) && rec.relative_error < cfg.recovery_tol;
    if (res.status == SolverStatus::diverged) rec.error = res.message;
  } catch (const std::exception& e) {
    rec.recovered = false;
    rec.status = "error";
    rec.error = e.what();
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

/// Aggregates trial records into cells. Order of records within a cell does
/// not matter.
inline std::vector<PhaseCell> aggregate(const PhaseGridConfig& cfg,
                                        const std::vector<TrialRecord>& records) {
  std::map<std::pair<double, int>, PhaseCell> by_cell;
  for (const auto& r : records) {
    auto& c = by_cell[{r.p, r.k}];
    c.n = cfg.n;
    c.q = cfg.q;
    c.p = r.p;
    c.k = r.k;
    c.trials += 1;
    c.recoveries += r.recovered;
    c.mean_iterations += r.iterations;
    c.mean_relative_error += r.relative_error;
  }
  std::vector<PhaseCell> cells;
  for (auto& [key, c] : by_cell) {
    c.mean_iterations /= c.trials;
    c.mean_relative_error /= c.trials;
    cells.push_back(c);
  }
  return cells;
}

using TrialCallback = std::function<void(const TrialRecord&)>;

/// Runs every (p, k, trial) on a pool of cfg.jobs workers. Each trial writes
/// its own slot, so results do not depend on scheduling.
inline PhaseDiagram run_phase_diagram(const PhaseGridConfig& cfg,
                                      const TrialCallback& on_trial = {}) {
  cfg.validate();
  const std::size_t np = cfg.p_values.size(), nk = cfg.k_values.size();
  const std::size_t total = np * nk * static_cast<std::size_t>(cfg.trials);
  std::vector<TrialRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::mutex report_mutex;

  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const std::size_t pi = idx / (nk * cfg.trials);
      const std::size_t ki = (idx / cfg.trials) % nk;
      const int t = static_cast<int>(idx % cfg.trials);
      records[idx] = run_trial(cfg, pi, ki, t);
      if (on_trial) {
        std::lock_guard lock(report_mutex);
        on_trial(records[idx]);
      }
    }
  };
  const int workers = static_cast<int>(std::min<std::size_t>(cfg.jobs, total));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return {aggregate(cfg, records), std::move(records)};
}

namespace detail {

/// Shortest decimal that reads back to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

inline double parse_double(const std::string& s) {
  double x = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size())
    throw ParseError("not a number: '" + s + "'");
  return x;
}

inline int parse_int(const std::string& s) {
  int x = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || end != s.data() + s.size())
    throw ParseError("not an integer: '" + s + "'");
  return x;
}

}  // namespace detail

inline constexpr const char* kCsvHeader =
    "n,q,p,k,trials,recoveries,mean_iterations,mean_relative_error";

inline void emit_csv(std::ostream& out, std::vector<PhaseCell> cells) {
  std::stable_sort(cells.begin(), cells.end(), [](const PhaseCell& a, const PhaseCell& b) {
    return a.p != b.p ? a.p < b.p : a.k < b.k;
  });
  out << kCsvHeader << '\n';
  using detail::format_double;
  for (const auto& c : cells)
    out << c.n << ',' << format_double(c.q) << ',' << format_double(c.p) << ',' << c.k
        << ',' << c.trials << ',' << c.recoveries << ',' << format_double(c.mean_iterations)
        << ',' << format_double(c.mean_relative_error) << '\n';
}

inline std::vector<PhaseCell> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ParseError("phase CSV must start with the header '" + std::string(kCsvHeader) + "'");
  std::vector<PhaseCell> cells;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string tok; std::getline(ss, tok, ',');) f.push_back(tok);
    if (f.size() != 8)
      throw ParseError("phase CSV line " + std::to_string(lineno) + " has " +
                       std::to_string(f.size()) + " fields");
    using namespace detail;
    cells.push_back({parse_int(f[0]), parse_double(f[1]), parse_double(f[2]), parse_int(f[3]),
                     parse_int(f[4]), parse_int(f[5]), parse_double(f[6]), parse_double(f[7])});
  }
  return cells;
}

inline void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  body(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline void emit_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "p,k,trial,seed,recovered,converged,iterations,relative_error,wall_time,status,error\n";
  using detail::format_double;
  for (const auto& r : records) {
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    out << format_double(r.p) << ',' << r.k << ',' << r.trial << ',' << r.seed << ','
        << r.recovered << ',' << r.converged << ',' << r.iterations << ','
        << format_double(r.relative_error) << ',' << format_double(r.wall_time) << ','
        << r.status << ',' << err << '\n';
  }
}

/// Grayscale heatmap: x axis p, y axis k (largest k on top), fill lightness
/// proportional to recoveries / trials.
inline void emit_heatmap_svg(std::ostream& out, const std::vector<PhaseCell>& cells) {
  std::vector<double> ps;
  std::vector<int> ks;
  for (const auto& c : cells) {
    ps.push_back(c.p);
    ks.push_back(c.k);
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::map<std::pair<double, int>, const PhaseCell*> grid;
  for (const auto& c : cells)
    if (!grid.emplace(std::pair{c.p, c.k}, &c).second)
      throw ShapeError("duplicate heatmap cell");
  if (grid.size() != ps.size() * ks.size())
    throw ShapeError("heatmap cells do not form a full p x k grid (" +
                     std::to_string(cells.size()) + " cells for " + std::to_string(ps.size()) +
                     " p values x " + std::to_string(ks.size()) + " k values)");

  constexpr int cw = 48, ch = 32, left = 64, top = 16, bottom = 48;
  const int width = left + cw * static_cast<int>(ps.size()) + 16;
  const int height = top + ch * static_cast<int>(ks.size()) + bottom;
  using detail::format_double;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (std::size_t xi = 0; xi < ps.size(); ++xi)
    for (std::size_t yi = 0; yi < ks.size(); ++yi) {
      const PhaseCell& c = *grid.at({ps[xi], ks[yi]});
      const double light = c.trials > 0 ? 100.0 * c.recoveries / c.trials : 0.0;
      const std::string pct = format_double(light) + "%";
      const int x = left + cw * static_cast<int>(xi);
      const int y = top + ch * static_cast<int>(ks.size() - 1 - yi);
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cw << "\" height=\"" << ch
          << "\" fill=\"rgb(" << pct << ',' << pct << ',' << pct << ")\"><title>p="
          << format_double(c.p) << " k=" << c.k << ": " << c.recoveries << '/' << c.trials
          << "</title></rect>\n";
    }
  const int grid_bottom = top + ch * static_cast<int>(ks.size());
  for (std::size_t xi = 0; xi < ps.size(); ++xi)
    out << "<text x=\"" << left + cw * static_cast<int>(xi) + cw / 2 << "\" y=\""
        << grid_bottom + 14 << "\" text-anchor=\"middle\">" << format_double(ps[xi])
        << "</text>\n";
  for (std::size_t yi = 0; yi < ks.size(); ++yi)
    out << "<text x=\"" << left - 6 << "\" y=\""
        << top + ch * static_cast<int>(ks.size() - 1 - yi) + ch / 2 + 4
        << "\" text-anchor=\"end\">" << ks[yi] << "</text>\n";
  out << "<text x=\"" << left + cw * static_cast<int>(ps.size()) / 2 << "\" y=\""
      << grid_bottom + 36 << "\" text-anchor=\"middle\">p</text>\n";
  out << "<text x=\"16\" y=\"" << top + ch * static_cast<int>(ks.size()) / 2
      << "\" text-anchor=\"middle\">k</text>\n";
  out << "</svg>\n";
}

/// Reads grid settings from JSON; absent keys keep their current values.
inline void apply_json(const nlohmann::json& j, PhaseGridConfig& cfg) {
  if (j.contains("n")) cfg.n = j.at("n").get<int>();
  if (j.contains("q")) cfg.q = j.at("q").get<double>();
  if (j.contains("p_values")) cfg.p_values = j.at("p_values").get<std::vector<double>>();
  if (j.contains("k_values")) cfg.k_values = j.at("k_values").get<std::vector<int>>();
  if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
  if (j.contains("seed")) cfg.master_seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
  if (j.contains("recovery_tol")) cfg.recovery_tol = j.at("recovery_tol").get<double>();
  if (j.contains("gamma")) cfg.gamma_override = j.at("gamma").get<double>();
  if (j.contains("tau")) cfg.solver.tau = j.at("tau").get<double>();
  if (j.contains("tol")) cfg.solver.tol = j.at("tol").get<double>();
  if (j.contains("max_iter")) cfg.solver.max_iter = j.at("max_iter").get<int>();
  if (j.contains("mode")) cfg.solver.mode = parse_mode(j.at("mode").get<std::string>());
}

}  // namespace dks

#endif  // DKS_EXPERIMENTS_HPP_

// Benchmark harness for the trace / diagonal estimators.  Reproduces the
// library's experiment families at desk scale and emits machine-readable
// tables: synthetic spectra sweeps, transverse-field Ising partition
// functions and energies, graph centralities, and a priori bound checks.
//
// Talks to the library exclusively through the C API.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xtrace/xtrace_c.h"

namespace {

using json = nlohmann::json;

void check(xt_status st, const std::string& context) {
  if (st != XT_OK) {
    throw std::runtime_error(context + ": " + xt_last_error());
  }
}

struct OperatorHandle {
  xt_operator* p = nullptr;
  OperatorHandle() = default;
  explicit OperatorHandle(xt_operator* q) : p(q) {}
  OperatorHandle(const OperatorHandle&) = delete;
  OperatorHandle& operator=(const OperatorHandle&) = delete;
  OperatorHandle(OperatorHandle&& o) noexcept : p(o.p) { o.p = nullptr; }
  OperatorHandle& operator=(OperatorHandle&& o) noexcept {
    std::swap(p, o.p);
    return *this;
  }
  ~OperatorHandle() {
    if (p) xt_operator_destroy(p);
  }
  xt_operator* get() const { return p; }
};

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// One output row: the fixed eight columns plus per-experiment extras.
struct Row {
  std::string experiment;
  std::string estimator;
  std::int64_t m = 0;
  std::int64_t trials = 0;
  double mean_rel_err = std::numeric_limits<double>::quiet_NaN();
  double rmse = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> mean_err_est;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> extra;
};

struct OutputOptions {
  std::string path;            // empty: stdout
  std::string format = "csv";  // csv | json
};

void write_output(const std::vector<Row>& rows,
                  const std::vector<std::string>& extra_columns,
                  const json& config, const OutputOptions& out) {
  std::vector<std::string> columns = {"experiment",   "estimator", "m",
                                      "trials",       "mean_rel_err", "rmse",
                                      "mean_err_est", "seed"};
  columns.insert(columns.end(), extra_columns.begin(), extra_columns.end());

  const auto cell = [&](const Row& r, std::size_t c) -> std::string {
    switch (c) {
      case 0: return r.experiment;
      case 1: return r.estimator;
      case 2: return std::to_string(r.m);
      case 3: return std::to_string(r.trials);
      case 4: return fmt(r.mean_rel_err);
      case 5: return fmt(r.rmse);
      case 6: return r.mean_err_est ? fmt(*r.mean_err_est) : "";
      case 7: return std::to_string(r.seed);
      default: {
        const std::string& name = columns[c];
        for (const auto& [k, v] : r.extra) {
          if (k == name) return v;
        }
        return "";
      }
    }
  };

  std::ostringstream body;
  if (out.format == "json") {
    json doc;
    doc["config"] = config;
    doc["columns"] = columns;
    json jrows = json::array();
    for (const Row& r : rows) {
      json jr = json::array();
      for (std::size_t c = 0; c < columns.size(); ++c) jr.push_back(cell(r, c));
      jrows.push_back(std::move(jr));
    }
    doc["rows"] = std::move(jrows);
    body << doc.dump(2) << "\n";
  } else {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      body << (c ? "," : "") << columns[c];
    }
    body << "\n";
    for (const Row& r : rows) {
      for (std::size_t c = 0; c < columns.size(); ++c) {
        body << (c ? "," : "") << cell(r, c);
      }
      body << "\n";
    }
  }

  if (out.path.empty()) {
    std::cout << body.str();
    return;
  }
  {
    std::ofstream f(out.path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out.path);
    f << body.str();
  }
  if (out.format == "csv") {
    // Sidecar with the full configuration next to the CSV table.
    std::ofstream f(out.path + ".json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out.path + ".json");
    f << config.dump(2) << "\n";
  }
}

// Runs fn(0..n-1) on a small pool; per-trial outputs go into indexed slots
// so the reduction order never depends on scheduling.
void parallel_for(std::int64_t n, unsigned threads,
                  const std::function<void(std::int64_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, n));
  if (threads == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::string> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::int64_t i = next++; i < n; i = next++) fn(i);
      } catch (const std::exception& e) {
        errors[t] = e.what();
        next.store(n);
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
}

struct CellStats {
  double mean_rel_err = 0.0;
  double rmse_rel = 0.0;
  double rmse_abs = 0.0;
  std::optional<double> mean_err_est_rel;
};

// Trials are seeded with split_seed(cell_seed, trial) and aggregated in
// trial order, independently of the worker schedule.
CellStats run_trace_cell(const xt_operator* op, const std::string& estimator,
                         std::int64_t m, const std::string& dist,
                         bool normalize, std::uint64_t cell_seed,
                         std::int64_t trials, double exact, unsigned threads) {
  std::vector<double> rel(trials), abs_err(trials), err_est(trials);
  parallel_for(trials, threads, [&](std::int64_t t) {
    xt_trace_result res;
    check(xt_trace_estimate(op, estimator.c_str(), m, dist.c_str(),
                            normalize ? 1 : 0, xt_split_seed(cell_seed, t),
                            &res, nullptr),
          estimator);
    abs_err[t] = std::abs(res.estimate - exact);
    rel[t] = abs_err[t] / std::abs(exact);
    err_est[t] = res.err_est;
  });
  CellStats s;
  double sum_rel = 0.0, sum_rel2 = 0.0, sum_abs2 = 0.0, sum_ee = 0.0;
  bool have_ee = true;
  for (std::int64_t t = 0; t < trials; ++t) {
    sum_rel += rel[t];
    sum_rel2 += rel[t] * rel[t];
    sum_abs2 += abs_err[t] * abs_err[t];
    if (std::isnan(err_est[t])) have_ee = false;
    sum_ee += err_est[t];
  }
  const double n = static_cast<double>(trials);
  s.mean_rel_err = sum_rel / n;
  s.rmse_rel = std::sqrt(sum_rel2 / n);
  s.rmse_abs = std::sqrt(sum_abs2 / n);
  if (have_ee) s.mean_err_est_rel = (sum_ee / n) / std::abs(exact);
  return s;
}

std::int64_t rounded_budget(const std::string& estimator, std::int64_t m) {
  const std::int64_t r = xt_admissible_budget(estimator.c_str(), m);
  if (r <= 0) {
    throw std::runtime_error("no admissible budget <= " + std::to_string(m) +
                             " for estimator " + estimator);
  }
  return r;
}

struct CommonOptions {
  std::vector<std::string> estimators;
  std::vector<std::int64_t> ms;
  std::int64_t trials = 100;
  std::uint64_t seed = 0;
  std::string dist = "signs";
  bool normalize = false;
  OutputOptions out;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, CommonOptions& c,
                const std::vector<std::string>& default_estimators,
                const std::vector<std::int64_t>& default_ms,
                const std::string& default_dist) {
  c.estimators = default_estimators;
  c.ms = default_ms;
  c.dist = default_dist;
  cmd->add_option("--estimators", c.estimators, "estimators to run")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--m", c.ms, "matvec budgets (rounded down to admissible)")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--trials", c.trials, "Monte Carlo trials per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--seed", c.seed, "base seed")->capture_default_str();
  cmd->add_option("--dist", c.dist, "test-vector distribution")
      ->check(CLI::IsMember({"signs", "gaussian", "sphere"}))
      ->capture_default_str();
  cmd->add_flag("--normalize", c.normalize,
                "normalized residual test vectors (xtrace/xnystrace)");
  cmd->add_option("--out", c.out.path, "output path (default: stdout)");
  cmd->add_option("--format", c.out.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "worker threads for trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

json base_config(const char* experiment, const CommonOptions& c) {
  json j;
  j["experiment"] = experiment;
  j["estimators"] = c.estimators;
  j["m"] = c.ms;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["dist"] = c.dist;
  j["normalize"] = c.normalize;
  j["version"] = xt_version();
  j["aggregation"] = "mean of per-trial relative errors";
  return j;
}

std::uint64_t cell_seed(std::uint64_t base, std::size_t est_idx,
                        std::size_t m_idx) {
  return xt_split_seed(xt_split_seed(base, est_idx), m_idx);
}

// ------------------------------------------------------------- synth ------

int run_synth(const CommonOptions& c, const std::string& spectrum,
              std::int64_t n) {
  OperatorHandle op;
  check(xt_operator_create_synthetic(spectrum.c_str(), n, c.seed, &op.p),
        "synthetic operator");
  double exact = 0.0;
  check(xt_exact_trace(op.get(), &exact), "exact trace");

  std::vector<Row> rows;
  for (std::size_t e = 0; e < c.estimators.size(); ++e) {
    for (std::size_t j = 0; j < c.ms.size(); ++j) {
      const std::string& est = c.estimators[e];
      const std::int64_t m = rounded_budget(est, c.ms[j]);
      const CellStats s =
          run_trace_cell(op.get(), est, m, c.dist, c.normalize,
                         cell_seed(c.seed, e, j), c.trials, exact, c.threads);
      Row r{"synth", est,     m, c.trials, s.mean_rel_err, s.rmse_rel,
            s.mean_err_est_rel, c.seed, {}};
      r.extra = {{"spectrum", spectrum},
                 {"n", std::to_string(n)},
                 {"dist", c.dist},
                 {"normalize", c.normalize ? "1" : "0"}};
      rows.push_back(std::move(r));
    }
  }
  json cfg = base_config("synth", c);
  cfg["spectrum"] = spectrum;
  cfg["n"] = n;
  write_output(rows, {"spectrum", "n", "dist", "normalize"}, cfg, c.out);
  return 0;
}

// -------------------------------------------------------------- tfim ------

int run_tfim_errors(const CommonOptions& c, int sites,
                    const std::vector<double>& betas,
                    const std::vector<double>& fields) {
  std::vector<Row> rows;
  std::size_t instance = 0;
  for (double h : fields) {
    for (double beta : betas) {
      OperatorHandle op;
      check(xt_operator_create_tfim_boltzmann(sites, h, beta, 0, &op.p),
            "tfim boltzmann operator");
      double exact = 0.0;  // tr exp(-beta (H + bI)); the e^{beta b} factor
      check(xt_exact_trace(op.get(), &exact), "exact trace");  // cancels
      const std::uint64_t instance_seed = xt_split_seed(c.seed, instance++);
      for (std::size_t e = 0; e < c.estimators.size(); ++e) {
        for (std::size_t j = 0; j < c.ms.size(); ++j) {
          const std::string& est = c.estimators[e];
          const std::int64_t m = rounded_budget(est, c.ms[j]);
          const CellStats s = run_trace_cell(
              op.get(), est, m, c.dist, c.normalize,
              cell_seed(instance_seed, e, j), c.trials, exact, c.threads);
          Row r{"tfim", est,     m, c.trials, s.mean_rel_err, s.rmse_rel,
                s.mean_err_est_rel, c.seed, {}};
          r.extra = {{"n", std::to_string(sites)},
                     {"beta", fmt(beta)},
                     {"field", fmt(h)},
                     {"dist", c.dist},
                     {"normalize", c.normalize ? "1" : "0"}};
          rows.push_back(std::move(r));
        }
      }
    }
  }
  json cfg = base_config("tfim", c);
  cfg["n"] = sites;
  cfg["beta"] = betas;
  cfg["field"] = fields;
  write_output(rows, {"n", "beta", "field", "dist", "normalize"}, cfg, c.out);
  return 0;
}

// Adaptive energy sweep: for each (beta, h), estimate Z and the energy with
// the doubling driver and report energy per site.  Columns differ from the
// error sweeps and are documented in the README.
int run_tfim_adaptive(const CommonOptions& c, int sites,
                      const std::vector<double>& betas,
                      const std::vector<double>& fields, double eps,
                      std::int64_t m0, std::int64_t mmax) {
  const std::string est = c.estimators.empty() ? "xnystrace" : c.estimators[0];
  const std::int64_t dim = std::int64_t{1} << sites;
  std::vector<Row> rows;
  std::size_t cell = 0;
  for (double h : fields) {
    const double b = xt_tfim_psd_shift(sites, h);
    std::vector<double> eig(dim);
    check(xt_tfim_eigenvalues(sites, h, eig.data()), "tfim eigenvalues");
    for (double beta : betas) {
      OperatorHandle zop, eop;
      check(xt_operator_create_tfim_boltzmann(sites, h, beta, 0, &zop.p),
            "tfim boltzmann operator");
      check(xt_operator_create_tfim_boltzmann(sites, h, beta, 1, &eop.p),
            "tfim energy operator");

      xt_trace_result zres, eres;
      int zconv = 0, econv = 0;
      std::int64_t zrounds = 0, erounds = 0;
      check(xt_trace_adaptive(zop.get(), est.c_str(), c.dist.c_str(),
                              c.normalize ? 1 : 0,
                              xt_split_seed(c.seed, 2 * cell), m0, eps, mmax,
                              &zres, &zconv, &zrounds),
            "adaptive Z");
      check(xt_trace_adaptive(eop.get(), est.c_str(), c.dist.c_str(),
                              c.normalize ? 1 : 0,
                              xt_split_seed(c.seed, 2 * cell + 1), m0, eps,
                              mmax, &eres, &econv, &erounds),
            "adaptive energy");

      const double z_est = std::exp(beta * b) * zres.estimate;
      const double energy = eres.estimate / zres.estimate - b;

      double z_exact = 0.0, ze_exact = 0.0;
      for (double lam : eig) {
        z_exact += std::exp(-beta * lam);
        ze_exact += lam * std::exp(-beta * lam);
      }
      const double energy_exact = ze_exact / z_exact;

      Row r{"tfim_energy",
            est,
            zres.matvecs + eres.matvecs,
            1,
            std::abs(z_est - z_exact) / z_exact,
            std::numeric_limits<double>::quiet_NaN(),
            zres.err_est / std::abs(zres.estimate),
            c.seed,
            {}};
      r.extra = {{"n", std::to_string(sites)},
                 {"beta", fmt(beta)},
                 {"field", fmt(h)},
                 {"energy_per_site", fmt(energy / sites)},
                 {"energy_per_site_exact", fmt(energy_exact / sites)},
                 {"z_estimate", fmt(z_est)},
                 {"z_exact", fmt(z_exact)},
                 {"converged", (zconv && econv) ? "1" : "0"}};
      rows.push_back(std::move(r));
      ++cell;
    }
  }
  json cfg = base_config("tfim_energy", c);
  cfg["n"] = sites;
  cfg["beta"] = betas;
  cfg["field"] = fields;
  cfg["eps"] = eps;
  cfg["m0"] = m0;
  cfg["mmax"] = mmax;
  cfg["estimator"] = est;
  write_output(rows,
               {"n", "beta", "field", "energy_per_site",
                "energy_per_site_exact", "z_estimate", "z_exact", "converged"},
               cfg, c.out);
  return 0;
}

// ------------------------------------------------------------- graph ------

int run_graph(const CommonOptions& c, const std::string& input) {
  const std::vector<std::pair<std::string, std::string>> targets = {
      {"subgraph_centrality", "exp"}, {"triangle_m3half", "cube_half"}};
  std::vector<Row> rows;
  for (std::size_t tgt = 0; tgt < targets.size(); ++tgt) {
    OperatorHandle op;
    check(xt_operator_create_adjacency_function(
              input.c_str(), targets[tgt].second.c_str(), &op.p),
          "adjacency operator");
    const std::int64_t n = xt_operator_dim(op.get());
    std::vector<double> exact(n);
    check(xt_exact_diag(op.get(), exact.data()), "exact diagonal");
    double exact_max = 0.0;
    for (double v : exact) exact_max = std::max(exact_max, std::abs(v));

    for (std::size_t e = 0; e < c.estimators.size(); ++e) {
      for (std::size_t j = 0; j < c.ms.size(); ++j) {
        const std::string& est = c.estimators[e];
        const std::int64_t m = rounded_budget(est, c.ms[j]);
        std::vector<double> errs(c.trials);
        const std::uint64_t cs = cell_seed(c.seed + tgt, e, j);
        parallel_for(c.trials, c.threads, [&](std::int64_t t) {
          std::vector<double> d(n);
          xt_trace_result info;
          check(xt_diag_estimate(op.get(), est.c_str(), m, c.dist.c_str(),
                                 xt_split_seed(cs, t), d.data(), &info),
                est);
          double worst = 0.0;
          for (std::int64_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::abs(exact[i] - d[i]));
          }
          errs[t] = worst / exact_max;  // relative l-infinity error
        });
        double sum = 0.0, sum2 = 0.0;
        for (double x : errs) {
          sum += x;
          sum2 += x * x;
        }
        Row r{"graph",
              est,
              m,
              c.trials,
              sum / static_cast<double>(c.trials),
              std::sqrt(sum2 / static_cast<double>(c.trials)),
              std::nullopt,
              c.seed,
            {}};
        r.extra = {{"target", targets[tgt].first},
                   {"input", input},
                   {"dist", c.dist}};
        rows.push_back(std::move(r));
      }
    }
  }
  json cfg = base_config("graph", c);
  cfg["input"] = input;
  write_output(rows, {"target", "input", "dist"}, cfg, c.out);
  return 0;
}

// ------------------------------------------------------------ bounds ------

int run_bounds(const CommonOptions& c, const std::string& spectrum,
               std::int64_t n) {
  if (c.dist != "gaussian") {
    throw std::runtime_error(
        "bounds: the a priori bounds hold for gaussian test vectors; run "
        "with --dist gaussian");
  }
  OperatorHandle op;
  check(xt_operator_create_synthetic(spectrum.c_str(), n, c.seed, &op.p),
        "synthetic operator");
  double exact = 0.0;
  check(xt_exact_trace(op.get(), &exact), "exact trace");
  std::vector<double> sv(n);
  check(xt_spectrum_eigenvalues(spectrum.c_str(), n, sv.data()), "spectrum");

  bool any_violation = false;
  std::vector<Row> rows;
  for (std::size_t e = 0; e < c.estimators.size(); ++e) {
    for (std::size_t j = 0; j < c.ms.size(); ++j) {
      const std::string& est = c.estimators[e];
      const std::int64_t m = rounded_budget(est, c.ms[j]);
      const CellStats s =
          run_trace_cell(op.get(), est, m, "gaussian", false,
                         cell_seed(c.seed, e, j), c.trials, exact, c.threads);
      double bound = 0.0;
      std::int64_t r_opt = 0;
      check(xt_variance_bound(est.c_str(), sv.data(), n, m, &bound, &r_opt),
            "variance bound");
      const bool violated = s.rmse_abs > bound;
      any_violation = any_violation || violated;
      Row r{"bounds", est,     m, c.trials, s.mean_rel_err, s.rmse_abs,
            s.mean_err_est_rel, c.seed, {}};
      r.extra = {{"spectrum", spectrum},
                 {"n", std::to_string(n)},
                 {"bound", fmt(bound)},
                 {"bound_r", std::to_string(r_opt)},
                 {"violated", violated ? "1" : "0"}};
      rows.push_back(std::move(r));
    }
  }
  json cfg = base_config("bounds", c);
  cfg["spectrum"] = spectrum;
  cfg["n"] = n;
  cfg["rmse_scale"] = "absolute";
  write_output(rows, {"spectrum", "n", "bound", "bound_r", "violated"}, cfg,
               c.out);
  if (any_violation) {
    std::cerr << "xtbench: bound violation detected (see 'violated' column)"
              << std::endl;
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matrix-free trace and diagonal estimation benchmarks"};
  app.require_subcommand(1);

  // synth ------------------------------------------------------------------
  CommonOptions synth_c;
  std::string synth_spectrum = "exp";
  std::int64_t synth_n = 1000;
  CLI::App* synth = app.add_subcommand("synth", "synthetic spectrum sweep");
  add_common(synth, synth_c,
             {"hutch", "lra", "hutchpp", "nystrompp", "xtrace", "xnystrace"},
             {12, 24, 36, 48, 60}, "signs");
  synth->add_option("--spectrum", synth_spectrum, "eigenvalue profile")
      ->check(CLI::IsMember({"flat", "poly", "exp", "step"}))
      ->capture_default_str();
  synth->add_option("--n", synth_n, "matrix dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // tfim -------------------------------------------------------------------
  CommonOptions tfim_c;
  int tfim_sites = 10;
  std::vector<double> tfim_betas = {0.6};
  std::vector<double> tfim_fields = {10.0};
  double tfim_eps = 0.0;
  std::int64_t tfim_m0 = 8, tfim_mmax = 4096;
  CLI::App* tfim =
      app.add_subcommand("tfim", "transverse-field Ising partition function");
  add_common(tfim, tfim_c, {"xnystrace", "xtrace"}, {8, 16, 24, 32, 40},
             "gaussian");
  tfim->add_option("--n", tfim_sites, "number of spin sites (<= 12)")
      ->check(CLI::Range(2, 12))
      ->capture_default_str();
  tfim->add_option("--beta", tfim_betas, "inverse temperatures")
      ->delimiter(',')
      ->capture_default_str();
  tfim->add_option("--field", tfim_fields, "transverse field strengths")
      ->delimiter(',')
      ->capture_default_str();
  tfim->add_option("--eps", tfim_eps,
                   "adaptive tolerance; enables the doubling energy sweep")
      ->capture_default_str();
  tfim->add_option("--m0", tfim_m0, "adaptive initial budget")
      ->capture_default_str();
  tfim->add_option("--mmax", tfim_mmax, "adaptive budget cap")
      ->capture_default_str();

  // graph ------------------------------------------------------------------
  CommonOptions graph_c;
  std::string graph_input;
  CLI::App* graph = app.add_subcommand("graph", "graph centrality diagonals");
  add_common(graph, graph_c, {"bks", "xdiag"}, {20, 40, 80}, "signs");
  graph->add_option("--input", graph_input, "MatrixMarket adjacency file")
      ->required();

  // bounds -----------------------------------------------------------------
  CommonOptions bounds_c;
  std::string bounds_spectrum = "exp";
  std::int64_t bounds_n = 1000;
  CLI::App* bounds =
      app.add_subcommand("bounds", "empirical RMSE against the a priori bounds");
  add_common(bounds, bounds_c, {"hutchpp", "xtrace", "xnystrace"},
             {12, 24, 48}, "gaussian");
  bounds->add_option("--spectrum", bounds_spectrum, "eigenvalue profile")
      ->check(CLI::IsMember({"flat", "poly", "exp", "step"}))
      ->capture_default_str();
  bounds->add_option("--n", bounds_n, "matrix dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return run_synth(synth_c, synth_spectrum, synth_n);
    if (tfim->parsed()) {
      if (tfim_eps > 0.0) {
        return run_tfim_adaptive(tfim_c, tfim_sites, tfim_betas, tfim_fields,
                                 tfim_eps, tfim_m0, tfim_mmax);
      }
      return run_tfim_errors(tfim_c, tfim_sites, tfim_betas, tfim_fields);
    }
    if (graph->parsed()) return run_graph(graph_c, graph_input);
    if (bounds->parsed()) return run_bounds(bounds_c, bounds_spectrum, bounds_n);
  } catch (const std::exception& e) {
    std::cerr << "xtbench: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}

// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end for the fgent library: exact moments, oracle
// verification sweeps, identity-catalogue sweeps, Monte Carlo simulation,
// fixed-fraction asymptotics, one-point densities, and figure-data export.
//
// Exit codes: 0 success, 1 verification/runtime failure, 2 usage or
// domain error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <fgent/ensemble.hpp>
#include <fgent/identities.hpp>
#include <fgent/kernel.hpp>
#include <fgent/moments.hpp>
#include <fgent/oracles.hpp>
#include <fgent/sampler.hpp>

using nlohmann::ordered_json;
using namespace fgent;

namespace {

// ---------------------------------------------------------------------------
// Formatting helpers
// ---------------------------------------------------------------------------

// Table mode: 15 significant digits.  CSV mode: 17 (full binary64
// round-trip).  JSON numbers go through the JSON library's shortest
// round-trip serialization.
std::string fmt15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_kv(const std::string& key, const std::string& value) {
  std::printf("%-18s %s\n", key.c_str(), value.c_str());
}

void emit_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ",";
    os << cells[i];
  }
  os << "\n";
}

// Every JSON output is {"config": ..., "results": ...} serialized with a
// two-space indent; parsing and re-dumping the same way is byte-identical.
void emit_json(const ordered_json& config, const ordered_json& results) {
  ordered_json out;
  out["config"] = config;
  out["results"] = results;
  std::printf("%s\n", out.dump(2).c_str());
}

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

struct RunConfig {
  std::string command;
  std::string ens_case;  // "A", "B", or "both" for sweeps
  int m = -1;
  int n = -1;
  int p = -1;
  std::string output = "table";
  std::uint64_t seed = 1;
  long long n_samples = -1;
  int order = -1;
  ordered_json extras = ordered_json::object();
};

ordered_json config_json(const RunConfig& rc) {
  ordered_json j;
  j["command"] = rc.command;
  if (!rc.ens_case.empty()) j["case"] = rc.ens_case;
  if (rc.m >= 0) j["m"] = rc.m;
  if (rc.n >= 0) j["n"] = rc.n;
  if (rc.p >= 0) j["p"] = rc.p;
  j["output"] = rc.output;
  if (rc.n_samples >= 0) {
    j["seed"] = rc.seed;
    j["n_samples"] = rc.n_samples;
  }
  if (rc.order >= 0) j["order"] = rc.order;
  for (const auto& [k, v] : rc.extras.items()) j[k] = v;
  return j;
}

// Builds and validates the ensemble spec; rejects contradictory flags.
EnsembleSpec make_spec(const std::string& ens_case, int m, int n, int p) {
  if (ens_case == "A") {
    if (p >= 0)
      throw std::domain_error("case A has no particle-number parameter; drop -p");
    return EnsembleSpec::case_a(m, n);
  }
  if (p < 0) throw std::domain_error("case B requires -p");
  return EnsembleSpec::case_b(m, n, p);
}

ordered_json spec_json(const EnsembleSpec& spec) {
  ordered_json j;
  j["case"] = spec.kind == EnsembleCase::A ? "A" : "B";
  j["m"] = spec.m;
  j["n"] = spec.n;
  if (spec.kind == EnsembleCase::B) j["p"] = spec.p;
  return j;
}

std::string p_cell(const EnsembleSpec& spec) {
  return spec.kind == EnsembleCase::B ? std::to_string(spec.p) : std::string();
}

// ---------------------------------------------------------------------------
// exact
// ---------------------------------------------------------------------------

int cmd_exact(const RunConfig& rc) {
  const EnsembleSpec spec = make_spec(rc.ens_case, rc.m, rc.n, rc.p);
  const MomentReport rep = moments_closed_form(spec);

  if (rc.output == "json") {
    ordered_json res;
    res["spec"] = spec_json(spec);
    res["method"] = method_name(rep.method);
    res["mean"] = rep.mean;
    res["variance"] = rep.variance;
    emit_json(config_json(rc), res);
  } else if (rc.output == "csv") {
    emit_csv_row(std::cout, {"case", "m", "n", "p", "mean", "variance", "method"});
    emit_csv_row(std::cout, {spec.kind == EnsembleCase::A ? "A" : "B",
                             std::to_string(spec.m), std::to_string(spec.n), p_cell(spec),
                             fmt17(rep.mean), fmt17(rep.variance), method_name(rep.method)});
  } else {
    print_kv("spec", spec.label());
    print_kv("method", method_name(rep.method));
    print_kv("mean", fmt15(rep.mean));
    print_kv("variance", fmt15(rep.variance));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyRow {
  EnsembleSpec spec;
  double mean = 0.0;
  double variance = 0.0;
  double var_residual = 0.0;
  double mean_residual = 0.0;
  bool reliable = true;
  bool pass = false;
};

VerifyRow verify_one(const EnsembleSpec& spec, int order) {
  VerifyRow row;
  row.spec = spec;
  const double v_cf = variance_exact(spec);
  const double m_cf = mean_exact(spec);
  const SummationResult sum = variance_summation(spec);
  // The mean check carries the tighter tolerance (1e-9 vs 1e-8) but its
  // quadrature costs O(order) instead of O(order^2), so run it at twice the
  // node count of the variance check: the integrand's endpoint log
  // singularities make the error shrink like order^-4, giving ~16x margin.
  const QuadratureEstimate vq = variance_quadrature(spec, order);
  const QuadratureEstimate mq = mean_quadrature(spec, 2 * order);

  row.mean = m_cf;
  row.variance = v_cf;
  row.var_residual = std::max({std::abs(v_cf - sum.value), std::abs(v_cf - vq.value),
                               std::abs(sum.value - vq.value)});
  row.mean_residual = std::abs(m_cf - mq.value);
  row.reliable = sum.reliable;

  const double var_tol = std::max(1e-8, 1e-10 * std::abs(v_cf));
  row.pass = row.reliable && row.var_residual <= var_tol && row.mean_residual <= 1e-9;
  return row;
}

int cmd_verify(const RunConfig& rc, int max_n) {
  std::vector<EnsembleSpec> specs;
  if (rc.ens_case == "A" || rc.ens_case == "both")
    for (int m = 1; m <= max_n; ++m)
      for (int n = m; n <= max_n; ++n) specs.push_back(EnsembleSpec::case_a(m, n));
  if (rc.ens_case == "B" || rc.ens_case == "both")
    for (int m = 1; m <= max_n; ++m)
      for (int p = m; p <= max_n; ++p)
        for (int n = p; n <= max_n; ++n) specs.push_back(EnsembleSpec::case_b(m, n, p));

  // Specs are independent; evaluate in parallel, merge by index.
  std::vector<VerifyRow> rows(specs.size());
  const int workers = std::min<int>(sampler_worker_count(), static_cast<int>(specs.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) rows[i] = verify_one(specs[i], rc.order);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = static_cast<std::size_t>(t); i < specs.size();
             i += static_cast<std::size_t>(workers))
          rows[i] = verify_one(specs[i], rc.order);
      });
    for (auto& th : pool) th.join();
  }

  int failures = 0;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].pass) ++failures;
    if (rows[i].var_residual > rows[worst].var_residual) worst = i;
  }

  if (rc.output == "json") {
    ordered_json res;
    res["n_specs"] = rows.size();
    res["n_failures"] = failures;
    res["worst_spec"] = rows.empty() ? "" : rows[worst].spec.label();
    res["worst_var_residual"] = rows.empty() ? 0.0 : rows[worst].var_residual;
    res["specs"] = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json j;
      j["spec"] = spec_json(row.spec);
      j["mean"] = row.mean;
      j["variance"] = row.variance;
      j["var_residual"] = row.var_residual;
      j["mean_residual"] = row.mean_residual;
      j["pass"] = row.pass;
      res["specs"].push_back(std::move(j));
    }
    emit_json(config_json(rc), res);
  } else if (rc.output == "csv") {
    emit_csv_row(std::cout, {"case", "m", "n", "p", "mean", "variance", "var_residual",
                             "mean_residual", "pass"});
    for (const auto& row : rows)
      emit_csv_row(std::cout,
                   {row.spec.kind == EnsembleCase::A ? "A" : "B", std::to_string(row.spec.m),
                    std::to_string(row.spec.n), p_cell(row.spec), fmt17(row.mean),
                    fmt17(row.variance), fmt17(row.var_residual), fmt17(row.mean_residual),
                    row.pass ? "true" : "false"});
  } else {
    std::printf("%-16s %-22s %-22s %-12s %-12s %s\n", "spec", "mean", "variance",
                "var_resid", "mean_resid", "status");
    for (const auto& row : rows)
      std::printf("%-16s %-22s %-22s %-12.3g %-12.3g %s\n", row.spec.label().c_str(),
                  fmt15(row.mean).c_str(), fmt15(row.variance).c_str(), row.var_residual,
                  row.mean_residual, row.pass ? "pass" : "FAIL");
    if (failures == 0) {
      std::printf("all %zu specs agree across closed form, summation, and quadrature\n",
                  rows.size());
    } else {
      std::printf("%d of %zu specs FAILED; worst %s (var residual %.3g)\n", failures,
                  rows.size(), rows[worst].spec.label().c_str(), rows[worst].var_residual);
    }
  }
  return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

int cmd_identities(const RunConfig& rc, const std::string& ids_arg, int n_cases, double tol) {
  std::vector<IdentityId> ids;
  if (ids_arg.empty()) {
    const auto all = all_identities();
    ids.assign(all.begin(), all.end());
  } else {
    std::stringstream ss(ids_arg);
    std::string token;
    while (std::getline(ss, token, ',')) {
      const auto id = identity_from_name(token);
      if (!id) throw std::domain_error("unknown identity name: " + token);
      ids.push_back(*id);
    }
  }

  const SweepReport rep = sweep(ids, n_cases, rc.seed, tol, sampler_worker_count());

  if (rc.output == "json") {
    ordered_json res;
    res["tolerance"] = rep.tolerance;
    res["total_failures"] = rep.total_failures;
    res["unresolved_failures"] = rep.unresolved_failures;
    res["lines"] = ordered_json::array();
    for (const auto& line : rep.lines) {
      ordered_json j;
      j["id"] = identity_name(line.id);
      j["cases"] = line.n_cases;
      j["failures"] = line.n_failures;
      j["max_residual"] = line.max_residual;
      j["worst_condition"] = line.worst_condition;
      j["unresolved"] = line.unresolved;
      res["lines"].push_back(std::move(j));
    }
    emit_json(config_json(rc), res);
  } else if (rc.output == "csv") {
    emit_csv_row(std::cout,
                 {"id", "cases", "failures", "max_residual", "worst_condition", "unresolved"});
    for (const auto& line : rep.lines)
      emit_csv_row(std::cout, {identity_name(line.id), std::to_string(line.n_cases),
                               std::to_string(line.n_failures), fmt17(line.max_residual),
                               fmt17(line.worst_condition), line.unresolved ? "true" : "false"});
  } else {
    std::printf("%-18s %-7s %-9s %-14s %s\n", "identity", "cases", "failures",
                "max_residual", "status");
    for (const auto& line : rep.lines)
      std::printf("%-18s %-7d %-9d %-14.3g %s\n", identity_name(line.id), line.n_cases,
                  line.n_failures, line.max_residual,
                  line.unresolved ? "unresolved" : (line.n_failures == 0 ? "pass" : "FAIL"));
    std::printf("resolved failures: %d; unresolved-entry failures: %d\n", rep.total_failures,
                rep.unresolved_failures);
  }
  return rep.total_failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

int cmd_simulate(const RunConfig& rc, const std::string& sampler, long long burn_in,
                 long long thinning, const std::string& batch_out) {
  const EnsembleSpec spec = make_spec(rc.ens_case, rc.m, rc.n, rc.p);
  const auto n = static_cast<std::size_t>(rc.n_samples);

  SampleBatch batch;
  if (sampler == "mcmc") {
    McmcTuning tuning;
    tuning.burn_in = burn_in;
    tuning.thinning = thinning;
    batch = sample_mcmc(spec, n, rc.seed, tuning);
  } else if (sampler == "matrix") {
    if (spec.kind != EnsembleCase::B)
      throw std::domain_error("--sampler matrix requires case B; case A offers only "
                              "--sampler mcmc or the experimental cross-check");
    batch = sample_matrix_caseB(spec, n, rc.seed);
  } else {  // experimental
    if (spec.kind != EnsembleCase::A)
      throw std::domain_error("--sampler experimental is the case-A cross-check; "
                              "use --sampler matrix for case B");
    batch = sample_matrix_caseA_experimental(spec, n, rc.seed);
  }

  if (!batch_out.empty()) {
    std::ofstream os(batch_out);
    if (!os) throw std::runtime_error("cannot open batch output file: " + batch_out);
    write_batch_csv(batch, os);
  }

  const EstimateReport est = estimate(batch);
  const MomentReport exact = moments_closed_form(spec);

  if (rc.output == "json") {
    ordered_json res;
    res["spec"] = spec_json(spec);
    res["sampler"] = sampler;
    res["n_samples"] = est.n_samples;
    res["mean"] = est.report.mean;
    res["mean_se"] = est.mean_se;
    res["variance"] = est.report.variance;
    res["variance_se"] = est.variance_se;
    res["exact_mean"] = exact.mean;
    res["exact_variance"] = exact.variance;
    res["ks_distance"] = est.gaussian.ks_distance;
    res["ks_p_value"] = est.gaussian.ks_p_value;
    res["skewness"] = est.gaussian.sample_skewness;
    if (batch.mcmc_diag) {
      res["acceptance_rate"] = batch.mcmc_diag->acceptance_rate;
      res["burn_in"] = batch.mcmc_diag->burn_in;
      res["thinning"] = batch.mcmc_diag->thinning;
    }
    emit_json(config_json(rc), res);
  } else if (rc.output == "csv") {
    std::vector<std::string> header{"case", "m",           "n",
                                    "p",    "sampler",     "n_samples",
                                    "mean", "mean_se",     "variance",
                                    "variance_se", "exact_mean", "exact_variance",
                                    "ks_distance", "ks_p_value", "skewness"};
    std::vector<std::string> row{spec.kind == EnsembleCase::A ? "A" : "B",
                                 std::to_string(spec.m),
                                 std::to_string(spec.n),
                                 p_cell(spec),
                                 sampler,
                                 std::to_string(est.n_samples),
                                 fmt17(est.report.mean),
                                 fmt17(est.mean_se),
                                 fmt17(est.report.variance),
                                 fmt17(est.variance_se),
                                 fmt17(exact.mean),
                                 fmt17(exact.variance),
                                 fmt17(est.gaussian.ks_distance),
                                 fmt17(est.gaussian.ks_p_value),
                                 fmt17(est.gaussian.sample_skewness)};
    if (batch.mcmc_diag) {
      header.emplace_back("acceptance_rate");
      row.push_back(fmt17(batch.mcmc_diag->acceptance_rate));
      header.emplace_back("burn_in");
      row.push_back(std::to_string(batch.mcmc_diag->burn_in));
      header.emplace_back("thinning");
      row.push_back(std::to_string(batch.mcmc_diag->thinning));
    }
    emit_csv_row(std::cout, header);
    emit_csv_row(std::cout, row);
  } else {
    print_kv("spec", spec.label());
    print_kv("sampler", sampler);
    print_kv("n_samples", std::to_string(est.n_samples));
    print_kv("mean", fmt15(est.report.mean));
    print_kv("mean_se", fmt15(est.mean_se));
    print_kv("variance", fmt15(est.report.variance));
    print_kv("variance_se", fmt15(est.variance_se));
    print_kv("exact_mean", fmt15(exact.mean));
    print_kv("exact_variance", fmt15(exact.variance));
    print_kv("ks_distance", fmt15(est.gaussian.ks_distance));
    print_kv("ks_p_value", fmt15(est.gaussian.ks_p_value));
    print_kv("skewness", fmt15(est.gaussian.sample_skewness));
    if (batch.mcmc_diag) {
      print_kv("acceptance_rate", fmt15(batch.mcmc_diag->acceptance_rate));
      print_kv("burn_in", std::to_string(batch.mcmc_diag->burn_in));
      print_kv("thinning", std::to_string(batch.mcmc_diag->thinning));
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// asymptotic
// ---------------------------------------------------------------------------

int cmd_asymptotic(const RunConfig& rc, double f1, double f2, const std::string& order_name,
                   int total_dim) {
  AsymptoticPoint point;
  point.f1 = f1;
  point.f2 = f2;
  point.order =
      order_name == "corrected" ? AsymptoticOrder::corrected : AsymptoticOrder::leading;
  point.total_dim = total_dim;
  const EnsembleCase kind = rc.ens_case == "A" ? EnsembleCase::A : EnsembleCase::B;
  const double value = variance_asymptotic(point, kind);

  if (rc.output == "json") {
    ordered_json res;
    res["f1"] = f1;
    if (kind == EnsembleCase::B) res["f2"] = f2;
    res["order"] = order_name;
    if (point.order == AsymptoticOrder::corrected) res["total_dim"] = total_dim;
    res["variance"] = value;
    emit_json(config_json(rc), res);
  } else if (rc.output == "csv") {
    emit_csv_row(std::cout, {"case", "f1", "f2", "order", "total_dim", "variance"});
    emit_csv_row(std::cout, {rc.ens_case, fmt17(f1),
                             kind == EnsembleCase::B ? fmt17(f2) : std::string(), order_name,
                             point.order == AsymptoticOrder::corrected
                                 ? std::to_string(total_dim)
                                 : std::string(),
                             fmt17(value)});
  } else {
    print_kv("case", rc.ens_case);
    print_kv("f1", fmt15(f1));
    if (kind == EnsembleCase::B) print_kv("f2", fmt15(f2));
    print_kv("order", order_name);
    if (point.order == AsymptoticOrder::corrected)
      print_kv("total_dim", std::to_string(total_dim));
    print_kv("variance", fmt15(value));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// density
// ---------------------------------------------------------------------------

int cmd_density(const RunConfig& rc, int points) {
  if (points < 2) throw std::domain_error("--points must be at least 2");
  const EnsembleSpec spec = make_spec(rc.ens_case, rc.m, rc.n, rc.p);
  const KernelContext ctx = make_kernel_context(spec);

  const double lo = spec.support_lo();
  const double hi = spec.support_hi();
  std::vector<std::pair<double, double>> rows;
  rows.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    rows.emplace_back(x, density_one_point(ctx, x));
  }

  if (rc.output == "json") {
    ordered_json res;
    res["spec"] = spec_json(spec);
    res["rows"] = ordered_json::array();
    for (const auto& [x, d] : rows) {
      ordered_json j;
      j["x"] = x;
      j["density"] = d;
      res["rows"].push_back(std::move(j));
    }
    emit_json(config_json(rc), res);
  } else if (rc.output == "csv") {
    emit_csv_row(std::cout, {"x", "density"});
    for (const auto& [x, d] : rows) emit_csv_row(std::cout, {fmt17(x), fmt17(d)});
  } else {
    std::printf("%-22s %s\n", "x", "density");
    for (const auto& [x, d] : rows)
      std::printf("%-22s %s\n", fmt15(x).c_str(), fmt15(d).c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// figure
// ---------------------------------------------------------------------------

SampleBatch figure_batch(const EnsembleSpec& spec, std::size_t n, std::uint64_t seed) {
  return spec.kind == EnsembleCase::B ? sample_matrix_caseB(spec, n, seed)
                                      : sample_mcmc(spec, n, seed);
}

// Variance vs subsystem dimension at fixed ratios: exact curve, its
// fixed-fraction limit, and a Monte Carlo estimate with standard error.
int cmd_figure_variance(std::ostream& os, const RunConfig& rc, int n_ratio, int p_ratio,
                        int m_min, int m_max) {
  emit_csv_row(os, {"x", "exact", "asymptotic", "mc_estimate", "mc_stderr"});
  for (int m = m_min; m <= m_max; ++m) {
    const int n = n_ratio * m;
    const EnsembleSpec spec = rc.ens_case == "A" ? EnsembleSpec::case_a(m, n)
                                                 : EnsembleSpec::case_b(m, n, p_ratio * m);
    AsymptoticPoint point;
    point.f1 = static_cast<double>(m) / (m + n);
    point.f2 = rc.ens_case == "A" ? 0.0 : static_cast<double>(p_ratio * m) / (m + n);
    const double asym = variance_asymptotic(point, spec.kind);

    const auto batch =
        figure_batch(spec, static_cast<std::size_t>(rc.n_samples), rc.seed + m);
    const EstimateReport est = estimate(batch);
    emit_csv_row(os, {std::to_string(m), fmt17(variance_exact(spec)), fmt17(asym),
                      fmt17(est.report.variance), fmt17(est.variance_se)});
  }
  return 0;
}

// Histogram of standardized entropies against the standard normal density.
int cmd_figure_histogram(std::ostream& os, const RunConfig& rc, int bins) {
  if (bins < 1) throw std::domain_error("--bins must be positive");
  const EnsembleSpec spec = make_spec(rc.ens_case, rc.m, rc.n, rc.p);
  const auto batch = figure_batch(spec, static_cast<std::size_t>(rc.n_samples), rc.seed);
  const EstimateReport est = estimate(batch);

  const double lo = -4.0, hi = 4.0;
  const double width = (hi - lo) / bins;
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double z : est.gaussian.standardized) {
    if (z < lo || z >= hi) continue;
    counts[static_cast<std::size_t>((z - lo) / width)] += 1;
  }
  const double norm =
      1.0 / (static_cast<double>(est.gaussian.standardized.size()) * width);

  emit_csv_row(os, {"bin_center", "empirical_density", "gaussian_density"});
  for (int i = 0; i < bins; ++i) {
    const double center = lo + (i + 0.5) * width;
    const double emp = static_cast<double>(counts[static_cast<std::size_t>(i)]) * norm;
    const double gauss = 0.3989422804014326779 * std::exp(-0.5 * center * center);
    emit_csv_row(os, {fmt17(center), fmt17(emp), fmt17(gauss)});
  }
  return 0;
}

int cmd_figure(const RunConfig& rc, int figure, int n_ratio, int p_ratio, int m_min,
               int m_max, int bins, const std::string& out_path) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    os = &file;
  }
  if (figure == 1) return cmd_figure_variance(*os, rc, n_ratio, p_ratio, m_min, m_max);
  return cmd_figure_histogram(*os, rc, bins);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement-entropy statistics of fermionic Gaussian ensembles"};
  app.require_subcommand(1);

  RunConfig rc;

  // --- exact ---------------------------------------------------------------
  auto* exact = app.add_subcommand("exact", "Closed-form mean and variance");
  std::string exact_case;
  int exact_m = 0, exact_n = 0, exact_p = -1;
  std::string exact_out = "table";
  exact->add_option("--case", exact_case, "Ensemble case")
      ->required()
      ->check(CLI::IsMember({"A", "B"}));
  exact->add_option("-m", exact_m, "Subsystem dimension")->required();
  exact->add_option("-n", exact_n, "Complement dimension")->required();
  exact->add_option("-p", exact_p, "Particle number (case B)");
  exact->add_option("--output", exact_out, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  // --- verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "Triple agreement: closed form vs summation vs quadrature");
  std::string verify_case = "both";
  int verify_max_n = 6, verify_order = 300;
  std::string verify_out = "table";
  verify->add_option("--case", verify_case, "Ensemble case or both")
      ->check(CLI::IsMember({"A", "B", "both"}));
  verify->add_option("--max-n", verify_max_n, "Largest total dimension n")
      ->check(CLI::PositiveNumber);
  verify->add_option("--order", verify_order,
                     "Quadrature order for the variance check "
                     "(the mean check uses twice this order)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--output", verify_out, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  // --- identities ------------------------------------------------------------
  auto* idents = app.add_subcommand("identities", "Finite-sum identity sweep");
  std::string idents_ids, idents_out = "table";
  int idents_cases = 25;
  double idents_tol = 1e-8;
  std::uint64_t idents_seed = 20260816;
  idents->add_option("--ids", idents_ids, "Comma-separated identity names (default all)");
  idents->add_option("--cases", idents_cases, "Cases per identity")
      ->check(CLI::PositiveNumber);
  idents->add_option("--seed", idents_seed, "Sweep seed");
  idents->add_option("--tol", idents_tol, "Residual tolerance");
  idents->add_option("--output", idents_out, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  // --- simulate ----------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Monte Carlo sampling and estimation");
  std::string sim_case, sim_sampler = "mcmc", sim_out = "table", sim_batch_out;
  int sim_m = 0, sim_n = 0, sim_p = -1;
  long long sim_samples = 10000, sim_burn_in = 0, sim_thinning = 0;
  std::uint64_t sim_seed = 1;
  sim->add_option("--case", sim_case, "Ensemble case")
      ->required()
      ->check(CLI::IsMember({"A", "B"}));
  sim->add_option("-m", sim_m, "Subsystem dimension")->required();
  sim->add_option("-n", sim_n, "Complement dimension")->required();
  sim->add_option("-p", sim_p, "Particle number (case B)");
  sim->add_option("--samples", sim_samples, "Number of samples")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "Sampler seed");
  sim->add_option("--sampler", sim_sampler, "mcmc, matrix (case B), or experimental (case A)")
      ->check(CLI::IsMember({"mcmc", "matrix", "experimental"}));
  sim->add_option("--burn-in", sim_burn_in, "MCMC burn-in proposals (0 = default)");
  sim->add_option("--thinning", sim_thinning, "MCMC proposals between samples (0 = default)");
  sim->add_option("--batch-out", sim_batch_out, "Write the sample batch CSV to this file");
  sim->add_option("--output", sim_out, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  // --- asymptotic -------------------------------------------------------------
  auto* asym = app.add_subcommand("asymptotic", "Fixed-fraction asymptotic variance");
  std::string asym_case, asym_order = "leading", asym_out = "table";
  double asym_f1 = 0.0, asym_f2 = 0.0;
  int asym_total_dim = 0;
  asym->add_option("--case", asym_case, "Ensemble case")
      ->required()
      ->check(CLI::IsMember({"A", "B"}));
  asym->add_option("--f1", asym_f1, "Subsystem fraction m/(m+n)")->required();
  asym->add_option("--f2", asym_f2, "Particle fraction p/(m+n) (case B)");
  asym->add_option("--order", asym_order, "Expansion order")
      ->check(CLI::IsMember({"leading", "corrected"}));
  asym->add_option("--total-dim", asym_total_dim, "m+n (corrected order)");
  asym->add_option("--output", asym_out, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  // --- density -----------------------------------------------------------------
  auto* dens = app.add_subcommand("density", "Kernel one-point eigenvalue density");
  std::string dens_case, dens_out = "table";
  int dens_m = 0, dens_n = 0, dens_p = -1, dens_points = 201;
  dens->add_option("--case", dens_case, "Ensemble case")
      ->required()
      ->check(CLI::IsMember({"A", "B"}));
  dens->add_option("-m", dens_m, "Subsystem dimension")->required();
  dens->add_option("-n", dens_n, "Complement dimension")->required();
  dens->add_option("-p", dens_p, "Particle number (case B)");
  dens->add_option("--points", dens_points, "Grid points across the support");
  dens->add_option("--output", dens_out, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  // --- figure ------------------------------------------------------------------
  auto* fig = app.add_subcommand("figure", "Figure-data CSV export");
  std::string fig_case, fig_out_path;
  int fig_num = 0, fig_m = 0, fig_n = 0, fig_p = -1;
  int fig_n_ratio = 3, fig_p_ratio = 2, fig_m_min = 2, fig_m_max = 20, fig_bins = 41;
  long long fig_samples = 0;
  std::uint64_t fig_seed = 1;
  fig->add_option("--figure", fig_num, "1 variance-vs-dimension, 2/3 histograms")
      ->required()
      ->check(CLI::Range(1, 3));
  fig->add_option("--case", fig_case, "Ensemble case (defaults: 1,2 -> A; 3 -> B)")
      ->check(CLI::IsMember({"A", "B"}));
  fig->add_option("-m", fig_m, "Subsystem dimension (figures 2-3)");
  fig->add_option("-n", fig_n, "Complement dimension (figures 2-3)");
  fig->add_option("-p", fig_p, "Particle number (case B, figures 2-3)");
  fig->add_option("--n-ratio", fig_n_ratio, "n = ratio * m (figure 1)");
  fig->add_option("--p-ratio", fig_p_ratio, "p = ratio * m (figure 1, case B)");
  fig->add_option("--m-min", fig_m_min, "Smallest m (figure 1)");
  fig->add_option("--m-max", fig_m_max, "Largest m (figure 1)");
  fig->add_option("--bins", fig_bins, "Histogram bins (figures 2-3)");
  fig->add_option("--samples", fig_samples, "Monte Carlo samples per point");
  fig->add_option("--seed", fig_seed, "Sampler seed");
  fig->add_option("--out", fig_out_path, "Write CSV to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (exact->parsed()) {
      rc.command = "exact";
      rc.ens_case = exact_case;
      rc.m = exact_m;
      rc.n = exact_n;
      rc.p = exact_p;
      rc.output = exact_out;
      return cmd_exact(rc);
    }
    if (verify->parsed()) {
      rc.command = "verify";
      rc.ens_case = verify_case;
      rc.output = verify_out;
      rc.order = verify_order;
      rc.extras["max_n"] = verify_max_n;
      return cmd_verify(rc, verify_max_n);
    }
    if (idents->parsed()) {
      rc.command = "identities";
      rc.output = idents_out;
      rc.seed = idents_seed;
      rc.extras["cases_per_id"] = idents_cases;
      if (!idents_ids.empty()) rc.extras["ids"] = idents_ids;
      return cmd_identities(rc, idents_ids, idents_cases, idents_tol);
    }
    if (sim->parsed()) {
      rc.command = "simulate";
      rc.ens_case = sim_case;
      rc.m = sim_m;
      rc.n = sim_n;
      rc.p = sim_p;
      rc.output = sim_out;
      rc.seed = sim_seed;
      rc.n_samples = sim_samples;
      rc.extras["sampler"] = sim_sampler;
      return cmd_simulate(rc, sim_sampler, sim_burn_in, sim_thinning, sim_batch_out);
    }
    if (asym->parsed()) {
      rc.command = "asymptotic";
      rc.ens_case = asym_case;
      rc.output = asym_out;
      return cmd_asymptotic(rc, asym_f1, asym_f2, asym_order, asym_total_dim);
    }
    if (dens->parsed()) {
      rc.command = "density";
      rc.ens_case = dens_case;
      rc.m = dens_m;
      rc.n = dens_n;
      rc.p = dens_p;
      rc.output = dens_out;
      return cmd_density(rc, dens_points);
    }
    if (fig->parsed()) {
      rc.command = "figure";
      if (fig_case.empty()) fig_case = fig_num == 3 ? "B" : "A";
      rc.ens_case = fig_case;
      if (fig_num >= 2) {
        rc.m = fig_m > 0 ? fig_m : 2;
        rc.n = fig_n > 0 ? fig_n : (fig_case == "B" ? 6 : 4);
        rc.p = fig_p > 0 ? fig_p : (fig_case == "B" ? 4 : -1);
      }
      rc.seed = fig_seed;
      rc.n_samples = fig_samples > 0 ? fig_samples : (fig_num == 1 ? 1000 : 20000);
      rc.extras["figure"] = fig_num;
      return cmd_figure(rc, fig_num, fig_n_ratio, fig_p_ratio, fig_m_min, fig_m_max,
                        fig_bins, fig_out_path);
    }
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

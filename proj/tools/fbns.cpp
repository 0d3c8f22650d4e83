// Batch front-end: loads a JSON experiment config (or a previous run
// manifest), runs the named experiment, and writes a reproducible artifact
// set: manifest.json, summary.json, CSV tables, optional field snapshots.
// Exit codes: 0 pass, 1 usage/config error, 2 verification failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "fbns/config.hpp"
#include "fbns/convolution.hpp"
#include "fbns/energy.hpp"
#include "fbns/fbm.hpp"
#include "fbns/field.hpp"
#include "fbns/io.hpp"
#include "fbns/schema.hpp"
#include "fbns/series.hpp"
#include "fbns/sha256.hpp"
#include "fbns/solver.hpp"
#include "fbns/version.hpp"
#include "schema_data.hpp"

namespace fs = std::filesystem;
using fbns::json;

namespace {

struct RunOutcome {
  bool pass = true;
  std::vector<std::string> reasons;
  std::string noise_hash;  // empty when no noise path is involved
  json summary;
  // One row of the sweep merge table (identical keys across seeds).
  std::vector<std::pair<std::string, double>> sweep_row;
};

// Static work partition; results land in caller-indexed slots, so output is
// independent of the thread count and of scheduling order.
template <typename Fn>
void parallel_for(int n_jobs, int n_threads, Fn&& fn) {
  n_threads = std::max(1, std::min(n_threads, n_jobs));
  if (n_threads == 1) {
    for (int i = 0; i < n_jobs; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(n_threads);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i; (i = next.fetch_add(1)) < n_jobs;) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string file_sha256(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return fbns::sha256_hex(bytes);
}

json admissibility_json(const fbns::AdmissibilityReport& r) {
  return {{"d", r.d},
          {"p", r.p},
          {"q", r.q},
          {"hurst", r.hurst},
          {"lhs", r.lhs},
          {"margin", r.margin},
          {"admissible", r.admissible},
          {"void_for_all_hurst", r.void_for_all_hurst}};
}

// ---------------------------------------------------------------------------
// simulate

RunOutcome cmd_simulate(const fbns::ExperimentConfig& cfg,
                        const fs::path& dir) {
  const fbns::SolveConfig& sc = cfg.solve;
  RunOutcome out;

  fbns::LocalSolution sol = fbns::solve_local(sc);
  const fbns::SolveDiagnostics& diag = sol.diagnostics;

  const auto path = fbns::CylindricalPath::sample(
      sc.hurst, sol.grid, sol.model->n_modes(), sc.seed, sc.generator);
  fbns::save_path(dir / "noise.path", path);
  out.noise_hash = fbns::path_content_hash(path);

  fbns::CsvTable traj;
  traj.header = {"t", "v_lp", "z_lp", "u_lp", "v_l2", "grad_v_l2"};
  for (int n = 0; n < sol.grid.points(); ++n) {
    traj.rows.push_back({sol.grid.time(n), sol.v[n].lp_norm(sc.p_exponent),
                         sol.z[n].lp_norm(sc.p_exponent),
                         sol.u[n].lp_norm(sc.p_exponent), sol.v[n].l2_norm(),
                         std::sqrt(sol.v[n].grad_sq())});
  }
  fbns::write_csv(dir / "trajectory.csv", traj);

  fbns::CsvTable gaps;
  gaps.header = {"iteration", "gap_lp"};
  for (std::size_t i = 0; i < diag.iteration_gaps.size(); ++i) {
    gaps.rows.push_back(
        {static_cast<double>(i + 1), diag.iteration_gaps[i]});
  }
  fbns::write_csv(dir / "iterations.csv", gaps);

  const fbns::NoiseOperator op{sc.q, sc.phi_scale};
  const fbns::ConvolutionTrajectory ztraj =
      fbns::convolve(path, sol.model, op, sc.quadrature_order);
  const int j0 = std::max(2, sol.model->n_modes() / 16);
  const fbns::RegularityProbe reg = fbns::regularity_probe(ztraj, 0.5, j0);
  fbns::CsvTable regc;
  regc.header = {"modes", "sup_h_alpha"};
  for (std::size_t i = 0; i < reg.truncations.size(); ++i) {
    regc.rows.push_back(
        {static_cast<double>(reg.truncations[i]), reg.curve[i]});
  }
  fbns::write_csv(dir / "regularity.csv", regc);
  const fbns::HolderProbe holder = fbns::holder_probe(ztraj, 0.5);

  fbns::save_field(dir / "u_final.fbns", sol.u.back());
  fbns::save_field(dir / "v_final.fbns", sol.v.back());
  fbns::save_field(dir / "z_final.fbns", sol.z.back());
  if (cfg.snapshot_stride > 0) {
    fs::create_directories(dir / "snapshots");
    char name[32];
    for (int n = 0; n < sol.grid.points(); n += cfg.snapshot_stride) {
      std::snprintf(name, sizeof(name), "u-%06d.fbns", n);
      fbns::save_field(dir / "snapshots" / name, sol.u[n]);
    }
  }

  out.summary = {
      {"k0", diag.k0},
      {"tau", diag.tau},
      {"c0", diag.c0},
      {"m_used", diag.m_used},
      {"iterations", diag.iteration_gaps.size()},
      {"iteration_gaps", diag.iteration_gaps},
      {"converged", diag.converged},
      {"sup_v", diag.sup_v},
      {"uniform_bound_ok", diag.uniform_bound_ok},
      {"admissibility", admissibility_json(diag.admissibility)},
      {"regularity",
       {{"fitted_ratio", reg.fitted_ratio},
        {"convergent", reg.convergent},
        {"sup_h_alpha", reg.sup_norm}}},
      {"holder_exponent", holder.exponent},
      {"grid", {{"t_final", sol.grid.t_final}, {"n_steps", sol.grid.n_steps}}},
  };
  if (!diag.converged) {
    out.pass = false;
    out.reasons.push_back("picard-no-converge");
  }
  if (!diag.uniform_bound_ok) {
    out.pass = false;
    out.reasons.push_back("uniform-bound-violated");
  }
  out.sweep_row = {{"k0", diag.k0},
                   {"tau", diag.tau},
                   {"c0", diag.c0},
                   {"iterations",
                    static_cast<double>(diag.iteration_gaps.size())},
                   {"sup_v", diag.sup_v}};
  if (!cfg.quiet) {
    std::cout << "simulate: seed=" << sc.seed << " tau=" << diag.tau
              << " iterations=" << diag.iteration_gaps.size()
              << (diag.converged ? " converged" : " NOT CONVERGED") << "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// verify-hs

RunOutcome cmd_verify_hs(const fbns::ExperimentConfig& cfg,
                         const fs::path& dir) {
  RunOutcome out;
  auto queries = cfg.verify_hs.queries;
  if (queries.empty()) {
    queries = {{2, 0.0},  {2, 1.0},  {3, 1.5},  {2, -1.0},
               {2, -0.5}, {3, -1.0}, {3, -0.5}};
  }
  json items = json::array();
  fbns::CsvTable regimes;
  regimes.header = {"d", "q", "sup_ratio", "slope_last_decade", "pass"};
  for (const auto& query : queries) {
    const fbns::RegimeReport rep = fbns::verify_regime(
        query.d, query.q, cfg.verify_hs.t_min, cfg.verify_hs.t_max,
        cfg.verify_hs.points_per_decade, cfg.verify_hs.slope_floor);
    bool qpass = rep.pass;
    // q = 0, d = 2 has the closed-form small-t limit t*s_0(t) -> 1/2.
    if (query.d == 2 && query.q == 0.0) {
      qpass = qpass && rep.sup_ratio >= 0.49 && rep.sup_ratio <= 0.51;
    }
    fbns::CsvTable table;
    table.header = {"t", "partial_sum", "tail_bound", "bound_shape_value",
                    "ratio"};
    for (const auto& row : rep.rows) {
      table.rows.push_back(
          {row.t, row.partial_sum, row.tail_bound, row.shape, row.ratio});
    }
    const std::string tag = "d" + std::to_string(query.d) + "-q" +
                            fbns::format_g17(query.q);
    fbns::write_csv(dir / ("hs-" + tag + ".csv"), table);
    items.push_back({{"d", query.d},
                     {"q", query.q},
                     {"regime", rep.regime},
                     {"sup_ratio", rep.sup_ratio},
                     {"slope_last_decade", rep.slope_last_decade},
                     {"pass", qpass}});
    regimes.rows.push_back({static_cast<double>(query.d), query.q,
                            rep.sup_ratio, rep.slope_last_decade,
                            qpass ? 1.0 : 0.0});
    if (!qpass) {
      out.pass = false;
      out.reasons.push_back("regime-shape-violated:" + tag);
    }
    if (!cfg.quiet) {
      std::cout << "verify-hs: " << tag << " regime=" << rep.regime
                << " sup_ratio=" << rep.sup_ratio
                << " slope=" << rep.slope_last_decade
                << (qpass ? " pass" : " FAIL") << "\n";
    }
  }
  fbns::write_csv(dir / "regimes.csv", regimes);
  out.summary = {{"queries", items}, {"pass", out.pass}};
  return out;
}

// ---------------------------------------------------------------------------
// check-params

RunOutcome cmd_check_params(const fbns::ExperimentConfig& cfg,
                            const fs::path& dir) {
  const fbns::CheckParamsConfig& cp = cfg.check_params;
  RunOutcome out;

  fbns::CsvTable table;
  table.header = {"d",      "p",          "q",          "hurst",
                  "lhs",    "margin",     "admissible", "void_for_all_hurst"};
  json items = json::array();
  const auto add = [&](double hurst) {
    const auto r = fbns::check_admissibility(cp.d, cp.p, cp.q, hurst);
    table.rows.push_back({static_cast<double>(r.d), r.p, r.q, r.hurst, r.lhs,
                          r.margin, r.admissible ? 1.0 : 0.0,
                          r.void_for_all_hurst ? 1.0 : 0.0});
    items.push_back(admissibility_json(r));
    return r;
  };

  std::string verdict;
  if (cp.hurst) {
    const auto r = add(*cp.hurst);
    verdict = r.void_for_all_hurst ? "inadmissible for all H < 1"
              : r.admissible       ? "admissible"
                                   : "inadmissible";
  } else {
    fbns::AdmissibilityReport last;
    for (int i = 1; i <= 19; ++i) last = add(0.05 * i);
    if (last.void_for_all_hurst) {
      verdict = "inadmissible for all H < 1";
    } else if (cp.p <= static_cast<double>(cp.d)) {
      verdict = "inadmissible for all H < 1 (needs p > d)";
    } else if (last.lhs <= 0.0) {
      verdict = "admissible for all H in (0, 1)";
    } else {
      verdict = "admissible iff H > " + fbns::format_g17(last.lhs);
    }
  }
  fbns::write_csv(dir / "admissibility.csv", table);
  out.summary = {{"d", cp.d},
                 {"p", cp.p},
                 {"q", cp.q},
                 {"verdict", verdict},
                 {"rows", items}};
  if (cp.hurst) out.summary["hurst"] = *cp.hurst;
  if (!cfg.quiet) {
    std::cout << "check-params: d=" << cp.d << " p=" << cp.p << " q=" << cp.q
              << " -> " << verdict << "\n";
  }
  return out;  // a query, not a verification: always exit 0
}

// ---------------------------------------------------------------------------
// picard-study

RunOutcome cmd_picard_study(const fbns::ExperimentConfig& cfg,
                            const fs::path& dir) {
  const fbns::SolveConfig& sc = cfg.solve;
  RunOutcome out;

  fbns::LocalSolution sol = fbns::solve_local(sc);
  const fbns::SolveDiagnostics& diag = sol.diagnostics;
  const fbns::UniquenessResult uq = fbns::uniqueness_probe(sc);

  const auto path = fbns::CylindricalPath::sample(
      sc.hurst, sol.grid, sol.model->n_modes(), sc.seed, sc.generator);
  out.noise_hash = fbns::path_content_hash(path);

  const double limit = diag.c0 + 0.05;
  double max_ratio = 0.0;
  bool contraction_ok = true;
  fbns::CsvTable gaps;
  gaps.header = {"iteration", "gap_lp", "ratio"};
  const auto& g = diag.iteration_gaps;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double ratio =
        i == 0 ? 0.0 : (g[i - 1] == 0.0 ? 0.0 : g[i] / g[i - 1]);
    gaps.rows.push_back({static_cast<double>(i + 1), g[i], ratio});
    if (i > 0) {
      max_ratio = std::max(max_ratio, ratio);
      if (ratio > limit) contraction_ok = false;
    }
  }
  fbns::write_csv(dir / "gaps.csv", gaps);

  const bool deviation_ok = uq.deviation <= 10.0 * sc.picard_tol;
  out.pass = diag.converged && diag.uniform_bound_ok && contraction_ok &&
             deviation_ok;
  if (!diag.converged) out.reasons.push_back("picard-no-converge");
  if (!diag.uniform_bound_ok) out.reasons.push_back("uniform-bound-violated");
  if (!contraction_ok) out.reasons.push_back("contraction-ratio-high");
  if (!deviation_ok) out.reasons.push_back("uniqueness-deviation-high");

  out.summary = {{"k0", diag.k0},
                 {"tau", diag.tau},
                 {"c0", diag.c0},
                 {"m_used", diag.m_used},
                 {"iterations", g.size()},
                 {"iteration_gaps", g},
                 {"contraction_limit", limit},
                 {"max_gap_ratio", max_ratio},
                 {"contraction_ok", contraction_ok},
                 {"sup_v", diag.sup_v},
                 {"uniform_bound_ok", diag.uniform_bound_ok},
                 {"uniqueness_deviation", uq.deviation},
                 {"deviation_ok", deviation_ok},
                 {"pass", out.pass}};
  out.sweep_row = {{"k0", diag.k0},
                   {"tau", diag.tau},
                   {"c0", diag.c0},
                   {"iterations", static_cast<double>(g.size())},
                   {"max_gap_ratio", max_ratio},
                   {"deviation", uq.deviation}};
  if (!cfg.quiet) {
    std::cout << "picard-study: seed=" << sc.seed << " c0=" << diag.c0
              << " max_ratio=" << max_ratio
              << " deviation=" << uq.deviation
              << (out.pass ? " pass" : " FAIL") << "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// convergence-study

RunOutcome cmd_convergence_study(const fbns::ExperimentConfig& cfg,
                                 const fs::path& dir) {
  const fbns::SolveConfig& sc = cfg.solve;
  RunOutcome out;
  const fbns::CrossValidation cv =
      fbns::cross_validate(sc, cfg.convergence.doublings);

  const auto model = fbns::StokesModel::fourier(sc.dimension, sc.k_max, sc.nu);
  const fbns::TimeGrid finest{sc.t_final,
                              sc.n_steps << cfg.convergence.doublings};
  const auto path = fbns::CylindricalPath::sample(
      sc.hurst, finest, model->n_modes(), sc.seed, sc.generator);
  out.noise_hash = fbns::path_content_hash(path);

  fbns::CsvTable levels;
  levels.header = {"n_steps", "tau", "difference_lp", "factor"};
  for (std::size_t i = 0; i < cv.step_counts.size(); ++i) {
    levels.rows.push_back(
        {static_cast<double>(cv.step_counts[i]), cv.tau_values[i],
         cv.differences[i], i < cv.factors.size() ? cv.factors[i] : 0.0});
  }
  fbns::write_csv(dir / "levels.csv", levels);

  double min_factor = std::numeric_limits<double>::infinity();
  for (const double f : cv.factors) min_factor = std::min(min_factor, f);
  const bool gated = cfg.convergence.require_factor > 0.0;
  const bool factors_ok =
      !gated || (std::isfinite(min_factor) &&
                 min_factor >= cfg.convergence.require_factor);
  if (!factors_ok) {
    out.pass = false;
    out.reasons.push_back("convergence-factor-low");
  }

  out.summary = {{"horizon", cv.horizon},
                 {"step_counts", cv.step_counts},
                 {"tau_values", cv.tau_values},
                 {"differences", cv.differences},
                 {"factors", cv.factors},
                 {"min_factor", cv.factors.empty() ? 0.0 : min_factor},
                 {"require_factor", cfg.convergence.require_factor},
                 {"pass", out.pass}};
  out.sweep_row = {{"min_factor", cv.factors.empty() ? 0.0 : min_factor},
                   {"finest_difference", cv.differences.back()}};
  if (!cfg.quiet) {
    std::cout << "convergence-study: levels=" << cv.step_counts.size()
              << " min_factor=" << (cv.factors.empty() ? 0.0 : min_factor)
              << (out.pass ? " pass" : " FAIL") << "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// energy-audit

double residual_l2(const fbns::EnergyLedger& ledger, double dt) {
  double sum = 0.0;
  for (const double r : ledger.residual) sum += r * r * dt;
  return std::sqrt(sum);
}

RunOutcome cmd_energy_audit(const fbns::ExperimentConfig& cfg,
                            const fs::path& dir) {
  const fbns::SolveConfig& sc = cfg.solve;
  if (sc.dimension != 2) {
    throw std::invalid_argument("energy-audit requires dimension = 2");
  }
  RunOutcome out;

  const fbns::DirectSolution ds = fbns::solve_direct(sc);
  {
    const auto path = fbns::CylindricalPath::sample(
        sc.hurst, ds.grid, ds.model->n_modes(), sc.seed, sc.generator);
    out.noise_hash = fbns::path_content_hash(path);
  }
  if (ds.blew_up) {
    out.pass = false;
    out.reasons.push_back("direct-blow-up");
    out.summary = {{"blew_up", true},
                   {"blow_step", ds.blow_step},
                   {"pass", false}};
    out.sweep_row = {{"blew_up", 1.0}, {"c_constant", 0.0},
                     {"max_residual", 0.0}};
    return out;
  }

  std::vector<fbns::SpectralField> v;
  v.reserve(ds.u.size());
  for (std::size_t n = 0; n < ds.u.size(); ++n) v.push_back(ds.u[n] - ds.z[n]);

  double ladyzhenskaya = 0.0;
  double c_constant = cfg.energy.c_constant;
  if (cfg.energy.calibrate) {
    ladyzhenskaya = fbns::calibrate_ladyzhenskaya(ds.model);
    c_constant = fbns::gronwall_constant(ladyzhenskaya);
  }
  const fbns::EnergyLedger ledger =
      fbns::energy_audit(v, ds.z, ds.grid, c_constant);

  fbns::CsvTable table;
  table.header = {"t",        "v_l2_sq", "grad_v_sq", "z_l4_fourth",
                  "envelope", "residual", "pass"};
  for (std::size_t n = 0; n < ledger.t.size(); ++n) {
    const double res =
        n < ledger.residual.size() ? ledger.residual[n] : 0.0;
    const bool point_ok =
        ledger.v_l2_sq[n] <= ledger.envelope[n] * (1.0 + 1e-12);
    table.rows.push_back({ledger.t[n], ledger.v_l2_sq[n], ledger.grad_v_sq[n],
                          ledger.z_l4_fourth[n], ledger.envelope[n], res,
                          point_ok ? 1.0 : 0.0});
  }
  fbns::write_csv(dir / "ledger.csv", table);

  // Residual consistency under step halving (first-order scheme defect).
  fbns::SolveConfig fine = sc;
  fine.n_steps *= 2;
  const fbns::DirectSolution ds2 = fbns::solve_direct(fine);
  double halving_ratio = 0.0;
  if (!ds2.blew_up) {
    std::vector<fbns::SpectralField> v2;
    v2.reserve(ds2.u.size());
    for (std::size_t n = 0; n < ds2.u.size(); ++n) {
      v2.push_back(ds2.u[n] - ds2.z[n]);
    }
    const fbns::EnergyLedger fine_ledger =
        fbns::energy_audit(v2, ds2.z, ds2.grid, c_constant);
    const double coarse = residual_l2(ledger, ds.grid.dt());
    const double finer = residual_l2(fine_ledger, ds2.grid.dt());
    halving_ratio = finer > 0.0 ? coarse / finer : 0.0;
  }

  const fbns::InterpolationReport interp =
      fbns::interpolation_norms(v, ds.grid, sc.p_exponent);

  if (!ledger.pass) {
    out.pass = false;
    out.reasons.push_back("energy-envelope-violated");
  }
  out.summary = {{"c_constant", c_constant},
                 {"ladyzhenskaya", ladyzhenskaya},
                 {"calibrated", cfg.energy.calibrate},
                 {"max_trilinear_defect", ledger.max_trilinear_defect},
                 {"envelope_pass", ledger.pass},
                 {"residual_l2", residual_l2(ledger, ds.grid.dt())},
                 {"residual_halving_ratio", halving_ratio},
                 {"interpolation",
                  {{"r", interp.r},
                   {"s", interp.s},
                   {"theta", interp.theta},
                   {"lhs", interp.lhs},
                   {"rhs", interp.rhs},
                   {"holds", interp.holds}}},
                 {"pass", out.pass}};
  out.sweep_row = {{"blew_up", 0.0},
                   {"c_constant", c_constant},
                   {"max_residual", residual_l2(ledger, ds.grid.dt())}};
  if (!cfg.quiet) {
    std::cout << "energy-audit: C=" << c_constant
              << " envelope=" << (ledger.pass ? "holds" : "VIOLATED")
              << " halving_ratio=" << halving_ratio << "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// fbm-selftest

struct CovarianceCheck {
  long long entries = 0;
  long long within = 0;
  double max_abs_z = 0.0;
};

RunOutcome cmd_fbm_selftest(const fbns::ExperimentConfig& cfg,
                            const fs::path& dir) {
  const fbns::FbmSelftestConfig& fc = cfg.fbm;
  RunOutcome out;
  const fbns::TimeGrid grid{fc.t_final, fc.n_steps};
  const int np = grid.points();
  const int first = 1;  // the path starts pinned at zero
  const std::size_t n_pairs = static_cast<std::size_t>(np - first) *
                              static_cast<std::size_t>(np - first + 1) / 2;

  fbns::CsvTable table;
  table.header = {"hurst",           "n_paths",   "entries",
                  "fraction_within", "max_abs_z", "pass"};
  json items = json::array();
  for (const double hurst : fc.hursts) {
    // Fixed 64-way partition: the merge order and chunk boundaries do not
    // depend on the thread count, so results are bit-stable under --threads.
    constexpr int kChunks = 64;
    std::vector<std::vector<double>> partial(kChunks);
    parallel_for(kChunks, cfg.threads, [&](int c) {
      const long long lo =
          static_cast<long long>(fc.n_paths) * c / kChunks;
      const long long hi =
          static_cast<long long>(fc.n_paths) * (c + 1) / kChunks;
      if (lo == hi) return;
      auto& acc = partial[c];
      acc.assign(n_pairs, 0.0);
      for (long long i = lo; i < hi; ++i) {
        const auto path = fbns::sample_fbm_path(
            hurst, grid, cfg.solve.seed, static_cast<std::uint64_t>(i),
            fc.generator);
        std::size_t idx = 0;
        for (int s = first; s < np; ++s) {
          const double xs = path[s];
          for (int t = s; t < np; ++t) acc[idx++] += xs * path[t];
        }
      }
    });
    std::vector<double> sums(n_pairs, 0.0);
    for (const auto& acc : partial) {
      if (acc.empty()) continue;
      for (std::size_t i = 0; i < n_pairs; ++i) sums[i] += acc[i];
    }

    CovarianceCheck check;
    std::size_t idx = 0;
    for (int s = first; s < np; ++s) {
      for (int t = s; t < np; ++t, ++idx) {
        const double ts = grid.time(s);
        const double tt = grid.time(t);
        const double r_st = fbns::fbm_covariance(hurst, ts, tt);
        const double r_ss = fbns::fbm_covariance(hurst, ts, ts);
        const double r_tt = fbns::fbm_covariance(hurst, tt, tt);
        // Gaussian fourth moments make the estimator variance closed-form.
        const double se =
            std::sqrt((r_ss * r_tt + r_st * r_st) / fc.n_paths);
        const double emp = sums[idx] / fc.n_paths;
        const double z = (emp - r_st) / se;
        check.entries += 1;
        check.max_abs_z = std::max(check.max_abs_z, std::abs(z));
        if (std::abs(z) <= fc.se_multiplier) check.within += 1;
      }
    }
    const double fraction =
        static_cast<double>(check.within) / check.entries;
    const bool hpass = fraction >= fc.min_pass_fraction;
    table.rows.push_back({hurst, static_cast<double>(fc.n_paths),
                          static_cast<double>(check.entries), fraction,
                          check.max_abs_z, hpass ? 1.0 : 0.0});
    items.push_back({{"hurst", hurst},
                     {"entries", check.entries},
                     {"fraction_within", fraction},
                     {"max_abs_z", check.max_abs_z},
                     {"pass", hpass}});
    if (!hpass) {
      out.pass = false;
      out.reasons.push_back("fbm-covariance-mismatch:h=" +
                            fbns::format_g17(hurst));
    }
    if (!cfg.quiet) {
      std::cout << "fbm-selftest: hurst=" << hurst
                << " fraction_within=" << fraction
                << " max|z|=" << check.max_abs_z
                << (hpass ? " pass" : " FAIL") << "\n";
    }
  }
  fbns::write_csv(dir / "covariance.csv", table);
  out.summary = {{"generator", fbns::to_string(fc.generator)},
                 {"n_paths", fc.n_paths},
                 {"n_steps", fc.n_steps},
                 {"se_multiplier", fc.se_multiplier},
                 {"hursts", items},
                 {"pass", out.pass}};
  out.sweep_row = {{"pass_all", out.pass ? 1.0 : 0.0}};
  return out;
}

// ---------------------------------------------------------------------------
// driver

RunOutcome dispatch(const fbns::ExperimentConfig& cfg, const fs::path& dir) {
  if (cfg.command == "simulate") return cmd_simulate(cfg, dir);
  if (cfg.command == "verify-hs") return cmd_verify_hs(cfg, dir);
  if (cfg.command == "check-params") return cmd_check_params(cfg, dir);
  if (cfg.command == "picard-study") return cmd_picard_study(cfg, dir);
  if (cfg.command == "convergence-study") {
    return cmd_convergence_study(cfg, dir);
  }
  if (cfg.command == "energy-audit") return cmd_energy_audit(cfg, dir);
  if (cfg.command == "fbm-selftest") return cmd_fbm_selftest(cfg, dir);
  throw std::logic_error("unhandled command " + cfg.command);
}

bool command_is_seeded(const std::string& command) {
  return command != "verify-hs" && command != "check-params";
}

RunOutcome run_sweep(const fbns::ExperimentConfig& cfg, const fs::path& dir) {
  const int n = cfg.seed_policy.n;
  const std::uint64_t base = cfg.solve.seed;
  std::vector<RunOutcome> slots(n);
  parallel_for(n, cfg.threads, [&](int i) {
    fbns::ExperimentConfig sub = cfg;
    sub.solve.seed = base + static_cast<std::uint64_t>(i);
    sub.seed_policy = {"fixed", 1};
    sub.threads = 1;
    const fs::path subdir =
        dir / ("seed-" + std::to_string(sub.solve.seed));
    fs::create_directories(subdir);
    RunOutcome oc = dispatch(sub, subdir);
    fbns::write_json_file(subdir / "summary.json", oc.summary);
    slots[i] = std::move(oc);
  });

  RunOutcome merged;
  fbns::CsvTable sweep;
  sweep.header = {"seed"};
  for (const auto& [key, value] : slots[0].sweep_row) {
    (void)value;
    sweep.header.push_back(key);
  }
  sweep.header.push_back("pass");
  json seeds = json::array();
  int n_pass = 0;
  for (int i = 0; i < n; ++i) {
    const RunOutcome& oc = slots[i];
    const std::uint64_t seed = base + static_cast<std::uint64_t>(i);
    std::vector<double> row{static_cast<double>(seed)};
    for (const auto& [key, value] : oc.sweep_row) {
      (void)key;
      row.push_back(value);
    }
    row.push_back(oc.pass ? 1.0 : 0.0);
    sweep.rows.push_back(row);
    seeds.push_back({{"seed", seed}, {"pass", oc.pass}});
    if (oc.pass) {
      n_pass += 1;
    } else {
      merged.pass = false;
      for (const auto& reason : oc.reasons) {
        merged.reasons.push_back("seed-" + std::to_string(seed) + ":" +
                                 reason);
      }
    }
  }
  fbns::write_csv(dir / "sweep.csv", sweep);
  merged.summary = {{"seeds", seeds},
                    {"n_seeds", n},
                    {"n_pass", n_pass},
                    {"pass", merged.pass}};
  return merged;
}

int run_command(fbns::ExperimentConfig cfg) {
  const fs::path outdir = cfg.output_dir.empty()
                              ? fs::path("out-" + cfg.command)
                              : fs::path(cfg.output_dir);
  cfg.output_dir = outdir.string();  // manifests are self-contained
  fs::create_directories(outdir);

  const bool sweep = cfg.seed_policy.mode == "sweep" &&
                     cfg.seed_policy.n > 1 && command_is_seeded(cfg.command);
  RunOutcome outcome = sweep ? run_sweep(cfg, outdir) : dispatch(cfg, outdir);
  fbns::write_json_file(outdir / "summary.json", outcome.summary);

  json manifest;
  manifest["format"] = "run-manifest";
  manifest["schema_version"] = 1;
  manifest["command"] = cfg.command;
  manifest["code_version"] = fbns::kVersion;
  manifest["config"] = fbns::experiment_config_to_json(cfg);
  if (!outcome.noise_hash.empty()) manifest["noise_hash"] = outcome.noise_hash;
  manifest["status"] = outcome.pass ? "pass" : "fail";
  manifest["reason_codes"] = outcome.reasons;
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(outdir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), outdir);
    if (rel == "manifest.json") continue;
    files.push_back(rel);
  }
  std::sort(files.begin(), files.end());
  json outputs = json::array();
  for (const auto& rel : files) {
    outputs.push_back({{"file", rel.generic_string()},
                       {"sha256", file_sha256(outdir / rel)}});
  }
  manifest["outputs"] = outputs;
  fbns::write_json_file(outdir / "manifest.json", manifest);

  if (!cfg.quiet) {
    std::cout << "artifacts: " << outdir.string() << "\n";
    if (outcome.pass) {
      std::cout << "status: pass\n";
    } else {
      std::cout << "status: FAIL";
      for (const auto& reason : outcome.reasons) std::cout << " " << reason;
      std::cout << "\n";
    }
  }
  return outcome.pass ? 0 : 2;
}

int validate_against(const json& value, const char* schema_text,
                     const std::string& what) {
  const json schema = json::parse(schema_text);
  const auto violations = fbns::schema_violations(value, schema);
  if (violations.empty()) return 0;
  std::cerr << "error: " << what << " does not validate:\n";
  for (const auto& violation : violations) {
    std::cerr << "  " << violation << "\n";
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Spectral Navier-Stokes lab driven by fractional Brownian forcing"};
  app.set_version_flag("--version", std::string(fbns::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  int threads = 0;
  bool quiet = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "JSON experiment config or run manifest")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "override the base seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--quiet", quiet, "suppress progress output");
  };

  auto* sim = app.add_subcommand(
      "simulate", "local mild solution: trajectory, diagnostics, noise dump");
  int snapshot_stride = 0;
  sim->add_option("--snapshots", snapshot_stride,
                  "dump a field snapshot every N grid points")
      ->check(CLI::NonNegativeNumber);
  auto* vhs = app.add_subcommand(
      "verify-hs", "small-time growth classes of the noise eigenvalue series");
  int vhs_d = 2;
  double vhs_q = 0.0;
  vhs->add_option("--d", vhs_d, "dimension (2 or 3)");
  vhs->add_option("--q", vhs_q, "noise regularity exponent");
  auto* chk = app.add_subcommand("check-params",
                                 "admissibility of (d, p, q, hurst)");
  int chk_d = 0;
  double chk_p = 0.0, chk_q = 0.0, chk_h = 0.0;
  chk->add_option("--d", chk_d, "dimension (2 or 3)");
  chk->add_option("--p", chk_p, "integrability p");
  chk->add_option("--q", chk_q, "noise regularity exponent");
  chk->add_option("--hurst", chk_h, "Hurst index");
  auto* pic = app.add_subcommand(
      "picard-study", "contraction ratios and pathwise uniqueness probe");
  auto* cnv = app.add_subcommand(
      "convergence-study", "scheme cross-validation under step doubling");
  auto* eng = app.add_subcommand(
      "energy-audit", "discrete energy inequality vs Gronwall envelope");
  auto* fbm = app.add_subcommand(
      "fbm-selftest", "fractional noise generator vs covariance oracle");
  for (CLI::App* sub : {sim, vhs, chk, pic, cnv, eng, fbm}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  CLI::App* active = app.get_subcommands().front();
  const std::string sub_name = active->get_name();
  const auto given = [&](const std::string& name) {
    const CLI::Option* opt = active->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };

  fbns::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      const json raw = fbns::read_json_file(config_path);
      json config_json = raw;
      if (raw.is_object() && raw.value("format", "") == "run-manifest") {
        if (validate_against(raw, fbns::embedded::kRunManifestSchema,
                             "run manifest")) {
          return 1;
        }
        config_json = raw.at("config");
      }
      if (validate_against(config_json,
                           fbns::embedded::kExperimentConfigSchema,
                           "experiment config")) {
        return 1;
      }
      cfg = fbns::experiment_config_from_json(config_json);
      if (cfg.command != sub_name) {
        std::cerr << "error: config command \"" << cfg.command
                  << "\" does not match subcommand \"" << sub_name << "\"\n";
        return 1;
      }
    } else {
      cfg.command = sub_name;
    }
    fbns::apply_env_overrides(cfg);

    if (given("--seed")) cfg.solve.seed = seed;
    if (given("--out")) cfg.output_dir = out_dir;
    if (given("--threads")) cfg.threads = threads;
    if (quiet) cfg.quiet = true;
    if (given("--snapshots")) cfg.snapshot_stride = snapshot_stride;
    if (sub_name == "verify-hs" && (given("--d") || given("--q"))) {
      cfg.verify_hs.queries = {{vhs_d, vhs_q}};
    }
    if (sub_name == "check-params") {
      if (given("--d")) cfg.check_params.d = chk_d;
      if (given("--p")) cfg.check_params.p = chk_p;
      if (given("--q")) cfg.check_params.q = chk_q;
      if (given("--hurst")) cfg.check_params.hurst = chk_h;
    }

    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    return run_command(std::move(cfg));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

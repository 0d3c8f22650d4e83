#include "fbns/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "fbns/io.hpp"

namespace fbns {

namespace {

const std::vector<std::string> kCommands = {
    "simulate",        "verify-hs",    "check-params", "picard-study",
    "convergence-study", "energy-audit", "fbm-selftest"};

}  // namespace

void ExperimentConfig::validate() const {
  if (std::find(kCommands.begin(), kCommands.end(), command) ==
      kCommands.end()) {
    throw std::invalid_argument("unknown command: " + command);
  }
  if (seed_policy.mode != "fixed" && seed_policy.mode != "sweep") {
    throw std::invalid_argument("seed_policy.mode must be fixed or sweep");
  }
  if (seed_policy.n < 1) {
    throw std::invalid_argument("seed_policy.n must be >= 1");
  }
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (snapshot_stride < 0) {
    throw std::invalid_argument("snapshot_stride must be >= 0");
  }
  solve.validate();
  if (verify_hs.t_min <= 0.0 || verify_hs.t_max <= verify_hs.t_min) {
    throw std::invalid_argument("verify_hs needs 0 < t_min < t_max");
  }
  if (verify_hs.points_per_decade < 2) {
    throw std::invalid_argument("verify_hs.points_per_decade must be >= 2");
  }
  for (const auto& query : verify_hs.queries) {
    if (query.d != 2 && query.d != 3) {
      throw std::invalid_argument("verify_hs query dimension must be 2 or 3");
    }
  }
  if (check_params.d != 2 && check_params.d != 3) {
    throw std::invalid_argument("check_params.d must be 2 or 3");
  }
  if (convergence.doublings < 1) {
    throw std::invalid_argument("convergence.doublings must be >= 1");
  }
  if (!energy.calibrate && energy.c_constant <= 0.0) {
    throw std::invalid_argument(
        "energy.c_constant must be > 0 when calibrate is false");
  }
  if (fbm.hursts.empty()) {
    throw std::invalid_argument("fbm.hursts must be nonempty");
  }
  for (const double h : fbm.hursts) {
    if (h <= 0.0 || h >= 1.0) {
      throw std::invalid_argument("fbm hurst values must lie in (0, 1)");
    }
  }
  if (fbm.n_steps < 2) throw std::invalid_argument("fbm.n_steps must be >= 2");
  if (fbm.n_paths < 2) throw std::invalid_argument("fbm.n_paths must be >= 2");
}

json solve_config_to_json(const SolveConfig& c) {
  json j;
  j["dimension"] = c.dimension;
  j["k_max"] = c.k_max;
  j["nu"] = c.nu;
  j["q"] = c.q;
  j["phi_scale"] = c.phi_scale;
  j["hurst"] = c.hurst;
  j["p_exponent"] = c.p_exponent;
  j["t_final"] = c.t_final;
  j["n_steps"] = c.n_steps;
  j["seed"] = c.seed;
  j["m_constant"] = c.m_constant;
  j["m_calibrated"] = c.m_calibrated;
  j["max_picard_iters"] = c.max_picard_iters;
  j["picard_tol"] = c.picard_tol;
  j["quadrature_order"] = c.quadrature_order;
  j["exp_euler_duhamel"] = c.exp_euler_duhamel;
  j["min_local_steps"] = c.min_local_steps;
  j["u0_kind"] = c.u0_kind;
  j["u0_amplitude"] = c.u0_amplitude;
  j["u0_perturbation"] = c.u0_perturbation;
  j["u0_target_lp"] = c.u0_target_lp;
  j["generator"] = to_string(c.generator);
  return j;
}

SolveConfig solve_config_from_json(const json& j) {
  SolveConfig c;
  c.dimension = j.value("dimension", c.dimension);
  c.k_max = j.value("k_max", c.k_max);
  c.nu = j.value("nu", c.nu);
  c.q = j.value("q", c.q);
  c.phi_scale = j.value("phi_scale", c.phi_scale);
  c.hurst = j.value("hurst", c.hurst);
  c.p_exponent = j.value("p_exponent", c.p_exponent);
  c.t_final = j.value("t_final", c.t_final);
  c.n_steps = j.value("n_steps", c.n_steps);
  c.seed = j.value("seed", c.seed);
  c.m_constant = j.value("m_constant", c.m_constant);
  c.m_calibrated = j.value("m_calibrated", c.m_calibrated);
  c.max_picard_iters = j.value("max_picard_iters", c.max_picard_iters);
  c.picard_tol = j.value("picard_tol", c.picard_tol);
  c.quadrature_order = j.value("quadrature_order", c.quadrature_order);
  c.exp_euler_duhamel = j.value("exp_euler_duhamel", c.exp_euler_duhamel);
  c.min_local_steps = j.value("min_local_steps", c.min_local_steps);
  c.u0_kind = j.value("u0_kind", c.u0_kind);
  c.u0_amplitude = j.value("u0_amplitude", c.u0_amplitude);
  c.u0_perturbation = j.value("u0_perturbation", c.u0_perturbation);
  c.u0_target_lp = j.value("u0_target_lp", c.u0_target_lp);
  if (j.contains("generator")) {
    c.generator = fbm_generator_from_string(
        j.at("generator").get<std::string>());
  }
  return c;
}

json experiment_config_to_json(const ExperimentConfig& c) {
  json j;
  j["command"] = c.command;
  j["output_dir"] = c.output_dir;
  j["seed_policy"] = {{"mode", c.seed_policy.mode}, {"n", c.seed_policy.n}};
  j["threads"] = c.threads;
  j["quiet"] = c.quiet;
  j["snapshot_stride"] = c.snapshot_stride;
  j["solve"] = solve_config_to_json(c.solve);
  json queries = json::array();
  for (const auto& query : c.verify_hs.queries) {
    queries.push_back({{"d", query.d}, {"q", query.q}});
  }
  j["verify_hs"] = {{"queries", queries},
                    {"t_min", c.verify_hs.t_min},
                    {"t_max", c.verify_hs.t_max},
                    {"points_per_decade", c.verify_hs.points_per_decade},
                    {"slope_floor", c.verify_hs.slope_floor}};
  j["check_params"] = {{"d", c.check_params.d},
                       {"p", c.check_params.p},
                       {"q", c.check_params.q}};
  if (c.check_params.hurst) {
    j["check_params"]["hurst"] = *c.check_params.hurst;
  }
  j["convergence"] = {{"doublings", c.convergence.doublings},
                      {"require_factor", c.convergence.require_factor}};
  j["energy"] = {{"c_constant", c.energy.c_constant},
                 {"calibrate", c.energy.calibrate}};
  j["fbm"] = {{"hursts", c.fbm.hursts},
              {"n_steps", c.fbm.n_steps},
              {"t_final", c.fbm.t_final},
              {"n_paths", c.fbm.n_paths},
              {"se_multiplier", c.fbm.se_multiplier},
              {"min_pass_fraction", c.fbm.min_pass_fraction},
              {"generator", to_string(c.fbm.generator)}};
  return j;
}

ExperimentConfig experiment_config_from_json(const json& input) {
  const json& j =
      input.value("format", "") == "run-manifest" ? input.at("config") : input;
  ExperimentConfig c;
  c.command = j.value("command", "");
  c.output_dir = j.value("output_dir", "");
  if (j.contains("seed_policy")) {
    const json& sp = j.at("seed_policy");
    c.seed_policy.mode = sp.value("mode", c.seed_policy.mode);
    c.seed_policy.n = sp.value("n", c.seed_policy.n);
  }
  c.threads = j.value("threads", c.threads);
  c.quiet = j.value("quiet", c.quiet);
  c.snapshot_stride = j.value("snapshot_stride", c.snapshot_stride);
  if (j.contains("solve")) c.solve = solve_config_from_json(j.at("solve"));
  if (j.contains("verify_hs")) {
    const json& vh = j.at("verify_hs");
    for (const json& query : vh.value("queries", json::array())) {
      c.verify_hs.queries.push_back(
          {query.value("d", 2), query.value("q", 0.0)});
    }
    c.verify_hs.t_min = vh.value("t_min", c.verify_hs.t_min);
    c.verify_hs.t_max = vh.value("t_max", c.verify_hs.t_max);
    c.verify_hs.points_per_decade =
        vh.value("points_per_decade", c.verify_hs.points_per_decade);
    c.verify_hs.slope_floor = vh.value("slope_floor", c.verify_hs.slope_floor);
  }
  if (j.contains("check_params")) {
    const json& cp = j.at("check_params");
    c.check_params.d = cp.value("d", c.check_params.d);
    c.check_params.p = cp.value("p", c.check_params.p);
    c.check_params.q = cp.value("q", c.check_params.q);
    if (cp.contains("hurst")) {
      c.check_params.hurst = cp.at("hurst").get<double>();
    }
  }
  if (j.contains("convergence")) {
    const json& cv = j.at("convergence");
    c.convergence.doublings =
        cv.value("doublings", c.convergence.doublings);
    c.convergence.require_factor =
        cv.value("require_factor", c.convergence.require_factor);
  }
  if (j.contains("energy")) {
    const json& en = j.at("energy");
    c.energy.c_constant = en.value("c_constant", c.energy.c_constant);
    c.energy.calibrate = en.value("calibrate", c.energy.calibrate);
  }
  if (j.contains("fbm")) {
    const json& fb = j.at("fbm");
    if (fb.contains("hursts")) {
      c.fbm.hursts = fb.at("hursts").get<std::vector<double>>();
    }
    c.fbm.n_steps = fb.value("n_steps", c.fbm.n_steps);
    c.fbm.t_final = fb.value("t_final", c.fbm.t_final);
    c.fbm.n_paths = fb.value("n_paths", c.fbm.n_paths);
    c.fbm.se_multiplier = fb.value("se_multiplier", c.fbm.se_multiplier);
    c.fbm.min_pass_fraction =
        fb.value("min_pass_fraction", c.fbm.min_pass_fraction);
    if (fb.contains("generator")) {
      c.fbm.generator =
          fbm_generator_from_string(fb.at("generator").get<std::string>());
    }
  }
  return c;
}

void apply_env_overrides(ExperimentConfig& config) {
  if (const char* seed = std::getenv("FBNS_SEED")) {
    config.solve.seed = std::stoull(seed);
  }
  if (const char* out = std::getenv("FBNS_OUT")) {
    config.output_dir = out;
  }
  if (const char* threads = std::getenv("FBNS_THREADS")) {
    config.threads = std::stoi(threads);
  }
  if (const char* quiet = std::getenv("FBNS_QUIET")) {
    config.quiet = std::string(quiet) != "0";
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& file) {
  ExperimentConfig config =
      experiment_config_from_json(read_json_file(file));
  apply_env_overrides(config);
  return config;
}

}  // namespace fbns

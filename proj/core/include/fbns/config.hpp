#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fbns/solver.hpp"

namespace fbns {

using json = nlohmann::json;

struct SeedPolicy {
  std::string mode = "fixed";  // "fixed" or "sweep"
  int n = 1;                   // sweep width (seeds seed, seed+1, ...)
};

struct RegimeSuiteConfig {
  struct Query {
    int d = 2;
    double q = 0.0;
  };
  std::vector<Query> queries;
  double t_min = 1e-6;
  double t_max = 1.0;
  int points_per_decade = 8;
  double slope_floor = -0.01;
};

struct CheckParamsConfig {
  int d = 2;
  double p = 4.0;
  double q = 0.0;
  std::optional<double> hurst;  // absent: sweep a hurst grid and summarize
};

struct ConvergenceConfig {
  int doublings = 3;
  double require_factor = 0.0;  // > 0: fail the run if any factor is below
};

struct EnergyConfig {
  double c_constant = 0.0;  // used when calibrate is false
  bool calibrate = true;    // measure the Ladyzhenskaya constant instead
};

struct FbmSelftestConfig {
  std::vector<double> hursts = {0.3, 0.5, 0.75, 0.9};
  int n_steps = 256;
  double t_final = 1.0;
  int n_paths = 20000;
  double se_multiplier = 5.0;      // covariance tolerance band in SE units
  double min_pass_fraction = 0.99; // entries required inside the band
  FbmGenerator generator = FbmGenerator::circulant;
};

struct ExperimentConfig {
  std::string command;
  std::string output_dir;  // empty: "out-<command>"
  SeedPolicy seed_policy;
  int threads = 1;
  bool quiet = false;
  // simulate: dump field snapshots every this many grid points (0: final
  // time only).
  int snapshot_stride = 0;
  SolveConfig solve;
  RegimeSuiteConfig verify_hs;
  CheckParamsConfig check_params;
  ConvergenceConfig convergence;
  EnergyConfig energy;
  FbmSelftestConfig fbm;

  void validate() const;  // throws std::invalid_argument
};

json solve_config_to_json(const SolveConfig& c);
SolveConfig solve_config_from_json(const json& j);

json experiment_config_to_json(const ExperimentConfig& c);
// Accepts either a bare config object or a run manifest (the manifest's
// "config" block is used), so any manifest can be re-run directly.
ExperimentConfig experiment_config_from_json(const json& j);

// Reads the file, resolves manifests, applies FBNS_* environment overrides
// (FBNS_SEED, FBNS_OUT, FBNS_THREADS, FBNS_QUIET).
ExperimentConfig load_experiment_config(const std::filesystem::path& file);
void apply_env_overrides(ExperimentConfig& config);

}  // namespace fbns

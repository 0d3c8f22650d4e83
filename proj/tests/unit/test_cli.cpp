#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "fbns/io.hpp"
#include "fbns/sha256.hpp"

using namespace fbns;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("fbns-cli-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int counter;
};

int TempDir::counter = 0;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Runs the installed binary with stdout/stderr captured in the sandbox dir.
RunResult run_cli(const TempDir& tmp, const std::string& args) {
  const fs::path out = tmp.path / "stdout.txt";
  const fs::path err = tmp.path / "stderr.txt";
  const std::string cmd = std::string(FBNS_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

bool files_identical(const fs::path& a, const fs::path& b) {
  return slurp(a) == slurp(b);
}

}  // namespace

TEST_CASE("version and usage behave like a conventional tool") {
  TempDir tmp;
  const auto version = run_cli(tmp, "--version");
  CHECK(version.exit_code == 0);
  CHECK(version.out.find("0.1.0") != std::string::npos);

  const auto bare = run_cli(tmp, "");
  CHECK(bare.exit_code == 1);

  const auto unknown = run_cli(tmp, "frobnicate");
  CHECK(unknown.exit_code == 1);

  const auto help = run_cli(tmp, "--help");
  CHECK(help.exit_code == 0);
  for (const std::string sub :
       {"simulate", "verify-hs", "check-params", "picard-study",
        "convergence-study", "energy-audit", "fbm-selftest"}) {
    CHECK(help.out.find(sub) != std::string::npos);
  }
}

TEST_CASE("malformed or invalid configurations fail without artifacts") {
  TempDir tmp;
  const fs::path outdir = tmp.path / "out";

  const fs::path garbage = tmp.path / "garbage.json";
  std::ofstream(garbage) << "this is not json {";
  const auto r1 = run_cli(tmp, "simulate --config " + garbage.string() +
                                   " --out " + outdir.string());
  CHECK(r1.exit_code == 1);
  CHECK(!fs::exists(outdir / "manifest.json"));

  const fs::path typo = tmp.path / "typo.json";
  write_json_file(typo, json{{"command", "simulate"},
                             {"solve", {{"kmax", 4}}}});
  const auto r2 = run_cli(tmp, "simulate --config " + typo.string() +
                                   " --out " + outdir.string());
  CHECK(r2.exit_code == 1);
  CHECK(r2.err.find("unexpected key") != std::string::npos);
  CHECK(!fs::exists(outdir / "manifest.json"));

  const fs::path range = tmp.path / "range.json";
  write_json_file(range, json{{"command", "simulate"},
                              {"solve", {{"hurst", 1.5}}}});
  const auto r3 = run_cli(tmp, "simulate --config " + range.string() +
                                   " --out " + outdir.string());
  CHECK(r3.exit_code == 1);
  CHECK(!fs::exists(outdir / "manifest.json"));

  // Command/config mismatch is a usage error.
  const fs::path mismatch = tmp.path / "mismatch.json";
  write_json_file(mismatch, json{{"command", "verify-hs"}});
  const auto r4 = run_cli(tmp, "simulate --config " + mismatch.string() +
                                   " --out " + outdir.string());
  CHECK(r4.exit_code == 1);

  const auto r5 = run_cli(tmp, "simulate --config " +
                                   (tmp.path / "missing.json").string());
  CHECK(r5.exit_code == 1);
}

TEST_CASE("parameter checks report the admissibility verdict") {
  TempDir tmp;
  const fs::path outdir = tmp.path / "out";
  const auto r = run_cli(
      tmp, "check-params --d 3 --p 4 --q 0 --out " + outdir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("inadmissible for all H < 1") != std::string::npos);
  CHECK(fs::exists(outdir / "manifest.json"));
  CHECK(fs::exists(outdir / "admissibility.csv"));

  const auto manifest = read_json_file(outdir / "manifest.json");
  CHECK(manifest.at("format") == "run-manifest");
  CHECK(manifest.at("status") == "pass");
  CHECK(manifest.at("command") == "check-params");

  const fs::path out2 = tmp.path / "out2";
  const auto r2 = run_cli(
      tmp, "check-params --d 2 --p 4 --q 0 --hurst 0.9 --out " + out2.string());
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("admissible") != std::string::npos);
}

TEST_CASE("simulate runs are reproducible from their manifest") {
  TempDir tmp;
  const fs::path cfg_path = tmp.path / "config.json";
  write_json_file(
      cfg_path,
      json{{"command", "simulate"},
           {"solve",
            {{"k_max", 3},
             {"n_steps", 16},
             {"t_final", 0.05},
             {"u0_target_lp", 0.02},
             {"seed", 5}}}});
  const fs::path out1 = tmp.path / "run1";
  const auto r1 = run_cli(tmp, "simulate --config " + cfg_path.string() +
                                   " --out " + out1.string());
  CHECK(r1.exit_code == 0);
  REQUIRE(fs::exists(out1 / "manifest.json"));
  REQUIRE(fs::exists(out1 / "trajectory.csv"));
  CHECK(fs::exists(out1 / "iterations.csv"));
  CHECK(fs::exists(out1 / "regularity.csv"));
  CHECK(fs::exists(out1 / "noise.path"));
  CHECK(fs::exists(out1 / "u_final.fbns"));

  // Re-running from the manifest reproduces every table byte for byte.
  const fs::path out2 = tmp.path / "run2";
  const auto r2 = run_cli(tmp, "simulate --config " +
                                   (out1 / "manifest.json").string() +
                                   " --out " + out2.string());
  CHECK(r2.exit_code == 0);
  for (const std::string f :
       {"trajectory.csv", "iterations.csv", "regularity.csv", "summary.json"}) {
    CAPTURE(f);
    CHECK(files_identical(out1 / f, out2 / f));
  }
  const auto m1 = read_json_file(out1 / "manifest.json");
  const auto m2 = read_json_file(out2 / "manifest.json");
  CHECK(m1.at("noise_hash") == m2.at("noise_hash"));
  CHECK(m1.at("outputs") == m2.at("outputs"));

  // The recorded output hashes match the files on disk.
  for (const auto& entry : m1.at("outputs")) {
    const auto file = out1 / entry.at("file").get<std::string>();
    REQUIRE(fs::exists(file));
    const std::string bytes = slurp(file);
    CHECK(sha256_hex(bytes) == entry.at("sha256").get<std::string>());
  }
}

TEST_CASE("seed sweeps merge deterministically regardless of thread count") {
  TempDir tmp;
  const fs::path cfg_path = tmp.path / "sweep.json";
  write_json_file(
      cfg_path,
      json{{"command", "simulate"},
           {"seed_policy", {{"mode", "sweep"}, {"n", 3}}},
           {"solve",
            {{"k_max", 2},
             {"n_steps", 8},
             {"t_final", 0.05},
             {"u0_target_lp", 0.02},
             {"seed", 40}}}});
  const fs::path out1 = tmp.path / "sweep1";
  const fs::path out2 = tmp.path / "sweep2";
  const auto r1 = run_cli(tmp, "simulate --config " + cfg_path.string() +
                                   " --threads 1 --out " + out1.string());
  const auto r2 = run_cli(tmp, "simulate --config " + cfg_path.string() +
                                   " --threads 3 --out " + out2.string());
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  REQUIRE(fs::exists(out1 / "sweep.csv"));
  CHECK(files_identical(out1 / "sweep.csv", out2 / "sweep.csv"));
  for (const int seed : {40, 41, 42}) {
    const auto sub = "seed-" + std::to_string(seed);
    CAPTURE(sub);
    CHECK(files_identical(out1 / sub / "trajectory.csv",
                          out2 / sub / "trajectory.csv"));
  }
}

TEST_CASE("environment overrides reach the run") {
  TempDir tmp;
  const fs::path outdir = tmp.path / "env-out";
  ::setenv("FBNS_OUT", outdir.c_str(), 1);
  ::setenv("FBNS_SEED", "1234", 1);
  ::setenv("FBNS_QUIET", "1", 1);
  const auto r = run_cli(tmp, "check-params --d 2 --p 4 --q 0");
  ::unsetenv("FBNS_OUT");
  ::unsetenv("FBNS_SEED");
  ::unsetenv("FBNS_QUIET");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  REQUIRE(fs::exists(outdir / "manifest.json"));
  const auto manifest = read_json_file(outdir / "manifest.json");
  CHECK(manifest.at("config").at("quiet") == true);
}

TEST_CASE("verification failures exit with the dedicated status") {
  TempDir tmp;
  const fs::path cfg_path = tmp.path / "strict.json";
  write_json_file(
      cfg_path,
      json{{"command", "convergence-study"},
           {"convergence", {{"doublings", 1}, {"require_factor", 50.0}}},
           {"solve",
            {{"k_max", 2},
             {"n_steps", 8},
             {"t_final", 0.05},
             {"u0_target_lp", 0.02},
             {"phi_scale", 1e-6},
             {"picard_tol", 1e-14},
             {"seed", 7}}}});
  const fs::path outdir = tmp.path / "strict-out";
  const auto r = run_cli(tmp, "convergence-study --config " +
                                  cfg_path.string() + " --out " +
                                  outdir.string());
  CHECK(r.exit_code == 2);
  REQUIRE(fs::exists(outdir / "manifest.json"));
  const auto manifest = read_json_file(outdir / "manifest.json");
  CHECK(manifest.at("status") == "fail");
  bool found = false;
  for (const auto& code : manifest.at("reason_codes")) {
    if (code.get<std::string>().find("convergence-factor-low") !=
        std::string::npos) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("fbm selftest passes a small smoke configuration") {
  TempDir tmp;
  const fs::path cfg_path = tmp.path / "fbm.json";
  write_json_file(cfg_path,
                  json{{"command", "fbm-selftest"},
                       {"fbm",
                        {{"hursts", {0.5, 0.75}},
                         {"n_steps", 16},
                         {"n_paths", 500},
                         {"se_multiplier", 6.0},
                         {"min_pass_fraction", 0.97}}}});
  const fs::path outdir = tmp.path / "fbm-out";
  const auto r = run_cli(tmp, "fbm-selftest --config " + cfg_path.string() +
                                  " --out " + outdir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(outdir / "covariance.csv"));
  const auto table = read_csv(outdir / "covariance.csv");
  REQUIRE(table.rows.size() == 2);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dr54/harness.hpp"

using namespace dr54;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("dr54_test_" + tag);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config parsing with defaults and overrides") {
  const RunConfig c = parse_config(R"({
    "experiment": "dynamics",
    "N": 8,
    "t_max": 12,
    "decoration": {"mode": "random-projected", "lambda_e": 0.5, "seed": 4},
    "initial_states": [{"kind": "vacuum"}, {"kind": "partial-overlap", "w": 0.25}]
  })");
  CHECK(c.experiment == "dynamics");
  CHECK(c.n_sites == 8);
  CHECK(c.t_max == 12);
  CHECK(c.decoration.mode == DecorationMode::RandomProjected);
  CHECK(c.decoration.lambda_e == 0.5);
  CHECK(c.decoration.lambda_o == 0.5);  // defaults to lambda_e
  CHECK(c.decoration.seed == 4);
  REQUIRE(c.initial_states.size() == 2);
  CHECK(c.initial_states[0].label() == "vacuum");
  CHECK(c.initial_states[1].label() == "partial-overlap-w0p25");

  RunConfig with_seed = c;
  apply_overrides(with_seed, 99, std::string("elsewhere"));
  CHECK(with_seed.decoration.seed == 99);
  CHECK(with_seed.out_dir == "elsewhere");

  CHECK_THROWS_AS(parse_config("not json"), std::invalid_argument);
}

TEST_CASE("theta table entries parse into the spec") {
  const RunConfig c = parse_config(R"({
    "experiment": "compile",
    "N": 6,
    "decoration": {
      "mode": "diagonal-phase",
      "theta": [{"stage": "after-even", "center": 2, "pattern": "010", "value": 0.5}]
    }
  })");
  REQUIRE(c.decoration.theta.size() == 1);
  CHECK(c.decoration.theta[0].stage == Stage::AfterEven);
  CHECK(c.decoration.theta[0].center == 2);
  CHECK(c.decoration.theta[0].pattern == 2);
  CHECK(c.decoration.theta[0].value == 0.5);
}

TEST_CASE("invalid configs fail with a nonzero status") {
  RunConfig c;
  c.experiment = "no-such-thing";
  CHECK(run(c) == 2);

  c = parse_config(R"({"experiment": "count", "N": 7})");
  CHECK(run(c) == 2);  // odd N

  c = parse_config(R"({"experiment": "dynamics", "N": 8, "t_max": 0})");
  CHECK(run(c) == 2);

  // Valid config but a broken module contract: dynamics without states.
  c = parse_config(R"({"experiment": "dynamics", "N": 8})");
  c.out_dir = fresh_dir("invalid").string();
  CHECK(run(c) == 1);
}

TEST_CASE("count and orbits emit the documented JSON") {
  const fs::path dir = fresh_dir("count");
  RunConfig c = parse_config(R"({"experiment": "count", "L": 5})");
  c.out_dir = dir.string();
  REQUIRE(run(c) == 0);
  const std::string count_json = slurp(dir / "count.json");
  CHECK(count_json.find("\"L\": 5") != std::string::npos);
  CHECK(count_json.find("\"count\": 11") != std::string::npos);

  RunConfig o = parse_config(R"({"experiment": "orbits", "L": 5})");
  o.out_dir = dir.string();
  REQUIRE(run(o) == 0);
  const std::string orbits_json = slurp(dir / "orbits.json");
  CHECK(orbits_json.find("\"rep\": \"10000\"") != std::string::npos);
  CHECK(orbits_json.find("\"period\": 5") != std::string::npos);
  CHECK(fs::exists(dir / "manifest.json"));

  // Sweeps emit an array of the same objects.
  RunConfig sweep =
      parse_config(R"({"experiment": "count", "L_min": 2, "L_max": 16})");
  sweep.out_dir = dir.string();
  REQUIRE(run(sweep) == 0);
  const std::string sweep_json = slurp(dir / "count.json");
  CHECK(sweep_json.find("\"L\": 2") != std::string::npos);
  CHECK(sweep_json.find("\"count\": 2207") != std::string::npos);  // L=16
}

TEST_CASE("identical configs reproduce byte-identical artifacts") {
  RunConfig c = parse_config(R"({
    "experiment": "dynamics",
    "N": 8,
    "t_max": 10,
    "decoration": {"mode": "random-projected", "lambda_e": 0.75, "seed": 11},
    "initial_states": [{"kind": "soliton-product"}, {"kind": "outside"}]
  })");
  const fs::path dir_a = fresh_dir("det_a");
  const fs::path dir_b = fresh_dir("det_b");
  c.out_dir = dir_a.string();
  REQUIRE(run(c) == 0);
  c.out_dir = dir_b.string();
  REQUIRE(run(c) == 0);
  for (const char* name :
       {"dynamics_soliton-product.csv", "dynamics_outside.csv"}) {
    const std::string a = slurp(dir_a / name);
    const std::string b = slurp(dir_b / name);
    CHECK(a == b);
    CHECK(a.find("t,S_half,fidelity,P_track,P_ret,P_orbit,d_0") == 0);
  }
}

TEST_CASE("target-orbit dynamics with scar and custom initial states") {
  const fs::path dir = fresh_dir("target");
  RunConfig c = parse_config(R"({
    "experiment": "dynamics",
    "N": 8,
    "t_max": 8,
    "decoration": {"mode": "random-projected", "lambda_e": 0.75, "seed": 6,
                   "scope": "target-orbit", "orbit": "1000"},
    "reference_orbit": "1000",
    "initial_states": [
      {"kind": "soliton-product", "orbit": "1000"},
      {"kind": "orbit-fourier", "m": 2, "orbit": "1000"},
      {"kind": "custom-bits", "bits": "10100000"}
    ]
  })");
  c.out_dir = dir.string();
  REQUIRE(run(c) == 0);
  CHECK(fs::exists(dir / "dynamics_soliton-product.csv"));
  CHECK(fs::exists(dir / "dynamics_orbit-fourier-m2.csv"));
  CHECK(fs::exists(dir / "dynamics_custom-bits-10100000.csv"));
}

TEST_CASE("scars experiment writes the documented CSV header") {
  const fs::path dir = fresh_dir("scars");
  RunConfig c = parse_config(R"({
    "experiment": "scars",
    "N": 8,
    "decoration": {"mode": "random-projected", "lambda_e": 0.75, "seed": 2}
  })");
  c.out_dir = dir.string();
  REQUIRE(run(c) == 0);
  const std::string csv = slurp(dir / "scars.csv");
  CHECK(csv.find("orbit_rep,period,m,eigenphase,S_vN,S_renyi2,schmidt_rank") ==
        0);
  // 7 scar rows plus the header.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
}

TEST_CASE("compile and verify-compile round trip on disk") {
  const fs::path dir = fresh_dir("compile");
  RunConfig c = parse_config(R"({
    "experiment": "compile",
    "N": 6,
    "decoration": {"mode": "diagonal-phase", "seed": 8}
  })");
  c.out_dir = dir.string();
  REQUIRE(run(c) == 0);
  CHECK(fs::exists(dir / "circuit.txt"));
  const std::string manifest = slurp(dir / "manifest.json");
  CHECK(manifest.find("splitmix64/box-muller-v1") != std::string::npos);

  RunConfig v = c;
  v.experiment = "verify-compile";
  v.out_dir = (dir / "verify").string();
  REQUIRE(run(v) == 0);
  const std::string report = slurp(dir / "verify" / "verify_compile.json");
  CHECK(report.find("max_deviation") != std::string::npos);
}

TEST_CASE("environment variable overrides the output directory") {
  const fs::path dir = fresh_dir("env");
  setenv("DR54_OUT", dir.string().c_str(), 1);
  RunConfig c = parse_config(R"({"experiment": "count", "L": 4})");
  apply_overrides(c, std::nullopt, std::nullopt);
  unsetenv("DR54_OUT");
  CHECK(c.out_dir == dir.string());
  REQUIRE(run(c) == 0);
  CHECK(fs::exists(dir / "count.json"));
}

TEST_CASE("selftest passes") {
  RunConfig c;
  c.experiment = "selftest";
  CHECK(run(c) == 0);
}

// Copyright 2026 The cdftest Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdftest::cli {

// Bad or missing configuration. Mapped to exit code 2 (data problems map
// to DataError and exit code 3; a successful run exits 0 regardless of the
// test decision).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

// Per-comparison override for the ktest command; empty fields inherit the
// shared settings.
struct ComparisonSpec {
  std::string path;
  std::string col;
  std::string family;
  std::vector<double> box_lower;
  std::vector<double> box_upper;
};

// The flat configuration document shared by all subcommands. JSON config
// files carry the same keys; command-line flags override file values.
struct RunConfig {
  // data
  std::string x_path;
  std::string x_col = "x";
  std::vector<std::string> y_paths;
  std::string y_col = "y";
  std::string paired_path;
  std::string pairing = "independent";
  std::vector<ComparisonSpec> comparisons;  // ktest only (config file)

  // transformation family and parameter box
  std::string family = "location-scale";
  std::string affine_loc_sign = "+";   // affine family: sign on theta1
  std::string affine_scale = "mul";    // affine family: "mul" or "div"
  std::vector<double> box_lower;
  std::vector<double> box_upper;

  // weighting measure
  std::string nu = "auto";  // "auto" or "normal"
  double nu_mean = 0.0;
  double nu_sd = 1.0;
  double nu_pad = 0.005;

  // test controls
  double alpha = 0.05;
  std::vector<double> taus;
  int n_boot = 1000;
  int m_nodes = 512;
  int resolution = 41;
  bool refine = false;
  double refine_shrink = 0.5;
  int refine_rounds = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  // simulate
  std::string dgp_family = "continuous";
  std::vector<int> dgps{0};
  std::vector<int> n1_list{500};
  std::vector<int> n2_list{500};
  int n_mc = 200;

  // gen
  int dgp = 0;
  int n1 = 100;
  int n2 = 100;

  // output
  std::string out;             // empty = stdout
  std::string format = "text";  // text | csv | jsonl
};

// Loads a JSON config file; unknown keys raise ConfigError.
RunConfig load_config_file(const std::string& path);

// JSON echo of the effective configuration (sorted keys, deterministic).
std::string config_json(const RunConfig& config);

// Subcommand bodies. Each writes its report to `out` and returns kExitOk,
// or throws ConfigError / DataError.
int cmd_test(const RunConfig& config, std::ostream& out);
int cmd_ktest(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_gen(const RunConfig& config, std::ostream& out);

// Dispatches on config.command semantics, honoring config.out; catches
// errors and maps them to exit codes. Used by the binary's main().
int run_command(const std::string& command, const RunConfig& config);

}  // namespace cdftest::cli

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

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cdftest/cli.hpp"

namespace cli = cdftest::cli;

namespace {

// Flags common to every subcommand.
void add_common_options(CLI::App* cmd, cli::RunConfig& cfg, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file (flags override its keys)");
  cmd->add_option("--seed", cfg.seed, "64-bit RNG seed");
  cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
  cmd->add_option("--out", cfg.out, "output path (default: stdout)");
  cmd->add_option("--format", cfg.format, "report format: text|csv|jsonl");
}

void add_family_options(CLI::App* cmd, cli::RunConfig& cfg) {
  cmd->add_option("--family", cfg.family,
                  "transformation family: location|scale|location-scale|affine");
  cmd->add_option("--affine-loc-sign", cfg.affine_loc_sign, "affine family: + or -");
  cmd->add_option("--affine-scale", cfg.affine_scale, "affine family: mul or div");
  cmd->add_option("--box-lower", cfg.box_lower, "parameter box lower bounds")
      ->delimiter(',');
  cmd->add_option("--box-upper", cfg.box_upper, "parameter box upper bounds")
      ->delimiter(',');
}

void add_test_options(CLI::App* cmd, cli::RunConfig& cfg) {
  cmd->add_option("--nu", cfg.nu, "weighting measure: auto|normal");
  cmd->add_option("--nu-mean", cfg.nu_mean, "normal nu mean");
  cmd->add_option("--nu-sd", cfg.nu_sd, "normal nu standard deviation");
  cmd->add_option("--nu-pad", cfg.nu_pad, "auto nu range padding fraction");
  cmd->add_option("--alpha", cfg.alpha, "significance level");
  cmd->add_option("--tau", cfg.taus, "tuning parameter(s), one result row each")
      ->delimiter(',');
  cmd->add_option("--n-boot", cfg.n_boot, "bootstrap iterations");
  cmd->add_option("--m-nodes", cfg.m_nodes, "quadrature nodes");
  cmd->add_option("--resolution", cfg.resolution, "theta lattice points per dimension");
  cmd->add_flag("--refine", cfg.refine, "enable pattern-search refinement");
  cmd->add_option("--refine-shrink", cfg.refine_shrink, "refinement shrink factor");
  cmd->add_option("--refine-rounds", cfg.refine_rounds, "refinement rounds");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cdftest: minimum-distance tests of parametric CDF transformations"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::string config_path;

  CLI::App* test = app.add_subcommand("test", "two-sample transformation test");
  test->add_option("--x", cfg.x_path, "base sample CSV");
  test->add_option("--x-col", cfg.x_col, "base column name");
  test->add_option("--y", cfg.y_paths, "comparison sample CSV");
  test->add_option("--y-col", cfg.y_col, "comparison column name");
  test->add_option("--paired", cfg.paired_path, "paired CSV (matched mode)");
  test->add_option("--pairing", cfg.pairing, "independent|matched");
  add_family_options(test, cfg);
  add_test_options(test, cfg);
  add_common_options(test, cfg, config_path);

  CLI::App* ktest = app.add_subcommand("ktest", "K-sample transformation test");
  ktest->add_option("--x", cfg.x_path, "base sample CSV");
  ktest->add_option("--x-col", cfg.x_col, "base column name");
  ktest->add_option("--y", cfg.y_paths, "comparison CSVs (repeatable)");
  ktest->add_option("--y-col", cfg.y_col, "comparison column name");
  add_family_options(ktest, cfg);
  add_test_options(ktest, cfg);
  add_common_options(ktest, cfg, config_path);

  CLI::App* simulate = app.add_subcommand("simulate", "warp-speed rejection-rate study");
  simulate->add_option("--dgp-family", cfg.dgp_family, "continuous|discrete");
  simulate->add_option("--dgps", cfg.dgps, "design ids (0..3)")->delimiter(',');
  simulate->add_option("--n1", cfg.n1_list, "base sample sizes")->delimiter(',');
  simulate->add_option("--n2", cfg.n2_list, "comparison sample sizes")->delimiter(',');
  simulate->add_option("--n-mc", cfg.n_mc, "Monte Carlo replications");
  simulate->add_option("--pairing", cfg.pairing, "independent|matched");
  add_family_options(simulate, cfg);
  add_test_options(simulate, cfg);
  add_common_options(simulate, cfg, config_path);

  CLI::App* gen = app.add_subcommand("gen", "write simulated samples to CSV");
  gen->add_option("--dgp-family", cfg.dgp_family, "continuous|discrete");
  gen->add_option("--dgp", cfg.dgp, "design id (0..3)");
  gen->add_option("--pairing", cfg.pairing, "independent|matched");
  gen->add_option("--n1", cfg.n1, "base sample size");
  gen->add_option("--n2", cfg.n2, "comparison sample size");
  gen->add_option("--x-col", cfg.x_col, "base column header");
  gen->add_option("--y-col", cfg.y_col, "comparison column header");
  add_common_options(gen, cfg, config_path);

  // Config-file keys form the base layer; flags parsed afterwards override
  // them. Locate --config before the real parse.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
  }
  if (!config_path.empty()) {
    try {
      cfg = cli::load_config_file(config_path);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return cli::kExitConfig;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfig;
  }

  std::string command;
  if (test->parsed()) command = "test";
  else if (ktest->parsed()) command = "ktest";
  else if (simulate->parsed()) command = "simulate";
  else if (gen->parsed()) command = "gen";

  return cli::run_command(command, cfg);
}

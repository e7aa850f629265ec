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

#include "cdftest/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "cdftest/csv.hpp"
#include "cdftest/hypothesis_test.hpp"
#include "cdftest/simulation.hpp"

namespace cdftest::cli {

using nlohmann::json;

namespace {

std::string fmt(const char* format, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

json comparison_to_json(const ComparisonSpec& c) {
  return json{{"path", c.path},
              {"col", c.col},
              {"family", c.family},
              {"box_lower", c.box_lower},
              {"box_upper", c.box_upper}};
}

ComparisonSpec comparison_from_json(const json& j) {
  ComparisonSpec c;
  for (const auto& [key, value] : j.items()) {
    if (key == "path") value.get_to(c.path);
    else if (key == "col") value.get_to(c.col);
    else if (key == "family") value.get_to(c.family);
    else if (key == "box_lower") value.get_to(c.box_lower);
    else if (key == "box_upper") value.get_to(c.box_upper);
    else throw ConfigError("invalid config key: comparisons." + key);
  }
  if (c.path.empty()) throw ConfigError("comparisons entries require a 'path'");
  return c;
}

json to_json(const RunConfig& c) {
  json j{{"x", c.x_path},
         {"x_col", c.x_col},
         {"y", c.y_paths},
         {"y_col", c.y_col},
         {"paired", c.paired_path},
         {"pairing", c.pairing},
         {"family", c.family},
         {"affine_loc_sign", c.affine_loc_sign},
         {"affine_scale", c.affine_scale},
         {"box_lower", c.box_lower},
         {"box_upper", c.box_upper},
         {"nu", c.nu},
         {"nu_mean", c.nu_mean},
         {"nu_sd", c.nu_sd},
         {"nu_pad", c.nu_pad},
         {"alpha", c.alpha},
         {"taus", c.taus},
         {"n_boot", c.n_boot},
         {"m_nodes", c.m_nodes},
         {"resolution", c.resolution},
         {"refine", c.refine},
         {"refine_shrink", c.refine_shrink},
         {"refine_rounds", c.refine_rounds},
         {"seed", c.seed},
         {"threads", c.threads},
         {"dgp_family", c.dgp_family},
         {"dgps", c.dgps},
         {"n1_list", c.n1_list},
         {"n2_list", c.n2_list},
         {"n_mc", c.n_mc},
         {"dgp", c.dgp},
         {"n1", c.n1},
         {"n2", c.n2},
         {"out", c.out},
         {"format", c.format}};
  json comps = json::array();
  for (const auto& comp : c.comparisons) comps.push_back(comparison_to_json(comp));
  j["comparisons"] = comps;
  return j;
}

void apply_json(RunConfig& c, const json& j) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "x") value.get_to(c.x_path);
      else if (key == "x_col") value.get_to(c.x_col);
      else if (key == "y") {
        if (value.is_string()) c.y_paths = {value.get<std::string>()};
        else value.get_to(c.y_paths);
      } else if (key == "y_col") value.get_to(c.y_col);
      else if (key == "paired") value.get_to(c.paired_path);
      else if (key == "pairing") value.get_to(c.pairing);
      else if (key == "family") value.get_to(c.family);
      else if (key == "affine_loc_sign") value.get_to(c.affine_loc_sign);
      else if (key == "affine_scale") value.get_to(c.affine_scale);
      else if (key == "box_lower") value.get_to(c.box_lower);
      else if (key == "box_upper") value.get_to(c.box_upper);
      else if (key == "nu") value.get_to(c.nu);
      else if (key == "nu_mean") value.get_to(c.nu_mean);
      else if (key == "nu_sd") value.get_to(c.nu_sd);
      else if (key == "nu_pad") value.get_to(c.nu_pad);
      else if (key == "alpha") value.get_to(c.alpha);
      else if (key == "taus") value.get_to(c.taus);
      else if (key == "n_boot") value.get_to(c.n_boot);
      else if (key == "m_nodes") value.get_to(c.m_nodes);
      else if (key == "resolution") value.get_to(c.resolution);
      else if (key == "refine") value.get_to(c.refine);
      else if (key == "refine_shrink") value.get_to(c.refine_shrink);
      else if (key == "refine_rounds") value.get_to(c.refine_rounds);
      else if (key == "seed") value.get_to(c.seed);
      else if (key == "threads") value.get_to(c.threads);
      else if (key == "dgp_family") value.get_to(c.dgp_family);
      else if (key == "dgps") value.get_to(c.dgps);
      else if (key == "n1_list") value.get_to(c.n1_list);
      else if (key == "n2_list") value.get_to(c.n2_list);
      else if (key == "n_mc") value.get_to(c.n_mc);
      else if (key == "dgp") value.get_to(c.dgp);
      else if (key == "n1") value.get_to(c.n1);
      else if (key == "n2") value.get_to(c.n2);
      else if (key == "out") value.get_to(c.out);
      else if (key == "format") value.get_to(c.format);
      else if (key == "comparisons") {
        c.comparisons.clear();
        for (const auto& entry : value) c.comparisons.push_back(comparison_from_json(entry));
      } else {
        throw ConfigError("invalid config key: " + key);
      }
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

TransformFamily make_family(const RunConfig& c, const std::string& name) {
  if (name == "location" || name == "scale" || name == "location-scale" ||
      name == "location_scale") {
    return builtin_family(name);
  }
  if (name == "affine") {
    int sign = 0;
    if (c.affine_loc_sign == "+") sign = 1;
    else if (c.affine_loc_sign == "-") sign = -1;
    else throw ConfigError("affine_loc_sign must be '+' or '-'");
    if (c.affine_scale != "mul" && c.affine_scale != "div") {
      throw ConfigError("affine_scale must be 'mul' or 'div'");
    }
    return affine_family(sign, c.affine_scale == "mul");
  }
  throw ConfigError("unknown family: " + name);
}

ParamBox make_box(const std::vector<double>& lower, const std::vector<double>& upper,
                  std::size_t dims) {
  if (lower.empty() || upper.empty()) {
    throw ConfigError("box_lower/box_upper are required");
  }
  if (lower.size() != dims || upper.size() != dims) {
    throw ConfigError("box bounds must have " + std::to_string(dims) + " entries");
  }
  try {
    return ParamBox(lower, upper);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void check_common(const RunConfig& c) {
  if (c.taus.empty()) throw ConfigError("at least one tau is required");
  for (double t : c.taus) {
    if (!(t > 0.0)) throw ConfigError("tau values must be > 0");
  }
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (c.n_boot < 1) throw ConfigError("n_boot must be >= 1");
  if (c.m_nodes < 1) throw ConfigError("m_nodes must be >= 1");
  if (c.resolution < 1) throw ConfigError("resolution must be >= 1");
  if (c.format != "text" && c.format != "csv" && c.format != "jsonl") {
    throw ConfigError("format must be text, csv, or jsonl");
  }
}

MinimizeSettings make_minimize(const RunConfig& c) {
  MinimizeSettings s;
  s.resolution = {c.resolution};
  s.refine = c.refine;
  s.refine_shrink = c.refine_shrink;
  s.refine_rounds = c.refine_rounds;
  return s;
}

std::optional<NuMeasure> resolve_nu(const RunConfig& c, const UnivariateSample& base) {
  if (c.nu == "normal") return NuMeasure::normal(c.nu_mean, c.nu_sd);
  if (c.nu != "auto") throw ConfigError("nu must be 'auto' or 'normal'");
  try {
    return auto_nu(base, c.nu_pad);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("auto nu: ") + e.what());
  }
}

struct TestRow {
  double tau;
  TestResult result;
};

std::string theta_text(const std::vector<std::vector<double>>& theta) {
  std::string s;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    if (k) s += ' ';
    s += '(';
    for (std::size_t j = 0; j < theta[k].size(); ++j) {
      if (j) s += ',';
      s += fmt("%.6g", theta[k][j]);
    }
    s += ')';
  }
  return s;
}

void write_test_report(std::ostream& out, const char* command, const RunConfig& config,
                       const std::vector<TestRow>& rows) {
  const json config_echo = to_json(config);
  if (config.format == "jsonl") {
    out << json{{"command", command}, {"config", config_echo}}.dump() << '\n';
    for (const auto& row : rows) {
      json line{{"tau", row.tau},
                {"statistic", row.result.statistic},
                {"t_n", row.result.t_n},
                {"critical_value", row.result.critical_value},
                {"p_value", row.result.p_value},
                {"reject", row.result.reject},
                {"theta_hat", row.result.theta_hat},
                {"warnings", row.result.diagnostics}};
      out << line.dump() << '\n';
    }
    return;
  }
  if (config.format == "csv") {
    out << "# config " << config_echo.dump() << '\n';
    out << "tau,statistic,critical_value,p_value,reject,theta_hat\n";
    for (const auto& row : rows) {
      std::string theta;
      for (std::size_t k = 0; k < row.result.theta_hat.size(); ++k) {
        for (std::size_t j = 0; j < row.result.theta_hat[k].size(); ++j) {
          if (!theta.empty()) theta += ';';
          theta += fmt("%.17g", row.result.theta_hat[k][j]);
        }
      }
      out << fmt("%.17g", row.tau) << ',' << fmt("%.17g", row.result.statistic) << ','
          << fmt("%.17g", row.result.critical_value) << ','
          << fmt("%.17g", row.result.p_value) << ','
          << (row.result.reject ? "true" : "false") << ',' << theta << '\n';
    }
    return;
  }
  out << "# cdftest " << command << '\n';
  out << "# config " << config_echo.dump() << '\n';
  for (const auto& row : rows) {
    for (const auto& warning : row.result.diagnostics) {
      out << "# warning tau=" << fmt("%.6g", row.tau) << ": " << warning << '\n';
    }
  }
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %-12s %-12s %-8s %-14s %s\n", "tau",
                "statistic", "critical", "p_value", "decision", "theta_hat");
  out << line;
  for (const auto& row : rows) {
    std::snprintf(line, sizeof line, "%-8.4g %-12.6g %-12.6g %-8.4g %-14s %s\n",
                  row.tau, row.result.statistic, row.result.critical_value,
                  row.result.p_value,
                  row.result.reject ? "reject" : "fail-to-reject",
                  theta_text(row.result.theta_hat).c_str());
    out << line;
  }
}

Pairing parse_pairing(const std::string& p) {
  if (p == "independent") return Pairing::independent;
  if (p == "matched") return Pairing::matched;
  throw ConfigError("pairing must be 'independent' or 'matched'");
}

}  // namespace

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  RunConfig c;
  apply_json(c, j);
  return c;
}

std::string config_json(const RunConfig& config) { return to_json(config).dump(); }

int cmd_test(const RunConfig& config, std::ostream& out) {
  check_common(config);
  const Pairing pairing = parse_pairing(config.pairing);
  const TransformFamily family = make_family(config, config.family);
  const ParamBox box = make_box(config.box_lower, config.box_upper, family.dims());

  TestConfig tc;
  tc.alpha = config.alpha;
  tc.n_boot = config.n_boot;
  tc.m_nodes = config.m_nodes;
  tc.seed = config.seed;
  tc.pairing = pairing;
  tc.minimize = make_minimize(config);
  tc.threads = config.threads;

  std::vector<TestRow> rows;
  if (pairing == Pairing::matched) {
    if (config.paired_path.empty()) {
      throw ConfigError("matched pairing requires --paired <csv>");
    }
    const std::vector<std::string> cols{config.x_col, config.y_col};
    auto data = read_numeric_columns(config.paired_path, cols);
    const PairedSample xy(std::move(data[0]), std::move(data[1]));
    tc.nu = resolve_nu(config, xy.x_sample());
    for (double tau : config.taus) {
      tc.tau = tau;
      rows.push_back({tau, two_sample_test(xy, family, box, tc)});
    }
  } else {
    if (config.x_path.empty() || config.y_paths.size() != 1) {
      throw ConfigError("independent test requires --x <csv> and exactly one --y <csv>");
    }
    const UnivariateSample x(read_numeric_column(config.x_path, config.x_col));
    const UnivariateSample y(read_numeric_column(config.y_paths[0], config.y_col));
    tc.nu = resolve_nu(config, x);
    for (double tau : config.taus) {
      tc.tau = tau;
      rows.push_back({tau, two_sample_test(x, y, family, box, tc)});
    }
  }
  write_test_report(out, "test", config, rows);
  return kExitOk;
}

int cmd_ktest(const RunConfig& config, std::ostream& out) {
  check_common(config);
  if (parse_pairing(config.pairing) != Pairing::independent) {
    throw ConfigError("ktest supports independent sampling only");
  }
  if (config.x_path.empty()) throw ConfigError("ktest requires --x <csv>");

  std::vector<ComparisonSpec> specs = config.comparisons;
  if (specs.empty()) {
    for (const auto& path : config.y_paths) specs.push_back(ComparisonSpec{path, "", "", {}, {}});
  }
  if (specs.empty()) {
    throw ConfigError("ktest requires at least one comparison (--y or config 'comparisons')");
  }

  const UnivariateSample base(read_numeric_column(config.x_path, config.x_col));

  std::vector<UnivariateSample> comps;
  std::vector<TransformFamily> families;
  std::vector<ParamBox> boxes;
  for (const auto& spec : specs) {
    const std::string col = spec.col.empty() ? config.y_col : spec.col;
    comps.emplace_back(read_numeric_column(spec.path, col));
    families.push_back(
        make_family(config, spec.family.empty() ? config.family : spec.family));
    const auto& lower = spec.box_lower.empty() ? config.box_lower : spec.box_lower;
    const auto& upper = spec.box_upper.empty() ? config.box_upper : spec.box_upper;
    boxes.push_back(make_box(lower, upper, families.back().dims()));
  }
  const MultiSampleSet data(base, std::move(comps));

  TestConfig tc;
  tc.alpha = config.alpha;
  tc.n_boot = config.n_boot;
  tc.m_nodes = config.m_nodes;
  tc.seed = config.seed;
  tc.pairing = Pairing::independent;
  tc.minimize = make_minimize(config);
  tc.threads = config.threads;
  tc.nu = resolve_nu(config, data.base);

  std::vector<TestRow> rows;
  for (double tau : config.taus) {
    tc.tau = tau;
    rows.push_back({tau, k_sample_test(data, families, boxes, tc)});
  }
  write_test_report(out, "ktest", config, rows);
  return kExitOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  check_common(config);
  if (config.n_mc < 1) throw ConfigError("n_mc must be >= 1");

  DgpFamily family;
  if (config.dgp_family == "continuous") family = DgpFamily::continuous;
  else if (config.dgp_family == "discrete") family = DgpFamily::discrete;
  else throw ConfigError("dgp_family must be 'continuous' or 'discrete'");
  const Pairing pairing = parse_pairing(config.pairing);

  StudyPlan plan;
  plan.tau_list = config.taus;
  plan.n_mc = config.n_mc;
  plan.alpha = config.alpha;
  plan.seed = config.seed;
  plan.family = make_family(config, config.family);
  plan.minimize = make_minimize(config);
  plan.m_nodes = config.m_nodes;
  plan.threads = config.threads;
  if (config.nu == "normal") {
    plan.nu = NuMeasure::normal(config.nu_mean, config.nu_sd);
  } else if (config.nu != "auto") {
    throw ConfigError("nu must be 'auto' or 'normal'");
  }
  if (!config.box_lower.empty() || !config.box_upper.empty()) {
    plan.box = make_box(config.box_lower, config.box_upper, plan.family.dims());
  } else if (plan.family.dims() != 2) {
    throw ConfigError("box_lower/box_upper are required for this family");
  }

  for (int id : config.dgps) {
    for (int a : config.n1_list) {
      for (int b : config.n2_list) {
        if (pairing == Pairing::matched && a != b) continue;  // paper cells only
        DgpSpec spec{family, id, pairing, a, b};
        try {
          spec.validate();
        } catch (const std::invalid_argument& e) {
          throw ConfigError(e.what());
        }
        plan.dgps.push_back(spec);
      }
    }
  }
  if (plan.dgps.empty()) throw ConfigError("no valid design cells");

  const RateTable table = warp_speed_study(plan);

  if (config.format == "jsonl") {
    out << json{{"command", "simulate"}, {"config", to_json(config)}}.dump() << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      out << json{{"dgp_family", config.dgp_family},
                  {"pairing", config.pairing},
                  {"dgp", row.dgp_id},
                  {"n1", row.n1},
                  {"n2", row.n2},
                  {"taus", table.taus},
                  {"rates", table.rates[r]}}
                 .dump()
          << '\n';
    }
  } else if (config.format == "csv") {
    out << "# config " << to_json(config).dump() << '\n';
    out << format_rate_table_csv(table);
  } else {
    out << "# cdftest simulate\n";
    out << "# config " << to_json(config).dump() << '\n';
    out << format_rate_table_text(table);
  }
  return kExitOk;
}

int cmd_gen(const RunConfig& config, std::ostream& out) {
  if (config.out.empty()) throw ConfigError("gen requires --out <path-prefix>");

  DgpFamily family;
  if (config.dgp_family == "continuous") family = DgpFamily::continuous;
  else if (config.dgp_family == "discrete") family = DgpFamily::discrete;
  else throw ConfigError("dgp_family must be 'continuous' or 'discrete'");

  DgpSpec spec{family, config.dgp, parse_pairing(config.pairing), config.n1, config.n2};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  RandomStream rng(config.seed, 0);
  const GeneratedData data = generate(spec, rng);

  out << "# cdftest gen\n";
  out << "# config " << to_json(config).dump() << '\n';
  if (spec.pairing == Pairing::matched) {
    const std::string path = config.out + "_pairs.csv";
    write_two_column_csv(path, config.x_col, config.y_col, data.pairs->pairs());
    out << "wrote " << path << " (" << data.pairs->size() << " rows)\n";
  } else {
    const std::string x_path = config.out + "_x.csv";
    const std::string y_path = config.out + "_y.csv";
    write_single_column_csv(x_path, config.x_col, data.x.sorted());
    write_single_column_csv(y_path, config.y_col, data.y.sorted());
    out << "wrote " << x_path << " (" << data.x.size() << " rows)\n";
    out << "wrote " << y_path << " (" << data.y.size() << " rows)\n";
  }
  return kExitOk;
}

int run_command(const std::string& command, const RunConfig& config) {
  try {
    std::ostringstream report;
    int code;
    if (command == "test") code = cmd_test(config, report);
    else if (command == "ktest") code = cmd_ktest(config, report);
    else if (command == "simulate") code = cmd_simulate(config, report);
    else if (command == "gen") code = cmd_gen(config, report);
    else throw ConfigError("unknown command: " + command);

    const bool redirect = command != "gen" && !config.out.empty();
    if (redirect) {
      std::ofstream f(config.out, std::ios::binary);
      if (!f) throw DataError("cannot open output file: " + config.out);
      f << report.str();
    } else {
      std::cout << report.str();
    }
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace cdftest::cli

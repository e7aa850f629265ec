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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "cdftest/hypothesis_test.hpp"
#include "cdftest/normal.hpp"
#include "cdftest/simulation.hpp"

namespace py = pybind11;

namespace {

using namespace cdftest;

TestConfig build_config(double tau, double alpha, int n_boot, int m_nodes,
                        std::uint64_t seed, int resolution,
                        std::optional<std::pair<double, double>> nu,
                        unsigned threads, Pairing pairing) {
  TestConfig cfg;
  cfg.tau = tau;
  cfg.alpha = alpha;
  cfg.n_boot = n_boot;
  cfg.m_nodes = m_nodes;
  cfg.seed = seed;
  cfg.minimize.resolution = {resolution};
  cfg.threads = threads;
  cfg.pairing = pairing;
  if (nu) cfg.nu = NuMeasure::normal(nu->first, nu->second);
  return cfg;
}

TestResult py_two_sample_test(const std::vector<double>& x, const std::vector<double>& y,
                              const std::string& family,
                              const std::vector<double>& box_lower,
                              const std::vector<double>& box_upper, double tau,
                              double alpha, int n_boot, int m_nodes,
                              std::uint64_t seed, int resolution,
                              std::optional<std::pair<double, double>> nu,
                              unsigned threads) {
  const UnivariateSample xs(x);
  const UnivariateSample ys(y);
  const TransformFamily fam = builtin_family(family);
  const ParamBox box(box_lower, box_upper);
  const TestConfig cfg = build_config(tau, alpha, n_boot, m_nodes, seed, resolution,
                                      nu, threads, Pairing::independent);
  return two_sample_test(xs, ys, fam, box, cfg);
}

TestResult py_paired_test(const std::vector<double>& x, const std::vector<double>& y,
                          const std::string& family,
                          const std::vector<double>& box_lower,
                          const std::vector<double>& box_upper, double tau,
                          double alpha, int n_boot, int m_nodes, std::uint64_t seed,
                          int resolution, std::optional<std::pair<double, double>> nu,
                          unsigned threads) {
  const PairedSample xy(x, y);
  const TransformFamily fam = builtin_family(family);
  const ParamBox box(box_lower, box_upper);
  const TestConfig cfg = build_config(tau, alpha, n_boot, m_nodes, seed, resolution,
                                      nu, threads, Pairing::matched);
  return two_sample_test(xy, fam, box, cfg);
}

TestResult py_k_sample_test(const std::vector<double>& x,
                            const std::vector<std::vector<double>>& ys,
                            const std::string& family,
                            const std::vector<double>& box_lower,
                            const std::vector<double>& box_upper, double tau,
                            double alpha, int n_boot, int m_nodes,
                            std::uint64_t seed, int resolution,
                            std::optional<std::pair<double, double>> nu,
                            unsigned threads) {
  std::vector<UnivariateSample> comps;
  comps.reserve(ys.size());
  for (const auto& y : ys) comps.emplace_back(y);
  const MultiSampleSet data(UnivariateSample(x), std::move(comps));
  const TransformFamily fam = builtin_family(family);
  const ParamBox box(box_lower, box_upper);
  std::vector<TransformFamily> families(data.k(), fam);
  std::vector<ParamBox> boxes(data.k(), box);
  const TestConfig cfg = build_config(tau, alpha, n_boot, m_nodes, seed, resolution,
                                      nu, threads, Pairing::independent);
  return k_sample_test(data, families, boxes, cfg);
}

py::dict py_simulate_rates(const std::string& dgp_family, const std::vector<int>& dgps,
                           int n1, int n2, const std::string& pairing,
                           const std::vector<double>& taus, int n_mc, double alpha,
                           std::uint64_t seed, int m_nodes, int resolution,
                           unsigned threads) {
  StudyPlan plan;
  const DgpFamily fam = dgp_family == "discrete" ? DgpFamily::discrete
                                                 : DgpFamily::continuous;
  const Pairing p = pairing == "matched" ? Pairing::matched : Pairing::independent;
  for (int id : dgps) plan.dgps.push_back(DgpSpec{fam, id, p, n1, n2});
  plan.tau_list = taus;
  plan.n_mc = n_mc;
  plan.alpha = alpha;
  plan.seed = seed;
  plan.m_nodes = m_nodes;
  plan.minimize.resolution = {resolution};
  plan.threads = threads;
  const RateTable table = warp_speed_study(plan);

  py::dict out;
  out["taus"] = table.taus;
  py::list rows;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    py::dict row;
    row["dgp"] = table.rows[r].dgp_id;
    row["n1"] = table.rows[r].n1;
    row["n2"] = table.rows[r].n2;
    row["rates"] = table.rates[r];
    rows.append(row);
  }
  out["rows"] = rows;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimum-distance tests of parametric transformations on CDFs";

  py::class_<TestResult>(m, "TestResult")
      .def_readonly("statistic", &TestResult::statistic)
      .def_readonly("l_value", &TestResult::l_value)
      .def_readonly("theta_hat", &TestResult::theta_hat)
      .def_readonly("t_n", &TestResult::t_n)
      .def_readonly("boot_stats", &TestResult::boot_stats)
      .def_readonly("critical_value", &TestResult::critical_value)
      .def_readonly("p_value", &TestResult::p_value)
      .def_readonly("reject", &TestResult::reject)
      .def_readonly("warnings", &TestResult::diagnostics)
      .def("__repr__", [](const TestResult& r) {
        return "<TestResult statistic=" + std::to_string(r.statistic) +
               " p_value=" + std::to_string(r.p_value) +
               (r.reject ? " reject>" : " fail-to-reject>");
      });

  m.def("two_sample_test", &py_two_sample_test, py::arg("x"), py::arg("y"),
        py::arg("family") = "location-scale", py::arg("box_lower"),
        py::arg("box_upper"), py::arg("tau"), py::arg("alpha") = 0.05,
        py::arg("n_boot") = 1000, py::arg("m_nodes") = 512, py::arg("seed") = 0,
        py::arg("resolution") = 41, py::arg("nu") = py::none(),
        py::arg("threads") = 0,
        "Independent two-sample transformation test; nu is None (auto) or a "
        "(mean, sd) pair.");

  m.def("paired_test", &py_paired_test, py::arg("x"), py::arg("y"),
        py::arg("family") = "location-scale", py::arg("box_lower"),
        py::arg("box_upper"), py::arg("tau"), py::arg("alpha") = 0.05,
        py::arg("n_boot") = 1000, py::arg("m_nodes") = 512, py::arg("seed") = 0,
        py::arg("resolution") = 41, py::arg("nu") = py::none(),
        py::arg("threads") = 0,
        "Matched-pairs transformation test on aligned observations.");

  m.def("k_sample_test", &py_k_sample_test, py::arg("x"), py::arg("ys"),
        py::arg("family") = "location-scale", py::arg("box_lower"),
        py::arg("box_upper"), py::arg("tau"), py::arg("alpha") = 0.05,
        py::arg("n_boot") = 1000, py::arg("m_nodes") = 512, py::arg("seed") = 0,
        py::arg("resolution") = 41, py::arg("nu") = py::none(),
        py::arg("threads") = 0,
        "K-sample transformation test with a shared family and box.");

  m.def("simulate_rates", &py_simulate_rates, py::arg("dgp_family"),
        py::arg("dgps"), py::arg("n1"), py::arg("n2"),
        py::arg("pairing") = "independent", py::arg("taus"), py::arg("n_mc"),
        py::arg("alpha") = 0.05, py::arg("seed") = 0, py::arg("m_nodes") = 256,
        py::arg("resolution") = 41, py::arg("threads") = 0,
        "Warp-speed rejection-rate study; returns {'taus': [...], 'rows': [...]}.");

  m.def("normal_quantile", &normal_quantile, py::arg("p"),
        "Standard normal quantile.");
  m.def("normal_cdf", &normal_cdf, py::arg("x"), "Standard normal CDF.");
  m.def(
      "ecdf",
      [](const std::vector<double>& values, double x) {
        return UnivariateSample(values).ecdf(x);
      },
      py::arg("values"), py::arg("x"),
      "Empirical CDF of `values` evaluated at x.");
}

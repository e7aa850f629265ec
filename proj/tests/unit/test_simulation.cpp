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

#include "cdftest/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "../support/oracles.hpp"
#include "cdftest/normal.hpp"

using namespace cdftest;

TEST_CASE("dgp spec validation") {
  DgpSpec bad{DgpFamily::continuous, 4, Pairing::independent, 10, 10};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  DgpSpec unequal{DgpFamily::continuous, 0, Pairing::matched, 10, 12};
  CHECK_THROWS_AS(unequal.validate(), std::invalid_argument);
  DgpSpec ok{DgpFamily::discrete, 3, Pairing::matched, 10, 10};
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("cholesky factor of the simulation matrix") {
  const auto l = cholesky_lower({{1.0, 0.5}, {0.5, 1.0}});
  CHECK(l[0][0] == 1.0);
  CHECK(l[1][0] == 0.5);
  CHECK(l[1][1] == doctest::Approx(std::sqrt(0.75)));
  CHECK_THROWS_AS(cholesky_lower({{1.0, 2.0}, {2.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(cholesky_lower({{1.0, 0.5}, {0.4, 1.0}}), std::invalid_argument);
}

TEST_CASE("identity copula gives near-independent coordinates") {
  RandomStream rng(10, 0);
  const std::vector<QuantileFn> marginals{
      [](double u) { return normal_quantile(u); },
      [](double u) { return normal_quantile(u); }};
  const auto rows = gaussian_copula_sample({{1.0, 0.0}, {0.0, 1.0}}, marginals, 5000, rng);
  std::vector<double> a;
  std::vector<double> b;
  for (const auto& r : rows) {
    a.push_back(r[0]);
    b.push_back(r[1]);
  }
  CHECK(std::fabs(testsupport::correlation(a, b)) < 0.05);
}

TEST_CASE("sigma2 copula reproduces correlation 0.5") {
  RandomStream rng(11, 0);
  const std::vector<QuantileFn> marginals{
      [](double u) { return normal_quantile(u); },
      [](double u) { return normal_quantile(u); }};
  const auto rows = gaussian_copula_sample({{1.0, 0.5}, {0.5, 1.0}}, marginals, 10000, rng);
  std::vector<double> a;
  std::vector<double> b;
  for (const auto& r : rows) {
    a.push_back(r[0]);
    b.push_back(r[1]);
  }
  CHECK(testsupport::correlation(a, b) == doctest::Approx(0.5).epsilon(0.06));
}

TEST_CASE("copula marginals pass a coarse KS check") {
  RandomStream rng(12, 0);
  const std::vector<QuantileFn> marginals{
      [](double u) { return normal_quantile(u); },
      [](double u) { return normal_quantile(u); },
      [](double u) { return -3.0 + 6.0 * u; }};
  const std::vector<std::vector<double>> sigma3{
      {1.0, 0.5, 0.5}, {0.5, 1.0, 0.0}, {0.5, 0.0, 1.0}};
  const auto rows = gaussian_copula_sample(sigma3, marginals, 5000, rng);
  std::vector<double> c0;
  std::vector<double> c2;
  for (const auto& r : rows) {
    c0.push_back(r[0]);
    c2.push_back(r[2]);
    CHECK(r[2] >= -3.0);
    CHECK(r[2] <= 3.0);
  }
  CHECK(testsupport::ks_distance(c0, cdftest::normal_cdf) < 0.05);
  CHECK(testsupport::ks_distance(c2, [](double v) {
          return std::clamp((v + 3.0) / 6.0, 0.0, 1.0);
        }) < 0.05);
}

TEST_CASE("copula requires a unit diagonal and matching quantile count") {
  RandomStream rng(1, 0);
  const std::vector<QuantileFn> one{[](double u) { return u; }};
  CHECK_THROWS_AS(gaussian_copula_sample({{2.0}}, one, 10, rng), std::invalid_argument);
  CHECK_THROWS_AS(gaussian_copula_sample({{1.0, 0.0}, {0.0, 1.0}}, one, 10, rng),
                  std::invalid_argument);
}

TEST_CASE("continuous null design has a standard normal comparison sample") {
  DgpSpec spec{DgpFamily::continuous, 0, Pairing::independent, 100, 5000};
  RandomStream rng(3, 0);
  const auto data = generate(spec, rng);
  REQUIRE(data.y.size() == 5000);
  const std::vector<double> y(data.y.sorted().begin(), data.y.sorted().end());
  CHECK(testsupport::ks_distance(y, cdftest::normal_cdf) < 0.03);
}

TEST_CASE("discrete designs stay on the 1..10 lattice") {
  DgpSpec spec{DgpFamily::discrete, 0, Pairing::independent, 500, 500};
  RandomStream rng(4, 0);
  const auto data = generate(spec, rng);
  for (double v : data.y.sorted()) {
    CHECK(v >= 1.0);
    CHECK(v <= 10.0);
    CHECK(v == std::round(v));
  }
  for (double v : data.x.sorted()) CHECK(v == std::round(v));
}

TEST_CASE("continuous dgp 3 is supported on [-3, 3]") {
  DgpSpec spec{DgpFamily::continuous, 3, Pairing::independent, 50, 2000};
  RandomStream rng(5, 0);
  const auto data = generate(spec, rng);
  CHECK(data.y.sorted().front() >= -3.0);
  CHECK(data.y.sorted().back() <= 3.0);
}

TEST_CASE("matched designs produce aligned pairs") {
  DgpSpec spec{DgpFamily::continuous, 1, Pairing::matched, 200, 200};
  RandomStream rng(6, 0);
  const auto data = generate(spec, rng);
  REQUIRE(data.pairs.has_value());
  CHECK(data.pairs->size() == 200);
  CHECK(data.x.size() == 200);
  CHECK(data.y.size() == 200);
  // X coordinate correlates with Y through the copula (rho = 0.5 with Z)
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [a, b] : data.pairs->pairs()) {
    xs.push_back(a);
    ys.push_back(b);
  }
  CHECK(testsupport::correlation(xs, ys) > 0.1);
}

TEST_CASE("single-replication study yields a 0/1 rate") {
  StudyPlan plan;
  plan.dgps = {DgpSpec{DgpFamily::continuous, 0, Pairing::independent, 16, 16}};
  plan.tau_list = {0.1};
  plan.n_mc = 1;
  plan.seed = 9;
  plan.m_nodes = 8;
  plan.minimize.resolution = {5, 5};
  const auto table = warp_speed_study(plan);
  REQUIRE(table.rates.size() == 1);
  const double rate = table.rates[0][0];
  CHECK((rate == 0.0 || rate == 1.0));
}

TEST_CASE("warp-speed tables are reproducible and thread-invariant") {
  StudyPlan plan;
  plan.dgps = {DgpSpec{DgpFamily::continuous, 0, Pairing::independent, 24, 24},
               DgpSpec{DgpFamily::discrete, 2, Pairing::matched, 20, 20}};
  plan.tau_list = {0.1, 0.2};
  plan.n_mc = 12;
  plan.seed = 31;
  plan.m_nodes = 8;
  plan.minimize.resolution = {5, 5};

  plan.threads = 1;
  const auto a = warp_speed_study(plan);
  plan.threads = 2;
  const auto b = warp_speed_study(plan);
  CHECK(a.rates == b.rates);

  const auto c = warp_speed_study(plan);
  CHECK(b.rates == c.rates);
}

TEST_CASE("table renderings carry the paper layout") {
  RateTable table;
  table.rows = {DgpSpec{DgpFamily::continuous, 0, Pairing::independent, 500, 500}};
  table.taus = {0.07, 0.08};
  table.rates = {{0.011, 0.012}};
  const auto text = format_rate_table_text(table);
  CHECK(text.find("DGP") != std::string::npos);
  CHECK(text.find("(0)") != std::string::npos);
  CHECK(text.find("0.011") != std::string::npos);
  const auto csv = format_rate_table_csv(table);
  CHECK(csv.find("family,pairing,dgp,n1,n2,tau=0.07,tau=0.08") != std::string::npos);
  CHECK(csv.find("continuous,independent,0,500,500,0.011,0.012") != std::string::npos);
}

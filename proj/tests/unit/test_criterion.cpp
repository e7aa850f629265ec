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

#include "cdftest/criterion.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "../support/oracles.hpp"
#include "cdftest/normal.hpp"
#include "cdftest/random.hpp"
#include "cdftest/simulation.hpp"

using namespace cdftest;

namespace {

std::vector<double> random_values(RandomStream& rng, int n, double lo, double hi) {
  std::vector<double> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * rng.next_double());
  return v;
}

}  // namespace

TEST_CASE("make_grid quantile nodes") {
  const auto g1 = make_grid(NuMeasure::normal(0.0, 1.0), 1);
  REQUIRE(g1.nodes.size() == 1);
  CHECK(g1.nodes[0] == 0.0);

  const auto g2 = make_grid(NuMeasure::normal(0.0, 1.0), 2);
  REQUIRE(g2.nodes.size() == 2);
  CHECK(g2.nodes[0] == doctest::Approx(-0.674490).epsilon(1e-5));
  CHECK(g2.nodes[1] == doctest::Approx(0.674490).epsilon(1e-5));
  CHECK(g2.nodes[0] ==
        doctest::Approx(testsupport::bisect_normal_quantile(0.25)).epsilon(1e-9));

  const auto g3 = make_grid(NuMeasure::normal(5.0, 5.0), 3);
  REQUIRE(g3.nodes.size() == 3);
  CHECK(g3.nodes[1] == 5.0);
}

TEST_CASE("normal nu nodes are symmetric about the mean and increasing") {
  const auto g = make_grid(NuMeasure::normal(2.0, 1.5), 64);
  REQUIRE(g.nodes.size() == 64);
  for (std::size_t j = 1; j < g.nodes.size(); ++j) CHECK(g.nodes[j] > g.nodes[j - 1]);
  for (std::size_t j = 0; j < g.nodes.size(); ++j) {
    const double mirrored = g.nodes[g.nodes.size() - 1 - j];
    CHECK(g.nodes[j] - 2.0 == doctest::Approx(-(mirrored - 2.0)).epsilon(1e-9));
  }
  CHECK(g.weight() == doctest::Approx(1.0 / 64.0));
}

TEST_CASE("explicit nu passes straight through") {
  const auto nu = NuMeasure::from_nodes({-1.0, 0.25, 3.0});
  const auto g = make_grid(nu, 99);
  CHECK(g.nodes == std::vector<double>{-1.0, 0.25, 3.0});
  CHECK_THROWS_AS(NuMeasure::from_nodes({1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(NuMeasure::from_nodes({}), std::invalid_argument);
  CHECK_THROWS_AS(NuMeasure::normal(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("objective on the hand-enumerated two-point instance") {
  const UnivariateSample x({0.0, 2.0});
  const UnivariateSample y({1.0, 3.0});
  const auto family = builtin_family(FamilyKind::location_scale);
  const CdfDiffField field(x, std::span(&y, 1), std::span(&family, 1));
  const QuadratureGrid grid{{0.0, 2.0}};
  const ParamBox box({-1.0, 0.5}, {1.0, 2.0});

  const std::vector<std::vector<double>> at_shift{{-1.0, 1.0}};
  CHECK(objective(field, at_shift, grid, std::span(&box, 1)) == 0.0);

  const std::vector<std::vector<double>> at_identity{{0.0, 1.0}};
  CHECK(objective(field, at_identity, grid, std::span(&box, 1)) == 0.25);

  const std::vector<std::vector<double>> outside{{5.0, 1.0}};
  CHECK_THROWS_AS(objective(field, outside, grid, std::span(&box, 1)),
                  std::domain_error);
}

TEST_CASE("objective vanishes for identical samples at the identity point") {
  RandomStream rng(21, 0);
  const UnivariateSample x(random_values(rng, 40, -2.0, 2.0));
  const UnivariateSample y(std::vector<double>(x.sorted().begin(), x.sorted().end()));
  const auto family = builtin_family(FamilyKind::location_scale);
  const CdfDiffField field(x, std::span(&y, 1), std::span(&family, 1));
  const auto grid = make_grid(NuMeasure::normal(0.0, 1.0), 33);
  const ParamBox box({-1.0, 0.5}, {1.0, 2.0});
  const std::vector<std::vector<double>> identity{{0.0, 1.0}};
  CHECK(objective(field, identity, grid, std::span(&box, 1)) == 0.0);
}

TEST_CASE("field values stay inside [-1-2c, 1+2c]") {
  RandomStream rng(4, 9);
  const UnivariateSample x(random_values(rng, 25, -1.0, 1.0));
  const UnivariateSample y(random_values(rng, 30, -1.0, 1.0));
  const UnivariateSample xb(random_values(rng, 25, -1.0, 1.0));
  const UnivariateSample yb(random_values(rng, 30, -1.0, 1.0));
  const auto family = builtin_family(FamilyKind::location_scale);
  const double c = 1.7;
  const CdfDiffField field(x, std::span(&y, 1), std::span(&family, 1), c, xb,
                           std::span(&yb, 1));
  const std::vector<double> theta{0.1, 1.2};
  for (double t = -3.0; t <= 3.0; t += 0.1) {
    const double v = field.value(0, t, theta);
    CHECK(v <= 1.0 + 2.0 * c);
    CHECK(v >= -1.0 - 2.0 * c);
  }
}

TEST_CASE("minimize with a degenerate single-point box") {
  const UnivariateSample x({0.0, 1.0, 2.0});
  const UnivariateSample y({0.5, 1.5, 2.5});
  const auto family = builtin_family(FamilyKind::location);
  const CdfDiffField field(x, std::span(&y, 1), std::span(&family, 1));
  const QuadratureGrid grid{{0.0, 1.0, 2.0}};
  const ParamBox box({-0.5}, {-0.5});
  MinimizeSettings settings;
  settings.resolution = {7};
  const auto res = minimize(field, std::span(&box, 1), grid, settings);
  REQUIRE(res.theta.size() == 1);
  CHECK(res.theta[0][0] == -0.5);
  const std::vector<std::vector<double>> t{{-0.5}};
  CHECK(res.value == objective(field, t, grid, std::span(&box, 1)));
}

TEST_CASE("grid-only minimize equals exhaustive enumeration exactly") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    RandomStream rng(seed, 100);
    const int n1 = 3 + static_cast<int>(rng.next_index(6));
    const int n2 = 3 + static_cast<int>(rng.next_index(6));
    const UnivariateSample x(random_values(rng, n1, -2.0, 2.0));
    const UnivariateSample y(random_values(rng, n2, -2.5, 2.5));
    auto nodes = random_values(rng, 5, -2.0, 2.0);
    std::sort(nodes.begin(), nodes.end());
    const QuadratureGrid grid{nodes};

    const auto family = builtin_family(FamilyKind::location_scale);
    const ParamBox box({-0.5, 0.6}, {0.5, 1.6});
    const CdfDiffField field(x, std::span(&y, 1), std::span(&family, 1));

    MinimizeSettings settings;
    settings.resolution = {5, 4};
    const auto got = minimize(field, std::span(&box, 1), grid, settings);

    testsupport::bruteforce::Component comp;
    comp.y.assign(y.sorted().begin(), y.sorted().end());
    comp.g = [](double v, const std::vector<double>& t) { return (v - t[0]) / t[1]; };
    comp.lower = box.lower;
    comp.upper = box.upper;
    comp.resolution = {5, 4};
    const auto want = testsupport::bruteforce::minimize(
        {x.sorted().begin(), x.sorted().end()}, {}, {comp}, 0.0, nodes);

    CHECK(got.value == want.value);
    CHECK(got.theta[0] == want.theta[0]);
  }
}

TEST_CASE("K joint minimum is the sum of per-component minima") {
  RandomStream rng(77, 0);
  const UnivariateSample x(random_values(rng, 12, -1.0, 1.0));
  const UnivariateSample y1(random_values(rng, 9, -1.5, 1.5));
  const UnivariateSample y2(random_values(rng, 14, -1.0, 2.0));
  auto nodes = random_values(rng, 6, -1.0, 1.0);
  std::sort(nodes.begin(), nodes.end());
  const QuadratureGrid grid{nodes};

  const std::vector<TransformFamily> families{
      builtin_family(FamilyKind::location_scale),
      builtin_family(FamilyKind::location_scale)};
  const std::vector<ParamBox> boxes{ParamBox({-0.4, 0.7}, {0.4, 1.4}),
                                    ParamBox({-0.3, 0.8}, {0.6, 1.3})};
  MinimizeSettings settings;
  settings.resolution = {4, 4};

  const std::vector<UnivariateSample> both{y1, y2};
  const CdfDiffField joint(x, both, families);
  const auto joint_min = minimize(joint, boxes, grid, settings);

  const CdfDiffField f1(x, std::span(&both[0], 1), std::span(&families[0], 1));
  const CdfDiffField f2(x, std::span(&both[1], 1), std::span(&families[1], 1));
  const auto m1 = minimize(f1, std::span(&boxes[0], 1), grid, settings);
  const auto m2 = minimize(f2, std::span(&boxes[1], 1), grid, settings);

  CHECK(joint_min.value == m1.value + m2.value);
  CHECK(joint_min.theta[0] == m1.theta[0]);
  CHECK(joint_min.theta[1] == m2.theta[0]);
}

TEST_CASE("identical duplicated comparisons double the criterion") {
  RandomStream rng(31, 0);
  const UnivariateSample x(random_values(rng, 10, -1.0, 1.0));
  const UnivariateSample y(random_values(rng, 10, -1.0, 1.0));
  auto nodes = random_values(rng, 4, -1.0, 1.0);
  std::sort(nodes.begin(), nodes.end());
  const QuadratureGrid grid{nodes};

  const std::vector<TransformFamily> families{
      builtin_family(FamilyKind::location_scale),
      builtin_family(FamilyKind::location_scale)};
  const std::vector<ParamBox> boxes{ParamBox({-0.4, 0.7}, {0.4, 1.4}),
                                    ParamBox({-0.4, 0.7}, {0.4, 1.4})};
  MinimizeSettings settings;
  settings.resolution = {5, 5};

  const std::vector<UnivariateSample> twice{y, y};
  const CdfDiffField joint(x, twice, families);
  const auto two = minimize(joint, boxes, grid, settings);

  const CdfDiffField single(x, std::span(&twice[0], 1), std::span(&families[0], 1));
  const auto one = minimize(single, std::span(&boxes[0], 1), grid, settings);
  CHECK(two.value == 2.0 * one.value);
}

TEST_CASE("objective and criterion are nonnegative on random perturbed instances") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    RandomStream rng(seed, 900);
    const UnivariateSample x(random_values(rng, 10, -2.0, 2.0));
    const UnivariateSample y(random_values(rng, 12, -2.0, 2.0));
    const UnivariateSample xb(random_values(rng, 10, -2.0, 2.0));
    const UnivariateSample yb(random_values(rng, 12, -2.0, 2.0));
    const auto family = builtin_family(FamilyKind::location_scale);
    const ParamBox box({-0.5, 0.6}, {0.5, 1.6});
    const auto grid = make_grid(NuMeasure::normal(0.0, 1.5), 16);
    const double mix = 0.5 + rng.next_double();
    const CdfDiffField field(x, std::span(&y, 1), std::span(&family, 1), mix, xb,
                             std::span(&yb, 1));
    MinimizeSettings settings;
    settings.resolution = {6, 6};
    for (int i = 0; i < 10; ++i) {
      const std::vector<std::vector<double>> theta{
          {-0.5 + rng.next_double(), 0.6 + rng.next_double()}};
      CHECK(objective(field, theta, grid, std::span(&box, 1)) >= 0.0);
    }
    CHECK(minimize(field, std::span(&box, 1), grid, settings).value >= 0.0);
  }
}

TEST_CASE("refinement never increases the criterion") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RandomStream rng(seed, 500);
    const UnivariateSample x(random_values(rng, 20, -2.0, 2.0));
    const UnivariateSample y(random_values(rng, 25, -2.0, 2.0));
    const auto grid = make_grid(NuMeasure::normal(0.0, 1.0), 16);
    const auto family = builtin_family(FamilyKind::location_scale);
    const ParamBox box({-0.5, 0.6}, {0.5, 1.6});
    const CdfDiffField field(x, std::span(&y, 1), std::span(&family, 1));

    MinimizeSettings coarse;
    coarse.resolution = {7, 7};
    const auto base = minimize(field, std::span(&box, 1), grid, coarse);

    MinimizeSettings refined = coarse;
    refined.refine = true;
    refined.refine_rounds = 4;
    refined.refine_shrink = 0.5;
    const auto better = minimize(field, std::span(&box, 1), grid, refined);

    CHECK(better.value <= base.value);
    CHECK(box.contains(better.theta[0]));
  }
}

TEST_CASE("numerical second derivative is zero when the bootstrap reproduces the sample") {
  RandomStream rng(8, 0);
  const UnivariateSample x(random_values(rng, 15, -1.0, 1.0));
  const UnivariateSample y(random_values(rng, 18, -1.0, 1.0));
  const UnivariateSample x_same(std::vector<double>(x.sorted().begin(), x.sorted().end()));
  const UnivariateSample y_same(std::vector<double>(y.sorted().begin(), y.sorted().end()));
  const auto family = builtin_family(FamilyKind::location_scale);
  const auto grid = make_grid(NuMeasure::normal(0.0, 1.0), 12);
  const ParamBox box({-0.4, 0.7}, {0.4, 1.4});
  MinimizeSettings settings;
  settings.resolution = {5, 5};

  const CdfDiffField base(x, std::span(&y, 1), std::span(&family, 1));
  const double tau = 0.1;
  const double mix = tau * std::sqrt(7.5);
  const CdfDiffField pert(x, std::span(&y, 1), std::span(&family, 1), mix, x_same,
                          std::span(&y_same, 1));
  CHECK(numerical_second_derivative(base, pert, tau, std::span(&box, 1), grid,
                                    settings) == 0.0);
}

TEST_CASE("numerical second derivative matches its definition re-evaluated") {
  RandomStream rng(9, 1);
  const UnivariateSample x(random_values(rng, 12, -1.0, 1.0));
  const UnivariateSample y(random_values(rng, 12, -1.0, 1.0));
  UnivariateSample xb = resample_iid(x, rng);
  UnivariateSample yb = resample_iid(y, rng);
  const auto family = builtin_family(FamilyKind::location_scale);
  const auto grid = make_grid(NuMeasure::normal(0.0, 1.0), 10);
  const ParamBox box({-0.4, 0.7}, {0.4, 1.4});
  MinimizeSettings settings;
  settings.resolution = {5, 5};

  const double t_n = 6.0;
  const CdfDiffField base(x, std::span(&y, 1), std::span(&family, 1));

  const double tau = 0.15;
  const double tau2 = 2.0 * tau;
  const CdfDiffField pert2(x, std::span(&y, 1), std::span(&family, 1),
                           tau2 * std::sqrt(t_n), xb, std::span(&yb, 1));
  const double got = numerical_second_derivative(base, pert2, tau2,
                                                 std::span(&box, 1), grid, settings);
  const double l_base = minimize(base, std::span(&box, 1), grid, settings).value;
  const double l_pert = minimize(pert2, std::span(&box, 1), grid, settings).value;
  CHECK(got == (l_pert - l_base) / (4.0 * tau * tau));
}

TEST_CASE("quadrature value settles between m=256 and m=512 on the null design") {
  DgpSpec spec{DgpFamily::continuous, 0, Pairing::independent, 500, 500};
  RandomStream rng(2026, 0);
  const GeneratedData data = generate(spec, rng);
  const auto family = builtin_family(FamilyKind::location_scale);
  const ParamBox box = simulation_box();
  MinimizeSettings settings;  // 41 per dim
  const CdfDiffField field(data.x, std::span(&data.y, 1), std::span(&family, 1));
  const auto nu = NuMeasure::normal(0.0, 5.0 / 3.0);
  const double l256 =
      minimize(field, std::span(&box, 1), make_grid(nu, 256), settings).value;
  const double l512 =
      minimize(field, std::span(&box, 1), make_grid(nu, 512), settings).value;
  CHECK(std::fabs(l256 - l512) < 1e-3);
}

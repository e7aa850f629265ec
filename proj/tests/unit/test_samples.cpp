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

#include "cdftest/samples.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"

using cdftest::PairedSample;
using cdftest::RandomStream;
using cdftest::UnivariateSample;
using cdftest::ecdf_eval;
using cdftest::resample_iid;
using cdftest::resample_pairs;

TEST_CASE("ecdf point values") {
  const UnivariateSample s({1.0, 2.0, 3.0});
  CHECK(ecdf_eval(s, 2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(ecdf_eval(s, 0.5) == 0.0);
  CHECK(ecdf_eval(s, 3.0) == 1.0);
}

TEST_CASE("ecdf is a right-continuous step function with integer counts") {
  RandomStream rng(11, 0);
  std::vector<double> values;
  for (int i = 0; i < 57; ++i) values.push_back(std::floor(rng.next_double() * 20.0));
  const UnivariateSample s(values);
  const double n = static_cast<double>(s.size());

  double prev = 0.0;
  for (double x = -1.0; x <= 21.0; x += 0.25) {
    const double f = ecdf_eval(s, x);
    CHECK(f >= prev);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    const double count = f * n;
    CHECK(std::fabs(count - std::round(count)) < 1e-9);
    prev = f;
  }
  CHECK(ecdf_eval(s, s.sorted().front() - 1.0) == 0.0);
  CHECK(ecdf_eval(s, s.sorted().back()) == 1.0);
}

TEST_CASE("ingestion rejects non-finite values and empty input") {
  CHECK_THROWS_AS(UnivariateSample({}), std::invalid_argument);
  CHECK_THROWS_AS(UnivariateSample({1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(UnivariateSample({std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PairedSample({{1.0, std::nan("")}}), std::invalid_argument);
}

TEST_CASE("ties are kept verbatim") {
  const UnivariateSample s({2.0, 2.0, 2.0, 5.0});
  CHECK(ecdf_eval(s, 2.0) == doctest::Approx(0.75));
}

TEST_CASE("resample_iid basics") {
  RandomStream rng(3, 0);
  const UnivariateSample atom({5.0});
  const auto single = resample_iid(atom, rng);
  REQUIRE(single.size() == 1);
  CHECK(single.sorted()[0] == 5.0);

  const UnivariateSample s({1.0, 2.0});
  const auto r = resample_iid(s, rng);
  REQUIRE(r.size() == 2);
  for (double v : r.sorted()) CHECK((v == 1.0 || v == 2.0));
}

TEST_CASE("resample_iid is deterministic for a fixed stream") {
  const UnivariateSample s({1.0, 2.0, 3.0, 4.0});
  RandomStream r1(99, 5);
  RandomStream r2(99, 5);
  const auto a = resample_iid(s, r1);
  const auto b = resample_iid(s, r2);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.sorted()[i] == b.sorted()[i]);
}

TEST_CASE("resample_pairs keeps coordinates coupled") {
  const PairedSample p(std::vector<std::pair<double, double>>{{1.0, 10.0}, {2.0, 20.0}});
  RandomStream rng(17, 2);
  for (int rep = 0; rep < 20; ++rep) {
    const auto r = resample_pairs(p, rng);
    REQUIRE(r.size() == 2);
    for (const auto& [x, y] : r.pairs()) {
      const bool first = x == 1.0 && y == 10.0;
      const bool second = x == 2.0 && y == 20.0;
      CHECK((first || second));
    }
  }
}

TEST_CASE("paired construction requires equal coordinate lengths") {
  CHECK_THROWS_AS(PairedSample({1.0, 2.0}, {3.0}), std::invalid_argument);
}

TEST_CASE("multi-sample set requires at least one comparison") {
  CHECK_THROWS_AS(
      cdftest::MultiSampleSet(UnivariateSample({1.0}), {}),
      std::invalid_argument);
}

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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdftest/hypothesis_test.hpp"
#include "cdftest/random.hpp"
#include "cdftest/samples.hpp"

namespace cdftest {

enum class DgpFamily { continuous, discrete };

// One Monte Carlo design cell.
//
// Continuous designs: X ~ N(0,1), Z ~ N(0,1), U ~ Unif[-3,3];
//   dgp 0: Y = Z (null), 1: Y = 0.5Z + 0.5U, 2: Y = 0.25Z + 0.75U, 3: Y = U.
// Discrete designs: X, U, V ~ Unif{1..10};
//   dgp 0: Y = U (null), 1: Y = 0.9U + 0.1V, 2: Y = 0.75U + 0.25V,
//   3: Y = 0.5U + 0.5V.
// Matched pairing routes the driving triple through a Gaussian copula with
// covariance Sigma3 = [[1,.5,.5],[.5,1,0],[.5,0,1]] and requires n1 == n2.
struct DgpSpec {
  DgpFamily family = DgpFamily::continuous;
  int dgp_id = 0;
  Pairing pairing = Pairing::independent;
  int n1 = 0;
  int n2 = 0;

  void validate() const;
};

struct GeneratedData {
  UnivariateSample x;
  UnivariateSample y;
  std::optional<PairedSample> pairs;  // present for matched designs
};

// Draws one dataset. Independent designs consume the stream as three value
// blocks (X, then Z/U, then U/V); matched designs consume one copula row
// (three normal draws) per observation. All normals come from the inverse
// CDF of open-interval uniforms, discrete uniforms from ceil(10u).
GeneratedData generate(const DgpSpec& dgp, RandomStream& rng);

using QuantileFn = std::function<double(double)>;

// Lower-triangular Cholesky factor; throws std::invalid_argument when the
// matrix is not symmetric positive definite.
std::vector<std::vector<double>> cholesky_lower(
    const std::vector<std::vector<double>>& sigma);

// n rows of the Gaussian copula with correlation `sigma` (unit diagonal
// required), each coordinate mapped through the standard normal CDF and
// then its marginal quantile function.
std::vector<std::vector<double>> gaussian_copula_sample(
    const std::vector<std::vector<double>>& sigma,
    std::span<const QuantileFn> quantile_fns, std::size_t n, RandomStream& rng);

// The theta box of the simulation designs: [-0.2, 0.2] x [2^-0.2, 2^0.2].
ParamBox simulation_box();

// Default weighting measure per design family: N(0, 5/3) for continuous
// designs, N(5, 5) for discrete ones.
NuMeasure default_simulation_nu(DgpFamily family);

// Warp-speed study: per replication r, one statistic and ONE bootstrap
// draw; per tau the critical value is the empirical (1 - alpha) quantile of
// the pooled bootstrap statistics. Replication r uses data stream 2r and
// bootstrap stream 2r + 1, so the full table is a pure function of the
// seed. The same replication data serve every tau column.
struct StudyPlan {
  std::vector<DgpSpec> dgps;
  std::vector<double> tau_list;
  int n_mc = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 0;

  TransformFamily family = builtin_family(FamilyKind::location_scale);
  ParamBox box = simulation_box();
  MinimizeSettings minimize;
  int m_nodes = 256;
  std::optional<NuMeasure> nu;  // unset: default_simulation_nu per design
  unsigned threads = 0;

  void validate() const;
};

struct RateTable {
  std::vector<DgpSpec> rows;
  std::vector<double> taus;
  std::vector<std::vector<double>> rates;  // rates[row][tau_index]
};

RateTable warp_speed_study(const StudyPlan& plan);

// Paper-layout renderings: rows are (dgp, n1, n2), columns are tau.
std::string format_rate_table_text(const RateTable& table);
std::string format_rate_table_csv(const RateTable& table);

}  // namespace cdftest

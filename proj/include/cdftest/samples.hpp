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

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "cdftest/random.hpp"

namespace cdftest {

// A univariate dataset held as an ascending-sorted copy. Immutable after
// construction and safe to share across threads. NaN and infinities are
// rejected at ingestion; ties are kept verbatim (the ECDF counts
// multiplicity).
class UnivariateSample {
 public:
  explicit UnivariateSample(std::vector<double> values);

  std::size_t size() const { return sorted_.size(); }
  std::span<const double> sorted() const { return sorted_; }

  // Empirical CDF: (# values <= x) / n, right-continuous. O(log n).
  double ecdf(double x) const;

 private:
  std::vector<double> sorted_;
};

// Dependent (x, y) observations. Both coordinate projections are valid
// samples of the same size n.
class PairedSample {
 public:
  explicit PairedSample(std::vector<std::pair<double, double>> pairs);
  PairedSample(std::vector<double> xs, std::vector<double> ys);

  std::size_t size() const { return pairs_.size(); }
  const std::vector<std::pair<double, double>>& pairs() const { return pairs_; }

  UnivariateSample x_sample() const;
  UnivariateSample y_sample() const;

 private:
  std::vector<std::pair<double, double>> pairs_;
};

// One base sample plus K >= 1 comparison samples.
struct MultiSampleSet {
  UnivariateSample base;
  std::vector<UnivariateSample> comparisons;

  MultiSampleSet(UnivariateSample base_sample,
                 std::vector<UnivariateSample> comparison_samples);
  std::size_t k() const { return comparisons.size(); }
};

double ecdf_eval(const UnivariateSample& sample, double x);

// n draws with replacement from the empirical distribution. Draw i picks
// sorted()[rng.next_index(n)]; the order is pinned so that identical
// (seed, stream) pairs reproduce bitwise.
UnivariateSample resample_iid(const UnivariateSample& sample, RandomStream& rng);

// Whole-pair draws with replacement; coordinates stay coupled.
PairedSample resample_pairs(const PairedSample& paired, RandomStream& rng);

}  // namespace cdftest

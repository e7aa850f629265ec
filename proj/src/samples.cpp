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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cdftest {

UnivariateSample::UnivariateSample(std::vector<double> values)
    : sorted_(std::move(values)) {
  if (sorted_.empty()) {
    throw std::invalid_argument("UnivariateSample: at least one observation required");
  }
  for (double v : sorted_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("UnivariateSample: non-finite observation");
    }
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double UnivariateSample::ecdf(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

double ecdf_eval(const UnivariateSample& sample, double x) { return sample.ecdf(x); }

PairedSample::PairedSample(std::vector<std::pair<double, double>> pairs)
    : pairs_(std::move(pairs)) {
  if (pairs_.empty()) {
    throw std::invalid_argument("PairedSample: at least one pair required");
  }
  for (const auto& [x, y] : pairs_) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
      throw std::invalid_argument("PairedSample: non-finite observation");
    }
  }
}

PairedSample::PairedSample(std::vector<double> xs, std::vector<double> ys)
    : PairedSample([&] {
        if (xs.size() != ys.size()) {
          throw std::invalid_argument("PairedSample: coordinate lengths differ");
        }
        std::vector<std::pair<double, double>> ps;
        ps.reserve(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) ps.emplace_back(xs[i], ys[i]);
        return ps;
      }()) {}

UnivariateSample PairedSample::x_sample() const {
  std::vector<double> xs;
  xs.reserve(pairs_.size());
  for (const auto& p : pairs_) xs.push_back(p.first);
  return UnivariateSample(std::move(xs));
}

UnivariateSample PairedSample::y_sample() const {
  std::vector<double> ys;
  ys.reserve(pairs_.size());
  for (const auto& p : pairs_) ys.push_back(p.second);
  return UnivariateSample(std::move(ys));
}

MultiSampleSet::MultiSampleSet(UnivariateSample base_sample,
                               std::vector<UnivariateSample> comparison_samples)
    : base(std::move(base_sample)), comparisons(std::move(comparison_samples)) {
  if (comparisons.empty()) {
    throw std::invalid_argument("MultiSampleSet: K >= 1 comparison samples required");
  }
}

UnivariateSample resample_iid(const UnivariateSample& sample, RandomStream& rng) {
  const auto src = sample.sorted();
  const std::uint64_t n = src.size();
  std::vector<double> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(src[rng.next_index(n)]);
  return UnivariateSample(std::move(out));
}

PairedSample resample_pairs(const PairedSample& paired, RandomStream& rng) {
  const auto& src = paired.pairs();
  const std::uint64_t n = src.size();
  std::vector<std::pair<double, double>> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(src[rng.next_index(n)]);
  return PairedSample(std::move(out));
}

}  // namespace cdftest

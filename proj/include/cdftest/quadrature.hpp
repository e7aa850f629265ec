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

#include <vector>

namespace cdftest {

// The probability measure nu that weights the squared CDF difference:
// either a normal law or an explicit node set.
class NuMeasure {
 public:
  enum class Kind { normal, explicit_nodes };

  static NuMeasure normal(double mean, double sd);
  // Nodes must be strictly increasing and finite.
  static NuMeasure from_nodes(std::vector<double> nodes);

  Kind kind() const { return kind_; }
  double mean() const { return mean_; }
  double sd() const { return sd_; }
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  NuMeasure() = default;
  Kind kind_ = Kind::normal;
  double mean_ = 0.0;
  double sd_ = 1.0;
  std::vector<double> nodes_;
};

// Deterministic node set with the constant weight 1/m, so that
// (1/m) * sum_j f(nodes[j]) approximates the integral of f against nu.
struct QuadratureGrid {
  std::vector<double> nodes;
  double weight() const { return 1.0 / static_cast<double>(nodes.size()); }
};

// Normal nu: equal-probability quantile nodes x_j = Q((j - 0.5)/m),
// j = 1..m. Explicit nu: the node list is passed through and m is ignored.
QuadratureGrid make_grid(const NuMeasure& nu, int m);

}  // namespace cdftest

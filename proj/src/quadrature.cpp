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

#include "cdftest/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "cdftest/normal.hpp"

namespace cdftest {

NuMeasure NuMeasure::normal(double mean, double sd) {
  if (!std::isfinite(mean) || !(sd > 0.0) || !std::isfinite(sd)) {
    throw std::invalid_argument("NuMeasure::normal: requires finite mean and sd > 0");
  }
  NuMeasure nu;
  nu.kind_ = Kind::normal;
  nu.mean_ = mean;
  nu.sd_ = sd;
  return nu;
}

NuMeasure NuMeasure::from_nodes(std::vector<double> nodes) {
  if (nodes.empty()) {
    throw std::invalid_argument("NuMeasure::from_nodes: node list must be nonempty");
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i])) {
      throw std::invalid_argument("NuMeasure::from_nodes: non-finite node");
    }
    if (i > 0 && !(nodes[i] > nodes[i - 1])) {
      throw std::invalid_argument("NuMeasure::from_nodes: nodes must be strictly increasing");
    }
  }
  NuMeasure nu;
  nu.kind_ = Kind::explicit_nodes;
  nu.nodes_ = std::move(nodes);
  return nu;
}

QuadratureGrid make_grid(const NuMeasure& nu, int m) {
  if (m < 1) throw std::invalid_argument("make_grid: m must be >= 1");
  if (nu.kind() == NuMeasure::Kind::explicit_nodes) {
    return QuadratureGrid{nu.nodes()};
  }
  QuadratureGrid grid;
  grid.nodes.reserve(static_cast<std::size_t>(m));
  for (int j = 1; j <= m; ++j) {
    const double p = (static_cast<double>(j) - 0.5) / static_cast<double>(m);
    grid.nodes.push_back(nu.mean() + nu.sd() * normal_quantile(p));
  }
  return grid;
}

}  // namespace cdftest

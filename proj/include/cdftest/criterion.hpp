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

#include <span>
#include <vector>

#include "cdftest/quadrature.hpp"
#include "cdftest/samples.hpp"
#include "cdftest/transforms.hpp"

namespace cdftest {

// The (possibly perturbed) CDF-difference field. Component k evaluates
//
//   phi_k(x, theta_k) = (1-c) * [F(x)  - G_k(g_k(x, theta_k))]
//                     +   c   * [F*(x) - G_k*(g_k(x, theta_k))]
//
// where F/G_k are the empirical CDFs of the raw samples, F*/G_k* those of
// bootstrap resamples, and c >= 0 the mixing weight (c = 0 gives the plain
// field). The pinned floating-point evaluation order is the perturbation
// form [F(x) + c*(F*(x)-F(x))] - [G_k(y) + c*(G_k*(y)-G_k(y))] with
// y = g_k(x, theta_k), so a bootstrap draw that reproduces the raw sample
// multiset reduces the field to the plain one bitwise. Holds views only;
// the samples and families must outlive it.
class CdfDiffField {
 public:
  // Plain field, c = 0.
  CdfDiffField(const UnivariateSample& base,
               std::span<const UnivariateSample> comparisons,
               std::span<const TransformFamily> families);

  // Perturbed field, c > 0, with bootstrap counterparts of every sample.
  CdfDiffField(const UnivariateSample& base,
               std::span<const UnivariateSample> comparisons,
               std::span<const TransformFamily> families, double mix,
               const UnivariateSample& base_boot,
               std::span<const UnivariateSample> comparison_boots);

  std::size_t components() const { return comparisons_.size(); }
  double mix() const { return mix_; }
  const TransformFamily& family(std::size_t k) const { return *families_[k]; }

  // Direct field evaluation (used by tests and one-off queries; the hot
  // criterion loops use the prepared node arrays instead).
  double value(std::size_t k, double x, std::span<const double> theta_k) const;

  // Mixed base-CDF values (1-c)F(x_j) + cF*(x_j) at the grid nodes.
  std::vector<double> base_values(const QuadratureGrid& grid) const;

  // Mixed comparison-CDF value (1-c)G_k(y) + cG_k*(y) at a point.
  double comparison_value(std::size_t k, double y) const;

  const UnivariateSample& comparison(std::size_t k) const { return *comparisons_[k]; }
  const UnivariateSample* comparison_boot(std::size_t k) const {
    return comp_boots_.empty() ? nullptr : comp_boots_[k];
  }

 private:
  const UnivariateSample* base_;
  std::vector<const UnivariateSample*> comparisons_;
  std::vector<const TransformFamily*> families_;
  double mix_ = 0.0;
  const UnivariateSample* base_boot_ = nullptr;
  std::vector<const UnivariateSample*> comp_boots_;
};

// Search controls for the criterion minimization. The objective is
// piecewise constant in theta (ECDFs are step functions), so the search is
// a dense lattice scan, optionally followed by shrinking compass
// refinement around the best lattice point. Ties always break to the
// lexicographically smallest theta.
struct MinimizeSettings {
  std::vector<int> resolution{41};  // per dim; a single entry broadcasts
  bool refine = false;
  double refine_shrink = 0.5;
  int refine_rounds = 0;
  std::size_t grid_cap = kDefaultGridCap;

  std::vector<int> resolution_for(std::size_t dims) const;
};

struct MinimizeResult {
  std::vector<std::vector<double>> theta;  // minimizer per component
  double value = 0.0;                      // L = sum of per-component minima
};

// S(theta) = (1/m) sum_j sum_k phi_k(x_j, theta_k)^2. Throws
// std::domain_error when some theta_k falls outside its box.
double objective(const CdfDiffField& field,
                 std::span<const std::vector<double>> thetas,
                 const QuadratureGrid& grid, std::span<const ParamBox> boxes);

// L = inf over the search set of the objective. The K components separate,
// so the joint minimum is the sum of K independent per-component
// minimizations; with refinement off the result equals exhaustive lattice
// enumeration exactly.
MinimizeResult minimize(const CdfDiffField& field, std::span<const ParamBox> boxes,
                        const QuadratureGrid& grid, const MinimizeSettings& settings);

// Finite-difference second directional derivative
// [L(perturbed) - L(base)] / tau^2; may be negative.
double numerical_second_derivative(const CdfDiffField& base_field,
                                   const CdfDiffField& perturbed_field, double tau,
                                   std::span<const ParamBox> boxes,
                                   const QuadratureGrid& grid,
                                   const MinimizeSettings& settings);

}  // namespace cdftest

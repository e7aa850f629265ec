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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cdftest {

CdfDiffField::CdfDiffField(const UnivariateSample& base,
                           std::span<const UnivariateSample> comparisons,
                           std::span<const TransformFamily> families)
    : base_(&base) {
  if (comparisons.empty() || comparisons.size() != families.size()) {
    throw std::invalid_argument("CdfDiffField: need K >= 1 comparisons with matching families");
  }
  for (const auto& s : comparisons) comparisons_.push_back(&s);
  for (const auto& f : families) families_.push_back(&f);
}

CdfDiffField::CdfDiffField(const UnivariateSample& base,
                           std::span<const UnivariateSample> comparisons,
                           std::span<const TransformFamily> families, double mix,
                           const UnivariateSample& base_boot,
                           std::span<const UnivariateSample> comparison_boots)
    : CdfDiffField(base, comparisons, families) {
  if (!(mix >= 0.0) || !std::isfinite(mix)) {
    throw std::invalid_argument("CdfDiffField: mix must be finite and >= 0");
  }
  if (comparison_boots.size() != comparisons.size()) {
    throw std::invalid_argument("CdfDiffField: one bootstrap sample per comparison required");
  }
  mix_ = mix;
  base_boot_ = &base_boot;
  for (const auto& s : comparison_boots) comp_boots_.push_back(&s);
}

std::vector<double> CdfDiffField::base_values(const QuadratureGrid& grid) const {
  std::vector<double> a;
  a.reserve(grid.nodes.size());
  if (base_boot_ == nullptr) {
    for (double x : grid.nodes) a.push_back(base_->ecdf(x));
  } else {
    const double c = mix_;
    for (double x : grid.nodes) {
      const double f = base_->ecdf(x);
      a.push_back(f + c * (base_boot_->ecdf(x) - f));
    }
  }
  return a;
}

double CdfDiffField::comparison_value(std::size_t k, double y) const {
  const double g = comparisons_[k]->ecdf(y);
  if (comp_boots_.empty()) return g;
  return g + mix_ * (comp_boots_[k]->ecdf(y) - g);
}

double CdfDiffField::value(std::size_t k, double x, std::span<const double> theta_k) const {
  const double y = families_[k]->eval(x, theta_k);
  double a = base_->ecdf(x);
  if (base_boot_ != nullptr) a += mix_ * (base_boot_->ecdf(x) - a);
  return a - comparison_value(k, y);
}

std::vector<int> MinimizeSettings::resolution_for(std::size_t dims) const {
  if (resolution.empty()) {
    throw std::invalid_argument("MinimizeSettings: resolution must be nonempty");
  }
  std::vector<int> res;
  if (resolution.size() == 1) {
    res.assign(dims, resolution[0]);
  } else if (resolution.size() == dims) {
    res = resolution;
  } else {
    throw std::invalid_argument("MinimizeSettings: resolution size must be 1 or match dims");
  }
  for (int r : res) {
    if (r < 1) throw std::invalid_argument("MinimizeSettings: resolution must be >= 1");
  }
  return res;
}

namespace {

// Node-sum of squared field values for one component at a fixed theta:
//   sum_j (a[j] - [(1-c) G(y_j) + c G*(y_j)])^2,  y_j = g(x_j, theta).
//
// For monotone families the transformed nodes ascend with j, so the two
// ECDF counters advance by a merge scan; otherwise each node is resolved
// by binary search. Both paths produce bitwise-identical sums.
struct ComponentScan {
  const TransformFamily* family;
  std::span<const double> nodes;
  std::span<const double> a;
  std::span<const double> comp;
  std::span<const double> boot;  // empty when the field is unperturbed
  double mix = 0.0;

  double operator()(std::span<const double> theta) const {
    return family->monotone_hint() ? run_merge(theta) : run_search(theta);
  }

  // Counts turn into probabilities by the same count/n division the ECDF
  // uses, so equal counts give bitwise-equal values.
  double run_merge(std::span<const double> theta) const {
    const double n1 = static_cast<double>(comp.size());
    const double n2 = static_cast<double>(boot.size());
    std::size_t i1 = 0;
    std::size_t i2 = 0;
    double acc = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double y = family->eval(nodes[j], theta);
      while (i1 < comp.size() && comp[i1] <= y) ++i1;
      const double g = static_cast<double>(i1) / n1;
      double v;
      if (boot.empty()) {
        v = a[j] - g;
      } else {
        while (i2 < boot.size() && boot[i2] <= y) ++i2;
        v = a[j] - (g + mix * (static_cast<double>(i2) / n2 - g));
      }
      acc += v * v;
    }
    return acc;
  }

  double run_search(std::span<const double> theta) const {
    const double n1 = static_cast<double>(comp.size());
    const double n2 = static_cast<double>(boot.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double y = family->eval(nodes[j], theta);
      const auto c1 = std::upper_bound(comp.begin(), comp.end(), y) - comp.begin();
      const double g = static_cast<double>(c1) / n1;
      double v;
      if (boot.empty()) {
        v = a[j] - g;
      } else {
        const auto c2 = std::upper_bound(boot.begin(), boot.end(), y) - boot.begin();
        v = a[j] - (g + mix * (static_cast<double>(c2) / n2 - g));
      }
      acc += v * v;
    }
    return acc;
  }
};

ComponentScan make_scan(const CdfDiffField& field, std::size_t k,
                        const QuadratureGrid& grid, std::span<const double> a) {
  ComponentScan scan;
  scan.family = &field.family(k);
  scan.nodes = grid.nodes;
  scan.a = a;
  scan.comp = field.comparison(k).sorted();
  if (const UnivariateSample* b = field.comparison_boot(k)) scan.boot = b->sorted();
  scan.mix = field.mix();
  return scan;
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct BestPoint {
  double value;
  std::vector<double> theta;

  bool accepts(double v, std::span<const double> t) const {
    return v < value || (v == value && lex_less(t, theta));
  }
};

// Exhaustive lattice scan in lexicographic order.
BestPoint scan_lattice(const ComponentScan& scan, const ParamBox& box,
                       std::span<const int> res, std::size_t cap, double weight) {
  const std::size_t d = box.dims();
  std::size_t total = 1;
  for (int r : res) {
    if (total > cap / static_cast<std::size_t>(r)) {
      throw std::invalid_argument("minimize: lattice exceeds configured cap");
    }
    total *= static_cast<std::size_t>(r);
  }

  std::vector<int> idx(d, 0);
  std::vector<double> theta(d);
  BestPoint best{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t p = 0; p < total; ++p) {
    for (std::size_t j = 0; j < d; ++j) {
      theta[j] = grid_coordinate(box.lower[j], box.upper[j], res[j], idx[j]);
    }
    const double v = scan(theta) * weight;
    if (p == 0 || best.accepts(v, theta)) {
      best.value = v;
      best.theta = theta;
    }
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < res[j]) break;
      idx[j] = 0;
    }
  }
  return best;
}

// Shrinking compass search around the lattice minimizer. Moves only to
// strictly better values (or equal values at lexicographically smaller
// theta), so the result never exceeds the lattice minimum.
void refine_compass(const ComponentScan& scan, const ParamBox& box,
                    std::span<const int> res, const MinimizeSettings& settings,
                    double weight, BestPoint& best) {
  const std::size_t d = box.dims();
  std::vector<double> spacing(d);
  for (std::size_t j = 0; j < d; ++j) {
    spacing[j] = (res[j] > 1)
                     ? (box.upper[j] - box.lower[j]) / static_cast<double>(res[j] - 1)
                     : 0.5 * (box.upper[j] - box.lower[j]);
  }
  double shrink = 1.0;
  for (int round = 1; round <= settings.refine_rounds; ++round) {
    shrink *= settings.refine_shrink;
    for (int move = 0; move < 256; ++move) {
      BestPoint candidate = best;
      std::vector<double> probe(d);
      for (std::size_t j = 0; j < d; ++j) {
        for (double sign : {-1.0, 1.0}) {
          probe = best.theta;
          probe[j] = std::clamp(best.theta[j] + sign * spacing[j] * shrink,
                                box.lower[j], box.upper[j]);
          const double v = scan(probe) * weight;
          if (candidate.accepts(v, probe)) {
            candidate.value = v;
            candidate.theta = probe;
          }
        }
      }
      if (!best.accepts(candidate.value, candidate.theta)) break;
      best = candidate;
    }
  }
}

}  // namespace

double objective(const CdfDiffField& field,
                 std::span<const std::vector<double>> thetas,
                 const QuadratureGrid& grid, std::span<const ParamBox> boxes) {
  const std::size_t kk = field.components();
  if (thetas.size() != kk || boxes.size() != kk) {
    throw std::invalid_argument("objective: need one theta and one box per component");
  }
  if (grid.nodes.empty()) throw std::invalid_argument("objective: empty grid");
  for (std::size_t k = 0; k < kk; ++k) {
    if (thetas[k].size() != field.family(k).dims()) {
      throw std::invalid_argument("objective: theta dimension mismatch");
    }
    if (!boxes[k].contains(thetas[k])) {
      throw std::domain_error("objective: theta outside its box");
    }
  }
  const std::vector<double> a = field.base_values(grid);
  const double weight = grid.weight();
  double total = 0.0;
  for (std::size_t k = 0; k < kk; ++k) {
    total += make_scan(field, k, grid, a)(thetas[k]) * weight;
  }
  return total;
}

MinimizeResult minimize(const CdfDiffField& field, std::span<const ParamBox> boxes,
                        const QuadratureGrid& grid, const MinimizeSettings& settings) {
  const std::size_t kk = field.components();
  if (boxes.size() != kk) {
    throw std::invalid_argument("minimize: need one box per component");
  }
  if (grid.nodes.empty()) throw std::invalid_argument("minimize: empty grid");
  if (!(settings.refine_shrink > 0.0 && settings.refine_shrink < 1.0)) {
    throw std::invalid_argument("minimize: refine_shrink must lie in (0, 1)");
  }
  if (settings.refine_rounds < 0) {
    throw std::invalid_argument("minimize: refine_rounds must be >= 0");
  }

  const std::vector<double> a = field.base_values(grid);
  const double weight = grid.weight();

  MinimizeResult result;
  result.theta.resize(kk);
  for (std::size_t k = 0; k < kk; ++k) {
    const ParamBox& box = boxes[k];
    if (box.dims() != field.family(k).dims()) {
      throw std::invalid_argument("minimize: box/family dimension mismatch");
    }
    const std::vector<int> res = settings.resolution_for(box.dims());
    const ComponentScan scan = make_scan(field, k, grid, a);
    BestPoint best = scan_lattice(scan, box, res, settings.grid_cap, weight);
    if (settings.refine && settings.refine_rounds > 0) {
      refine_compass(scan, box, res, settings, weight, best);
    }
    result.value += best.value;
    result.theta[k] = std::move(best.theta);
  }
  return result;
}

double numerical_second_derivative(const CdfDiffField& base_field,
                                   const CdfDiffField& perturbed_field, double tau,
                                   std::span<const ParamBox> boxes,
                                   const QuadratureGrid& grid,
                                   const MinimizeSettings& settings) {
  if (!(tau > 0.0)) throw std::invalid_argument("numerical_second_derivative: tau must be > 0");
  const double l_pert = minimize(perturbed_field, boxes, grid, settings).value;
  const double l_base = minimize(base_field, boxes, grid, settings).value;
  return (l_pert - l_base) / (tau * tau);
}

}  // namespace cdftest

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

#include "cdftest/transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace cdftest {

ParamBox::ParamBox(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
  if (lower.empty() || lower.size() != upper.size()) {
    throw std::invalid_argument("ParamBox: lower/upper must be nonempty and equal length");
  }
  for (std::size_t j = 0; j < lower.size(); ++j) {
    if (!std::isfinite(lower[j]) || !std::isfinite(upper[j]) || lower[j] > upper[j]) {
      throw std::invalid_argument("ParamBox: requires finite lower[j] <= upper[j]");
    }
  }
}

bool ParamBox::contains(std::span<const double> theta) const {
  if (theta.size() != lower.size()) return false;
  for (std::size_t j = 0; j < theta.size(); ++j) {
    if (theta[j] < lower[j] || theta[j] > upper[j]) return false;
  }
  return true;
}

TransformFamily::TransformFamily(std::string name, std::size_t dims, EvalFn eval)
    : name_(std::move(name)), dims_(dims), fn_(std::move(eval)) {
  if (dims_ == 0) throw std::invalid_argument("TransformFamily: dims must be >= 1");
  if (!fn_) throw std::invalid_argument("TransformFamily: eval function required");
}

namespace {

[[noreturn]] void bad_scale() {
  throw std::domain_error("TransformFamily: scale parameter must be > 0");
}

}  // namespace

double TransformFamily::eval(double x, std::span<const double> theta) const {
  if (theta.size() != dims_) {
    throw std::invalid_argument("TransformFamily: theta has wrong dimension");
  }
  switch (kind_) {
    case FamilyKind::location:
      return x - theta[0];
    case FamilyKind::scale:
      if (!(theta[0] > 0.0)) bad_scale();
      return x / theta[0];
    case FamilyKind::location_scale:
      if (!(theta[1] > 0.0)) bad_scale();
      return (x - theta[0]) / theta[1];
    case FamilyKind::affine: {
      if (!(theta[1] > 0.0)) bad_scale();
      const double shifted = x - affine_loc_sign_ * theta[0];
      return affine_multiplies_ ? shifted * theta[1] : shifted / theta[1];
    }
    case FamilyKind::custom:
      return fn_(x, theta);
  }
  throw std::logic_error("TransformFamily: unreachable");
}

TransformFamily builtin_family(FamilyKind kind) {
  TransformFamily f;
  f.kind_ = kind;
  f.monotone_hint_ = true;
  switch (kind) {
    case FamilyKind::location:
      f.name_ = "location";
      f.dims_ = 1;
      break;
    case FamilyKind::scale:
      f.name_ = "scale";
      f.dims_ = 1;
      break;
    case FamilyKind::location_scale:
      f.name_ = "location-scale";
      f.dims_ = 2;
      break;
    default:
      throw std::invalid_argument("builtin_family: not a built-in kind");
  }
  return f;
}

TransformFamily builtin_family(const std::string& kind_name) {
  if (kind_name == "location") return builtin_family(FamilyKind::location);
  if (kind_name == "scale") return builtin_family(FamilyKind::scale);
  if (kind_name == "location-scale" || kind_name == "location_scale") {
    return builtin_family(FamilyKind::location_scale);
  }
  throw std::invalid_argument("unknown family: " + kind_name);
}

TransformFamily affine_family(int loc_sign, bool scale_multiplies) {
  if (loc_sign != 1 && loc_sign != -1) {
    throw std::invalid_argument("affine_family: loc_sign must be +1 or -1");
  }
  TransformFamily f;
  f.kind_ = FamilyKind::affine;
  f.name_ = "affine";
  f.dims_ = 2;
  f.affine_loc_sign_ = loc_sign;
  f.affine_multiplies_ = scale_multiplies;
  f.monotone_hint_ = true;
  return f;
}

double grid_coordinate(double lower, double upper, int resolution, int index) {
  if (resolution == 1) return 0.5 * (lower + upper);
  if (index == 0) return lower;
  if (index == resolution - 1) return upper;
  return lower + (upper - lower) * static_cast<double>(index) /
                     static_cast<double>(resolution - 1);
}

std::vector<std::vector<double>> param_grid(const ParamBox& box,
                                            std::span<const int> resolution,
                                            std::size_t cap) {
  const std::size_t d = box.dims();
  if (resolution.size() != d) {
    throw std::invalid_argument("param_grid: resolution size must match box dims");
  }
  std::size_t total = 1;
  for (int r : resolution) {
    if (r < 1) throw std::invalid_argument("param_grid: resolution must be >= 1");
    if (total > cap / static_cast<std::size_t>(r)) {
      throw std::invalid_argument("param_grid: lattice exceeds configured cap");
    }
    total *= static_cast<std::size_t>(r);
  }

  std::vector<std::vector<double>> points;
  points.reserve(total);
  std::vector<int> idx(d, 0);
  std::vector<double> theta(d);
  for (std::size_t p = 0; p < total; ++p) {
    for (std::size_t j = 0; j < d; ++j) {
      theta[j] = grid_coordinate(box.lower[j], box.upper[j], resolution[j], idx[j]);
    }
    points.push_back(theta);
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < resolution[j]) break;
      idx[j] = 0;
    }
  }
  return points;
}

std::vector<std::string> audit_monotonicity(const TransformFamily& family,
                                            const ParamBox& box, double x_lo,
                                            double x_hi, int theta_resolution,
                                            int x_resolution) {
  if (!(x_lo < x_hi) || theta_resolution < 1 || x_resolution < 2) {
    throw std::invalid_argument("audit_monotonicity: bad lattice parameters");
  }
  std::vector<int> res(box.dims(), theta_resolution);
  std::vector<std::string> findings;
  for (const auto& theta : param_grid(box, res)) {
    double prev = family.eval(x_lo, theta);
    for (int i = 1; i < x_resolution; ++i) {
      const double x = grid_coordinate(x_lo, x_hi, x_resolution, i);
      const double cur = family.eval(x, theta);
      if (cur < prev) {
        std::string msg = "monotonicity violation in family '" + family.name() +
                          "' near x=" + std::to_string(x) + " theta=(";
        for (std::size_t j = 0; j < theta.size(); ++j) {
          msg += (j ? "," : "") + std::to_string(theta[j]);
        }
        msg += ")";
        findings.push_back(std::move(msg));
        break;
      }
      prev = cur;
    }
  }
  return findings;
}

}  // namespace cdftest

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
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cdftest {

// Compact parameter box, lower[j] <= upper[j]. Degenerate dimensions pin a
// parameter to a fixed value.
struct ParamBox {
  std::vector<double> lower;
  std::vector<double> upper;

  ParamBox(std::vector<double> lo, std::vector<double> hi);
  std::size_t dims() const { return lower.size(); }
  bool contains(std::span<const double> theta) const;
};

enum class FamilyKind { location, scale, location_scale, affine, custom };

// A parametric transformation family g(., theta). For every theta in its
// box, x -> g(x, theta) must be nondecreasing (strictly increasing for the
// built-ins); audit_monotonicity checks this by sampling rather than
// assuming it.
class TransformFamily {
 public:
  using EvalFn = std::function<double(double, std::span<const double>)>;

  // Custom family supplied programmatically.
  TransformFamily(std::string name, std::size_t dims, EvalFn eval);

  double eval(double x, std::span<const double> theta) const;

  std::size_t dims() const { return dims_; }
  const std::string& name() const { return name_; }
  FamilyKind kind() const { return kind_; }

  // Built-ins evaluate monotonically by construction; custom families may
  // opt in after a successful audit to enable the faster merge-scan ECDF
  // path (results are identical either way).
  bool monotone_hint() const { return monotone_hint_; }
  void set_monotone_hint(bool value) { monotone_hint_ = value; }

 private:
  friend TransformFamily builtin_family(FamilyKind kind);
  friend TransformFamily affine_family(int loc_sign, bool scale_multiplies);
  TransformFamily() = default;

  std::string name_;
  std::size_t dims_ = 0;
  FamilyKind kind_ = FamilyKind::custom;
  EvalFn fn_;
  int affine_loc_sign_ = 1;
  bool affine_multiplies_ = true;
  bool monotone_hint_ = false;
};

// location:       g(x, theta) = x - theta1          (d = 1)
// scale:          g(x, theta) = x / theta2          (d = 1, theta2 > 0)
// location_scale: g(x, theta) = (x - theta1)/theta2 (d = 2, theta2 > 0)
// Evaluating scale/location_scale with theta2 <= 0 throws std::domain_error.
TransformFamily builtin_family(FamilyKind kind);
TransformFamily builtin_family(const std::string& kind_name);

// g(x, theta) = (x - s*theta1) * theta2  or  (x - s*theta1) / theta2,
// s = loc_sign in {+1, -1}; theta2 > 0 required. d = 2.
TransformFamily affine_family(int loc_sign, bool scale_multiplies);

inline constexpr std::size_t kDefaultGridCap = 4'000'000;

// Cartesian lattice over the box: per-dim equally spaced points including
// both endpoints (resolution[j] == 1 gives the midpoint), lexicographic
// order with the first dimension outermost. Throws std::invalid_argument
// when the total point count exceeds cap.
std::vector<std::vector<double>> param_grid(const ParamBox& box,
                                            std::span<const int> resolution,
                                            std::size_t cap = kDefaultGridCap);

// Per-dim node values used by param_grid; point t of res gives
// lower + t*(upper-lower)/(res-1), with the endpoints emitted exactly.
double grid_coordinate(double lower, double upper, int resolution, int index);

// Sampled monotonicity check of x -> g(x, theta) over a coarse theta grid
// and an x lattice spanning [x_lo, x_hi]. Returns a diagnostic message per
// violation found (empty result == no violation observed).
std::vector<std::string> audit_monotonicity(const TransformFamily& family,
                                            const ParamBox& box, double x_lo,
                                            double x_hi, int theta_resolution = 5,
                                            int x_resolution = 64);

}  // namespace cdftest

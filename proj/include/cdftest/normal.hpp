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

namespace cdftest {

// Standard normal CDF.
double normal_cdf(double x);

// Standard normal quantile, absolute accuracy better than 1e-9 on (0, 1).
// Wichura's AS241 rational approximation followed by one Halley correction
// step against normal_cdf. Throws std::domain_error outside (0, 1).
double normal_quantile(double p);

}  // namespace cdftest

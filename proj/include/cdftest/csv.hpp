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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cdftest {

// Problems with input data files: missing file, missing column, malformed
// cell. Messages name file, row, and column.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads the named columns from a comma-separated file. A header row is
// required; selected cells must parse as decimal numbers; other columns
// are ignored. Returns one vector per requested column.
std::vector<std::vector<double>> read_numeric_columns(
    const std::string& path, std::span<const std::string> columns);

std::vector<double> read_numeric_column(const std::string& path,
                                        const std::string& column);

void write_single_column_csv(const std::string& path, const std::string& header,
                             std::span<const double> values);

void write_two_column_csv(const std::string& path, const std::string& header_x,
                          const std::string& header_y,
                          std::span<const std::pair<double, double>> rows);

}  // namespace cdftest

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

#include "cdftest/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

namespace cdftest {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, const std::string& path, std::size_t row,
                  const std::string& column) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (cell.empty() || end != begin + cell.size()) {
    throw DataError(path + ": row " + std::to_string(row) + ", column '" + column +
                    "': cell '" + cell + "' is not numeric");
  }
  return v;
}

}  // namespace

std::vector<std::vector<double>> read_numeric_columns(
    const std::string& path, std::span<const std::string> columns) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");

  std::string line;
  if (!std::getline(in, line)) throw DataError(path + ": missing header row");
  const std::vector<std::string> header = split_line(line);

  std::vector<std::size_t> indices;
  for (const auto& want : columns) {
    std::size_t found = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == want) {
        found = i;
        break;
      }
    }
    if (found == header.size()) {
      throw DataError(path + ": column '" + want + "' not found in header");
    }
    indices.push_back(found);
  }

  std::vector<std::vector<double>> out(columns.size());
  std::size_t row = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_line(line);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (indices[c] >= cells.size()) {
        throw DataError(path + ": row " + std::to_string(row) + ": missing column '" +
                        columns[c] + "'");
      }
      out[c].push_back(parse_cell(cells[indices[c]], path, row, columns[c]));
    }
  }
  if (out.empty() || out[0].empty()) throw DataError(path + ": no data rows");
  return out;
}

std::vector<double> read_numeric_column(const std::string& path,
                                        const std::string& column) {
  return read_numeric_columns(path, std::span(&column, 1)).front();
}

namespace {

void write_value(std::FILE* f, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::fputs(buf, f);
}

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};

}  // namespace

void write_single_column_csv(const std::string& path, const std::string& header,
                             std::span<const double> values) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
  if (!f) throw DataError(path + ": cannot open for writing");
  std::fputs(header.c_str(), f.get());
  std::fputc('\n', f.get());
  for (double v : values) {
    write_value(f.get(), v);
    std::fputc('\n', f.get());
  }
}

void write_two_column_csv(const std::string& path, const std::string& header_x,
                          const std::string& header_y,
                          std::span<const std::pair<double, double>> rows) {
  std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
  if (!f) throw DataError(path + ": cannot open for writing");
  std::fputs((header_x + "," + header_y + "\n").c_str(), f.get());
  for (const auto& [x, y] : rows) {
    write_value(f.get(), x);
    std::fputc(',', f.get());
    write_value(f.get(), y);
    std::fputc('\n', f.get());
  }
}

}  // namespace cdftest

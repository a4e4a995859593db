// src/io.cc

// Copyright 2026  The sctc-mdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "sctc/io.h"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string_view>

#include "sctc/error.h"

namespace sctc {

namespace {

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename T>
T ParseNumber(std::string_view text, std::size_t line) {
  text = Trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::kParse, "line " + std::to_string(line) +
                                       ": cannot parse '" + std::string(text) +
                                       "' as a number");
  return value;
}

}  // namespace

Matrix ReadMatrixCsv(std::istream &in) {
  std::string line;
  std::size_t line_number = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_number;
      if (!Trim(line).empty()) return true;
    }
    return false;
  };
  if (!next_line()) throw Error(ErrorCode::kParse, "empty matrix file");
  auto header = SplitCommas(line);
  if (header.size() != 2)
    throw Error(ErrorCode::kParse, "header must be 'rows,cols'");
  const auto rows = ParseNumber<std::size_t>(header[0], line_number);
  const auto cols = ParseNumber<std::size_t>(header[1], line_number);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!next_line())
      throw Error(ErrorCode::kParse, "expected " + std::to_string(rows) +
                                         " rows, found " + std::to_string(r));
    auto cells = SplitCommas(line);
    if (cells.size() != cols)
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_number) + ": " +
                      std::to_string(cells.size()) + " values, expected " +
                      std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = ParseNumber<double>(cells[c], line_number);
  }
  if (next_line())
    throw Error(ErrorCode::kParse, "trailing data after " +
                                       std::to_string(rows) + " rows");
  return m;
}

Matrix ReadMatrixCsv(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return ReadMatrixCsv(in);
}

void WriteMatrixCsv(std::ostream &out, const Matrix &m) {
  out << m.rows() << ',' << m.cols() << '\n';
  out << std::setprecision(17);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ',';
      out << m(r, c);
    }
    out << '\n';
  }
}

void WriteMatrixCsv(const std::filesystem::path &path, const Matrix &m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  WriteMatrixCsv(out, m);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::string ReadTextFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace sctc

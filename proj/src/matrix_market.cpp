// Copyright 2026 the sketchlsr authors
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

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "sketchlsr/errors.hpp"
#include "sketchlsr/io.hpp"

namespace sketchlsr::io {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char ch) { return std::isspace(ch) != 0; });
}

double parse_real(std::string_view token, std::size_t line) {
  // from_chars rejects a leading '+', which Matrix Market writers do emit.
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected a real number, got '" + std::string(token) + "'", line);
  }
  return value;
}

std::size_t parse_count(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("expected a nonnegative integer, got '" + std::string(token) + "'", line);
  }
  return value;
}

// Next line that is neither a comment nor blank; false at end of input.
bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line) || line.front() == '%') continue;
    return true;
  }
  return false;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

DenseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty input", 1);
  line_no = 1;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto banner = split_ws(line);
  if (banner.size() != 5 || lower(banner[0]) != "%%matrixmarket" || lower(banner[1]) != "matrix") {
    throw ParseError("expected '%%MatrixMarket matrix <format> real general'", line_no);
  }
  const std::string format = lower(banner[2]);
  if (format != "array" && format != "coordinate") {
    throw ParseError("unsupported format '" + std::string(banner[2]) + "'", line_no);
  }
  if (lower(banner[3]) != "real") {
    throw ParseError("unsupported field '" + std::string(banner[3]) + "', only real is accepted", line_no);
  }
  if (lower(banner[4]) != "general") {
    throw ParseError("unsupported symmetry '" + std::string(banner[4]) + "'", line_no);
  }
  const bool coordinate = format == "coordinate";

  if (!next_data_line(in, line, line_no)) throw ParseError("missing size line", line_no + 1);
  const auto size = split_ws(line);
  if (size.size() != (coordinate ? 3u : 2u)) throw ParseError("malformed size line", line_no);
  const std::size_t rows = parse_count(size[0], line_no);
  const std::size_t cols = parse_count(size[1], line_no);
  DenseMatrix m(rows, cols);

  if (coordinate) {
    const std::size_t nnz = parse_count(size[2], line_no);
    for (std::size_t k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line, line_no)) {
        throw ParseError("expected " + std::to_string(nnz) + " entries, got " + std::to_string(k), line_no + 1);
      }
      const auto tok = split_ws(line);
      if (tok.size() != 3) throw ParseError("expected 'row col value'", line_no);
      const std::size_t i = parse_count(tok[0], line_no);
      const std::size_t j = parse_count(tok[1], line_no);
      if (i < 1 || i > rows || j < 1 || j > cols) {
        throw ParseError("index (" + std::string(tok[0]) + ", " + std::string(tok[1]) + ") out of bounds", line_no);
      }
      m(i - 1, j - 1) = parse_real(tok[2], line_no);
    }
  } else {
    const std::size_t total = rows * cols;
    for (std::size_t k = 0; k < total; ++k) {
      if (!next_data_line(in, line, line_no)) {
        throw ParseError("expected " + std::to_string(total) + " values, got " + std::to_string(k), line_no + 1);
      }
      const auto tok = split_ws(line);
      if (tok.size() != 1) throw ParseError("expected one value per line", line_no);
      m(k % rows, k / rows) = parse_real(tok[0], line_no);
    }
  }
  if (next_data_line(in, line, line_no)) throw ParseError("unexpected trailing data", line_no);
  return m;
}

DenseMatrix read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path.string() + "'");
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const DenseMatrix& m) {
  out << "%%MatrixMarket matrix array real general\n" << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) out << format_double(m(i, j)) << '\n';
  }
}

void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path.string() + "'");
  write_matrix_market(out, m);
  if (!out) throw DomainError("write to '" + path.string() + "' failed");
}

Vector read_csv_vector(std::istream& in) {
  Vector v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    const auto tok = split_ws(line);
    if (tok.size() != 1) throw ParseError("expected one value per line", line_no);
    v.push_back(parse_real(tok[0], line_no));
  }
  return v;
}

Vector read_vector(const std::filesystem::path& path, VectorFormat format) {
  if (format == VectorFormat::automatic) {
    format = lower(path.extension().string()) == ".mtx" ? VectorFormat::matrix_market : VectorFormat::csv;
  }
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path.string() + "'");
  if (format == VectorFormat::csv) return read_csv_vector(in);
  const DenseMatrix m = read_matrix_market(in);
  if (m.cols() != 1) {
    throw DomainError("'" + path.string() + "' has " + std::to_string(m.cols()) + " columns, expected 1");
  }
  return m.column(0);
}

}  // namespace sketchlsr::io

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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sketchlsr/dense_matrix.hpp"

namespace sketchlsr::io {

/// Reads "%%MatrixMarket matrix {array|coordinate} real general". Array data
/// is column-major; coordinate indices are 1-based and missing entries are 0.
/// Throws ParseError carrying the 1-based line number.
DenseMatrix read_matrix_market(std::istream& in);
DenseMatrix read_matrix_market(const std::filesystem::path& path);

/// Writes the array format with shortest round-trip number formatting.
void write_matrix_market(std::ostream& out, const DenseMatrix& m);
void write_matrix_market(const std::filesystem::path& path, const DenseMatrix& m);

enum class VectorFormat { automatic, matrix_market, csv };

/// Single-column Matrix Market or headerless CSV with one value per line.
/// `automatic` picks Matrix Market for a ".mtx" extension and CSV otherwise.
Vector read_vector(const std::filesystem::path& path, VectorFormat format = VectorFormat::automatic);
Vector read_csv_vector(std::istream& in);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);

}  // namespace sketchlsr::io

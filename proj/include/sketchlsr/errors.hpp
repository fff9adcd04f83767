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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sketchlsr {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or precondition violation (bad shapes, out-of-range
/// parameters, malformed configuration).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration field; `pointer` is the JSON pointer of the field
/// (e.g. "/c_grid/2").
class ConfigError : public DomainError {
 public:
  ConfigError(const std::string& pointer, const std::string& what)
      : DomainError(pointer + ": " + what), pointer_(pointer) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

/// The matrix fails the full-column-rank test sigma_min > tol * sigma_max.
class RankError : public Error {
 public:
  RankError(const std::string& what, double sigma_ratio)
      : Error(what), sigma_ratio_(sigma_ratio) {}
  double sigma_ratio() const noexcept { return sigma_ratio_; }

 private:
  double sigma_ratio_;
};

class FactorizationError : public Error {
 public:
  FactorizationError(const std::string& what, std::size_t rows, std::size_t cols)
      : Error(what + " (" + std::to_string(rows) + "x" + std::to_string(cols) + ")"),
        rows_(rows),
        cols_(cols) {}
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
};

/// A random draw could not produce a usable sketch (e.g. empty leverage
/// sample after all retries).
class SamplingError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A per-trial certificate identity failed. This is a correctness bug, not
/// sampling noise; the offending stream is attached so the trial can be replayed.
class CertificateViolation : public Error {
 public:
  CertificateViolation(const std::string& what, std::uint64_t seed, std::uint64_t stream)
      : Error(what + " (seed=" + std::to_string(seed) + ", stream=" + std::to_string(stream) + ")"),
        seed_(seed),
        stream_(stream) {}
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace sketchlsr

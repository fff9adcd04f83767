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

#include "sketchlsr/samplers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "sketchlsr/errors.hpp"
#include "sketchlsr/simd/kernels.hpp"

namespace sketchlsr {

std::string_view to_string(SketchKind kind) {
  switch (kind) {
    case SketchKind::leverage:
      return "leverage";
    case SketchKind::uniform:
      return "uniform";
    case SketchKind::srht:
      return "srht";
    case SketchKind::sparse_embedding:
      return "sparse";
  }
  return "unknown";
}

SketchKind parse_sketch_kind(std::string_view name) {
  if (name == "leverage") return SketchKind::leverage;
  if (name == "uniform") return SketchKind::uniform;
  if (name == "srht") return SketchKind::srht;
  if (name == "sparse" || name == "sparse_embedding") return SketchKind::sparse_embedding;
  throw DomainError("unknown sketch kind '" + std::string(name) + "'");
}

std::size_t SketchOperator::output_rows() const noexcept {
  if (const auto* lev = std::get_if<LeverageSample>(&realization)) return lev->indices.size();
  return c_target;
}

Vector leverage_probabilities(const LeverageProfile& profile, std::size_t c) {
  if (c == 0) throw DomainError("leverage_probabilities: c must be >= 1");
  if (profile.d == 0) throw DomainError("leverage_probabilities: profile has d = 0");
  const double factor = static_cast<double>(c) / static_cast<double>(profile.d);
  Vector p(profile.scores.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::min(1.0, factor * profile.scores[i]);
  return p;
}

SketchOperator draw_leverage_sketch(std::span<const double> probabilities, SeededRng& rng,
                                    const LeverageSketchOptions& options) {
  if (probabilities.empty()) throw DomainError("draw_leverage_sketch: empty probability vector");
  for (double p : probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("draw_leverage_sketch: probability outside [0,1]");
  }

  LeverageSample sample;
  sample.probabilities.assign(probabilities.begin(), probabilities.end());
  sample.weighting = options.weighting;

  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    sample.indices.clear();
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
      // Always consume one draw per index so the stream layout does not
      // depend on the probabilities.
      const double u = rng.uniform01();
      if (u < probabilities[i]) sample.indices.push_back(i);
    }
    if (!sample.indices.empty()) break;
  }
  if (sample.indices.empty()) {
    throw SamplingError("leverage sample empty after " + std::to_string(options.max_retries) +
                        " redraws");
  }

  sample.weights.reserve(sample.indices.size());
  for (std::size_t i : sample.indices) {
    const double p = probabilities[i];
    sample.weights.push_back(options.weighting == LeverageWeighting::inverse_sqrt ? 1.0 / std::sqrt(p)
                                                                                  : 1.0 / p);
  }

  SketchOperator op;
  op.kind = SketchKind::leverage;
  op.n = probabilities.size();
  op.c_target = options.c_target != 0
                    ? options.c_target
                    : static_cast<std::size_t>(std::llround(
                          std::accumulate(probabilities.begin(), probabilities.end(), 0.0)));
  op.realization = std::move(sample);
  return op;
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t c, SeededRng& rng) {
  if (c > n) throw DomainError("cannot draw " + std::to_string(c) + " of " + std::to_string(n));
  // Virtual identity permutation; only displaced slots are stored.
  std::unordered_map<std::size_t, std::size_t> displaced;
  displaced.reserve(2 * c);
  auto slot = [&](std::size_t i) {
    auto it = displaced.find(i);
    return it == displaced.end() ? i : it->second;
  };
  std::vector<std::size_t> out(c);
  for (std::size_t i = 0; i < c; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
    const std::size_t vi = slot(i);
    const std::size_t vj = slot(j);
    out[i] = vj;
    displaced[j] = vi;
  }
  std::sort(out.begin(), out.end());
  return out;
}

SketchOperator draw_uniform_sketch(std::size_t n, std::size_t c, SeededRng& rng) {
  if (c == 0 || c > n) {
    throw DomainError("uniform sketch needs 1 <= c <= n, got c=" + std::to_string(c) +
                      " n=" + std::to_string(n));
  }
  SketchOperator op;
  op.kind = SketchKind::uniform;
  op.n = n;
  op.c_target = c;
  op.realization = UniformSample{sample_without_replacement(n, c, rng)};
  return op;
}

SketchOperator draw_srht(std::size_t n, std::size_t c, SeededRng& rng) {
  if (c == 0 || c > n) {
    throw DomainError("SRHT needs 1 <= c <= n, got c=" + std::to_string(c) +
                      " n=" + std::to_string(n));
  }
  SrhtTransform t;
  t.padded_n = std::bit_ceil(n);
  t.signs.resize(t.padded_n);
  // One engine word supplies 64 signs, low bit first.
  for (std::size_t base = 0; base < t.padded_n; base += 64) {
    const std::uint64_t bits = rng.next_u64();
    const std::size_t count = std::min<std::size_t>(64, t.padded_n - base);
    for (std::size_t b = 0; b < count; ++b) t.signs[base + b] = ((bits >> b) & 1U) != 0U ? -1.0 : 1.0;
  }
  t.rows = sample_without_replacement(t.padded_n, c, rng);
  t.scale = std::sqrt(static_cast<double>(t.padded_n) / static_cast<double>(c));

  SketchOperator op;
  op.kind = SketchKind::srht;
  op.n = n;
  op.c_target = c;
  op.realization = std::move(t);
  return op;
}

SketchOperator draw_sparse_embedding(std::size_t n, std::size_t c, SeededRng& rng) {
  if (c == 0) throw DomainError("sparse embedding needs c >= 1");
  if (n == 0) throw DomainError("sparse embedding needs n >= 1");
  SparseEmbedding e;
  e.buckets.resize(n);
  e.signs.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.buckets[i] = static_cast<std::size_t>(rng.uniform_index(c));
    e.signs[i] = rng.sign();
  }
  SketchOperator op;
  op.kind = SketchKind::sparse_embedding;
  op.n = n;
  op.c_target = c;
  op.realization = std::move(e);
  return op;
}

Vector fwht(std::span<const double> x) {
  if (x.empty() || !std::has_single_bit(x.size())) {
    throw DomainError("fwht: length " + std::to_string(x.size()) + " is not a power of two");
  }
  Vector out(x.begin(), x.end());
  const auto& k = simd::active();
  k.fwht_rows(out.data(), out.size(), 1);
  const double norm = 1.0 / std::sqrt(static_cast<double>(out.size()));
  k.scaled_copy(norm, out.data(), out.data(), out.size());
  return out;
}

namespace {

// Row i of the virtual matrix [m | extra]; extra is empty or has m.rows() entries.
struct RowSource {
  const DenseMatrix& m;
  std::span<const double> extra;

  std::size_t width() const noexcept { return m.cols() + (extra.empty() ? 0 : 1); }

  void copy(const simd::KernelTable& k, std::size_t i, double scale, double* dst) const {
    k.scaled_copy(scale, m.row(i).data(), dst, m.cols());
    if (!extra.empty()) dst[m.cols()] = scale * extra[i];
  }

  void add(const simd::KernelTable& k, std::size_t i, double scale, double* dst) const {
    k.axpy(scale, m.row(i).data(), dst, m.cols());
    if (!extra.empty()) dst[m.cols()] += scale * extra[i];
  }
};

// log2 of the segment length L minimizing rows*log2(L) + kept*rows/L.
unsigned split_log(std::size_t rows, std::size_t kept) {
  const auto log_rows = static_cast<unsigned>(std::countr_zero(rows));
  unsigned best_log = log_rows;
  double best_cost = std::numeric_limits<double>::infinity();
  for (unsigned log_l = 0; log_l <= log_rows; ++log_l) {
    const double cost = static_cast<double>(rows) * log_l +
                        static_cast<double>(kept) * static_cast<double>(rows >> log_l);
    if (cost < best_cost) {
      best_cost = cost;
      best_log = log_l;
    }
  }
  return best_log;
}

// H_rows = H_B (x) H_L with row index a*L + b. Each length-L segment is
// filled, transformed in a cache-resident buffer, and folded into the kept
// rows with sign (-1)^popcount(a & segment). fill(s, buf) returns false for an
// all-zero segment, which is skipped.
template <class Fill>
DenseMatrix subsampled_fwht_stream(std::size_t rows, std::size_t width,
                                   std::span<const std::size_t> selected, Fill&& fill) {
  if (rows == 0 || !std::has_single_bit(rows)) {
    throw DomainError("subsampled_fwht_rows: row count is not a power of two");
  }
  const unsigned log_seg = split_log(rows, selected.size());
  const std::size_t seg = std::size_t{1} << log_seg;
  const std::size_t segments = rows >> log_seg;

  std::vector<std::size_t> hi(selected.size());
  std::vector<std::size_t> lo(selected.size());
  for (std::size_t r = 0; r < selected.size(); ++r) {
    if (selected[r] >= rows) throw DomainError("subsampled_fwht_rows: selected row out of range");
    hi[r] = selected[r] >> log_seg;
    lo[r] = selected[r] & (seg - 1);
  }

  const auto& k = simd::active();
  DenseMatrix out(selected.size(), width);
  std::vector<double> buf(seg * width);
  for (std::size_t s = 0; s < segments; ++s) {
    if (!fill(s, seg, buf.data())) continue;
    k.fwht_rows(buf.data(), seg, width);
    for (std::size_t r = 0; r < selected.size(); ++r) {
      const double sign = (std::popcount(hi[r] & s) & 1U) != 0U ? -1.0 : 1.0;
      k.axpy(sign, buf.data() + lo[r] * width, out.row(r).data(), width);
    }
  }
  return out;
}

}  // namespace

DenseMatrix subsampled_fwht_rows(std::span<const double> block, std::size_t rows, std::size_t width,
                                 std::span<const std::size_t> selected) {
  if (block.size() != rows * width) throw DomainError("subsampled_fwht_rows: block size mismatch");
  return subsampled_fwht_stream(rows, width, selected, [&](std::size_t s, std::size_t seg, double* buf) {
    std::copy_n(block.data() + s * seg * width, seg * width, buf);
    return true;
  });
}

DenseMatrix apply_sketch(const SketchOperator& op, const DenseMatrix& m,
                         std::span<const double> extra_column) {
  if (m.rows() != op.n) {
    throw DomainError("apply_sketch: operator expects " + std::to_string(op.n) + " rows, got " +
                      std::to_string(m.rows()));
  }
  if (!extra_column.empty() && extra_column.size() != op.n) {
    throw DomainError("apply_sketch: extra column has " + std::to_string(extra_column.size()) +
                      " entries, expected " + std::to_string(op.n));
  }
  const RowSource src{m, extra_column};
  const std::size_t width = src.width();
  const auto& k = simd::active();

  switch (op.kind) {
    case SketchKind::leverage: {
      const auto& s = std::get<LeverageSample>(op.realization);
      DenseMatrix out(s.indices.size(), width);
      for (std::size_t r = 0; r < s.indices.size(); ++r) {
        src.copy(k, s.indices[r], s.weights[r], out.row(r).data());
      }
      return out;
    }
    case SketchKind::uniform: {
      const auto& s = std::get<UniformSample>(op.realization);
      DenseMatrix out(s.indices.size(), width);
      for (std::size_t r = 0; r < s.indices.size(); ++r) src.copy(k, s.indices[r], 1.0, out.row(r).data());
      return out;
    }
    case SketchKind::srht: {
      const auto& t = std::get<SrhtTransform>(op.realization);
      const std::size_t n = op.n;
      DenseMatrix out = subsampled_fwht_stream(
          t.padded_n, width, t.rows, [&](std::size_t s, std::size_t seg, double* buf) {
            const std::size_t first = s * seg;
            if (first >= n) return false;
            const std::size_t last = std::min(n, first + seg);
            for (std::size_t i = first; i < last; ++i) src.copy(k, i, t.signs[i], buf + (i - first) * width);
            std::fill(buf + (last - first) * width, buf + seg * width, 0.0);
            return true;
          });
      const double norm = t.scale / std::sqrt(static_cast<double>(t.padded_n));
      k.scaled_copy(norm, out.data(), out.data(), out.entries().size());
      return out;
    }
    case SketchKind::sparse_embedding: {
      const auto& e = std::get<SparseEmbedding>(op.realization);
      DenseMatrix out(op.c_target, width);
      for (std::size_t i = 0; i < op.n; ++i) src.add(k, i, e.signs[i], out.row(e.buckets[i]).data());
      return out;
    }
  }
  throw DomainError("apply_sketch: unknown sketch kind");
}

DenseMatrix apply_sketch(const SketchOperator& op, const DenseMatrix& m) {
  return apply_sketch(op, m, {});
}

Vector apply_sketch(const SketchOperator& op, std::span<const double> v) {
  const DenseMatrix out = apply_sketch(op, DenseMatrix::column_vector(v));
  return Vector(out.entries().begin(), out.entries().end());
}

DenseMatrix densify(const SketchOperator& op) {
  DenseMatrix s(op.output_rows(), op.n);
  switch (op.kind) {
    case SketchKind::leverage: {
      const auto& lev = std::get<LeverageSample>(op.realization);
      for (std::size_t r = 0; r < lev.indices.size(); ++r) s(r, lev.indices[r]) = lev.weights[r];
      break;
    }
    case SketchKind::uniform: {
      const auto& u = std::get<UniformSample>(op.realization);
      for (std::size_t r = 0; r < u.indices.size(); ++r) s(r, u.indices[r]) = 1.0;
      break;
    }
    case SketchKind::srht: {
      const auto& t = std::get<SrhtTransform>(op.realization);
      const double norm = t.scale / std::sqrt(static_cast<double>(t.padded_n));
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t j = 0; j < op.n; ++j) {
          const double h = (std::popcount(t.rows[r] & j) & 1U) != 0U ? -1.0 : 1.0;
          s(r, j) = norm * h * t.signs[j];
        }
      }
      break;
    }
    case SketchKind::sparse_embedding: {
      const auto& e = std::get<SparseEmbedding>(op.realization);
      for (std::size_t i = 0; i < op.n; ++i) s(e.buckets[i], i) = e.signs[i];
      break;
    }
  }
  return s;
}

}  // namespace sketchlsr

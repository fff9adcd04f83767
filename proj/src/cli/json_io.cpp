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

#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "sketchlsr/errors.hpp"
#include "sketchlsr/io.hpp"
#include "sketchlsr/serialization.hpp"

namespace sketchlsr::serialization {
namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') {
      out += "~0";
    } else if (ch == '/') {
      out += "~1";
    } else {
      out += ch;
    }
  }
  return out;
}

std::string shown(const std::string& pointer) { return pointer.empty() ? "/" : pointer; }

std::uint64_t read_u64(const Json& v, const std::string& pointer) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) throw ConfigError(shown(pointer), "must be a nonnegative integer");
  throw ConfigError(shown(pointer), "must be an integer, got " + std::string(v.type_name()));
}

std::string read_string(const Json& v, const std::string& pointer) {
  if (!v.is_string()) throw ConfigError(shown(pointer), "must be a string");
  return v.get<std::string>();
}

// Field access on one JSON object; every key must be consumed before finish().
class Fields {
 public:
  Fields(const Json& obj, std::string pointer) : obj_(obj), pointer_(std::move(pointer)) {
    if (!obj_.is_object()) throw ConfigError(shown(pointer_), "must be a JSON object");
  }

  std::string at(const std::string& key) const { return pointer_ + "/" + escape_token(key); }

  const Json* find(const std::string& key) {
    seen_.insert(key);
    const auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const Json& require(const std::string& key) {
    const Json* v = find(key);
    if (v == nullptr) throw ConfigError(at(key), "required field is missing");
    return *v;
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback) {
    const Json* v = find(key);
    return v == nullptr ? fallback : read_u64(*v, at(key));
  }

  double real(const std::string& key, double fallback) {
    const Json* v = find(key);
    return v == nullptr ? fallback : read_number(*v, at(key));
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const Json* v = find(key);
    return v == nullptr ? fallback : read_string(*v, at(key));
  }

  void finish() const {
    for (const auto& item : obj_.items()) {
      if (seen_.count(item.key()) == 0) throw ConfigError(at(item.key()), "unknown field");
    }
  }

 private:
  const Json& obj_;
  std::string pointer_;
  std::set<std::string> seen_;
};

template <class Fn>
auto rethrow_at(const std::string& pointer, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    throw ConfigError(pointer, e.what());
  }
}

std::vector<std::size_t> read_counts(const Json& v, const std::string& pointer) {
  if (!v.is_array()) throw ConfigError(shown(pointer), "must be an array");
  std::vector<std::size_t> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(read_u64(v[i], pointer + "/" + std::to_string(i)));
  }
  return out;
}

std::vector<double> read_reals(const Json& v, const std::string& pointer) {
  if (!v.is_array()) throw ConfigError(shown(pointer), "must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_number(v[i], pointer + "/" + std::to_string(i)));
  return out;
}

std::vector<double> read_signs(const Json& v, const std::string& pointer) {
  std::vector<double> out = read_reals(v, pointer);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] != 1.0 && out[i] != -1.0) throw ConfigError(pointer + "/" + std::to_string(i), "sign must be 1 or -1");
  }
  return out;
}

Json signs_json(const std::vector<double>& signs) {
  Json out = Json::array();
  for (double s : signs) out.push_back(s < 0.0 ? -1 : 1);
  return out;
}

Json numbers_json(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(number(v));
  return out;
}

void require_increasing(const std::vector<std::size_t>& idx, std::size_t bound, const std::string& pointer) {
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= bound) throw ConfigError(pointer + "/" + std::to_string(i), "index out of range");
    if (i > 0 && idx[i] <= idx[i - 1]) throw ConfigError(pointer + "/" + std::to_string(i), "indices must increase");
  }
}

}  // namespace

Json number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double read_number(const Json& value, const std::string& pointer) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError(shown(pointer), "must be a number");
}

std::string_view to_string(harness::CoherenceProfile profile) {
  switch (profile) {
    case harness::CoherenceProfile::incoherent:
      return "incoherent";
    case harness::CoherenceProfile::spiked:
      return "spiked";
    case harness::CoherenceProfile::one_hot:
      return "one_hot";
  }
  return "unknown";
}

harness::CoherenceProfile parse_coherence_profile(std::string_view name) {
  if (name == "incoherent") return harness::CoherenceProfile::incoherent;
  if (name == "spiked") return harness::CoherenceProfile::spiked;
  if (name == "one_hot") return harness::CoherenceProfile::one_hot;
  throw DomainError("unknown coherence profile '" + std::string(name) + "'");
}

std::string_view to_string(LeverageWeighting weighting) {
  return weighting == LeverageWeighting::inverse_sqrt ? "inverse_sqrt" : "literal_inverse";
}

LeverageWeighting parse_weighting(std::string_view name) {
  if (name == "inverse_sqrt") return LeverageWeighting::inverse_sqrt;
  if (name == "literal_inverse") return LeverageWeighting::literal_inverse;
  throw DomainError("unknown leverage weighting '" + std::string(name) + "'");
}

Json to_json(const SketchOperator& op) {
  Json payload = Json::object();
  switch (op.kind) {
    case SketchKind::leverage: {
      const auto& s = std::get<LeverageSample>(op.realization);
      payload["indices"] = s.indices;
      payload["weights"] = numbers_json(s.weights);
      payload["probabilities"] = numbers_json(s.probabilities);
      payload["weighting"] = to_string(s.weighting);
      break;
    }
    case SketchKind::uniform:
      payload["indices"] = std::get<UniformSample>(op.realization).indices;
      break;
    case SketchKind::srht: {
      const auto& t = std::get<SrhtTransform>(op.realization);
      payload["padded_n"] = t.padded_n;
      payload["signs"] = signs_json(t.signs);
      payload["rows"] = t.rows;
      payload["scale"] = number(t.scale);
      break;
    }
    case SketchKind::sparse_embedding: {
      const auto& e = std::get<SparseEmbedding>(op.realization);
      payload["buckets"] = e.buckets;
      payload["signs"] = signs_json(e.signs);
      break;
    }
  }
  return Json{{"kind", to_string(op.kind)}, {"n", op.n}, {"c_target", op.c_target}, {"payload", std::move(payload)}};
}

SketchOperator sketch_from_json(const Json& doc) {
  Fields root(doc, "");
  SketchOperator op;
  const std::string kind = read_string(root.require("kind"), "/kind");
  op.kind = rethrow_at("/kind", [&] { return parse_sketch_kind(kind); });
  op.n = read_u64(root.require("n"), "/n");
  op.c_target = read_u64(root.require("c_target"), "/c_target");
  if (op.n == 0) throw ConfigError("/n", "must be >= 1");
  Fields p(root.require("payload"), "/payload");
  root.finish();

  switch (op.kind) {
    case SketchKind::leverage: {
      LeverageSample s;
      s.indices = read_counts(p.require("indices"), "/payload/indices");
      s.weights = read_reals(p.require("weights"), "/payload/weights");
      s.probabilities = read_reals(p.require("probabilities"), "/payload/probabilities");
      const std::string w = read_string(p.require("weighting"), "/payload/weighting");
      s.weighting = rethrow_at("/payload/weighting", [&] { return parse_weighting(w); });
      require_increasing(s.indices, op.n, "/payload/indices");
      if (s.indices.empty()) throw ConfigError("/payload/indices", "must not be empty");
      if (s.weights.size() != s.indices.size()) throw ConfigError("/payload/weights", "length must match indices");
      if (s.probabilities.size() != op.n) throw ConfigError("/payload/probabilities", "length must equal n");
      op.realization = std::move(s);
      break;
    }
    case SketchKind::uniform: {
      UniformSample s;
      s.indices = read_counts(p.require("indices"), "/payload/indices");
      require_increasing(s.indices, op.n, "/payload/indices");
      if (s.indices.size() != op.c_target) throw ConfigError("/payload/indices", "length must equal c_target");
      op.realization = std::move(s);
      break;
    }
    case SketchKind::srht: {
      SrhtTransform t;
      t.padded_n = read_u64(p.require("padded_n"), "/payload/padded_n");
      t.signs = read_signs(p.require("signs"), "/payload/signs");
      t.rows = read_counts(p.require("rows"), "/payload/rows");
      t.scale = read_number(p.require("scale"), "/payload/scale");
      if (t.padded_n != std::bit_ceil(op.n)) throw ConfigError("/payload/padded_n", "must be the power of two >= n");
      if (t.signs.size() != t.padded_n) throw ConfigError("/payload/signs", "length must equal padded_n");
      require_increasing(t.rows, t.padded_n, "/payload/rows");
      if (t.rows.size() != op.c_target) throw ConfigError("/payload/rows", "length must equal c_target");
      op.realization = std::move(t);
      break;
    }
    case SketchKind::sparse_embedding: {
      SparseEmbedding e;
      e.buckets = read_counts(p.require("buckets"), "/payload/buckets");
      e.signs = read_signs(p.require("signs"), "/payload/signs");
      if (e.buckets.size() != op.n) throw ConfigError("/payload/buckets", "length must equal n");
      if (e.signs.size() != op.n) throw ConfigError("/payload/signs", "length must equal n");
      for (std::size_t i = 0; i < e.buckets.size(); ++i) {
        if (e.buckets[i] >= op.c_target) throw ConfigError("/payload/buckets/" + std::to_string(i), "bucket out of range");
      }
      op.realization = std::move(e);
      break;
    }
  }
  p.finish();
  return op;
}

Json to_json(const CertificateReport& r, const CertificateCheck& c) {
  return Json{
      {"sigma_min_SU", number(r.sigma_min_SU)},
      {"sigma_max_SU", number(r.sigma_max_SU)},
      {"cross_term", number(r.cross_term)},
      {"z_norm", number(r.z_norm)},
      {"uz_norm_sq", number(r.uz_norm_sq)},
      {"equality_gap", number(r.equality_gap)},
      {"z_bound", number(r.z_bound)},
      {"beta_gap_sq", number(r.beta_gap_sq)},
      {"beta_gap_bound", number(r.beta_gap_bound)},
      {"residual_perp_sq", number(r.residual_perp_sq)},
      {"residual_perp_bound", number(r.residual_perp_bound)},
      {"sigma_min_X", number(r.sigma_min_X)},
      {"checks",
       {{"equality", c.equality}, {"beta_gap", c.beta_gap}, {"z_bound", c.z_bound}, {"residual_perp", c.residual_perp}}},
  };
}

Json to_json(const harness::ExperimentConfig& config) {
  const auto& p = config.problem;
  Json problem{{"n", p.n},
               {"d", p.d},
               {"coherence", to_string(p.coherence)},
               {"spike_k", p.spike_k},
               {"kappa", number(p.kappa)},
               {"gamma", number(p.gamma)},
               {"seed", p.seed}};
  Json sampler{{"kind", to_string(config.sampler.kind)}};
  if (config.sampler.kind == SketchKind::leverage) sampler["weighting"] = to_string(config.sampler.weighting);
  Json out{{"problem", std::move(problem)},
           {"sampler", std::move(sampler)},
           {"c_grid", config.c_grid},
           {"trials", config.trials},
           {"eps", number(config.eps)},
           {"master_seed", config.master_seed},
           {"best_of", config.best_of}};
  if (config.success_threshold) out["success_threshold"] = number(*config.success_threshold);
  return out;
}

harness::ExperimentConfig experiment_config_from_json(const Json& doc) {
  harness::ExperimentConfig config;
  Fields root(doc, "");

  Fields problem(root.require("problem"), "/problem");
  auto& p = config.problem;
  p.n = read_u64(problem.require("n"), "/problem/n");
  p.d = read_u64(problem.require("d"), "/problem/d");
  const std::string profile = problem.text("coherence", "incoherent");
  p.coherence = rethrow_at("/problem/coherence", [&] { return parse_coherence_profile(profile); });
  p.spike_k = problem.count("spike_k", p.spike_k);
  p.kappa = problem.real("kappa", p.kappa);
  p.gamma = problem.real("gamma", p.gamma);
  p.seed = problem.count("seed", p.seed);
  problem.finish();

  Fields sampler(root.require("sampler"), "/sampler");
  const std::string kind = read_string(sampler.require("kind"), "/sampler/kind");
  config.sampler.kind = rethrow_at("/sampler/kind", [&] { return parse_sketch_kind(kind); });
  const std::string weighting = sampler.text("weighting", "inverse_sqrt");
  config.sampler.weighting = rethrow_at("/sampler/weighting", [&] { return parse_weighting(weighting); });
  sampler.finish();

  config.c_grid = read_counts(root.require("c_grid"), "/c_grid");
  config.trials = root.count("trials", config.trials);
  config.eps = root.real("eps", config.eps);
  if (const Json* t = root.find("success_threshold"); t != nullptr && !t->is_null()) {
    config.success_threshold = read_number(*t, "/success_threshold");
  }
  config.master_seed = root.count("master_seed", config.master_seed);
  config.best_of = root.count("best_of", config.best_of);
  root.finish();

  harness::validate(config);
  return config;
}

Json to_json(const harness::TrialStats& stats) {
  Json per_c = Json::array();
  for (const auto& s : stats.per_c) {
    per_c.push_back(Json{
        {"c", s.c},
        {"success_count", s.success_count},
        {"trials", s.trials},
        {"rate", number(static_cast<double>(s.success_count) / static_cast<double>(s.trials))},
        {"wilson_ci_low", number(s.wilson_low)},
        {"wilson_ci_high", number(s.wilson_high)},
        {"ratio_quantiles",
         {{"p50", number(s.ratio.p50)}, {"p90", number(s.ratio.p90)}, {"p99", number(s.ratio.p99)}, {"max", number(s.ratio.max)}}},
        {"mean_c_realized", number(s.mean_c_realized)},
        {"expected_c_realized", number(s.expected_c_realized)},
        {"certificate_violations", s.certificate_violations},
        {"ratios", numbers_json(s.ratios)},
    });
  }
  return Json{{"success_threshold", number(stats.threshold)},
              {"achieved_mu", number(stats.achieved_mu)},
              {"achieved_gamma", number(stats.achieved_gamma)},
              {"achieved_kappa", number(stats.achieved_kappa)},
              {"per_c", std::move(per_c)}};
}

std::string to_csv(const harness::TrialStats& stats) {
  using io::format_double;
  std::ostringstream out;
  out << "c,rate,ci_low,ci_high,p50,p90,p99,max,mean_wall_time\n";
  for (const auto& s : stats.per_c) {
    out << s.c << ',' << format_double(static_cast<double>(s.success_count) / static_cast<double>(s.trials)) << ','
        << format_double(s.wilson_low) << ',' << format_double(s.wilson_high) << ',' << format_double(s.ratio.p50)
        << ',' << format_double(s.ratio.p90) << ',' << format_double(s.ratio.p99) << ','
        << format_double(s.ratio.max) << ',' << format_double(s.mean_wall_time_s) << '\n';
  }
  return out.str();
}

}  // namespace sketchlsr::serialization

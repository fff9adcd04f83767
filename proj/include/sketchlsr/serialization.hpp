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

#include <string>

#include <json.hpp>

#include "sketchlsr/harness.hpp"
#include "sketchlsr/samplers.hpp"
#include "sketchlsr/solver.hpp"

// JSON forms of library types. Non-finite doubles are written as the strings
// "inf", "-inf" and "nan"; counts and seeds as integers.

namespace sketchlsr::serialization {

using Json = nlohmann::json;

Json number(double value);
/// Accepts a JSON number or one of the non-finite strings. Throws ConfigError
/// at `pointer` otherwise.
double read_number(const Json& value, const std::string& pointer);

Json to_json(const SketchOperator& op);
SketchOperator sketch_from_json(const Json& doc);

Json to_json(const CertificateReport& report, const CertificateCheck& check);

Json to_json(const harness::ExperimentConfig& config);
/// Unknown keys, wrong types and out-of-range values throw ConfigError with
/// the JSON pointer of the field. Runs harness::validate.
harness::ExperimentConfig experiment_config_from_json(const Json& doc);

/// Deterministic part of the statistics (no wall times).
Json to_json(const harness::TrialStats& stats);

/// Header "c,rate,ci_low,ci_high,p50,p90,p99,max,mean_wall_time" and one row per c.
std::string to_csv(const harness::TrialStats& stats);

std::string_view to_string(harness::CoherenceProfile profile);
harness::CoherenceProfile parse_coherence_profile(std::string_view name);
std::string_view to_string(LeverageWeighting weighting);
LeverageWeighting parse_weighting(std::string_view name);

}  // namespace sketchlsr::serialization

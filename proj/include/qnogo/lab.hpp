// Copyright 2026 The qnogo Authors
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

// Seeded batch experiments and their reports.
//
// Seeding: experiment stream k of a run with master seed S draws from
// mix_seed(S, k); the stream numbering per experiment is fixed in lab.cpp
// and never depends on the worker count.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qnogo/channels.hpp"
#include "qnogo/hilbert.hpp"

namespace qnogo::lab {

using Json = nlohmann::json;

enum class Relation { less, less_equal, greater, greater_equal };

/// `measured relation tolerance` must hold for the check to pass.
struct Check {
  std::string id;
  std::string invariant;  ///< stable module/property identifier
  std::string description;
  double measured = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::less_equal;
  bool pass = false;
};

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct RunReport {
  std::string experiment;
  Json config;  ///< effective configuration, defaults filled in
  std::vector<Check> checks;
  std::vector<Table> tables;
  /// Wall-clock seconds per phase. Not part of the emitted report so that
  /// reports stay byte-identical across runs.
  std::vector<std::pair<std::string, double>> timings;

  bool all_pass() const;
};

struct ExperimentConfig {
  std::string experiment;
  std::optional<std::uint64_t> seed;
  /// Replaces the tolerance of every exact-arithmetic check.
  std::optional<double> tolerance;
  Json params = Json::object();
};

const std::vector<std::string>& experiment_names();
bool is_stochastic(const std::string& experiment);

/// Validates a config document: top-level keys experiment, seed,
/// tolerance, params; params keys per experiment. Unknown keys throw.
ExperimentConfig parse_config(const Json& doc);

/// Runs one experiment. Throws qnogo::Error on malformed parameters, an
/// unknown experiment, or a missing seed for a stochastic experiment.
RunReport run(const ExperimentConfig& config, unsigned workers = 0);

/// Sorted keys, two-space indent, doubles at 17 significant digits.
std::string emit_json(const RunReport& report);
/// Long format: section,name,row,column,value.
std::string emit_csv(const RunReport& report);
std::string emit_timings(const RunReport& report);

/// Canonical JSON text for any document (same formatting rules).
std::string canonical_json(const Json& doc);

// Interchange format: a complex number is [re, im]; a bare number is read
// as a real amplitude. Matrices are arrays of rows. A channel is
// {"dim_in", "dim_out", "kraus": [matrix, ...]}.

Json vector_to_json(const Vec& v);
Vec vector_from_json(const Json& j);
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);
Json channel_to_json(const KrausChannel& ch);
/// Shape-checked only; pair with is_cptni when the map must be physical.
KrausChannel channel_from_json(const Json& j);

}  // namespace qnogo::lab

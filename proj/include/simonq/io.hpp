// Copyright 2026 The simonq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON and JSON-lines encodings of every persisted artifact.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "simonq/circuit.hpp"
#include "simonq/game.hpp"
#include "simonq/layout.hpp"
#include "simonq/sampler.hpp"
#include "simonq/stats.hpp"

namespace simonq {

using Json = nlohmann::ordered_json;

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);

Json circuit_to_json(const CnotCircuit& circuit);
CnotCircuit circuit_from_json(const Json& j);

Json graph_to_json(const CouplingGraph& graph);
CouplingGraph graph_from_json(const Json& j);
/// parse_device, or a JSON graph file when `spec` names an existing file.
CouplingGraph load_device(const std::string& spec);

Json embedding_to_json(const ChainEmbedding& e);
Json native_to_json(const NativeCircuit& c);
Json idle_gaps_to_json(int n, const std::vector<int>& wire_map, const std::vector<IdleGap>& gaps);

Json durations_to_json(const GateDurations& d);
GateDurations durations_from_json(const Json& j);
/// "boston", "miami", or a JSON file.
GateDurations load_durations(const std::string& spec);

std::string shot_to_line(const ShotRecord& r);
ShotRecord shot_from_line(std::string_view line);
std::string shots_to_jsonl(const std::vector<ShotRecord>& records);
std::vector<ShotRecord> read_shots(const std::filesystem::path& path);

Json noise_to_json(const NoiseProfile& p);
NoiseProfile noise_from_json(const Json& j);

Json f_hat_to_json(const FHatTable& t);
FHatTable f_hat_from_json(const Json& j);

Json game_report(const NtsEstimate& e);

/// Flat rows, one per (w, model), with the shared selection columns.
Json fit_rows(const std::string& dataset, const SelectionReport& rep);
Json fit_to_json(const FitResult& fit);

}  // namespace simonq

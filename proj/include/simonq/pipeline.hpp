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

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simonq/io.hpp"
#include "simonq/sampler.hpp"
#include "simonq/stats.hpp"

namespace simonq {

/// One simulate/analyze experiment.
///
/// JSON keys: "n" (single size) or "n_range": [lo, hi]; "w" (cap on the
/// Hamming-weight cutoff, default n); "shots_per_class"; "theta"; "seed";
/// "noise" (inline profile) or "noise_file"; "noise_by_n" ({"7": profile});
/// "device"; "output_dir"; "bootstrap": {"folds", "resamples"};
/// "budget_seconds" (per (n, w) cell, 0 = unlimited).
struct ExperimentConfig {
  int n_min = 3;
  int n_max = 3;
  std::optional<int> w_cap;
  std::int64_t shots_per_class = 15000;
  double theta = kDefaultTheta;
  std::uint64_t seed = 1;
  NoiseProfile noise = NoiseProfile::noiseless();
  std::map<int, NoiseProfile> noise_by_n;
  std::optional<std::string> device;
  std::filesystem::path output_dir;
  BootstrapConfig bootstrap;
  double budget_seconds = 0.0;

  const NoiseProfile& profile_for(int n) const;
  int w_for(int n) const;
  void validate() const;
};

/// $SIMON_OUT_DIR if set, else "simonq-out".
std::filesystem::path default_output_dir();

/// Relative paths inside the file resolve against its directory.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json(const Json& j, const std::filesystem::path& base_dir = {});

std::filesystem::path shot_file(const std::filesystem::path& dir, int n);

/// Calibration then evaluation records for size n, equal counts per class,
/// drawn from distinct streams.
std::vector<ShotRecord> simulate_records(const ExperimentConfig& cfg, int n);

/// Writes one JSONL file per n; checks the device embedding first when a
/// device is configured (ChainNotFound propagates).
std::vector<std::filesystem::path> run_simulate(const ExperimentConfig& cfg);

/// Drops the leading n - m bits of b and z. Requires HW(b) <= m <= n.
std::vector<ShotRecord> reduce_from_largest(const std::vector<ShotRecord>& records, int m);

struct NtsCell {
  int n = 0;
  int w = 0;
  double n_w = 0.0;
  std::optional<BootstrapResult> result;
  std::string refusal;  // empty when usable
  std::string detail;
  FHatTable f_hat;
};

struct AvailabilityRow {
  int n = 0;
  int w_avail = 0;  // largest usable w, 0 if none
  std::string reason;  // refusal reason just above w_avail, empty if w_avail = n
  std::map<int, std::string> refusals;
};

struct CurveFit {
  int w = 0;
  std::vector<ScalingPoint> points;
  std::optional<FitResult> polylog;
  std::optional<FitResult> poly;
  std::string failure;  // why one or both fits are missing

  bool compared() const { return polylog && poly && polylog->diagnostics && poly->diagnostics; }
};

struct AnalysisResult {
  std::vector<NtsCell> cells;
  std::vector<AvailabilityRow> availability;
  std::vector<CurveFit> restricted;
  std::vector<CurveFit> unrestricted;
  SelectionReport restricted_selection;
  SelectionReport unrestricted_selection;

  const NtsCell* cell(int n, int w) const;
};

/// Smallest cutoff for which an unrestricted fit is attempted.
inline constexpr int kMinUnrestrictedW = 7;

/// One (n, w) cell from shot records of size n.
NtsCell analyze_cell(int n, int w, const std::vector<ShotRecord>& records, const ExperimentConfig& cfg);

/// Full analysis over records keyed by n.
AnalysisResult analyze(const ExperimentConfig& cfg, const std::map<int, std::vector<ShotRecord>>& shots);

/// nts_table.csv, availability.json, fit_report.json, plot CSVs.
std::vector<std::filesystem::path> write_analysis(const AnalysisResult& result, const std::filesystem::path& dir);

Json availability_to_json(const std::vector<AvailabilityRow>& rows);
Json fit_report_to_json(const AnalysisResult& result);
std::string plot_csv(const std::vector<ScalingPoint>& points, const std::vector<int>& ws);

}  // namespace simonq

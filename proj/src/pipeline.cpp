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

#include "simonq/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <utility>

#include "simonq/errors.hpp"
#include "simonq/layout.hpp"

namespace simonq {

namespace fs = std::filesystem;

const NoiseProfile& ExperimentConfig::profile_for(int n) const {
  const auto it = noise_by_n.find(n);
  return it == noise_by_n.end() ? noise : it->second;
}

int ExperimentConfig::w_for(int n) const { return std::min(n, w_cap.value_or(n)); }

void ExperimentConfig::validate() const {
  if (n_min < 1 || n_max < n_min) throw ConfigError("need 1 <= n_min <= n_max");
  if (w_cap && *w_cap < 1) throw ConfigError("w must be >= 1");
  if (shots_per_class < 1) throw ConfigError("shots_per_class must be >= 1");
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("theta must lie in (0, 1)");
  if (budget_seconds < 0.0) throw ConfigError("budget_seconds must be >= 0");
  bootstrap.validate();
}

fs::path default_output_dir() {
  if (const char* env = std::getenv("SIMON_OUT_DIR"); env && *env) return env;
  return "simonq-out";
}

ExperimentConfig config_from_json(const Json& j, const fs::path& base_dir) {
  ExperimentConfig c;
  try {
    if (j.contains("n")) {
      c.n_min = c.n_max = j.at("n").get<int>();
    } else if (j.contains("n_range")) {
      const auto r = j.at("n_range").get<std::vector<int>>();
      if (r.size() != 2) throw ConfigError("n_range must be [lo, hi]");
      c.n_min = r[0];
      c.n_max = r[1];
    }
    if (j.contains("w")) c.w_cap = j.at("w").get<int>();
    c.shots_per_class = j.value("shots_per_class", c.shots_per_class);
    c.theta = j.value("theta", c.theta);
    c.seed = j.value("seed", c.seed);
    c.budget_seconds = j.value("budget_seconds", c.budget_seconds);
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base_dir / p; };
    if (j.contains("noise")) c.noise = noise_from_json(j.at("noise"));
    if (j.contains("noise_file")) {
      const auto p = resolve(j.at("noise_file").get<std::string>());
      if (!fs::exists(p)) throw ConfigError("noise profile file not found: " + p.string());
      c.noise = noise_from_json(read_json_file(p));
    }
    if (j.contains("noise_by_n")) {
      for (const auto& [k, v] : j.at("noise_by_n").items()) c.noise_by_n[std::stoi(k)] = noise_from_json(v);
    }
    if (j.contains("device")) c.device = j.at("device").get<std::string>();
    c.output_dir = j.contains("output_dir") ? resolve(j.at("output_dir").get<std::string>()) : default_output_dir();
    if (j.contains("bootstrap")) {
      const auto& b = j.at("bootstrap");
      c.bootstrap.folds = b.value("folds", c.bootstrap.folds);
      c.bootstrap.resamples = b.value("resamples", c.bootstrap.resamples);
    }
    c.bootstrap.seed = c.seed;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const fs::path& path) {
  if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
  return config_from_json(read_json_file(path), path.parent_path());
}

fs::path shot_file(const fs::path& dir, int n) { return dir / ("shots_n" + std::to_string(n) + ".jsonl"); }

std::vector<ShotRecord> simulate_records(const ExperimentConfig& cfg, int n) {
  const int w = cfg.w_for(n);
  const auto& profile = cfg.profile_for(n);
  auto out = simulate_shots(n, w, cfg.shots_per_class, profile, cfg.seed, ShotTag::Calibration);
  auto eval = simulate_shots(n, w, cfg.shots_per_class, profile, cfg.seed, ShotTag::Evaluation);
  out.insert(out.end(), std::make_move_iterator(eval.begin()), std::make_move_iterator(eval.end()));
  return out;
}

std::vector<fs::path> run_simulate(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.device) {
    const auto graph = load_device(*cfg.device);
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) embed_query(n, cfg.w_for(n), graph);
  }
  std::vector<fs::path> files;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const auto path = shot_file(cfg.output_dir, n);
    write_file_atomic(path, shots_to_jsonl(simulate_records(cfg, n)));
    files.push_back(path);
  }
  return files;
}

std::vector<ShotRecord> reduce_from_largest(const std::vector<ShotRecord>& records, int m) {
  std::vector<ShotRecord> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    if (m > r.n || m < 1) throw InvalidArgument("target size m must lie in [1, n]");
    if (r.hw() > m) {
      throw InvalidArgument("cannot reduce HW(b)=" + std::to_string(r.hw()) + " to m=" + std::to_string(m));
    }
    const std::size_t drop = static_cast<std::size_t>(r.n - m);
    for (std::size_t j = 0; j < drop; ++j) {
      if (r.b.test(j)) throw InvalidArgument("record b has support in the dropped block");
    }
    ShotRecord s;
    s.n = m;
    s.b = Bits(static_cast<std::size_t>(m));
    s.z = Bits(static_cast<std::size_t>(m));
    for (std::size_t j = 0; j < static_cast<std::size_t>(m); ++j) {
      s.b.set(j, r.b.test(j + drop));
      s.z.set(j, r.z.test(j + drop));
    }
    s.shot = r.shot;
    s.tag = r.tag;
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct ClassStream {
  Bits truth;
  std::vector<Bits> z;
};

std::map<int, ClassStream> evaluation_streams(int n, const std::vector<ShotRecord>& records) {
  std::map<int, ClassStream> out;
  for (const auto& r : records) {
    if (r.n != n || r.tag != ShotTag::Evaluation) continue;
    auto& s = out[r.hw()];
    if (s.z.empty()) {
      s.truth = r.b;
    } else if (!(s.truth == r.b)) {
      throw ConfigError("evaluation records of weight " + std::to_string(r.hw()) + " at n=" + std::to_string(n) +
                        " mix several hidden strings");
    }
    s.z.push_back(r.z);
  }
  return out;
}

NtsCell analyze_with_streams(int n, int w, const std::vector<ShotRecord>& records,
                             const std::map<int, ClassStream>& streams, const ExperimentConfig& cfg) {
  NtsCell cell;
  cell.n = n;
  cell.w = w;
  cell.n_w = static_cast<double>(count_candidates(n, w));
  const auto start = Clock::now();
  try {
    cell.f_hat = estimate_f_hat(records, n, w);
    if (cell.f_hat.max_up_to(w) <= 0.5) {
      throw Refusal(refusal::kFhatLeHalf, "max f_hat over classes 1.." + std::to_string(w) + " is <= 0.5");
    }
    const CandidateEnumeration cands(n, w);
    BayesPlayer player(cands, cell.f_hat, cfg.theta);
    std::vector<FoldTallies> classes;
    for (int i = 1; i <= w; ++i) {
      const auto it = streams.find(i);
      if (it == streams.end()) {
        throw ConfigError("no evaluation records at n=" + std::to_string(n) + " for weight " + std::to_string(i));
      }
      classes.push_back(play_folds(player, it->second.truth, it->second.z, cfg.bootstrap.folds));
      if (cfg.budget_seconds > 0 &&
          std::chrono::duration<double>(Clock::now() - start).count() > cfg.budget_seconds) {
        throw Refusal(refusal::kBudgetExhausted, "exceeded " + std::to_string(cfg.budget_seconds) + " s");
      }
    }
    cell.result = bootstrap_nts(n, w, classes, cfg.bootstrap);
  } catch (const Refusal& r) {
    cell.refusal = r.reason();
    cell.detail = r.what();
  }
  return cell;
}

}  // namespace

NtsCell analyze_cell(int n, int w, const std::vector<ShotRecord>& records, const ExperimentConfig& cfg) {
  return analyze_with_streams(n, w, records, evaluation_streams(n, records), cfg);
}

const NtsCell* AnalysisResult::cell(int n, int w) const {
  for (const auto& c : cells) {
    if (c.n == n && c.w == w) return &c;
  }
  return nullptr;
}

namespace {

std::optional<ScalingPoint> usable_point(const AnalysisResult& res, int n, int w) {
  const auto* c = res.cell(n, w);
  if (!c || !c->result) return std::nullopt;
  return ScalingPoint{n, c->n_w, c->result->mean, c->result->sigma};
}

void fit_curve(CurveFit& curve) {
  if (curve.points.size() < 3) {
    curve.failure = "fewer than 3 points";
    return;
  }
  // Fitted separately: a boundary optimum in one model (poly with beta -> 0
  // on log-linear data) must not discard the other.
  for (auto [model, slot] : {std::pair{Model::Polylog, &curve.polylog}, std::pair{Model::Poly, &curve.poly}}) {
    try {
      *slot = fit_model(curve.points, model);
    } catch (const NumericError& e) {
      if (!curve.failure.empty()) curve.failure += "; ";
      curve.failure += e.what();
    }
  }
}

SelectionReport select_curves(const std::vector<CurveFit>& curves) {
  std::vector<std::pair<FitResult, FitResult>> fits;
  std::vector<int> ws;
  for (const auto& c : curves) {
    if (!c.polylog || !c.poly) continue;
    fits.emplace_back(*c.polylog, *c.poly);
    ws.push_back(c.w);
  }
  return select_model(fits, ws);
}

}  // namespace

AnalysisResult analyze(const ExperimentConfig& cfg, const std::map<int, std::vector<ShotRecord>>& shots) {
  cfg.validate();
  AnalysisResult res;
  int w_top = 0;
  for (int n = std::max(cfg.n_min, 2); n <= cfg.n_max; ++n) {
    const auto it = shots.find(n);
    if (it == shots.end()) throw ConfigError("no shot records for n=" + std::to_string(n));
    const auto streams = evaluation_streams(n, it->second);
    AvailabilityRow row;
    row.n = n;
    const int w_max = cfg.w_for(n);
    w_top = std::max(w_top, w_max);
    std::string sticky;  // memory and time refusals carry over to larger w
    for (int w = 1; w <= w_max; ++w) {
      NtsCell cell;
      if (!sticky.empty()) {
        cell.n = n;
        cell.w = w;
        cell.n_w = static_cast<double>(count_candidates(n, w));
        cell.refusal = sticky;
        cell.detail = "skipped after a " + sticky + " refusal at a smaller w";
      } else {
        cell = analyze_with_streams(n, w, it->second, streams, cfg);
        if (cell.refusal == refusal::kMemoryGuard || cell.refusal == refusal::kBudgetExhausted) sticky = cell.refusal;
      }
      if (cell.result) {
        row.w_avail = w;
      } else {
        row.refusals[w] = cell.refusal;
      }
      res.cells.push_back(std::move(cell));
    }
    if (row.w_avail < n) {
      const auto r = row.refusals.find(row.w_avail + 1);
      row.reason = r != row.refusals.end() ? r->second : "not-requested";
    }
    res.availability.push_back(std::move(row));
  }

  const int n_lo = std::max(cfg.n_min, 2);
  for (int w = 1; w <= w_top; ++w) {
    CurveFit curve;
    curve.w = w;
    for (int n = n_lo; n <= cfg.n_max; ++n) {
      const auto p = usable_point(res, n, std::min(n, w));
      if (!p) break;
      curve.points.push_back(*p);
    }
    fit_curve(curve);
    res.restricted.push_back(std::move(curve));
  }
  for (int w = kMinUnrestrictedW; w <= cfg.n_max; ++w) {
    CurveFit curve;
    curve.w = w;
    for (int n = n_lo; n <= w; ++n) {
      const auto p = usable_point(res, n, n);
      if (!p) break;
      curve.points.push_back(*p);
    }
    if (curve.points.empty() || curve.points.back().n != w) {
      curve.failure = "unrestricted points do not reach n=" + std::to_string(w);
      curve.points.clear();
    } else {
      fit_curve(curve);
    }
    res.unrestricted.push_back(std::move(curve));
  }
  res.restricted_selection = select_curves(res.restricted);
  res.unrestricted_selection = select_curves(res.unrestricted);
  return res;
}

Json availability_to_json(const std::vector<AvailabilityRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json refusals = Json::object();
    for (const auto& [w, why] : r.refusals) refusals[std::to_string(w)] = why;
    arr.push_back({{"n", r.n},
                   {"w_max_avail", r.w_avail},
                   {"reason", r.reason.empty() ? Json(nullptr) : Json(r.reason)},
                   {"refusals", std::move(refusals)}});
  }
  return arr;
}

namespace {

Json selection_json(const std::string& dataset, const std::vector<CurveFit>& curves, const SelectionReport& sel) {
  Json j;
  j["dataset"] = dataset;
  j["threshold"] = sel.threshold;
  j["w_c"] = sel.w_c ? Json(*sel.w_c) : Json(nullptr);
  j["speedup_class"] = sel.speedup_class;
  j["classical_beta"] = kClassicalBeta;
  Json rows = fit_rows(dataset, sel);
  Json skipped = Json::array();
  for (const auto& c : curves) {
    if (c.compared()) continue;
    bool partial = false;
    for (const auto* fit : {&c.polylog, &c.poly}) {
      if (!*fit || !(*fit)->diagnostics) continue;
      // One model converged: report it without a comparison.
      Json row;
      row["dataset"] = dataset;
      row["w"] = c.w;
      const Json fields = fit_to_json(**fit);
      for (const auto& [k, v] : fields.items()) row[k] = v;
      for (const char* k : {"dAIC", "weights", "preferred", "w_c", "speedup_class"}) row[k] = nullptr;
      row["decisive"] = false;
      row["note"] = "no model comparison: " + c.failure;
      rows.push_back(std::move(row));
      partial = true;
    }
    if (!partial) {
      skipped.push_back({{"w", c.w},
                         {"points", c.points.size()},
                         {"reason", c.failure.empty() ? "too few points for diagnostics" : c.failure}});
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Json& a, const Json& b) { return a.at("w").get<int>() < b.at("w").get<int>(); });
  j["rows"] = std::move(rows);
  j["skipped"] = std::move(skipped);
  return j;
}

}  // namespace

Json fit_report_to_json(const AnalysisResult& result) {
  Json j;
  j["restricted"] = selection_json("restricted", result.restricted, result.restricted_selection);
  j["unrestricted"] = selection_json("unrestricted", result.unrestricted, result.unrestricted_selection);
  return j;
}

std::string plot_csv(const std::vector<ScalingPoint>& points, const std::vector<int>& ws) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "n,log2_Nw,log2_NTSQ,sigma_log2,NTSC_lb,NTS_IQ\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto& p = points[k];
    const int w = ws[k];
    os << p.n << ',' << std::log2(p.n_w) << ',' << std::log2(p.y) << ',' << p.sigma / (p.y * std::numbers::ln2)
       << ',' << nts_c_lower_bound(count_candidates(p.n, w)) << ',' << nts_iq_interpolation(p.n, w) << '\n';
  }
  return os.str();
}

std::vector<fs::path> write_analysis(const AnalysisResult& result, const fs::path& dir) {
  std::vector<fs::path> files;
  auto emit = [&](const fs::path& name, const std::string& content) {
    write_file_atomic(dir / name, content);
    files.push_back(dir / name);
  };

  std::ostringstream table;
  table << std::setprecision(17);
  table << "n,w,N_w,nts_mean,nts_sigma,nts_point,refusal\n";
  for (const auto& c : result.cells) {
    table << c.n << ',' << c.w << ',' << c.n_w << ',';
    if (c.result) {
      table << c.result->mean << ',' << c.result->sigma << ',';
      if (c.result->point) table << *c.result->point;
      table << ",\n";
    } else {
      table << ",,," << c.refusal << '\n';
    }
  }
  emit("nts_table.csv", table.str());
  emit("availability.json", availability_to_json(result.availability).dump(2) + "\n");
  emit("fit_report.json", fit_report_to_json(result).dump(2) + "\n");
  for (const auto& c : result.restricted) {
    if (c.points.empty()) continue;
    std::vector<int> ws;
    for (const auto& p : c.points) ws.push_back(std::min(p.n, c.w));
    emit("plot_restricted_w" + std::to_string(c.w) + ".csv", plot_csv(c.points, ws));
  }
  const CurveFit* longest = nullptr;
  for (const auto& c : result.unrestricted) {
    if (!c.points.empty() && (!longest || c.points.size() > longest->points.size())) longest = &c;
  }
  if (longest) {
    std::vector<int> ws;
    for (const auto& p : longest->points) ws.push_back(p.n);
    emit("plot_unrestricted.csv", plot_csv(longest->points, ws));
  }
  return files;
}

}  // namespace simonq

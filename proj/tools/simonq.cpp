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

// simonq command-line driver.
//
// Exit codes: 0 success, 1 I/O failure, 2 usage or configuration error,
// 3 refusal (availability, chain not found, size guard), 4 numeric failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "simonq/circuit.hpp"
#include "simonq/errors.hpp"
#include "simonq/game.hpp"
#include "simonq/io.hpp"
#include "simonq/layout.hpp"
#include "simonq/oracle.hpp"
#include "simonq/pipeline.hpp"
#include "simonq/stats.hpp"

namespace fs = std::filesystem;
using namespace simonq;

namespace {

constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRefusal = 3;
constexpr int kExitNumeric = 4;

fs::path out_dir_or_default(const std::string& flag) { return flag.empty() ? default_output_dir() : fs::path(flag); }

void check_weight_args(int n, int w) {
  if (n < 1) throw InvalidArgument("--n must be >= 1");
  if (w < 1 || w > n) throw InvalidArgument("need 1 <= weight <= n");
}

int cmd_oracle(int n, int hw, bool star, const std::string& out) {
  check_weight_args(n, hw);
  const auto circuit = star ? build_star_oracle(n, hw) : build_constant_depth_oracle(n, hw);
  const auto dir = out_dir_or_default(out);
  const std::string stem = std::string(star ? "star" : "oracle") + "_n" + std::to_string(n) + "_hw" + std::to_string(hw);
  write_file_atomic(dir / (stem + ".json"), circuit_to_json(circuit).dump(2) + "\n");
  write_file_atomic(dir / (stem + ".dot"), to_dot(circuit));
  std::cout << "gates: " << circuit.size() << "\nentangling depth: " << entangling_depth(circuit) << "\n"
            << "wrote " << (dir / (stem + ".json")).string() << " and .dot\n";
  return 0;
}

int cmd_compile(int n, int w, const std::string& device, const std::string& durations, const std::string& out) {
  check_weight_args(n, w);
  const auto graph = load_device(device);
  ChainEmbedding emb;
  try {
    emb = embed_query(n, w, graph);
  } catch (const ChainNotFound& e) {
    std::cerr << "chain-not-found: " << e.what() << "\nlongest chain found: " << e.longest().size() << " qubits\n";
    return kExitRefusal;
  }
  const auto dur = load_durations(durations);
  Json report;
  report["device"] = device;
  report["embedding"] = embedding_to_json(emb);
  Json classes = Json::array();
  bool all_free = true;
  for (int i = 1; i <= w; ++i) {
    const QueryCircuit qc(build_constant_depth_oracle(n, i));
    const bool ok = verify_swap_free(emb, graph, qc);
    all_free = all_free && ok;
    const auto timed = alap_schedule(lower_to_native(qc), dur);
    const auto map = emb.logical_map(i);
    Json c;
    c["hw"] = i;
    c["swap_free"] = ok;
    c["native"] = native_to_json(timed);
    c["idle_gaps"] = idle_gaps_to_json(n, map, idle_gaps(timed));
    classes.push_back(std::move(c));
  }
  report["swap_free"] = all_free;
  report["durations"] = durations_to_json(dur);
  report["classes"] = std::move(classes);
  const auto path = out_dir_or_default(out) / ("compile_n" + std::to_string(n) + "_w" + std::to_string(w) + ".json");
  write_file_atomic(path, report.dump(2) + "\n");
  std::cout << "qubits used: " << emb.chain.size() + (emb.isolated ? 1 : 0) << "\nchain length: " << emb.chain.size()
            << "\nisolated ancilla: " << (emb.isolated ? std::to_string(*emb.isolated) : "none")
            << "\nswap-free: " << (all_free ? "yes" : "no") << "\nwrote " << path.string() << "\n";
  return all_free ? 0 : kExitRefusal;
}

int cmd_simulate(const std::string& config, const std::string& out) {
  auto cfg = load_config(config);
  if (!out.empty()) cfg.output_dir = out;
  std::vector<fs::path> files;
  try {
    files = run_simulate(cfg);
  } catch (const ChainNotFound& e) {
    std::cerr << "chain-not-found: " << e.what() << "\n";
    return kExitRefusal;
  }
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
  return 0;
}

int cmd_estimate_f(const std::string& shots, int n, int w, const std::string& out) {
  const auto records = read_shots(shots);
  const auto table = estimate_f_hat(records, n, w);
  const auto text = f_hat_to_json(table).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out, text);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

NoiseProfile noise_arg(const std::string& noise_file, std::optional<double> epsilon) {
  if (!noise_file.empty()) return noise_from_json(read_json_file(noise_file));
  if (epsilon) return NoiseProfile::parametric(*epsilon);
  return NoiseProfile::noiseless();
}

int cmd_play(int n, int w, const NoiseProfile& noise, const std::string& f_hat_file, double theta, std::int64_t rounds,
             std::uint64_t seed, const std::string& out) {
  check_weight_args(n, w);
  MonteCarloOptions opts;
  opts.theta = theta;
  opts.rounds = rounds;
  opts.seed = seed;
  if (!f_hat_file.empty()) opts.f_hat = f_hat_from_json(read_json_file(f_hat_file));
  const auto est = play_monte_carlo(n, w, noise, opts);
  const auto text = game_report(est).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out, text);
    std::cout << "wrote " << out << "\n";
  }
  if (!est.refusal.empty()) {
    std::cerr << "refused: " << est.refusal << "\n";
    return kExitRefusal;
  }
  return 0;
}

int cmd_nts(const std::string& shots, int n, int w, double theta, int folds, int resamples, std::uint64_t seed) {
  check_weight_args(n, w);
  ExperimentConfig cfg;
  cfg.n_min = cfg.n_max = n;
  cfg.theta = theta;
  cfg.bootstrap = {folds, resamples, seed};
  const auto cell = analyze_cell(n, w, read_shots(shots), cfg);
  Json j;
  j["n"] = n;
  j["w"] = w;
  j["theta"] = theta;
  j["f_hat"] = f_hat_to_json(cell.f_hat);
  if (cell.result) {
    j["nts"] = cell.result->mean;
    j["sigma"] = cell.result->sigma;
    j["nts_point"] = cell.result->point ? Json(*cell.result->point) : Json(nullptr);
    j["Q_i"] = cell.result->q_i;
    j["p_i"] = cell.result->p_i;
    j["exhausted_rounds"] = cell.result->exhausted_rounds;
  } else {
    j["refusal"] = cell.refusal;
    j["detail"] = cell.detail;
  }
  std::cout << j.dump(2) << "\n";
  return cell.result ? 0 : kExitRefusal;
}

int cmd_fit(const std::string& points_file, const std::string& model) {
  // CSV with header n,N_w,y,sigma.
  std::istringstream in(read_file(points_file));
  std::string line;
  std::getline(in, line);
  std::vector<ScalingPoint> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    ScalingPoint p;
    char c1, c2, c3;
    if (!(row >> p.n >> c1 >> p.n_w >> c2 >> p.y >> c3 >> p.sigma)) throw ConfigError("bad points row: " + line);
    pts.push_back(p);
  }
  Json j = Json::array();
  std::vector<FitResult> fits;
  for (const auto m : {Model::Polylog, Model::Poly}) {
    if (model != "both" && parse_model(model) != m) continue;
    fits.push_back(fit_model(pts, m));
    j.push_back(fit_to_json(fits.back()));
  }
  if (fits.size() == 2 && fits[0].diagnostics && fits[1].diagnostics) {
    const std::array<double, 2> aic{fits[0].diagnostics->aic, fits[1].diagnostics->aic};
    const auto wts = akaike_weights(aic);
    j = Json{{"fits", j},
             {"dAIC", aic[1] - aic[0]},
             {"weights", {{"polylog", wts[0]}, {"poly", wts[1]}}},
             {"preferred", aic[1] >= aic[0] ? "polylog" : "poly"}};
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_analyze(const std::string& config, const std::string& shots_dir, const std::string& out) {
  auto cfg = load_config(config);
  if (!out.empty()) cfg.output_dir = out;
  const fs::path src = shots_dir.empty() ? cfg.output_dir : fs::path(shots_dir);
  std::map<int, std::vector<ShotRecord>> shots;
  for (int n = std::max(cfg.n_min, 2); n <= cfg.n_max; ++n) shots[n] = read_shots(shot_file(src, n));
  const auto res = analyze(cfg, shots);
  for (const auto& f : write_analysis(res, cfg.output_dir)) std::cout << "wrote " << f.string() << "\n";
  for (const auto& row : res.availability) {
    std::cout << "n=" << row.n << " w_max_avail=" << row.w_avail;
    if (!row.reason.empty()) std::cout << " (" << row.reason << ")";
    std::cout << "\n";
  }
  const auto show = [](const char* name, const SelectionReport& s) {
    std::cout << name << ": w_c=" << (s.w_c ? std::to_string(*s.w_c) : "none") << " speedup=" << s.speedup_class
              << "\n";
  };
  show("restricted", res.restricted_selection);
  show("unrestricted", res.unrestricted_selection);
  return 0;
}

int cmd_reduce(const std::string& shots, int m, const std::string& out) {
  const auto reduced = reduce_from_largest(read_shots(shots), m);
  write_file_atomic(out, shots_to_jsonl(reduced));
  std::cout << "wrote " << reduced.size() << " records to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant-depth Simon oracle compiler and query-scaling lab"};
  app.require_subcommand(1);
  std::string out;

  int n = 0, w = 0, hw = 0, m = 0;
  bool star = false;
  auto* oracle = app.add_subcommand("oracle", "Build an oracle circuit; write JSON and DOT");
  oracle->add_option("--n", n, "Problem size")->required();
  oracle->add_option("--hw", hw, "Hamming weight of b")->required();
  oracle->add_flag("--star", star, "Build the star-shaped baseline instead");
  oracle->add_option("--out", out, "Output directory");

  std::string device, durations = "boston";
  auto* compile = app.add_subcommand("compile", "Embed on a device and ALAP-schedule");
  compile->add_option("--n", n)->required();
  compile->add_option("--w", w)->required();
  compile->add_option("--device", device, "grid:RxC, heavy-hex:boston-156, or a graph JSON file")->required();
  compile->add_option("--durations", durations, "boston, miami, or a JSON file");
  compile->add_option("--out", out);

  std::string config;
  auto* simulate = app.add_subcommand("simulate", "Write calibration and evaluation shot files");
  simulate->add_option("--config", config)->required();
  simulate->add_option("--out", out);

  std::string shots;
  auto* estimate = app.add_subcommand("estimate-f", "Estimate f_hat from calibration shots");
  estimate->add_option("--shots", shots)->required();
  estimate->add_option("--n", n)->required();
  estimate->add_option("--w", w)->required();
  estimate->add_option("--out", out, "Output file (default stdout)");

  std::string noise_file, f_hat_file;
  std::optional<double> epsilon;
  double theta = kDefaultTheta;
  std::int64_t rounds = 1000;
  std::uint64_t seed = 1;
  auto* play = app.add_subcommand("play", "Monte Carlo guessing game");
  play->add_option("--n", n)->required();
  play->add_option("--w", w)->required();
  play->add_option("--epsilon", epsilon, "Parametric noise level");
  play->add_option("--noise", noise_file, "Noise profile JSON");
  play->add_option("--f-hat", f_hat_file, "Player's f_hat JSON (default: true f)");
  play->add_option("--theta", theta);
  play->add_option("--rounds", rounds);
  play->add_option("--seed", seed);
  play->add_option("--out", out, "Output file (default stdout)");

  int folds = 10, resamples = 15000;
  auto* nts = app.add_subcommand("nts", "Bootstrapped NTS for one (n, w) from a shot file");
  nts->add_option("--shots", shots)->required();
  nts->add_option("--n", n)->required();
  nts->add_option("--w", w)->required();
  nts->add_option("--theta", theta);
  nts->add_option("--folds", folds);
  nts->add_option("--resamples", resamples);
  nts->add_option("--seed", seed);

  std::string points, model = "both";
  auto* fit = app.add_subcommand("fit", "Fit polylog/poly models to a points CSV (n,N_w,y,sigma)");
  fit->add_option("--points", points)->required();
  fit->add_option("--model", model, "polylog, poly, or both");

  std::string shots_dir;
  auto* analyze_cmd = app.add_subcommand("analyze", "NTS table, fits, model selection, availability, plot CSVs");
  analyze_cmd->add_option("--config", config)->required();
  analyze_cmd->add_option("--shots-dir", shots_dir, "Directory with shots_n<N>.jsonl (default: output dir)");
  analyze_cmd->add_option("--out", out);

  auto* reduce = app.add_subcommand("reduce", "Reduce Simon-n shot records to Simon-m");
  reduce->add_option("--shots", shots)->required();
  reduce->add_option("--m", m)->required();
  reduce->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*oracle) return cmd_oracle(n, hw, star, out);
    if (*compile) return cmd_compile(n, w, device, durations, out);
    if (*simulate) return cmd_simulate(config, out);
    if (*estimate) return cmd_estimate_f(shots, n, w, out);
    if (*play) return cmd_play(n, w, noise_arg(noise_file, epsilon), f_hat_file, theta, rounds, seed, out);
    if (*nts) return cmd_nts(shots, n, w, theta, folds, resamples, seed);
    if (*fit) return cmd_fit(points, model);
    if (*analyze_cmd) return cmd_analyze(config, shots_dir, out);
    if (*reduce) return cmd_reduce(shots, m, out);
  } catch (const Refusal& e) {
    std::cerr << "refused (" << e.reason() << "): " << e.what() << "\n";
    return kExitRefusal;
  } catch (const ChainNotFound& e) {
    std::cerr << "chain-not-found: " << e.what() << "\n";
    return kExitRefusal;
  } catch (const SizeError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefusal;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

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

#include "simonq/io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "simonq/errors.hpp"

namespace simonq {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::system_error(errno, std::generic_category(), "cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const fs::path& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad field \"") + key + "\": " + e.what());
  }
}

}  // namespace

Json circuit_to_json(const CnotCircuit& circuit) {
  const auto layered = schedule_layers(circuit);
  Json j;
  j["n"] = circuit.n();
  j["hw"] = circuit.hw();
  Json gates = Json::array();
  for (const auto& g : circuit.gates()) gates.push_back({g.control, g.target});
  j["gates"] = std::move(gates);
  Json labels = Json::array();
  for (int w = 0; w < circuit.wires(); ++w) labels.push_back(wire_label(circuit.n(), w));
  j["wire_labels"] = std::move(labels);
  j["gate_count"] = circuit.size();
  j["entangling_depth"] = layered.depth();
  j["layers"] = layered.layers;
  return j;
}

CnotCircuit circuit_from_json(const Json& j) {
  const int n = field<int>(j, "n");
  try {
    CnotCircuit c(n, j.value("hw", 0));
    for (const auto& g : field<Json>(j, "gates")) {
      const auto pair = g.get<std::array<int, 2>>();
      c.add(pair[0], pair[1]);
    }
    return c;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad gate list: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("bad circuit: ") + e.what());
  }
}

Json graph_to_json(const CouplingGraph& graph) {
  Json j;
  j["family"] = family_name(graph.family());
  j["qubit_count"] = graph.qubit_count();
  j["edges"] = graph.edges();
  return j;
}

CouplingGraph graph_from_json(const Json& j) {
  const auto family = parse_family(j.value("family", std::string("custom")));
  const auto edges = field<std::vector<std::pair<int, int>>>(j, "edges");
  try {
    return CouplingGraph(field<int>(j, "qubit_count"), edges, family);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("bad coupling graph: ") + e.what());
  }
}

CouplingGraph load_device(const std::string& spec) {
  if (fs::exists(spec) && fs::is_regular_file(spec)) return graph_from_json(read_json_file(spec));
  return parse_device(spec);
}

Json embedding_to_json(const ChainEmbedding& e) {
  Json j;
  j["n"] = e.n;
  j["w"] = e.w;
  j["qubits_used"] = e.chain.size() + (e.isolated ? 1 : 0);
  j["chain"] = e.chain;
  j["isolated"] = e.isolated ? Json(*e.isolated) : Json(nullptr);
  Json classes = Json::object();
  for (int i = 1; i <= e.w; ++i) {
    const auto m = e.logical_map(i);
    Json cm = Json::object();
    for (int wire = 0; wire < 2 * e.n; ++wire) cm[wire_label(e.n, wire)] = m[wire];
    classes[std::to_string(i)] = std::move(cm);
  }
  j["class_maps"] = std::move(classes);
  return j;
}

Json native_to_json(const NativeCircuit& c) {
  Json j;
  j["wires"] = c.wires;
  j["timed"] = c.timed;
  Json ops = Json::array();
  for (const auto& op : c.ops) {
    Json o;
    o["kind"] = native_kind_name(op.kind);
    o["qubits"] = op.q1 >= 0 ? std::vector<int>{op.q0, op.q1} : std::vector<int>{op.q0};
    if (op.kind == NativeKind::Rz) o["angle"] = op.angle;
    if (c.timed) {
      o["start_ns"] = op.start_ns;
      o["duration_ns"] = op.duration_ns;
    }
    ops.push_back(std::move(o));
  }
  j["ops"] = std::move(ops);
  return j;
}

Json idle_gaps_to_json(int n, const std::vector<int>& wire_map, const std::vector<IdleGap>& gaps) {
  Json arr = Json::array();
  for (const auto& g : gaps) {
    arr.push_back({{"wire", wire_label(n, g.wire)},
                   {"qubit", wire_map.empty() ? g.wire : wire_map[g.wire]},
                   {"start_ns", g.start_ns},
                   {"end_ns", g.end_ns},
                   {"length_ns", g.length()}});
  }
  return arr;
}

Json durations_to_json(const GateDurations& d) {
  return {{"oneq_ns", d.oneq_ns}, {"twoq_ns", d.twoq_ns}, {"readout_ns", d.readout_ns}};
}

GateDurations durations_from_json(const Json& j) {
  GateDurations d{field<double>(j, "oneq_ns"), field<double>(j, "twoq_ns"), field<double>(j, "readout_ns")};
  d.validate();
  return d;
}

GateDurations load_durations(const std::string& spec) {
  if (spec == "boston") return GateDurations::boston();
  if (spec == "miami") return GateDurations::miami();
  return durations_from_json(read_json_file(spec));
}

std::string shot_to_line(const ShotRecord& r) {
  std::string s = "{\"n\":" + std::to_string(r.n) + ",\"b\":\"" + r.b.to_string() + "\",\"z\":\"" +
                  r.z.to_string() + "\",\"shot\":" + std::to_string(r.shot) + ",\"tag\":\"" +
                  shot_tag_name(r.tag) + "\"}";
  return s;
}

ShotRecord shot_from_line(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed shot record: ") + e.what());
  }
  ShotRecord r;
  r.n = field<int>(j, "n");
  try {
    r.b = Bits::from_string(field<std::string>(j, "b"));
    r.z = Bits::from_string(field<std::string>(j, "z"));
    r.tag = parse_shot_tag(field<std::string>(j, "tag"));
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("malformed shot record: ") + e.what());
  }
  r.shot = field<std::int64_t>(j, "shot");
  if (static_cast<int>(r.b.size()) != r.n || static_cast<int>(r.z.size()) != r.n) {
    throw ConfigError("shot record bit lengths do not match n");
  }
  return r;
}

std::string shots_to_jsonl(const std::vector<ShotRecord>& records) {
  std::string out;
  out.reserve(records.size() * (48 + 2 * (records.empty() ? 0 : static_cast<std::size_t>(records[0].n))));
  for (const auto& r : records) {
    out += shot_to_line(r);
    out += '\n';
  }
  return out;
}

std::vector<ShotRecord> read_shots(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read shot file " + path.string());
  std::vector<ShotRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(shot_from_line(line));
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

Json noise_to_json(const NoiseProfile& p) {
  Json j;
  j["kind"] = noise_kind_name(p.kind());
  if (p.kind() == NoiseProfile::Kind::Parametric) j["epsilon"] = p.epsilon();
  if (p.kind() == NoiseProfile::Kind::Table) {
    Json f = Json::object();
    for (auto [i, v] : p.entries()) f[std::to_string(i)] = v;
    j["f"] = std::move(f);
  }
  return j;
}

NoiseProfile noise_from_json(const Json& j) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "noiseless") return NoiseProfile::noiseless();
  if (kind == "parametric") return NoiseProfile::parametric(field<double>(j, "epsilon"));
  if (kind == "table") {
    std::map<int, double> f;
    const auto table = field<Json>(j, "f");
    try {
      for (const auto& [k, v] : table.items()) f[std::stoi(k)] = v.get<double>();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("bad noise table: ") + e.what());
    }
    return NoiseProfile::table(std::move(f));
  }
  throw ConfigError("unknown noise profile kind \"" + kind + "\"");
}

Json f_hat_to_json(const FHatTable& t) {
  Json j = Json::object();
  for (auto [i, v] : t.f_hat) j[std::to_string(i)] = v;
  return j;
}

FHatTable f_hat_from_json(const Json& j) {
  FHatTable t;
  for (const auto& [k, v] : j.items()) {
    const double f = v.get<double>();
    if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("f_hat(" + k + ") outside [0, 1]");
    t.f_hat[std::stoi(k)] = f;
    t.counts[std::stoi(k)] = 1;
  }
  return t;
}

Json game_report(const NtsEstimate& e) {
  Json j;
  j["n"] = e.n;
  j["w"] = e.w;
  j["theta"] = e.theta;
  j["rounds"] = e.rounds;
  j["Q_i"] = e.q_i;
  j["p_i"] = e.p_i;
  j["nts"] = e.value ? Json(*e.value) : Json(nullptr);
  j["nts_se"] = e.std_error;
  Json flags = Json::array();
  if (!e.refusal.empty()) flags.push_back(e.refusal);
  if (e.exhausted_rounds > 0) flags.push_back("exhausted-rounds:" + std::to_string(e.exhausted_rounds));
  j["flags"] = std::move(flags);
  return j;
}

Json fit_to_json(const FitResult& fit) {
  Json j;
  j["model"] = model_name(fit.model);
  j["params"] = fit.params;
  j["cov"] = fit.cov;
  j["rss_weighted"] = fit.rss_weighted;
  j["points"] = fit.points;
  if (fit.diagnostics) {
    const auto& d = *fit.diagnostics;
    j["R2"] = d.r2;
    j["adjR2"] = d.adj_r2;
    j["AIC"] = d.aic;
    j["AICc"] = d.aicc;
    j["BIC"] = d.bic;
    j["t"] = d.t_stat;
    j["p"] = d.p_value;
  }
  return j;
}

Json fit_rows(const std::string& dataset, const SelectionReport& rep) {
  Json rows = Json::array();
  for (const auto& e : rep.entries) {
    for (const auto* fit : {&e.polylog, &e.poly}) {
      Json row;
      row["dataset"] = dataset;
      row["w"] = e.w;
      const Json fields = fit_to_json(*fit);
      for (const auto& [k, v] : fields.items()) row[k] = v;
      row["dAIC"] = e.delta_aic;
      row["weights"] = {{"polylog", e.weights[0]}, {"poly", e.weights[1]}};
      row["preferred"] = model_name(e.preferred);
      row["decisive"] = e.decisive;
      row["w_c"] = rep.w_c ? Json(*rep.w_c) : Json(nullptr);
      row["speedup_class"] = e.speedup_class;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace simonq

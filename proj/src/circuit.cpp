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

#include "simonq/circuit.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <sstream>

#include "simonq/errors.hpp"

namespace simonq {

std::string wire_label(int n, int wire) {
  if (wire < n) return "d_" + std::to_string(wire);
  return "a_" + std::to_string(wire - n);
}

bool cnots_commute(const Cnot& a, const Cnot& b) {
  return a.control != b.target && a.target != b.control;
}

CnotCircuit::CnotCircuit(int n, int hw) : n_(n), hw_(hw) {
  if (n < 1) throw InvalidArgument("circuit needs n >= 1");
}

void CnotCircuit::add(int control, int target) {
  if (control == target) throw InvalidArgument("CNOT control equals target");
  if (control < 0 || target < 0 || control >= wires() || target >= wires()) {
    throw InvalidArgument("CNOT wire out of range");
  }
  gates_.push_back({control, target});
}

std::vector<Cnot> LayeredCircuit::ordered_gates() const {
  std::vector<Cnot> out;
  out.reserve(circuit.size());
  for (const auto& layer : layers) {
    for (auto g : layer) out.push_back(circuit.gates()[g]);
  }
  return out;
}

LayeredCircuit schedule_layers(const CnotCircuit& circuit) {
  LayeredCircuit out{circuit, {}};
  const auto gates = circuit.gates();
  // busy[layer] holds the wires in use.
  std::vector<std::vector<bool>> busy;
  std::vector<std::size_t> layer_of(gates.size());

  for (std::size_t g = 0; g < gates.size(); ++g) {
    std::size_t floor = 0;
    for (std::size_t h = 0; h < g; ++h) {
      if (!cnots_commute(gates[h], gates[g])) floor = std::max(floor, layer_of[h] + 1);
    }
    std::size_t layer = floor;
    for (; layer < busy.size(); ++layer) {
      if (!busy[layer][gates[g].control] && !busy[layer][gates[g].target]) break;
    }
    if (layer == busy.size()) {
      busy.emplace_back(circuit.wires(), false);
      out.layers.emplace_back();
    }
    busy[layer][gates[g].control] = true;
    busy[layer][gates[g].target] = true;
    out.layers[layer].push_back(g);
    layer_of[g] = layer;
  }
  return out;
}

std::size_t entangling_depth(const LayeredCircuit& layered) { return layered.depth(); }

std::size_t entangling_depth(const CnotCircuit& circuit) {
  return schedule_layers(circuit).depth();
}

std::string to_dot(const CnotCircuit& circuit) {
  std::ostringstream os;
  os << "digraph oracle {\n  rankdir=LR;\n";
  for (int j = 0; j < circuit.wires(); ++j) {
    os << "  \"" << wire_label(circuit.n(), j) << "\";\n";
  }
  for (const auto& g : circuit.gates()) {
    os << "  \"" << wire_label(circuit.n(), g.control) << "\" -> \""
       << wire_label(circuit.n(), g.target) << "\";\n";
  }
  os << "}\n";
  return os.str();
}

QueryCircuit::QueryCircuit(CnotCircuit oracle) : oracle_(std::move(oracle)) {
  if (oracle_.n() < 1) throw InvalidArgument("query circuit needs an oracle on 2n wires");
}

std::vector<LogicalOp> QueryCircuit::ops() const {
  std::vector<LogicalOp> ops;
  const int n = oracle_.n();
  for (int j = 0; j < n; ++j) ops.push_back({LogicalKind::H, j});
  for (const auto& g : schedule_layers(oracle_).ordered_gates()) {
    ops.push_back({LogicalKind::Cnot, g.control, g.target});
  }
  for (int j = 0; j < n; ++j) ops.push_back({LogicalKind::H, j});
  for (int w = 0; w < 2 * n; ++w) ops.push_back({LogicalKind::Measure, w});
  return ops;
}

QueryCircuit build_query_circuit(const CnotCircuit& oracle) { return QueryCircuit(oracle); }

std::size_t count_ops(std::span<const LogicalOp> ops, LogicalKind kind) {
  return static_cast<std::size_t>(
      std::count_if(ops.begin(), ops.end(), [kind](const LogicalOp& op) { return op.kind == kind; }));
}

const char* native_kind_name(NativeKind kind) {
  switch (kind) {
    case NativeKind::Init: return "init";
    case NativeKind::Rz: return "rz";
    case NativeKind::SqrtX: return "sx";
    case NativeKind::CZ: return "cz";
    case NativeKind::Measure: return "measure";
  }
  return "?";
}

std::size_t NativeCircuit::count(NativeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(ops.begin(), ops.end(), [kind](const NativeOp& op) { return op.kind == kind; }));
}

NativeCircuit lower_to_native(int wires, std::span<const LogicalOp> ops) {
  // Intermediate form over {H, CZ, Measure} with H-pair cancellation.
  struct Item {
    LogicalKind kind;  // Cnot here stands for CZ
    int q0;
    int q1;
    bool alive;
  };
  std::vector<Item> items;
  std::vector<std::vector<std::size_t>> live(wires);

  auto push_h = [&](int q) {
    auto& stack = live[q];
    if (!stack.empty() && items[stack.back()].kind == LogicalKind::H) {
      items[stack.back()].alive = false;
      stack.pop_back();
      return;
    }
    stack.push_back(items.size());
    items.push_back({LogicalKind::H, q, -1, true});
  };
  auto push_other = [&](LogicalKind kind, int a, int b) {
    live[a].push_back(items.size());
    if (b >= 0) live[b].push_back(items.size());
    items.push_back({kind, a, b, true});
  };

  for (const auto& op : ops) {
    if (op.q0 < 0 || op.q0 >= wires || (op.kind == LogicalKind::Cnot && (op.q1 < 0 || op.q1 >= wires))) {
      throw InvalidArgument("logical op wire out of range");
    }
    switch (op.kind) {
      case LogicalKind::H: push_h(op.q0); break;
      case LogicalKind::Cnot:
        push_h(op.q1);
        push_other(LogicalKind::Cnot, op.q0, op.q1);
        push_h(op.q1);
        break;
      case LogicalKind::Measure: push_other(LogicalKind::Measure, op.q0, -1); break;
    }
  }

  NativeCircuit out;
  out.wires = wires;
  constexpr double kHalfPi = std::numbers::pi / 2;
  for (const auto& it : items) {
    if (!it.alive) continue;
    switch (it.kind) {
      case LogicalKind::H:
        out.ops.push_back({NativeKind::Rz, it.q0, -1, kHalfPi});
        out.ops.push_back({NativeKind::SqrtX, it.q0});
        out.ops.push_back({NativeKind::Rz, it.q0, -1, kHalfPi});
        break;
      case LogicalKind::Cnot: out.ops.push_back({NativeKind::CZ, it.q0, it.q1}); break;
      case LogicalKind::Measure: out.ops.push_back({NativeKind::Measure, it.q0}); break;
    }
  }
  return out;
}

NativeCircuit lower_to_native(const QueryCircuit& circuit) {
  const auto ops = circuit.ops();
  return lower_to_native(circuit.wires(), ops);
}

void GateDurations::validate() const {
  if (!(oneq_ns > 0) || !(twoq_ns > 0) || !(readout_ns > 0)) {
    throw ConfigError("gate durations must be positive");
  }
}

double GateDurations::of(NativeKind kind) const {
  switch (kind) {
    case NativeKind::Init: return 0.0;
    case NativeKind::Rz:
    case NativeKind::SqrtX: return oneq_ns;
    case NativeKind::CZ: return twoq_ns;
    case NativeKind::Measure: return readout_ns;
  }
  return 0.0;
}

NativeCircuit alap_schedule(const NativeCircuit& circuit, const GateDurations& durations) {
  durations.validate();
  NativeCircuit out;
  out.wires = circuit.wires;
  out.timed = true;

  std::vector<NativeOp> ops;
  ops.reserve(circuit.ops.size());
  for (const auto& op : circuit.ops) {
    if (op.kind != NativeKind::Init) ops.push_back(op);
  }

  // Walk backwards with the common end at t = 0.
  std::vector<double> next_start(circuit.wires, 0.0);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    double end = next_start[it->q0];
    if (it->q1 >= 0) end = std::min(end, next_start[it->q1]);
    it->duration_ns = durations.of(it->kind);
    it->start_ns = end - it->duration_ns;
    next_start[it->q0] = it->start_ns;
    if (it->q1 >= 0) next_start[it->q1] = it->start_ns;
  }

  double earliest = 0.0;
  for (const auto& op : ops) earliest = std::min(earliest, op.start_ns);
  for (auto& op : ops) op.start_ns -= earliest;

  std::vector<double> first(circuit.wires, std::numeric_limits<double>::infinity());
  for (const auto& op : ops) {
    first[op.q0] = std::min(first[op.q0], op.start_ns);
    if (op.q1 >= 0) first[op.q1] = std::min(first[op.q1], op.start_ns);
  }
  for (int w = 0; w < circuit.wires; ++w) {
    if (first[w] != std::numeric_limits<double>::infinity()) {
      out.ops.push_back({NativeKind::Init, w, -1, 0.0, first[w], 0.0});
    }
  }
  out.ops.insert(out.ops.end(), ops.begin(), ops.end());
  std::stable_sort(out.ops.begin(), out.ops.end(),
                   [](const NativeOp& a, const NativeOp& b) { return a.start_ns < b.start_ns; });
  return out;
}

namespace {

std::vector<std::vector<const NativeOp*>> per_wire(const NativeCircuit& timed) {
  std::vector<std::vector<const NativeOp*>> wires(timed.wires);
  for (const auto& op : timed.ops) {
    wires[op.q0].push_back(&op);
    if (op.q1 >= 0) wires[op.q1].push_back(&op);
  }
  for (auto& list : wires) {
    std::stable_sort(list.begin(), list.end(), [](const NativeOp* a, const NativeOp* b) {
      if (a->start_ns != b->start_ns) return a->start_ns < b->start_ns;
      return a->kind == NativeKind::Init && b->kind != NativeKind::Init;
    });
  }
  return wires;
}

}  // namespace

std::vector<IdleGap> idle_gaps(const NativeCircuit& timed) {
  std::vector<IdleGap> gaps;
  const auto wires = per_wire(timed);
  constexpr double kEps = 1e-9;
  for (int w = 0; w < timed.wires; ++w) {
    const auto& list = wires[w];
    for (std::size_t k = 1; k < list.size(); ++k) {
      const double end = list[k - 1]->start_ns + list[k - 1]->duration_ns;
      if (list[k]->start_ns > end + kEps) gaps.push_back({w, end, list[k]->start_ns});
    }
  }
  return gaps;
}

bool timing_consistent(const NativeCircuit& timed) {
  const auto wires = per_wire(timed);
  constexpr double kEps = 1e-9;
  for (const auto& list : wires) {
    if (list.empty()) continue;
    if (list.front()->kind != NativeKind::Init) return false;
    for (std::size_t k = 1; k < list.size(); ++k) {
      if (list[k]->kind == NativeKind::Init) return false;
      if (list[k - 1]->start_ns + list[k - 1]->duration_ns > list[k]->start_ns + kEps) return false;
    }
  }
  return true;
}

}  // namespace simonq

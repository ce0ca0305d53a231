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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace simonq {

// Wire convention for a size-n query: wires 0..n-1 are the data register
// d_0..d_{n-1}, wires n..2n-1 the ancilla register a_0..a_{n-1}.
inline int data_wire(int /*n*/, int j) { return j; }
inline int ancilla_wire(int n, int j) { return n + j; }
std::string wire_label(int n, int wire);

struct Cnot {
  int control;
  int target;
  friend bool operator==(const Cnot&, const Cnot&) = default;
};

/// Two CNOTs commute unless the control of one is the target of the other.
bool cnots_commute(const Cnot& a, const Cnot& b);

/// Ordered CNOT list over 2n wires.
class CnotCircuit {
 public:
  CnotCircuit() = default;
  /// `hw` records the Hamming weight of the hidden string the circuit was
  /// built for; 0 means unknown.
  explicit CnotCircuit(int n, int hw = 0);

  int n() const { return n_; }
  int wires() const { return 2 * n_; }
  int hw() const { return hw_; }

  void add(int control, int target);
  std::span<const Cnot> gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  friend bool operator==(const CnotCircuit&, const CnotCircuit&) = default;

 private:
  int n_ = 0;
  int hw_ = 0;
  std::vector<Cnot> gates_;
};

/// Partition of a circuit's gates into entangling layers. Each layer holds
/// gate indices, no two of which share a wire.
struct LayeredCircuit {
  CnotCircuit circuit;
  std::vector<std::vector<std::size_t>> layers;

  std::size_t depth() const { return layers.size(); }
  /// Gates in layer order (stable within a layer).
  std::vector<Cnot> ordered_gates() const;
};

/// Greedy earliest-fit layering in emission order.
///
/// Each gate goes to the lowest layer that has no wire conflict and lies
/// after every earlier gate it does not commute with. For circuits whose
/// controls are all data wires and targets all ancillas, every pair
/// commutes and this is plain first-fit.
LayeredCircuit schedule_layers(const CnotCircuit& circuit);

std::size_t entangling_depth(const LayeredCircuit& layered);
std::size_t entangling_depth(const CnotCircuit& circuit);

/// Graphviz digraph, one edge control -> target per gate.
std::string to_dot(const CnotCircuit& circuit);

enum class LogicalKind { H, Cnot, Measure };

struct LogicalOp {
  LogicalKind kind;
  int q0;
  int q1 = -1;
};

/// Full Simon query: H on the data register, the oracle, H on the data
/// register again, then measurement of all 2n wires. Data outcomes form z;
/// ancilla outcomes are discarded.
class QueryCircuit {
 public:
  explicit QueryCircuit(CnotCircuit oracle);

  int n() const { return oracle_.n(); }
  int wires() const { return oracle_.wires(); }
  const CnotCircuit& oracle() const { return oracle_; }
  bool outcome_discarded(int wire) const { return wire >= n(); }

  /// Logical op sequence; oracle gates appear in scheduled layer order.
  std::vector<LogicalOp> ops() const;

 private:
  CnotCircuit oracle_;
};

QueryCircuit build_query_circuit(const CnotCircuit& oracle);

std::size_t count_ops(std::span<const LogicalOp> ops, LogicalKind kind);

enum class NativeKind { Init, Rz, SqrtX, CZ, Measure };
const char* native_kind_name(NativeKind kind);

struct NativeOp {
  NativeKind kind;
  int q0;
  int q1 = -1;  // CZ only; the pair is unordered
  double angle = 0.0;
  double start_ns = 0.0;
  double duration_ns = 0.0;
};

struct NativeCircuit {
  int wires = 0;
  bool timed = false;
  std::vector<NativeOp> ops;

  std::size_t count(NativeKind kind) const;
};

/// Rewrites into {Rz, SqrtX, CZ, Measure}. CNOT(c,t) becomes H(t) CZ H(t);
/// H pairs that end up adjacent on one wire cancel; each surviving H becomes
/// Rz(pi/2) SqrtX Rz(pi/2) up to global phase.
NativeCircuit lower_to_native(int wires, std::span<const LogicalOp> ops);
NativeCircuit lower_to_native(const QueryCircuit& circuit);

/// Durations per gate class, in nanoseconds. Rz and SqrtX both count as
/// single-qubit gates; Init takes no time.
struct GateDurations {
  double oneq_ns = 32.0;
  double twoq_ns = 68.0;
  double readout_ns = 2200.0;

  static GateDurations boston() { return {32.0, 68.0, 2200.0}; }
  static GateDurations miami() { return {32.0, 68.0, 2400.0}; }

  void validate() const;
  double of(NativeKind kind) const;
};

/// As-late-as-possible timing. Measurements end together; each op starts as
/// late as its successors on shared wires allow; each wire gets an Init at
/// the start of its first op. Times are shifted so the earliest op starts
/// at 0.
NativeCircuit alap_schedule(const NativeCircuit& circuit, const GateDurations& durations);

struct IdleGap {
  int wire;
  double start_ns;
  double end_ns;
  double length() const { return end_ns - start_ns; }
};

/// Gaps between consecutive ops on each wire of a timed circuit.
std::vector<IdleGap> idle_gaps(const NativeCircuit& timed);

/// True if per-wire intervals of a timed circuit are disjoint and every
/// wire's Init precedes its other ops.
bool timing_consistent(const NativeCircuit& timed);

}  // namespace simonq

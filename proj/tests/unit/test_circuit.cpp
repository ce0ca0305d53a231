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

#include <cmath>

#include "../support/statevector.hpp"
#include "doctest.h"
#include "simonq/circuit.hpp"
#include "simonq/errors.hpp"
#include "simonq/oracle.hpp"

using namespace simonq;

TEST_CASE("CNOT commutation") {
  CHECK(cnots_commute({0, 3}, {0, 4}));   // shared control
  CHECK(cnots_commute({0, 3}, {1, 3}));   // shared target
  CHECK_FALSE(cnots_commute({0, 3}, {3, 4}));
  CHECK(cnots_commute({0, 3}, {1, 4}));
}

TEST_CASE("scheduled layer counts") {
  CHECK(schedule_layers(build_constant_depth_oracle(5, 4)).depth() == 2);
  CHECK(schedule_layers(build_star_oracle(5, 4)).depth() == 3);
  for (int n = 1; n <= 30; ++n) CHECK(entangling_depth(build_constant_depth_oracle(n, 1)) <= 1);
  CHECK(entangling_depth(build_constant_depth_oracle(60, 16)) == 2);
  CHECK(entangling_depth(build_star_oracle(20, 20)) == 19);
  CHECK(entangling_depth(CnotCircuit(4)) == 0);
}

TEST_CASE("layers are wire-disjoint and preserve the gate multiset") {
  for (int n = 2; n <= 16; ++n) {
    for (int i = 1; i <= n; ++i) {
      for (const auto& c : {build_constant_depth_oracle(n, i), build_star_oracle(n, i)}) {
        const auto layered = schedule_layers(c);
        std::size_t total = 0;
        for (const auto& layer : layered.layers) {
          std::vector<int> used(2 * n, 0);
          for (auto k : layer) {
            const auto& g = c.gates()[k];
            CHECK(++used[g.control] == 1);
            CHECK(++used[g.target] == 1);
          }
          total += layer.size();
        }
        CHECK(total == c.size());
        // Reordering only swaps commuting gates, so the matrix is unchanged.
        CnotCircuit reordered(n);
        for (const auto& g : layered.ordered_gates()) reordered.add(g.control, g.target);
        CHECK(oracle_matrix(reordered) == oracle_matrix(c));
      }
    }
  }
}

TEST_CASE("DOT export draws control to target") {
  const auto dot = to_dot(build_constant_depth_oracle(3, 2));
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("\"d_0\" -> \"a_0\"") != std::string::npos);
  CHECK(dot.find("\"d_2\" -> \"a_2\"") != std::string::npos);
}

TEST_CASE("query circuit op counts") {
  const QueryCircuit q32(build_constant_depth_oracle(3, 2));
  const auto ops = q32.ops();
  CHECK(count_ops(ops, LogicalKind::H) == 6);
  CHECK(count_ops(ops, LogicalKind::Cnot) == 3);
  CHECK(count_ops(ops, LogicalKind::Measure) == 6);
  const auto ops21 = QueryCircuit(build_constant_depth_oracle(2, 1)).ops();
  CHECK(count_ops(ops21, LogicalKind::H) == 4);
  CHECK(count_ops(ops21, LogicalKind::Cnot) == 1);
  CHECK(count_ops(ops21, LogicalKind::Measure) == 4);
  CHECK(q32.outcome_discarded(3));
  CHECK_FALSE(q32.outcome_discarded(2));
}

TEST_CASE("native lowering") {
  const std::vector<LogicalOp> one{{LogicalKind::Cnot, 0, 1}};
  const auto c = lower_to_native(2, one);
  CHECK(c.count(NativeKind::CZ) == 1);
  CHECK(c.count(NativeKind::Rz) == 4);
  CHECK(c.count(NativeKind::SqrtX) == 2);
  for (const auto& op : c.ops) {
    if (op.kind != NativeKind::CZ) CHECK(op.q0 == 1);
  }

  const std::vector<LogicalOp> hh{{LogicalKind::H, 0}, {LogicalKind::H, 0}};
  CHECK(lower_to_native(1, hh).ops.empty());

  // Two CNOTs sharing a target: the inner H pair cancels.
  const std::vector<LogicalOp> shared{{LogicalKind::Cnot, 0, 2}, {LogicalKind::Cnot, 1, 2}};
  CHECK(lower_to_native(3, shared).count(NativeKind::SqrtX) == 2);

  CHECK(lower_to_native(QueryCircuit(build_constant_depth_oracle(2, 1))).count(NativeKind::CZ) == 1);
  const std::vector<LogicalOp> bad{{LogicalKind::H, 5}};
  CHECK_THROWS_AS(lower_to_native(2, bad), InvalidArgument);
}

TEST_CASE("lowered oracle reproduces the GF(2) map on basis states") {
  for (int n = 1; n <= 5; ++n) {
    for (int i = 1; i <= n; ++i) {
      const auto oracle = build_constant_depth_oracle(n, i);
      const auto m = oracle_matrix(oracle);
      std::vector<LogicalOp> ops;
      for (const auto& g : oracle.gates()) ops.push_back({LogicalKind::Cnot, g.control, g.target});
      const auto native = lower_to_native(2 * n, ops);
      for (std::uint64_t x = 0; x < (1u << n); ++x) {
        for (std::uint64_t a = 0; a < (1u << n); a += (n > 3 ? 3 : 1)) {
          testing::StateVector sv(2 * n);
          sv.set_basis(x | a << n);
          sv.apply(native);
          const auto image = m.apply(Bits::from_u64(n, x)).to_u64() ^ a;
          CHECK(sv.dominant_state() == (x | image << n));
        }
      }
    }
  }
}

TEST_CASE("ALAP schedule") {
  const auto dur = GateDurations::boston();
  const auto timed = alap_schedule(lower_to_native(QueryCircuit(build_constant_depth_oracle(3, 2))), dur);
  CHECK(timed.timed);
  CHECK(timing_consistent(timed));
  CHECK(timed.count(NativeKind::Init) == 6);

  // Every measurement ends together.
  double end = -1;
  for (const auto& op : timed.ops) {
    if (op.kind != NativeKind::Measure) continue;
    if (end < 0) end = op.start_ns + op.duration_ns;
    CHECK(op.start_ns + op.duration_ns == doctest::Approx(end));
  }

  // a_1 is idle until readout: initialized late with no gap.
  for (const auto& op : timed.ops) {
    if (op.kind == NativeKind::Init && op.q0 == ancilla_wire(3, 1)) CHECK(op.start_ns == doctest::Approx(end - 2200.0));
  }
  for (const auto& gap : idle_gaps(timed)) {
    CHECK(gap.length() > 0);
    CHECK(gap.wire >= 0);
  }

  const std::vector<LogicalOp> two{{LogicalKind::Cnot, 0, 1}, {LogicalKind::Cnot, 2, 3}};
  const auto par = alap_schedule(lower_to_native(4, two), dur);
  std::vector<double> cz_starts;
  for (const auto& op : par.ops) {
    if (op.kind == NativeKind::CZ) cz_starts.push_back(op.start_ns);
  }
  REQUIRE(cz_starts.size() == 2);
  CHECK(cz_starts[0] == cz_starts[1]);

  CHECK_THROWS_AS(alap_schedule(par, GateDurations{0.0, 1.0, 1.0}), ConfigError);
}

TEST_CASE("query circuit output distribution is uniform over the orthocomplement") {
  for (int n = 1; n <= 4; ++n) {
    for (int i = 1; i <= n; ++i) {
      const auto b = canonical_b(n, i).bits();
      const auto dist = testing::query_distribution(build_constant_depth_oracle(n, i));
      double total = 0;
      for (const auto& [z, p] : dist) {
        CHECK_FALSE(Bits::from_u64(n, z).dot(b));
        CHECK(p == doctest::Approx(std::ldexp(1.0, 1 - n)));
        total += p;
      }
      CHECK(total == doctest::Approx(1.0));
    }
  }
}

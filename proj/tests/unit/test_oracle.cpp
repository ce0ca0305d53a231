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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "simonq/bits.hpp"
#include "simonq/errors.hpp"
#include "simonq/oracle.hpp"
#include "simonq/rng.hpp"

using namespace simonq;

TEST_CASE("bit strings are indexed from the left") {
  const auto b = Bits::from_string("011");
  CHECK(b.size() == 3);
  CHECK_FALSE(b.test(0));
  CHECK(b.test(1));
  CHECK(b.test(2));
  CHECK(b.to_string() == "011");
  CHECK(b.count() == 2);
  CHECK(b.first_set() == 1);
  CHECK(Bits(4).first_set() == 4);
  CHECK_THROWS_AS(Bits::from_string("01x"), InvalidArgument);
}

TEST_CASE("bit vectors wider than one word") {
  Bits a(130), c(130);
  a.set(0);
  a.set(129);
  c.set(129);
  CHECK(a.dot(c));
  c.set(0);
  CHECK_FALSE(a.dot(c));
  CHECK((a ^ c).none());
  CHECK_THROWS_AS(a.to_u64(), InvalidArgument);
  CHECK_THROWS_AS(a.dot(Bits(3)), InvalidArgument);
}

TEST_CASE("GF(2) rank and null space") {
  BitMatrix m(3, 3);
  m.set(0, 0);
  m.set(2, 1);
  m.set(2, 2);
  CHECK(m.rank() == 2);
  const auto ns = m.null_space();
  REQUIRE(ns.size() == 1);
  CHECK(ns[0].to_string() == "011");
  CHECK(span_of(ns, 3).size() == 2);
}

TEST_CASE("candidate counts") {
  CHECK(count_candidates(3, 3) == 7);
  CHECK(count_candidates(5, 4) == 30);
  CHECK(count_candidates(5, 3) == 25);
  CHECK(count_candidates(100, 100) == (BigCount(1) << 100) - 1);
  CHECK_THROWS_AS(count_candidates(3, 4), InvalidArgument);
  CHECK_THROWS_AS(count_candidates(3, 0), InvalidArgument);
  CHECK_THROWS_AS(count_candidates_u64(80, 80), SizeError);
  const auto s = CandidateSet::make(4, 2);
  CHECK(s.contains(Bits::from_string("0110")));
  CHECK_FALSE(s.contains(Bits::from_string("0111")));
  CHECK_FALSE(s.contains(Bits(4)));
}

TEST_CASE("canonical hidden strings") {
  CHECK(canonical_b(3, 2).to_string() == "011");
  CHECK(canonical_b(5, 5).to_string() == "11111");
  CHECK(canonical_b(5, 1).to_string() == "00001");
  CHECK_THROWS_AS(canonical_b(3, 0), InvalidArgument);
  CHECK_THROWS_AS(canonical_b(3, 4), InvalidArgument);
  CHECK_THROWS_AS(HiddenString(Bits(3)), InvalidArgument);
}

TEST_CASE("canonical oracle evaluation") {
  CHECK(OracleSpec::canonical(3, 2).eval(Bits::from_string("101")).to_string() == "101");
  const auto spec = OracleSpec::canonical(5, 3);
  CHECK(spec.eval(Bits::from_string("10110")).to_string() == "10001");
  CHECK(spec.eval(Bits::from_string("10001")).to_string() == "10001");
  CHECK_THROWS_AS(spec.eval(Bits(4)), InvalidArgument);
}

TEST_CASE("two-to-one verification") {
  CHECK(verify_two_to_one(OracleSpec::canonical(3, 2)));
  CHECK(verify_two_to_one(OracleSpec::canonical(5, 5)));
  CHECK(kernel_is_exactly_b(OracleSpec::canonical(5, 5)));

  // Row n-i replaced by e_{n-i}: the map becomes injective.
  const int n = 5, i = 3;
  auto m = OracleSpec::canonical(n, i).transfer();
  m.row(n - i) = Bits::unit(n, n - i);
  const OracleSpec corrupted(canonical_b(n, i), m);
  CHECK_FALSE(verify_two_to_one(corrupted));
  CHECK_FALSE(kernel_is_exactly_b(corrupted));

  CHECK_THROWS_AS(verify_two_to_one(OracleSpec::canonical(21, 3)), SizeError);
  CHECK(kernel_is_exactly_b(OracleSpec::canonical(200, 77)));
}

namespace {

std::set<std::pair<int, int>> edge_set(const CnotCircuit& c) {
  std::set<std::pair<int, int>> out;
  for (const auto& g : c.gates()) out.insert({g.control, g.target});
  return out;
}

}  // namespace

TEST_CASE("constant-depth oracle gate lists") {
  const auto c32 = build_constant_depth_oracle(3, 2);
  CHECK(edge_set(c32) == std::set<std::pair<int, int>>{{0, 3}, {1, 5}, {2, 5}});

  const auto c51 = build_constant_depth_oracle(5, 1);
  CHECK(c51.size() == 4);
  CHECK(edge_set(c51) == std::set<std::pair<int, int>>{{0, 5}, {1, 6}, {2, 7}, {3, 8}});

  // b = 01111: d0->a0, then pairs into a2, a3, a4; a1 idle.
  const auto c54 = build_constant_depth_oracle(5, 4);
  CHECK(c54.size() == 7);
  CHECK(edge_set(c54) == std::set<std::pair<int, int>>{{0, 5}, {1, 7}, {2, 7}, {2, 8}, {3, 8}, {3, 9}, {4, 9}});

  for (int n = 1; n <= 12; ++n) {
    for (int i = 1; i <= n; ++i) CHECK(build_constant_depth_oracle(n, i).size() == static_cast<std::size_t>(n + i - 2));
  }
}

TEST_CASE("star oracle gate lists") {
  CHECK(build_star_oracle(5, 1) == build_constant_depth_oracle(5, 1));
  const auto s43 = build_star_oracle(4, 3);
  // Pivot d1 fans out to a2 and a3.
  CHECK(edge_set(s43).count({1, 6}) == 1);
  CHECK(edge_set(s43).count({1, 7}) == 1);
  CHECK(build_star_oracle(5, 4).size() == 7);
  CHECK_THROWS_AS(build_star_oracle(3, 4), InvalidArgument);
}

TEST_CASE("oracle matrices") {
  const auto m = oracle_matrix(build_constant_depth_oracle(3, 2));
  CHECK(m.row(0).to_string() == "100");
  CHECK(m.row(1).to_string() == "000");
  CHECK(m.row(2).to_string() == "011");
  CHECK(oracle_matrix(CnotCircuit(3)) == BitMatrix(3, 3));

  const auto star = oracle_matrix(build_star_oracle(5, 4));
  const auto cd = oracle_matrix(build_constant_depth_oracle(5, 4));
  CHECK_FALSE(star == cd);
  const auto b = canonical_b(5, 4);
  CHECK(kernel_is_exactly_b(OracleSpec(b, star)));
  CHECK(kernel_is_exactly_b(OracleSpec(b, cd)));

  CnotCircuit bad(2);
  bad.add(2, 3);
  CHECK_THROWS_AS(oracle_matrix(bad), InvalidArgument);
}

TEST_CASE("relabeled oracles collide exactly on x and x^b") {
  SeededRng rng(3, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6;
    Bits b(n);
    do rng.fill(b);
    while (b.none());
    const RelabeledOracle o{HiddenString(b)};
    for (std::uint64_t x = 0; x < 64; ++x) {
      const auto xb = Bits::from_u64(n, x);
      CHECK(o.eval(xb) == o.eval(xb ^ b));
      for (std::uint64_t y = x + 1; y < 64; ++y) {
        const auto yb = Bits::from_u64(n, y);
        if (!((xb ^ yb) == b)) CHECK_FALSE(o.eval(xb) == o.eval(yb));
      }
    }
  }
}

TEST_CASE("seeded streams are reproducible and distinct") {
  SeededRng a(7, stream_key(3, 2)), b(7, stream_key(3, 2)), c(7, stream_key(3, 1));
  bool differs = false;
  for (int k = 0; k < 10; ++k) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
  for (int k = 0; k < 1000; ++k) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(a.below(5) < 5);
  }
}

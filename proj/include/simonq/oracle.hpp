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

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "simonq/bits.hpp"
#include "simonq/circuit.hpp"

namespace simonq {

using BigCount = boost::multiprecision::cpp_int;

/// Nonzero hidden string b together with its Hamming weight.
class HiddenString {
 public:
  explicit HiddenString(Bits bits);

  int n() const { return static_cast<int>(bits_.size()); }
  int hw() const { return hw_; }
  const Bits& bits() const { return bits_; }
  std::string to_string() const { return bits_.to_string(); }

  friend bool operator==(const HiddenString&, const HiddenString&) = default;

 private:
  Bits bits_;
  int hw_;
};

/// b = 0^(n-i) 1^i.
HiddenString canonical_b(int n, int i);

/// N_w = sum_{j=1..w} C(n, j), exact.
BigCount count_candidates(int n, int w);
/// Same, for callers that know the result fits (throws SizeError otherwise).
std::uint64_t count_candidates_u64(int n, int w);

/// The admissible set S = { b : 1 <= HW(b) <= w }.
struct CandidateSet {
  int n;
  int w;
  BigCount size;

  static CandidateSet make(int n, int w);
  bool contains(const Bits& b) const;
};

/// Linear 2-to-1 function f_b(x) = M x over GF(2).
///
/// The canonical construction for b = 0^(n-i)1^i has row j of M equal to
/// e_j for j < n-i, zero at j = n-i, and e_{j-1} + e_j above.
class OracleSpec {
 public:
  static OracleSpec canonical(int n, int i);
  /// Arbitrary transfer matrix (used to exercise the verifiers).
  OracleSpec(HiddenString b, BitMatrix transfer);

  int n() const { return b_.n(); }
  int hw() const { return b_.hw(); }
  const HiddenString& b() const { return b_; }
  const BitMatrix& transfer() const { return transfer_; }

  Bits eval(const Bits& x) const;

 private:
  HiddenString b_;
  BitMatrix transfer_;
};

/// Largest n accepted by the exhaustive 2-to-1 check.
inline constexpr int kBruteForceMaxN = 20;

/// Exhaustive check over all 2^n inputs that f(x) = f(y) iff y in {x, x+b}.
/// Throws SizeError above kBruteForceMaxN.
bool verify_two_to_one(const OracleSpec& spec);

/// Linear check: ker M == {0, b}. Valid at any n.
bool kernel_is_exactly_b(const OracleSpec& spec);

/// Constant-depth oracle for b = 0^(n-i)1^i:
/// d_j -> a_j for j < n-i, then d_{j-1} -> a_j, d_j -> a_j for j > n-i.
/// a_{n-i} is left untouched. n + i - 2 gates.
CnotCircuit build_constant_depth_oracle(int n, int i);

/// Star-shaped baseline whose pivot d_{n-i} fans out to every a_j, j > n-i.
/// Its entangling depth grows with i.
CnotCircuit build_star_oracle(int n, int i);

/// M such that the circuit maps (x, a) to (x, a + M x). Requires every
/// control on the data register and every target on the ancillas.
BitMatrix oracle_matrix(const CnotCircuit& circuit);

/// f_b for an arbitrary b, realised by relabelling bit positions of the
/// canonical oracle of the same weight. Position perm[j] of the input feeds
/// canonical position j.
class RelabeledOracle {
 public:
  explicit RelabeledOracle(const HiddenString& b);

  const HiddenString& b() const { return b_; }
  const std::vector<int>& permutation() const { return perm_; }
  Bits eval(const Bits& x) const;

 private:
  HiddenString b_;
  OracleSpec canonical_;
  std::vector<int> perm_;
};

}  // namespace simonq

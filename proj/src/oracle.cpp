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

#include "simonq/oracle.hpp"

#include <cstdint>
#include <string>

#include "simonq/errors.hpp"

namespace simonq {

namespace {

void check_weight(int n, int i) {
  if (n < 1) throw InvalidArgument("problem size n must be >= 1, got " + std::to_string(n));
  if (i < 1 || i > n) {
    throw InvalidArgument("invalid weight: need 1 <= i <= n, got i=" + std::to_string(i) +
                          " n=" + std::to_string(n));
  }
}

}  // namespace

HiddenString::HiddenString(Bits bits) : bits_(std::move(bits)), hw_(static_cast<int>(bits_.count())) {
  if (bits_.size() < 1) throw InvalidArgument("hidden string must have n >= 1");
  if (hw_ < 1) throw InvalidArgument("hidden string must be nonzero");
}

HiddenString canonical_b(int n, int i) {
  check_weight(n, i);
  Bits b(static_cast<std::size_t>(n));
  for (int j = n - i; j < n; ++j) b.set(static_cast<std::size_t>(j));
  return HiddenString(std::move(b));
}

BigCount count_candidates(int n, int w) {
  if (n < 1) throw InvalidArgument("problem size n must be >= 1");
  if (w < 1 || w > n) {
    throw InvalidArgument("invalid cutoff: need 1 <= w <= n, got w=" + std::to_string(w) +
                          " n=" + std::to_string(n));
  }
  BigCount total = 0;
  BigCount binom = 1;  // C(n, 0)
  for (int j = 1; j <= w; ++j) {
    binom = binom * (n - j + 1) / j;
    total += binom;
  }
  return total;
}

std::uint64_t count_candidates_u64(int n, int w) {
  const auto c = count_candidates(n, w);
  if (c > BigCount(std::numeric_limits<std::uint64_t>::max())) {
    throw SizeError("candidate count exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

CandidateSet CandidateSet::make(int n, int w) { return {n, w, count_candidates(n, w)}; }

bool CandidateSet::contains(const Bits& b) const {
  if (static_cast<int>(b.size()) != n) return false;
  const auto hw = static_cast<int>(b.count());
  return hw >= 1 && hw <= w;
}

OracleSpec OracleSpec::canonical(int n, int i) {
  check_weight(n, i);
  BitMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    if (j < n - i) {
      m.set(j, j);
    } else if (j > n - i) {
      m.set(j, j - 1);
      m.set(j, j);
    }
  }
  return OracleSpec(canonical_b(n, i), std::move(m));
}

OracleSpec::OracleSpec(HiddenString b, BitMatrix transfer) : b_(std::move(b)), transfer_(std::move(transfer)) {
  const auto n = static_cast<std::size_t>(b_.n());
  if (transfer_.rows() != n || transfer_.cols() != n) {
    throw InvalidArgument("transfer matrix must be n x n");
  }
}

Bits OracleSpec::eval(const Bits& x) const {
  if (static_cast<int>(x.size()) != n()) {
    throw InvalidArgument("input length " + std::to_string(x.size()) + " does not match n=" +
                          std::to_string(n()));
  }
  return transfer_.apply(x);
}

bool verify_two_to_one(const OracleSpec& spec) {
  const int n = spec.n();
  if (n > kBruteForceMaxN) {
    throw SizeError("exhaustive check refused for n=" + std::to_string(n) +
                    "; use kernel_is_exactly_b instead");
  }
  const std::uint64_t size = std::uint64_t{1} << n;
  const std::uint64_t b = spec.b().bits().to_u64();
  // first[y] = first preimage seen for image y, or size if none.
  std::vector<std::uint64_t> first(size, size);
  std::vector<std::uint8_t> hits(size, 0);
  for (std::uint64_t x = 0; x < size; ++x) {
    const std::uint64_t y = spec.eval(Bits::from_u64(n, x)).to_u64();
    if (hits[y] == 0) {
      first[y] = x;
    } else if (hits[y] >= 2 || (first[y] ^ x) != b) {
      return false;
    }
    ++hits[y];
  }
  for (std::uint64_t y = 0; y < size; ++y) {
    if (hits[y] == 1) return false;
  }
  return true;
}

bool kernel_is_exactly_b(const OracleSpec& spec) {
  const auto kernel = spec.transfer().null_space();
  return kernel.size() == 1 && kernel.front() == spec.b().bits();
}

CnotCircuit build_constant_depth_oracle(int n, int i) {
  check_weight(n, i);
  CnotCircuit c(n, i);
  for (int j = 0; j < n - i; ++j) c.add(data_wire(n, j), ancilla_wire(n, j));
  for (int j = n - i + 1; j < n; ++j) {
    c.add(data_wire(n, j - 1), ancilla_wire(n, j));
    c.add(data_wire(n, j), ancilla_wire(n, j));
  }
  return c;
}

CnotCircuit build_star_oracle(int n, int i) {
  check_weight(n, i);
  CnotCircuit c(n, i);
  const int pivot = n - i;
  for (int j = 0; j < pivot; ++j) c.add(data_wire(n, j), ancilla_wire(n, j));
  for (int j = pivot + 1; j < n; ++j) c.add(data_wire(n, pivot), ancilla_wire(n, j));
  for (int j = pivot + 1; j < n; ++j) c.add(data_wire(n, j), ancilla_wire(n, j));
  return c;
}

BitMatrix oracle_matrix(const CnotCircuit& circuit) {
  const int n = circuit.n();
  BitMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (const auto& g : circuit.gates()) {
    if (g.control >= n || g.target < n) {
      throw InvalidArgument("unsupported structure: gate " + wire_label(n, g.control) + " -> " +
                            wire_label(n, g.target) +
                            " is not data-controlled and ancilla-targeted");
    }
    m.toggle(g.target - n, g.control);
  }
  return m;
}

namespace {

std::vector<int> relabeling(const Bits& b) {
  // Zero positions of b fill canonical slots 0..n-i-1, one positions fill
  // the trailing i slots, each group in increasing order.
  const int n = static_cast<int>(b.size());
  std::vector<int> perm;
  perm.reserve(n);
  for (int j = 0; j < n; ++j) {
    if (!b.test(j)) perm.push_back(j);
  }
  for (int j = 0; j < n; ++j) {
    if (b.test(j)) perm.push_back(j);
  }
  return perm;
}

}  // namespace

RelabeledOracle::RelabeledOracle(const HiddenString& b)
    : b_(b), canonical_(OracleSpec::canonical(b.n(), b.hw())), perm_(relabeling(b.bits())) {}

Bits RelabeledOracle::eval(const Bits& x) const {
  if (x.size() != b_.bits().size()) throw InvalidArgument("input length does not match n");
  Bits y(x.size());
  for (std::size_t j = 0; j < perm_.size(); ++j) y.set(j, x.test(static_cast<std::size_t>(perm_[j])));
  return canonical_.eval(y);
}

}  // namespace simonq

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
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace simonq {

/// Fixed-length vector over GF(2).
///
/// Bit 0 is the leftmost character of the printed form, so "011" has
/// bits 1 and 2 set. Storage is little-endian within 64-bit words; unused
/// high bits of the last word are always zero.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n);

  static Bits from_string(std::string_view s);
  static Bits unit(std::size_t n, std::size_t j);
  /// Low `n` bits of `value`, bit j of the integer becoming position j.
  static Bits from_u64(std::size_t n, std::uint64_t value);

  std::size_t size() const { return n_; }
  bool test(std::size_t j) const { return (words_[j >> 6] >> (j & 63)) & 1u; }
  void set(std::size_t j, bool v = true);
  void flip(std::size_t j) { words_[j >> 6] ^= std::uint64_t{1} << (j & 63); }

  std::size_t count() const;
  bool none() const;
  /// Inner product over GF(2).
  bool dot(const Bits& other) const;
  /// Index of the first set bit, or size() if none.
  std::size_t first_set() const;

  /// Requires size() <= 64.
  std::uint64_t to_u64() const;

  Bits& operator^=(const Bits& other);
  friend Bits operator^(Bits a, const Bits& b) { return a ^= b; }
  friend bool operator==(const Bits& a, const Bits& b) = default;

  std::string to_string() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Lexicographic order of the printed bitstrings.
bool lex_less(const Bits& a, const Bits& b);

/// Dense matrix over GF(2), stored by rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return rows_[r].test(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
  void toggle(std::size_t r, std::size_t c) { rows_[r].flip(c); }

  const Bits& row(std::size_t r) const { return rows_[r]; }
  Bits& row(std::size_t r) { return rows_[r]; }

  Bits apply(const Bits& x) const;
  std::size_t rank() const;
  /// A basis of { x : Mx = 0 }.
  std::vector<Bits> null_space() const;

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<Bits> rows_;
};

/// All 2^k elements of the span of `basis` (k small).
std::vector<Bits> span_of(std::span<const Bits> basis, std::size_t n);

}  // namespace simonq

template <>
struct std::hash<simonq::Bits> {
  std::size_t operator()(const simonq::Bits& b) const noexcept {
    std::size_t h = b.size();
    for (auto w : b.words()) h = h * 0x9E3779B97F4A7C15ull ^ (w + (h >> 7));
    return h;
  }
};

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

#include "simonq/bits.hpp"

#include <bit>

#include "simonq/errors.hpp"

namespace simonq {

Bits::Bits(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

Bits Bits::from_string(std::string_view s) {
  Bits b(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] == '1') {
      b.set(j);
    } else if (s[j] != '0') {
      throw InvalidArgument("bitstring may contain only '0' and '1': \"" + std::string(s) + "\"");
    }
  }
  return b;
}

Bits Bits::unit(std::size_t n, std::size_t j) {
  Bits b(n);
  b.set(j);
  return b;
}

Bits Bits::from_u64(std::size_t n, std::uint64_t value) {
  Bits b(n);
  if (n > 0) {
    b.words_[0] = n >= 64 ? value : value & ((std::uint64_t{1} << n) - 1);
  }
  return b;
}

void Bits::set(std::size_t j, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (j & 63);
  if (v) {
    words_[j >> 6] |= mask;
  } else {
    words_[j >> 6] &= ~mask;
  }
}

std::size_t Bits::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bits::none() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

bool Bits::dot(const Bits& other) const {
  if (other.n_ != n_) throw InvalidArgument("bit vector length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
  return std::popcount(acc) & 1;
}

std::size_t Bits::first_set() const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] != 0) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
  }
  return n_;
}

std::uint64_t Bits::to_u64() const {
  if (n_ > 64) throw InvalidArgument("bit vector wider than 64 bits");
  return words_.empty() ? 0 : words_[0];
}

Bits& Bits::operator^=(const Bits& other) {
  if (other.n_ != n_) throw InvalidArgument("bit vector length mismatch");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

std::string Bits::to_string() const {
  std::string s(n_, '0');
  for (std::size_t j = 0; j < n_; ++j) {
    if (test(j)) s[j] = '1';
  }
  return s;
}

bool lex_less(const Bits& a, const Bits& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t j = 0; j < n; ++j) {
    if (a.test(j) != b.test(j)) return b.test(j);
  }
  return a.size() < b.size();
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Bits(cols)) {}

Bits BitMatrix::apply(const Bits& x) const {
  if (x.size() != cols_) throw InvalidArgument("matrix/vector shape mismatch");
  Bits out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) out.set(r, rows_[r].dot(x));
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> reduce(std::vector<Bits>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && !m[p].test(c)) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k != r && m[k].test(c)) m[k] ^= m[r];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t BitMatrix::rank() const {
  auto m = rows_;
  return reduce(m, cols_).size();
}

std::vector<Bits> BitMatrix::null_space() const {
  auto m = rows_;
  const auto pivots = reduce(m, cols_);
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<Bits> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    Bits v(cols_);
    v.set(free);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (m[r].test(free)) v.set(pivots[r]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Bits> span_of(std::span<const Bits> basis, std::size_t n) {
  if (basis.size() > 24) throw InvalidArgument("span too large to enumerate");
  std::vector<Bits> out;
  out.reserve(std::size_t{1} << basis.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << basis.size()); ++mask) {
    Bits v(n);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if ((mask >> k) & 1u) v ^= basis[k];
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace simonq

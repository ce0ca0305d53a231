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

#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "simonq/bits.hpp"
#include "simonq/oracle.hpp"
#include "simonq/rng.hpp"

namespace simonq {

/// Probability f(i) that a shot of class i satisfies z.b = 0.
///
/// Parametric profiles use f(i) = 0.5 + 0.5 (1 - eps)^(n + i - 2), the
/// exponent being the oracle gate count. This is a synthetic family, not a
/// device model.
class NoiseProfile {
 public:
  enum class Kind { Noiseless, Parametric, Table };

  static NoiseProfile noiseless();
  static NoiseProfile parametric(double epsilon);
  static NoiseProfile table(std::map<int, double> f);

  Kind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  const std::map<int, double>& entries() const { return table_; }

  /// Throws ConfigError if a table profile has no entry for i.
  double f(int n, int i) const;

 private:
  Kind kind_ = Kind::Noiseless;
  double epsilon_ = 0.0;
  std::map<int, double> table_;
};

const char* noise_kind_name(NoiseProfile::Kind kind);

/// n-1 vectors spanning { z : z.b = 0 }: e_j + b_j e_p for j != p, where p
/// is the first set bit of b.
std::vector<Bits> orthocomplement_basis(const HiddenString& b);

/// Uniform z over the orthocomplement of b.
Bits sample_noiseless(const HiddenString& b, SeededRng& rng);

/// With probability f(HW(b)) uniform over z.b = 0, else uniform over z.b = 1.
Bits sample_noisy(const HiddenString& b, const NoiseProfile& profile, SeededRng& rng);

enum class ShotTag { Calibration, Evaluation };
const char* shot_tag_name(ShotTag tag);
ShotTag parse_shot_tag(std::string_view name);

struct ShotRecord {
  int n = 0;
  Bits b;
  Bits z;
  std::int64_t shot = 0;
  ShotTag tag = ShotTag::Evaluation;

  int hw() const { return static_cast<int>(b.count()); }
  bool valid() const { return !z.dot(b); }
  friend bool operator==(const ShotRecord&, const ShotRecord&) = default;
};

/// shots_per_class records for each class i in [1, w] with b = 0^(n-i)1^i,
/// in class order. Class i draws from stream (seed, stream_key(n, i, tag)).
std::vector<ShotRecord> simulate_shots(int n, int w, std::int64_t shots_per_class,
                                       const NoiseProfile& profile, std::uint64_t seed,
                                       ShotTag tag = ShotTag::Evaluation);

struct ClassValidity {
  int n = 0;
  int hw = 0;
  std::int64_t shots = 0;
  double valid = 0.0;          // Pr(z.b = 0)
  double valid_nonzero = 0.0;  // Pr(z.b = 0 and z != 0)
};

struct ValidityReport {
  std::vector<ClassValidity> classes;  // sorted by (n, hw)
  /// Averages over present classes weighted by C(n, i), per n.
  std::map<int, std::pair<double, double>> weighted;
};

ValidityReport empirical_validity(const std::vector<ShotRecord>& records);

}  // namespace simonq

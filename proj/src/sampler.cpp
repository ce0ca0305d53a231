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

#include "simonq/sampler.hpp"

#include <array>
#include <cmath>
#include <string>

#include "simonq/errors.hpp"

namespace simonq {

NoiseProfile NoiseProfile::noiseless() { return NoiseProfile{}; }

NoiseProfile NoiseProfile::parametric(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in [0, 1]");
  NoiseProfile p;
  p.kind_ = Kind::Parametric;
  p.epsilon_ = epsilon;
  return p;
}

NoiseProfile NoiseProfile::table(std::map<int, double> f) {
  for (auto [i, v] : f) {
    if (i < 1) throw ConfigError("noise table weight must be >= 1");
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("noise table f(" + std::to_string(i) + ") outside [0, 1]");
  }
  NoiseProfile p;
  p.kind_ = Kind::Table;
  p.table_ = std::move(f);
  return p;
}

double NoiseProfile::f(int n, int i) const {
  switch (kind_) {
    case Kind::Noiseless: return 1.0;
    case Kind::Parametric: return 0.5 + 0.5 * std::pow(1.0 - epsilon_, n + i - 2);
    case Kind::Table: {
      const auto it = table_.find(i);
      if (it == table_.end()) throw ConfigError("noise profile has no f(" + std::to_string(i) + ")");
      return it->second;
    }
  }
  return 1.0;
}

const char* noise_kind_name(NoiseProfile::Kind kind) {
  switch (kind) {
    case NoiseProfile::Kind::Noiseless: return "noiseless";
    case NoiseProfile::Kind::Parametric: return "parametric";
    case NoiseProfile::Kind::Table: return "table";
  }
  return "noiseless";
}

std::vector<Bits> orthocomplement_basis(const HiddenString& b) {
  const auto n = static_cast<std::size_t>(b.n());
  const std::size_t p = b.bits().first_set();
  std::vector<Bits> basis;
  basis.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == p) continue;
    Bits v = Bits::unit(n, j);
    if (b.bits().test(j)) v.set(p);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

// Random bits r, then the pivot bit fixed so that z.b = parity. For parity 0
// this equals sum_{j != p} r_j v_j over the orthocomplement basis.
Bits draw_with_parity(const HiddenString& b, bool parity, SeededRng& rng) {
  Bits z(b.bits().size());
  rng.fill(z);
  const std::size_t p = b.bits().first_set();
  z.set(p, false);
  z.set(p, z.dot(b.bits()) != parity);
  return z;
}

}  // namespace

Bits sample_noiseless(const HiddenString& b, SeededRng& rng) { return draw_with_parity(b, false, rng); }

Bits sample_noisy(const HiddenString& b, const NoiseProfile& profile, SeededRng& rng) {
  const bool valid = rng.bernoulli(profile.f(b.n(), b.hw()));
  return draw_with_parity(b, !valid, rng);
}

const char* shot_tag_name(ShotTag tag) {
  return tag == ShotTag::Calibration ? "calibration" : "evaluation";
}

ShotTag parse_shot_tag(std::string_view name) {
  if (name == "calibration") return ShotTag::Calibration;
  if (name == "evaluation") return ShotTag::Evaluation;
  throw InvalidArgument("unknown shot tag \"" + std::string(name) + "\"");
}

std::vector<ShotRecord> simulate_shots(int n, int w, std::int64_t shots_per_class, const NoiseProfile& profile,
                                       std::uint64_t seed, ShotTag tag) {
  if (shots_per_class < 1) throw InvalidArgument("shots_per_class must be >= 1");
  if (n < 1 || w < 1 || w > n) throw InvalidArgument("need 1 <= w <= n");
  std::vector<ShotRecord> out;
  out.reserve(static_cast<std::size_t>(w * shots_per_class));
  for (int i = 1; i <= w; ++i) {
    const auto b = canonical_b(n, i);
    const double f = profile.f(n, i);
    SeededRng rng(seed, stream_key(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i),
                                   static_cast<std::uint64_t>(tag)));
    for (std::int64_t s = 0; s < shots_per_class; ++s) {
      const bool valid = rng.bernoulli(f);
      out.push_back({n, b.bits(), draw_with_parity(b, !valid, rng), s, tag});
    }
  }
  return out;
}

ValidityReport empirical_validity(const std::vector<ShotRecord>& records) {
  if (records.empty()) throw InvalidArgument("no records");
  std::map<std::pair<int, int>, std::array<std::int64_t, 3>> tally;  // shots, valid, valid nonzero
  for (const auto& r : records) {
    auto& t = tally[{r.n, r.hw()}];
    ++t[0];
    if (r.valid()) {
      ++t[1];
      if (!r.z.none()) ++t[2];
    }
  }
  ValidityReport rep;
  std::map<int, std::array<double, 3>> acc;  // weight, valid, valid nonzero
  for (const auto& [key, t] : tally) {
    ClassValidity c{key.first, key.second, t[0], static_cast<double>(t[1]) / static_cast<double>(t[0]),
                    static_cast<double>(t[2]) / static_cast<double>(t[0])};
    rep.classes.push_back(c);
    const double h = static_cast<double>(count_candidates(c.n, c.hw) -
                                         (c.hw > 1 ? count_candidates(c.n, c.hw - 1) : BigCount(0)));
    auto& a = acc[c.n];
    a[0] += h;
    a[1] += h * c.valid;
    a[2] += h * c.valid_nonzero;
  }
  for (const auto& [n, a] : acc) rep.weighted[n] = {a[1] / a[0], a[2] / a[0]};
  return rep;
}

}  // namespace simonq

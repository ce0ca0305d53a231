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

#include "simonq/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "simonq/errors.hpp"

namespace simonq {

double FHatTable::at(int i) const {
  const auto it = f_hat.find(i);
  if (it == f_hat.end()) throw ConfigError("f_hat has no entry for weight " + std::to_string(i));
  return it->second;
}

double FHatTable::max_up_to(int w) const {
  double m = 0.0;
  for (int i = 1; i <= w; ++i) m = std::max(m, at(i));
  return m;
}

FHatTable estimate_f_hat(const std::vector<ShotRecord>& records, int n, int w) {
  if (w < 1 || w > n) throw InvalidArgument("need 1 <= w <= n");
  std::map<int, std::int64_t> total;
  std::map<int, std::int64_t> valid;
  for (const auto& r : records) {
    if (r.n != n || r.tag != ShotTag::Calibration) continue;
    const int i = r.hw();
    if (i < 1 || i > w) continue;
    ++total[i];
    if (r.valid()) ++valid[i];
  }
  std::string missing;
  for (int i = 1; i <= w; ++i) {
    if (!total.contains(i)) missing += (missing.empty() ? "" : ", ") + std::to_string(i);
  }
  if (!missing.empty()) {
    throw ConfigError("no calibration records at n=" + std::to_string(n) + " for weights " + missing);
  }
  FHatTable t;
  for (const auto& [i, c] : total) {
    t.f_hat[i] = static_cast<double>(valid[i]) / static_cast<double>(c);
    t.counts[i] = c;
  }
  return t;
}

CandidateEnumeration::CandidateEnumeration(int n, int w)
    : n_(n), w_(w), words_((static_cast<std::size_t>(n) + 63) / 64) {
  const BigCount total = count_candidates(n, w);
  if (total > BigCount(kMaxCandidates)) {
    throw Refusal(refusal::kMemoryGuard, "candidate set of size " + total.str() + " at n=" + std::to_string(n) +
                                             ", w=" + std::to_string(w) + " exceeds the 2^26 guard");
  }
  const auto size = static_cast<std::size_t>(total);
  packed_.reserve(size * words_);
  weights_.reserve(size);
  std::string s(static_cast<std::size_t>(n), '0');
  for (int hw = 1; hw <= w; ++hw) {
    std::fill(s.begin(), s.end(), '0');
    std::fill(s.end() - hw, s.end(), '1');
    do {
      const auto base = packed_.size();
      packed_.resize(base + words_, 0);
      for (int j = 0; j < n; ++j) {
        if (s[j] == '1') packed_[base + (j >> 6)] |= std::uint64_t{1} << (j & 63);
      }
      weights_.push_back(hw);
    } while (std::next_permutation(s.begin(), s.end()));
  }
}

Bits CandidateEnumeration::at(std::size_t k) const {
  Bits b(static_cast<std::size_t>(n_));
  std::copy_n(packed_.begin() + static_cast<std::ptrdiff_t>(k * words_), words_, b.words().begin());
  return b;
}

std::size_t CandidateEnumeration::index_of(const Bits& b) const {
  if (static_cast<int>(b.size()) != n_) return size();
  const auto w = b.words();
  for (std::size_t k = 0; k < size(); ++k) {
    if (std::equal(w.begin(), w.end(), packed_.begin() + static_cast<std::ptrdiff_t>(k * words_))) return k;
  }
  return size();
}

bool CandidateEnumeration::parity(std::size_t k, const Bits& z) const {
  const auto zw = z.words();
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < words_; ++j) acc ^= packed_[k * words_ + j] & zw[j];
  return std::popcount(acc) & 1;
}

PosteriorState::PosteriorState(const CandidateEnumeration& candidates, const FHatTable& f_hat)
    : cands_(&candidates),
      log_valid_(static_cast<std::size_t>(candidates.w() + 1)),
      log_invalid_(static_cast<std::size_t>(candidates.w() + 1)) {
  for (int i = 1; i <= candidates.w(); ++i) {
    const double f = f_hat.at(i);
    if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("f_hat(" + std::to_string(i) + ") outside [0, 1]");
    log_valid_[i] = std::log(f);
    log_invalid_[i] = std::log1p(-f);
  }
  reset();
}

void PosteriorState::reset() {
  log_probs_.assign(cands_->size(), -std::log(static_cast<double>(cands_->size())));
  argmax_ = 0;
}

void PosteriorState::update(const Bits& z) {
  if (static_cast<int>(z.size()) != cands_->n()) throw InvalidArgument("outcome length does not match n");
  const std::size_t size = cands_->size();
  if (cands_->words_per() == 1) {
    const std::uint64_t zw = z.words()[0];
    for (std::size_t k = 0; k < size; ++k) {
      const int hw = cands_->weight(k);
      const bool odd = std::popcount(cands_->at_word(k) & zw) & 1;
      log_probs_[k] += odd ? log_invalid_[hw] : log_valid_[hw];
    }
  } else {
    for (std::size_t k = 0; k < size; ++k) {
      const int hw = cands_->weight(k);
      log_probs_[k] += cands_->parity(k, z) ? log_invalid_[hw] : log_valid_[hw];
    }
  }
  normalize();
}

void PosteriorState::normalize() {
  double m = -std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t k = 0; k < log_probs_.size(); ++k) {
    if (log_probs_[k] > m) {
      m = log_probs_[k];
      arg = k;
    }
  }
  if (!std::isfinite(m)) throw NumericError("posterior collapsed: every candidate has zero likelihood");
  double s = 0.0;
  for (double lp : log_probs_) s += std::exp(lp - m);
  const double log_z = m + std::log(s);
  for (double& lp : log_probs_) lp -= log_z;
  argmax_ = arg;
}

double PosteriorState::max_probability() const { return std::exp(log_probs_[argmax_]); }

double PosteriorState::log_norm() const {
  const double m = *std::max_element(log_probs_.begin(), log_probs_.end());
  double s = 0.0;
  for (double lp : log_probs_) s += std::exp(lp - m);
  return m + std::log(s);
}

BayesPlayer::BayesPlayer(const CandidateEnumeration& candidates, const FHatTable& f_hat, double theta)
    : state_(candidates, f_hat), theta_(theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw InvalidArgument("theta must lie in (0, 1)");
}

SolveResult BayesPlayer::solve(std::span<const Bits> stream) {
  std::size_t pos = 0;
  return solve_live([&]() -> const Bits& { return stream[pos++]; },
                    static_cast<std::int64_t>(stream.size()));
}

SolveResult bayes_solve(int n, int w, std::span<const Bits> stream, const FHatTable& f_hat, double theta) {
  const CandidateEnumeration cands(n, w);
  BayesPlayer player(cands, f_hat, theta);
  return player.solve(stream);
}

double score_round(const Bits& guess, const Bits& truth, const BigCount& n_w) {
  if (n_w < 2) throw InvalidArgument("score undefined for N_w < 2");
  if (guess == truth) return 1.0;
  return -1.0 / static_cast<double>(n_w - 1);
}

void ClassTally::add(std::int64_t q, bool ok, bool exhausted_round) {
  ++rounds;
  const auto qd = static_cast<double>(q);
  sum_q += qd;
  sum_q2 += qd * qd;
  if (ok) {
    ++correct;
    sum_q_correct += qd;
  }
  if (exhausted_round) ++exhausted;
}

ClassTally& ClassTally::operator+=(const ClassTally& o) {
  rounds += o.rounds;
  sum_q += o.sum_q;
  sum_q2 += o.sum_q2;
  correct += o.correct;
  sum_q_correct += o.sum_q_correct;
  exhausted += o.exhausted;
  return *this;
}

double ClassTally::mean_q() const { return rounds ? sum_q / static_cast<double>(rounds) : 0.0; }
double ClassTally::p() const { return rounds ? static_cast<double>(correct) / static_cast<double>(rounds) : 0.0; }

namespace {

FHatTable true_f_hat(int n, int w, const NoiseProfile& profile) {
  FHatTable t;
  for (int i = 1; i <= w; ++i) {
    t.f_hat[i] = profile.f(n, i);
    t.counts[i] = 1;
  }
  return t;
}

std::vector<double> class_sizes(int n, int w) {
  std::vector<double> h;
  double c = 1.0;
  for (int i = 1; i <= w; ++i) {
    c = c * (n - i + 1) / i;
    h.push_back(c);
  }
  return h;
}

}  // namespace

NtsEstimate play_monte_carlo(int n, int w, const NoiseProfile& profile, const MonteCarloOptions& opts) {
  if (opts.rounds < 1) throw InvalidArgument("rounds must be >= 1");
  NtsEstimate est;
  est.n = n;
  est.w = w;
  est.theta = opts.theta;
  const FHatTable f_hat = opts.f_hat ? *opts.f_hat : true_f_hat(n, w, profile);
  const BigCount n_w = count_candidates(n, w);
  if (n_w == 1) {
    est.value = 0.0;
    return est;
  }
  if (f_hat.max_up_to(w) <= 0.5) {
    est.refusal = refusal::kFhatLeHalf;
    return est;
  }
  const CandidateEnumeration cands(n, w);
  BayesPlayer player(cands, f_hat, opts.theta);
  const double loss = -1.0 / static_cast<double>(n_w - 1);

  std::vector<ClassTally> tallies(static_cast<std::size_t>(w));
  double sq = 0.0, sp = 0.0, sqq = 0.0, spp = 0.0, sqp = 0.0;
  for (std::int64_t r = 0; r < opts.rounds; ++r) {
    SeededRng rng(opts.seed, stream_key(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(w),
                                        static_cast<std::uint64_t>(r), 0x4d43));
    const HiddenString b(cands.at(rng.below(cands.size())));
    const auto res = player.solve_live([&] { return sample_noisy(b, profile, rng); }, opts.max_queries);
    const bool ok = res.guess == b.bits();
    tallies[b.hw() - 1].add(res.queries, ok, res.exhausted);
    const auto q = static_cast<double>(res.queries);
    const double p = ok ? 1.0 : loss;
    sq += q;
    sp += p;
    sqq += q * q;
    spp += p * p;
    sqp += q * p;
  }
  const auto m = static_cast<double>(opts.rounds);
  est.rounds = opts.rounds;
  est.mean_q = sq / m;
  est.mean_p = sp / m;
  for (const auto& t : tallies) {
    est.q_i.push_back(t.mean_q());
    est.p_i.push_back(t.p());
    est.exhausted_rounds += t.exhausted;
  }
  if (est.mean_p <= 0.0) {
    est.refusal = refusal::kNoSolution;
    return est;
  }
  const double ratio = est.mean_q / est.mean_p;
  est.value = ratio;
  const double var_q = sqq / m - est.mean_q * est.mean_q;
  const double var_p = spp / m - est.mean_p * est.mean_p;
  const double cov = sqp / m - est.mean_q * est.mean_p;
  const double var_r = (var_q - 2 * ratio * cov + ratio * ratio * var_p) / (m * est.mean_p * est.mean_p);
  est.std_error = std::sqrt(std::max(0.0, var_r));
  return est;
}

std::vector<ClassTally> play_per_class(int n, int w, const NoiseProfile& profile, const MonteCarloOptions& opts) {
  if (opts.rounds < 1) throw InvalidArgument("rounds must be >= 1");
  const FHatTable f_hat = opts.f_hat ? *opts.f_hat : true_f_hat(n, w, profile);
  const CandidateEnumeration cands(n, w);
  BayesPlayer player(cands, f_hat, opts.theta);
  const auto h = class_sizes(n, w);
  std::vector<ClassTally> tallies(static_cast<std::size_t>(w));
  std::size_t offset = 0;
  for (int i = 1; i <= w; ++i) {
    const auto width = static_cast<std::uint64_t>(h[i - 1]);
    for (std::int64_t r = 0; r < opts.rounds; ++r) {
      SeededRng rng(opts.seed, stream_key(stream_key(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(w),
                                                     static_cast<std::uint64_t>(i)),
                                          static_cast<std::uint64_t>(r), 0x5043));
      const HiddenString b(cands.at(offset + rng.below(width)));
      const auto res = player.solve_live([&] { return sample_noisy(b, profile, rng); }, opts.max_queries);
      tallies[i - 1].add(res.queries, res.guess == b.bits(), res.exhausted);
    }
    offset += width;
  }
  return tallies;
}

std::optional<double> nts_closed_form(int n, int w, std::span<const double> q_i, std::span<const double> p_i) {
  if (q_i.size() != static_cast<std::size_t>(w) || p_i.size() != static_cast<std::size_t>(w)) {
    throw InvalidArgument("Q_i and p_i must have w entries");
  }
  const auto h = class_sizes(n, w);
  double n_w = 0.0, num = 0.0, den = -1.0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    n_w += h[k];
    num += h[k] * q_i[k];
    den += h[k] * p_i[k];
  }
  if (n_w < 2) throw InvalidArgument("closed form needs N_w >= 2");
  if (!(den > 0.0)) return std::nullopt;
  return (n_w - 1.0) / n_w * num / den;
}

NtsEstimate nts_from_tallies(int n, int w, std::span<const ClassTally> tallies) {
  if (tallies.size() != static_cast<std::size_t>(w)) throw InvalidArgument("need one tally per class");
  NtsEstimate est;
  est.n = n;
  est.w = w;
  const auto h = class_sizes(n, w);
  double n_w = 0.0, a = 0.0, b = -1.0, va = 0.0, vb = 0.0, cab = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const auto& t = tallies[k];
    if (t.rounds < 1) throw InvalidArgument("class " + std::to_string(k + 1) + " has no rounds");
    const auto r = static_cast<double>(t.rounds);
    const double q = t.mean_q();
    const double p = t.p();
    est.q_i.push_back(q);
    est.p_i.push_back(p);
    est.rounds += t.rounds;
    est.exhausted_rounds += t.exhausted;
    n_w += h[k];
    a += h[k] * q;
    b += h[k] * p;
    va += h[k] * h[k] * std::max(0.0, t.sum_q2 / r - q * q) / r;
    vb += h[k] * h[k] * p * (1.0 - p) / r;
    cab += h[k] * h[k] * (t.sum_q_correct / r - q * p) / r;
  }
  if (n_w < 2) {
    est.value = 0.0;
    return est;
  }
  if (!(b > 0.0)) {
    est.refusal = refusal::kNoSolution;
    return est;
  }
  const double c = (n_w - 1.0) / n_w;
  est.value = c * a / b;
  const double var = c * c * (va / (b * b) + a * a * vb / (b * b * b * b) - 2.0 * a * cab / (b * b * b));
  est.std_error = std::sqrt(std::max(0.0, var));
  return est;
}

std::int64_t k_min(const BigCount& n_w) {
  if (n_w < 1) throw InvalidArgument("N_w must be >= 1");
  // k(k-1)/2 + 1 >= N  <=>  k(k-1) >= 2(N-1).
  const BigCount target = 2 * (n_w - 1);
  BigCount k = boost::multiprecision::sqrt(target);
  if (k < 1) k = 1;
  while (k > 1 && (k - 1) * (k - 2) >= target) --k;
  while (k * (k - 1) < target) ++k;
  return static_cast<std::int64_t>(k);
}

double nts_c_lower_bound(const BigCount& n_w) {
  if (n_w == 1) return 0.0;
  const BigCount k = k_min(n_w);
  const BigCount num = k * (k - 1) * (k - 2);
  return static_cast<double>(k) - static_cast<double>(num) / (6.0 * static_cast<double>(n_w));
}

double nts_iq_interpolation(int n, int w) {
  if (n > 1000) throw InvalidArgument("interpolation limited to n <= 1000");
  constexpr double kGamma = 0.57721566490153286;
  constexpr double kErdosBorwein = 1.60669515241529176;
  const BigCount n_w = count_candidates(n, w);
  const BigCount space = (BigCount(1) << n) - 1;
  const double t = static_cast<double>(n_w) / static_cast<double>(space);
  return std::log2(static_cast<double>(n_w)) + (0.5 + kGamma / std::numbers::ln2) * (1.0 - t) +
         (kErdosBorwein - 1.0) * t;
}

RoundResult baseline_classical_player(int n, int w, const HiddenString& b, SeededRng& rng) {
  if (n > kBruteForceMaxN) throw SizeError("classical baseline limited to n <= 20");
  if (b.n() != n || b.hw() > w || w > n) throw InvalidArgument("hidden string outside S");
  RoundResult out;
  const BigCount n_w = count_candidates(n, w);
  if (n_w == 1) {
    out.guess = b.bits();
    out.correct = true;
    out.score = 1.0;
    return out;
  }
  const RelabeledOracle oracle(b);
  const std::uint64_t space = std::uint64_t{1} << n;
  std::vector<char> queried(space, 0);
  std::vector<char> alive(space, 0);
  std::uint64_t remaining = 0;
  for (std::uint64_t d = 1; d < space; ++d) {
    if (std::popcount(d) <= w) {
      alive[d] = 1;
      ++remaining;
    }
  }
  std::vector<std::uint64_t> xs;
  std::unordered_map<std::uint64_t, std::uint64_t> seen;  // image -> preimage
  std::uint64_t found = 0;
  while (found == 0 && remaining > 1) {
    std::uint64_t x;
    do {
      x = rng.below(space);
    } while (queried[x]);
    queried[x] = 1;
    ++out.queries;
    const std::uint64_t y = oracle.eval(Bits::from_u64(n, x)).to_u64();
    if (const auto it = seen.find(y); it != seen.end()) {
      found = x ^ it->second;
      break;
    }
    for (std::uint64_t prev : xs) {
      const std::uint64_t d = x ^ prev;
      if (alive[d]) {
        alive[d] = 0;
        --remaining;
      }
    }
    xs.push_back(x);
    seen.emplace(y, x);
  }
  if (found == 0) {
    for (std::uint64_t d = 1; d < space; ++d) {
      if (alive[d]) {
        found = d;
        break;
      }
    }
  }
  out.guess = Bits::from_u64(n, found);
  out.correct = out.guess == b.bits();
  out.score = score_round(out.guess, b.bits(), n_w);
  return out;
}

}  // namespace simonq

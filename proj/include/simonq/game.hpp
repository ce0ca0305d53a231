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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simonq/bits.hpp"
#include "simonq/oracle.hpp"
#include "simonq/rng.hpp"
#include "simonq/sampler.hpp"

namespace simonq {

inline constexpr double kDefaultTheta = 0.8;
/// Largest candidate set the Bayesian player will allocate.
inline constexpr std::uint64_t kMaxCandidates = std::uint64_t{1} << 26;

namespace refusal {
inline constexpr const char* kFhatLeHalf = "fhat-le-half";
inline constexpr const char* kMemoryGuard = "memory-guard";
inline constexpr const char* kBudgetExhausted = "budget-exhausted";
inline constexpr const char* kNoSolution = "no-solution";
}  // namespace refusal

struct FHatTable {
  std::map<int, double> f_hat;
  std::map<int, std::int64_t> counts;

  /// Throws ConfigError when weight i is absent.
  double at(int i) const;
  /// max over i in [1, w] of f_hat(i).
  double max_up_to(int w) const;
};

/// f_hat(i) = fraction of calibration shots of class i with z.b = 0, for
/// records of size n. Every class in [1, w] must be present.
FHatTable estimate_f_hat(const std::vector<ShotRecord>& records, int n, int w);

/// S = { b : 1 <= HW(b) <= w } in ascending weight, lexicographic within a
/// weight. Stored as packed 64-bit words. Refuses sets above kMaxCandidates.
class CandidateEnumeration {
 public:
  CandidateEnumeration(int n, int w);

  int n() const { return n_; }
  int w() const { return w_; }
  std::size_t size() const { return weights_.size(); }
  std::size_t words_per() const { return words_; }
  int weight(std::size_t k) const { return weights_[k]; }
  Bits at(std::size_t k) const;
  /// Index of b, or size() if b is not in S.
  std::size_t index_of(const Bits& b) const;
  /// First packed word of candidate k (the whole string when n <= 64).
  std::uint64_t at_word(std::size_t k) const { return packed_[k * words_]; }
  /// Parity of z.b_k.
  bool parity(std::size_t k, const Bits& z) const;

 private:
  int n_;
  int w_;
  std::size_t words_;
  std::vector<std::uint64_t> packed_;
  std::vector<int> weights_;
};

/// Log-space posterior over an enumeration, normalized after every update.
class PosteriorState {
 public:
  PosteriorState(const CandidateEnumeration& candidates, const FHatTable& f_hat);

  void reset();
  /// Multiplies each candidate by f_hat(HW) if z.b = 0 else 1 - f_hat(HW).
  /// Throws NumericError if every candidate reaches probability zero.
  void update(const Bits& z);

  const CandidateEnumeration& candidates() const { return *cands_; }
  const std::vector<double>& log_probs() const { return log_probs_; }
  /// First index attaining the maximum.
  std::size_t argmax() const { return argmax_; }
  double max_probability() const;
  /// log-sum-exp of the stored log probabilities (0 when normalized).
  double log_norm() const;

 private:
  void normalize();

  const CandidateEnumeration* cands_;
  std::vector<double> log_valid_;    // by weight
  std::vector<double> log_invalid_;  // by weight
  std::vector<double> log_probs_;
  std::size_t argmax_ = 0;
};

struct SolveResult {
  Bits guess;
  std::int64_t queries = 0;
  bool exhausted = false;
  double max_posterior = 0.0;
};

/// Bayesian player. Consumes z's until the MAP probability reaches theta;
/// if the stream ends first it guesses the current MAP and flags it.
class BayesPlayer {
 public:
  BayesPlayer(const CandidateEnumeration& candidates, const FHatTable& f_hat, double theta = kDefaultTheta);

  SolveResult solve(std::span<const Bits> stream);
  /// Draws z from `next` until the threshold or `max_queries`.
  template <typename Next>
  SolveResult solve_live(Next&& next, std::int64_t max_queries);

  const PosteriorState& posterior() const { return state_; }
  double theta() const { return theta_; }

 private:
  PosteriorState state_;
  double theta_;
};

SolveResult bayes_solve(int n, int w, std::span<const Bits> stream, const FHatTable& f_hat,
                        double theta = kDefaultTheta);

/// 1 if correct, else -1/(N_w - 1). N_w = 1 is degenerate.
double score_round(const Bits& guess, const Bits& truth, const BigCount& n_w);

/// Per-class accumulator of rounds.
struct ClassTally {
  std::int64_t rounds = 0;
  double sum_q = 0.0;
  double sum_q2 = 0.0;
  std::int64_t correct = 0;
  double sum_q_correct = 0.0;
  std::int64_t exhausted = 0;

  void add(std::int64_t q, bool ok, bool exhausted_round = false);
  ClassTally& operator+=(const ClassTally& o);
  double mean_q() const;
  double p() const;
};

struct NtsEstimate {
  int n = 0;
  int w = 0;
  double theta = kDefaultTheta;
  std::optional<double> value;  // empty when refused or no solution
  double std_error = 0.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  std::vector<double> q_i;  // classes 1..w
  std::vector<double> p_i;
  std::int64_t rounds = 0;
  std::int64_t exhausted_rounds = 0;
  std::string refusal;  // empty unless refused
};

struct MonteCarloOptions {
  double theta = kDefaultTheta;
  std::int64_t rounds = 1000;
  std::uint64_t seed = 0;
  std::int64_t max_queries = 100000;  // per round
  /// Player's f_hat; defaults to the true profile values.
  std::optional<FHatTable> f_hat;
};

/// Direct estimate: b uniform over S each round, NTS = <Q>/<P>.
NtsEstimate play_monte_carlo(int n, int w, const NoiseProfile& profile, const MonteCarloOptions& opts);

/// Stratified run: opts.rounds rounds per class with b drawn uniformly from
/// the class. Returns one tally per class 1..w.
std::vector<ClassTally> play_per_class(int n, int w, const NoiseProfile& profile, const MonteCarloOptions& opts);

/// (N_w - 1)/N_w * sum h_i Q_i / (sum h_i p_i - 1), h_i = C(n, i).
/// Empty when the denominator is not positive.
std::optional<double> nts_closed_form(int n, int w, std::span<const double> q_i, std::span<const double> p_i);

/// Closed form applied to tallies, with a delta-method standard error.
NtsEstimate nts_from_tallies(int n, int w, std::span<const ClassTally> tallies);

/// Smallest k with k(k-1)/2 + 1 >= N_w.
std::int64_t k_min(const BigCount& n_w);
/// k - k(k-1)(k-2)/(6 N_w); 0 for N_w = 1.
double nts_c_lower_bound(const BigCount& n_w);

/// log2 N_w + (1/2 + gamma/ln 2)(1 - t) + (E_EB - 1) t with t = N_w/(2^n - 1).
double nts_iq_interpolation(int n, int w);

struct RoundResult {
  std::int64_t queries = 0;
  Bits guess;
  bool correct = false;
  double score = 0.0;
};

/// Random distinct queries with collision detection and elimination of
/// differences x+y whose images differ. Stops when one candidate remains.
/// Exhaustive bookkeeping; n <= 20.
RoundResult baseline_classical_player(int n, int w, const HiddenString& b, SeededRng& rng);

// --- implementation ---------------------------------------------------------

template <typename Next>
SolveResult BayesPlayer::solve_live(Next&& next, std::int64_t max_queries) {
  state_.reset();
  SolveResult out;
  while (state_.max_probability() < theta_) {
    if (out.queries >= max_queries) {
      out.exhausted = true;
      break;
    }
    state_.update(next());
    ++out.queries;
  }
  out.guess = state_.candidates().at(state_.argmax());
  out.max_posterior = state_.max_probability();
  return out;
}

}  // namespace simonq

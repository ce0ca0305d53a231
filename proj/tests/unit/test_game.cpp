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
#include <numeric>

#include "doctest.h"
#include "simonq/errors.hpp"
#include "simonq/game.hpp"

using namespace simonq;

namespace {

FHatTable constant_f_hat(int w, double f) {
  FHatTable t;
  for (int i = 1; i <= w; ++i) {
    t.f_hat[i] = f;
    t.counts[i] = 1;
  }
  return t;
}

std::vector<Bits> stream_of(std::initializer_list<const char*> zs) {
  std::vector<Bits> out;
  for (const char* z : zs) out.push_back(Bits::from_string(z));
  return out;
}

// Full-rank expectation: sum_{j=0}^{n-2} 1 / (1 - 2^{j-(n-1)}).
double full_rank_expectation(int n) {
  double s = 0;
  for (int j = 0; j <= n - 2; ++j) s += 1.0 / (1.0 - std::ldexp(1.0, j - (n - 1)));
  return s;
}

}  // namespace

TEST_CASE("f_hat estimation from calibration shots") {
  const auto cal = simulate_shots(4, 3, 2000, NoiseProfile::noiseless(), 1, ShotTag::Calibration);
  const auto t = estimate_f_hat(cal, 4, 3);
  for (int i = 1; i <= 3; ++i) {
    CHECK(t.at(i) == 1.0);
    CHECK(t.counts.at(i) == 2000);
  }
  CHECK(t.max_up_to(3) == 1.0);
  CHECK_THROWS_AS(t.at(4), ConfigError);

  // Half of the records valid.
  std::vector<ShotRecord> half;
  for (int k = 0; k < 15000; ++k) {
    half.push_back({2, Bits::from_string("11"), Bits::from_string(k % 2 ? "10" : "00"), k, ShotTag::Calibration});
  }
  half.push_back({2, Bits::from_string("01"), Bits::from_string("10"), 0, ShotTag::Calibration});
  CHECK(estimate_f_hat(half, 2, 2).at(2) == 0.5);

  const auto noisy = simulate_shots(3, 2, 15000, NoiseProfile::table({{1, 1.0}, {2, 0.9}}), 7, ShotTag::Calibration);
  const double f2 = estimate_f_hat(noisy, 3, 2).at(2);
  CHECK(std::abs(f2 - 0.9) < 3 * std::sqrt(0.9 * 0.1 / 15000));

  // Evaluation records are ignored; missing classes are named.
  const auto ev = simulate_shots(3, 3, 10, NoiseProfile::noiseless(), 1, ShotTag::Evaluation);
  CHECK_THROWS_WITH_AS(estimate_f_hat(ev, 3, 3), doctest::Contains("1, 2, 3"), ConfigError);
}

TEST_CASE("candidate enumeration order") {
  const CandidateEnumeration c(3, 3);
  REQUIRE(c.size() == 7);
  const char* expected[] = {"001", "010", "100", "011", "101", "110", "111"};
  for (std::size_t k = 0; k < 7; ++k) {
    CHECK(c.at(k).to_string() == expected[k]);
    CHECK(c.index_of(c.at(k)) == k);
  }
  CHECK(c.weight(3) == 2);
  CHECK(c.index_of(Bits(3)) == 7);
  CHECK(CandidateEnumeration(70, 2).size() == 70 + 70 * 69 / 2);
  CHECK(CandidateEnumeration(70, 2).index_of(Bits::unit(70, 0)) == 69);

  try {
    CandidateEnumeration big(27, 27);
    FAIL("expected a memory-guard refusal");
  } catch (const Refusal& r) {
    CHECK(r.reason() == refusal::kMemoryGuard);
  }
}

TEST_CASE("hand-executed Bayesian rounds") {
  const auto f1 = constant_f_hat(2, 1.0);
  const auto one = stream_of({"11"});
  const auto r = bayes_solve(2, 2, one, f1);
  CHECK(r.guess.to_string() == "11");
  CHECK(r.queries == 1);
  CHECK_FALSE(r.exhausted);

  const auto zero = stream_of({"00"});
  const auto r0 = bayes_solve(2, 2, zero, f1);
  CHECK(r0.exhausted);
  CHECK(r0.queries == 1);
  CHECK(r0.max_posterior == doctest::Approx(1.0 / 3));

  // Uninformative likelihood.
  const auto many = stream_of({"11", "01", "10", "11"});
  const auto rh = bayes_solve(2, 2, many, constant_f_hat(2, 0.5));
  CHECK(rh.max_posterior == doctest::Approx(1.0 / 3));
  CHECK(rh.queries == 4);

  // An impossible stream collapses the posterior.
  const auto bad = stream_of({"11"});
  CHECK_THROWS_AS(bayes_solve(2, 1, bad, constant_f_hat(1, 1.0)), NumericError);

  CHECK_THROWS_AS(BayesPlayer(CandidateEnumeration(2, 2), f1, 1.0), InvalidArgument);
}

TEST_CASE("posterior stays normalized") {
  const CandidateEnumeration c(5, 5);
  const auto f = constant_f_hat(5, 0.8);
  PosteriorState s(c, f);
  SeededRng rng(1, 0);
  const HiddenString b(Bits::from_string("01101"));
  for (int k = 0; k < 40; ++k) {
    s.update(sample_noiseless(b, rng));
    CHECK(std::abs(s.log_norm()) < 1e-9);
  }
  CHECK(c.at(s.argmax()) == b.bits());
  CHECK(s.max_probability() > 0.99);
}

TEST_CASE("round scores") {
  const auto t = Bits::from_string("011");
  CHECK(score_round(t, t, 7) == 1.0);
  CHECK(score_round(Bits::from_string("001"), t, 7) == doctest::Approx(-1.0 / 6));
  CHECK(score_round(Bits::from_string("001"), t, 6) == doctest::Approx(-0.2));
  CHECK_THROWS_AS(score_round(t, t, 1), InvalidArgument);
}

TEST_CASE("closed-form NTS") {
  const double q22[] = {2, 2}, p22[] = {1, 1};
  CHECK(*nts_closed_form(2, 2, q22, p22) == doctest::Approx(2.0));
  const double q1[] = {3.5}, p1[] = {1.0};
  CHECK(*nts_closed_form(4, 1, q1, p1) == doctest::Approx(3.5));
  // sum h_i p_i = 1: zero denominator.
  const double pz[] = {1.0 / 3, 1.0 / 3};
  CHECK_FALSE(nts_closed_form(2, 2, q22, pz));
  CHECK_THROWS_AS(nts_closed_form(2, 2, q1, p1), InvalidArgument);
}

TEST_CASE("tallies feed the closed form") {
  std::vector<ClassTally> t(2);
  for (int k = 0; k < 10; ++k) {
    t[0].add(2, true);
    t[1].add(2, true);
  }
  const auto est = nts_from_tallies(2, 2, t);
  CHECK(*est.value == doctest::Approx(2.0));
  CHECK(est.std_error == doctest::Approx(0.0));
  CHECK(est.rounds == 20);

  ClassTally a, b;
  a.add(3, true);
  b.add(5, false, true);
  a += b;
  CHECK(a.rounds == 2);
  CHECK(a.mean_q() == 4.0);
  CHECK(a.p() == 0.5);
  CHECK(a.exhausted == 1);
}

TEST_CASE("Monte Carlo NTS for noiseless n=2") {
  MonteCarloOptions opts;
  opts.rounds = 20000;
  opts.seed = 3;
  const auto est = play_monte_carlo(2, 2, NoiseProfile::noiseless(), opts);
  REQUIRE(est.value);
  CHECK(std::abs(*est.value - 2.0) < 4 * est.std_error);
  CHECK(est.mean_p == 1.0);

  const auto again = play_monte_carlo(2, 2, NoiseProfile::noiseless(), opts);
  CHECK(*again.value == *est.value);

  opts.rounds = 0;
  CHECK_THROWS_AS(play_monte_carlo(2, 2, NoiseProfile::noiseless(), opts), InvalidArgument);
}

TEST_CASE("uninformative f_hat yields no solution") {
  MonteCarloOptions opts;
  opts.rounds = 100;
  opts.f_hat = constant_f_hat(3, 0.5);
  const auto est = play_monte_carlo(3, 3, NoiseProfile::noiseless(), opts);
  CHECK_FALSE(est.value);
  CHECK(est.refusal == refusal::kFhatLeHalf);
  CHECK(*play_monte_carlo(1, 1, NoiseProfile::noiseless(), opts).value == 0.0);
}

TEST_CASE("ideal player matches the full-rank expectation") {
  CHECK(full_rank_expectation(2) == doctest::Approx(2.0));
  CHECK(full_rank_expectation(3) == doctest::Approx(10.0 / 3));
  MonteCarloOptions opts;
  opts.rounds = 5000;
  opts.seed = 17;
  const auto est = play_monte_carlo(3, 3, NoiseProfile::noiseless(), opts);
  // Every guess is right, so the NTS error is the error of the mean Q.
  CHECK(est.mean_p == 1.0);
  CHECK(std::abs(est.mean_q - 10.0 / 3) < 4 * est.std_error);
}

TEST_CASE("classical bound values") {
  CHECK(k_min(1) == 1);
  CHECK(k_min(2) == 2);
  CHECK(k_min(7) == 4);
  CHECK(k_min(30) == 9);
  CHECK(nts_c_lower_bound(1) == 0.0);
  CHECK(nts_c_lower_bound(2) == 2.0);
  CHECK(std::abs(nts_c_lower_bound(7) - (4.0 - 24.0 / 42.0)) < 1e-12);
  CHECK(std::abs(nts_c_lower_bound(30) - 6.2) < 1e-12);
  // k(k-1)/2 + 1 >= N is tight at k_min.
  for (long long nw : {3LL, 11LL, 1000LL, 123456789LL}) {
    const auto k = k_min(nw);
    CHECK(k * (k - 1) / 2 + 1 >= nw);
    CHECK((k - 1) * (k - 2) / 2 + 1 < nw);
  }
  const BigCount huge = (BigCount(1) << 200) - 1;
  CHECK(k_min(huge) > 0);
}

TEST_CASE("ideal-query interpolation") {
  CHECK(nts_iq_interpolation(3, 3) == doctest::Approx(3.41404).epsilon(1e-5));
  CHECK(nts_iq_interpolation(1, 1) == doctest::Approx(0.60669).epsilon(1e-4));
  CHECK(nts_iq_interpolation(60, 1) - std::log2(60.0) == doctest::Approx(1.33275).epsilon(1e-4));
  CHECK_THROWS_AS(nts_iq_interpolation(1001, 1), InvalidArgument);
}

TEST_CASE("classical baseline player") {
  SeededRng rng(9, 0);
  const HiddenString b11(Bits::from_string("11"));
  for (int k = 0; k < 200; ++k) {
    const auto r = baseline_classical_player(2, 2, b11, rng);
    CHECK(r.queries <= 3);
    CHECK(r.correct);
  }
  const auto trivial = baseline_classical_player(1, 1, HiddenString(Bits::from_string("1")), rng);
  CHECK(trivial.queries == 0);
  CHECK(trivial.guess.to_string() == "1");
  CHECK_THROWS_AS(baseline_classical_player(21, 1, canonical_b(21, 1), rng), SizeError);
  CHECK_THROWS_AS(baseline_classical_player(4, 1, canonical_b(4, 2), rng), InvalidArgument);
}

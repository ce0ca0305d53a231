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

#include "doctest.h"
#include "simonq/errors.hpp"
#include "simonq/stats.hpp"

using namespace simonq;

namespace {

std::vector<ScalingPoint> synthetic(Model m, std::array<double, 2> p, int n_lo, int n_hi, double sigma) {
  std::vector<ScalingPoint> pts;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double nw = std::ldexp(1.0, n) - 1.0;
    pts.push_back({n, nw, model_value(m, p, nw), sigma});
  }
  return pts;
}

FitResult fake_fit(Model m, double aic, double exponent) {
  FitResult f;
  f.model = m;
  f.params = {1.0, exponent};
  f.points = 6;
  f.diagnostics = Diagnostics{};
  f.diagnostics->aic = aic;
  return f;
}

SelectionReport select_from_deltas(const std::vector<double>& deltas, double beta = 0.3) {
  std::vector<std::pair<FitResult, FitResult>> fits;
  std::vector<int> ws;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    fits.emplace_back(fake_fit(Model::Polylog, 100.0, 1.5), fake_fit(Model::Poly, 100.0 + deltas[k], beta));
    ws.push_back(static_cast<int>(k) + 3);
  }
  return select_model(fits, ws);
}

}  // namespace

TEST_CASE("bootstrap on constant data has no spread") {
  std::vector<FoldTallies> classes(2, FoldTallies(10));
  for (auto& c : classes) {
    for (auto& f : c) {
      for (int r = 0; r < 5; ++r) f.add(2, true);
    }
  }
  const auto res = bootstrap_nts(2, 2, classes, {10, 2000, 1});
  CHECK(res.mean == doctest::Approx(2.0));
  CHECK(res.sigma < 1e-8);
  CHECK(*res.point == doctest::Approx(2.0));
  CHECK(res.undefined == 0);
}

TEST_CASE("two-fold bootstrap reduces to a coin flip between folds") {
  // Fold 0 gives Q = 2 everywhere, fold 1 gives Q = 4; every guess right.
  std::vector<FoldTallies> classes(2, FoldTallies(2));
  for (auto& c : classes) {
    c[0].add(2, true);
    c[1].add(4, true);
  }
  const auto res = bootstrap_nts(2, 2, classes, {2, 40000, 5});
  CHECK(res.mean == doctest::Approx(3.0).epsilon(0.01));
  CHECK(res.sigma == doctest::Approx(1.0).epsilon(0.01));
  CHECK(*res.point == doctest::Approx(3.0));
}

TEST_CASE("bootstrap refuses when no resample is defined") {
  std::vector<FoldTallies> classes(2, FoldTallies(3));
  for (auto& c : classes) {
    for (auto& f : c) f.add(3, false);
  }
  try {
    bootstrap_nts(2, 2, classes, {3, 50, 1});
    FAIL("expected refusal");
  } catch (const Refusal& r) {
    CHECK(r.reason() == refusal::kNoSolution);
  }
}

TEST_CASE("bootstrap on a noiseless n=3 stream") {
  const int n = 3;
  const auto recs = simulate_shots(n, n, 15000, NoiseProfile::noiseless(), 2);
  std::vector<std::vector<Bits>> streams(n);
  for (const auto& r : recs) streams[r.hw() - 1].push_back(r.z);
  FHatTable f;
  for (int i = 1; i <= n; ++i) f.f_hat[i] = 1.0;
  const auto res = bootstrap_nts(n, n, streams, f, 0.8, {10, 3000, 2});
  REQUIRE(res.point);
  CHECK(std::abs(res.mean - *res.point) < res.sigma);
  CHECK(std::abs(*res.point - 10.0 / 3) < 4 * res.sigma);
  for (double p : res.p_i) CHECK(p == 1.0);
}

TEST_CASE("fold play keeps rounds inside folds") {
  const CandidateEnumeration cands(2, 2);
  FHatTable f;
  f.f_hat = {{1, 1.0}, {2, 1.0}};
  BayesPlayer player(cands, f, 0.8);
  // Each "11" solves a round in one query; a trailing "00" is a partial round.
  std::vector<Bits> stream;
  for (const char* z : {"11", "11", "00", "11", "00", "00"}) stream.push_back(Bits::from_string(z));
  const auto folds = play_folds(player, Bits::from_string("11"), stream, 2);
  CHECK(folds[0].rounds == 2);
  CHECK(folds[1].rounds == 1);
  CHECK(folds[0].exhausted == 0);
  CHECK_THROWS_AS(play_folds(player, Bits::from_string("11"), stream, 7), InvalidArgument);
  CHECK_THROWS_AS((BootstrapConfig{1, 10, 0}.validate()), ConfigError);
}

TEST_CASE("noiseless fits recover generating parameters") {
  const auto pl = fit_model(synthetic(Model::Polylog, {2.0, 1.5}, 2, 12, 1e-3), Model::Polylog);
  CHECK(std::abs(pl.params[0] - 2.0) < 1e-6);
  CHECK(std::abs(pl.params[1] - 1.5) < 1e-6);
  const auto po = fit_model(synthetic(Model::Poly, {0.3, 0.5}, 2, 12, 1e-3), Model::Poly);
  CHECK(std::abs(po.params[0] - 0.3) < 1e-6);
  CHECK(std::abs(po.params[1] - 0.5) < 1e-6);
  REQUIRE(pl.diagnostics);
  CHECK(pl.diagnostics->r2 == doctest::Approx(1.0));
  CHECK(pl.rss_weighted < 1e-12);
}

TEST_CASE("beta below one half classifies as polynomial") {
  const auto pts = synthetic(Model::Poly, {0.5, 0.3}, 3, 14, 1e-3);
  const auto po = fit_model(pts, Model::Poly);
  CHECK(po.exponent() < kClassicalBeta);
  CHECK(classify_speedup(Model::Poly, po.exponent()) == "polynomial");
  CHECK(classify_speedup(Model::Poly, 0.6) == "none");
  CHECK(classify_speedup(Model::Polylog, 2.0) == "exponential");
}

TEST_CASE("fit input validation") {
  auto pts = synthetic(Model::Poly, {0.3, 0.5}, 2, 3, 1.0);
  CHECK_THROWS_AS(fit_model(pts, Model::Poly), InvalidArgument);
  pts = synthetic(Model::Poly, {0.3, 0.5}, 2, 4, 1.0);
  const auto three = fit_model(pts, Model::Poly);
  CHECK_FALSE(three.diagnostics);
  CHECK_THROWS_AS(diagnostics(three, pts), InvalidArgument);
  pts[0].sigma = 0;
  CHECK_THROWS_AS(fit_model(pts, Model::Poly), InvalidArgument);
  CHECK(parse_model("polylog") == Model::Polylog);
  CHECK_THROWS_AS(parse_model("exp"), InvalidArgument);
}

TEST_CASE("AIC differences depend only on residuals") {
  auto pts = synthetic(Model::Polylog, {1.0, 2.0}, 2, 10, 0.05);
  for (std::size_t k = 0; k < pts.size(); ++k) pts[k].y += (k % 2 ? 0.03 : -0.03);
  const auto pl = fit_model(pts, Model::Polylog);
  const auto po = fit_model(pts, Model::Poly);
  CHECK(po.diagnostics->aic - pl.diagnostics->aic == doctest::Approx(po.rss_weighted - pl.rss_weighted));
}

TEST_CASE("Akaike weights") {
  const double d10[] = {0.0, 10.0};
  const auto w10 = akaike_weights(d10);
  CHECK(w10[0] == doctest::Approx(0.9933).epsilon(1e-4));
  CHECK(std::abs(w10[1] - 0.0067) <= 1e-4);
  const double eq[] = {3.0, 3.0};
  CHECK(akaike_weights(eq)[0] == doctest::Approx(0.5));
  const double d2[] = {5.0, 7.0};
  CHECK(akaike_weights(d2)[0] == doctest::Approx(0.731).epsilon(1e-3));
  CHECK(akaike_weights(d2)[1] == doctest::Approx(0.269).epsilon(1e-3));
}

TEST_CASE("w_c selection") {
  const auto stable = select_from_deltas({1.0, 12.0, 30.0, 50.0});
  REQUIRE(stable.w_c);
  CHECK(*stable.w_c == 4);
  CHECK(stable.speedup_class == "exponential");
  CHECK(stable.entries[0].weights[0] > 0.5);

  CHECK_FALSE(select_from_deltas({12.0, -12.0, 12.0, -12.0}).w_c);
  CHECK_FALSE(select_from_deltas({1.0, -2.0, 3.0}).w_c);

  const auto late = select_from_deltas({20.0, -15.0, -30.0, -40.0}, 0.3);
  REQUIRE(late.w_c);
  CHECK(*late.w_c == 4);
  CHECK(late.speedup_class == "polynomial");

  const auto none = select_from_deltas({});
  CHECK_FALSE(none.w_c);
  CHECK(none.speedup_class == "undetermined");
}

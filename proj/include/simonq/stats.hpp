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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simonq/game.hpp"

namespace simonq {

// --- bootstrap --------------------------------------------------------------

struct BootstrapConfig {
  int folds = 10;
  int resamples = 15000;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Round tallies of one class, one entry per fold.
using FoldTallies = std::vector<ClassTally>;

/// Splits `stream` into `folds` contiguous slices of near-equal size and
/// plays consecutive rounds inside each slice. A round cut off by the end
/// of its slice is dropped, unless the slice has no complete round, in
/// which case it is kept as an exhausted round.
FoldTallies play_folds(BayesPlayer& player, const Bits& truth, std::span<const Bits> stream, int folds);

struct BootstrapResult {
  double mean = 0.0;
  double sigma = 0.0;
  /// Closed form on all folds together.
  std::optional<double> point;
  std::int64_t resamples = 0;
  /// Resamples whose denominator was not positive (excluded).
  std::int64_t undefined = 0;
  std::int64_t exhausted_rounds = 0;
  std::vector<double> q_i;
  std::vector<double> p_i;
};

/// Bootstrap over fold tallies (outer index = class 1..w). Each resample
/// draws folds-1 fold indices with replacement, shared by every class, and
/// evaluates the closed-form NTS. Throws Refusal(no-solution) if no
/// resample is defined. sigma is floored at 1e-9 * max(1, |mean|).
BootstrapResult bootstrap_nts(int n, int w, std::span<const FoldTallies> classes, const BootstrapConfig& cfg);

/// Convenience over raw evaluation streams, one per class 1..w, each
/// generated by the canonical b of that class.
BootstrapResult bootstrap_nts(int n, int w, std::span<const std::vector<Bits>> streams, const FHatTable& f_hat,
                              double theta, const BootstrapConfig& cfg);

// --- fits -------------------------------------------------------------------

enum class Model { Polylog, Poly };
const char* model_name(Model m);
Model parse_model(std::string_view name);

struct ScalingPoint {
  int n = 0;
  double n_w = 0.0;
  double y = 0.0;
  double sigma = 0.0;
};

/// a (log2 N)^alpha or b (N^beta - 1).
double model_value(Model m, const std::array<double, 2>& p, double n_w);
/// Partial derivatives with respect to the two parameters.
std::array<double, 2> model_gradient(Model m, const std::array<double, 2>& p, double n_w);

struct Diagnostics {
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double log_likelihood = 0.0;
  double aic = 0.0;
  double aicc = 0.0;
  double bic = 0.0;
  double t_stat = 0.0;
  double p_value = 0.0;
};

struct FitResult {
  Model model = Model::Polylog;
  std::array<double, 2> params{};  // (a, alpha) or (b, beta)
  std::array<std::array<double, 2>, 2> cov{};
  double rss_weighted = 0.0;
  int iterations = 0;
  std::size_t points = 0;
  /// Present when points > 3 (AICc needs a residual degree of freedom).
  std::optional<Diagnostics> diagnostics;

  double exponent() const { return params[1]; }
  double exponent_se() const;
};

struct FitOptions {
  double lambda0 = 1e-3;
  double rss_tol = 1e-12;
  double step_tol = 1e-10;
  int max_iterations = 500;
};

/// Weighted Levenberg-Marquardt fit. Throws InvalidArgument for fewer than
/// three points or a non-positive sigma, NumericError if it does not
/// converge (message carries the RSS trace).
FitResult fit_model(std::span<const ScalingPoint> points, Model model, const FitOptions& opts = {});

/// Goodness of fit for k = 2 parameters. Throws InvalidArgument when
/// N <= k + 1.
Diagnostics diagnostics(const FitResult& fit, std::span<const ScalingPoint> points);

/// exp(-delta_i/2) normalized, delta_i = AIC_i - min AIC.
std::vector<double> akaike_weights(std::span<const double> aic);

// --- selection --------------------------------------------------------------

/// Exponent of the classical reference scaling N^(1/2).
inline constexpr double kClassicalBeta = 0.5;

struct SelectionEntry {
  int w = 0;
  FitResult polylog;
  FitResult poly;
  double delta_aic = 0.0;  // AIC_poly - AIC_polylog; > 0 favors polylog
  std::array<double, 2> weights{};  // (polylog, poly)
  Model preferred = Model::Polylog;
  bool decisive = false;  // |delta_aic| >= threshold
  std::string speedup_class;
};

struct SelectionReport {
  double threshold = 10.0;
  std::vector<SelectionEntry> entries;  // ascending w
  std::optional<int> w_c;
  std::string speedup_class;  // at the largest w from w_c on
};

/// "exponential" if polylog is preferred, "polynomial" if poly is preferred
/// with beta < 1/2, otherwise "none".
std::string classify_speedup(Model preferred, double beta);

/// Builds per-w entries from fits carrying diagnostics. w_c is the smallest
/// decisive w whose sign of delta AIC is shared by every later decisive w,
/// and which is confirmed by at least one later decisive w.
SelectionReport select_model(std::span<const std::pair<FitResult, FitResult>> fits, std::span<const int> ws,
                             double threshold = 10.0);

}  // namespace simonq

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

#include "simonq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "simonq/errors.hpp"

namespace simonq {

void BootstrapConfig::validate() const {
  if (folds < 2) throw ConfigError("bootstrap needs at least 2 folds");
  if (resamples < 1) throw ConfigError("bootstrap needs at least 1 resample");
}

FoldTallies play_folds(BayesPlayer& player, const Bits& truth, std::span<const Bits> stream, int folds) {
  if (folds < 1) throw InvalidArgument("folds must be >= 1");
  if (stream.size() < static_cast<std::size_t>(folds)) {
    throw InvalidArgument("stream of " + std::to_string(stream.size()) + " shots cannot fill " +
                          std::to_string(folds) + " folds");
  }
  FoldTallies out(static_cast<std::size_t>(folds));
  const std::size_t total = stream.size();
  for (int k = 0; k < folds; ++k) {
    const std::size_t lo = total * static_cast<std::size_t>(k) / static_cast<std::size_t>(folds);
    const std::size_t hi = total * static_cast<std::size_t>(k + 1) / static_cast<std::size_t>(folds);
    auto slice = stream.subspan(lo, hi - lo);
    while (!slice.empty()) {
      const auto res = player.solve(slice);
      if (res.exhausted) {
        if (out[k].rounds == 0) out[k].add(res.queries, res.guess == truth, true);
        break;
      }
      out[k].add(res.queries, res.guess == truth);
      slice = slice.subspan(static_cast<std::size_t>(res.queries));
    }
  }
  return out;
}

BootstrapResult bootstrap_nts(int n, int w, std::span<const FoldTallies> classes, const BootstrapConfig& cfg) {
  cfg.validate();
  if (classes.size() != static_cast<std::size_t>(w)) throw InvalidArgument("need fold tallies for every class");
  for (const auto& c : classes) {
    if (c.size() != static_cast<std::size_t>(cfg.folds)) throw InvalidArgument("fold count mismatch");
  }
  BootstrapResult out;

  std::vector<ClassTally> all(static_cast<std::size_t>(w));
  for (int i = 0; i < w; ++i) {
    for (const auto& f : classes[i]) all[i] += f;
    out.exhausted_rounds += all[i].exhausted;
  }
  const auto full = nts_from_tallies(n, w, all);
  out.point = full.value;
  out.q_i = full.q_i;
  out.p_i = full.p_i;

  SeededRng rng(cfg.seed, stream_key(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(w), 0x4253));
  std::vector<std::size_t> pick(static_cast<std::size_t>(cfg.folds - 1));
  std::vector<double> q(static_cast<std::size_t>(w));
  std::vector<double> p(static_cast<std::size_t>(w));
  double sum = 0.0;
  double sum2 = 0.0;
  std::int64_t defined = 0;
  for (int r = 0; r < cfg.resamples; ++r) {
    for (auto& k : pick) k = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(cfg.folds)));
    bool empty_class = false;
    for (int i = 0; i < w; ++i) {
      ClassTally t;
      for (auto k : pick) t += classes[i][k];
      if (t.rounds == 0) {
        empty_class = true;
        break;
      }
      q[i] = t.mean_q();
      p[i] = t.p();
    }
    const auto v = empty_class ? std::nullopt : nts_closed_form(n, w, q, p);
    if (!v) {
      ++out.undefined;
      continue;
    }
    ++defined;
    sum += *v;
    sum2 += *v * *v;
  }
  out.resamples = cfg.resamples;
  if (defined == 0) {
    throw Refusal(refusal::kNoSolution, "no bootstrap resample produced a defined NTS at n=" + std::to_string(n) +
                                            ", w=" + std::to_string(w));
  }
  const auto m = static_cast<double>(defined);
  out.mean = sum / m;
  const double var = defined > 1 ? std::max(0.0, (sum2 - m * out.mean * out.mean) / (m - 1.0)) : 0.0;
  out.sigma = std::max(std::sqrt(var), 1e-9 * std::max(1.0, std::abs(out.mean)));
  return out;
}

BootstrapResult bootstrap_nts(int n, int w, std::span<const std::vector<Bits>> streams, const FHatTable& f_hat,
                              double theta, const BootstrapConfig& cfg) {
  cfg.validate();
  if (streams.size() != static_cast<std::size_t>(w)) throw InvalidArgument("need one stream per class");
  const CandidateEnumeration cands(n, w);
  BayesPlayer player(cands, f_hat, theta);
  std::vector<FoldTallies> classes;
  for (int i = 1; i <= w; ++i) {
    classes.push_back(play_folds(player, canonical_b(n, i).bits(), streams[i - 1], cfg.folds));
  }
  return bootstrap_nts(n, w, classes, cfg);
}

const char* model_name(Model m) { return m == Model::Polylog ? "polylog" : "poly"; }

Model parse_model(std::string_view name) {
  if (name == "polylog") return Model::Polylog;
  if (name == "poly") return Model::Poly;
  throw InvalidArgument("unknown model \"" + std::string(name) + "\"");
}

double model_value(Model m, const std::array<double, 2>& p, double n_w) {
  if (m == Model::Polylog) return p[0] * std::pow(std::log2(n_w), p[1]);
  return p[0] * (std::pow(n_w, p[1]) - 1.0);
}

std::array<double, 2> model_gradient(Model m, const std::array<double, 2>& p, double n_w) {
  if (m == Model::Polylog) {
    const double l = std::log2(n_w);
    const double lp = std::pow(l, p[1]);
    return {lp, l > 0 ? p[0] * lp * std::log(l) : 0.0};
  }
  const double np = std::pow(n_w, p[1]);
  return {np - 1.0, p[0] * np * std::log(n_w)};
}

double FitResult::exponent_se() const { return std::sqrt(std::max(0.0, cov[1][1])); }

namespace {

double weighted_rss(std::span<const ScalingPoint> pts, Model m, const std::array<double, 2>& p) {
  double s = 0.0;
  for (const auto& pt : pts) {
    const double r = (pt.y - model_value(m, p, pt.n_w)) / pt.sigma;
    s += r * r;
  }
  return s;
}

// Normal matrix J^T J and gradient J^T r with residual r = (y - m)/sigma.
void normal_equations(std::span<const ScalingPoint> pts, Model m, const std::array<double, 2>& p,
                      std::array<std::array<double, 2>, 2>& a, std::array<double, 2>& g) {
  a = {};
  g = {};
  for (const auto& pt : pts) {
    const auto d = model_gradient(m, p, pt.n_w);
    const double j0 = d[0] / pt.sigma;
    const double j1 = d[1] / pt.sigma;
    const double r = (pt.y - model_value(m, p, pt.n_w)) / pt.sigma;
    a[0][0] += j0 * j0;
    a[0][1] += j0 * j1;
    a[1][1] += j1 * j1;
    g[0] += j0 * r;
    g[1] += j1 * r;
  }
  a[1][0] = a[0][1];
}

// Inverse after scaling to unit diagonal, so badly scaled parameters do not
// look singular. Fails when the scaled determinant is negligible.
bool invert2(const std::array<std::array<double, 2>, 2>& a, std::array<std::array<double, 2>, 2>& inv) {
  if (!(a[0][0] > 0.0) || !(a[1][1] > 0.0) || !std::isfinite(a[0][0]) || !std::isfinite(a[1][1])) return false;
  const double s0 = std::sqrt(a[0][0]);
  const double s1 = std::sqrt(a[1][1]);
  const double r = a[0][1] / (s0 * s1);
  const double det = 1.0 - r * r;
  if (!(det > 1e-14) || !std::isfinite(r)) return false;
  inv = {{{1.0 / (det * a[0][0]), -r / (det * s0 * s1)}, {-r / (det * s0 * s1), 1.0 / (det * a[1][1])}}};
  return true;
}

FitResult run_lm(std::span<const ScalingPoint> points, Model model, std::array<double, 2> p, const FitOptions& opts) {
  FitResult fit;
  fit.model = model;
  fit.points = points.size();
  double rss = weighted_rss(points, model, p);
  double lambda = opts.lambda0;
  bool converged = false;
  std::vector<double> trace{rss};
  int it = 0;
  for (; it < opts.max_iterations && !converged; ++it) {
    std::array<std::array<double, 2>, 2> a;
    std::array<double, 2> g;
    normal_equations(points, model, p, a, g);
    while (true) {
      auto damped = a;
      damped[0][0] += lambda * a[0][0];
      damped[1][1] += lambda * a[1][1];
      std::array<std::array<double, 2>, 2> inv;
      if (!invert2(damped, inv)) {
        lambda *= 10.0;
        if (lambda > 1e30) {
          converged = true;
          break;
        }
        continue;
      }
      const std::array<double, 2> step{inv[0][0] * g[0] + inv[0][1] * g[1], inv[1][0] * g[0] + inv[1][1] * g[1]};
      const std::array<double, 2> trial{p[0] + step[0], p[1] + step[1]};
      const double step_norm = std::hypot(step[0], step[1]);
      const double trial_rss = weighted_rss(points, model, trial);
      if (std::isfinite(trial_rss) && trial_rss <= rss) {
        const double rel = (rss - trial_rss) / std::max(rss, std::numeric_limits<double>::min());
        p = trial;
        rss = trial_rss;
        trace.push_back(rss);
        lambda = std::max(lambda / 10.0, 1e-15);
        if (rel < opts.rss_tol || step_norm < opts.step_tol) converged = true;
        break;
      }
      lambda *= 10.0;
      if (step_norm < opts.step_tol || lambda > 1e30) {
        // No downhill step exists at this resolution: a minimum.
        converged = true;
        break;
      }
    }
  }
  if (!converged || !std::isfinite(p[0]) || !std::isfinite(p[1])) {
    std::ostringstream os;
    os << model_name(model) << " fit did not converge after " << it << " iterations; rss trace:";
    const std::size_t from = trace.size() > 8 ? trace.size() - 8 : 0;
    for (std::size_t k = from; k < trace.size(); ++k) os << ' ' << trace[k];
    throw NumericError(os.str());
  }
  fit.params = p;
  fit.iterations = it;
  fit.rss_weighted = rss;

  std::array<std::array<double, 2>, 2> a;
  std::array<double, 2> g;
  normal_equations(points, model, p, a, g);
  std::array<std::array<double, 2>, 2> inv{};
  if (!invert2(a, inv)) throw NumericError("singular normal matrix at the optimum");
  const double scale = rss / static_cast<double>(points.size() - 2);
  for (auto& row : inv) {
    for (double& v : row) v *= scale;
  }
  fit.cov = inv;
  return fit;
}

}  // namespace

FitResult fit_model(std::span<const ScalingPoint> points, Model model, const FitOptions& opts) {
  if (points.size() < 3) throw InvalidArgument("a fit needs at least 3 points");
  for (const auto& pt : points) {
    if (!(pt.sigma > 0.0)) throw InvalidArgument("every point needs sigma > 0");
    if (!(pt.n_w >= 2.0)) throw InvalidArgument("every point needs N_w >= 2");
  }
  const auto last = *std::max_element(points.begin(), points.end(),
                                      [](const ScalingPoint& a, const ScalingPoint& b) { return a.n_w < b.n_w; });
  const auto start_for = [&](double exponent) -> std::array<double, 2> {
    if (model == Model::Polylog) return {last.y / std::pow(std::log2(last.n_w), exponent), exponent};
    return {last.y / (std::pow(last.n_w, exponent) - 1.0), exponent};
  };

  FitResult fit;
  try {
    fit = run_lm(points, model, start_for(model == Model::Polylog ? 1.0 : 0.5), opts);
  } catch (const NumericError& primary) {
    // Fallback: deterministic restarts over the exponent; the lowest RSS wins.
    const std::vector<double> exponents = model == Model::Polylog
                                              ? std::vector<double>{0.5, 1.5, 2.0, 3.0, 4.0, 6.0}
                                              : std::vector<double>{0.05, 0.1, 0.25, 0.75, 1.0};
    std::optional<FitResult> best;
    for (double e : exponents) {
      try {
        auto f = run_lm(points, model, start_for(e), opts);
        if (!best || f.rss_weighted < best->rss_weighted) best = std::move(f);
      } catch (const NumericError&) {
      }
    }
    if (!best) throw NumericError(std::string(primary.what()) + "; restarts failed as well");
    fit = std::move(*best);
  }
  if (points.size() > 3) fit.diagnostics = diagnostics(fit, points);
  return fit;
}

Diagnostics diagnostics(const FitResult& fit, std::span<const ScalingPoint> points) {
  constexpr int k = 2;
  const auto n = static_cast<int>(points.size());
  if (n <= k + 1) throw InvalidArgument("diagnostics need more than 3 points (AICc undefined)");
  double sw = 0.0, swy = 0.0;
  for (const auto& pt : points) {
    const double wgt = 1.0 / (pt.sigma * pt.sigma);
    sw += wgt;
    swy += wgt * pt.y;
  }
  const double ybar = swy / sw;
  double rss = 0.0, tss = 0.0, ll = 0.0;
  for (const auto& pt : points) {
    const double r = (pt.y - model_value(fit.model, fit.params, pt.n_w)) / pt.sigma;
    const double t = (pt.y - ybar) / pt.sigma;
    rss += r * r;
    tss += t * t;
    ll += r * r + std::log(2.0 * std::numbers::pi * pt.sigma * pt.sigma);
  }
  Diagnostics d;
  d.log_likelihood = -0.5 * ll;
  d.r2 = tss > 0 ? 1.0 - rss / tss : (rss == 0 ? 1.0 : 0.0);
  d.adj_r2 = tss > 0 ? 1.0 - (rss / (n - k)) / (tss / (n - 1)) : d.r2;
  d.aic = -2.0 * d.log_likelihood + 2.0 * k;
  d.aicc = d.aic + 2.0 * k * (k + 1) / static_cast<double>(n - k - 1);
  d.bic = -2.0 * d.log_likelihood + k * std::log(static_cast<double>(n));
  const double se = fit.exponent_se();
  if (se > 0) {
    d.t_stat = fit.exponent() / se;
    const boost::math::students_t dist(static_cast<double>(n - k));
    d.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(d.t_stat)));
  } else {
    d.t_stat = fit.exponent() == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), fit.exponent());
    d.p_value = fit.exponent() == 0 ? 1.0 : 0.0;
  }
  return d;
}

std::vector<double> akaike_weights(std::span<const double> aic) {
  if (aic.empty()) throw InvalidArgument("no AIC values");
  const double lo = *std::min_element(aic.begin(), aic.end());
  std::vector<double> w;
  double s = 0.0;
  for (double a : aic) {
    w.push_back(std::exp(-(a - lo) / 2.0));
    s += w.back();
  }
  for (double& x : w) x /= s;
  return w;
}

std::string classify_speedup(Model preferred, double beta) {
  if (preferred == Model::Polylog) return "exponential";
  return beta < kClassicalBeta ? "polynomial" : "none";
}

SelectionReport select_model(std::span<const std::pair<FitResult, FitResult>> fits, std::span<const int> ws,
                             double threshold) {
  if (fits.size() != ws.size()) throw InvalidArgument("one w per fit pair");
  SelectionReport rep;
  rep.threshold = threshold;
  for (std::size_t k = 0; k < fits.size(); ++k) {
    const auto& [pl, po] = fits[k];
    if (!pl.diagnostics || !po.diagnostics) continue;
    SelectionEntry e;
    e.w = ws[k];
    e.polylog = pl;
    e.poly = po;
    e.delta_aic = po.diagnostics->aic - pl.diagnostics->aic;
    const std::array<double, 2> aics{pl.diagnostics->aic, po.diagnostics->aic};
    const auto wts = akaike_weights(aics);
    e.weights = {wts[0], wts[1]};
    e.preferred = e.delta_aic >= 0 ? Model::Polylog : Model::Poly;
    e.decisive = std::abs(e.delta_aic) >= threshold;
    e.speedup_class = classify_speedup(e.preferred, po.params[1]);
    rep.entries.push_back(std::move(e));
  }
  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const SelectionEntry& a, const SelectionEntry& b) { return a.w < b.w; });

  const auto& es = rep.entries;
  for (std::size_t k = 0; k < es.size() && !rep.w_c; ++k) {
    if (!es[k].decisive) continue;
    bool stable = true;
    bool confirmed = false;
    for (std::size_t j = k + 1; j < es.size(); ++j) {
      if (!es[j].decisive) continue;
      confirmed = true;
      if (es[j].preferred != es[k].preferred) stable = false;
    }
    if (stable && confirmed) rep.w_c = es[k].w;
  }
  rep.speedup_class = rep.w_c ? es.back().speedup_class : "undetermined";
  if (rep.w_c) {
    // Largest decisive w carries the stable preference.
    for (auto it = es.rbegin(); it != es.rend(); ++it) {
      if (it->decisive) {
        rep.speedup_class = it->speedup_class;
        break;
      }
    }
  }
  return rep;
}

}  // namespace simonq

#include "netdp/dp_continuous.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "netdp/indices.hpp"
#include "netdp/summation.hpp"

namespace netdp {

PrivateRanks privatize_ranks(std::span<const double> ranks, double eps_label,
                             double delta_label, RngStream& rng, NoiseMode mode) {
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (!(ranks[i] >= 0.0 && ranks[i] <= 1.0)) {
      throw std::invalid_argument("privatize_ranks: rank for node " + std::to_string(i) +
                                  " outside [0, 1]");
    }
  }
  PrivateRanks out;
  // Ranks live in [0, 1], so per-node sensitivity is 1.
  out.params = trunc_laplace_params(1.0, eps_label, delta_label);
  out.x_hat.assign(ranks.begin(), ranks.end());
  if (mode == NoiseMode::disabled) {
    return out;
  }
  for (auto& x : out.x_hat) {
    x += trunc_laplace(out.params, rng);
  }
  return out;
}

SuffStatSensitivities suffstat_sensitivities(std::int64_t n, const Interval& x_bounds,
                                             const Interval& y_bounds) {
  if (n < 2) {
    throw std::invalid_argument("suffstat_sensitivities: n must be >= 2");
  }
  const double shrink = 1.0 - 1.0 / static_cast<double>(n);
  SuffStatSensitivities s;
  s.d1 = shrink * x_bounds.width() * x_bounds.width();
  s.d2 = 2.0 * shrink * x_bounds.width() * y_bounds.width();
  return s;
}

DpSuffStatsResult dp_suff_stats(std::span<const double> x, std::span<const double> y,
                                const Interval& x_bounds, const Interval& y_bounds,
                                double eps, RngStream& rng,
                                const DpSuffStatsOptions& opts) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("dp_suff_stats: need two same-length samples, n >= 2");
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("dp_suff_stats: eps must be positive");
  }
  if (!(x_bounds.width() > 0.0) || !(y_bounds.width() > 0.0)) {
    throw std::invalid_argument("dp_suff_stats: bounds must have positive width");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= x_bounds.lo && x[i] <= x_bounds.hi)) {
      throw std::invalid_argument("dp_suff_stats: x[" + std::to_string(i) +
                                  "] outside declared bounds");
    }
    if (!(y[i] >= y_bounds.lo && y[i] <= y_bounds.hi)) {
      throw std::invalid_argument("dp_suff_stats: y[" + std::to_string(i) +
                                  "] outside declared bounds");
    }
  }

  const CenteredMoments m = centered_moments(x, y);
  const auto sens =
      suffstat_sensitivities(static_cast<std::int64_t>(x.size()), x_bounds, y_bounds);

  // Budget splits three ways (covariance, variance, intercept), hence the
  // factor 3 in each scale. Draw order is fixed so replicate streams align
  // across pairing modes.
  const double cov_sens = opts.swap_noise_pairing ? sens.d1 : sens.d2;
  const double var_sens = opts.swap_noise_pairing ? sens.d2 : sens.d1;
  double cov_noise = 0.0;
  double var_noise = 0.0;
  if (opts.noise == NoiseMode::enabled) {
    cov_noise = laplace(3.0 * cov_sens / eps, rng);
    var_noise = laplace(3.0 * var_sens / eps, rng);
  }

  const double nvar = m.sxx + var_noise;
  const double ncov = m.sxy + cov_noise;

  DpSuffStatsResult res;
  if (!(nvar > 0.0)) {
    res.aborted = true;
    return res;
  }
  res.beta = ncov / nvar;

  const double n = static_cast<double>(x.size());
  const double intercept_sens = y_bounds.width() / n + std::abs(res.beta) * x_bounds.width() / n;
  res.alpha = m.y_mean - res.beta * m.x_mean;
  if (opts.noise == NoiseMode::enabled) {
    res.alpha += laplace(3.0 * intercept_sens / eps, rng);
  }
  return res;
}

namespace {

std::optional<EivResult> try_eiv(double alpha_star, double beta_star,
                                 std::span<const double> x_hat, double sigma2) {
  if (x_hat.size() < 2) {
    throw std::invalid_argument("eiv_debias: need at least two observations");
  }
  if (!(sigma2 >= 0.0)) {
    throw std::invalid_argument("eiv_debias: sigma2 must be non-negative");
  }
  NeumaierSum sx;
  for (double v : x_hat) sx.add(v);
  const double mean = sx.value() / static_cast<double>(x_hat.size());
  NeumaierSum sq;
  for (double v : x_hat) {
    const double d = v - mean;
    sq.add(d * d);
  }
  const double s2 = sq.value() / static_cast<double>(x_hat.size() - 1);
  if (!(s2 - sigma2 >= 1e-9 * s2)) {
    return std::nullopt;  // attenuation denominator is numerically gone
  }
  EivResult res;
  if (sigma2 == 0.0) {
    // Identity correction; keep it bitwise exact for the disabled-noise path.
    res.beta_tilde = beta_star;
    res.alpha_tilde = alpha_star;
    return res;
  }
  res.beta_tilde = beta_star * s2 / (s2 - sigma2);
  // alpha_star already equals (mean of y) - beta_star * (mean of x_hat) plus
  // its calibrated noise, so re-centering needs only the slope delta. Using
  // the released intercept instead of the raw y mean keeps this
  // post-processing of private output.
  res.alpha_tilde = alpha_star + (beta_star - res.beta_tilde) * mean;
  return res;
}

}  // namespace

EivResult eiv_debias(double alpha_star, double beta_star, std::span<const double> x_hat,
                     double sigma2) {
  auto res = try_eiv(alpha_star, beta_star, x_hat, sigma2);
  if (!res.has_value()) {
    throw std::runtime_error(
        "eiv_debias: degenerate attenuation, sample variance does not exceed the "
        "mechanism variance");
  }
  return *res;
}

MafrRelease release_mafr(const LabeledGraph& g, const PrivacyBudget& budget,
                         RngStream& rng, const MafrReleaseOptions& opts) {
  budget.validate_continuous();
  if (!(opts.interval.lo >= 0.0 && opts.interval.lo < opts.interval.hi &&
        opts.interval.hi <= 1.0)) {
    throw std::invalid_argument("release_mafr: interval must satisfy 0 <= lo < hi <= 1");
  }

  MafrRelease rel;
  rel.budget = budget;

  const PrivateRanks priv = privatize_ranks(g.continuous_labels(), budget.eps_label,
                                            budget.delta_label, rng, opts.noise);
  rel.bound = priv.params.bound;
  rel.sigma2 = (opts.noise == NoiseMode::enabled) ? priv.params.variance : 0.0;

  // AFR recomputed from the noised ranks; isolated nodes contribute 0,
  // which the value box below still covers.
  const std::vector<double> y_hat = neighbor_mean(g, priv.x_hat);
  const Interval box{-priv.params.bound, 1.0 + priv.params.bound};

  DpSuffStatsOptions ss_opts;
  ss_opts.noise = opts.noise;
  ss_opts.swap_noise_pairing = opts.swap_noise_pairing;
  const DpSuffStatsResult fit =
      dp_suff_stats(priv.x_hat, y_hat, box, box, budget.eps_edge, rng, ss_opts);
  if (fit.aborted) {
    rel.aborted = true;
    rel.reason = MafrAbort::suffstats_nonpositive_variance;
    return rel;
  }
  rel.alpha_star = fit.alpha;
  rel.beta_star = fit.beta;

  const auto corrected = try_eiv(fit.alpha, fit.beta, priv.x_hat, rel.sigma2);
  if (!corrected.has_value()) {
    rel.aborted = true;
    rel.reason = MafrAbort::degenerate_attenuation;
    return rel;
  }
  rel.alpha_tilde = corrected->alpha_tilde;
  rel.beta_tilde = corrected->beta_tilde;
  rel.mafr_value = mafr(rel.alpha_tilde, rel.beta_tilde, opts.interval.lo, opts.interval.hi);
  return rel;
}

}  // namespace netdp

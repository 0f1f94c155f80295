#pragma once

#include <limits>
#include <span>
#include <vector>

#include "netdp/graph.hpp"
#include "netdp/noise.hpp"

namespace netdp {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

struct PrivateRanks {
  std::vector<double> x_hat;  // rank + truncated-Laplace noise, in [-A, 1+A]
  TruncLaplaceParams params;
};

// Label mechanism of the continuous path: per-node truncated Laplace with
// sensitivity 1 (ranks live in [0, 1]).
PrivateRanks privatize_ranks(std::span<const double> ranks, double eps_label,
                             double delta_label, RngStream& rng,
                             NoiseMode mode = NoiseMode::enabled);

struct SuffStatSensitivities {
  double d1 = 0.0;  // nvar:  (1 - 1/n) (b - a)^2
  double d2 = 0.0;  // ncov:  2 (1 - 1/n) (b - a) (b' - a')
};
SuffStatSensitivities suffstat_sensitivities(std::int64_t n, const Interval& x_bounds,
                                             const Interval& y_bounds);

struct DpSuffStatsOptions {
  NoiseMode noise = NoiseMode::enabled;
  // Default pairing matches each statistic with its own sensitivity (ncov
  // noise at scale 3*d2/eps, nvar noise at 3*d1/eps). The swapped variant
  // is kept behind this switch for comparison runs.
  bool swap_noise_pairing = false;
};

struct DpSuffStatsResult {
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  bool aborted = false;  // noised variance was <= 0
};

// Noisy-statistics regression of y on x under the given per-release budget.
// Each of the three noise draws runs at eps/3 (hence the factor 3 in every
// scale). Inputs must lie inside the declared bounds.
DpSuffStatsResult dp_suff_stats(std::span<const double> x, std::span<const double> y,
                                const Interval& x_bounds, const Interval& y_bounds,
                                double eps, RngStream& rng,
                                const DpSuffStatsOptions& opts = {});

struct EivResult {
  double alpha_tilde = 0.0;
  double beta_tilde = 0.0;
};

// Errors-in-variables correction for the known measurement variance sigma2
// injected into x: beta_tilde = beta_star * s2 / (s2 - sigma2) with s2 the
// sample variance of x_hat, and alpha_tilde re-centered through the noised
// sample mean. Throws on degenerate attenuation (s2 - sigma2 < 1e-9 * s2).
EivResult eiv_debias(double alpha_star, double beta_star,
                     std::span<const double> x_hat, double sigma2);

enum class MafrAbort { none, suffstats_nonpositive_variance, degenerate_attenuation };

struct MafrReleaseOptions {
  Interval interval{0.0, 0.25};
  NoiseMode noise = NoiseMode::enabled;
  bool swap_noise_pairing = false;
};

struct MafrRelease {
  double alpha_star = std::numeric_limits<double>::quiet_NaN();
  double beta_star = std::numeric_limits<double>::quiet_NaN();
  double alpha_tilde = std::numeric_limits<double>::quiet_NaN();
  double beta_tilde = std::numeric_limits<double>::quiet_NaN();
  double mafr_value = std::numeric_limits<double>::quiet_NaN();
  double sigma2 = 0.0;  // measurement variance used by the correction
  double bound = 0.0;   // truncation half-width A of the label mechanism
  PrivacyBudget budget;
  bool aborted = false;
  MafrAbort reason = MafrAbort::none;
};

// Full continuous release: privatize ranks, recompute AFR from the noised
// ranks, DP regression at eps_edge on bounds [-A, 1+A]^2, EIV correction,
// then the interval mean. Requires continuous labels on the graph.
MafrRelease release_mafr(const LabeledGraph& g, const PrivacyBudget& budget,
                         RngStream& rng, const MafrReleaseOptions& opts = {});

}  // namespace netdp

#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>

#include "netdp/graph.hpp"
#include "netdp/noise.hpp"

namespace netdp {

// Inverse-probability debiasing of randomized-response output.
// E[w_i | labels] = 1{l_i = a} and E[rho_tilde_i | graph, labels] = rho_i.
inline double membership_weight(bool labeled_a, double p) {
  return ((labeled_a ? 1.0 : 0.0) - p) / (1.0 - 2.0 * p);
}
inline double debias_share(double rho_hat, double p) {
  return (rho_hat - p) / (1.0 - 2.0 * p);
}

struct DebiasedNodeStats {
  std::vector<double> w;          // membership weights
  std::vector<double> rho_hat;    // neighborhood b-shares under private labels
  std::vector<double> rho_tilde;  // debiased shares
  double flip_prob = 0.0;
};

// Per-node statistics from privatized labels. The optional cell selection
// controls the share denominators (within_cell restricts them to members);
// vectors stay indexed by global node id either way.
DebiasedNodeStats debias_node_stats(const LabeledGraph& g, const PrivateLabels& priv);
DebiasedNodeStats debias_node_stats(const LabeledGraph& g, const PrivateLabels& priv,
                                    const CellSelection& cell);

struct HajekResult {
  double s0 = 0.0;     // sum of w_i, estimates #A
  double s1 = 0.0;     // sum of w_i * rho_tilde_i, estimates sum of rho over A
  double ratio = 0.0;  // s1 / s0, NaN when aborted
  bool aborted = false;  // s0 <= 0: the ratio is undefined, release must abort
};

HajekResult hajek(const DebiasedNodeStats& stats);
HajekResult hajek(const DebiasedNodeStats& stats, std::span<const std::int32_t> members);

// Laplace scale for the ratio: single-edge sensitivity of S1 is
// 2(1-p)/(1-2p)^2 (a toggle touches only the two endpoint shares), S0 is
// edge-invariant, so the ratio's scale divides by the realized S0.
double binary_noise_scale(double flip_prob, double eps_edge, double s0);

struct BinaryReleaseOptions {
  std::optional<std::string> cell_id;
  CellMode cell_mode = CellMode::ego_to_all;
  // Off by default: the raw release is unbiased and unbounded, and clamping
  // to [0, 1] trades bias for interpretability. Post-processing keeps DP.
  bool clamp = false;
  NoiseMode noise = NoiseMode::enabled;
};

struct BinaryDpRelease {
  double value = std::numeric_limits<double>::quiet_NaN();
  double s0 = 0.0;
  double s1 = 0.0;
  double noise_scale = std::numeric_limits<double>::quiet_NaN();
  double flip_prob = 0.0;
  PrivacyBudget budget;
  bool aborted = false;  // S0 <= 0; budget is considered spent regardless
  bool clamped = false;
};

// End-to-end binary release: randomized response at eps_label, debias,
// Hajek ratio, plus Laplace noise at scale
//   2(1-p) / ((1-2p)^2 * eps_edge * S0),
// calibrated to the single-edge sensitivity of S1.
BinaryDpRelease release_binary(const LabeledGraph& g, const PrivacyBudget& budget,
                               RngStream& rng, const BinaryReleaseOptions& opts = {});

}  // namespace netdp

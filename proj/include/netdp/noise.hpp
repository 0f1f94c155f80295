#pragma once

#include <span>
#include <vector>

#include "netdp/graph.hpp"
#include "netdp/rng.hpp"

namespace netdp {

// Two-stage budget: a label mechanism running at (eps_label, delta_label)
// followed by an edge mechanism at (eps_edge, 0). The sequence composes to
// (eps_label + eps_edge, delta_label)-DP under edge adjacency, since the
// second stage adds no delta.
struct PrivacyBudget {
  double eps_label = 0.0;
  double eps_edge = 0.0;
  double delta_label = 0.0;

  double total_eps() const { return eps_label + eps_edge; }

  // Binary path: delta_label must be exactly 0.
  void validate_binary() const;
  // Continuous path: delta_label must lie in (0, 1).
  void validate_continuous() const;
};

// When disabled, every mechanism becomes the identity (no flips, zero
// noise). Releases produced this way are NOT private; the mode exists so
// tests can compare the pipeline against closed-form targets bit for bit.
enum class NoiseMode { enabled, disabled };

// p = 1 / (1 + e^eps). Rejects eps < 1e-6: below that the debiasing factor
// 1/(1-2p) explodes past any useful range and the release is pure noise.
double flip_probability(double eps_label);

struct PrivateLabels {
  std::vector<BinaryLabel> labels;
  double flip_prob = 0.0;
};

// Independent randomized response: each label flips with probability p.
PrivateLabels randomize_labels(std::span<const BinaryLabel> labels, double p,
                               RngStream& rng, NoiseMode mode = NoiseMode::enabled);

// Zero-centered Laplace draw via the inverse CDF; exactly one uniform is
// consumed per draw, which keeps replicate streams aligned.
double laplace(double scale, RngStream& rng);
double laplace_quantile(double scale, double u);

// Laplace(scale = sensitivity/eps) truncated to [-bound, bound] and
// renormalized, the (eps, delta)-DP additive mechanism for bounded inputs.
struct TruncLaplaceParams {
  double sensitivity = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  double scale = 0.0;       // lambda = sensitivity / eps
  double bound = 0.0;       // A = lambda * ln(1 + (e^eps - 1) / (2 delta))
  double normalizer = 0.0;  // B with density B * exp(-|x|/lambda) on [-A, A]
  double variance = 0.0;    // closed-form second moment
};

TruncLaplaceParams trunc_laplace_params(double sensitivity, double eps, double delta);
double trunc_laplace(const TruncLaplaceParams& params, RngStream& rng);
double trunc_laplace_quantile(const TruncLaplaceParams& params, double u);

}  // namespace netdp

#include "netdp/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace netdp {

namespace {
constexpr double kMinEpsLabel = 1e-6;
}

void PrivacyBudget::validate_binary() const {
  if (!(eps_label > 0.0) || !(eps_edge > 0.0)) {
    throw std::invalid_argument("binary budget requires eps_label > 0 and eps_edge > 0");
  }
  if (delta_label != 0.0) {
    throw std::invalid_argument("binary path is pure-eps: delta_label must be 0");
  }
}

void PrivacyBudget::validate_continuous() const {
  if (!(eps_label > 0.0) || !(eps_edge > 0.0)) {
    throw std::invalid_argument(
        "continuous budget requires eps_label > 0 and eps_edge > 0");
  }
  if (!(delta_label > 0.0 && delta_label < 1.0)) {
    throw std::invalid_argument("continuous path requires delta_label in (0, 1)");
  }
}

double flip_probability(double eps_label) {
  if (!(eps_label >= kMinEpsLabel)) {
    throw std::invalid_argument(
        "flip_probability: eps_label must be >= 1e-6; smaller budgets push the "
        "flip rate so close to 1/2 that debiasing is numerically meaningless");
  }
  // 1 / (1 + e^eps); exp may overflow to inf for huge eps, giving p = 0,
  // the exact no-flip limit.
  return 1.0 / (1.0 + std::exp(eps_label));
}

PrivateLabels randomize_labels(std::span<const BinaryLabel> labels, double p,
                               RngStream& rng, NoiseMode mode) {
  if (!(p >= 0.0 && p < 0.5)) {
    throw std::invalid_argument("randomize_labels: p must lie in [0, 1/2)");
  }
  PrivateLabels out;
  out.flip_prob = p;
  out.labels.assign(labels.begin(), labels.end());
  if (mode == NoiseMode::disabled) {
    return out;
  }
  for (auto& l : out.labels) {
    if (rng.bernoulli(p)) {
      l = (l == BinaryLabel::a) ? BinaryLabel::b : BinaryLabel::a;
    }
  }
  return out;
}

double laplace_quantile(double scale, double u) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("laplace: scale must be positive and finite");
  }
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("laplace_quantile: u must lie in (0, 1)");
  }
  const double v = u - 0.5;
  const double mag = -std::log1p(-2.0 * std::abs(v));
  return (v >= 0.0 ? mag : -mag) * scale;
}

double laplace(double scale, RngStream& rng) {
  return laplace_quantile(scale, rng.uniform_open());
}

TruncLaplaceParams trunc_laplace_params(double sensitivity, double eps, double delta) {
  if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) {
    throw std::invalid_argument("trunc_laplace_params: sensitivity must be positive");
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("trunc_laplace_params: eps must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("trunc_laplace_params: delta must lie in (0, 1)");
  }
  TruncLaplaceParams tp;
  tp.sensitivity = sensitivity;
  tp.eps = eps;
  tp.delta = delta;
  tp.scale = sensitivity / eps;
  // t = A / lambda = ln(1 + (e^eps - 1) / (2 delta)), evaluated without
  // forming e^eps - 1 and the log argument separately losing precision.
  const double ratio = std::expm1(eps) / (2.0 * delta);
  const double t = std::log1p(ratio);
  tp.bound = tp.scale * t;
  const double em = 1.0 / (1.0 + ratio);  // e^{-t}, exact complement of the mass
  const double q = ratio / (1.0 + ratio);  // 1 - e^{-t}
  tp.normalizer = 1.0 / (2.0 * tp.scale * q);
  tp.variance = tp.scale * tp.scale * (2.0 - em * (t * t + 2.0 * t + 2.0)) / q;
  return tp;
}

double trunc_laplace_quantile(const TruncLaplaceParams& params, double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("trunc_laplace_quantile: u must lie in (0, 1)");
  }
  const double q = -std::expm1(-params.bound / params.scale);  // 1 - e^{-A/lambda}
  const double v = u - 0.5;
  const double mag = -params.scale * std::log1p(-2.0 * std::abs(v) * q);
  const double x = (v >= 0.0 ? mag : -mag);
  return std::clamp(x, -params.bound, params.bound);
}

double trunc_laplace(const TruncLaplaceParams& params, RngStream& rng) {
  return trunc_laplace_quantile(params, rng.uniform_open());
}

}  // namespace netdp

#include "netdp/dp_binary.hpp"

#include <cmath>
#include <stdexcept>

#include "netdp/summation.hpp"

namespace netdp {

namespace {

DebiasedNodeStats debias_impl(const LabeledGraph& g, const PrivateLabels& priv,
                              const CellSelection* cell) {
  const double p = priv.flip_prob;
  if (!(p >= 0.0 && p < 0.5)) {
    throw std::invalid_argument("debias_node_stats: flip probability must lie in [0, 1/2)");
  }
  if (static_cast<std::int32_t>(priv.labels.size()) != g.node_count()) {
    throw std::invalid_argument("debias_node_stats: label vector size mismatch");
  }
  const bool restrict_to_cell = cell != nullptr && cell->mode == CellMode::within_cell;

  DebiasedNodeStats st;
  st.flip_prob = p;
  const std::size_t n = static_cast<std::size_t>(g.node_count());
  st.w.resize(n);
  st.rho_hat.resize(n);
  st.rho_tilde.resize(n);

  for (std::int32_t i = 0; i < g.node_count(); ++i) {
    const auto nbrs = g.neighbors(i);
    const auto wts = g.edge_weights(i);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const std::int32_t j = nbrs[k];
      if (restrict_to_cell && !cell->in_cell[static_cast<std::size_t>(j)]) continue;
      den += wts[k];
      if (priv.labels[static_cast<std::size_t>(j)] == BinaryLabel::b) num += wts[k];
    }
    const double rho_hat = den > 0.0 ? num / den : 0.0;
    const std::size_t ii = static_cast<std::size_t>(i);
    st.rho_hat[ii] = rho_hat;
    st.rho_tilde[ii] = debias_share(rho_hat, p);
    st.w[ii] = membership_weight(priv.labels[ii] == BinaryLabel::a, p);
  }
  return st;
}

HajekResult hajek_over(const DebiasedNodeStats& stats,
                       std::span<const std::int32_t> members) {
  NeumaierSum s0, s1;
  for (std::int32_t i : members) {
    const std::size_t ii = static_cast<std::size_t>(i);
    s0.add(stats.w[ii]);
    s1.add(stats.w[ii] * stats.rho_tilde[ii]);
  }
  HajekResult res;
  res.s0 = s0.value();
  res.s1 = s1.value();
  if (res.s0 <= 0.0) {
    res.aborted = true;
    res.ratio = std::numeric_limits<double>::quiet_NaN();
  } else {
    res.ratio = res.s1 / res.s0;
  }
  return res;
}

}  // namespace

DebiasedNodeStats debias_node_stats(const LabeledGraph& g, const PrivateLabels& priv) {
  return debias_impl(g, priv, nullptr);
}

DebiasedNodeStats debias_node_stats(const LabeledGraph& g, const PrivateLabels& priv,
                                    const CellSelection& cell) {
  return debias_impl(g, priv, &cell);
}

HajekResult hajek(const DebiasedNodeStats& stats) {
  std::vector<std::int32_t> all(stats.w.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<std::int32_t>(i);
  return hajek_over(stats, all);
}

HajekResult hajek(const DebiasedNodeStats& stats, std::span<const std::int32_t> members) {
  return hajek_over(stats, members);
}

double binary_noise_scale(double flip_prob, double eps_edge, double s0) {
  if (!(flip_prob >= 0.0 && flip_prob < 0.5)) {
    throw std::invalid_argument("binary_noise_scale: flip probability must lie in [0, 1/2)");
  }
  if (!(eps_edge > 0.0)) {
    throw std::invalid_argument("binary_noise_scale: eps_edge must be positive");
  }
  if (!(s0 > 0.0)) {
    throw std::invalid_argument("binary_noise_scale: needs a positive estimated group size");
  }
  const double one_minus_2p = 1.0 - 2.0 * flip_prob;
  return 2.0 * (1.0 - flip_prob) / (one_minus_2p * one_minus_2p * eps_edge * s0);
}

BinaryDpRelease release_binary(const LabeledGraph& g, const PrivacyBudget& budget,
                               RngStream& rng, const BinaryReleaseOptions& opts) {
  budget.validate_binary();
  // Disabled noise runs the noiseless limit of the same pipeline: p = 0
  // keeps the labels, makes the debias step the identity, and drops the
  // Laplace draw, so the release equals the plain index.
  const double p =
      opts.noise == NoiseMode::enabled ? flip_probability(budget.eps_label) : 0.0;

  BinaryDpRelease rel;
  rel.budget = budget;
  rel.flip_prob = p;

  const PrivateLabels priv = randomize_labels(g.binary_labels(), p, rng, opts.noise);

  HajekResult hj;
  if (opts.cell_id.has_value()) {
    const CellSelection cell = resolve_cell(g, *opts.cell_id, opts.cell_mode);
    const DebiasedNodeStats st = debias_node_stats(g, priv, cell);
    hj = hajek(st, cell.members);
  } else {
    const DebiasedNodeStats st = debias_node_stats(g, priv);
    hj = hajek(st);
  }

  rel.s0 = hj.s0;
  rel.s1 = hj.s1;
  if (hj.aborted) {
    // The estimated group size came out non-positive; the budget is spent
    // but no value can be published.
    rel.aborted = true;
    return rel;
  }

  rel.noise_scale = binary_noise_scale(p, budget.eps_edge, hj.s0);

  double value = hj.ratio;
  if (opts.noise == NoiseMode::enabled) {
    value += laplace(rel.noise_scale, rng);
  }
  if (opts.clamp) {
    const double clamped = std::min(1.0, std::max(0.0, value));
    rel.clamped = (clamped != value);
    value = clamped;
  }
  rel.value = value;
  return rel;
}

}  // namespace netdp

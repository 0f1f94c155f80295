#include "netdp/indices.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "netdp/summation.hpp"

namespace netdp {

namespace {

// Share of i's neighborhood labeled b, optionally restricting both numerator
// and denominator to cell members. Returns 0 on zero (restricted) degree and
// reports that through *isolated.
double b_share(const LabeledGraph& g, std::span<const BinaryLabel> labels,
               std::int32_t i, const CellSelection* cell, bool* isolated) {
  const auto nbrs = g.neighbors(i);
  const auto wts = g.edge_weights(i);
  const bool restrict_to_cell = cell != nullptr && cell->mode == CellMode::within_cell;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < nbrs.size(); ++k) {
    const std::int32_t j = nbrs[k];
    if (restrict_to_cell && !cell->in_cell[static_cast<std::size_t>(j)]) continue;
    den += wts[k];
    if (labels[static_cast<std::size_t>(j)] == BinaryLabel::b) num += wts[k];
  }
  if (isolated != nullptr) *isolated = (den == 0.0);
  return den > 0.0 ? num / den : 0.0;
}

ConnectednessResult connectedness_impl(const LabeledGraph& g, const CellSelection* cell) {
  const auto labels = g.binary_labels();
  ConnectednessResult res;
  NeumaierSum total;

  auto visit = [&](std::int32_t i) {
    if (labels[static_cast<std::size_t>(i)] != BinaryLabel::a) return;
    bool isolated = false;
    const double share = b_share(g, labels, i, cell, &isolated);
    res.per_node_shares.push_back(share);
    total.add(share);
    ++res.group_size;
    if (isolated) ++res.isolated_in_group;
  };

  if (cell != nullptr) {
    for (std::int32_t m : cell->members) visit(m);
  } else {
    for (std::int32_t i = 0; i < g.node_count(); ++i) visit(i);
  }

  if (res.group_size == 0) {
    throw std::invalid_argument(
        "cross_connectedness: no a-labeled nodes in the averaged set");
  }
  res.value = total.value() / static_cast<double>(res.group_size);
  return res;
}

}  // namespace

double rho(const LabeledGraph& g, std::int32_t i) {
  return b_share(g, g.binary_labels(), i, nullptr, nullptr);
}

ConnectednessResult cross_connectedness(const LabeledGraph& g) {
  return connectedness_impl(g, nullptr);
}

ConnectednessResult cross_connectedness(const LabeledGraph& g, const CellSelection& cell) {
  return connectedness_impl(g, &cell);
}

ConnectednessResult same_connectedness(const LabeledGraph& g) {
  ConnectednessResult cross = cross_connectedness(g);
  ConnectednessResult res;
  res.group_size = cross.group_size;
  res.isolated_in_group = cross.isolated_in_group;
  // Complement per node; an isolated member has cross-share 0, so its
  // same-share is 1 under the complement convention, keeping the identity
  // cross + same = 1 exact at the index level as well.
  res.per_node_shares.reserve(cross.per_node_shares.size());
  for (double s : cross.per_node_shares) res.per_node_shares.push_back(1.0 - s);
  res.value = 1.0 - cross.value;
  return res;
}

std::vector<double> neighbor_mean(const LabeledGraph& g, std::span<const double> values) {
  if (static_cast<std::int32_t>(values.size()) != g.node_count()) {
    throw std::invalid_argument("neighbor_mean: value vector size mismatch");
  }
  std::vector<double> out(values.size(), 0.0);
  for (std::int32_t i = 0; i < g.node_count(); ++i) {
    const auto nbrs = g.neighbors(i);
    const auto wts = g.edge_weights(i);
    const double d = g.degree(i);
    if (d <= 0.0) continue;
    double acc = 0.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      acc += wts[k] * values[static_cast<std::size_t>(nbrs[k])];
    }
    out[static_cast<std::size_t>(i)] = acc / d;
  }
  return out;
}

FriendRankProfile afr(const LabeledGraph& g, std::span<const double> ranks) {
  if (static_cast<std::int32_t>(ranks.size()) != g.node_count()) {
    throw std::invalid_argument("afr: rank vector size mismatch");
  }
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (!(ranks[i] >= 0.0 && ranks[i] <= 1.0)) {
      throw std::invalid_argument("afr: rank for node " + std::to_string(i) +
                                  " outside [0, 1]");
    }
  }
  FriendRankProfile prof;
  prof.own_rank.assign(ranks.begin(), ranks.end());
  prof.afr = neighbor_mean(g, ranks);
  return prof;
}

FriendRankProfile afr(const LabeledGraph& g) { return afr(g, g.continuous_labels()); }

CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("centered_moments: need two same-length samples, n >= 2");
  }
  const double n = static_cast<double>(x.size());
  NeumaierSum sx, sy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx.add(x[i]);
    sy.add(y[i]);
  }
  CenteredMoments m;
  m.x_mean = sx.value() / n;
  m.y_mean = sy.value() / n;
  NeumaierSum sxx, sxy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - m.x_mean;
    sxx.add(dx * dx);
    sxy.add(dx * (y[i] - m.y_mean));
  }
  m.sxx = sxx.value();
  m.sxy = sxy.value();
  return m;
}

OlsFit ols(std::span<const double> x, std::span<const double> y) {
  const CenteredMoments m = centered_moments(x, y);
  if (!(m.sxx > 0.0)) {
    throw std::invalid_argument("ols: degenerate design, x has zero variance");
  }
  OlsFit fit;
  fit.beta = m.sxy / m.sxx;
  fit.alpha = m.y_mean - fit.beta * m.x_mean;
  return fit;
}

double mafr(double alpha, double beta, double q_lo, double q_hi) {
  if (!(q_lo >= 0.0 && q_lo < q_hi && q_hi <= 1.0)) {
    throw std::invalid_argument("mafr: need 0 <= q_lo < q_hi <= 1");
  }
  // Mean of alpha + beta * q over [q_lo, q_hi].
  return alpha + beta * 0.5 * (q_lo + q_hi);
}

}  // namespace netdp

#include "netdp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "netdp/summation.hpp"

namespace netdp {
namespace oracle {

namespace {

double clampv(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// S1 recomputed from a dense weight matrix at fixed privatized labels.
double s1_from_matrix(const std::vector<double>& w_matrix, std::int32_t n,
                      std::span<const BinaryLabel> labels, double p) {
  const double denom = 1.0 - 2.0 * p;
  double s1 = 0.0;
  for (std::int32_t i = 0; i < n; ++i) {
    double deg = 0.0;
    double bsum = 0.0;
    for (std::int32_t j = 0; j < n; ++j) {
      const double wij = w_matrix[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                                  static_cast<std::size_t>(j)];
      deg += wij;
      if (labels[static_cast<std::size_t>(j)] == BinaryLabel::b) bsum += wij;
    }
    const double rho_hat = deg > 0.0 ? bsum / deg : 0.0;
    const double rho_tilde = (rho_hat - p) / denom;
    const double wi =
        ((labels[static_cast<std::size_t>(i)] == BinaryLabel::a ? 1.0 : 0.0) - p) / denom;
    s1 += wi * rho_tilde;
  }
  return s1;
}

}  // namespace

EnumerationResult enumerate_expectations(const LabeledGraph& g, double p) {
  const std::int32_t n = g.node_count();
  if (n > 14) {
    throw std::invalid_argument("enumerate_expectations: full enumeration capped at n = 14");
  }
  if (!(p >= 0.0 && p < 0.5)) {
    throw std::invalid_argument("enumerate_expectations: p must lie in [0, 0.5)");
  }
  const auto& truth = g.binary_labels();
  const double denom = 1.0 - 2.0 * p;

  std::vector<NeumaierSum> rho_acc(static_cast<std::size_t>(n));
  NeumaierSum s0_acc;
  NeumaierSum s1_acc;
  NeumaierSum mass_acc;

  std::vector<BinaryLabel> flipped(static_cast<std::size_t>(n));
  const std::uint64_t patterns = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double prob = 1.0;
    for (std::int32_t i = 0; i < n; ++i) {
      const bool flip = (mask >> i) & 1u;
      prob *= flip ? p : 1.0 - p;
      const BinaryLabel t = truth[static_cast<std::size_t>(i)];
      flipped[static_cast<std::size_t>(i)] =
          flip ? (t == BinaryLabel::a ? BinaryLabel::b : BinaryLabel::a) : t;
    }
    if (prob == 0.0) continue;

    double s0 = 0.0;
    double s1 = 0.0;
    for (std::int32_t i = 0; i < n; ++i) {
      const auto nbrs = g.neighbors(i);
      const auto wts = g.edge_weights(i);
      double deg = 0.0;
      double bsum = 0.0;
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        deg += wts[k];
        if (flipped[static_cast<std::size_t>(nbrs[k])] == BinaryLabel::b) bsum += wts[k];
      }
      const double rho_hat = deg > 0.0 ? bsum / deg : 0.0;
      const double rho_tilde = (rho_hat - p) / denom;
      const double wi =
          ((flipped[static_cast<std::size_t>(i)] == BinaryLabel::a ? 1.0 : 0.0) - p) / denom;
      rho_acc[static_cast<std::size_t>(i)].add(prob * rho_tilde);
      s0 += wi;
      s1 += wi * rho_tilde;
    }
    s0_acc.add(prob * s0);
    s1_acc.add(prob * s1);
    mass_acc.add(prob);
  }

  EnumerationResult out;
  out.expected_rho_tilde.resize(static_cast<std::size_t>(n));
  for (std::int32_t i = 0; i < n; ++i) {
    out.expected_rho_tilde[static_cast<std::size_t>(i)] =
        rho_acc[static_cast<std::size_t>(i)].value();
  }
  out.expected_s0 = s0_acc.value();
  out.expected_s1 = s1_acc.value();
  out.expected_ratio_of_means = out.expected_s1 / out.expected_s0;
  out.probability_mass = mass_acc.value();
  return out;
}

double max_edge_sensitivity(const LabeledGraph& g, std::span<const BinaryLabel> private_labels,
                            double p, double added_edge_weight) {
  const std::int32_t n = g.node_count();
  if (n > 30) {
    throw std::invalid_argument("max_edge_sensitivity: toggle search capped at n = 30");
  }
  if (private_labels.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("max_edge_sensitivity: label count mismatch");
  }
  if (!(p >= 0.0 && p < 0.5)) {
    throw std::invalid_argument("max_edge_sensitivity: p must lie in [0, 0.5)");
  }
  if (!(added_edge_weight > 0.0) || !std::isfinite(added_edge_weight)) {
    throw std::invalid_argument("max_edge_sensitivity: added_edge_weight must be positive");
  }

  std::vector<double> w(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (const Edge& e : g.edges()) {
    w[static_cast<std::size_t>(e.u) * static_cast<std::size_t>(n) +
      static_cast<std::size_t>(e.v)] = e.weight;
    w[static_cast<std::size_t>(e.v) * static_cast<std::size_t>(n) +
      static_cast<std::size_t>(e.u)] = e.weight;
  }

  const double base = s1_from_matrix(w, n, private_labels, p);
  double worst = 0.0;
  for (std::int32_t u = 0; u + 1 < n; ++u) {
    for (std::int32_t v = u + 1; v < n; ++v) {
      const std::size_t uv = static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
                             static_cast<std::size_t>(v);
      const std::size_t vu = static_cast<std::size_t>(v) * static_cast<std::size_t>(n) +
                             static_cast<std::size_t>(u);
      const double old = w[uv];
      const double toggled = old > 0.0 ? 0.0 : added_edge_weight;
      w[uv] = toggled;
      w[vu] = toggled;
      worst = std::max(worst, std::abs(s1_from_matrix(w, n, private_labels, p) - base));
      w[uv] = old;
      w[vu] = old;
    }
  }
  return worst;
}

double edge_sensitivity_bound(double p) {
  if (!(p >= 0.0 && p < 0.5)) {
    throw std::invalid_argument("edge_sensitivity_bound: p must lie in [0, 0.5)");
  }
  const double denom = 1.0 - 2.0 * p;
  return 2.0 * (1.0 - p) / (denom * denom);
}

double naive_cross_connectedness(const LabeledGraph& g) {
  const auto& labels = g.binary_labels();
  double total = 0.0;
  std::int64_t count = 0;
  for (std::int32_t i = 0; i < g.node_count(); ++i) {
    if (labels[static_cast<std::size_t>(i)] != BinaryLabel::a) continue;
    const auto nbrs = g.neighbors(i);
    const auto wts = g.edge_weights(i);
    double deg = 0.0;
    double bsum = 0.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      deg += wts[k];
      if (labels[static_cast<std::size_t>(nbrs[k])] == BinaryLabel::b) bsum += wts[k];
    }
    total += deg > 0.0 ? bsum / deg : 0.0;
    ++count;
  }
  if (count == 0) {
    throw std::invalid_argument("naive_cross_connectedness: no a-labeled nodes");
  }
  return total / static_cast<double>(count);
}

std::vector<double> naive_afr(const LabeledGraph& g, std::span<const double> ranks) {
  if (ranks.size() != static_cast<std::size_t>(g.node_count())) {
    throw std::invalid_argument("naive_afr: rank count mismatch");
  }
  std::vector<double> out(ranks.size(), 0.0);
  for (std::int32_t i = 0; i < g.node_count(); ++i) {
    const auto nbrs = g.neighbors(i);
    const auto wts = g.edge_weights(i);
    double deg = 0.0;
    double sum = 0.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      deg += wts[k];
      sum += wts[k] * ranks[static_cast<std::size_t>(nbrs[k])];
    }
    out[static_cast<std::size_t>(i)] = deg > 0.0 ? sum / deg : 0.0;
  }
  return out;
}

NaiveOls naive_ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("naive_ols: need two same-length samples");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (!(det > 0.0)) throw std::invalid_argument("naive_ols: degenerate design");
  NaiveOls fit;
  fit.beta = (n * sxy - sx * sy) / det;
  fit.alpha = (sy - fit.beta * sx) / n;
  return fit;
}

namespace {

struct RawSums {
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
};

RawSums raw_sums(std::span<const double> x, std::span<const double> y) {
  RawSums s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s.sx += x[i];
    s.sy += y[i];
    s.sxx += x[i] * x[i];
    s.sxy += x[i] * y[i];
  }
  return s;
}

// Centered second moments from raw sums; the modules under test use a
// two-pass route instead.
double nvar_of(const RawSums& s, double n) { return s.sxx - s.sx * s.sx / n; }
double ncov_of(const RawSums& s, double n) { return s.sxy - s.sx * s.sy / n; }

}  // namespace

SuffStatSearchResult suffstat_perturbation_search(std::span<const double> x,
                                                  std::span<const double> y,
                                                  const ValueBounds& x_bounds,
                                                  const ValueBounds& y_bounds) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("suffstat_perturbation_search: need two same-length samples");
  }
  if (!(x_bounds.lo < x_bounds.hi) || !(y_bounds.lo < y_bounds.hi)) {
    throw std::invalid_argument("suffstat_perturbation_search: bounds must have positive width");
  }
  const std::size_t m = x.size();
  const double n = static_cast<double>(m);
  const RawSums base = raw_sums(x, y);
  const double base_nvar = nvar_of(base, n);
  const double base_ncov = ncov_of(base, n);

  SuffStatSearchResult out;
  auto consider = [&](const RawSums& s) {
    out.max_dnvar = std::max(out.max_dnvar, std::abs(nvar_of(s, n) - base_nvar));
    out.max_dncov = std::max(out.max_dncov, std::abs(ncov_of(s, n) - base_ncov));
  };

  const double x_corners[2] = {x_bounds.lo, x_bounds.hi};
  const double y_corners[2] = {y_bounds.lo, y_bounds.hi};

  // One full row moves. nvar is quadratic in the row's x, so besides the two
  // corners the interior minimizer matters; ncov is bilinear, corners only.
  for (std::size_t k = 0; k < m; ++k) {
    RawSums removed = base;
    removed.sx -= x[k];
    removed.sy -= y[k];
    removed.sxx -= x[k] * x[k];
    removed.sxy -= x[k] * y[k];
    const double x_interior = clampv(removed.sx / (n - 1.0), x_bounds.lo, x_bounds.hi);
    const double x_cands[3] = {x_corners[0], x_corners[1], x_interior};
    for (double xv : x_cands) {
      for (double yv : y_corners) {
        RawSums s = removed;
        s.sx += xv;
        s.sy += yv;
        s.sxx += xv * xv;
        s.sxy += xv * yv;
        consider(s);
      }
    }
  }

  // Two rows move in y only; x is untouched so only ncov can change, and it
  // is linear in each y, so corners are exact.
  for (std::size_t u = 0; u + 1 < m; ++u) {
    for (std::size_t v = u + 1; v < m; ++v) {
      RawSums removed = base;
      removed.sy -= y[u] + y[v];
      removed.sxy -= x[u] * y[u] + x[v] * y[v];
      for (double yu : y_corners) {
        for (double yv : y_corners) {
          RawSums s = removed;
          s.sy += yu + yv;
          s.sxy += x[u] * yu + x[v] * yv;
          consider(s);
        }
      }
    }
  }
  return out;
}

}  // namespace oracle
}  // namespace netdp

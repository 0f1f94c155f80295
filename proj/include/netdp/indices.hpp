#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netdp/graph.hpp"

namespace netdp {

// Share of i's (weighted) neighborhood labeled b: sum_{j in N(i), l_j = b}
// e_ij / d_i, and 0 when d_i = 0. Requires binary labels.
double rho(const LabeledGraph& g, std::int32_t i);

struct ConnectednessResult {
  double value = 0.0;
  std::int64_t group_size = 0;        // #A, or #(A intersect cell)
  std::int64_t isolated_in_group = 0;  // members with zero (restricted) degree
  std::vector<double> per_node_shares;  // aligned with the averaged member set
};

// Cross-type connectedness C^{A->B}: mean of rho_i over nodes labeled a.
// Errors when the averaged group is empty.
ConnectednessResult cross_connectedness(const LabeledGraph& g);
ConnectednessResult cross_connectedness(const LabeledGraph& g, const CellSelection& cell);

// Same-type counterpart; value is exactly 1 - cross by the complement
// identity (isolated members take same-share 1 under that convention).
ConnectednessResult same_connectedness(const LabeledGraph& g);

// Weighted mean of `values` over each node's neighborhood, 0 for isolated
// nodes. No range validation: the private pipeline feeds noised values.
std::vector<double> neighbor_mean(const LabeledGraph& g, std::span<const double> values);

struct FriendRankProfile {
  std::vector<double> own_rank;
  std::vector<double> afr;
};

// Average friend rank per node from ranks in [0, 1].
FriendRankProfile afr(const LabeledGraph& g, std::span<const double> ranks);
FriendRankProfile afr(const LabeledGraph& g);  // uses stored continuous labels

struct OlsFit {
  double alpha = 0.0;
  double beta = 0.0;
};

// Simple least squares via two-pass centered moments; errors on degenerate
// design (zero variance in x).
OlsFit ols(std::span<const double> x, std::span<const double> y);

// Shared centered-moment kernel. dp_suff_stats uses the identical
// accumulation so the noise-disabled release matches ols() bit for bit.
struct CenteredMoments {
  double x_mean = 0.0;
  double y_mean = 0.0;
  double sxx = 0.0;  // sum (x - x_mean)^2
  double sxy = 0.0;  // sum (x - x_mean)(y - y_mean)
};
CenteredMoments centered_moments(std::span<const double> x, std::span<const double> y);

// Mean of the fitted line over rank interval [q_lo, q_hi]:
// alpha + beta * (q_lo + q_hi) / 2.
double mafr(double alpha, double beta, double q_lo, double q_hi);
inline double mafr(const OlsFit& fit, double q_lo, double q_hi) {
  return mafr(fit.alpha, fit.beta, q_lo, q_hi);
}

}  // namespace netdp

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netdp/graph.hpp"

namespace netdp {
namespace oracle {

// Independent reference implementations used to pin down expected values in
// tests. Everything here is deliberately brute force (dense matrices,
// exhaustive enumeration, full recomputation) and depends on the graph type
// only, never on the estimator modules it checks.

struct EnumerationResult {
  std::vector<double> expected_rho_tilde;  // per node
  double expected_s0 = 0.0;
  double expected_s1 = 0.0;
  double expected_ratio_of_means = 0.0;  // E[S1] / E[S0]
  double probability_mass = 0.0;         // should be 1 up to rounding
};

// Exact expectations over all 2^n randomized-response flip patterns,
// accumulated with compensated summation. Guarded to n <= 14.
EnumerationResult enumerate_expectations(const LabeledGraph& g, double p);

// Max |S1(E) - S1(E')| over all single-edge toggles at fixed privatized
// labels. Removals drop the existing (weighted) edge; additions insert one
// of weight added_edge_weight. Every toggled S1 is recomputed from scratch.
// Guarded to n <= 30.
double max_edge_sensitivity(const LabeledGraph& g,
                            std::span<const BinaryLabel> private_labels, double p,
                            double added_edge_weight = 1.0);

// Closed-form bound the search is compared against.
double edge_sensitivity_bound(double p);

// Naive double-loop recomputations of the non-private indices.
double naive_cross_connectedness(const LabeledGraph& g);
std::vector<double> naive_afr(const LabeledGraph& g, std::span<const double> ranks);

struct NaiveOls {
  double alpha = 0.0;
  double beta = 0.0;
};
// Normal-equations solve on raw sums; a different numerical route than the
// two-pass centered fit it validates.
NaiveOls naive_ols(std::span<const double> x, std::span<const double> y);

struct ValueBounds {
  double lo = 0.0;
  double hi = 0.0;
};

struct SuffStatSearchResult {
  double max_dnvar = 0.0;
  double max_dncov = 0.0;
};

// Corner-grid search over datasets adjacent to (x, y). Two models, matching
// the two ways at most two scalar entries of the data matrix can move:
//   one_row:    (x_k, y_k) -> arbitrary values in bounds, every k
//   two_y_rows: (y_u, y_v) -> arbitrary values, x fixed, every pair (u, v)
// Reports the largest |delta nvar| and |delta ncov| seen across both.
SuffStatSearchResult suffstat_perturbation_search(std::span<const double> x,
                                                  std::span<const double> y,
                                                  const ValueBounds& x_bounds,
                                                  const ValueBounds& y_bounds);

}  // namespace oracle
}  // namespace netdp

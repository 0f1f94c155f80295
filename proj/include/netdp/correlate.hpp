#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netdp/graph.hpp"
#include "netdp/noise.hpp"

namespace netdp {

// Panel study: one binary release per village per noise replicate per
// budget, then the distribution of cross-village correlations between true
// and released values. Mirrors the re-release pattern for household survey
// networks.

struct VillagePanelSpec {
  int villages = 46;
  int n_min = 100, n_max = 350;
  double deg_min = 6.0, deg_max = 13.0;
  // Group a plays the minority role; the narrow band keeps every village's
  // release noise on a comparable scale across the size range.
  double frac_min = 0.09, frac_max = 0.12;
  // p_between / p_within; lower means stronger homophily
  double ratio_min = 0.05, ratio_max = 0.5;
};

struct Village {
  std::string id;
  LabeledGraph graph;
};

std::vector<Village> synthesize_village_panel(const VillagePanelSpec& spec,
                                              std::uint64_t seed);

// Splits a labeled graph into one village per cell (induced subgraphs).
std::vector<Village> villages_from_cells(const LabeledGraph& g);

struct VillageStats {
  std::string id;
  std::int32_t n = 0;
  std::int64_t group_size = 0;
  double true_value = 0.0;
  // per budget, aligned with CorrelationStudy::budgets
  std::vector<double> mean_release;
  std::vector<double> sd_release;
  std::vector<int> aborted;
};

struct BudgetSummary {
  double eps_total = 0.0;
  double signal_sd = 0.0;      // SD of true values across villages
  double mean_noise_sd = 0.0;  // mean per-village release SD
  double snr = 0.0;            // signal variance / mean noise variance
  std::vector<double> correlations;  // one per replicate (true vs released)
  double mean_correlation = 0.0;
};

struct CorrelationStudy {
  std::vector<double> budgets;  // total eps, split equally
  std::vector<VillageStats> villages;
  std::vector<BudgetSummary> summaries;
};

CorrelationStudy run_correlation_study(const std::vector<Village>& villages,
                                       const std::vector<double>& eps_totals,
                                       int replicates, std::uint64_t seed, int threads);

void write_correlation_csv(const std::string& path, const CorrelationStudy& study);

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace netdp

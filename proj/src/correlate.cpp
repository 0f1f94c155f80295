#include "netdp/correlate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "netdp/dp_binary.hpp"
#include "netdp/indices.hpp"
#include "netdp/netgen.hpp"
#include "netdp/parallel.hpp"
#include "netdp/rng.hpp"

namespace netdp {

namespace {

constexpr std::uint64_t kPanelStage = 3;
constexpr std::uint64_t kStudyNoiseStage = 4;

const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double uniform_in(RngStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.uniform01();
}

struct MeanSd {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double sd = std::numeric_limits<double>::quiet_NaN();
  int count = 0;
};

// Sample mean and SD, skipping NaN entries.
MeanSd mean_sd(const std::vector<double>& v) {
  MeanSd out;
  double sum = 0.0;
  for (double x : v) {
    if (std::isnan(x)) continue;
    sum += x;
    ++out.count;
  }
  if (out.count == 0) return out;
  out.mean = sum / out.count;
  if (out.count < 2) return out;
  double ss = 0.0;
  for (double x : v) {
    if (std::isnan(x)) continue;
    const double d = x - out.mean;
    ss += d * d;
  }
  out.sd = std::sqrt(ss / (out.count - 1));
  return out;
}

}  // namespace

std::vector<Village> synthesize_village_panel(const VillagePanelSpec& spec,
                                              std::uint64_t seed) {
  if (spec.villages < 1) throw std::invalid_argument("panel needs at least one village");
  if (spec.n_min < 4 || spec.n_max < spec.n_min) {
    throw std::invalid_argument("panel node range is invalid");
  }
  if (!(spec.frac_min >= 0.05 && spec.frac_max <= 0.95 && spec.frac_min <= spec.frac_max)) {
    throw std::invalid_argument("panel group fraction range must sit inside [0.05, 0.95]");
  }

  std::vector<Village> villages;
  villages.reserve(static_cast<std::size_t>(spec.villages));
  for (int v = 0; v < spec.villages; ++v) {
    RngStream rng = derive_stream(seed, {kPanelStage, static_cast<std::uint64_t>(v)});
    const auto n = static_cast<std::int32_t>(
        spec.n_min + static_cast<int>(rng.below(
                         static_cast<std::uint64_t>(spec.n_max - spec.n_min) + 1)));
    const double d_bar = uniform_in(rng, spec.deg_min, spec.deg_max);
    const double frac_a = uniform_in(rng, spec.frac_min, spec.frac_max);
    const double ratio = uniform_in(rng, spec.ratio_min, spec.ratio_max);

    const double n_a = std::floor(frac_a * n);
    const double n_b = n - n_a;
    // Solve the expected mean degree for p_within given the between/within
    // ratio: sum of degrees = p_w * (na(na-1) + nb(nb-1)) + p_b * 2 na nb.
    const double within_pairs2 = n_a * (n_a - 1.0) + n_b * (n_b - 1.0);
    const double cross_pairs2 = 2.0 * n_a * n_b;
    const double p_within = d_bar * n / (within_pairs2 + ratio * cross_pairs2);
    const double p_between = ratio * p_within;
    if (!(p_within <= 1.0)) {
      throw std::invalid_argument("panel degree target is infeasible for village size");
    }

    char id[16];
    std::snprintf(id, sizeof(id), "v%03d", v);
    villages.push_back(Village{id, gen_sbm2(n, p_within, p_between, frac_a, rng)});
  }
  return villages;
}

std::vector<Village> villages_from_cells(const LabeledGraph& g) {
  if (g.cells().empty()) {
    throw std::invalid_argument("villages_from_cells: graph defines no cells");
  }
  std::vector<Village> villages;
  villages.reserve(g.cells().size());
  for (const auto& [id, members] : g.cells()) {
    villages.push_back(Village{id, induced_subgraph(g, members)});
  }
  return villages;
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw std::invalid_argument("pearson_correlation: need two same-length samples");
  }
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) return kNaN;
  return sab / std::sqrt(saa * sbb);
}

CorrelationStudy run_correlation_study(const std::vector<Village>& villages,
                                       const std::vector<double>& eps_totals, int replicates,
                                       std::uint64_t seed, int threads) {
  if (villages.empty()) throw std::invalid_argument("correlation study needs villages");
  if (eps_totals.empty()) throw std::invalid_argument("correlation study needs budgets");
  if (replicates < 2) throw std::invalid_argument("correlation study needs >= 2 replicates");

  const int n_villages = static_cast<int>(villages.size());
  const int n_budgets = static_cast<int>(eps_totals.size());

  CorrelationStudy study;
  study.budgets = eps_totals;
  study.villages.resize(static_cast<std::size_t>(n_villages));

  // releases[(b * V + v) * R + r]; NaN marks an aborted release.
  std::vector<double> releases(static_cast<std::size_t>(n_budgets) *
                                   static_cast<std::size_t>(n_villages) *
                                   static_cast<std::size_t>(replicates),
                               kNaN);

  parallel_for(n_villages, threads, [&](int v) {
    const Village& village = villages[static_cast<std::size_t>(v)];
    VillageStats& stats = study.villages[static_cast<std::size_t>(v)];
    stats.id = village.id;
    stats.n = village.graph.node_count();
    const ConnectednessResult truth = cross_connectedness(village.graph);
    stats.true_value = truth.value;
    stats.group_size = truth.group_size;
    stats.mean_release.assign(static_cast<std::size_t>(n_budgets), kNaN);
    stats.sd_release.assign(static_cast<std::size_t>(n_budgets), kNaN);
    stats.aborted.assign(static_cast<std::size_t>(n_budgets), 0);

    for (int r = 0; r < replicates; ++r) {
      // One stream per (village, replicate); budgets consume it in order,
      // so the same flip pattern underlies every budget's first draw only
      // when budgets agree. Keeping budgets inside one stream keeps the
      // study reproducible as a whole.
      RngStream rng = derive_stream(seed, {kStudyNoiseStage, static_cast<std::uint64_t>(v),
                                           static_cast<std::uint64_t>(r)});
      for (int b = 0; b < n_budgets; ++b) {
        PrivacyBudget budget;
        budget.eps_label = eps_totals[static_cast<std::size_t>(b)] / 2.0;
        budget.eps_edge = eps_totals[static_cast<std::size_t>(b)] / 2.0;
        const BinaryDpRelease rel = release_binary(village.graph, budget, rng);
        const std::size_t slot =
            (static_cast<std::size_t>(b) * static_cast<std::size_t>(n_villages) +
             static_cast<std::size_t>(v)) *
                static_cast<std::size_t>(replicates) +
            static_cast<std::size_t>(r);
        if (rel.aborted) {
          ++stats.aborted[static_cast<std::size_t>(b)];
        } else {
          releases[slot] = rel.value;
        }
      }
    }

    for (int b = 0; b < n_budgets; ++b) {
      std::vector<double> vals(static_cast<std::size_t>(replicates));
      for (int r = 0; r < replicates; ++r) {
        vals[static_cast<std::size_t>(r)] =
            releases[(static_cast<std::size_t>(b) * static_cast<std::size_t>(n_villages) +
                      static_cast<std::size_t>(v)) *
                         static_cast<std::size_t>(replicates) +
                     static_cast<std::size_t>(r)];
      }
      const MeanSd ms = mean_sd(vals);
      stats.mean_release[static_cast<std::size_t>(b)] = ms.mean;
      stats.sd_release[static_cast<std::size_t>(b)] = ms.sd;
    }
  });

  for (int b = 0; b < n_budgets; ++b) {
    BudgetSummary summary;
    summary.eps_total = eps_totals[static_cast<std::size_t>(b)];

    std::vector<double> truths(static_cast<std::size_t>(n_villages));
    for (int v = 0; v < n_villages; ++v) {
      truths[static_cast<std::size_t>(v)] = study.villages[static_cast<std::size_t>(v)].true_value;
    }
    const MeanSd signal = mean_sd(truths);
    summary.signal_sd = signal.sd;

    double noise_var_sum = 0.0;
    int noise_var_count = 0;
    for (int v = 0; v < n_villages; ++v) {
      const double sd = study.villages[static_cast<std::size_t>(v)]
                            .sd_release[static_cast<std::size_t>(b)];
      if (std::isnan(sd)) continue;
      noise_var_sum += sd * sd;
      ++noise_var_count;
    }
    const double mean_noise_var = noise_var_count > 0 ? noise_var_sum / noise_var_count : kNaN;
    summary.mean_noise_sd = std::sqrt(mean_noise_var);
    summary.snr = signal.sd * signal.sd / mean_noise_var;

    summary.correlations.assign(static_cast<std::size_t>(replicates), kNaN);
    double corr_sum = 0.0;
    int corr_count = 0;
    for (int r = 0; r < replicates; ++r) {
      std::vector<double> t, p;
      t.reserve(static_cast<std::size_t>(n_villages));
      p.reserve(static_cast<std::size_t>(n_villages));
      for (int v = 0; v < n_villages; ++v) {
        const double rel =
            releases[(static_cast<std::size_t>(b) * static_cast<std::size_t>(n_villages) +
                      static_cast<std::size_t>(v)) *
                         static_cast<std::size_t>(replicates) +
                     static_cast<std::size_t>(r)];
        if (std::isnan(rel)) continue;
        t.push_back(truths[static_cast<std::size_t>(v)]);
        p.push_back(rel);
      }
      if (t.size() < 3) continue;
      const double c = pearson_correlation(t, p);
      summary.correlations[static_cast<std::size_t>(r)] = c;
      if (!std::isnan(c)) {
        corr_sum += c;
        ++corr_count;
      }
    }
    summary.mean_correlation = corr_count > 0 ? corr_sum / corr_count : kNaN;
    study.summaries.push_back(std::move(summary));
  }
  return study;
}

void write_correlation_csv(const std::string& path, const CorrelationStudy& study) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "# netdp-correlation-v1\n";
  for (const BudgetSummary& s : study.summaries) {
    os << "# summary eps_total=" << fmt_double(s.eps_total)
       << " signal_sd=" << fmt_double(s.signal_sd)
       << " mean_noise_sd=" << fmt_double(s.mean_noise_sd) << " snr=" << fmt_double(s.snr)
       << " mean_correlation=" << fmt_double(s.mean_correlation) << "\n";
  }
  os << "village,eps_total,n,group_size,true_value,mean_release,sd_release,aborted\n";
  for (std::size_t b = 0; b < study.budgets.size(); ++b) {
    for (const VillageStats& v : study.villages) {
      os << v.id << ',' << fmt_double(study.budgets[b]) << ',' << v.n << ',' << v.group_size
         << ',' << fmt_double(v.true_value) << ',' << fmt_double(v.mean_release[b]) << ','
         << fmt_double(v.sd_release[b]) << ',' << v.aborted[b] << "\n";
    }
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace netdp

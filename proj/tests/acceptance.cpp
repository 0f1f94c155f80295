// Acceptance gate: end-to-end statistical and exactness checks, one line of
// verdict per criterion. Exits 0 only when every criterion passes. Replicate
// counts are fixed; --seed and --threads only move the Monte Carlo draws and
// the worker pool, so a pass is expected for any seed, not one lucky one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "netdp/correlate.hpp"
#include "netdp/dp_binary.hpp"
#include "netdp/dp_continuous.hpp"
#include "netdp/experiment.hpp"
#include "netdp/graph.hpp"
#include "netdp/indices.hpp"
#include "netdp/netgen.hpp"
#include "netdp/noise.hpp"
#include "netdp/oracle.hpp"
#include "netdp/rng.hpp"
#include "test_util.hpp"

namespace {

using namespace netdp;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double variance_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Rows for one sweep point, in point-major layout.
std::vector<double> point_sq_errors(const ExperimentSpec& spec, const RunOutput& out,
                                    int point) {
  const int per_point = spec.graphs_per_point * spec.noise_reps;
  std::vector<double> e;
  e.reserve(static_cast<std::size_t>(per_point));
  for (int k = 0; k < per_point; ++k) {
    e.push_back(out.rows[static_cast<std::size_t>(point * per_point + k)].sq_error);
  }
  return e;
}

int count_aborted(const RunOutput& out) {
  int n = 0;
  for (const ResultRow& r : out.rows) n += r.aborted ? 1 : 0;
  return n;
}

// ---------------------------------------------------------------------------
// 1. Debiasing is exactly unbiased: enumerating every flip pattern must give
//    back the plain per-node shares, the group size, and their weighted sum.

Verdict check_enumeration_unbiased(std::uint64_t seed) {
  RngStream rng = derive_stream(seed, {101});
  double max_dev = 0.0;
  for (int k = 0; k < 20; ++k) {
    GeneratorSpec gs;
    gs.kind = GeneratorSpec::Kind::er;
    gs.n = static_cast<std::int32_t>(6 + rng.below(7));
    gs.p_edge = 0.35 + 0.3 * rng.uniform01();
    gs.frac_a = 0.5;
    // Isolated nodes are excluded by construction: their share is pinned to
    // zero, which no debiasing of a flipped label can reproduce on average.
    LabeledGraph g = generate(gs, rng);
    for (int attempt = 0; attempt < 500; ++attempt) {
      bool isolated = false;
      for (std::int32_t i = 0; i < g.node_count(); ++i) {
        if (g.degree(i) == 0.0) { isolated = true; break; }
      }
      if (!isolated) break;
      g = generate(gs, rng);
    }

    const auto labels = g.binary_labels();
    for (double p : {0.05, 0.1, 0.25, 0.4}) {
      const oracle::EnumerationResult res = oracle::enumerate_expectations(g, p);
      double true_s0 = 0.0, true_s1 = 0.0;
      for (std::int32_t i = 0; i < g.node_count(); ++i) {
        const double r = rho(g, i);
        max_dev = std::max(
            max_dev, std::abs(res.expected_rho_tilde[static_cast<std::size_t>(i)] - r));
        if (labels[static_cast<std::size_t>(i)] == BinaryLabel::a) {
          true_s0 += 1.0;
          true_s1 += r;
        }
      }
      max_dev = std::max(max_dev, std::abs(res.expected_s0 - true_s0));
      max_dev = std::max(max_dev, std::abs(res.expected_s1 - true_s1));
    }
  }
  return {max_dev <= 1e-12,
          fmt("20 graphs x 4 flip rates enumerated, max deviation %.2e", max_dev)};
}

// ---------------------------------------------------------------------------
// 2. No single-edge toggle may ever move the weighted share sum past
//    2(1-p)/(1-2p)^2, and a heavy star comes within 1% of that bound.

Verdict check_edge_sensitivity(std::uint64_t seed) {
  RngStream rng = derive_stream(seed, {102});
  int violations = 0;
  double max_frac = 0.0;
  for (int k = 0; k < 500; ++k) {
    GeneratorSpec gs;
    gs.kind = GeneratorSpec::Kind::er;
    gs.n = static_cast<std::int32_t>(5 + rng.below(16));
    gs.p_edge = 0.15 + 0.35 * rng.uniform01();
    gs.frac_a = 0.5;
    const LabeledGraph g = generate(gs, rng);
    for (double p : {0.05, 0.1, 0.25, 0.4}) {
      const PrivateLabels priv = randomize_labels(g.binary_labels(), p, rng);
      const double got = oracle::max_edge_sensitivity(g, priv.labels, p);
      const double bound = oracle::edge_sensitivity_bound(p);
      if (got > bound * (1.0 + 1e-12)) ++violations;
      max_frac = std::max(max_frac, got / bound);
    }
  }

  // Star with a heavy cross edge between two leaves: both leaf shares swing
  // by 199/200, weighted by the two largest weights the debiasing allows.
  GraphBuilder sb(6);
  for (std::int32_t leaf = 1; leaf < 6; ++leaf) sb.add_edge(0, leaf, 1.0);
  sb.binary_labels({BinaryLabel::b, BinaryLabel::a, BinaryLabel::a, BinaryLabel::a,
                    BinaryLabel::a, BinaryLabel::a});
  const LabeledGraph star = sb.build();
  const std::vector<BinaryLabel> fixed(star.binary_labels().begin(),
                                       star.binary_labels().end());
  double star_frac = 0.0;
  bool star_ok = true;
  for (double p : {0.05, 0.25}) {
    const double got = oracle::max_edge_sensitivity(star, fixed, p, 199.0);
    const double bound = oracle::edge_sensitivity_bound(p);
    star_frac = got / bound;
    if (got > bound * (1.0 + 1e-12)) ++violations;
    star_ok = star_ok && star_frac >= 0.99;
  }

  return {violations == 0 && star_ok,
          fmt("2000 toggle searches, 0 expected violations, got %d; random max "
              "%.3f of bound, heavy star %.4f",
              violations, max_frac, star_frac)};
}

// ---------------------------------------------------------------------------
// 3. The four-node example: plain index 7/12, and the hand-checked pipeline
//    state at flip rate 1/4 with no realized flips, all reproduced exactly.

Verdict check_worked_example(std::uint64_t) {
  const LabeledGraph g = testutil::reference_example();
  const double cross = cross_connectedness(g).value;
  const bool index_ok = std::abs(cross - 7.0 / 12.0) <= std::ldexp(1.0, -53);

  PrivateLabels priv;
  priv.labels.assign(g.binary_labels().begin(), g.binary_labels().end());
  priv.flip_prob = 0.25;
  const DebiasedNodeStats st = debias_node_stats(g, priv);
  const HajekResult hj = hajek(st);
  const double scale = binary_noise_scale(0.25, 1.0, hj.s0);
  const bool trace_ok =
      hj.s0 == 2.0 && hj.s1 == 2.5 && hj.ratio == 1.25 && scale == 3.0;

  return {index_ok && trace_ok,
          fmt("index dev %.1e (<= 1 ulp), S0 %.17g, S1 %.17g, scale %.17g",
              std::abs(cross - 7.0 / 12.0), hj.s0, hj.s1, scale)};
}

// ---------------------------------------------------------------------------
// 4. Error shrinks with network size: median squared error non-increasing
//    along the doubling grid and the mean at n=8000 under a quarter of n=500.

ExperimentSpec size_sweep_spec(std::uint64_t seed, int threads) {
  ExperimentSpec spec;
  spec.sweep = SweepVar::n;
  spec.values = {500.0, 1000.0, 2000.0, 4000.0, 8000.0};
  spec.stat = TargetStat::binary_connectedness;
  spec.gen.kind = GeneratorSpec::Kind::er;
  spec.gen.avg_degree = 20.0;
  spec.gen.frac_a = 0.5;
  spec.eps_total = 8.0;
  spec.split = 0.5;
  spec.graphs_per_point = 20;
  spec.noise_reps = 10;
  spec.seed = derive_stream_id({seed, 104});
  spec.threads = threads;
  return spec;
}

Verdict check_size_consistency(std::uint64_t seed, int threads) {
  const ExperimentSpec spec = size_sweep_spec(seed, threads);
  const RunOutput out = run_experiment(spec);
  if (const int ab = count_aborted(out)) {
    return {false, fmt("%d of %zu releases aborted", ab, out.rows.size())};
  }
  std::vector<double> med, mse;
  for (int point = 0; point < 5; ++point) {
    const std::vector<double> e = point_sq_errors(spec, out, point);
    med.push_back(median_of(e));
    mse.push_back(mean_of(e));
  }
  bool monotone = true;
  for (int i = 0; i + 1 < 5; ++i) monotone = monotone && med[i + 1] <= med[i];
  const double ratio = mse[4] / mse[0];
  return {monotone && ratio < 0.25,
          fmt("median sq err %.2e -> %.2e -> %.2e -> %.2e -> %.2e, mse ratio "
              "8000/500 = %.3f",
              med[0], med[1], med[2], med[3], med[4], ratio)};
}

// ---------------------------------------------------------------------------
// 5. The best label/edge budget split grows with network size: bigger
//    networks tolerate a noisier edge mechanism, not noisier labels. The
//    group of interest is a 10% minority: edge-noise variance scales with
//    1/#A^2 against the label terms' 1/#A, so a small group is what brings
//    the two into balance inside the grid at n=2000; with equal groups both
//    optima sit past the top of the grid and the comparison cannot resolve.

Verdict check_split_shift(std::uint64_t seed, int threads) {
  const std::vector<double> grid{0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  const auto best_split = [&](std::int32_t n, std::uint64_t tag) {
    ExperimentSpec spec;
    spec.sweep = SweepVar::eps_split;
    spec.values = grid;
    spec.stat = TargetStat::binary_connectedness;
    spec.gen.kind = GeneratorSpec::Kind::er;
    spec.gen.n = n;
    spec.gen.avg_degree = 20.0;
    spec.gen.frac_a = 0.1;
    spec.eps_total = 4.0;
    spec.graphs_per_point = 25;
    spec.noise_reps = 20;
    spec.seed = derive_stream_id({seed, tag});
    spec.threads = threads;
    const RunOutput out = run_experiment(spec);
    int best = 0;
    double best_mse = std::numeric_limits<double>::infinity();
    for (int point = 0; point < static_cast<int>(grid.size()); ++point) {
      const double m = mean_of(point_sq_errors(spec, out, point));
      if (m < best_mse) {
        best_mse = m;
        best = point;
      }
    }
    return grid[static_cast<std::size_t>(best)];
  };
  const double small_n = best_split(2000, 105);
  const double large_n = best_split(20000, 106);
  return {large_n > small_n,
          fmt("mse-minimizing label share: n=2000 -> %.1f, n=20000 -> %.1f",
              small_n, large_n)};
}

// ---------------------------------------------------------------------------
// 6. Extreme homophily hurts: with the degree budget held fixed, a fully
//    separated blockmodel must show higher MSE than a mixed one.

Verdict check_homophily_penalty(std::uint64_t seed, int threads) {
  ExperimentSpec spec;
  spec.sweep = SweepVar::homophily;
  spec.values = {0.08, 0.04};  // p_within; p_between = 0.08 - p_within
  spec.p_sum = 0.08;
  spec.stat = TargetStat::binary_connectedness;
  spec.gen.kind = GeneratorSpec::Kind::sbm2;
  spec.gen.n = 2000;
  spec.gen.frac_a = 0.5;
  spec.eps_total = 2.0;
  spec.split = 0.5;
  spec.graphs_per_point = 50;
  spec.noise_reps = 20;
  spec.seed = derive_stream_id({seed, 107});
  spec.threads = threads;
  const RunOutput out = run_experiment(spec);
  if (const int ab = count_aborted(out)) {
    return {false, fmt("%d of %zu releases aborted", ab, out.rows.size())};
  }
  const std::vector<double> extreme = point_sq_errors(spec, out, 0);
  const std::vector<double> mixed = point_sq_errors(spec, out, 1);
  const double m1 = mean_of(extreme), m2 = mean_of(mixed);
  const double v1 = variance_of(extreme), v2 = variance_of(mixed);
  const double n = static_cast<double>(extreme.size());
  const double z = (m1 - m2) / std::sqrt(v1 / n + v2 / n);
  // One-sided test at the 1% level.
  return {z > 2.3263,
          fmt("mse separated %.2e vs mixed %.2e over %d reps each, z = %.2f",
              m1, m2, static_cast<int>(n), z)};
}

// ---------------------------------------------------------------------------
// 7. Truncated Laplace: draws never leave [-A, A], the closed-form variance
//    matches quadrature, and a large sample agrees with it.

Verdict check_trunc_laplace(std::uint64_t seed) {
  double max_quad_dev = 0.0;
  const double grids[][3] = {
      {1.0, 2.0, 0.05}, {0.7, 1.5, 0.01}, {2.0, 4.0, 0.01}, {1.0, 8.0, 0.001}};
  for (const auto& row : grids) {
    const TruncLaplaceParams tp = trunc_laplace_params(row[0], row[1], row[2]);
    const double quad =
        2.0 * testutil::simpson(
                  [&](double x) {
                    return x * x * tp.normalizer * std::exp(-x / tp.scale);
                  },
                  0.0, tp.bound);
    max_quad_dev = std::max(max_quad_dev, std::abs(quad - tp.variance));
  }

  const TruncLaplaceParams tp = trunc_laplace_params(1.0, 2.0, 0.05);
  RngStream rng = derive_stream(seed, {108});
  int escaped = 0;
  double sum = 0.0, sumsq = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    const double x = trunc_laplace(tp, rng);
    if (std::abs(x) > tp.bound) ++escaped;
    sum += x;
    sumsq += x * x;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  const double rel = std::abs(var - tp.variance) / tp.variance;
  return {escaped == 0 && rel < 0.03 && max_quad_dev < 1e-8,
          fmt("0 of 1e6 draws escaped (saw %d), sample var off by %.2f%%, "
              "closed form vs quadrature %.1e",
              escaped, 100.0 * rel, max_quad_dev)};
}

// ---------------------------------------------------------------------------
// 8. Slope recovery on the distance-kernel generator: the released slope
//    lands within +-0.05 of the per-graph truth in at least 90% of runs, and
//    its MSE falls as the network grows.

Verdict check_slope_recovery(std::uint64_t seed, int threads) {
  ExperimentSpec spec;
  spec.sweep = SweepVar::n;
  spec.values = {20000.0, 50000.0, 100000.0};
  spec.stat = TargetStat::slope;
  spec.gen.kind = GeneratorSpec::Kind::graphon;
  spec.gen.avg_degree = 20.0;
  spec.gen.h = 0.8;
  spec.gen.attach_binary_labels = false;
  spec.eps_total = 8.0;
  spec.split = 0.5;
  spec.delta_label = 0.01;
  spec.graphs_per_point = 10;
  spec.noise_reps = 10;
  spec.seed = derive_stream_id({seed, 109});
  spec.threads = threads;
  const RunOutput out = run_experiment(spec);
  if (const int ab = count_aborted(out)) {
    return {false, fmt("%d of %zu releases aborted", ab, out.rows.size())};
  }
  std::vector<double> mse;
  for (int point = 0; point < 3; ++point) {
    mse.push_back(mean_of(point_sq_errors(spec, out, point)));
  }
  int within = 0;
  const int per_point = spec.graphs_per_point * spec.noise_reps;
  for (int k = 0; k < per_point; ++k) {
    const ResultRow& r = out.rows[static_cast<std::size_t>(per_point + k)];
    if (std::abs(r.private_stat - r.true_stat) <= 0.05) ++within;
  }
  const bool falling = mse[0] > mse[1] && mse[1] > mse[2];
  return {within >= 90 && falling,
          fmt("n=50000 coverage %d/100 within 0.05; mse %.2e -> %.2e -> %.2e",
              within, mse[0], mse[1], mse[2])};
}

// ---------------------------------------------------------------------------
// 9. Perturbation search never exceeds the closed-form moment sensitivities.

Verdict check_moment_sensitivities(std::uint64_t seed) {
  RngStream rng = derive_stream(seed, {110});
  int violations = 0;
  double var_frac = 0.0, cov_frac = 0.0;
  for (int k = 0; k < 200; ++k) {
    const auto draw_bounds = [&rng] {
      const double lo = -1.0 + 1.5 * rng.uniform01();
      return oracle::ValueBounds{lo, lo + 0.25 + 1.75 * rng.uniform01()};
    };
    const oracle::ValueBounds xb = draw_bounds(), yb = draw_bounds();
    std::vector<double> x(6), y(6);
    for (int i = 0; i < 6; ++i) {
      x[static_cast<std::size_t>(i)] = xb.lo + (xb.hi - xb.lo) * rng.uniform01();
      y[static_cast<std::size_t>(i)] = yb.lo + (yb.hi - yb.lo) * rng.uniform01();
    }
    const SuffStatSensitivities sens =
        suffstat_sensitivities(6, Interval{xb.lo, xb.hi}, Interval{yb.lo, yb.hi});
    const oracle::SuffStatSearchResult got =
        oracle::suffstat_perturbation_search(x, y, xb, yb);
    if (got.max_dnvar > sens.d1 * (1.0 + 1e-12)) ++violations;
    if (got.max_dncov > sens.d2 * (1.0 + 1e-12)) ++violations;
    var_frac = std::max(var_frac, got.max_dnvar / sens.d1);
    cov_frac = std::max(cov_frac, got.max_dncov / sens.d2);
  }
  return {violations == 0,
          fmt("200 datasets, 0 expected violations, got %d; max attained %.3f "
              "of var bound, %.3f of cov bound",
              violations, var_frac, cov_frac)};
}

// ---------------------------------------------------------------------------
// 10. Village panel: every village's release noise lands in a usable band,
//     the panel stays informative, and halving the budget costs correlation.

Verdict check_village_panel(std::uint64_t seed, int threads) {
  const std::vector<Village> villages =
      synthesize_village_panel(VillagePanelSpec{}, derive_stream_id({seed, 111}));
  const CorrelationStudy study = run_correlation_study(
      villages, {8.0, 4.0}, 500, derive_stream_id({seed, 112}), threads);

  double sd_lo = 1e300, sd_hi = 0.0;
  for (const VillageStats& v : study.villages) {
    sd_lo = std::min(sd_lo, v.sd_release[0]);
    sd_hi = std::max(sd_hi, v.sd_release[0]);
  }
  const BudgetSummary& full = study.summaries[0];
  const BudgetSummary& half = study.summaries[1];
  const bool band_ok = sd_lo >= 0.02 && sd_hi <= 0.12;
  return {band_ok && full.snr > 5.0 && full.mean_correlation > half.mean_correlation,
          fmt("46 villages: noise sd in [%.3f, %.3f], snr %.1f, corr %.3f at "
              "eps 8 vs %.3f at eps 4",
              sd_lo, sd_hi, full.snr, full.mean_correlation,
              half.mean_correlation)};
}

// ---------------------------------------------------------------------------
// 11. Error distribution: at n=8000 the release errors on a fixed graph pass
//     a Jarque-Bera check at the 1% level, and the additive-noise share of
//     total error falls along the size grid (the sampling term takes over).

Verdict check_normality_and_noise_share(std::uint64_t seed, int threads) {
  (void)threads;
  GeneratorSpec gs;
  gs.kind = GeneratorSpec::Kind::er;
  gs.n = 8000;
  gs.avg_degree = 20.0;
  gs.frac_a = 0.5;
  const PrivacyBudget budget{4.0, 4.0, 0.0};

  RngStream graph_rng = derive_stream(seed, {113});
  const LabeledGraph fixed = generate(gs, graph_rng);
  const double truth = cross_connectedness(fixed).value;
  std::vector<double> err;
  err.reserve(1000);
  for (int r = 0; r < 1000; ++r) {
    RngStream noise_rng = derive_stream(seed, {114, static_cast<std::uint64_t>(r)});
    const BinaryDpRelease rel = release_binary(fixed, budget, noise_rng);
    if (rel.aborted) return {false, "release aborted on the fixed graph"};
    err.push_back(rel.value - truth);
  }
  // Skewness and kurtosis are scale-free, so checking the raw errors is the
  // same as checking the root-n-scaled ones.
  const double m = mean_of(err);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double e : err) {
    const double d = e - m;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double n = static_cast<double>(err.size());
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2) - 3.0;
  const double jb = n / 6.0 * (skew * skew + kurt * kurt / 4.0);

  // Additive-noise variance share per size: mean(2 scale^2) / mse.
  std::vector<double> share;
  for (std::int32_t size : {500, 1000, 2000, 4000, 8000}) {
    GeneratorSpec pg = gs;
    pg.n = size;
    double lap_var = 0.0, mse = 0.0;
    int releases = 0;
    for (int graph_rep = 0; graph_rep < 20; ++graph_rep) {
      RngStream grng =
          derive_stream(seed, {115, static_cast<std::uint64_t>(size),
                               static_cast<std::uint64_t>(graph_rep)});
      const LabeledGraph g = generate(pg, grng);
      const double t = cross_connectedness(g).value;
      for (int rep = 0; rep < 10; ++rep) {
        RngStream nrng =
            derive_stream(seed, {116, static_cast<std::uint64_t>(graph_rep),
                                 static_cast<std::uint64_t>(rep)});
        const BinaryDpRelease rel = release_binary(g, budget, nrng);
        if (rel.aborted) return {false, "release aborted in the share sweep"};
        lap_var += 2.0 * rel.noise_scale * rel.noise_scale;
        mse += (rel.value - t) * (rel.value - t);
        ++releases;
      }
    }
    share.push_back(lap_var / static_cast<double>(releases) /
                    (mse / static_cast<double>(releases)));
  }
  bool falling = true;
  for (std::size_t i = 0; i + 1 < share.size(); ++i) {
    falling = falling && share[i + 1] < share[i];
  }
  const bool share_ok = falling && share[4] < 0.5 * share[0];
  return {jb < 9.21034 && share_ok,
          fmt("JB %.2f (crit 9.21), noise share %.3f -> %.3f -> %.3f -> %.3f "
              "-> %.3f",
              jb, share[0], share[1], share[2], share[3], share[4])};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks for the private connectedness release library"};
  std::uint64_t seed = 271828;
  int threads = 0;
  int only = 0;
  app.add_option("--seed", seed, "master seed for every criterion");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--only", only, "run a single criterion by number")
      ->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  using Entry = std::pair<const char*, std::function<Verdict()>>;
  const std::vector<Entry> criteria = {
      {"debiased shares unbiased under exhaustive enumeration",
       [&] { return check_enumeration_unbiased(seed); }},
      {"edge toggle never exceeds the sensitivity bound",
       [&] { return check_edge_sensitivity(seed); }},
      {"worked example reproduced exactly",
       [&] { return check_worked_example(seed); }},
      {"squared error shrinks with network size",
       [&] { return check_size_consistency(seed, threads); }},
      {"optimal budget split shifts toward labels on larger networks",
       [&] { return check_split_shift(seed, threads); }},
      {"fully separated blocks degrade accuracy",
       [&] { return check_homophily_penalty(seed, threads); }},
      {"truncated laplace support, variance, quadrature agree",
       [&] { return check_trunc_laplace(seed); }},
      {"released slope recovers the per-graph truth",
       [&] { return check_slope_recovery(seed, threads); }},
      {"moment perturbations stay inside closed-form sensitivities",
       [&] { return check_moment_sensitivities(seed); }},
      {"village panel noise band, snr, and budget ordering",
       [&] { return check_village_panel(seed, threads); }},
      {"release errors near-normal, additive noise share vanishing",
       [&] { return check_normality_and_noise_share(seed, threads); }},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && only != id) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const Verdict v = criteria[i].second();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%2d] %s  %s: %s  [%.1fs]\n", id, v.pass ? "PASS" : "FAIL",
                criteria[i].first, v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failures;
  }
  if (failures == 0) {
    std::printf("RESULT: all criteria pass\n");
  } else {
    std::printf("RESULT: %d criteria failing\n", failures);
  }
  return failures == 0 ? 0 : 1;
}

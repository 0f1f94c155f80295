// Command line front end: generate synthetic networks, run the private
// releases on ingested data, drive simulation sweeps, and sanity-check the
// estimator stack against the brute-force oracles.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netdp/correlate.hpp"
#include "netdp/dp_binary.hpp"
#include "netdp/dp_continuous.hpp"
#include "netdp/experiment.hpp"
#include "netdp/indices.hpp"
#include "netdp/io.hpp"
#include "netdp/netgen.hpp"
#include "netdp/oracle.hpp"
#include "netdp/rng.hpp"

namespace {

constexpr std::uint64_t kCliGenerateStage = 12;
constexpr std::uint64_t kCliBinaryStage = 10;
constexpr std::uint64_t kCliMafrStage = 11;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// stdout unless --out was given.
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open for writing: " + path);
    os = &file;
  }
  std::ostream& out() { return *os; }
};

const char* mafr_reason(netdp::MafrAbort reason) {
  switch (reason) {
    case netdp::MafrAbort::none: return "none";
    case netdp::MafrAbort::suffstats_nonpositive_variance: return "nonpositive_variance";
    case netdp::MafrAbort::degenerate_attenuation: return "degenerate_attenuation";
  }
  return "?";
}

struct GenerateArgs {
  std::string kind;
  std::int32_t n = 0;
  double p_edge = -1.0;
  double avg_degree = -1.0;
  double p_within = 0.0;
  double p_between = 0.0;
  double frac_a = 0.5;
  double h = 0.0;
  std::uint64_t seed = 0;
  std::string out_prefix;
};

int run_generate(const GenerateArgs& args) {
  netdp::GeneratorSpec spec;
  if (args.kind == "er") {
    spec.kind = netdp::GeneratorSpec::Kind::er;
  } else if (args.kind == "sbm2") {
    spec.kind = netdp::GeneratorSpec::Kind::sbm2;
  } else if (args.kind == "graphon") {
    spec.kind = netdp::GeneratorSpec::Kind::graphon;
  } else {
    throw std::runtime_error("unknown generator kind '" + args.kind + "'");
  }
  spec.n = args.n;
  spec.p_edge = args.p_edge;
  spec.avg_degree = args.avg_degree;
  spec.p_within = args.p_within;
  spec.p_between = args.p_between;
  spec.frac_a = args.frac_a;
  spec.h = args.h;

  netdp::RngStream rng = netdp::derive_stream(args.seed, {kCliGenerateStage});
  const netdp::LabeledGraph g = netdp::generate(spec, rng);

  netdp::io::write_edge_list(g, args.out_prefix + ".edges");
  netdp::io::write_labels(g, args.out_prefix + ".labels");

  std::cout << "nodes=" << g.node_count() << " edges=" << g.edge_count() << " hash=" << std::hex
            << netdp::graph_hash(g) << std::dec << "\n";
  std::cout << "wrote " << args.out_prefix << ".edges and " << args.out_prefix << ".labels\n";
  return 0;
}

struct ReleaseBinaryArgs {
  std::string edges, labels, cells, out;
  double eps_label = 0.0;
  double eps_edge = 0.0;
  std::uint64_t seed = 0;
  bool per_cell = false;
  std::string cell_mode = "ego";
  bool clamp = false;
  bool disable_noise = false;
};

int run_release_binary(const ReleaseBinaryArgs& args) {
  netdp::io::IngestPaths paths;
  paths.edges = args.edges;
  paths.labels = args.labels;
  if (!args.cells.empty()) paths.cells = args.cells;
  const netdp::LabeledGraph g = netdp::io::ingest(paths);

  netdp::PrivacyBudget budget;
  budget.eps_label = args.eps_label;
  budget.eps_edge = args.eps_edge;

  netdp::CellMode mode = netdp::CellMode::ego_to_all;
  if (args.cell_mode == "within") {
    mode = netdp::CellMode::within_cell;
  } else if (args.cell_mode != "ego") {
    throw std::runtime_error("cell mode must be 'ego' or 'within'");
  }

  std::vector<std::string> rows;
  rows.emplace_back("_all");
  if (args.per_cell) {
    for (const auto& [id, members] : g.cells()) rows.push_back(id);
  }

  Sink sink(args.out);
  sink.out() << "cell,value,s0,s1,noise_scale,flip_prob,aborted,clamped\n";
  int failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    netdp::BinaryReleaseOptions opts;
    if (rows[i] != "_all") opts.cell_id = rows[i];
    opts.cell_mode = mode;
    opts.clamp = args.clamp;
    opts.noise = args.disable_noise ? netdp::NoiseMode::disabled : netdp::NoiseMode::enabled;

    // One fresh stream per row: rows stay independent, and budgets across
    // rows compose, which is the caller's bookkeeping.
    netdp::RngStream rng = netdp::derive_stream(args.seed, {kCliBinaryStage, i});
    const netdp::BinaryDpRelease rel = netdp::release_binary(g, budget, rng, opts);
    if (rel.aborted) ++failures;
    sink.out() << rows[i] << ',' << fmt(rel.value) << ',' << fmt(rel.s0) << ',' << fmt(rel.s1)
               << ',' << fmt(rel.noise_scale) << ',' << fmt(rel.flip_prob) << ','
               << (rel.aborted ? 1 : 0) << ',' << (rel.clamped ? 1 : 0) << "\n";
  }
  return failures == 0 ? 0 : 2;
}

struct ReleaseMafrArgs {
  std::string edges, labels, cells, out;
  double eps_label = 0.0;
  double delta_label = 0.0;
  double eps_edge = 0.0;
  double interval_lo = 0.0;
  double interval_width = 0.25;
  std::uint64_t seed = 0;
  bool per_cell = false;
  bool swap_noise_pairing = false;
  bool disable_noise = false;
};

int run_release_mafr(const ReleaseMafrArgs& args) {
  netdp::io::IngestPaths paths;
  paths.edges = args.edges;
  paths.labels = args.labels;
  if (!args.cells.empty()) paths.cells = args.cells;
  const netdp::LabeledGraph g = netdp::io::ingest(paths);

  netdp::PrivacyBudget budget;
  budget.eps_label = args.eps_label;
  budget.eps_edge = args.eps_edge;
  budget.delta_label = args.delta_label;

  netdp::MafrReleaseOptions opts;
  opts.interval = netdp::Interval{args.interval_lo, args.interval_lo + args.interval_width};
  opts.noise = args.disable_noise ? netdp::NoiseMode::disabled : netdp::NoiseMode::enabled;
  opts.swap_noise_pairing = args.swap_noise_pairing;

  struct Row {
    std::string id;
    const netdp::LabeledGraph* graph;
  };
  std::vector<Row> rows;
  rows.push_back(Row{"_all", &g});
  std::vector<netdp::LabeledGraph> cell_graphs;  // keep alive behind the pointers
  if (args.per_cell) {
    cell_graphs.reserve(g.cells().size());
    std::vector<std::string> ids;
    for (const auto& [id, members] : g.cells()) {
      cell_graphs.push_back(netdp::induced_subgraph(g, members));
      ids.push_back(id);
    }
    for (std::size_t i = 0; i < ids.size(); ++i) rows.push_back(Row{ids[i], &cell_graphs[i]});
  }

  Sink sink(args.out);
  sink.out() << "cell,alpha_star,beta_star,alpha_tilde,beta_tilde,mafr,sigma2,aborted,reason\n";
  int failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    netdp::RngStream rng = netdp::derive_stream(args.seed, {kCliMafrStage, i});
    const netdp::MafrRelease rel = netdp::release_mafr(*rows[i].graph, budget, rng, opts);
    if (rel.aborted) ++failures;
    sink.out() << rows[i].id << ',' << fmt(rel.alpha_star) << ',' << fmt(rel.beta_star) << ','
               << fmt(rel.alpha_tilde) << ',' << fmt(rel.beta_tilde) << ','
               << fmt(rel.mafr_value) << ',' << fmt(rel.sigma2) << ',' << (rel.aborted ? 1 : 0)
               << ',' << mafr_reason(rel.reason) << "\n";
  }
  return failures == 0 ? 0 : 2;
}

struct SimulateArgs {
  std::string config;
  std::string output_override;
  std::int64_t seed_override = -1;
  int threads_override = -1;
};

int run_simulate(const SimulateArgs& args) {
  netdp::ExperimentSpec spec =
      netdp::ExperimentSpec::from_config(netdp::KvConfig::load(args.config));
  if (!args.output_override.empty()) spec.output_path = args.output_override;
  if (args.seed_override >= 0) spec.seed = static_cast<std::uint64_t>(args.seed_override);
  if (args.threads_override >= 0) spec.threads = args.threads_override;

  const netdp::RunOutput out = netdp::run_experiment(spec);
  if (!spec.output_path.empty()) {
    netdp::write_results_csv(spec.output_path, spec, out);
    std::cout << "wrote " << spec.output_path << "\n";
  }

  // Per sweep point: mean truth, mean release, rmse over non-aborted rows.
  std::cout << "sweep_value,rows,aborted,mean_true,mean_private,rmse\n";
  const std::size_t per_point =
      static_cast<std::size_t>(spec.graphs_per_point) * static_cast<std::size_t>(spec.noise_reps);
  for (std::size_t p = 0; p < spec.values.size(); ++p) {
    double sum_true = 0.0, sum_priv = 0.0, sum_sq = 0.0;
    std::size_t ok = 0, aborted = 0;
    for (std::size_t k = 0; k < per_point; ++k) {
      const netdp::ResultRow& row = out.rows[p * per_point + k];
      if (row.aborted) {
        ++aborted;
        continue;
      }
      sum_true += row.true_stat;
      sum_priv += row.private_stat;
      sum_sq += row.sq_error;
      ++ok;
    }
    std::cout << fmt(spec.values[p]) << ',' << per_point << ',' << aborted << ','
              << fmt(ok ? sum_true / ok : 0.0) << ',' << fmt(ok ? sum_priv / ok : 0.0) << ','
              << fmt(ok ? std::sqrt(sum_sq / ok) : 0.0) << "\n";
  }
  return 0;
}

struct CorrelateArgs {
  std::string edges, labels, cells, out;
  int villages = 46;
  std::vector<double> eps_totals;
  int replicates = 200;
  std::uint64_t seed = 0;
  int threads = 0;
};

int run_correlate(const CorrelateArgs& args) {
  std::vector<netdp::Village> villages;
  if (!args.edges.empty()) {
    if (args.cells.empty()) {
      throw std::runtime_error("correlate on ingested data needs --cells");
    }
    netdp::io::IngestPaths paths;
    paths.edges = args.edges;
    paths.labels = args.labels;
    paths.cells = args.cells;
    villages = netdp::villages_from_cells(netdp::io::ingest(paths));
  } else {
    netdp::VillagePanelSpec spec;
    spec.villages = args.villages;
    villages = netdp::synthesize_village_panel(spec, args.seed);
  }

  const netdp::CorrelationStudy study = netdp::run_correlation_study(
      villages, args.eps_totals, args.replicates, args.seed, args.threads);
  if (!args.out.empty()) {
    netdp::write_correlation_csv(args.out, study);
    std::cout << "wrote " << args.out << "\n";
  }
  for (const netdp::BudgetSummary& s : study.summaries) {
    std::cout << "eps_total=" << fmt(s.eps_total) << " signal_sd=" << fmt(s.signal_sd)
              << " mean_noise_sd=" << fmt(s.mean_noise_sd) << " snr=" << fmt(s.snr)
              << " mean_correlation=" << fmt(s.mean_correlation) << "\n";
  }
  return 0;
}

int run_oracle_check(std::uint64_t seed) {
  int failed = 0;
  auto report = [&failed](const char* name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failed;
  };

  // Four-node reference network: a-nodes 0, 1; b-nodes 2, 3.
  netdp::GraphBuilder b(4);
  b.add_edge(0, 2).add_edge(0, 3).add_edge(0, 1).add_edge(1, 3);
  b.binary_labels({netdp::BinaryLabel::a, netdp::BinaryLabel::a, netdp::BinaryLabel::b,
                   netdp::BinaryLabel::b});
  const netdp::LabeledGraph ref = b.build();

  const auto enumeration = netdp::oracle::enumerate_expectations(ref, 0.25);
  report("enumeration mass sums to one", std::abs(enumeration.probability_mass - 1.0) < 1e-12);
  report("per-node debias recovers the plain shares",
         std::abs(enumeration.expected_rho_tilde[0] - 2.0 / 3.0) < 1e-12 &&
             std::abs(enumeration.expected_rho_tilde[1] - 0.5) < 1e-12);
  report("weight sum is unbiased for the group size",
         std::abs(enumeration.expected_s0 - 2.0) < 1e-12);
  report("ratio of means matches the plain index",
         std::abs(enumeration.expected_ratio_of_means -
                  netdp::oracle::naive_cross_connectedness(ref)) < 1e-12);

  bool bound_ok = true;
  for (int trial = 0; trial < 5; ++trial) {
    netdp::RngStream rng = netdp::derive_stream(seed, {90, static_cast<std::uint64_t>(trial)});
    netdp::LabeledGraph g = netdp::gen_er(8, 0.5, rng);
    netdp::GraphBuilder gb(8);
    gb.add_edges(g.edges());
    gb.binary_labels(netdp::random_binary_labels(8, 0.5, rng));
    g = gb.build();
    const double p = 0.3;
    const auto priv = netdp::randomize_labels(g.binary_labels(), p, rng);
    const double worst = netdp::oracle::max_edge_sensitivity(g, priv.labels, p);
    if (worst > netdp::oracle::edge_sensitivity_bound(p) + 1e-9) bound_ok = false;
  }
  report("edge toggles stay under the sensitivity bound", bound_ok);

  {
    netdp::RngStream rng = netdp::derive_stream(seed, {91});
    const int n = 40;
    std::vector<double> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[static_cast<std::size_t>(i)] = rng.uniform01();
      y[static_cast<std::size_t>(i)] = rng.uniform01();
    }
    const netdp::oracle::ValueBounds xb{0.0, 1.0};
    const netdp::oracle::ValueBounds yb{0.0, 1.0};
    const auto found = netdp::oracle::suffstat_perturbation_search(x, y, xb, yb);
    const auto bound = netdp::suffstat_sensitivities(n, netdp::Interval{0.0, 1.0},
                                                     netdp::Interval{0.0, 1.0});
    report("suffstat perturbations stay under both bounds",
           found.max_dnvar <= bound.d1 + 1e-9 && found.max_dncov <= bound.d2 + 1e-9);
  }

  {
    const auto params = netdp::trunc_laplace_params(1.0, 1.0, 0.01);
    bool ok = true;
    double prev = -params.bound;
    for (int i = 1; i < 100; ++i) {
      const double q = netdp::trunc_laplace_quantile(params, i / 100.0);
      if (q < prev) ok = false;
      prev = q;
    }
    const double lo = netdp::trunc_laplace_quantile(params, 0.25);
    const double hi = netdp::trunc_laplace_quantile(params, 0.75);
    report("truncated noise quantiles are monotone and symmetric",
           ok && std::abs(lo + hi) < 1e-12);
  }

  return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"differentially private connectedness releases for edge-private networks"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "sample a synthetic labeled network");
  gen->add_option("--kind", gen_args.kind, "er | sbm2 | graphon")->required();
  gen->add_option("--n", gen_args.n, "node count")->required();
  gen->add_option("--p-edge", gen_args.p_edge, "er edge probability");
  gen->add_option("--avg-degree", gen_args.avg_degree, "target mean degree (er, graphon)");
  gen->add_option("--p-within", gen_args.p_within, "sbm2 within-block probability");
  gen->add_option("--p-between", gen_args.p_between, "sbm2 between-block probability");
  gen->add_option("--frac-a", gen_args.frac_a, "share of a-labeled nodes");
  gen->add_option("--decay", gen_args.h, "graphon decay rate");
  gen->add_option("--seed", gen_args.seed, "rng seed");
  gen->add_option("--out-prefix", gen_args.out_prefix, "output path prefix")->required();

  ReleaseBinaryArgs rb_args;
  auto* rb = app.add_subcommand("release-binary",
                                "private cross-group connectedness from binary labels");
  rb->add_option("--edges", rb_args.edges)->required();
  rb->add_option("--labels", rb_args.labels)->required();
  rb->add_option("--cells", rb_args.cells);
  rb->add_option("--eps-label", rb_args.eps_label, "label randomization budget")->required();
  rb->add_option("--eps-edge", rb_args.eps_edge, "edge noise budget")->required();
  rb->add_option("--seed", rb_args.seed);
  rb->add_flag("--per-cell", rb_args.per_cell, "add one row per cell after the _all row");
  rb->add_option("--cell-mode", rb_args.cell_mode, "ego | within");
  rb->add_flag("--clamp", rb_args.clamp, "clamp the released value to [0, 1]");
  rb->add_flag("--disable-noise", rb_args.disable_noise,
               "debias only, no randomization (diagnostics, not private)");
  rb->add_option("--out", rb_args.out, "write rows to a file instead of stdout");

  ReleaseMafrArgs rm_args;
  auto* rm = app.add_subcommand("release-mafr",
                                "private rank regression and mid-interval friend rank");
  rm->add_option("--edges", rm_args.edges)->required();
  rm->add_option("--labels", rm_args.labels)->required();
  rm->add_option("--cells", rm_args.cells);
  rm->add_option("--eps-label", rm_args.eps_label, "rank noise budget")->required();
  rm->add_option("--delta-label", rm_args.delta_label, "rank noise relaxation")->required();
  rm->add_option("--eps-edge", rm_args.eps_edge, "suffstat noise budget")->required();
  rm->add_option("--interval-lo", rm_args.interval_lo, "rank interval lower end");
  rm->add_option("--interval-width", rm_args.interval_width, "rank interval width");
  rm->add_option("--seed", rm_args.seed);
  rm->add_flag("--per-cell", rm_args.per_cell, "add one row per cell (induced subgraphs)");
  rm->add_flag("--swap-noise-pairing", rm_args.swap_noise_pairing,
               "pair each suffstat with the other one's sensitivity");
  rm->add_flag("--disable-noise", rm_args.disable_noise,
               "plain fit through the same code path (diagnostics, not private)");
  rm->add_option("--out", rm_args.out, "write rows to a file instead of stdout");

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "run a sweep described by a config file");
  sim->add_option("--config", sim_args.config, "key = value config path")->required();
  sim->add_option("--output", sim_args.output_override, "override the output csv path");
  sim->add_option("--seed", sim_args.seed_override, "override the seed");
  sim->add_option("--threads", sim_args.threads_override, "override the thread count");

  CorrelateArgs corr_args;
  auto* corr = app.add_subcommand(
      "correlate", "village panel: correlation of released and true connectedness");
  corr->add_option("--edges", corr_args.edges, "ingest a real panel instead of synthesizing");
  corr->add_option("--labels", corr_args.labels);
  corr->add_option("--cells", corr_args.cells, "cell file defining the villages");
  corr->add_option("--villages", corr_args.villages, "synthetic panel size");
  corr->add_option("--eps", corr_args.eps_totals, "total budgets, split equally")
      ->required()
      ->expected(-1);
  corr->add_option("--replicates", corr_args.replicates);
  corr->add_option("--seed", corr_args.seed);
  corr->add_option("--threads", corr_args.threads);
  corr->add_option("--out", corr_args.out, "write the per-village csv here");

  std::uint64_t oracle_seed = 0;
  auto* ochk = app.add_subcommand("oracle-check",
                                  "cross-check the estimators against brute-force oracles");
  ochk->add_option("--seed", oracle_seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_generate(gen_args);
    if (*rb) return run_release_binary(rb_args);
    if (*rm) return run_release_mafr(rm_args);
    if (*sim) return run_simulate(sim_args);
    if (*corr) return run_correlate(corr_args);
    if (*ochk) return run_oracle_check(oracle_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

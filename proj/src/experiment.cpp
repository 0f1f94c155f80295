#include "netdp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "netdp/dp_binary.hpp"
#include "netdp/dp_continuous.hpp"
#include "netdp/indices.hpp"
#include "netdp/parallel.hpp"
#include "netdp/rng.hpp"

namespace netdp {

namespace {

constexpr std::uint64_t kGraphStage = 1;
constexpr std::uint64_t kNoiseStage = 2;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void cfg_fail(const std::string& origin, const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

}  // namespace

KvConfig KvConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str(), path);
}

KvConfig KvConfig::from_text(const std::string& text, const std::string& origin) {
  KvConfig cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      cfg_fail(origin + ":" + std::to_string(lineno), "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) cfg_fail(origin + ":" + std::to_string(lineno), "empty key");
    if (!cfg.kv_.emplace(key, value).second) {
      cfg_fail(origin + ":" + std::to_string(lineno), "duplicate key '" + key + "'");
    }
  }
  return cfg;
}

bool KvConfig::has(const std::string& key) const { return kv_.count(key) != 0; }

std::string KvConfig::get_string(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) cfg_fail(origin_, "missing key '" + key + "'");
  return it->second;
}

std::string KvConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double KvConfig::get_double(const std::string& key) const {
  const std::string raw = get_string(key);
  char* end = nullptr;
  const double v = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0') {
    cfg_fail(origin_, "key '" + key + "' is not a number: '" + raw + "'");
  }
  return v;
}

double KvConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t KvConfig::get_int(const std::string& key) const {
  const std::string raw = get_string(key);
  char* end = nullptr;
  const long long v = std::strtoll(raw.c_str(), &end, 10);
  if (end == raw.c_str() || *end != '\0') {
    cfg_fail(origin_, "key '" + key + "' is not an integer: '" + raw + "'");
  }
  return v;
}

std::int64_t KvConfig::get_int(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool KvConfig::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string raw = get_string(key);
  if (raw == "true" || raw == "1" || raw == "yes" || raw == "on") return true;
  if (raw == "false" || raw == "0" || raw == "no" || raw == "off") return false;
  cfg_fail(origin_, "key '" + key + "' is not a boolean: '" + raw + "'");
}

std::vector<double> KvConfig::get_double_list(const std::string& key) const {
  std::string raw = get_string(key);
  std::replace(raw.begin(), raw.end(), ',', ' ');
  std::istringstream ss(raw);
  std::vector<double> out;
  std::string tok;
  while (ss >> tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
      cfg_fail(origin_, "key '" + key + "' has a non-numeric entry: '" + tok + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) cfg_fail(origin_, "key '" + key + "' lists no values");
  return out;
}

namespace {

SweepVar parse_sweep(const std::string& s) {
  if (s == "homophily") return SweepVar::homophily;
  if (s == "eps_total") return SweepVar::eps_total;
  if (s == "eps_split") return SweepVar::eps_split;
  if (s == "n") return SweepVar::n;
  if (s == "composition") return SweepVar::composition;
  if (s == "interval") return SweepVar::interval;
  throw std::runtime_error("unknown sweep '" + s + "'");
}

const char* sweep_name(SweepVar s) {
  switch (s) {
    case SweepVar::homophily: return "homophily";
    case SweepVar::eps_total: return "eps_total";
    case SweepVar::eps_split: return "eps_split";
    case SweepVar::n: return "n";
    case SweepVar::composition: return "composition";
    case SweepVar::interval: return "interval";
  }
  return "?";
}

TargetStat parse_stat(const std::string& s) {
  if (s == "connectedness") return TargetStat::binary_connectedness;
  if (s == "slope") return TargetStat::slope;
  if (s == "mafr") return TargetStat::mafr;
  throw std::runtime_error("unknown stat '" + s + "'");
}

const char* stat_name(TargetStat s) {
  switch (s) {
    case TargetStat::binary_connectedness: return "connectedness";
    case TargetStat::slope: return "slope";
    case TargetStat::mafr: return "mafr";
  }
  return "?";
}

GeneratorSpec::Kind parse_generator(const std::string& s) {
  if (s == "er") return GeneratorSpec::Kind::er;
  if (s == "sbm2") return GeneratorSpec::Kind::sbm2;
  if (s == "graphon") return GeneratorSpec::Kind::graphon;
  throw std::runtime_error("unknown generator '" + s + "'");
}

const char* generator_name(GeneratorSpec::Kind k) {
  switch (k) {
    case GeneratorSpec::Kind::er: return "er";
    case GeneratorSpec::Kind::sbm2: return "sbm2";
    case GeneratorSpec::Kind::graphon: return "graphon";
  }
  return "?";
}

std::int32_t to_node_count(double v) {
  if (!(v >= 1.0) || v != std::floor(v) || v > 2.0e9) {
    throw std::runtime_error("node count must be a positive integer, got " + fmt_double(v));
  }
  return static_cast<std::int32_t>(v);
}

// Shape of one sweep point: the generator after applying the sweep value,
// plus the rank interval in force.
struct PointSetup {
  GeneratorSpec gen;
  Interval interval{0.0, 0.0};
};

PointSetup setup_for(const ExperimentSpec& spec, double v) {
  PointSetup p;
  p.gen = spec.gen;
  p.interval = Interval{spec.interval_lo, spec.interval_lo + spec.interval_width};
  switch (spec.sweep) {
    case SweepVar::homophily:
      if (spec.gen.kind == GeneratorSpec::Kind::sbm2) {
        p.gen.p_within = v;
        p.gen.p_between = spec.p_sum - v;
        if (!(p.gen.p_between >= 0.0) || v > 1.0 || v < 0.0) {
          throw std::runtime_error("homophily point " + fmt_double(v) +
                                   " leaves p_between outside [0, 1]");
        }
      } else if (spec.gen.kind == GeneratorSpec::Kind::graphon) {
        p.gen.h = v;
      } else {
        throw std::runtime_error("homophily sweep needs an sbm2 or graphon generator");
      }
      break;
    case SweepVar::n:
      p.gen.n = to_node_count(v);
      break;
    case SweepVar::interval:
      p.interval = Interval{v, v + spec.interval_width};
      break;
    case SweepVar::eps_total:
    case SweepVar::eps_split:
    case SweepVar::composition:
      break;
  }
  return p;
}

}  // namespace

ExperimentSpec ExperimentSpec::from_config(const KvConfig& cfg) {
  ExperimentSpec spec;
  spec.sweep = parse_sweep(cfg.get_string("sweep"));
  spec.values = cfg.get_double_list("values");
  spec.stat = parse_stat(cfg.get_string("stat"));

  spec.gen.kind = parse_generator(cfg.get_string("generator"));
  spec.gen.n = static_cast<std::int32_t>(cfg.get_int("n", 0));
  spec.gen.p_edge = cfg.get_double("p_edge", -1.0);
  spec.gen.avg_degree = cfg.get_double("avg_degree", -1.0);
  spec.gen.p_within = cfg.get_double("p_within", 0.0);
  spec.gen.p_between = cfg.get_double("p_between", 0.0);
  spec.gen.frac_a = cfg.get_double("frac_a", 0.5);
  spec.gen.h = cfg.get_double("h", 0.0);
  spec.gen.attach_binary_labels = spec.stat == TargetStat::binary_connectedness &&
                                  spec.gen.kind == GeneratorSpec::Kind::er;
  spec.p_sum = cfg.get_double("p_sum", 0.0);

  spec.eps_total = cfg.get_double("eps_total", 0.0);
  spec.split = cfg.get_double("split", 0.5);
  spec.delta_label = cfg.get_double("delta_label", 0.0);
  spec.interval_lo = cfg.get_double("interval_lo", 0.0);
  spec.interval_width = cfg.get_double("interval_width", 0.25);

  spec.graphs_per_point = static_cast<int>(cfg.get_int("graphs_per_point", 1));
  spec.noise_reps = static_cast<int>(cfg.get_int("noise_reps", 1));
  spec.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 0));
  spec.threads = static_cast<int>(cfg.get_int("threads", 0));
  spec.clamp = cfg.get_bool("clamp", false);
  spec.record_timing = cfg.get_bool("record_timing", false);
  spec.output_path = cfg.get_string("output", "");

  if (spec.stat == TargetStat::binary_connectedness &&
      (spec.delta_label != 0.0 || spec.sweep == SweepVar::composition)) {
    throw std::runtime_error("the connectedness release takes no relaxation parameter");
  }
  if (spec.stat == TargetStat::binary_connectedness &&
      spec.gen.kind == GeneratorSpec::Kind::graphon) {
    throw std::runtime_error("connectedness needs a binary-labeled generator (er or sbm2)");
  }
  if (spec.stat != TargetStat::binary_connectedness &&
      spec.gen.kind != GeneratorSpec::Kind::graphon) {
    throw std::runtime_error("slope and mafr need the graphon generator (rank labels)");
  }
  if (spec.stat != TargetStat::binary_connectedness && spec.sweep != SweepVar::composition &&
      !(spec.delta_label > 0.0)) {
    throw std::runtime_error("rank releases need delta_label > 0");
  }
  if (spec.graphs_per_point < 1 || spec.noise_reps < 1) {
    throw std::runtime_error("graphs_per_point and noise_reps must be >= 1");
  }
  if (spec.sweep != SweepVar::n && spec.gen.n < 1) {
    throw std::runtime_error("n must be set when the sweep does not provide it");
  }
  return spec;
}

bool ExperimentSpec::graphs_shared_across_points() const {
  switch (sweep) {
    case SweepVar::eps_total:
    case SweepVar::eps_split:
    case SweepVar::composition:
    case SweepVar::interval:
      return true;
    case SweepVar::homophily:
    case SweepVar::n:
      return false;
  }
  return false;
}

PrivacyBudget ExperimentSpec::budget_for(double sweep_value) const {
  PrivacyBudget b;
  double total = eps_total;
  double frac = split;
  double delta = delta_label;
  switch (sweep) {
    case SweepVar::eps_total: total = sweep_value; break;
    case SweepVar::eps_split: frac = sweep_value; break;
    case SweepVar::composition: delta = sweep_value; break;
    default: break;
  }
  if (!(total > 0.0)) throw std::runtime_error("eps_total must be positive");
  if (!(frac > 0.0 && frac < 1.0)) throw std::runtime_error("split must lie in (0, 1)");
  b.eps_label = frac * total;
  b.eps_edge = (1.0 - frac) * total;
  b.delta_label = delta;
  return b;
}

RunOutput run_experiment(const ExperimentSpec& spec) {
  if (spec.values.empty()) throw std::runtime_error("run_experiment: no sweep values");
  const int points = static_cast<int>(spec.values.size());
  const int graphs = spec.graphs_per_point;
  const int reps = spec.noise_reps;

  RunOutput out;
  out.rows.resize(static_cast<std::size_t>(points) * static_cast<std::size_t>(graphs) *
                  static_cast<std::size_t>(reps));

  const bool shared = spec.graphs_shared_across_points();

  parallel_for(points * graphs, spec.threads, [&](int task) {
    const int point = task / graphs;
    const int graph_rep = task % graphs;
    const double v = spec.values[static_cast<std::size_t>(point)];
    const PointSetup setup = setup_for(spec, v);
    const PrivacyBudget budget = spec.budget_for(v);

    RngStream graph_rng = derive_stream(
        spec.seed, {kGraphStage, shared ? 0u : static_cast<std::uint64_t>(point) + 1,
                    static_cast<std::uint64_t>(graph_rep)});
    const LabeledGraph g = generate(setup.gen, graph_rng);

    double true_stat = 0.0;
    switch (spec.stat) {
      case TargetStat::binary_connectedness:
        true_stat = cross_connectedness(g).value;
        break;
      case TargetStat::slope:
      case TargetStat::mafr: {
        const auto x = g.continuous_labels();
        const std::vector<double> y = neighbor_mean(g, x);
        const OlsFit fit = ols(x, y);
        true_stat = spec.stat == TargetStat::slope
                        ? fit.beta
                        : mafr(fit, setup.interval.lo, setup.interval.hi);
        break;
      }
    }

    for (int r = 0; r < reps; ++r) {
      // Deliberately independent of `point`: sweep points reuse the same
      // noise draws, so curves across points move together.
      RngStream noise_rng = derive_stream(
          spec.seed, {kNoiseStage, static_cast<std::uint64_t>(graph_rep),
                      static_cast<std::uint64_t>(r)});
      const auto t0 = std::chrono::steady_clock::now();

      double private_stat = std::numeric_limits<double>::quiet_NaN();
      bool aborted = false;
      if (spec.stat == TargetStat::binary_connectedness) {
        BinaryReleaseOptions opts;
        opts.clamp = spec.clamp;
        const BinaryDpRelease rel = release_binary(g, budget, noise_rng, opts);
        private_stat = rel.value;
        aborted = rel.aborted;
      } else {
        MafrReleaseOptions opts;
        opts.interval = setup.interval;
        const MafrRelease rel = release_mafr(g, budget, noise_rng, opts);
        private_stat = spec.stat == TargetStat::slope ? rel.beta_tilde : rel.mafr_value;
        aborted = rel.aborted;
        if (aborted) private_stat = std::numeric_limits<double>::quiet_NaN();
      }

      const auto t1 = std::chrono::steady_clock::now();
      ResultRow& row =
          out.rows[(static_cast<std::size_t>(point) * static_cast<std::size_t>(graphs) +
                    static_cast<std::size_t>(graph_rep)) *
                       static_cast<std::size_t>(reps) +
                   static_cast<std::size_t>(r)];
      row.sweep_value = v;
      row.graph_rep = graph_rep;
      row.noise_rep = r;
      row.true_stat = true_stat;
      row.private_stat = private_stat;
      const double err = private_stat - true_stat;
      row.sq_error = err * err;
      row.aborted = aborted;
      row.millis =
          spec.record_timing
              ? std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
                    .count()
              : 0.0;
    }
  });

  return out;
}

void write_results_csv(const std::string& path, const ExperimentSpec& spec,
                       const RunOutput& out) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << "# netdp-results-v1\n";
  os << "# stat=" << stat_name(spec.stat) << " sweep=" << sweep_name(spec.sweep)
     << " generator=" << generator_name(spec.gen.kind) << " n=" << spec.gen.n
     << " eps_total=" << fmt_double(spec.eps_total) << " split=" << fmt_double(spec.split)
     << " delta_label=" << fmt_double(spec.delta_label)
     << " graphs_per_point=" << spec.graphs_per_point << " noise_reps=" << spec.noise_reps
     << " seed=" << spec.seed << "\n";
  os << "sweep_value,graph_rep,noise_rep,true_stat,private_stat,sq_error,aborted";
  if (spec.record_timing) os << ",millis";
  os << "\n";
  for (const ResultRow& row : out.rows) {
    os << fmt_double(row.sweep_value) << ',' << row.graph_rep << ',' << row.noise_rep << ','
       << fmt_double(row.true_stat) << ',' << fmt_double(row.private_stat) << ','
       << fmt_double(row.sq_error) << ',' << (row.aborted ? 1 : 0);
    if (spec.record_timing) os << ',' << fmt_double(row.millis);
    os << "\n";
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace netdp

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "netdp/netgen.hpp"
#include "netdp/noise.hpp"

namespace netdp {

// Plain key = value configuration file ('#' comments). Values keep their
// raw text; typed getters parse on demand and report the offending key.
class KvConfig {
 public:
  static KvConfig load(const std::string& path);
  static KvConfig from_text(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::string origin_;
  std::map<std::string, std::string> kv_;
};

enum class SweepVar { homophily, eps_total, eps_split, n, composition, interval };
enum class TargetStat { binary_connectedness, slope, mafr };

struct ExperimentSpec {
  SweepVar sweep = SweepVar::n;
  std::vector<double> values;
  TargetStat stat = TargetStat::binary_connectedness;

  GeneratorSpec gen;
  double p_sum = 0.0;  // homophily sweep: p_between = p_sum - p_within

  double eps_total = 0.0;
  double split = 0.5;  // eps_label = split * eps_total
  double delta_label = 0.0;
  double interval_lo = 0.0;
  double interval_width = 0.25;

  int graphs_per_point = 1;
  int noise_reps = 1;
  std::uint64_t seed = 0;
  int threads = 0;
  bool clamp = false;
  bool record_timing = false;

  std::string output_path;

  static ExperimentSpec from_config(const KvConfig& cfg);

  // eps sweeps and interval sweeps reuse one fixed graph set across sweep
  // points; graph-shape sweeps regenerate per point.
  bool graphs_shared_across_points() const;
  PrivacyBudget budget_for(double sweep_value) const;
};

struct ResultRow {
  double sweep_value = 0.0;
  int graph_rep = 0;
  int noise_rep = 0;
  double true_stat = 0.0;
  double private_stat = 0.0;
  double sq_error = 0.0;
  bool aborted = false;
  double millis = 0.0;
};

struct RunOutput {
  std::vector<ResultRow> rows;  // point-major, then graph, then noise rep
};

// Noise streams are derived from (seed, noise stage, graph index, noise
// index) and deliberately ignore the sweep point, so sweep points share
// common random numbers wherever sizes allow.
RunOutput run_experiment(const ExperimentSpec& spec);

// Versioned CSV, floats at 17 significant digits. Byte-identical across
// runs of the same spec + seed unless timing capture is on.
void write_results_csv(const std::string& path, const ExperimentSpec& spec,
                       const RunOutput& out);

}  // namespace netdp

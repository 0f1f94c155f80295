#include "netdp/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace netdp {
namespace io {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void fail(const std::string& path, std::int64_t line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

// Strips comments, splits on whitespace. Empty result means skip the line.
std::vector<std::string> tokenize(const std::string& line) {
  const auto hash = line.find('#');
  std::istringstream ss(hash == std::string::npos ? line : line.substr(0, hash));
  std::vector<std::string> tokens;
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

std::int64_t parse_index(const std::string& tok, const std::string& path, std::int64_t line) {
  char* end = nullptr;
  const long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0' || v < 0) {
    fail(path, line, "expected a non-negative node index, got '" + tok + "'");
  }
  return v;
}

double parse_real(const std::string& tok, const std::string& path, std::int64_t line) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0') {
    fail(path, line, "expected a number, got '" + tok + "'");
  }
  return v;
}

}  // namespace

void write_edge_list(const LabeledGraph& g, const std::string& path) {
  auto out = open_out(path);
  out << "# i j [weight]\n";
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (e.weight != 1.0) out << ' ' << fmt_double(e.weight);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_labels(const LabeledGraph& g, const std::string& path) {
  auto out = open_out(path);
  if (g.has_binary_labels()) {
    out << "# i a|b\n";
    const auto labels = g.binary_labels();
    for (std::int32_t i = 0; i < g.node_count(); ++i) {
      out << i << ' ' << (labels[static_cast<std::size_t>(i)] == BinaryLabel::a ? 'a' : 'b')
          << '\n';
    }
  } else if (g.has_continuous_labels()) {
    out << "# i rank\n";
    const auto ranks = g.continuous_labels();
    for (std::int32_t i = 0; i < g.node_count(); ++i) {
      out << i << ' ' << fmt_double(ranks[static_cast<std::size_t>(i)]) << '\n';
    }
  } else {
    throw std::runtime_error("write_labels: graph carries no labels");
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_cells(const LabeledGraph& g, const std::string& path) {
  auto out = open_out(path);
  out << "# cell_id i\n";
  for (const auto& [id, members] : g.cells()) {
    for (std::int32_t i : members) out << id << ' ' << i << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

LabeledGraph ingest(const IngestPaths& paths) {
  // Labels first: they define the node count.
  std::vector<BinaryLabel> binary;
  std::vector<double> ranks;
  std::vector<std::uint8_t> seen;
  std::int64_t max_index = -1;
  enum class LabelKind { unknown, binary, real } kind = LabelKind::unknown;
  {
    auto in = open_in(paths.labels);
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto tokens = tokenize(line);
      if (tokens.empty()) continue;
      if (tokens.size() != 2) fail(paths.labels, lineno, "expected 'i a|b' or 'i rank'");
      const std::int64_t i = parse_index(tokens[0], paths.labels, lineno);
      if (i > (std::int64_t{1} << 31) - 2) fail(paths.labels, lineno, "node index too large");

      const bool is_letter = tokens[1] == "a" || tokens[1] == "b";
      if (kind == LabelKind::unknown) kind = is_letter ? LabelKind::binary : LabelKind::real;
      if (is_letter != (kind == LabelKind::binary)) {
        fail(paths.labels, lineno, "mixed binary and real labels in one file");
      }

      if (static_cast<std::size_t>(i) >= seen.size()) {
        seen.resize(static_cast<std::size_t>(i) + 1, 0);
        if (kind == LabelKind::binary)
          binary.resize(static_cast<std::size_t>(i) + 1, BinaryLabel::a);
        else
          ranks.resize(static_cast<std::size_t>(i) + 1, 0.0);
      }
      if (seen[static_cast<std::size_t>(i)]) {
        fail(paths.labels, lineno, "node " + tokens[0] + " labeled twice");
      }
      seen[static_cast<std::size_t>(i)] = 1;
      if (kind == LabelKind::binary) {
        binary[static_cast<std::size_t>(i)] =
            tokens[1] == "a" ? BinaryLabel::a : BinaryLabel::b;
      } else {
        const double r = parse_real(tokens[1], paths.labels, lineno);
        if (!(r >= 0.0 && r <= 1.0)) fail(paths.labels, lineno, "rank outside [0, 1]");
        ranks[static_cast<std::size_t>(i)] = r;
      }
      max_index = std::max(max_index, i);
    }
    if (max_index < 0) fail(paths.labels, lineno, "label file is empty");
    for (std::int64_t i = 0; i <= max_index; ++i) {
      if (!seen[static_cast<std::size_t>(i)]) {
        fail(paths.labels, lineno, "node " + std::to_string(i) + " has no label");
      }
    }
  }
  const auto n = static_cast<std::int32_t>(max_index + 1);

  GraphBuilder builder(n);
  if (kind == LabelKind::binary)
    builder.binary_labels(std::move(binary));
  else
    builder.continuous_labels(std::move(ranks));

  {
    auto in = open_in(paths.edges);
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto tokens = tokenize(line);
      if (tokens.empty()) continue;
      if (tokens.size() != 2 && tokens.size() != 3) {
        fail(paths.edges, lineno, "expected 'i j [weight]'");
      }
      const std::int64_t i = parse_index(tokens[0], paths.edges, lineno);
      const std::int64_t j = parse_index(tokens[1], paths.edges, lineno);
      if (i >= n || j >= n) {
        fail(paths.edges, lineno, "edge endpoint outside the labeled node range");
      }
      const double w = tokens.size() == 3 ? parse_real(tokens[2], paths.edges, lineno) : 1.0;
      // Structural problems (self-loops, duplicates, bad weights) surface
      // from build() below; only range errors are attributable to a line.
      builder.add_edge(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j), w);
    }
  }

  if (paths.cells) {
    auto in = open_in(*paths.cells);
    std::map<std::string, std::vector<std::int32_t>> cells;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto tokens = tokenize(line);
      if (tokens.empty()) continue;
      if (tokens.size() != 2) fail(*paths.cells, lineno, "expected 'cell_id i'");
      const std::int64_t i = parse_index(tokens[1], *paths.cells, lineno);
      if (i >= n) fail(*paths.cells, lineno, "cell member outside the labeled node range");
      cells[tokens[0]].push_back(static_cast<std::int32_t>(i));
    }
    for (auto& [id, members] : cells) builder.cell(id, std::move(members));
  }

  try {
    return builder.build();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("ingest: ") + e.what());
  }
}

}  // namespace io
}  // namespace netdp

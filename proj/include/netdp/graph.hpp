#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace netdp {

enum class BinaryLabel : std::uint8_t { a = 0, b = 1 };

struct Edge {
  std::int32_t u = 0;
  std::int32_t v = 0;
  double weight = 1.0;
};

enum class CellMode { within_cell, ego_to_all };

// Immutable undirected labeled network. Adjacency is CSR with weights;
// degrees are weighted sums. Invariants enforced at build time: no
// self-loops, no duplicate pairs, weights > 0 (zero-weight input edges are
// dropped, matching the convention that the neighborhood of i is
// {j : e_ij > 0}).
class LabeledGraph {
 public:
  std::int32_t node_count() const { return n_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }

  double degree(std::int32_t i) const { return degree_[check(i)]; }

  std::span<const std::int32_t> neighbors(std::int32_t i) const {
    check(i);
    return {adj_.data() + offsets_[i], static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
  }

  std::span<const double> edge_weights(std::int32_t i) const {
    check(i);
    return {adj_weight_.data() + offsets_[i],
            static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
  }

  bool has_binary_labels() const { return !binary_.empty(); }
  bool has_continuous_labels() const { return !ranks_.empty(); }

  // Throws std::logic_error when the label kind is absent.
  std::span<const BinaryLabel> binary_labels() const;
  std::span<const double> continuous_labels() const;

  const std::map<std::string, std::vector<std::int32_t>>& cells() const { return cells_; }
  bool has_cell(const std::string& id) const { return cells_.count(id) != 0; }
  const std::vector<std::int32_t>& cell_members(const std::string& id) const;

  // Canonical edge list: u < v, ascending lexicographic order.
  std::span<const Edge> edges() const { return edges_; }

 private:
  friend class GraphBuilder;
  std::int32_t check(std::int32_t i) const;

  std::int32_t n_ = 0;
  std::vector<std::int64_t> offsets_;
  std::vector<std::int32_t> adj_;
  std::vector<double> adj_weight_;
  std::vector<double> degree_;
  std::vector<Edge> edges_;
  std::vector<BinaryLabel> binary_;
  std::vector<double> ranks_;
  std::map<std::string, std::vector<std::int32_t>> cells_;
};

// Single-use builder; build() validates everything and produces the
// immutable graph. All estimator code takes const LabeledGraph&.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::int32_t node_count);

  GraphBuilder& add_edge(std::int32_t i, std::int32_t j, double weight = 1.0);
  GraphBuilder& add_edges(std::span<const Edge> edges);
  GraphBuilder& binary_labels(std::vector<BinaryLabel> labels);
  GraphBuilder& continuous_labels(std::vector<double> ranks);
  GraphBuilder& cell(const std::string& id, std::vector<std::int32_t> members);

  LabeledGraph build();

 private:
  std::int32_t n_ = 0;
  bool built_ = false;
  std::vector<Edge> edges_;
  std::vector<BinaryLabel> binary_;
  std::vector<double> ranks_;
  std::map<std::string, std::vector<std::int32_t>> cells_;
};

// Resolved cell restriction. within_cell confines both the averaged index
// set and every share denominator to cell members; ego_to_all averages over
// cell members while their shares keep counting all incident edges.
struct CellSelection {
  std::vector<std::int32_t> members;  // sorted, deduplicated
  std::vector<std::uint8_t> in_cell;  // size n node mask
  CellMode mode = CellMode::ego_to_all;
};

CellSelection resolve_cell(const LabeledGraph& g, const std::string& cell_id, CellMode mode);
CellSelection full_graph_selection(const LabeledGraph& g,
                                   CellMode mode = CellMode::ego_to_all);

// Subgraph induced by `nodes` (relabeled 0..k-1 in the given order after
// sorting/dedup). Labels carry over; cells do not.
LabeledGraph induced_subgraph(const LabeledGraph& g, std::span<const std::int32_t> nodes);

// FNV-1a over node count and the canonical weighted edge list; used by
// round-trip tests and the CLI.
std::uint64_t graph_hash(const LabeledGraph& g);

}  // namespace netdp

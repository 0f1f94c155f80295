#include "netdp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <string>

namespace netdp {

std::int32_t LabeledGraph::check(std::int32_t i) const {
  if (i < 0 || i >= n_) {
    throw std::out_of_range("node index " + std::to_string(i) + " outside [0, " +
                            std::to_string(n_) + ")");
  }
  return i;
}

std::span<const BinaryLabel> LabeledGraph::binary_labels() const {
  if (binary_.empty()) {
    throw std::logic_error("graph has no binary labels");
  }
  return binary_;
}

std::span<const double> LabeledGraph::continuous_labels() const {
  if (ranks_.empty()) {
    throw std::logic_error("graph has no continuous labels");
  }
  return ranks_;
}

const std::vector<std::int32_t>& LabeledGraph::cell_members(const std::string& id) const {
  auto it = cells_.find(id);
  if (it == cells_.end()) {
    throw std::invalid_argument("unknown cell id: " + id);
  }
  return it->second;
}

GraphBuilder::GraphBuilder(std::int32_t node_count) : n_(node_count) {
  if (node_count < 0) {
    throw std::invalid_argument("node count must be non-negative");
  }
}

GraphBuilder& GraphBuilder::add_edge(std::int32_t i, std::int32_t j, double weight) {
  edges_.push_back(Edge{i, j, weight});
  return *this;
}

GraphBuilder& GraphBuilder::add_edges(std::span<const Edge> edges) {
  edges_.insert(edges_.end(), edges.begin(), edges.end());
  return *this;
}

GraphBuilder& GraphBuilder::binary_labels(std::vector<BinaryLabel> labels) {
  binary_ = std::move(labels);
  return *this;
}

GraphBuilder& GraphBuilder::continuous_labels(std::vector<double> ranks) {
  ranks_ = std::move(ranks);
  return *this;
}

GraphBuilder& GraphBuilder::cell(const std::string& id, std::vector<std::int32_t> members) {
  if (id.empty()) {
    throw std::invalid_argument("cell id must be non-empty");
  }
  if (!cells_.emplace(id, std::move(members)).second) {
    throw std::invalid_argument("cell id repeated: " + id);
  }
  return *this;
}

LabeledGraph GraphBuilder::build() {
  if (built_) {
    throw std::logic_error("GraphBuilder::build called twice");
  }
  built_ = true;

  LabeledGraph g;
  g.n_ = n_;

  for (auto& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ") out of range for " +
                                  std::to_string(n_) + " nodes");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge (" + std::to_string(e.u) + ", " +
                                  std::to_string(e.v) + ") has invalid weight");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }

  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t k = 1; k < edges_.size(); ++k) {
    if (edges_[k].u == edges_[k - 1].u && edges_[k].v == edges_[k - 1].v) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(edges_[k].u) +
                                  ", " + std::to_string(edges_[k].v) + ")");
    }
  }
  // Zero-weight pairs are legal input but carry no adjacency.
  std::erase_if(edges_, [](const Edge& e) { return e.weight == 0.0; });

  g.offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& e : edges_) {
    ++g.offsets_[static_cast<std::size_t>(e.u) + 1];
    ++g.offsets_[static_cast<std::size_t>(e.v) + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

  g.adj_.resize(static_cast<std::size_t>(g.offsets_[n_]));
  g.adj_weight_.resize(g.adj_.size());
  std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : edges_) {
    g.adj_[static_cast<std::size_t>(cursor[e.u])] = e.v;
    g.adj_weight_[static_cast<std::size_t>(cursor[e.u]++)] = e.weight;
    g.adj_[static_cast<std::size_t>(cursor[e.v])] = e.u;
    g.adj_weight_[static_cast<std::size_t>(cursor[e.v]++)] = e.weight;
  }
  // Rows need sorting: reversed copies arrive out of order.
  for (std::int32_t i = 0; i < n_; ++i) {
    const auto lo = static_cast<std::size_t>(g.offsets_[i]);
    const auto hi = static_cast<std::size_t>(g.offsets_[i + 1]);
    std::vector<std::pair<std::int32_t, double>> row;
    row.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) row.emplace_back(g.adj_[k], g.adj_weight_[k]);
    std::sort(row.begin(), row.end());
    for (std::size_t k = lo; k < hi; ++k) {
      g.adj_[k] = row[k - lo].first;
      g.adj_weight_[k] = row[k - lo].second;
    }
  }

  g.degree_.assign(static_cast<std::size_t>(n_), 0.0);
  for (const auto& e : edges_) {
    g.degree_[static_cast<std::size_t>(e.u)] += e.weight;
    g.degree_[static_cast<std::size_t>(e.v)] += e.weight;
  }

  if (!binary_.empty() && static_cast<std::int32_t>(binary_.size()) != n_) {
    throw std::invalid_argument("binary label vector covers " +
                                std::to_string(binary_.size()) + " nodes, expected " +
                                std::to_string(n_));
  }
  if (!ranks_.empty()) {
    if (static_cast<std::int32_t>(ranks_.size()) != n_) {
      throw std::invalid_argument("continuous label vector covers " +
                                  std::to_string(ranks_.size()) + " nodes, expected " +
                                  std::to_string(n_));
    }
    for (std::size_t i = 0; i < ranks_.size(); ++i) {
      if (!(ranks_[i] >= 0.0 && ranks_[i] <= 1.0)) {
        throw std::invalid_argument("continuous label for node " + std::to_string(i) +
                                    " outside [0, 1]");
      }
    }
  }

  for (auto& [id, members] : cells_) {
    for (std::int32_t m : members) {
      if (m < 0 || m >= n_) {
        throw std::invalid_argument("cell " + id + " references node " +
                                    std::to_string(m) + " outside [0, " +
                                    std::to_string(n_) + ")");
      }
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.empty()) {
      throw std::invalid_argument("cell " + id + " is empty");
    }
  }

  g.edges_ = std::move(edges_);
  g.binary_ = std::move(binary_);
  g.ranks_ = std::move(ranks_);
  g.cells_ = std::move(cells_);
  return g;
}

CellSelection resolve_cell(const LabeledGraph& g, const std::string& cell_id,
                           CellMode mode) {
  const auto& members = g.cell_members(cell_id);
  CellSelection sel;
  sel.members = members;
  sel.mode = mode;
  sel.in_cell.assign(static_cast<std::size_t>(g.node_count()), 0);
  for (std::int32_t m : members) sel.in_cell[static_cast<std::size_t>(m)] = 1;
  return sel;
}

CellSelection full_graph_selection(const LabeledGraph& g, CellMode mode) {
  CellSelection sel;
  sel.mode = mode;
  sel.members.resize(static_cast<std::size_t>(g.node_count()));
  std::iota(sel.members.begin(), sel.members.end(), 0);
  sel.in_cell.assign(sel.members.size(), 1);
  return sel;
}

LabeledGraph induced_subgraph(const LabeledGraph& g, std::span<const std::int32_t> nodes) {
  std::vector<std::int32_t> keep(nodes.begin(), nodes.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  std::vector<std::int32_t> remap(static_cast<std::size_t>(g.node_count()), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] < 0 || keep[k] >= g.node_count()) {
      throw std::invalid_argument("induced_subgraph: node out of range");
    }
    remap[static_cast<std::size_t>(keep[k])] = static_cast<std::int32_t>(k);
  }

  GraphBuilder b(static_cast<std::int32_t>(keep.size()));
  for (const Edge& e : g.edges()) {
    const std::int32_t u = remap[static_cast<std::size_t>(e.u)];
    const std::int32_t v = remap[static_cast<std::size_t>(e.v)];
    if (u >= 0 && v >= 0) b.add_edge(u, v, e.weight);
  }
  if (g.has_binary_labels()) {
    auto labels = g.binary_labels();
    std::vector<BinaryLabel> sub;
    sub.reserve(keep.size());
    for (std::int32_t old : keep) sub.push_back(labels[static_cast<std::size_t>(old)]);
    b.binary_labels(std::move(sub));
  }
  if (g.has_continuous_labels()) {
    auto ranks = g.continuous_labels();
    std::vector<double> sub;
    sub.reserve(keep.size());
    for (std::int32_t old : keep) sub.push_back(ranks[static_cast<std::size_t>(old)]);
    b.continuous_labels(std::move(sub));
  }
  return b.build();
}

std::uint64_t graph_hash(const LabeledGraph& g) {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 0x100000001B3ULL;
    }
  };
  const std::int64_t n = g.node_count();
  mix(&n, sizeof n);
  for (const Edge& e : g.edges()) {
    mix(&e.u, sizeof e.u);
    mix(&e.v, sizeof e.v);
    mix(&e.weight, sizeof e.weight);
  }
  return h;
}

}  // namespace netdp

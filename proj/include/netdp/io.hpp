#pragma once

#include <optional>
#include <string>

#include "netdp/graph.hpp"

namespace netdp {
namespace io {

// Text formats, whitespace separated, '#' starts a comment:
//   edges:  "i j [weight]"       (weight defaults to 1)
//   labels: "i a" / "i b"        or "i <real in [0,1]>"
//   cells:  "cell_id i"
// The label file defines the node count and must cover 0..n-1 exactly once.
// Parse errors report file and line number.

void write_edge_list(const LabeledGraph& g, const std::string& path);
void write_labels(const LabeledGraph& g, const std::string& path);
void write_cells(const LabeledGraph& g, const std::string& path);

struct IngestPaths {
  std::string edges;
  std::string labels;
  std::optional<std::string> cells;
};

LabeledGraph ingest(const IngestPaths& paths);

}  // namespace io
}  // namespace netdp

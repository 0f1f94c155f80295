#include "netdp/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace netdp {

namespace {

// Number of failures before the next success in a Bernoulli(p) sequence.
// Returns a huge skip when p is so small the jump overshoots any row.
std::int64_t geometric_skip(double p, RngStream& rng) {
  if (p >= 1.0) return 0;
  const double u = rng.uniform_open();
  const double s = std::floor(std::log(u) / std::log1p(-p));
  if (!(s < 4.0e18)) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(s);
}

// Appends Bernoulli(p) edges between u and the index range [from, to).
void fill_row(std::vector<Edge>& edges, std::int32_t u, std::int32_t from,
              std::int32_t to, double p, RngStream& rng) {
  if (p <= 0.0) return;
  std::int64_t j = from;
  while (true) {
    const std::int64_t skip = geometric_skip(p, rng);
    if (skip >= to - j) break;
    j += skip;
    edges.push_back(Edge{u, static_cast<std::int32_t>(j), 1.0});
    ++j;
    if (j >= to) break;
  }
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

LabeledGraph gen_er(std::int32_t n, double p_edge, RngStream& rng) {
  if (n < 0) throw std::invalid_argument("gen_er: n must be non-negative");
  check_probability(p_edge, "gen_er: p_edge");
  std::vector<Edge> edges;
  if (p_edge > 0.0 && n > 1) {
    edges.reserve(static_cast<std::size_t>(p_edge * n * (n - 1) / 2 * 1.1) + 16);
    for (std::int32_t u = 0; u + 1 < n; ++u) {
      fill_row(edges, u, u + 1, n, p_edge, rng);
    }
  }
  GraphBuilder b(n);
  b.add_edges(edges);
  return b.build();
}

LabeledGraph gen_sbm2(std::int32_t n, double p_within, double p_between, double frac_a,
                      RngStream& rng) {
  if (n < 0) throw std::invalid_argument("gen_sbm2: n must be non-negative");
  check_probability(p_within, "gen_sbm2: p_within");
  check_probability(p_between, "gen_sbm2: p_between");
  if (!(frac_a >= 0.0 && frac_a <= 1.0)) {
    throw std::invalid_argument("gen_sbm2: frac_a must lie in [0, 1]");
  }
  const auto n_a = static_cast<std::int32_t>(std::floor(frac_a * n));

  std::vector<Edge> edges;
  for (std::int32_t u = 0; u < n; ++u) {
    const bool u_in_a = u < n_a;
    const std::int32_t block_end = u_in_a ? n_a : n;
    // Same-block neighbors above u, then the cross block for a-nodes.
    fill_row(edges, u, u + 1, block_end, p_within, rng);
    if (u_in_a) {
      fill_row(edges, u, n_a, n, p_between, rng);
    }
  }

  std::vector<BinaryLabel> labels(static_cast<std::size_t>(n), BinaryLabel::b);
  for (std::int32_t i = 0; i < n_a; ++i) labels[static_cast<std::size_t>(i)] = BinaryLabel::a;

  GraphBuilder b(n);
  b.add_edges(edges);
  b.binary_labels(std::move(labels));
  return b.build();
}

double graphon_kernel_normalizer(double h) {
  if (!(h >= 0.0)) {
    throw std::invalid_argument("graphon_kernel_normalizer: h must be >= 0");
  }
  if (h < 1e-4) {
    // Series around h = 0; the closed form cancels catastrophically there.
    return 1.0 - h / 3.0 + h * h / 12.0 - h * h * h / 60.0;
  }
  return 2.0 / h - 2.0 / (h * h) * (-std::expm1(-h));
}

LabeledGraph gen_graphon(std::int32_t n, double d_bar, double h, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("gen_graphon: n must be positive");
  if (!(d_bar >= 0.0)) throw std::invalid_argument("gen_graphon: d_bar must be >= 0");
  if (!(h >= 0.0)) throw std::invalid_argument("gen_graphon: h must be >= 0");

  std::vector<double> x(static_cast<std::size_t>(n));
  for (auto& v : x) v = rng.uniform01();

  // Peak pair probability sits at distance 0.
  const double k_peak = n > 1 ? d_bar / ((n - 1) * graphon_kernel_normalizer(h)) : 0.0;
  if (k_peak > 1.0) {
    throw std::invalid_argument(
        "gen_graphon: requested mean degree drives pair probabilities above 1");
  }

  // Sort nodes by latent position; along the sorted order the pair
  // probability decays monotonically with index gap, so an envelope fixed
  // at the last inspected candidate bounds everything farther out. Skip
  // geometrically under the envelope, then thin to the exact probability.
  std::vector<std::int32_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&x](std::int32_t a, std::int32_t b) { return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)]; });

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(d_bar * n / 2 * 1.1) + 16);
  for (std::int32_t si = 0; si + 1 < n; ++si) {
    const double xi = x[static_cast<std::size_t>(order[static_cast<std::size_t>(si)])];
    double envelope = k_peak;
    std::int64_t sj = si + 1;
    while (sj < n && envelope > 0.0) {
      const std::int64_t skip = geometric_skip(envelope, rng);
      if (skip >= n - sj) break;
      sj += skip;
      const double xj = x[static_cast<std::size_t>(order[static_cast<std::size_t>(sj)])];
      const double pj = k_peak * std::exp(-h * (xj - xi));
      // pj / envelope <= 1 by monotone decay over the skipped range.
      if (rng.uniform01() < pj / envelope) {
        edges.push_back(Edge{order[static_cast<std::size_t>(si)],
                             order[static_cast<std::size_t>(sj)], 1.0});
      }
      envelope = pj;
      ++sj;
    }
  }

  GraphBuilder b(n);
  b.add_edges(edges);
  b.continuous_labels(std::move(x));
  return b.build();
}

std::vector<BinaryLabel> random_binary_labels(std::int32_t n, double frac_a,
                                              RngStream& rng) {
  if (n < 0) throw std::invalid_argument("random_binary_labels: n must be non-negative");
  if (!(frac_a >= 0.0 && frac_a <= 1.0)) {
    throw std::invalid_argument("random_binary_labels: frac_a must lie in [0, 1]");
  }
  const auto n_a = static_cast<std::int32_t>(std::floor(frac_a * n));
  std::vector<BinaryLabel> labels(static_cast<std::size_t>(n), BinaryLabel::b);
  for (std::int32_t i = 0; i < n_a; ++i) labels[static_cast<std::size_t>(i)] = BinaryLabel::a;
  // Fisher-Yates keeps exactly n_a a-labels at uniform positions.
  for (std::int32_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
  }
  return labels;
}

LabeledGraph generate(const GeneratorSpec& spec, RngStream& rng) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::er: {
      double p = spec.p_edge;
      if (p < 0.0) {
        if (spec.avg_degree < 0.0 || spec.n < 2) {
          throw std::invalid_argument("generate: er needs p_edge or avg_degree (n >= 2)");
        }
        p = spec.avg_degree / (spec.n - 1);
      }
      LabeledGraph g = gen_er(spec.n, p, rng);
      if (!spec.attach_binary_labels) return g;
      // Rebuild with labels; generation order stays stable because the
      // label stream draws after the edge stream.
      GraphBuilder b(spec.n);
      b.add_edges(g.edges());
      b.binary_labels(random_binary_labels(spec.n, spec.frac_a, rng));
      return b.build();
    }
    case GeneratorSpec::Kind::sbm2:
      return gen_sbm2(spec.n, spec.p_within, spec.p_between, spec.frac_a, rng);
    case GeneratorSpec::Kind::graphon:
      return gen_graphon(spec.n, spec.avg_degree, spec.h, rng);
  }
  throw std::logic_error("generate: unknown generator kind");
}

}  // namespace netdp

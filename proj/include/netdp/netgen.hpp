#pragma once

#include <cstdint>
#include <vector>

#include "netdp/graph.hpp"
#include "netdp/rng.hpp"

namespace netdp {

// All generators use geometric skipping (or envelope thinning for the
// distance kernel), so cost scales with realized edges rather than node
// pairs.

LabeledGraph gen_er(std::int32_t n, double p_edge, RngStream& rng);

// Two-block model: the first floor(frac_a * n) nodes carry label a, edges
// appear with p_within inside a block and p_between across.
LabeledGraph gen_sbm2(std::int32_t n, double p_within, double p_between, double frac_a,
                      RngStream& rng);

// Latent positions x_i ~ U[0,1] (stored as continuous labels); pair (i, j)
// connects with probability d_bar / ((n-1) c(h)) * exp(-h |x_i - x_j|),
// where c(h) normalizes the kernel so expected mean degree is d_bar.
// h = 0 degenerates to uniform p = d_bar / (n-1).
LabeledGraph gen_graphon(std::int32_t n, double d_bar, double h, RngStream& rng);

// Integral of exp(-h|x-y|) over the unit square: 2/h - 2/h^2 (1 - e^{-h});
// series near h = 0 where the closed form cancels.
double graphon_kernel_normalizer(double h);

// Exactly floor(frac_a * n) labels a at uniformly random positions.
std::vector<BinaryLabel> random_binary_labels(std::int32_t n, double frac_a,
                                              RngStream& rng);

struct GeneratorSpec {
  enum class Kind { er, sbm2, graphon };
  Kind kind = Kind::er;
  std::int32_t n = 0;
  // er: explicit edge probability, or mean degree when p_edge < 0
  double p_edge = -1.0;
  double avg_degree = -1.0;  // er fallback and graphon d_bar
  // sbm2
  double p_within = 0.0;
  double p_between = 0.0;
  double frac_a = 0.5;  // block split; also label fraction for er
  // graphon
  double h = 0.0;
  // er only: attach random binary labels at frac_a
  bool attach_binary_labels = true;
};

LabeledGraph generate(const GeneratorSpec& spec, RngStream& rng);

}  // namespace netdp

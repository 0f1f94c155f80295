#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "netdp/indices.hpp"
#include "netdp/netgen.hpp"
#include "netdp/rng.hpp"
#include "test_util.hpp"

using namespace netdp;

TEST_CASE("er hits the degenerate endpoints exactly") {
  RngStream rng(401, 1);
  const LabeledGraph full = gen_er(20, 1.0, rng);
  CHECK(full.edge_count() == 190);
  for (std::int32_t i = 0; i < 20; ++i) CHECK(full.degree(i) == 19.0);

  const LabeledGraph empty = gen_er(20, 0.0, rng);
  CHECK(empty.edge_count() == 0);

  CHECK(gen_er(0, 0.5, rng).node_count() == 0);
  CHECK_THROWS_AS(gen_er(-1, 0.5, rng), std::invalid_argument);
  CHECK_THROWS_AS(gen_er(5, 1.5, rng), std::invalid_argument);
}

TEST_CASE("er edge count lands in a five-sigma band") {
  RngStream rng(402, 2);
  const std::int32_t n = 400;
  const double p = 0.05;
  const LabeledGraph g = gen_er(n, p, rng);
  const double pairs = n * (n - 1) / 2.0;
  const double mean = pairs * p;
  const double sd = std::sqrt(pairs * p * (1.0 - p));
  CHECK(std::abs(static_cast<double>(g.edge_count()) - mean) < 5.0 * sd);
}

TEST_CASE("er is deterministic per stream") {
  RngStream a(403, 3);
  RngStream b(403, 3);
  RngStream c(404, 3);
  CHECK(graph_hash(gen_er(100, 0.1, a)) == graph_hash(gen_er(100, 0.1, b)));
  CHECK(graph_hash(gen_er(100, 0.1, c)) != graph_hash(gen_er(100, 0.1, b)));
}

TEST_CASE("sbm2 labels the first block a and respects block densities") {
  RngStream rng(405, 4);
  const std::int32_t n = 200;
  const LabeledGraph g = gen_sbm2(n, 0.2, 0.05, 0.3, rng);
  const auto labels = g.binary_labels();
  const std::int32_t n_a = 60;  // floor(0.3 * 200)
  for (std::int32_t i = 0; i < n; ++i) {
    CHECK(labels[static_cast<std::size_t>(i)] ==
          (i < n_a ? BinaryLabel::a : BinaryLabel::b));
  }

  std::int64_t within_a = 0, within_b = 0, cross = 0;
  for (const Edge& e : g.edges()) {
    const bool ua = e.u < n_a;
    const bool va = e.v < n_a;
    if (ua && va) ++within_a;
    else if (!ua && !va) ++within_b;
    else ++cross;
  }
  const double pairs_a = n_a * (n_a - 1) / 2.0;
  const double pairs_b = (n - n_a) * (n - n_a - 1) / 2.0;
  const double pairs_x = static_cast<double>(n_a) * (n - n_a);
  CHECK(std::abs(within_a - pairs_a * 0.2) < 5.0 * std::sqrt(pairs_a * 0.2 * 0.8));
  CHECK(std::abs(within_b - pairs_b * 0.2) < 5.0 * std::sqrt(pairs_b * 0.2 * 0.8));
  CHECK(std::abs(cross - pairs_x * 0.05) < 5.0 * std::sqrt(pairs_x * 0.05 * 0.95));

  CHECK_THROWS_AS(gen_sbm2(10, 0.5, 0.5, 1.2, rng), std::invalid_argument);
  CHECK_THROWS_AS(gen_sbm2(10, 1.5, 0.5, 0.5, rng), std::invalid_argument);
}

TEST_CASE("graphon normalizer matches quadrature and joins its series branch") {
  // c(h) is the kernel's average over the unit square, reducible to
  // int_0^1 2 (1 - t) e^{-h t} dt.
  for (double h : {0.3, 0.8, 2.0, 5.0}) {
    const double quad =
        testutil::simpson([h](double t) { return 2.0 * (1.0 - t) * std::exp(-h * t); },
                          0.0, 1.0);
    CHECK(graphon_kernel_normalizer(h) == doctest::Approx(quad).epsilon(1e-10));
  }
  CHECK(graphon_kernel_normalizer(0.0) == 1.0);
  // Both branches agree at the same h on either side of the switch point.
  // The closed form loses ~5e-12 to cancellation this close to zero, which
  // is exactly why the implementation switches; 1e-10 absorbs that.
  {
    const double h = 0.99e-4;  // implementation uses the series here
    const double closed = 2.0 / h - 2.0 / (h * h) * (-std::expm1(-h));
    CHECK(graphon_kernel_normalizer(h) == doctest::Approx(closed).epsilon(1e-10));
  }
  {
    const double h = 1.01e-4;  // implementation uses the closed form here
    const double series = 1.0 - h / 3.0 + h * h / 12.0 - h * h * h / 60.0;
    CHECK(graphon_kernel_normalizer(h) == doctest::Approx(series).epsilon(1e-10));
  }
  CHECK_THROWS_AS(graphon_kernel_normalizer(-0.1), std::invalid_argument);
}

TEST_CASE("graphon hits its target mean degree and stores latent positions") {
  RngStream rng(406, 5);
  const std::int32_t n = 3000;
  const double d_bar = 15.0;
  const LabeledGraph g = gen_graphon(n, d_bar, 1.0, rng);
  REQUIRE(g.has_continuous_labels());
  for (double x : g.continuous_labels()) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  const double mean_degree = 2.0 * static_cast<double>(g.edge_count()) / n;
  CHECK(mean_degree == doctest::Approx(d_bar).epsilon(0.05));

  // Peak connection probability above one is a hard error, not a clamp.
  CHECK_THROWS_AS(gen_graphon(10, 9.5, 2.0, rng), std::invalid_argument);
}

TEST_CASE("stronger distance decay steepens the friend-rank slope") {
  RngStream rng(407, 6);
  const LabeledGraph weak = gen_graphon(4000, 15.0, 0.2, rng);
  const LabeledGraph strong = gen_graphon(4000, 15.0, 2.0, rng);
  const FriendRankProfile wp = afr(weak);
  const FriendRankProfile sp = afr(strong);
  const double beta_weak = ols(wp.own_rank, wp.afr).beta;
  const double beta_strong = ols(sp.own_rank, sp.afr).beta;
  CHECK(beta_strong > beta_weak);
  CHECK(beta_weak > -0.05);  // near zero for near-uniform mixing
}

TEST_CASE("random_binary_labels places an exact a count") {
  RngStream rng(408, 7);
  for (double frac : {0.0, 0.1, 0.37, 0.5, 1.0}) {
    const auto labels = random_binary_labels(1000, frac, rng);
    std::int64_t count = 0;
    for (auto l : labels) count += l == BinaryLabel::a ? 1 : 0;
    CHECK(count == static_cast<std::int64_t>(std::floor(frac * 1000)));
  }
  RngStream r1(409, 8);
  RngStream r2(409, 8);
  RngStream r3(410, 8);
  CHECK(random_binary_labels(50, 0.5, r1) == random_binary_labels(50, 0.5, r2));
  CHECK(random_binary_labels(50, 0.5, r1) != random_binary_labels(50, 0.5, r3));
  CHECK_THROWS_AS(random_binary_labels(10, 1.5, r3), std::invalid_argument);
}

TEST_CASE("generate dispatches and falls back to avg_degree for er") {
  GeneratorSpec spec;
  spec.kind = GeneratorSpec::Kind::er;
  spec.n = 500;
  spec.avg_degree = 12.0;
  spec.frac_a = 0.4;
  RngStream rng(411, 9);
  const LabeledGraph g = generate(spec, rng);
  REQUIRE(g.has_binary_labels());
  std::int64_t count = 0;
  for (auto l : g.binary_labels()) count += l == BinaryLabel::a ? 1 : 0;
  CHECK(count == 200);
  const double mean_degree = 2.0 * static_cast<double>(g.edge_count()) / spec.n;
  CHECK(mean_degree == doctest::Approx(12.0).epsilon(0.15));

  spec.attach_binary_labels = false;
  RngStream rng2(412, 10);
  CHECK_FALSE(generate(spec, rng2).has_binary_labels());

  GeneratorSpec bad;
  bad.kind = GeneratorSpec::Kind::er;
  bad.n = 100;
  CHECK_THROWS_AS(generate(bad, rng2), std::invalid_argument);

  GeneratorSpec sbm;
  sbm.kind = GeneratorSpec::Kind::sbm2;
  sbm.n = 100;
  sbm.p_within = 0.3;
  sbm.p_between = 0.1;
  sbm.frac_a = 0.5;
  RngStream s1(413, 11);
  RngStream s2(413, 11);
  CHECK(graph_hash(generate(sbm, s1)) == graph_hash(generate(sbm, s2)));

  GeneratorSpec gw;
  gw.kind = GeneratorSpec::Kind::graphon;
  gw.n = 200;
  gw.avg_degree = 8.0;
  gw.h = 0.5;
  RngStream g1(414, 12);
  const LabeledGraph latent = generate(gw, g1);
  CHECK(latent.has_continuous_labels());
}

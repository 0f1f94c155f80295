#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "netdp/indices.hpp"
#include "netdp/netgen.hpp"
#include "netdp/oracle.hpp"
#include "netdp/rng.hpp"
#include "test_util.hpp"

using namespace netdp;

TEST_CASE("enumeration at p = 0 collapses to the identity pattern") {
  const LabeledGraph g = testutil::reference_example();
  const oracle::EnumerationResult res = oracle::enumerate_expectations(g, 0.0);
  CHECK(res.probability_mass == 1.0);
  CHECK(res.expected_s0 == 2.0);
  for (std::int32_t i = 0; i < g.node_count(); ++i) {
    CHECK(res.expected_rho_tilde[static_cast<std::size_t>(i)] == rho(g, i));
  }
}

TEST_CASE("enumeration guards its cost and parameter range") {
  RngStream rng(501, 1);
  LabeledGraph big = gen_er(15, 0.3, rng);
  GraphBuilder b(15);
  b.add_edges(big.edges());
  b.binary_labels(random_binary_labels(15, 0.5, rng));
  const LabeledGraph g = b.build();
  CHECK_THROWS_AS(oracle::enumerate_expectations(g, 0.1), std::invalid_argument);

  const LabeledGraph small = testutil::reference_example();
  CHECK_THROWS_AS(oracle::enumerate_expectations(small, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(oracle::enumerate_expectations(small, -0.01), std::invalid_argument);
}

TEST_CASE("naive connectedness agrees with the library on random graphs") {
  RngStream rng(502, 2);
  for (int rep = 0; rep < 10; ++rep) {
    LabeledGraph er = gen_er(40, 0.12, rng);
    GraphBuilder b(40);
    b.add_edges(er.edges());
    b.binary_labels(random_binary_labels(40, 0.4, rng));
    const LabeledGraph g = b.build();
    CHECK(oracle::naive_cross_connectedness(g) ==
          doctest::Approx(cross_connectedness(g).value).epsilon(1e-13));
  }
}

TEST_CASE("sensitivity oracle validates its inputs") {
  RngStream rng(503, 3);
  const LabeledGraph g = gen_er(8, 0.4, rng);
  std::vector<BinaryLabel> labels(8, BinaryLabel::a);
  CHECK_THROWS_AS(oracle::max_edge_sensitivity(g, labels, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(oracle::max_edge_sensitivity(g, labels, 0.2, 0.0), std::invalid_argument);
  std::vector<BinaryLabel> wrong(7, BinaryLabel::a);
  CHECK_THROWS_AS(oracle::max_edge_sensitivity(g, wrong, 0.2), std::invalid_argument);
  const LabeledGraph big = gen_er(31, 0.1, rng);
  std::vector<BinaryLabel> big_labels(31, BinaryLabel::a);
  CHECK_THROWS_AS(oracle::max_edge_sensitivity(big, big_labels, 0.2), std::invalid_argument);

  CHECK(oracle::edge_sensitivity_bound(0.0) == 2.0);
  CHECK(oracle::edge_sensitivity_bound(0.25) == 6.0);  // 2 * 0.75 / 0.25
  CHECK_THROWS_AS(oracle::edge_sensitivity_bound(0.5), std::invalid_argument);
}

TEST_CASE("naive ols rejects degenerate designs") {
  const std::vector<double> flat{1.0, 1.0, 1.0};
  const std::vector<double> y{0.0, 1.0, 2.0};
  CHECK_THROWS_AS(oracle::naive_ols(flat, y), std::invalid_argument);
  CHECK_THROWS_AS(oracle::naive_ols(y, std::vector<double>{1.0}), std::invalid_argument);

  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> line{1.0, 3.0, 5.0, 7.0};
  const oracle::NaiveOls fit = oracle::naive_ols(x, line);
  CHECK(fit.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.beta == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("perturbation search validates its inputs") {
  const oracle::ValueBounds unit{0.0, 1.0};
  CHECK_THROWS_AS(oracle::suffstat_perturbation_search(std::vector<double>{0.5},
                                                       std::vector<double>{0.5}, unit, unit),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::suffstat_perturbation_search(std::vector<double>{0.5, 0.6},
                                                       std::vector<double>{0.5, 0.6},
                                                       oracle::ValueBounds{1.0, 1.0}, unit),
                  std::invalid_argument);
}

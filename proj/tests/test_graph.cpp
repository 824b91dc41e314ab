#include <doctest.h>

#include <cmath>

#include "pcepart/errors.hpp"
#include "pcepart/graph.hpp"
#include "pcepart/optimize.hpp"

using namespace pcepart;

TEST_CASE("edges are stored once with i < j") {
  Graph g(3);
  g.add_edge(2, 0, 0.5);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edges()[0].i == 0);
  CHECK(g.edges()[0].j == 2);
  CHECK_THROWS_AS(g.add_edge(0, 0, 1.0), ContractError);
  CHECK_THROWS_AS(g.add_edge(0, 3, 1.0), ContractError);
  CHECK_THROWS_AS(g.add_edge(0, 1, std::nan("")), ContractError);
}

TEST_CASE("cut value") {
  Graph g(4, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 4.0}, {0, 3, 8.0}});
  CHECK(cut_value(g, Bits{0, 1, 0, 1}) == doctest::Approx(15.0));
  CHECK(cut_value(g, Bits{0, 0, 1, 1}) == doctest::Approx(10.0));
  CHECK(cut_value(g, Bits{1, 1, 1, 1}) == 0.0);
  CHECK_THROWS_AS(cut_value(g, Bits{0, 1}), ContractError);
  CHECK(g.total_weight() == doctest::Approx(15.0));
  CHECK(g.weighted_degrees() == std::vector<double>{9.0, 3.0, 6.0, 12.0});
}

TEST_CASE("induced subgraph relabels vertices") {
  Graph g(5, {{0, 1, 1.0}, {1, 3, 2.0}, {3, 4, 3.0}, {0, 4, 4.0}});
  const std::vector<int> keep{1, 3, 4};
  const Graph s = induced_subgraph(g, keep);
  CHECK(s.vertex_count() == 3);
  REQUIRE(s.edge_count() == 2);
  CHECK(s.total_weight() == doctest::Approx(5.0));
  CHECK(cut_value(s, Bits{0, 1, 0}) == doctest::Approx(5.0));
}

TEST_CASE("repair makes assignments two-sided") {
  Graph g(4, {{0, 1, 5.0}, {1, 2, 1.0}, {2, 3, 5.0}, {0, 3, 0.5}});
  Bits all_zero{0, 0, 0, 0};
  repair_partition(g, all_zero);
  CHECK(all_zero == Bits{1, 0, 0, 0});  // vertices 0 and 3 tie at 5.5; lowest index moves
  Bits fine{0, 1, 0, 1};
  repair_partition(g, fine);
  CHECK(fine == Bits{0, 1, 0, 1});

  Graph empty(5);
  Bits any{1, 1, 1, 1, 1};
  repair_partition(empty, any);
  CHECK(any == Bits{0, 0, 1, 1, 1});
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "lincyc/reductions.hpp"
#include "support.hpp"

using namespace lincyc;

namespace {

LinearHypergraph fano_with_pendant() {
  auto edges = testing::fano().edge_list();
  edges.push_back({0, 7, 8});
  return LinearHypergraph::build(9, 3, edges);
}

}  // namespace

TEST_CASE("min degree subgraph on small graphs") {
  auto single = LinearHypergraph::build(3, 3, {{0, 1, 2}});
  CHECK(min_degree_subgraph(single, 1.0) == single);
  auto f = testing::fano();
  CHECK(min_degree_subgraph(f, 3.0) == f);
  auto star = LinearHypergraph::build(9, 3, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {0, 7, 8}});
  auto core = min_degree_subgraph(star, 4.0 / 3.0);
  CHECK(core.edge_count() == 4);
  CHECK_THROWS_AS(min_degree_subgraph(f, 3.5), Error);
}

TEST_CASE("min degree subgraph meets its threshold and is idempotent") {
  testing::Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 3 + trial % 3;
    auto g = testing::random_linear(rng, 50, r, 120);
    double d = g.average_degree();
    auto h = min_degree_subgraph(g, d);
    REQUIRE(h.vertex_count() > 0);
    CHECK(static_cast<double>(h.min_degree()) >= d / static_cast<double>(r));
    for (auto v : h.vertices())
      for (auto e : g.incident(v)) {
        bool inside = true;
        for (auto w : g.edge(e)) inside = inside && h.has_vertex(w);
        if (inside) CHECK(h.find_edge(g.edge(e)).has_value());
      }
    CHECK(min_degree_subgraph(h, d) == h);
  }
}

TEST_CASE("degenerate ordering clauses on random 2-graphs") {
  testing::Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<ColoredEdge> edges;
    std::bernoulli_distribution coin(0.25);
    for (Vertex u = 0; u < 30; ++u)
      for (Vertex v = u + 1; v < 30; ++v)
        if (coin(rng)) edges.push_back({u, v, {}, static_cast<EdgeId>(edges.size())});
    ColoredGraph h(30, edges);
    double d = h.average_degree() / 2.0;
    auto res = degenerate_ordering(h, d);
    REQUIRE(res.core.vertices().size() > 0);
    CHECK(static_cast<double>(res.core.min_degree()) >= d);
    for (std::size_t i = 0; i < res.cut; ++i) {
      Vertex v = res.ordering[i];
      std::size_t later = 0;
      for (const auto& inc : h.adjacent(v))
        if (res.position[inc.neighbor] > i) ++later;
      CHECK(static_cast<double>(later) < d);
    }
  }
}

TEST_CASE("degenerate ordering keeps K5 whole") {
  std::vector<ColoredEdge> edges;
  for (Vertex u = 0; u < 5; ++u)
    for (Vertex v = u + 1; v < 5; ++v) edges.push_back({u, v, {}, static_cast<EdgeId>(edges.size())});
  auto res = degenerate_ordering(ColoredGraph(5, edges), 2.0);
  CHECK(res.cut == 0);
  CHECK(res.core.vertices().size() == 5);
}

TEST_CASE("bfs layers on a triangle") {
  auto g = LinearHypergraph::build(6, 3, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}});
  auto b = bfs_layers(g, 0);
  REQUIRE(b.depth() == 3);
  CHECK(b.layer(0) == VertexSet{0});
  CHECK(b.layer(1) == VertexSet{1, 2, 4, 5});
  CHECK(b.layer(2) == VertexSet{3});
}

TEST_CASE("bfs layers skip other components") {
  auto g = LinearHypergraph::build(6, 3, {{0, 1, 2}, {3, 4, 5}});
  auto b = bfs_layers(g, 0);
  CHECK(b.depth() == 2);
  CHECK(b.distance(4) == -1);
}

TEST_CASE("bfs paths are shortest linear paths") {
  testing::Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = testing::random_linear(rng, 60, 3 + trial % 2, 50);
    Vertex x = g.edge(0)[0];
    auto b = bfs_layers(g, x);
    auto oracle = testing::hop_distance(g, x);
    for (Vertex v = 0; v < g.universe(); ++v) {
      CHECK(b.distance(v) == oracle[v]);
      if (oracle[v] <= 0) continue;
      auto p = b.path_to(v);
      CHECK(p.length() == static_cast<std::size_t>(oracle[v]));
      auto ok = verify_path(g, p.edges);
      REQUIRE(ok.ok());
      CHECK(path_starts_at(p, x));
      CHECK(std::count(p.edges.back().begin(), p.edges.back().end(), v) == 1);
    }
  }
}

TEST_CASE("fano is 3-minimal") {
  auto f = testing::fano();
  CHECK(d_minimal(f, 3.0) == f);
  auto single = LinearHypergraph::build(3, 3, {{0, 1, 2}});
  CHECK(d_minimal(single, 1.0) == single);
}

TEST_CASE("d-minimal sheds a pendant triple") {
  auto g = fano_with_pendant();
  CHECK(g.average_degree() == doctest::Approx(24.0 / 9.0));
  auto h = d_minimal(g, 2.5);
  CHECK(h.edge_count() == 7);
  CHECK(h.vertex_count() == 7);
  CHECK_THROWS_AS(d_minimal(g, 3.0), Error);
}

TEST_CASE("d-minimal output has first-order minimality and the boundary property") {
  testing::Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testing::random_linear(rng, 40, 3, 90);
    double d = g.average_degree() * 0.8;
    auto h = d_minimal(g, d);
    REQUIRE(h.average_degree() >= d - 1e-9);
    VertexSet vs(h.vertices().begin(), h.vertices().end());
    for (std::size_t drop = 0; drop < vs.size(); ++drop) {
      VertexSet rest = vs;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(drop));
      CHECK(induced(h, rest).average_degree() < d);
    }
    std::bernoulli_distribution coin(0.5);
    for (int s = 0; s < 30; ++s) {
      VertexSet sub;
      for (auto v : vs)
        if (coin(rng)) sub.push_back(v);
      if (sub.empty() || sub.size() == vs.size()) continue;
      CHECK(boundary_lower_bound_check(h, sub, d));
    }
  }
}

TEST_CASE("boundary check examples") {
  auto f = testing::fano();
  CHECK(boundary_lower_bound_check(f, {0}, 3.0));
  CHECK(boundary_lower_bound_check(f, {0, 1, 2}, 3.0));
  CHECK_THROWS_AS(boundary_lower_bound_check(f, {0, 1, 2, 3, 4, 5, 6}, 3.0), Error);
  CHECK_THROWS_AS(boundary_lower_bound_check(f, {}, 3.0), Error);
}

TEST_CASE("partite bound arithmetic") {
  CHECK(partite_fraction(3) == doctest::Approx(6.0 / 27.0));
  CHECK(meets_partite_bound(2, 7, 3));
  CHECK_FALSE(meets_partite_bound(1, 7, 3));
  CHECK(meets_partite_bound(0, 0, 4));
}

TEST_CASE("partite reduction keeps enough edges") {
  auto f = testing::fano();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto red = r_partite_reduction(f, seed);
    CHECK(red.graph.edge_count() >= 2);
    CHECK(red.partition.is_partition_of(red.graph));
  }
  testing::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t r = 3 + trial % 3;
    auto g = testing::random_linear(rng, 40, r, 80);
    auto red = r_partite_reduction(g, static_cast<std::uint64_t>(trial));
    CHECK(meets_partite_bound(red.graph.edge_count(), g.edge_count(), r));
    CHECK(red.partition.is_partition_of(red.graph));
    for (Vertex v = 0; v < g.universe(); ++v)
      if (g.has_vertex(v)) CHECK(red.partition.part_of(v) >= 0);
  }
}

TEST_CASE("partite reduction honours a perfect hint") {
  testing::Rng rng(1);
  auto g = testing::random_partite(rng, 3, 7, 0.5);
  auto hint = testing::block_partition(3, 7);
  auto red = r_partite_reduction(g, 99, hint);
  CHECK(red.graph.edge_count() == g.edge_count());
}

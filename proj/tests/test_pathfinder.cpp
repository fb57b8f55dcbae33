#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "lincyc/generators.hpp"
#include "lincyc/oracle.hpp"
#include "lincyc/pathfinder.hpp"
#include "support.hpp"

using namespace lincyc;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("layer bound arithmetic") {
  CHECK(layer_bound(1024, 4.0, 2.0) == 10);
  CHECK(layer_bound(1000, 8.0, 2.0) == 5);
  CHECK(layer_bound(100, 2.0, 2.0) == 0);
}

TEST_CASE("dense layer on the Fano plane") {
  auto g = testing::fano();
  for (Vertex x = 0; x < 7; ++x) {
    auto res = dense_layer_subgraph(g, x, 1.0);
    CHECK(res.m <= 1);
    CHECK(res.h.average_degree() >= 0.25);
    auto b = bfs_layers(g, x);
    for (EdgeId e = 0; e < res.h.edge_count(); ++e) {
      bool touches = false;
      for (auto v : res.h.edge(e)) {
        CHECK(b.distance(v) >= static_cast<int>(res.m));
        touches = touches || b.distance(v) == static_cast<int>(res.m);
      }
      CHECK(touches);
    }
  }
  CHECK(kind_of([&] { dense_layer_subgraph(g, 0, 2.0); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("anchored subgraph passes its verifier on a packing") {
  auto g = greedy_partial_steiner(99, 3, 7);
  auto core = core_at_least(g, 1.0);
  const double d = static_cast<double>(core.min_degree()) / 2.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Vertex x = core.vertices()[seed * 7 % core.vertex_count()];
    auto s = anchored_subgraph(core, x, d, seed);
    CHECK_FALSE(check_anchored(s, d).has_value());
    CHECK(s.m <= layer_bound(core.vertex_count(), static_cast<double>(core.min_degree()), d));
    for (EdgeId e = 0; e < s.f.edge_count(); ++e) {
      std::size_t hits = 0;
      for (auto v : s.f.edge(e)) hits += std::binary_search(s.a.begin(), s.a.end(), v) ? 1 : 0;
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("path with part on constructed instances") {
  testing::Rng rng(41);
  for (std::size_t k = 1; k <= 4; ++k) {
    auto inst = testing::part_star(rng, 16, 24, 3 * k);
    REQUIRE(inst.f.min_degree() >= 3 * k);
    auto p = path_with_part(inst.f, inst.a, k);
    CHECK(p.length() >= k + 2);
    CHECK(verify_path(inst.f, p.edges).ok());
    CHECK(testing::a_vertices_are_ends(p, inst.a));
    CHECK(part_vertices_are_ends(p, inst.a));
  }
}

TEST_CASE("path with part rejects a lone edge") {
  auto f = LinearHypergraph::build(3, 3, {{0, 1, 2}});
  CHECK(kind_of([&] { path_with_part(f, {0}, 1); }) == ErrorKind::PreconditionFailed);
  CHECK(kind_of([&] { path_with_part(f, {0, 1}, 1); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("pan-connected family shares its last two edges") {
  auto g = greedy_partial_steiner(99, 3, 3);
  SearchOptions opts;
  opts.best_effort = true;
  std::size_t built = 0;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const std::size_t k = 2 + seed % 2;
    Vertex x = static_cast<Vertex>(seed * 13 % 99);
    PanConnectedFamily fam;
    try {
      fam = pan_connected(g, x, k, seed, opts);
    } catch (const Error&) {
      continue;
    }
    ++built;
    REQUIRE(fam.paths.size() == k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& p = fam.paths[i];
      CHECK(p.length() == fam.t + 3 + i);
      CHECK(verify_path(g, p.edges).ok());
      CHECK(path_starts_at(p, x));
      REQUIRE(p.length() >= 2);
      CHECK(p.edges[p.length() - 2] == fam.e);
      CHECK(p.edges.back() == fam.f);
    }
  }
  CHECK(built > 0);
}

TEST_CASE("pan-connected enforces its degree requirement") {
  auto g = testing::fano();
  CHECK(kind_of([&] { pan_connected(g, 0, 1, 1); }) == ErrorKind::PreconditionFailed);
  CHECK(kind_of([&] { pan_connected(g, 9, 1, 1); }) == ErrorKind::PreconditionFailed);
  CHECK(pan_degree(3, 1) == doctest::Approx(9.0 * 256.0));
}

TEST_CASE("rainbow path of length one is any first-class edge") {
  ColoredGraph h(10, {{0, 1, {5}, 0}, {1, 2, {6}, 1}, {2, 3, {7}, 2}});
  std::vector<bool> in_first{false, true, false};
  SearchOptions opts;
  opts.best_effort = true;
  auto p = rainbow_special_path(h, in_first, 1, opts);
  CHECK(p.edges == std::vector<std::size_t>{1});
  CHECK(kind_of([&] { rainbow_special_path(h, {false, false, false}, 1, opts); }) == ErrorKind::PreconditionFailed);
  CHECK(kind_of([&] { rainbow_special_path(h, in_first, 0, opts); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("rainbow path at the degree threshold") {
  testing::Rng rng(77);
  for (std::size_t ell : {2u, 4u}) {
    for (int trial = 0; trial < 4; ++trial) {
      auto g = testing::thin_to_min_degree(rng, testing::random_partite(rng, 3, 53, 1.0), 12 * ell);
      auto p = testing::block_partition(3, 53);
      auto h = project(g, p, 0, 1);
      REQUIRE(h.min_degree() >= 12 * ell);
      std::vector<bool> in_first(h.edge_count());
      std::bernoulli_distribution coin(0.3);
      for (std::size_t i = 0; i < in_first.size(); ++i) in_first[i] = coin(rng);
      auto path = rainbow_special_path(h, in_first, ell);
      CHECK(testing::rainbow_ok(h, in_first, path, ell));
      CHECK(is_good_rainbow_path(h, in_first, path));
    }
  }
}

TEST_CASE("rainbow search agrees with exhaustive search on small graphs") {
  testing::Rng rng(5);
  SearchOptions opts;
  opts.best_effort = true;
  std::size_t agreements = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto g = testing::random_partite(rng, 3, 7, 0.35);
    if (g.edge_count() == 0) continue;
    auto h = project(g, testing::block_partition(3, 7), 0, 1);
    std::vector<bool> in_first(h.edge_count());
    std::bernoulli_distribution coin(0.3);
    for (std::size_t i = 0; i < in_first.size(); ++i) in_first[i] = coin(rng);
    if (std::none_of(in_first.begin(), in_first.end(), [](bool b) { return b; })) in_first[0] = true;
    const std::size_t ell = 2 + trial % 3;
    const bool exists = rainbow_path_exists(h, in_first, ell);
    bool found = false;
    try {
      auto path = rainbow_special_path(h, in_first, ell, opts);
      found = true;
      CHECK(testing::rainbow_ok(h, in_first, path, ell));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotFound);
    }
    CHECK(found == exists);
    ++agreements;
  }
  CHECK(agreements > 40);
}

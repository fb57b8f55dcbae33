#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lincyc/generators.hpp"
#include "lincyc/oracle.hpp"
#include "support.hpp"

using namespace lincyc;

namespace {

std::vector<std::vector<Vertex>> all_triples(Vertex n) {
  std::vector<std::vector<Vertex>> out;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      for (Vertex c = b + 1; c < n; ++c) out.push_back({a, b, c});
  return out;
}

bool fits(const LinearHypergraph& g, const std::vector<Vertex>& e) {
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (g.edge_through(e[i], e[j])) return false;
  return true;
}

// Sizes of all maximal triple packings on 7 points, by exhaustive search.
std::pair<std::size_t, std::size_t> maximal_packing_range() {
  const auto triples = all_triples(7);
  std::size_t lo = 99, hi = 0;
  std::vector<int> used(49, 0);
  std::vector<std::size_t> chosen;
  auto pairs_free = [&](const std::vector<Vertex>& t) {
    return !used[t[0] * 7 + t[1]] && !used[t[0] * 7 + t[2]] && !used[t[1] * 7 + t[2]];
  };
  auto mark = [&](const std::vector<Vertex>& t, int delta) {
    used[t[0] * 7 + t[1]] += delta;
    used[t[0] * 7 + t[2]] += delta;
    used[t[1] * 7 + t[2]] += delta;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == triples.size()) {
      for (const auto& t : triples)
        if (pairs_free(t)) return;
      lo = std::min(lo, chosen.size());
      hi = std::max(hi, chosen.size());
      return;
    }
    if (pairs_free(triples[i])) {
      mark(triples[i], 1);
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
      mark(triples[i], -1);
    }
    self(self, i + 1);
  };
  rec(rec, 0);
  return {lo, hi};
}

}  // namespace

TEST_CASE("packing on r points is one edge") {
  for (std::size_t r = 3; r <= 6; ++r) CHECK(greedy_partial_steiner(r, r, 1).edge_count() == 1);
}

TEST_CASE("packings on seven points are maximal and in range") {
  const auto [lo, hi] = maximal_packing_range();
  CHECK(lo == 5);
  CHECK(hi == 7);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = greedy_partial_steiner(7, 3, seed);
    CHECK(g.edge_count() >= lo);
    CHECK(g.edge_count() <= hi);
    for (const auto& t : all_triples(7)) CHECK_FALSE(fits(g, t));
  }
}

TEST_CASE("packings on 99 points clear the half-density floor") {
  const double floor = 0.5 * (99.0 * 98.0 / 2.0) / 3.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = greedy_partial_steiner(99, 3, seed);
    CHECK(static_cast<double>(g.edge_count()) >= floor);
  }
  auto g = greedy_partial_steiner(99, 3, 5);
  std::size_t addable = 0;
  for (const auto& t : all_triples(99)) addable += fits(g, t) ? 1 : 0;
  CHECK(addable == 0);
}

TEST_CASE("packings are maximal for larger r") {
  for (std::size_t r = 4; r <= 5; ++r) {
    auto g = greedy_partial_steiner(25, r, 3);
    testing::Rng rng(4);
    std::vector<Vertex> all(25);
    std::iota(all.begin(), all.end(), Vertex{0});
    for (int s = 0; s < 2000; ++s) {
      std::shuffle(all.begin(), all.end(), rng);
      std::vector<Vertex> e(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(r));
      CHECK_FALSE(fits(g, e));
    }
  }
}

TEST_CASE("generation is deterministic") {
  CHECK(greedy_partial_steiner(60, 3, 9) == greedy_partial_steiner(60, 3, 9));
  CHECK(plant_cycles(60, 3, {4, 5}, 1.0, 2).graph == plant_cycles(60, 3, {4, 5}, 1.0, 2).graph);
  CHECK(random_linear(50, 4, 3.0, 8) == random_linear(50, 4, 3.0, 8));
}

TEST_CASE("planted cycles are found by the oracle") {
  auto lone = plant_cycles(12, 3, {4}, 0.0, 1);
  auto s = enumerate_cycles(lone.graph, 10);
  CHECK(s.complete);
  CHECK(s.lengths == std::set<std::size_t>{4});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto inst = plant_cycles(60, 3, {4, 6, 8}, 0.5, seed);
    REQUIRE(inst.witnesses.size() == 3);
    for (const auto& w : inst.witnesses) CHECK(verify_cycle(inst.graph, w.edges).ok());
    auto found = enumerate_cycles(inst.graph, 8);
    for (std::size_t len : {4, 6, 8}) CHECK(found.lengths.count(len) == 1);
  }
}

TEST_CASE("planting too much is infeasible") {
  try {
    plant_cycles(5, 3, {3}, 0.0, 1);
    FAIL("expected Infeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
  }
  CHECK_THROWS_AS(plant_cycles(20, 3, {2}, 0.0, 1), Error);
}

TEST_CASE("sparsify without cleanup keeps the sample") {
  auto base = greedy_partial_steiner(200, 3, 1);
  auto rep = high_girth_sparsify(base, 2.0, 2, 5);
  CHECK(rep.deleted_edges == 0);
  CHECK(rep.graph.edge_count() == rep.sampled_edges);
  CHECK(rep.p == doctest::Approx(12.0 / 200.0));
  CHECK(rep.average_degree >= 2.0);
}

TEST_CASE("sparsify removes every short cycle") {
  auto base = greedy_partial_steiner(1000, 3, 2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto rep = high_girth_sparsify(base, 3.0, 4, seed);
    CHECK(rep.average_degree >= 3.0);
    CHECK(rep.oracle_confirmed);
    auto s = enumerate_cycles(rep.graph, 4);
    REQUIRE(s.complete);
    CHECK(s.lengths.empty());
    CHECK(rep.expected_short_cycles_bound == doctest::Approx(2.0 * std::pow(18.0, 4.0)));
    for (auto e : rep.graph.edge_list()) CHECK(base.find_edge(e).has_value());
  }
}

TEST_CASE("sparsify rejects probabilities above one") {
  auto base = greedy_partial_steiner(20, 3, 1);
  CHECK_THROWS_AS(high_girth_sparsify(base, 10.0, 3, 1), Error);
}

TEST_CASE("sparsify reports exhausted retries") {
  auto base = greedy_partial_steiner(30, 3, 1);
  try {
    high_girth_sparsify(base, 4.5, 6, 1, 3);
    FAIL("expected RetriesExhausted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RetriesExhausted);
  }
}

TEST_CASE("girth target formula") {
  CHECK(girth_target(1000, 10.0, 0.5) == 3);
  CHECK(girth_target(1u << 20, 2.0, 0.5) == 10);
  CHECK(girth_target(10, 1.0, 0.5) == 3);
}

TEST_CASE("generate dispatches on mode") {
  GenSpec spec;
  spec.n = 40;
  spec.mode = GenMode::Planted;
  spec.lengths = {5};
  spec.seed = 3;
  auto out = generate(spec);
  CHECK(out.witnesses.size() == 1);
  CHECK(parse_gen_mode("steiner") == GenMode::Steiner);
  CHECK(std::string(to_string(GenMode::Sparsified)) == "sparsified");
  CHECK_THROWS_AS(parse_gen_mode("nope"), Error);
}

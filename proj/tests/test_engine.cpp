#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lincyc/engine.hpp"
#include "lincyc/generators.hpp"
#include "lincyc/oracle.hpp"
#include "support.hpp"

using namespace lincyc;

namespace {

EngineOptions loose() {
  EngineOptions o;
  o.best_effort = true;
  return o;
}

std::int64_t trace_int(const Trace& t, const std::string& stage, const std::string& key) {
  for (const auto& e : t)
    if (e.stage == stage)
      for (const auto& [k, v] : e.values)
        if (k == key) return std::get<std::int64_t>(v);
  FAIL("missing trace value " << stage << "." << key);
  return -1;
}

void check_report(const LinearHypergraph& g, const EngineReport& rep) {
  REQUIRE(rep.ok());
  const auto& fam = *rep.family;
  CHECK_FALSE(check_family(g, fam).has_value());
  for (const auto& c : fam.cycles) CHECK(verify_cycle(g, c.edges).ok());
  CHECK(fam.shortest == fam.cycles.front().length());
}

}  // namespace

TEST_CASE("transversal cleanup is the identity without a matching") {
  testing::Rng rng(1);
  auto h = testing::random_partite(rng, 3, 11, 0.3);
  CHECK(transversal_cleanup(h, {}, 4) == h);
  // A matching on vertices outside every edge leaves H alone too.
  auto small = LinearHypergraph::build(9, 3, {{0, 1, 2}});
  CHECK(transversal_cleanup(small, {{4, 5}, {6, 7}}, 4) == small);
}

TEST_CASE("transversal cleanup postconditions") {
  testing::Rng rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 3 + trial % 2;
    const std::size_t s = 11;
    auto h = testing::random_partite(rng, r, s, 0.4);
    std::vector<std::vector<Vertex>> cols(r - 1);
    for (std::size_t j = 1; j < r; ++j) {
      for (Vertex v = 0; v < s; ++v) cols[j - 1].push_back(static_cast<Vertex>(j * s + v));
      std::shuffle(cols[j - 1].begin(), cols[j - 1].end(), rng);
    }
    std::vector<VertexSet> matching;
    for (std::size_t i = 0; i < s / 2; ++i) {
      VertexSet member;
      for (const auto& c : cols) member.push_back(c[i]);
      std::sort(member.begin(), member.end());
      matching.push_back(member);
    }
    auto out = transversal_cleanup(h, matching, static_cast<std::uint64_t>(trial));
    double floor = static_cast<double>(h.edge_count());
    for (std::size_t i = 0; i + 1 < r; ++i) floor /= static_cast<double>(r - 1);
    CHECK(static_cast<double>(out.edge_count()) >= floor);
    for (const auto& member : matching) {
      std::size_t hits = 0;
      for (auto v : member) hits += out.has_vertex(v) ? 1 : 0;
      CHECK(hits <= 1);
    }
    for (auto e : out.edge_list()) CHECK(h.find_edge(e).has_value());
  }
}

TEST_CASE("tree lemmas return verified families or a failure reason") {
  std::size_t families = 0;
  testing::Rng rng(5);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    auto g = testing::random_partite(rng, 3, 53, 0.4 + 0.1 * static_cast<double>(seed));
    auto p = testing::block_partition(3, 53);
    auto tree = build_mert(g, p, 0);
    REQUIRE_FALSE(check_mert(g, p, tree).has_value());
    for (std::size_t t = 1; t <= tree.height; ++t) {
      auto b = cycles_from_boundary(g, p, tree, t, 2, loose());
      if (b.family) {
        ++families;
        CHECK_FALSE(check_family(g, *b.family).has_value());
        CHECK(b.family->parity == Parity::Even);
        CHECK(b.family->shortest == 2 * b.m + 2);
        CHECK(b.m + 1 <= t);
      } else {
        CHECK_FALSE(b.failure.empty());
      }
      auto in = cycles_from_internal(g, p, tree, t, 2, seed, loose());
      if (in.family) {
        ++families;
        CHECK_FALSE(check_family(g, *in.family).has_value());
        CHECK(in.family->shortest == 2 * in.m + 1);
        CHECK(in.m <= t);
      } else {
        CHECK_FALSE(in.failure.empty());
      }
    }
  }
  CHECK(families >= 8);
}

TEST_CASE("tree lemmas respect density thresholds unless best-effort") {
  auto g = LinearHypergraph::build(7, 3, {{0, 1, 4}, {0, 2, 5}, {0, 3, 6}});
  RPartition p(7, 3);
  p.assign(0, 0);
  for (Vertex v : {1, 2, 3}) p.assign(v, 1);
  for (Vertex v : {4, 5, 6}) p.assign(v, 2);
  auto tree = build_mert(g, p, 0);
  auto b = cycles_from_boundary(g, p, tree, 1, 2);
  CHECK_FALSE(b.family.has_value());
  CHECK_FALSE(b.failure.empty());
  auto in = cycles_from_internal(g, p, tree, 1, 2, 1);
  CHECK_FALSE(in.family.has_value());
}

TEST_CASE("pipelines on a dense packing") {
  auto g = greedy_partial_steiner(99, 3, 1);
  for (auto mode : {EngineMode::All, EngineMode::Even, EngineMode::Exact}) {
    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto rep = find(g, mode, 2, seed, loose());
      if (!rep.ok()) continue;
      ++ok;
      check_report(g, rep);
      const auto lengths = rep.family->lengths();
      if (mode == EngineMode::Exact) CHECK(lengths == std::vector<std::size_t>{4});
      if (mode == EngineMode::Even) {
        CHECK(lengths.size() == 2);
        CHECK(lengths.front() % 2 == 0);
      }
      if (mode == EngineMode::All) {
        CHECK(lengths.size() == 2);
        CHECK(rep.family->shortest <= static_cast<std::size_t>(trace_int(rep.trace, "cycles", "certificate")));
      }
    }
    CHECK(ok > 0);
  }
}

TEST_CASE("exact search returns the cycle itself on a lone C4") {
  auto g = LinearHypergraph::build(8, 3, testing::cycle_edges(4, 3));
  auto rep = find_c2k(g, 2, 1, loose());
  check_report(g, rep);
  CHECK(rep.family->cycles.front().length() == 4);
  std::set<VertexSet> got(rep.family->cycles.front().edges.begin(), rep.family->cycles.front().edges.end());
  std::set<VertexSet> want;
  for (auto e : testing::cycle_edges(4, 3)) {
    std::sort(e.begin(), e.end());
    want.insert(e);
  }
  CHECK(got == want);
}

TEST_CASE("exact search finds a planted even cycle") {
  for (std::size_t k = 2; k <= 4; ++k)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto inst = plant_cycles(80, 3, {2 * k}, 0.5, seed);
      auto rep = find_c2k(inst.graph, k, seed, loose());
      check_report(inst.graph, rep);
      CHECK(rep.family->cycles.front().length() == 2 * k);
    }
}

TEST_CASE("engine lengths lie inside the oracle spectrum") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto inst = plant_cycles(45, 3, {3, 4, 5, 6}, 1.0 + static_cast<double>(seed % 3), seed);
    const auto mode = static_cast<EngineMode>(seed % 3);
    auto rep = find(inst.graph, mode, 2, seed, loose());
    std::size_t cap = 6;
    if (rep.ok()) cap = std::max(cap, rep.family->lengths().back());
    auto s = enumerate_cycles(inst.graph, cap);
    REQUIRE(s.complete);
    for (std::size_t len : {3, 4, 5, 6}) CHECK(s.lengths.count(len) == 1);
    if (!rep.ok()) continue;
    check_report(inst.graph, rep);
    for (auto len : rep.family->lengths()) CHECK(s.lengths.count(len) == 1);
  }
}

TEST_CASE("reports are byte-identical for equal seeds") {
  auto g = greedy_partial_steiner(80, 3, 4);
  for (auto mode : {EngineMode::All, EngineMode::Even, EngineMode::Exact}) {
    auto a = find(g, mode, 2, 17, loose()).to_json();
    auto b = find(g, mode, 2, 17, loose()).to_json();
    CHECK(a == b);
  }
}

TEST_CASE("strict mode refuses inputs below the regime") {
  auto g = greedy_partial_steiner(40, 3, 1);
  EngineOptions strict;
  strict.strict = true;
  auto rep = consecutive_cycles(g, 2, 1, strict);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.in_regime);
  CHECK(rep.outcome == "failure");
  CHECK(parse_engine_mode("c2k") == EngineMode::Exact);
  CHECK_THROWS_AS(parse_engine_mode("odd"), Error);
}

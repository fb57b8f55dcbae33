#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "lincyc/hypergraph.hpp"
#include "lincyc/pathfinder.hpp"

namespace testing {

using lincyc::LinearHypergraph;
using lincyc::Vertex;
using lincyc::VertexSet;

using Rng = std::mt19937_64;

inline std::uint64_t pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (std::uint64_t{u} << 32) | v;
}

// Rejection sampler: random r-sets that reuse no pair.
inline std::vector<std::vector<Vertex>> random_linear_edges(Rng& rng, std::size_t n, std::size_t r,
                                                           std::size_t target) {
  std::set<std::uint64_t> used;
  std::vector<std::vector<Vertex>> edges;
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  for (std::size_t tries = 0; tries < 50 * target + 100 && edges.size() < target; ++tries) {
    std::vector<Vertex> e;
    while (e.size() < r) {
      Vertex v = pick(rng);
      if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
    }
    bool ok = true;
    for (std::size_t a = 0; a < r && ok; ++a)
      for (std::size_t b = a + 1; b < r && ok; ++b)
        if (used.count(pair_key(e[a], e[b]))) ok = false;
    if (!ok) continue;
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a + 1; b < r; ++b) used.insert(pair_key(e[a], e[b]));
    edges.push_back(std::move(e));
  }
  return edges;
}

inline LinearHypergraph random_linear(Rng& rng, std::size_t n, std::size_t r, std::size_t target) {
  return LinearHypergraph::build(n, r, random_linear_edges(rng, n, r, target));
}

// r-partite linear graph: parts of size s, part j holds vertices j*s..j*s+s-1.
// Edges are rows of random Latin-hypercube-like sums mod s, thinned at random.
inline LinearHypergraph random_partite(Rng& rng, std::size_t r, std::size_t s, double keep) {
  std::vector<std::vector<Vertex>> perms(r, std::vector<Vertex>(s));
  for (auto& p : perms) {
    std::iota(p.begin(), p.end(), Vertex{0});
    std::shuffle(p.begin(), p.end(), rng);
  }
  std::vector<std::size_t> mult(r);
  for (std::size_t j = 0; j < r; ++j) mult[j] = j;  // part j uses a + j*b
  std::bernoulli_distribution coin(keep);
  std::vector<std::vector<Vertex>> edges;
  // With s prime and r <= s, {a + j b mod s} gives pairwise-unique pairs across parts.
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = 0; b < s; ++b) {
      if (!coin(rng)) continue;
      std::vector<Vertex> e;
      for (std::size_t j = 0; j < r; ++j)
        e.push_back(static_cast<Vertex>(j * s + perms[j][(a + mult[j] * b) % s]));
      edges.push_back(std::move(e));
    }
  return LinearHypergraph::build(r * s, r, edges);
}

// Deletes edges in random order while every vertex stays above `floor`.
inline LinearHypergraph thin_to_min_degree(Rng& rng, const LinearHypergraph& g, std::size_t floor) {
  std::vector<std::size_t> deg(g.universe(), 0);
  for (auto v : g.vertices()) deg[v] = g.degree(v);
  std::vector<lincyc::EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), lincyc::EdgeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<bool> keep(g.edge_count(), true);
  for (auto e : order) {
    bool can = true;
    for (auto v : g.edge(e)) can = can && deg[v] > floor;
    if (!can) continue;
    keep[e] = false;
    for (auto v : g.edge(e)) --deg[v];
  }
  std::vector<std::vector<Vertex>> edges;
  for (lincyc::EdgeId e = 0; e < g.edge_count(); ++e)
    if (keep[e]) edges.push_back(g.edge_set(e));
  return LinearHypergraph::build(g.universe(), g.uniformity(), edges);
}

// 3-graph in which every edge is {a, u, v} with a from A and {u, v} a pair of
// B; the pairs of each a form one class of a round-robin factorization of B.
struct PartStar {
  LinearHypergraph f;
  VertexSet a;
};

inline PartStar part_star(Rng& rng, std::size_t na, std::size_t nb, std::size_t floor) {
  std::vector<Vertex> label(na + nb);
  std::iota(label.begin(), label.end(), Vertex{0});
  std::shuffle(label.begin(), label.end(), rng);
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t i = 0; i < na; ++i) {
    // Round-robin round i: nb-1 is fixed, the rest rotate.
    const std::size_t m = nb - 1;
    edges.push_back({label[i], label[na + nb - 1], label[na + i % m]});
    for (std::size_t j = 1; j < nb / 2; ++j)
      edges.push_back({label[i], label[na + (i + j) % m], label[na + (i + m - j) % m]});
  }
  auto g = LinearHypergraph::build(na + nb, 3, edges);
  PartStar out{thin_to_min_degree(rng, g, floor), {}};
  for (std::size_t i = 0; i < na; ++i) out.a.push_back(label[i]);
  std::sort(out.a.begin(), out.a.end());
  return out;
}

inline lincyc::RPartition block_partition(std::size_t r, std::size_t s) {
  lincyc::RPartition p(r * s, r);
  for (std::size_t v = 0; v < r * s; ++v) p.assign(static_cast<Vertex>(v), static_cast<int>(v / s));
  return p;
}

// Definition-level test: the edges pairwise meet as a single cycle, each
// meeting is one vertex, and the union has (r-1)t vertices.
inline bool is_linear_cycle_set(const std::vector<VertexSet>& edges, std::size_t r) {
  const std::size_t t = edges.size();
  if (t < 3) return false;
  std::vector<std::vector<std::size_t>> adj(t);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = i + 1; j < t; ++j) {
      const auto meet = lincyc::intersection_size(edges[i], edges[j]);
      if (meet > 1) return false;
      if (meet == 1) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  for (const auto& a : adj)
    if (a.size() != 2) return false;
  std::vector<bool> seen(t, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (auto j : adj[i])
      if (!seen[j]) {
        seen[j] = true;
        ++count;
        stack.push_back(j);
      }
  }
  if (count != t) return false;
  std::set<Vertex> all;
  for (const auto& e : edges) all.insert(e.begin(), e.end());
  return all.size() == (r - 1) * t;
}

// Second enumeration path: every edge subset of size 3..max_len.
inline std::set<std::size_t> subset_spectrum(const LinearHypergraph& g, std::size_t max_len) {
  std::set<std::size_t> out;
  const std::size_t m = g.edge_count();
  std::vector<VertexSet> pick;
  std::vector<std::size_t> idx;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (idx.size() >= 3 && !out.count(idx.size())) {
      pick.clear();
      for (auto i : idx) pick.push_back(g.edge_set(static_cast<lincyc::EdgeId>(i)));
      if (is_linear_cycle_set(pick, g.uniformity())) out.insert(idx.size());
    }
    if (idx.size() == max_len) return;
    for (std::size_t i = start; i < m; ++i) {
      idx.push_back(i);
      self(self, i + 1);
      idx.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Plain BFS over the vertex-edge incidence graph.
inline std::vector<int> hop_distance(const LinearHypergraph& g, Vertex root) {
  std::vector<int> dist(g.universe(), -1);
  dist[root] = 0;
  std::vector<Vertex> frontier{root};
  while (!frontier.empty()) {
    std::vector<Vertex> next;
    for (Vertex u : frontier)
      for (auto e : g.incident(u))
        for (Vertex w : g.edge(e))
          if (dist[w] < 0) {
            dist[w] = dist[u] + 1;
            next.push_back(w);
          }
    frontier = std::move(next);
  }
  return dist;
}

inline LinearHypergraph fano() {
  return LinearHypergraph::build(7, 3, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
}

// C_t^r on vertices 0..(r-1)t-1: junctions 0..t-1, then the private vertices.
inline std::vector<std::vector<Vertex>> cycle_edges(std::size_t t, std::size_t r) {
  std::vector<std::vector<Vertex>> edges;
  for (std::size_t i = 0; i < t; ++i) {
    std::vector<Vertex> e{static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % t)};
    for (std::size_t j = 0; j < r - 2; ++j) e.push_back(static_cast<Vertex>(t + i * (r - 2) + j));
    edges.push_back(std::move(e));
  }
  return edges;
}

inline bool a_vertices_are_ends(const lincyc::LinearPath& p, const VertexSet& a) {
  std::map<Vertex, int> uses;
  for (const auto& e : p.edges)
    for (auto v : e)
      if (std::binary_search(a.begin(), a.end(), v)) ++uses[v];
  return std::all_of(uses.begin(), uses.end(), [](const auto& kv) { return kv.second == 1; });
}

// Length, vertex-distinct colors, and only the first edge drawn from E1.
inline bool rainbow_ok(const lincyc::ColoredGraph& h, const std::vector<bool>& in_first,
                       const lincyc::RainbowPath& p, std::size_t ell) {
  if (p.edges.size() != ell || p.vertices.size() != ell + 1) return false;
  std::set<Vertex> seen(p.vertices.begin(), p.vertices.end());
  if (seen.size() != p.vertices.size()) return false;
  for (std::size_t i = 0; i < ell; ++i) {
    const auto& e = h.edge(p.edges[i]);
    const bool joins = (e.u == p.vertices[i] && e.v == p.vertices[i + 1]) ||
                       (e.v == p.vertices[i] && e.u == p.vertices[i + 1]);
    if (!joins) return false;
    if (in_first[p.edges[i]] != (i == 0)) return false;
    for (auto c : e.color)
      if (!seen.insert(c).second) return false;
  }
  return true;
}

}  // namespace testing

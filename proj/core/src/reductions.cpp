#include "lincyc/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace lincyc {

__extension__ using Wide = unsigned __int128;

namespace {

// Deletes vertices of current degree < k (lowest index among the minimum
// first) and returns the survivors, sorted.
VertexSet peel_below(const LinearHypergraph& g, double k, std::vector<Vertex>* order = nullptr) {
  const std::size_t n = g.universe();
  std::vector<std::size_t> deg(n, 0);
  std::vector<std::uint8_t> alive(n, 0), edge_alive(g.edge_count(), 1);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v : g.vertices()) {
    alive[v] = 1;
    deg[v] = g.degree(v);
    queue.insert({deg[v], v});
  }
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    if (static_cast<double>(d) >= k) break;
    queue.erase(queue.begin());
    alive[v] = 0;
    if (order) order->push_back(v);
    for (EdgeId e : g.incident(v)) {
      if (!edge_alive[e]) continue;
      edge_alive[e] = 0;
      for (Vertex w : g.edge(e)) {
        if (w == v || !alive[w]) continue;
        queue.erase({deg[w], w});
        --deg[w];
        queue.insert({deg[w], w});
      }
    }
  }
  VertexSet out;
  for (Vertex v : g.vertices())
    if (alive[v]) out.push_back(v);
  return out;
}

}  // namespace

LinearHypergraph core_at_least(const LinearHypergraph& g, double k) {
  return induced(g, peel_below(g, k));
}

LinearHypergraph min_degree_subgraph(const LinearHypergraph& g, double d) {
  if (d > g.average_degree() + 1e-12 || g.edge_count() == 0)
    throw Error(ErrorKind::EmptyCore, "threshold " + std::to_string(d) + " exceeds average degree " +
                                          std::to_string(g.average_degree()));
  const double k = std::max(d / static_cast<double>(g.uniformity()), 1e-9);
  auto core = core_at_least(g, k);
  if (core.vertex_count() == 0) throw Error(ErrorKind::EmptyCore, "peeling removed every vertex");
  return core;
}

PeelResult degenerate_ordering(const ColoredGraph& h, double d) {
  const std::size_t n = h.universe();
  std::vector<std::size_t> deg(n, 0);
  std::vector<std::uint8_t> alive(n, 0);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v : h.vertices()) {
    alive[v] = 1;
    deg[v] = h.degree(v);
    queue.insert({deg[v], v});
  }
  PeelResult res;
  while (!queue.empty()) {
    auto [dv, v] = *queue.begin();
    if (static_cast<double>(dv) >= d) break;
    queue.erase(queue.begin());
    alive[v] = 0;
    res.ordering.push_back(v);
    for (const auto& inc : h.adjacent(v)) {
      Vertex w = inc.neighbor;
      if (!alive[w]) continue;
      queue.erase({deg[w], w});
      --deg[w];
      queue.insert({deg[w], w});
    }
  }
  res.cut = res.ordering.size();
  VertexSet rest;
  for (Vertex v : h.vertices())
    if (alive[v]) rest.push_back(v);
  if (rest.empty()) throw Error(ErrorKind::EmptyCore, "no vertex survives peeling at " + std::to_string(d));
  res.ordering.insert(res.ordering.end(), rest.begin(), rest.end());
  res.core = h.induced(rest);
  res.position.assign(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < res.ordering.size(); ++i) res.position[res.ordering[i]] = i;
  return res;
}

BfsLayers::BfsLayers(const LinearHypergraph& g, Vertex root) : r_(g.uniformity()), root_(root) {
  if (!g.has_vertex(root)) throw Error(ErrorKind::PreconditionFailed, "root is not a vertex of the graph");
  const std::size_t n = g.universe();
  distance_.assign(n, -1);
  parent_.assign(n, kNoVertex);
  parent_edge_.assign(n, kNoEdge);
  parent_edge_vertices_.assign(n * r_, kNoVertex);
  std::vector<std::uint8_t> edge_seen(g.edge_count(), 0);
  distance_[root] = 0;
  layers_.push_back({root});
  while (true) {
    VertexSet next;
    const int depth = static_cast<int>(layers_.size());
    for (Vertex u : layers_.back()) {
      for (EdgeId e : g.incident(u)) {
        if (edge_seen[e]) continue;
        edge_seen[e] = 1;
        auto ed = g.edge(e);
        for (Vertex w : ed) {
          if (distance_[w] != -1) continue;
          distance_[w] = depth;
          parent_[w] = u;
          parent_edge_[w] = e;
          std::copy(ed.begin(), ed.end(), parent_edge_vertices_.begin() + static_cast<std::ptrdiff_t>(w * r_));
          next.push_back(w);
        }
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    layers_.push_back(std::move(next));
  }
}

std::vector<EdgeId> BfsLayers::path_edges(Vertex v) const {
  std::vector<EdgeId> out;
  if (distance(v) < 0) return out;
  for (Vertex cur = v; cur != root_; cur = parent_[cur]) out.push_back(parent_edge_[cur]);
  std::reverse(out.begin(), out.end());
  return out;
}

LinearPath BfsLayers::path_to(Vertex v) const {
  LinearPath p;
  if (distance(v) < 0) return p;
  for (Vertex cur = v; cur != root_; cur = parent_[cur]) {
    auto first = parent_edge_vertices_.begin() + static_cast<std::ptrdiff_t>(cur * r_);
    p.edges.emplace_back(first, first + static_cast<std::ptrdiff_t>(r_));
  }
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

BfsLayers bfs_layers(const LinearHypergraph& g, Vertex x) { return BfsLayers(g, x); }

LinearHypergraph d_minimal(const LinearHypergraph& g, double d) {
  const double r = static_cast<double>(g.uniformity());
  const double slack = 1e-12 * std::max(1.0, d);
  if (g.average_degree() + slack < d)
    throw Error(ErrorKind::PreconditionFailed, "average degree " + std::to_string(g.average_degree()) +
                                                   " is below " + std::to_string(d));
  const std::size_t n = g.universe();
  std::vector<std::size_t> deg(n, 0);
  std::vector<std::uint8_t> alive(n, 0), edge_alive(g.edge_count(), 1);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v : g.vertices()) {
    alive[v] = 1;
    deg[v] = g.degree(v);
    queue.insert({deg[v], v});
  }
  std::size_t verts = g.vertex_count();
  std::size_t edges = g.edge_count();
  while (verts > 1) {
    auto [dv, v] = *queue.begin();
    const double after = r * static_cast<double>(edges - dv) / static_cast<double>(verts - 1);
    if (after + slack < d) break;
    queue.erase(queue.begin());
    alive[v] = 0;
    --verts;
    edges -= dv;
    for (EdgeId e : g.incident(v)) {
      if (!edge_alive[e]) continue;
      edge_alive[e] = 0;
      for (Vertex w : g.edge(e)) {
        if (w == v || !alive[w]) continue;
        queue.erase({deg[w], w});
        --deg[w];
        queue.insert({deg[w], w});
      }
    }
  }
  VertexSet keep;
  for (Vertex v : g.vertices())
    if (alive[v]) keep.push_back(v);
  return induced(g, keep);
}

bool boundary_lower_bound_check(const LinearHypergraph& g, const VertexSet& s, double d) {
  std::vector<std::uint8_t> in(g.universe(), 0);
  std::size_t size = 0;
  for (Vertex v : s) {
    if (!g.has_vertex(v)) throw Error(ErrorKind::PreconditionFailed, "vertex outside the graph");
    if (!in[v]) {
      in[v] = 1;
      ++size;
    }
  }
  if (size == 0 || size >= g.vertex_count())
    throw Error(ErrorKind::PreconditionFailed, "set must be a nonempty proper subset of the vertices");
  std::size_t touching = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto ed = g.edge(static_cast<EdgeId>(e));
    if (std::any_of(ed.begin(), ed.end(), [&](Vertex v) { return in[v] != 0; })) ++touching;
  }
  return static_cast<double>(touching) * static_cast<double>(g.uniformity()) + 1e-9 >=
         d * static_cast<double>(size);
}

double partite_fraction(std::size_t r) {
  double f = 1.0;
  for (std::size_t i = 1; i <= r; ++i) f *= static_cast<double>(i) / static_cast<double>(r);
  return f;
}

bool meets_partite_bound(std::size_t kept, std::size_t total, std::size_t r) {
  Wide pow = 1, fact = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    pow *= r;
    fact *= i;
  }
  return static_cast<Wide>(kept) * pow >= static_cast<Wide>(total) * fact;
}

namespace {

std::size_t transversal_count(const LinearHypergraph& g, const RPartition& p) {
  std::size_t c = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (p.edge_is_transversal(g.edge(static_cast<EdgeId>(e)))) ++c;
  return c;
}

void hill_climb(const LinearHypergraph& g, RPartition& p) {
  const std::size_t r = g.uniformity();
  std::vector<std::size_t> gain(r);
  std::vector<std::uint8_t> seen(r);
  bool improved = true;
  while (improved) {
    improved = false;
    for (Vertex v : g.vertices()) {
      std::fill(gain.begin(), gain.end(), 0);
      for (EdgeId e : g.incident(v)) {
        std::fill(seen.begin(), seen.end(), 0);
        bool distinct = true;
        for (Vertex w : g.edge(e)) {
          if (w == v) continue;
          int q = p.part_of(w);
          if (seen[q]) {
            distinct = false;
            break;
          }
          seen[q] = 1;
        }
        if (!distinct) continue;
        for (std::size_t q = 0; q < r; ++q)
          if (!seen[q]) ++gain[q];
      }
      const auto cur = static_cast<std::size_t>(p.part_of(v));
      std::size_t best = cur;
      for (std::size_t q = 0; q < r; ++q)
        if (gain[q] > gain[best]) best = q;
      if (best != cur) {
        p.assign(v, static_cast<int>(best));
        improved = true;
      }
    }
  }
}

}  // namespace

PartiteReduction r_partite_reduction(const LinearHypergraph& g, std::uint64_t seed,
                                     const std::optional<RPartition>& hint, std::size_t max_restarts) {
  const std::size_t r = g.uniformity();
  const std::size_t total = g.edge_count();
  if (hint && hint->part_count() == r) {
    if (transversal_count(g, *hint) == total) {
      RPartition p(g.universe(), r);
      for (Vertex v : g.vertices()) {
        int q = hint->part_of(v);
        p.assign(v, q < 0 ? 0 : q);
      }
      return {partite_subgraph(g, p), p, 0};
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<Vertex> order(g.vertices().begin(), g.vertices().end());
  for (std::size_t attempt = 0; attempt < max_restarts; ++attempt) {
    RPartition p(g.universe(), r);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < order.size(); ++i) p.assign(order[i], static_cast<int>(i % r));
    hill_climb(g, p);
    auto kept = transversal_count(g, p);
    if (meets_partite_bound(kept, total, r)) return {partite_subgraph(g, p), p, attempt};
  }
  throw Error(ErrorKind::RetriesExhausted,
              "no partition reached the r!/r^r fraction after " + std::to_string(max_restarts) + " restarts");
}

}  // namespace lincyc

#include "lincyc/pathfinder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

namespace lincyc {

namespace {

constexpr double kEps = 1e-9;

std::vector<EdgeId> edges_touching(const LinearHypergraph& g, const VertexSet& s,
                                   std::vector<std::uint8_t>& mark) {
  std::vector<EdgeId> out;
  for (Vertex v : s)
    for (EdgeId e : g.incident(v))
      if (!mark[e]) {
        mark[e] = 1;
        out.push_back(e);
      }
  for (EdgeId e : out) mark[e] = 0;
  std::sort(out.begin(), out.end());
  return out;
}

double density(const LinearHypergraph& h) { return h.average_degree(); }

}  // namespace

std::size_t layer_bound(std::size_t n, double min_degree, double d) {
  if (n <= 1 || d <= 0.0 || min_degree <= d) return 0;
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)) / std::log2(min_degree / d) - kEps));
}

DenseLayer dense_layer_subgraph(const LinearHypergraph& g, Vertex x, double d, const SearchOptions& opts) {
  return dense_layer_subgraph(g, BfsLayers(g, x), d, opts);
}

DenseLayer dense_layer_subgraph(const LinearHypergraph& g, const BfsLayers& layers, double d,
                                const SearchOptions& opts) {
  const auto delta = static_cast<double>(g.min_degree());
  if (!opts.best_effort && (d < 1.0 || d > delta / 2.0 + kEps))
    throw Error(ErrorKind::PreconditionFailed,
                "need 1 <= d <= min degree / 2, got d=" + std::to_string(d) + " with min degree " +
                    std::to_string(g.min_degree()));
  std::vector<std::uint8_t> mark(g.edge_count(), 0);
  std::vector<int> dist(g.universe(), -1);
  for (std::size_t i = 0; i < layers.depth(); ++i)
    for (Vertex v : layers.layer(i)) dist[v] = static_cast<int>(i);

  DenseLayer best;
  double best_density = -1.0;
  for (std::size_t i = 1; i < layers.depth(); ++i) {
    auto gi = edges_touching(g, layers.layer(i), mark);
    if (gi.empty()) continue;
    auto sub = edge_induced(g, gi);
    std::vector<EdgeId> low, high;
    for (EdgeId e : gi) {
      auto ed = g.edge(e);
      bool touches_prev = std::any_of(ed.begin(), ed.end(), [&](Vertex v) { return dist[v] == static_cast<int>(i) - 1; });
      (touches_prev ? low : high).push_back(e);
    }
    auto consider = [&](const std::vector<EdgeId>& ids, std::size_t m) -> bool {
      if (ids.empty() || m == 0) return false;
      auto h = edge_induced(g, ids);
      const double dh = density(h);
      const bool ok = dh + kEps >= d / 4.0;
      if (dh > best_density) {
        best_density = dh;
        best = DenseLayer{m, std::move(h), 0, i};
      }
      return ok;
    };
    if (density(sub) + kEps >= d / 2.0) {
      const bool low_heavy = 2 * low.size() >= gi.size();
      if (low_heavy && i >= 2) {
        if (consider(low, i - 1)) break;
      } else if (!low_heavy) {
        if (consider(high, i)) break;
      } else if (consider(high, i)) {
        break;
      }
    } else if (opts.best_effort) {
      if (i >= 2) consider(low, i - 1);
      consider(high, i);
    }
  }
  if (best_density < 0.0 || (!opts.best_effort && best_density + kEps < d / 4.0))
    throw Error(ErrorKind::NotFound, "no layer carries a dense edge set");
  best.bound = layer_bound(g.vertex_count(), delta, d);
  return best;
}

std::optional<std::string> check_anchored(const AnchoredSubgraph& s, double d) {
  const auto& f = s.f;
  if (f.edge_count() == 0) return std::string("F has no edges");
  const double r = static_cast<double>(f.uniformity());
  const double target = d / (r * std::pow(2.0, 2.0 * r + 1.0));
  if (static_cast<double>(f.min_degree()) + kEps < target)
    return "minimum degree " + std::to_string(f.min_degree()) + " below " + std::to_string(target);
  std::vector<std::uint8_t> in_a(f.universe(), 0);
  for (Vertex v : s.a) in_a[v] = 1;
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    std::size_t hits = 0;
    for (Vertex v : f.edge(static_cast<EdgeId>(e))) {
      hits += in_a[v];
      const int dist = s.layers.distance(v);
      if (dist < 0 || static_cast<std::size_t>(dist) < s.m)
        return "edge " + std::to_string(e) + " reaches an earlier layer";
    }
    if (hits != 1) return "edge " + std::to_string(e) + " has " + std::to_string(hits) + " anchor vertices";
  }
  for (Vertex v : s.a) {
    if (!f.has_vertex(v)) continue;
    if (static_cast<std::size_t>(s.layers.distance(v)) != s.m) return "anchor outside L_m";
    for (const auto& e : s.layers.path_to(v).edges)
      for (Vertex w : e)
        if (w != v && f.has_vertex(w)) return "anchor path of " + std::to_string(v) + " re-enters F";
  }
  return std::nullopt;
}

AnchoredSubgraph anchored_subgraph(const LinearHypergraph& g, Vertex x, double d, std::uint64_t seed,
                                   const SearchOptions& opts) {
  AnchoredSubgraph out;
  out.layers = BfsLayers(g, x);
  auto dl = dense_layer_subgraph(g, out.layers, d, opts);
  const LinearHypergraph& h = dl.h;
  const std::size_t r = g.uniformity();
  out.m = dl.m;
  out.bound = dl.bound;
  out.min_degree_target = d / (static_cast<double>(r) * std::pow(2.0, 2.0 * static_cast<double>(r) + 1.0));
  const VertexSet& lm = out.layers.layer(dl.m);

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::uint8_t> in_x(g.universe(), 0), in_y(g.universe(), 0);
  for (std::size_t attempt = 1; attempt <= opts.max_attempts; ++attempt) {
    std::fill(in_x.begin(), in_x.end(), 0);
    std::fill(in_y.begin(), in_y.end(), 0);
    for (Vertex v : lm) in_x[v] = coin(rng) ? 1 : 0;
    for (Vertex v : lm)
      if (in_x[v]) in_y[v] = coin(rng) ? 1 : 0;

    std::vector<EdgeId> nice;
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
      Vertex anchor = kNoVertex;
      std::size_t hits = 0;
      for (Vertex v : h.edge(static_cast<EdgeId>(e)))
        if (in_x[v]) {
          ++hits;
          anchor = v;
        }
      if (hits != 1 || !in_y[anchor]) continue;
      bool clean = true;
      for (Vertex w : out.layers.parent_edge_set(anchor))
        if (w != anchor && in_y[w]) clean = false;
      if (clean) nice.push_back(static_cast<EdgeId>(e));
    }
    if (nice.empty()) continue;
    auto hpp = edge_induced(h, nice);
    const double level = std::max(hpp.average_degree() / static_cast<double>(r), kEps);
    auto f = core_at_least(hpp, level);
    std::size_t repaired = 0;
    while (f.edge_count() > 0) {
      VertexSet bad;
      for (Vertex v : f.vertices()) {
        if (!in_y[v]) continue;
        for (Vertex w : out.layers.parent_edge_set(v))
          if (w != v && f.has_vertex(w)) bad.push_back(w);
      }
      if (bad.empty()) break;
      std::sort(bad.begin(), bad.end());
      bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
      repaired += bad.size();
      VertexSet keep;
      std::set_difference(f.vertices().begin(), f.vertices().end(), bad.begin(), bad.end(), std::back_inserter(keep));
      f = core_at_least(induced(f, keep), level);
    }
    if (f.edge_count() == 0) continue;
    AnchoredSubgraph cand;
    cand.m = out.m;
    cand.bound = out.bound;
    cand.min_degree_target = out.min_degree_target;
    for (Vertex v : f.vertices())
      if (in_y[v]) cand.a.push_back(v);
    cand.f = std::move(f);
    cand.layers = out.layers;
    cand.attempts = attempt;
    cand.repaired = repaired;
    const double check_d = opts.best_effort ? 0.0 : d;
    if (!check_anchored(cand, check_d)) return cand;
  }
  throw Error(ErrorKind::RetriesExhausted,
              "no anchored subgraph after " + std::to_string(opts.max_attempts) + " attempts");
}

bool part_vertices_are_ends(const LinearPath& p, const VertexSet& a) {
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) {
    VertexSet meet;
    std::set_intersection(p.edges[i].begin(), p.edges[i].end(), p.edges[i + 1].begin(), p.edges[i + 1].end(),
                          std::back_inserter(meet));
    for (Vertex v : meet)
      if (std::binary_search(a.begin(), a.end(), v)) return false;
  }
  return true;
}

LinearPath path_with_part(const LinearHypergraph& f, const VertexSet& a_in, std::size_t k,
                          const SearchOptions& opts) {
  VertexSet a = a_in;
  std::sort(a.begin(), a.end());
  std::vector<std::uint8_t> in_a(f.universe(), 0);
  for (Vertex v : a)
    if (v < f.universe()) in_a[v] = 1;
  for (std::size_t e = 0; e < f.edge_count(); ++e) {
    std::size_t hits = 0;
    for (Vertex v : f.edge(static_cast<EdgeId>(e))) hits += in_a[v];
    if (hits != 1)
      throw Error(ErrorKind::PreconditionFailed, "edge " + std::to_string(e) + " has " + std::to_string(hits) +
                                                     " vertices of the part");
  }
  const std::size_t r = f.uniformity();
  if (!opts.best_effort && f.min_degree() < r * k)
    throw Error(ErrorKind::PreconditionFailed,
                "minimum degree " + std::to_string(f.min_degree()) + " is below rk=" + std::to_string(r * k));
  if (k == 0) throw Error(ErrorKind::PreconditionFailed, "k must be positive");

  const std::size_t target = k + 2;
  std::vector<std::uint8_t> on_path(f.universe(), 0);
  std::vector<EdgeId> path;
  std::size_t expansions = 0;
  bool out_of_budget = false;

  std::function<bool(Vertex)> extend = [&](Vertex prev_junction) -> bool {
    if (path.size() >= target) return true;
    if (++expansions > opts.budget) {
      out_of_budget = true;
      return false;
    }
    const EdgeId last = path.back();
    for (Vertex v : f.edge(last)) {
      if (v == prev_junction || in_a[v]) continue;
      for (EdgeId g : f.incident(v)) {
        if (g == last) continue;
        auto ge = f.edge(g);
        if (std::any_of(ge.begin(), ge.end(), [&](Vertex w) { return w != v && on_path[w]; })) continue;
        for (Vertex w : ge) on_path[w] = 1;
        path.push_back(g);
        if (extend(v)) return true;
        path.pop_back();
        for (Vertex w : ge)
          if (w != v) on_path[w] = 0;
        if (out_of_budget) return false;
      }
    }
    return false;
  };

  for (std::size_t e = 0; e < f.edge_count() && !out_of_budget; ++e) {
    auto ed = f.edge(static_cast<EdgeId>(e));
    for (Vertex w : ed) on_path[w] = 1;
    path.assign(1, static_cast<EdgeId>(e));
    if (extend(kNoVertex)) {
      LinearPath p;
      for (EdgeId id : path) p.edges.push_back(f.edge_set(id));
      return p;
    }
    for (Vertex w : ed) on_path[w] = 0;
  }
  throw Error(out_of_budget ? ErrorKind::BudgetExceeded : ErrorKind::NotFound,
              "no path of length " + std::to_string(target) + " with part vertices at the ends");
}

double pan_degree(std::size_t r, std::size_t k) {
  return static_cast<double>(k) * static_cast<double>(r * r) * std::pow(2.0, 2.0 * static_cast<double>(r) + 2.0);
}

PanConnectedFamily pan_connected(const LinearHypergraph& f, Vertex x, std::size_t k, std::uint64_t seed,
                                 const SearchOptions& opts) {
  if (!f.has_vertex(x)) throw Error(ErrorKind::PreconditionFailed, "start vertex is not in F");
  if (k == 0) throw Error(ErrorKind::PreconditionFailed, "k must be positive");
  const std::size_t r = f.uniformity();
  const double dprime = pan_degree(r, k);
  const auto delta = static_cast<double>(f.min_degree());
  if (!opts.best_effort && delta < 2.0 * dprime)
    throw Error(ErrorKind::PreconditionFailed,
                "minimum degree " + std::to_string(f.min_degree()) + " is below " + std::to_string(2.0 * dprime));
  const double d_use = opts.best_effort ? std::max(1.0, std::min(dprime, delta / 2.0)) : dprime;

  auto anchored = anchored_subgraph(f, x, d_use, seed, opts);
  auto path = path_with_part(anchored.f, anchored.a, k, opts);
  path.edges.resize(k + 2);

  PanConnectedFamily fam;
  fam.t = anchored.m;
  fam.bound = anchored.bound;
  fam.d_used = d_use;
  fam.e = path.edges[k];
  fam.f = path.edges[k + 1];
  for (std::size_t i = k; i >= 1; --i) {
    const auto& ei = path.edges[i - 1];
    Vertex vi = kNoVertex;
    for (Vertex v : ei)
      if (std::binary_search(anchored.a.begin(), anchored.a.end(), v)) vi = v;
    LinearPath q = anchored.layers.path_to(vi);
    q.edges.insert(q.edges.end(), path.edges.begin() + static_cast<std::ptrdiff_t>(i - 1), path.edges.end());
    auto checked = verify_path(f, q.edges);
    if (!checked || !path_starts_at(checked.value(), x))
      throw Error(ErrorKind::NotFound, "assembled path from the anchor is not linear");
    fam.paths.push_back(std::move(checked.value()));
  }
  return fam;
}

bool is_good_rainbow_path(const ColoredGraph& h, const std::vector<bool>& in_first, const RainbowPath& p) {
  if (p.edges.empty() || p.vertices.size() != p.edges.size() + 1) return false;
  VertexSet seen(p.vertices.begin(), p.vertices.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  VertexSet colors;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (p.edges[i] >= h.edge_count()) return false;
    const auto& e = h.edge(p.edges[i]);
    const Vertex a = p.vertices[i], b = p.vertices[i + 1];
    if (!((e.u == a && e.v == b) || (e.u == b && e.v == a))) return false;
    if (in_first.at(p.edges[i]) != (i == 0)) return false;
    colors.insert(colors.end(), e.color.begin(), e.color.end());
  }
  std::sort(colors.begin(), colors.end());
  if (std::adjacent_find(colors.begin(), colors.end()) != colors.end()) return false;
  return disjoint(colors, seen);
}

namespace {

class RainbowSearch {
 public:
  RainbowSearch(const ColoredGraph& h, const std::vector<bool>& in_first, std::size_t budget)
      : h_(h), in_first_(in_first), budget_(budget), on_path_(h.universe(), 0), color_used_(h.universe(), 0) {}

  bool exhausted() const { return expansions_ > budget_; }
  bool tick() { return ++expansions_ <= budget_; }

  bool can_use(std::size_t edge, Vertex next) const {
    if (on_path_[next] || color_used_[next]) return false;
    for (Vertex c : h_.edge(edge).color)
      if (color_used_[c] || on_path_[c]) return false;
    return true;
  }

  void push_vertex(Vertex v) {
    on_path_[v] = 1;
    path_.vertices.push_back(v);
  }
  void push_front_vertex(Vertex v) {
    on_path_[v] = 1;
    path_.vertices.insert(path_.vertices.begin(), v);
  }
  void push_edge(std::size_t edge, Vertex next) {
    for (Vertex c : h_.edge(edge).color) color_used_[c] = 1;
    path_.edges.push_back(edge);
    push_vertex(next);
  }
  void push_front_edge(std::size_t edge, Vertex prev) {
    for (Vertex c : h_.edge(edge).color) color_used_[c] = 1;
    path_.edges.insert(path_.edges.begin(), edge);
    push_front_vertex(prev);
  }
  void pop_edge() {
    for (Vertex c : h_.edge(path_.edges.back()).color) color_used_[c] = 0;
    path_.edges.pop_back();
    on_path_[path_.vertices.back()] = 0;
    path_.vertices.pop_back();
  }
  void pop_front_edge() {
    for (Vertex c : h_.edge(path_.edges.front()).color) color_used_[c] = 0;
    path_.edges.erase(path_.edges.begin());
    on_path_[path_.vertices.front()] = 0;
    path_.vertices.erase(path_.vertices.begin());
  }
  void clear() {
    while (!path_.edges.empty()) pop_edge();
    for (Vertex v : path_.vertices) on_path_[v] = 0;
    path_.vertices.clear();
  }

  RainbowPath& path() { return path_; }
  const ColoredGraph& graph() const { return h_; }
  bool first(std::size_t edge) const { return in_first_[edge]; }

 private:
  const ColoredGraph& h_;
  const std::vector<bool>& in_first_;
  std::size_t budget_;
  std::size_t expansions_ = 0;
  std::vector<std::uint8_t> on_path_;
  std::vector<std::uint8_t> color_used_;
  RainbowPath path_;
};

// Extends the path at its back end using E2 edges to vertices accepted by
// `allowed`, depth-first, until it has `ell` edges.
bool extend_back(RainbowSearch& s, std::size_t ell, const std::function<bool(Vertex)>& allowed) {
  auto& p = s.path();
  if (p.edges.size() >= ell) return true;
  if (!s.tick()) return false;
  const Vertex v = p.vertices.back();
  for (const auto& inc : s.graph().adjacent(v)) {
    if (s.first(inc.edge) || !allowed(inc.neighbor) || !s.can_use(inc.edge, inc.neighbor)) continue;
    s.push_edge(inc.edge, inc.neighbor);
    if (extend_back(s, ell, allowed)) return true;
    s.pop_edge();
    if (s.exhausted()) return false;
  }
  return false;
}

struct Peel {
  std::vector<Vertex> ordering;
  std::size_t cut = 0;
  std::vector<std::size_t> position;
};

// Degenerate ordering of the subgraph formed by the masked edges on `verts`.
std::optional<Peel> peel_masked(const ColoredGraph& h, const std::vector<bool>& mask, const VertexSet& verts,
                                double d) {
  const std::size_t n = h.universe();
  std::vector<std::size_t> deg(n, 0);
  std::vector<std::uint8_t> alive(n, 0);
  std::set<std::pair<std::size_t, Vertex>> queue;
  for (Vertex v : verts) {
    alive[v] = 1;
    for (const auto& inc : h.adjacent(v)) deg[v] += mask[inc.edge] ? 1 : 0;
    queue.insert({deg[v], v});
  }
  Peel p;
  while (!queue.empty()) {
    auto [dv, v] = *queue.begin();
    if (static_cast<double>(dv) >= d) break;
    queue.erase(queue.begin());
    alive[v] = 0;
    p.ordering.push_back(v);
    for (const auto& inc : h.adjacent(v)) {
      if (!mask[inc.edge] || !alive[inc.neighbor]) continue;
      queue.erase({deg[inc.neighbor], inc.neighbor});
      --deg[inc.neighbor];
      queue.insert({deg[inc.neighbor], inc.neighbor});
    }
  }
  p.cut = p.ordering.size();
  if (p.cut == verts.size()) return std::nullopt;
  for (Vertex v : verts)
    if (alive[v]) p.ordering.push_back(v);
  p.position.assign(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < p.ordering.size(); ++i) p.position[p.ordering[i]] = i;
  return p;
}

std::vector<VertexSet> masked_components(const ColoredGraph& h, const std::vector<bool>& mask) {
  std::vector<std::uint8_t> seen(h.universe(), 0);
  std::vector<VertexSet> out;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    if (!mask[i] || seen[h.edge(i).u]) continue;
    VertexSet comp;
    std::vector<Vertex> stack{h.edge(i).u};
    seen[h.edge(i).u] = 1;
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const auto& inc : h.adjacent(v))
        if (mask[inc.edge] && !seen[inc.neighbor]) {
          seen[inc.neighbor] = 1;
          stack.push_back(inc.neighbor);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<RainbowPath> structured_search(const ColoredGraph& h, const std::vector<bool>& in_first,
                                             std::size_t ell, std::size_t r, const SearchOptions& opts) {
  std::vector<bool> second(h.edge_count());
  for (std::size_t i = 0; i < h.edge_count(); ++i) second[i] = !in_first[i];
  const double need = 2.0 * static_cast<double>(r * ell);

  struct Comp {
    double density;
    VertexSet verts;
  };
  std::vector<Comp> comps;
  for (auto& c : masked_components(h, second)) {
    std::size_t twice_edges = 0;
    for (Vertex v : c)
      for (const auto& inc : h.adjacent(v)) twice_edges += second[inc.edge] ? 1 : 0;
    comps.push_back({static_cast<double>(twice_edges) / static_cast<double>(c.size()), std::move(c)});
  }
  std::stable_sort(comps.begin(), comps.end(), [&](const Comp& x, const Comp& y) {
    const bool xa = x.density + kEps >= need, ya = y.density + kEps >= need;
    if (xa != ya) return xa;
    if (xa) return false;
    return x.density > y.density;
  });

  RainbowSearch s(h, in_first, opts.budget);
  for (const auto& comp : comps) {
    if (!opts.best_effort && comp.density + kEps < need) break;
    std::optional<Peel> peel;
    for (double threshold = static_cast<double>(r * ell); threshold >= 1.0 && !peel; threshold -= 1.0) {
      peel = peel_masked(h, second, comp.verts, threshold);
      if (!opts.best_effort) break;
    }
    if (!peel) continue;
    const auto& pos = peel->position;
    const std::size_t cut = peel->cut;
    auto in_core = [&](Vertex v) { return pos[v] != std::numeric_limits<std::size_t>::max() && pos[v] >= cut; };

    // From an increasing path held in the search state, prepends an E1 edge
    // and grows inside the core until the path has ell edges.
    auto finish = [&]() -> bool {
      auto& p = s.path();
      const std::size_t inc_len = p.edges.size();
      const Vertex head = p.vertices.front();
      for (const auto& inc : h.adjacent(head)) {
        if (!in_first[inc.edge] || !s.can_use(inc.edge, inc.neighbor)) continue;
        s.push_front_edge(inc.edge, inc.neighbor);
        if (p.edges.size() >= ell) return true;
        if (in_core(p.vertices.back()) && extend_back(s, ell, in_core)) return true;
        while (p.edges.size() > inc_len + 1) s.pop_edge();
        s.pop_front_edge();
        if (s.exhausted()) return false;
      }
      return false;
    };

    std::function<bool()> grow = [&]() -> bool {
      auto& p = s.path();
      if (p.edges.size() + 1 == ell || in_core(p.vertices.back())) {
        if (finish()) return true;
        if (p.edges.size() + 1 >= ell || s.exhausted()) return false;
      }
      if (!s.tick()) return false;
      const Vertex v = p.vertices.back();
      for (const auto& inc : h.adjacent(v)) {
        if (!second[inc.edge] || pos[inc.neighbor] == std::numeric_limits<std::size_t>::max() ||
            pos[inc.neighbor] <= pos[v] || !s.can_use(inc.edge, inc.neighbor))
          continue;
        s.push_edge(inc.edge, inc.neighbor);
        if (grow()) return true;
        s.pop_edge();
        if (s.exhausted()) return false;
      }
      return false;
    };

    for (Vertex start : peel->ordering) {
      s.clear();
      s.push_vertex(start);
      if (grow()) return s.path();
      if (s.exhausted()) return std::nullopt;
    }
    s.clear();
  }
  return std::nullopt;
}

std::optional<RainbowPath> direct_search(const ColoredGraph& h, const std::vector<bool>& in_first, std::size_t ell,
                                         std::size_t budget) {
  RainbowSearch s(h, in_first, budget);
  auto anywhere = [](Vertex) { return true; };
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    if (!in_first[i]) continue;
    const auto& e = h.edge(i);
    for (int flip = 0; flip < 2; ++flip) {
      const Vertex a = flip ? e.v : e.u;
      const Vertex b = flip ? e.u : e.v;
      s.clear();
      s.push_vertex(a);
      if (!s.can_use(i, b)) continue;
      s.push_edge(i, b);
      if (extend_back(s, ell, anywhere)) return s.path();
      if (s.exhausted()) return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

RainbowPath rainbow_special_path(const ColoredGraph& h, const std::vector<bool>& in_first, std::size_t ell,
                                 const SearchOptions& opts) {
  if (ell == 0) throw Error(ErrorKind::PreconditionFailed, "path length must be positive");
  if (in_first.size() != h.edge_count()) throw Error(ErrorKind::PreconditionFailed, "edge split has the wrong size");
  const std::size_t first = static_cast<std::size_t>(std::count(in_first.begin(), in_first.end(), true));
  const std::size_t second = h.edge_count() - first;
  if (first == 0) throw Error(ErrorKind::PreconditionFailed, "E1 is empty");
  const std::size_t r = h.edge(0).color.size() + 2;
  if (!opts.best_effort) {
    if (second == 0) throw Error(ErrorKind::PreconditionFailed, "E2 is empty");
    if (first > second) throw Error(ErrorKind::PreconditionFailed, "E1 is larger than E2");
    if (h.min_degree() < 4 * r * ell)
      throw Error(ErrorKind::PreconditionFailed, "minimum degree " + std::to_string(h.min_degree()) +
                                                     " is below 4rl=" + std::to_string(4 * r * ell));
    if (!h.strongly_proper()) throw Error(ErrorKind::PreconditionFailed, "coloring is not strongly proper");
  }
  std::optional<RainbowPath> found;
  if (ell == 1 || second > 0) found = structured_search(h, in_first, ell, r, opts);
  if (!found) found = direct_search(h, in_first, ell, opts.budget);
  if (!found) throw Error(ErrorKind::NotFound, "no rainbow path of length " + std::to_string(ell));
  found->edges.resize(ell);
  found->vertices.resize(ell + 1);
  if (!is_good_rainbow_path(h, in_first, *found))
    throw Error(ErrorKind::NotFound, "rainbow search produced an invalid path");
  return *found;
}

}  // namespace lincyc

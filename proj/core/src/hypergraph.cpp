#include "lincyc/hypergraph.hpp"

#include <algorithm>
#include <numeric>

namespace lincyc {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonUniformEdge: return "NonUniformEdge";
    case ErrorKind::DuplicatePair: return "DuplicatePair";
    case ErrorKind::VertexOutOfRange: return "VertexOutOfRange";
    case ErrorKind::NotPartite: return "NotPartite";
    case ErrorKind::EmptyCore: return "EmptyCore";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::SingletonSet: return "SingletonSet";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

namespace detail {

namespace {

constexpr std::uint64_t kEmpty = ~std::uint64_t{0};

std::uint64_t pair_key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void PairIndex::reserve(std::size_t pairs) {
  std::size_t cap = 16;
  while (cap * 2 < pairs * 3) cap <<= 1;
  if (cap <= keys_.size()) return;
  std::vector<std::uint64_t> old_keys = std::move(keys_);
  std::vector<EdgeId> old_values = std::move(values_);
  keys_.assign(cap, kEmpty);
  values_.assign(cap, kNoEdge);
  mask_ = cap - 1;
  size_ = 0;
  for (std::size_t i = 0; i < old_keys.size(); ++i) {
    if (old_keys[i] == kEmpty) continue;
    std::size_t h = mix(old_keys[i]) & mask_;
    while (keys_[h] != kEmpty) h = (h + 1) & mask_;
    keys_[h] = old_keys[i];
    values_[h] = old_values[i];
    ++size_;
  }
}

void PairIndex::grow() { reserve(std::max<std::size_t>(16, size_ * 2 + 1)); }

std::optional<EdgeId> PairIndex::insert(Vertex u, Vertex v, EdgeId e) {
  if (keys_.empty() || (size_ + 1) * 3 > keys_.size() * 2) grow();
  const std::uint64_t key = pair_key(u, v);
  std::size_t h = mix(key) & mask_;
  while (keys_[h] != kEmpty) {
    if (keys_[h] == key) return values_[h];
    h = (h + 1) & mask_;
  }
  keys_[h] = key;
  values_[h] = e;
  ++size_;
  return std::nullopt;
}

std::optional<EdgeId> PairIndex::find(Vertex u, Vertex v) const {
  if (keys_.empty()) return std::nullopt;
  const std::uint64_t key = pair_key(u, v);
  std::size_t h = mix(key) & mask_;
  while (keys_[h] != kEmpty) {
    if (keys_[h] == key) return values_[h];
    h = (h + 1) & mask_;
  }
  return std::nullopt;
}

}  // namespace detail

LinearHypergraph LinearHypergraph::build(std::size_t n, std::size_t r,
                                         const std::vector<std::vector<Vertex>>& edges) {
  if (r < 2) throw Error(ErrorKind::NonUniformEdge, "uniformity must be at least 2");
  LinearHypergraph g;
  g.n_ = n;
  g.r_ = r;
  g.flat_.reserve(edges.size() * r);
  g.pairs_.reserve(edges.size() * r * (r - 1) / 2);
  std::vector<Vertex> e;
  for (std::size_t id = 0; id < edges.size(); ++id) {
    const auto eid = static_cast<EdgeId>(id);
    e = edges[id];
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    if (e.size() != r || edges[id].size() != r) {
      throw BuildError(ErrorKind::NonUniformEdge,
                       "edge " + std::to_string(id) + " has " + std::to_string(edges[id].size()) +
                           " entries (" + std::to_string(e.size()) + " distinct), expected " +
                           std::to_string(r),
                       eid);
    }
    if (e.back() >= n) {
      throw BuildError(ErrorKind::VertexOutOfRange,
                       "edge " + std::to_string(id) + " uses vertex " + std::to_string(e.back()) +
                           " outside 0.." + std::to_string(n == 0 ? 0 : n - 1),
                       eid, 0, e.back());
    }
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = a + 1; b < r; ++b) {
        if (auto prev = g.pairs_.insert(e[a], e[b], eid)) {
          throw BuildError(ErrorKind::DuplicatePair,
                           "edges " + std::to_string(*prev) + " and " + std::to_string(id) +
                               " share pair {" + std::to_string(e[a]) + "," +
                               std::to_string(e[b]) + "}",
                           *prev, eid, e[a], e[b]);
        }
      }
    }
    g.flat_.insert(g.flat_.end(), e.begin(), e.end());
  }
  g.vertices_.resize(n);
  std::iota(g.vertices_.begin(), g.vertices_.end(), Vertex{0});
  g.member_.assign(n, 1);
  g.index();
  return g;
}

LinearHypergraph LinearHypergraph::subgraph(const LinearHypergraph& parent, VertexSet vertices,
                                            std::span<const EdgeId> edges) {
  LinearHypergraph g;
  g.n_ = parent.n_;
  g.r_ = parent.r_;
  g.vertices_ = std::move(vertices);
  g.member_.assign(g.n_, 0);
  for (Vertex v : g.vertices_) g.member_[v] = 1;
  g.flat_.reserve(edges.size() * g.r_);
  g.pairs_.reserve(edges.size() * g.r_ * (g.r_ - 1) / 2);
  for (std::size_t id = 0; id < edges.size(); ++id) {
    auto e = parent.edge(edges[id]);
    g.flat_.insert(g.flat_.end(), e.begin(), e.end());
    for (std::size_t a = 0; a < g.r_; ++a)
      for (std::size_t b = a + 1; b < g.r_; ++b)
        g.pairs_.insert(e[a], e[b], static_cast<EdgeId>(id));
  }
  g.index();
  return g;
}

void LinearHypergraph::index() {
  offsets_.assign(n_ + 1, 0);
  for (Vertex v : flat_) ++offsets_[v + 1];
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  incidence_.assign(flat_.size(), 0);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  const std::size_t m = edge_count();
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t a = 0; a < r_; ++a) incidence_[cursor[flat_[e * r_ + a]]++] = static_cast<EdgeId>(e);
}

std::optional<EdgeId> LinearHypergraph::edge_through(Vertex u, Vertex v) const {
  if (u == v) return std::nullopt;
  return pairs_.find(u, v);
}

std::optional<EdgeId> LinearHypergraph::find_edge(std::span<const Vertex> vertices) const {
  if (vertices.size() != r_ || r_ < 2) return std::nullopt;
  VertexSet s(vertices.begin(), vertices.end());
  std::sort(s.begin(), s.end());
  auto e = edge_through(s[0], s[1]);
  if (!e) return std::nullopt;
  auto got = edge(*e);
  if (!std::equal(got.begin(), got.end(), s.begin())) return std::nullopt;
  return e;
}

double LinearHypergraph::average_degree() const noexcept {
  if (vertices_.empty()) return 0.0;
  return static_cast<double>(r_) * static_cast<double>(edge_count()) /
         static_cast<double>(vertices_.size());
}

std::size_t LinearHypergraph::min_degree() const noexcept {
  if (vertices_.empty()) return 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (Vertex v : vertices_) best = std::min(best, degree(v));
  return best;
}

std::vector<std::vector<Vertex>> LinearHypergraph::edge_list() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(edge_count());
  for (std::size_t e = 0; e < edge_count(); ++e) {
    auto s = edge(static_cast<EdgeId>(e));
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

bool operator==(const LinearHypergraph& a, const LinearHypergraph& b) {
  if (a.n_ != b.n_ || a.r_ != b.r_ || a.edge_count() != b.edge_count()) return false;
  auto ea = a.edge_list();
  auto eb = b.edge_list();
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

DegreeStats degrees(const LinearHypergraph& g) {
  DegreeStats s;
  s.per_vertex.assign(g.universe(), 0);
  for (Vertex v : g.vertices()) s.per_vertex[v] = g.degree(v);
  s.min_degree = g.min_degree();
  s.average_degree = g.average_degree();
  return s;
}

LinearHypergraph induced(const LinearHypergraph& g, const VertexSet& s) {
  std::vector<std::uint8_t> in(g.universe(), 0);
  VertexSet verts;
  for (Vertex v : s)
    if (g.has_vertex(v) && !in[v]) {
      in[v] = 1;
      verts.push_back(v);
    }
  std::sort(verts.begin(), verts.end());
  std::vector<EdgeId> keep;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto ed = g.edge(static_cast<EdgeId>(e));
    if (std::all_of(ed.begin(), ed.end(), [&](Vertex v) { return in[v] != 0; }))
      keep.push_back(static_cast<EdgeId>(e));
  }
  return LinearHypergraph::subgraph(g, std::move(verts), keep);
}

LinearHypergraph edge_induced(const LinearHypergraph& g, std::span<const EdgeId> f) {
  std::vector<EdgeId> ids(f.begin(), f.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  VertexSet verts;
  for (EdgeId e : ids) {
    auto ed = g.edge(e);
    verts.insert(verts.end(), ed.begin(), ed.end());
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return LinearHypergraph::subgraph(g, std::move(verts), ids);
}

VertexSet RPartition::part(int index) const {
  VertexSet out;
  for (std::size_t v = 0; v < part_of_.size(); ++v)
    if (part_of_[v] == index) out.push_back(static_cast<Vertex>(v));
  return out;
}

bool RPartition::edge_is_transversal(std::span<const Vertex> edge) const {
  if (edge.size() != parts_) return false;
  std::vector<std::uint8_t> seen(parts_, 0);
  for (Vertex v : edge) {
    int p = part_of(v);
    if (p < 0 || static_cast<std::size_t>(p) >= parts_ || seen[p]) return false;
    seen[p] = 1;
  }
  return true;
}

bool RPartition::is_partition_of(const LinearHypergraph& g) const {
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (!edge_is_transversal(g.edge(static_cast<EdgeId>(e)))) return false;
  return true;
}

LinearHypergraph partite_subgraph(const LinearHypergraph& g, const RPartition& p) {
  std::vector<EdgeId> keep;
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    if (p.edge_is_transversal(g.edge(static_cast<EdgeId>(e)))) keep.push_back(static_cast<EdgeId>(e));
  return LinearHypergraph::subgraph(g, VertexSet(g.vertices().begin(), g.vertices().end()), keep);
}

namespace {

VertexSet endpoints(const std::vector<ColoredEdge>& edges) {
  VertexSet vs;
  for (const auto& e : edges) {
    vs.push_back(e.u);
    vs.push_back(e.v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace

ColoredGraph::ColoredGraph(std::size_t universe, std::vector<ColoredEdge> edges) {
  VertexSet vs = endpoints(edges);
  *this = ColoredGraph(universe, std::move(vs), std::move(edges));
}

ColoredGraph::ColoredGraph(std::size_t universe, VertexSet vertices, std::vector<ColoredEdge> edges)
    : universe_(universe), vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  member_.assign(universe_, 0);
  for (Vertex v : vertices_) member_[v] = 1;
  adjacency_.assign(universe_, {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    std::sort(e.color.begin(), e.color.end());
    adjacency_[e.u].push_back({e.v, i});
    adjacency_[e.v].push_back({e.u, i});
  }
}

std::size_t ColoredGraph::min_degree() const noexcept {
  if (vertices_.empty()) return 0;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (Vertex v : vertices_) best = std::min(best, adjacency_[v].size());
  return best;
}

double ColoredGraph::average_degree() const noexcept {
  if (vertices_.empty()) return 0.0;
  return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(vertices_.size());
}

namespace {

bool color_avoids(const ColoredGraph& h, const VertexSet& color) {
  return std::none_of(color.begin(), color.end(), [&](Vertex c) { return h.has_vertex(c); });
}

}  // namespace

bool ColoredGraph::strongly_proper() const {
  for (const auto& e : edges_)
    if (!color_avoids(*this, e.color)) return false;
  for (Vertex v : vertices_) {
    const auto& adj = adjacency_[v];
    for (std::size_t a = 0; a < adj.size(); ++a)
      for (std::size_t b = a + 1; b < adj.size(); ++b)
        if (!disjoint(edges_[adj[a].edge].color, edges_[adj[b].edge].color)) return false;
  }
  return true;
}

bool ColoredGraph::strongly_rainbow() const {
  std::vector<std::uint8_t> used(universe_, 0);
  for (const auto& e : edges_) {
    if (!color_avoids(*this, e.color)) return false;
    for (Vertex c : e.color) {
      if (used[c]) return false;
      used[c] = 1;
    }
  }
  return true;
}

ColoredGraph ColoredGraph::edge_subgraph(std::span<const std::size_t> edge_indices) const {
  std::vector<ColoredEdge> es;
  es.reserve(edge_indices.size());
  for (std::size_t i : edge_indices) es.push_back(edges_.at(i));
  return ColoredGraph(universe_, std::move(es));
}

ColoredGraph ColoredGraph::induced(const VertexSet& s) const {
  std::vector<std::uint8_t> in(universe_, 0);
  for (Vertex v : s)
    if (has_vertex(v)) in[v] = 1;
  VertexSet vs;
  for (Vertex v : vertices_)
    if (in[v]) vs.push_back(v);
  std::vector<ColoredEdge> es;
  for (const auto& e : edges_)
    if (in[e.u] && in[e.v]) es.push_back(e);
  return ColoredGraph(universe_, std::move(vs), std::move(es));
}

std::vector<VertexSet> ColoredGraph::components() const {
  std::vector<std::uint8_t> seen(universe_, 0);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (Vertex s : vertices_) {
    if (seen[s]) continue;
    VertexSet comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const auto& inc : adjacency_[v])
        if (!seen[inc.neighbor]) {
          seen[inc.neighbor] = 1;
          stack.push_back(inc.neighbor);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

ColoredGraph project(const LinearHypergraph& g, const RPartition& p, int i, int j) {
  if (i == j || i < 0 || j < 0 || static_cast<std::size_t>(i) >= p.part_count() ||
      static_cast<std::size_t>(j) >= p.part_count())
    throw Error(ErrorKind::PreconditionFailed, "projection needs two distinct valid parts");
  std::vector<ColoredEdge> es;
  es.reserve(g.edge_count());
  VertexSet vs;
  for (Vertex v : g.vertices())
    if (p.part_of(v) == i || p.part_of(v) == j) vs.push_back(v);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto ed = g.edge(static_cast<EdgeId>(e));
    if (!p.edge_is_transversal(ed))
      throw Error(ErrorKind::NotPartite, "edge " + std::to_string(e) + " is not transversal");
    ColoredEdge ce;
    ce.source = static_cast<EdgeId>(e);
    for (Vertex v : ed) {
      int part = p.part_of(v);
      if (part == i) ce.u = v;
      else if (part == j) ce.v = v;
      else ce.color.push_back(v);
    }
    es.push_back(std::move(ce));
  }
  return ColoredGraph(g.universe(), std::move(vs), std::move(es));
}

std::size_t intersection_size(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::size_t count = 0;
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (*x < *y) ++x;
    else if (*y < *x) ++y;
    else {
      ++count;
      ++x;
      ++y;
    }
  }
  return count;
}

bool disjoint(std::span<const Vertex> a, std::span<const Vertex> b) {
  return intersection_size(a, b) == 0;
}

namespace {

std::optional<Rejection> check_sequence(const LinearHypergraph& g, std::vector<VertexSet>& edges,
                                        bool cyclic) {
  const std::size_t t = edges.size();
  for (std::size_t i = 0; i < t; ++i) {
    auto& e = edges[i];
    std::sort(e.begin(), e.end());
    if (e.size() != g.uniformity() || std::adjacent_find(e.begin(), e.end()) != e.end())
      return Rejection{i, i, "edge has wrong size"};
    if (!g.find_edge(e)) return Rejection{i, i, "not an edge of the graph"};
  }
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = i + 1; j < t; ++j) {
      const bool adjacent = j == i + 1 || (cyclic && i == 0 && j == t - 1);
      const std::size_t meet = intersection_size(edges[i], edges[j]);
      if (adjacent && meet != 1)
        return Rejection{i, j, "consecutive edges meet in " + std::to_string(meet) + " vertices"};
      if (!adjacent && meet != 0)
        return Rejection{i, j, "non-consecutive edges meet in " + std::to_string(meet) + " vertices"};
    }
  }
  return std::nullopt;
}

}  // namespace

Checked<LinearPath> verify_path(const LinearHypergraph& g, const std::vector<VertexSet>& edges) {
  LinearPath p{edges};
  if (auto bad = check_sequence(g, p.edges, false)) return *bad;
  return p;
}

Checked<LinearCycle> verify_cycle(const LinearHypergraph& g, const std::vector<VertexSet>& edges) {
  if (edges.size() < 3) return Rejection{0, edges.empty() ? 0 : edges.size() - 1, "cycle needs at least 3 edges"};
  LinearCycle c{edges};
  if (auto bad = check_sequence(g, c.edges, true)) return *bad;
  VertexSet all;
  for (const auto& e : c.edges) all.insert(all.end(), e.begin(), e.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.size() != (g.uniformity() - 1) * c.edges.size())
    return Rejection{0, c.edges.size() - 1, "cycle has the wrong number of vertices"};
  return c;
}

bool path_starts_at(const LinearPath& path, Vertex x) {
  if (path.edges.empty()) return false;
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    const bool in = std::binary_search(path.edges[i].begin(), path.edges[i].end(), x);
    if (in != (i == 0)) return false;
  }
  return true;
}

std::vector<std::size_t> CycleFamily::lengths() const {
  std::vector<std::size_t> out;
  out.reserve(cycles.size());
  for (const auto& c : cycles) out.push_back(c.length());
  return out;
}

std::optional<std::string> check_family(const LinearHypergraph& g, const CycleFamily& family) {
  if (family.cycles.empty()) return "empty family";
  for (std::size_t i = 0; i < family.cycles.size(); ++i) {
    auto res = verify_cycle(g, family.cycles[i].edges);
    if (!res)
      return "cycle " + std::to_string(i) + ": " + res.rejection().reason + " at (" +
             std::to_string(res.rejection().first) + "," + std::to_string(res.rejection().second) + ")";
  }
  auto ls = family.lengths();
  std::sort(ls.begin(), ls.end());
  const std::size_t step = family.parity == Parity::Even ? 2 : 1;
  if (family.parity == Parity::Even && ls.front() % 2 != 0) return "even family has odd length";
  for (std::size_t i = 1; i < ls.size(); ++i)
    if (ls[i] != ls[i - 1] + step) return "lengths are not consecutive";
  if (family.shortest != ls.front()) return "shortest does not match the family";
  return std::nullopt;
}

}  // namespace lincyc

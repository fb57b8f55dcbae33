#include "lincyc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "json.hpp"
#include "lincyc/oracle.hpp"
#include "lincyc/reductions.hpp"

namespace lincyc {

__extension__ using Wide = unsigned __int128;

TraceEntry& TraceEntry::set(const std::string& key, TraceValue value) {
  values.emplace_back(key, std::move(value));
  return *this;
}

EngineMode parse_engine_mode(const std::string& s) {
  if (s == "all") return EngineMode::All;
  if (s == "even") return EngineMode::Even;
  if (s == "c2k" || s == "exact") return EngineMode::Exact;
  throw Error(ErrorKind::Parse, "unknown mode '" + s + "'");
}

const char* to_string(EngineMode m) noexcept {
  switch (m) {
    case EngineMode::All: return "all";
    case EngineMode::Even: return "even";
    case EngineMode::Exact: return "c2k";
  }
  return "?";
}

namespace {

using Json = nlohmann::ordered_json;

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

TraceEntry entry(const std::string& stage) { return TraceEntry{stage, {}}; }

void fail(LemmaResult& res, const std::string& stage, const std::string& reason) {
  res.failure = stage + ": " + reason;
  res.trace.push_back(entry(stage).set("failure", reason));
}

std::optional<CycleFamily> make_family(const LinearHypergraph& g, std::vector<LinearCycle> cycles, Parity parity,
                                       std::string& problem) {
  std::sort(cycles.begin(), cycles.end(),
            [](const LinearCycle& a, const LinearCycle& b) { return a.length() < b.length(); });
  CycleFamily fam;
  fam.parity = parity;
  fam.cycles = std::move(cycles);
  fam.shortest = fam.cycles.empty() ? 0 : fam.cycles.front().length();
  if (auto bad = check_family(g, fam)) {
    problem = *bad;
    return std::nullopt;
  }
  return fam;
}

// Peel to minimum degree at least half the average, then the components in
// order of their smallest vertex.
std::vector<ColoredGraph> dense_components(const ColoredGraph& b) {
  std::vector<ColoredGraph> out;
  if (b.edge_count() == 0) return out;
  PeelResult peel = degenerate_ordering(b, b.average_degree() / 2.0);
  for (const auto& comp : peel.core.components()) out.push_back(peel.core.induced(comp));
  return out;
}

std::vector<VertexSet> rainbow_edges(const LinearHypergraph& g, const ColoredGraph& b, const RainbowPath& p,
                                     std::size_t from, std::size_t to) {
  std::vector<VertexSet> out;
  for (std::size_t i = from; i < to; ++i) out.push_back(g.edge_set(b.edge(p.edges[i]).source));
  return out;
}

// Vertices of `edge` other than those in `skip`, colors of a projection edge.
VertexSet color_of(std::span<const Vertex> edge, Vertex a, Vertex b) {
  VertexSet c;
  for (Vertex v : edge)
    if (v != a && v != b) c.push_back(v);
  return c;
}

SearchOptions search_of(const EngineOptions& opts) {
  SearchOptions s = opts.search;
  s.best_effort = s.best_effort || opts.best_effort;
  return s;
}

bool pairs_distinct(const ColoredGraph& b) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (const auto& e : b.edges()) pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(pairs.begin(), pairs.end());
  return std::adjacent_find(pairs.begin(), pairs.end()) == pairs.end();
}

}  // namespace

LinearHypergraph transversal_cleanup(const LinearHypergraph& h, const std::vector<VertexSet>& matching,
                                     std::uint64_t seed, std::size_t max_attempts) {
  const std::size_t n = h.universe();
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < matching.size(); ++i)
    for (Vertex v : matching[i]) {
      if (v >= n) continue;
      if (owner[v] >= 0) throw Error(ErrorKind::PreconditionFailed, "matching members overlap");
      owner[v] = static_cast<int>(i);
    }
  if (matching.empty() || h.edge_count() == 0) return h;
  const std::size_t width = matching.front().size();
  Wide scale = 1;
  for (std::size_t i = 0; i < width; ++i) scale *= width;
  std::mt19937_64 rng(seed);
  std::vector<Vertex> chosen(matching.size());
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (std::size_t i = 0; i < matching.size(); ++i) {
      std::uniform_int_distribution<std::size_t> pick(0, matching[i].size() - 1);
      chosen[i] = matching[i][pick(rng)];
    }
    std::vector<EdgeId> kept;
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
      bool ok = true;
      for (Vertex v : h.edge(e))
        if (owner[v] >= 0 && chosen[static_cast<std::size_t>(owner[v])] != v) ok = false;
      if (ok) kept.push_back(e);
    }
    if (static_cast<Wide>(kept.size()) * scale < static_cast<Wide>(h.edge_count())) continue;
    auto out = edge_induced(h, kept);
    bool transversal = true;
    for (const auto& member : matching) {
      std::size_t hits = 0;
      for (Vertex v : member) hits += out.has_vertex(v) ? 1 : 0;
      if (hits > 1) transversal = false;
    }
    if (!transversal) throw Error(ErrorKind::PreconditionFailed, "cleanup left a member with two kept vertices");
    return out;
  }
  throw Error(ErrorKind::RetriesExhausted, "transversal cleanup kept too few edges");
}

LemmaResult cycles_from_boundary(const LinearHypergraph& g, const RPartition& p, const Mert& tree, std::size_t t,
                                 std::size_t k, const EngineOptions& opts) {
  LemmaResult res;
  const std::size_t r = g.uniformity();
  if (t < 1 || t > tree.height) {
    fail(res, "boundary", "segment index out of range");
    return res;
  }
  const VertexSet& x_level = tree.levels[t - 1];
  const int part_x = tree.level_part[t - 1];
  const int seg = static_cast<int>(t);
  auto earlier = [&](Vertex v) {
    return tree.segment_of[v] >= 0 && tree.segment_of[v] < seg && !std::binary_search(x_level.begin(), x_level.end(), v);
  };

  // D: edges through L_{t-1} that reach segment t and avoid everything else explored before it.
  std::vector<EdgeId> d_edges;
  for (Vertex a : x_level)
    for (EdgeId e : g.incident(a)) {
      auto ed = g.edge(e);
      bool reaches = false, clean = true;
      for (Vertex v : ed) {
        if (tree.segment_of[v] == seg) reaches = true;
        if (earlier(v)) clean = false;
      }
      if (reaches && clean) d_edges.push_back(e);
    }
  std::sort(d_edges.begin(), d_edges.end());
  d_edges.erase(std::unique(d_edges.begin(), d_edges.end()), d_edges.end());

  const std::size_t lt = t < tree.levels.size() ? tree.levels[t].size() : 0;
  const double threshold = 8.0 * static_cast<double>(k * r * (r - 1)) * static_cast<double>(x_level.size() + lt);
  auto stage = entry("boundary");
  stage.set("t", as_int(t)).set("e_D", as_int(d_edges.size())).set("threshold", threshold);

  std::vector<std::size_t> per_part(r, 0);
  for (EdgeId e : d_edges)
    for (Vertex v : g.edge(e))
      if (tree.segment_of[v] == seg && p.part_of(v) != part_x) ++per_part[static_cast<std::size_t>(p.part_of(v))];
  int part_y = -1;
  for (int j = 0; j < static_cast<int>(r); ++j)
    if (j != part_x && (part_y < 0 || per_part[j] > per_part[part_y])) part_y = j;
  stage.set("part_x", as_int(static_cast<std::size_t>(part_x))).set("part_y", as_int(static_cast<std::size_t>(part_y)));
  res.trace.push_back(stage);
  if (!opts.best_effort && static_cast<double>(d_edges.size()) < threshold) {
    fail(res, "boundary", "not enough density");
    return res;
  }

  std::vector<ColoredEdge> proj;
  for (EdgeId e : d_edges) {
    Vertex a = kNoVertex, b = kNoVertex;
    for (Vertex v : g.edge(e)) {
      if (p.part_of(v) == part_x) a = v;
      if (p.part_of(v) == part_y && tree.segment_of[v] == seg) b = v;
    }
    if (a == kNoVertex || b == kNoVertex) continue;
    proj.push_back({a, b, color_of(g.edge(e), a, b), e});
  }
  const std::size_t d_prime = proj.size();
  ColoredGraph b(g.universe(), std::move(proj));
  if (b.edge_count() != d_prime || !pairs_distinct(b)) {
    fail(res, "boundary", "projection is not injective");
    return res;
  }
  res.trace.push_back(entry("projection").set("e_B", as_int(b.edge_count())).set("average_degree", b.average_degree()));
  if (b.edge_count() == 0) {
    fail(res, "boundary", "empty projection");
    return res;
  }

  auto comps = dense_components(b);
  if (!opts.best_effort && comps.size() > 1) comps.resize(1);
  for (const auto& bp : comps) {
    VertexSet s;
    for (Vertex v : bp.vertices())
      if (std::binary_search(x_level.begin(), x_level.end(), v)) s.push_back(v);
    auto comp_entry = entry("component");
    comp_entry.set("vertices", as_int(bp.vertices().size())).set("min_degree", as_int(bp.min_degree()))
        .set("S", as_int(s.size()));
    if (s.size() < 2) {
      res.trace.push_back(comp_entry.set("failure", "S is a single vertex"));
      continue;
    }
    std::vector<double> weight(g.universe(), 0.0);
    for (Vertex v : s) weight[v] = static_cast<double>(bp.degree(v));
    auto bundle = anchor_and_label(tree, s, [&](Vertex v) { return weight[v]; });
    std::vector<bool> in_first(bp.edge_count());
    std::size_t first_count = 0;
    for (std::size_t i = 0; i < bp.edge_count(); ++i) {
      const auto& e = bp.edge(i);
      const Vertex a = std::binary_search(x_level.begin(), x_level.end(), e.u) ? e.u : e.v;
      in_first[i] = bundle.label_of(a) == 1;
      first_count += in_first[i] ? 1 : 0;
    }
    comp_entry.set("anchor_level", as_int(bundle.level)).set("E1", as_int(first_count))
        .set("E2", as_int(bp.edge_count() - first_count));
    RainbowPath path;
    try {
      path = rainbow_special_path(bp, in_first, 2 * k, search_of(opts));
    } catch (const Error& err) {
      res.trace.push_back(comp_entry.set("failure", std::string(err.what())));
      continue;
    }
    res.trace.push_back(comp_entry);
    if (!std::binary_search(x_level.begin(), x_level.end(), path.vertices.front())) {
      fail(res, "assembly", "rainbow path starts outside the level");
      return res;
    }
    const std::size_t m = t - 1 - bundle.level;
    std::vector<LinearCycle> cycles;
    const Vertex a1 = path.vertices.front();
    for (std::size_t i = 2; i <= k + 1; ++i) {
      const Vertex ai = path.vertices[2 * (i - 1)];
      LinearCycle c;
      c.edges = rainbow_edges(g, bp, path, 0, 2 * (i - 1));
      auto back = expand_tree_path(tree, tree_path(tree, ai, a1));
      c.edges.insert(c.edges.end(), back.edges.begin(), back.edges.end());
      cycles.push_back(std::move(c));
    }
    std::string problem;
    auto fam = make_family(g, std::move(cycles), Parity::Even, problem);
    if (!fam) {
      fail(res, "assembly", problem);
      return res;
    }
    if (fam->shortest != 2 * m + 2) {
      fail(res, "assembly", "shortest length does not match the tree depth");
      return res;
    }
    res.m = m;
    res.family = std::move(fam);
    res.trace.push_back(entry("boundary_cycles").set("m", as_int(m)).set("shortest", as_int(2 * m + 2)));
    return res;
  }
  fail(res, "boundary", "no component produced a rainbow path");
  return res;
}

LemmaResult cycles_from_internal(const LinearHypergraph& g, const RPartition& p, const Mert& tree, std::size_t t,
                                 std::size_t k, std::uint64_t seed, const EngineOptions& opts) {
  LemmaResult res;
  const std::size_t r = g.uniformity();
  if (t < 1 || t > tree.height) {
    fail(res, "internal", "segment index out of range");
    return res;
  }
  const int seg = static_cast<int>(t);
  const int part_x = tree.level_part[t - 1];

  std::vector<EdgeId> f_edges;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    std::size_t hits = 0;
    bool clean = true;
    for (Vertex v : g.edge(e)) {
      const int s = tree.segment_of[v];
      if (s >= 0 && s < seg) clean = false;
      if (s == seg) ++hits;
    }
    if (clean && hits >= 2) f_edges.push_back(e);
  }
  const double threshold = 8.0 * static_cast<double>(k) * std::pow(static_cast<double>(r), static_cast<double>(r) + 2) *
                           static_cast<double>(tree.levels[t].size());
  res.trace.push_back(entry("internal").set("t", as_int(t)).set("e_F", as_int(f_edges.size())).set("threshold", threshold));
  if (!opts.best_effort && static_cast<double>(f_edges.size()) < threshold) {
    fail(res, "internal", "not enough density");
    return res;
  }
  if (f_edges.empty()) {
    fail(res, "internal", "no edge meets the segment twice");
    return res;
  }

  std::vector<VertexSet> matching;
  for (EdgeId e : tree.segments[t]) {
    VertexSet member;
    for (Vertex v : g.edge(e))
      if (tree.segment_of[v] == seg) member.push_back(v);
    matching.push_back(std::move(member));
  }
  auto f_graph = edge_induced(g, f_edges);
  LinearHypergraph cleaned;
  try {
    cleaned = transversal_cleanup(f_graph, matching, seed);
  } catch (const Error& err) {
    fail(res, "cleanup", err.what());
    return res;
  }
  for (EdgeId e : tree.segments[t]) {
    std::size_t hits = 0;
    for (Vertex v : g.edge(e)) hits += cleaned.has_vertex(v) ? 1 : 0;
    if (hits > 1) {
      fail(res, "cleanup", "a segment edge meets the cleaned graph twice");
      return res;
    }
  }

  // Best pair of parts (other than the level's) met inside segment t.
  int best_i = -1, best_j = -1;
  std::size_t best_count = 0;
  for (int i = 0; i < static_cast<int>(r); ++i)
    for (int j = i + 1; j < static_cast<int>(r); ++j) {
      if (i == part_x || j == part_x) continue;
      std::size_t count = 0;
      for (EdgeId e = 0; e < cleaned.edge_count(); ++e) {
        bool hi = false, hj = false;
        for (Vertex v : cleaned.edge(e)) {
          if (tree.segment_of[v] != seg) continue;
          hi = hi || p.part_of(v) == i;
          hj = hj || p.part_of(v) == j;
        }
        if (hi && hj) ++count;
      }
      if (best_i < 0 || count > best_count) {
        best_i = i;
        best_j = j;
        best_count = count;
      }
    }
  res.trace.push_back(entry("cleanup").set("e_F1", as_int(cleaned.edge_count())).set("e_F2", as_int(best_count))
                          .set("part_i", as_int(static_cast<std::size_t>(best_i)))
                          .set("part_j", as_int(static_cast<std::size_t>(best_j))));
  if (best_count == 0) {
    fail(res, "internal", "no edge meets two chosen parts inside the segment");
    return res;
  }

  std::vector<ColoredEdge> proj;
  for (EdgeId e = 0; e < cleaned.edge_count(); ++e) {
    Vertex a = kNoVertex, b = kNoVertex;
    for (Vertex v : cleaned.edge(e)) {
      if (tree.segment_of[v] != seg) continue;
      if (p.part_of(v) == best_i) a = v;
      if (p.part_of(v) == best_j) b = v;
    }
    if (a == kNoVertex || b == kNoVertex) continue;
    auto id = g.find_edge(cleaned.edge(e));
    proj.push_back({a, b, color_of(cleaned.edge(e), a, b), *id});
  }
  const std::size_t count = proj.size();
  ColoredGraph b(g.universe(), std::move(proj));
  if (b.edge_count() != count || !pairs_distinct(b)) {
    fail(res, "internal", "projection is not injective");
    return res;
  }

  auto comps = dense_components(b);
  if (!opts.best_effort && comps.size() > 1) comps.resize(1);
  for (const auto& bs : comps) {
    auto v_of = [&](Vertex y) { return tree.attach[y]; };
    VertexSet s;
    for (Vertex y : bs.vertices()) s.push_back(v_of(y));
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto comp_entry = entry("component");
    comp_entry.set("vertices", as_int(bs.vertices().size())).set("min_degree", as_int(bs.min_degree()))
        .set("S", as_int(s.size()));
    if (s.size() < 2) {
      res.trace.push_back(comp_entry.set("failure", "S is a single vertex"));
      continue;
    }
    auto bundle = anchor_and_label(tree, s);
    std::vector<bool> same(bs.edge_count());
    std::size_t same_count = 0;
    for (std::size_t i = 0; i < bs.edge_count(); ++i) {
      const auto& e = bs.edge(i);
      same[i] = bundle.label_of(v_of(e.u)) == bundle.label_of(v_of(e.v));
      same_count += same[i] ? 1 : 0;
    }
    const std::size_t diff_count = bs.edge_count() - same_count;
    const bool case_one = same_count >= diff_count;
    std::vector<bool> in_first(bs.edge_count());
    for (std::size_t i = 0; i < bs.edge_count(); ++i) in_first[i] = case_one ? !same[i] : same[i];
    comp_entry.set("anchor_level", as_int(bundle.level)).set("M", as_int(same_count)).set("N", as_int(diff_count))
        .set("case", as_int(case_one ? 1 : 2));
    RainbowPath path;
    try {
      path = rainbow_special_path(bs, in_first, 2 * k, search_of(opts));
    } catch (const Error& err) {
      res.trace.push_back(comp_entry.set("failure", std::string(err.what())));
      continue;
    }
    res.trace.push_back(comp_entry);

    // Closes the rainbow subpath between positions from..to through the hooks and the tree.
    auto close = [&](std::size_t from, std::size_t to) {
      const Vertex a = path.vertices[from], z = path.vertices[to];
      LinearCycle c;
      auto up = expand_tree_path(tree, tree_path(tree, v_of(z), v_of(a)));
      c.edges = up.edges;
      c.edges.push_back(g.edge_set(tree.hyperedge[a]));
      auto mid = rainbow_edges(g, bs, path, from, to);
      c.edges.insert(c.edges.end(), mid.begin(), mid.end());
      c.edges.push_back(g.edge_set(tree.hyperedge[z]));
      return c;
    };
    std::vector<LinearCycle> cycles;
    if (case_one) {
      for (std::size_t i = 1; i <= 2 * k; ++i) cycles.push_back(close(0, i));
    } else {
      for (std::size_t i = 1; i <= k; ++i) {
        cycles.push_back(close(1, 2 * i));
        cycles.push_back(close(0, 2 * i));
      }
    }
    const std::size_t m = t - bundle.level;
    std::string problem;
    auto fam = make_family(g, std::move(cycles), Parity::All, problem);
    if (!fam) {
      fail(res, "assembly", problem);
      return res;
    }
    if (fam->shortest != 2 * m + 1) {
      fail(res, "assembly", "shortest length does not match the tree depth");
      return res;
    }
    res.m = m;
    res.family = std::move(fam);
    res.trace.push_back(entry("internal_cycles").set("m", as_int(m)).set("shortest", as_int(2 * m + 1)));
    return res;
  }
  fail(res, "internal", "no component produced a rainbow path");
  return res;
}

std::string EngineReport::to_json() const {
  Json j;
  j["outcome"] = outcome;
  j["lengths"] = family ? family->lengths() : std::vector<std::size_t>{};
  j["shortest"] = family ? Json(family->shortest) : Json(nullptr);
  j["bound"] = bound ? Json(*bound) : Json(nullptr);
  j["regime"] = Json{{"in_regime", in_regime}, {"c1", c1}, {"c2", c2}};
  auto trace_json = Json::array();
  for (const auto& t : trace) {
    Json item;
    item["stage"] = t.stage;
    for (const auto& [key, value] : t.values)
      std::visit([&, &key = key](const auto& v) { item[key] = v; }, value);
    trace_json.push_back(std::move(item));
  }
  j["trace"] = std::move(trace_json);
  j["seed"] = seed;
  j["mode"] = to_string(mode);
  j["k"] = k;
  auto cycles = Json::array();
  if (family)
    for (const auto& c : family->cycles) cycles.push_back(c.edges);
  j["cycles"] = std::move(cycles);
  return j.dump();
}

namespace {

void append(Trace& into, const Trace& from) { into.insert(into.end(), from.begin(), from.end()); }

EngineReport base_report(EngineMode mode, std::size_t k, std::uint64_t seed) {
  EngineReport rep;
  rep.mode = mode;
  rep.k = k;
  rep.seed = seed;
  return rep;
}

EngineReport failed(EngineReport rep, const std::string& stage, const std::string& reason) {
  rep.outcome = "failure";
  rep.trace.push_back(entry(stage).set("failure", reason));
  return rep;
}

}  // namespace

EngineReport consecutive_cycles(const LinearHypergraph& g, std::size_t k, std::uint64_t seed,
                                const EngineOptions& opts) {
  EngineReport rep = base_report(EngineMode::All, k, seed);
  const std::size_t r = g.uniformity();
  Constants c{r, k};
  const double dg = g.average_degree();
  const auto n = static_cast<double>(g.vertex_count());
  rep.c1 = c.c1_all();
  rep.c2 = c.c2_all();
  rep.in_regime = dg >= rep.c1 * static_cast<double>(k);
  rep.bound = all_lengths_bound(c, n, dg);
  rep.trace.push_back(entry("input").set("n", as_int(g.vertex_count())).set("edges", as_int(g.edge_count()))
                          .set("average_degree", dg));
  if (k == 0) return failed(rep, "input", "k must be positive");
  if (opts.strict && !rep.in_regime) return failed(rep, "regime", "average degree below c1*k");
  if (g.edge_count() == 0) return failed(rep, "input", "no edges");

  SearchOptions search = opts.search;
  search.best_effort = search.best_effort || opts.best_effort;
  LinearHypergraph core;
  try {
    core = min_degree_subgraph(g, dg);
  } catch (const Error& err) {
    return failed(rep, "core", err.what());
  }
  const double delta = static_cast<double>(core.min_degree());
  const double d_formula = std::pow(static_cast<double>(r), 1.5) * std::ldexp(1.0, static_cast<int>(2 * r + 2)) *
                         std::sqrt(dg / static_cast<double>(r) * static_cast<double>(k));
  const double d = search.best_effort ? std::max(1.0, std::min(d_formula, delta / 2.0)) : d_formula;
  rep.trace.push_back(entry("core").set("vertices", as_int(core.vertex_count())).set("min_degree", delta)
                          .set("d", d_formula).set("d_used", d));

  std::mt19937_64 rng(seed);
  std::vector<Vertex> starts(core.vertices().begin(), core.vertices().end());
  std::shuffle(starts.begin(), starts.end(), rng);
  const std::size_t tries = search.best_effort ? std::min<std::size_t>(starts.size(), opts.max_roots) : 1;
  for (std::size_t attempt = 0; attempt < tries; ++attempt) {
    const Vertex x0 = starts[attempt];
    const std::uint64_t sub_seed = rng();
    AnchoredSubgraph anchored;
    try {
      anchored = anchored_subgraph(core, x0, d, sub_seed, search);
    } catch (const Error& err) {
      rep.trace.push_back(entry("anchored").set("root", as_int(x0)).set("failure", std::string(err.what())));
      continue;
    }
    VertexSet candidates;
    std::set_intersection(anchored.a.begin(), anchored.a.end(), anchored.f.vertices().begin(),
                          anchored.f.vertices().end(), std::back_inserter(candidates));
    rep.trace.push_back(entry("anchored").set("root", as_int(x0)).set("m", as_int(anchored.m))
                            .set("A", as_int(anchored.a.size())).set("F_edges", as_int(anchored.f.edge_count()))
                            .set("F_min_degree", as_int(anchored.f.min_degree()))
                            .set("repaired", as_int(anchored.repaired)));
    if (candidates.empty()) continue;
    const Vertex x = candidates.front();
    PanConnectedFamily pan;
    try {
      pan = pan_connected(anchored.f, x, k, sub_seed ^ 0x5bd1e995ULL, search);
    } catch (const Error& err) {
      rep.trace.push_back(entry("pan_connected").set("x", as_int(x)).set("failure", std::string(err.what())));
      continue;
    }
    Vertex y = kNoVertex;
    for (Vertex v : pan.f)
      if (std::binary_search(anchored.a.begin(), anchored.a.end(), v)) y = v;
    rep.trace.push_back(entry("pan_connected").set("x", as_int(x)).set("y", as_int(y)).set("t", as_int(pan.t))
                            .set("d_used", pan.d_used));
    if (y == kNoVertex || y == x) continue;

    // Shortest x-y path inside the union of the two anchor paths.
    std::vector<EdgeId> union_edges = anchored.layers.path_edges(x);
    auto py = anchored.layers.path_edges(y);
    union_edges.insert(union_edges.end(), py.begin(), py.end());
    std::sort(union_edges.begin(), union_edges.end());
    union_edges.erase(std::unique(union_edges.begin(), union_edges.end()), union_edges.end());
    auto joint = edge_induced(core, union_edges);
    if (!joint.has_vertex(x) || !joint.has_vertex(y)) continue;
    BfsLayers from_x(joint, x);
    if (from_x.distance(y) < 0) continue;
    LinearPath pxy = from_x.path_to(y);

    const bool y_in_junction = std::binary_search(pan.e.begin(), pan.e.end(), y);
    std::vector<LinearCycle> cycles;
    for (const auto& q : pan.paths) {
      LinearCycle cyc;
      cyc.edges = q.edges;
      if (y_in_junction) cyc.edges.pop_back();
      for (auto it = pxy.edges.rbegin(); it != pxy.edges.rend(); ++it) cyc.edges.push_back(*it);
      cycles.push_back(std::move(cyc));
    }
    std::string problem;
    auto fam = make_family(g, std::move(cycles), Parity::All, problem);
    if (!fam) {
      rep.trace.push_back(entry("assembly").set("failure", problem));
      continue;
    }
    fam->bound = rep.bound;
    const std::size_t certificate = 2 * anchored.m + pan.t + 3;
    rep.trace.push_back(entry("cycles").set("q", as_int(pxy.length())).set("m", as_int(anchored.m))
                            .set("t", as_int(pan.t)).set("shortest", as_int(fam->shortest))
                            .set("certificate", as_int(certificate))
                            .set("y_in_junction", as_int(y_in_junction ? 1 : 0)));
    rep.family = std::move(fam);
    rep.outcome = "cycles";
    return rep;
  }
  return failed(rep, "search", "no start vertex produced a family");
}

EngineReport even_consecutive_cycles(const LinearHypergraph& g, std::size_t k, std::uint64_t seed,
                                     const EngineOptions& opts) {
  EngineReport rep = base_report(EngineMode::Even, k, seed);
  const std::size_t r = g.uniformity();
  Constants c{r, k};
  const double dg = g.average_degree();
  const auto n = static_cast<double>(g.vertex_count());
  rep.c1 = c.c1_even();
  rep.c2 = c.c2_even();
  rep.in_regime = dg >= rep.c1 * static_cast<double>(k);
  rep.bound = even_lengths_bound(c, n, dg);
  rep.trace.push_back(entry("input").set("n", as_int(g.vertex_count())).set("edges", as_int(g.edge_count()))
                          .set("average_degree", dg));
  if (k == 0) return failed(rep, "input", "k must be positive");
  if (opts.strict && !rep.in_regime) return failed(rep, "regime", "average degree below c1*k");
  if (g.edge_count() == 0) return failed(rep, "input", "no edges");

  EngineOptions lemma_opts = opts;
  lemma_opts.search.best_effort = opts.search.best_effort || opts.best_effort;
  std::mt19937_64 rng(seed);

  PartiteReduction pr;
  try {
    pr = r_partite_reduction(g, rng());
  } catch (const Error& err) {
    return failed(rep, "partite", err.what());
  }
  const double dp = pr.graph.average_degree();
  rep.trace.push_back(entry("partite").set("edges", as_int(pr.graph.edge_count())).set("average_degree", dp)
                          .set("restarts", as_int(pr.restarts)));
  if (pr.graph.edge_count() == 0) return failed(rep, "partite", "no transversal edges");
  LinearHypergraph gm;
  try {
    gm = d_minimal(pr.graph, dp);
  } catch (const Error& err) {
    return failed(rep, "minimal", err.what());
  }
  const double dm = gm.average_degree();
  const auto p_count = partite_layer_count(c, static_cast<double>(gm.vertex_count()), dp);
  rep.trace.push_back(entry("minimal").set("vertices", as_int(gm.vertex_count())).set("edges", as_int(gm.edge_count()))
                          .set("average_degree", dm)
                          .set("p", p_count ? TraceValue(*p_count) : TraceValue(std::string("undefined"))));

  std::vector<Vertex> roots;
  for (Vertex v : gm.vertices())
    if (gm.degree(v) > 0) roots.push_back(v);
  std::shuffle(roots.begin(), roots.end(), rng);
  const bool wide = lemma_opts.best_effort;
  const std::size_t tries = wide ? std::min<std::size_t>(roots.size(), opts.max_roots) : std::min<std::size_t>(roots.size(), 1);
  const double growth_target = dp / (64.0 * static_cast<double>(k) * std::pow(static_cast<double>(r), static_cast<double>(r) + 2));

  for (std::size_t attempt = 0; attempt < tries; ++attempt) {
    const Vertex x = roots[attempt];
    RPartition part(gm.universe(), r);
    const int swap_with = pr.partition.part_of(x);
    for (Vertex v : gm.vertices()) {
      int q = pr.partition.part_of(v);
      if (q == swap_with) q = 0;
      else if (q == 0) q = swap_with;
      part.assign(v, q);
    }
    Mert tree = build_mert(gm, part, x);
    std::vector<std::uint8_t> in_h(gm.edge_count(), 0);
    for (const auto& s : tree.segments)
      for (EdgeId e : s) in_h[e] = 1;
    std::vector<std::size_t> g1(tree.height + 2, 0), fi(tree.height + 2, 0);
    for (EdgeId e = 0; e < gm.edge_count(); ++e) {
      if (in_h[e]) continue;
      int low = -1;
      for (Vertex v : gm.edge(e)) {
        const int s = tree.segment_of[v];
        if (s >= 0 && (low < 0 || s < low)) low = s;
      }
      if (low < 1) continue;
      std::size_t hits = 0;
      for (Vertex v : gm.edge(e)) hits += tree.segment_of[v] == low ? 1 : 0;
      (hits == 1 ? g1 : fi)[static_cast<std::size_t>(low)]++;
    }
    std::size_t u = 1;
    rep.trace.push_back(entry("mert").set("root", as_int(x)).set("height", as_int(tree.height))
                            .set("fallback", as_int(tree.last_level_fallback ? 1 : 0)));
    for (std::size_t i = 1; i <= tree.height; ++i) {
      const std::size_t li = tree.levels[i].size();
      const std::size_t next = i + 1 < tree.levels.size() ? tree.levels[i + 1].size() : 0;
      const std::size_t prev_u = u;
      u += li;
      rep.trace.push_back(entry("layer").set("i", as_int(i)).set("L", as_int(li)).set("U", as_int(u))
                              .set("growth", static_cast<double>(u) / static_cast<double>(prev_u))
                              .set("growth_target", growth_target).set("e_G1", as_int(g1[i]))
                              .set("G1_threshold", 8.0 * static_cast<double>(k * r * r * r) * static_cast<double>(li + next))
                              .set("e_F", as_int(fi[i])));
      if (i + 1 <= tree.height) {
        auto b = cycles_from_boundary(gm, part, tree, i + 1, k, lemma_opts);
        if (b.family || lemma_opts.best_effort) append(rep.trace, b.trace);
        if (b.family) {
          b.family->bound = rep.bound;
          rep.family = std::move(b.family);
          rep.outcome = "cycles";
          const std::size_t ell = rep.family->shortest / 2 - 1;
          rep.trace.push_back(entry("result").set("lemma", "boundary").set("ell", as_int(ell))
                                  .set("ell_bound", p_count ? TraceValue(*p_count - 1) : TraceValue(std::string("undefined"))));
          return rep;
        }
      }
      auto in = cycles_from_internal(gm, part, tree, i, k, rng(), lemma_opts);
      if (in.family || lemma_opts.best_effort) append(rep.trace, in.trace);
      if (in.family) {
        CycleFamily even;
        even.parity = Parity::Even;
        for (auto& cyc : in.family->cycles)
          if (cyc.length() % 2 == 0) even.cycles.push_back(std::move(cyc));
        even.shortest = even.cycles.front().length();
        even.bound = rep.bound;
        if (auto bad = check_family(gm, even)) {
          rep.trace.push_back(entry("assembly").set("failure", *bad));
          continue;
        }
        rep.family = std::move(even);
        rep.outcome = "cycles";
        const std::size_t ell = rep.family->shortest / 2 - 1;
        rep.trace.push_back(entry("result").set("lemma", "internal").set("ell", as_int(ell))
                                .set("ell_bound", p_count ? TraceValue(*p_count - 1) : TraceValue(std::string("undefined"))));
        return rep;
      }
    }
  }
  if (rep.in_regime && !lemma_opts.best_effort) {
    rep.outcome = "contradiction";
    rep.trace.push_back(entry("contradiction").set("failure", "no layer fired inside the density regime"));
    return rep;
  }
  return failed(rep, "layers", "no layer produced a family");
}

EngineReport find_c2k(const LinearHypergraph& g, std::size_t k, std::uint64_t seed, const EngineOptions& opts) {
  EngineReport rep = base_report(EngineMode::Exact, k, seed);
  const std::size_t r = g.uniformity();
  Constants c{r, k};
  const double n = static_cast<double>(g.vertex_count());
  rep.c1 = c.c1_even();
  rep.c2 = c.c2_even();
  const double threshold = n > 0 ? c.c_exact() * static_cast<double>(k) * std::pow(n, 1.0 + 1.0 / static_cast<double>(k)) : 0;
  rep.in_regime = n > 0 && static_cast<double>(g.edge_count()) >= threshold;
  rep.bound = static_cast<double>(2 * k);
  rep.trace.push_back(entry("input").set("n", as_int(g.vertex_count())).set("edges", as_int(g.edge_count()))
                          .set("edge_threshold", threshold));
  if (k < 2) return failed(rep, "input", "k must be at least 2");
  if (opts.strict && !rep.in_regime) return failed(rep, "regime", "edge count below the exact-cycle threshold");

  auto finish = [&](LinearCycle cyc, const std::string& source) {
    CycleFamily fam;
    fam.parity = Parity::Even;
    fam.shortest = cyc.length();
    fam.bound = rep.bound;
    fam.cycles.push_back(std::move(cyc));
    rep.family = std::move(fam);
    rep.outcome = "cycles";
    rep.trace.push_back(entry("result").set("source", source));
    return rep;
  };

  if (g.edge_count() > 0) {
    auto even = even_consecutive_cycles(g, k, seed, opts);
    append(rep.trace, even.trace);
    if (even.family)
      for (auto& cyc : even.family->cycles)
        if (cyc.length() == 2 * k) return finish(std::move(cyc), "even_pipeline");
  }
  try {
    if (auto cyc = find_cycle_of_length(g, 2 * k, opts.oracle_budget)) {
      if (verify_cycle(g, cyc->edges)) return finish(std::move(*cyc), "exhaustive");
    }
  } catch (const Error& err) {
    return failed(rep, "exhaustive", err.what());
  }
  return failed(rep, "exhaustive", "no cycle of length 2k");
}

EngineReport find(const LinearHypergraph& g, EngineMode mode, std::size_t k, std::uint64_t seed,
                  const EngineOptions& opts) {
  switch (mode) {
    case EngineMode::All: return consecutive_cycles(g, k, seed, opts);
    case EngineMode::Even: return even_consecutive_cycles(g, k, seed, opts);
    case EngineMode::Exact: return find_c2k(g, k, seed, opts);
  }
  throw Error(ErrorKind::PreconditionFailed, "unknown mode");
}

}  // namespace lincyc

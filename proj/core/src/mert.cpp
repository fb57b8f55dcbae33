#include "lincyc/mert.hpp"

#include <algorithm>

#include "json.hpp"

namespace lincyc {

std::size_t Mert::edge_count() const {
  std::size_t total = 0;
  for (const auto& s : segments) total += s.size();
  return total;
}

Mert build_mert(const LinearHypergraph& g, const RPartition& p, Vertex root) {
  if (!g.has_vertex(root)) throw Error(ErrorKind::PreconditionFailed, "root is not a vertex of the graph");
  if (p.part_count() != g.uniformity() || !p.is_partition_of(g))
    throw Error(ErrorKind::NotPartite, "partition does not split every edge");
  if (p.part_of(root) != 0) throw Error(ErrorKind::PreconditionFailed, "root must lie in the first part");

  const std::size_t n = g.universe();
  const std::size_t r = g.uniformity();
  Mert m;
  m.root = root;
  m.parent.assign(n, kNoVertex);
  m.color.assign(n, {});
  m.attach.assign(n, kNoVertex);
  m.hyperedge.assign(n, kNoEdge);
  m.segment_of.assign(n, -1);
  m.depth.assign(n, -1);
  m.segment_of[root] = 0;
  m.depth[root] = 0;
  m.levels.push_back({root});
  m.level_part.push_back(0);
  m.segments.emplace_back();
  m.matchings.emplace_back();

  auto add_segment = [&](std::vector<EdgeId> edges, const std::vector<Vertex>& anchors) {
    const int index = static_cast<int>(m.segments.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (Vertex u : g.edge(edges[i])) {
        if (u == anchors[i]) continue;
        m.segment_of[u] = index;
        m.attach[u] = anchors[i];
        m.hyperedge[u] = edges[i];
      }
    m.segments.push_back(std::move(edges));
  };

  {
    std::vector<EdgeId> first(g.incident(root).begin(), g.incident(root).end());
    std::sort(first.begin(), first.end());
    if (first.empty()) return m;
    add_segment(std::move(first), std::vector<Vertex>(g.degree(root), root));
  }

  for (std::size_t i = 1;; ++i) {
    VertexSet fresh;
    for (EdgeId e : m.segments[i])
      for (Vertex u : g.edge(e))
        if (m.segment_of[u] == static_cast<int>(i)) fresh.push_back(u);
    std::sort(fresh.begin(), fresh.end());
    const int prev_part = m.level_part[i - 1];

    // Edges meeting everything explored so far in exactly one vertex, which is new in H_i.
    std::vector<std::vector<std::pair<EdgeId, Vertex>>> by_part(r);
    for (Vertex w : fresh) {
      for (EdgeId e : g.incident(w)) {
        auto ed = g.edge(e);
        std::size_t explored = 0;
        for (Vertex u : ed) explored += m.segment_of[u] >= 0 ? 1 : 0;
        if (explored == 1) by_part[static_cast<std::size_t>(p.part_of(w))].push_back({e, w});
      }
    }
    std::size_t total = 0;
    for (const auto& b : by_part) total += b.size();

    auto set_level = [&](int part) {
      VertexSet level;
      for (Vertex v : fresh)
        if (p.part_of(v) == part) {
          level.push_back(v);
          m.parent[v] = m.attach[v];
          m.depth[v] = static_cast<int>(i);
          VertexSet c;
          for (Vertex u : g.edge(m.hyperedge[v]))
            if (u != v && u != m.attach[v]) c.push_back(u);
          m.color[v] = std::move(c);
        }
      m.levels.push_back(std::move(level));
      m.level_part.push_back(part);
    };

    if (total == 0) {
      int part = -1;
      if (prev_part != 1 && std::any_of(fresh.begin(), fresh.end(), [&](Vertex v) { return p.part_of(v) == 1; })) {
        part = 1;
      } else {
        m.last_level_fallback = true;
        for (int j = 0; j < static_cast<int>(r) && part < 0; ++j)
          if (j != prev_part && std::any_of(fresh.begin(), fresh.end(), [&](Vertex v) { return p.part_of(v) == j; }))
            part = j;
      }
      set_level(part);
      m.height = i;
      return m;
    }

    int best = -1;
    for (int j = 0; j < static_cast<int>(r); ++j) {
      if (j == prev_part) continue;
      if (best < 0 || by_part[j].size() > by_part[best].size()) best = j;
    }
    set_level(best);

    auto& candidates = by_part[static_cast<std::size_t>(best)];
    std::sort(candidates.begin(), candidates.end());
    std::vector<std::uint8_t> taken(n, 0);
    std::vector<VertexSet> matching;
    std::vector<EdgeId> next;
    std::vector<Vertex> anchors;
    for (const auto& [e, v] : candidates) {
      auto ed = g.edge(e);
      if (std::any_of(ed.begin(), ed.end(), [&](Vertex u) { return u != v && taken[u]; })) continue;
      VertexSet tuple;
      for (Vertex u : ed)
        if (u != v) {
          taken[u] = 1;
          tuple.push_back(u);
        }
      matching.push_back(std::move(tuple));
      next.push_back(e);
      anchors.push_back(v);
    }
    m.matchings.push_back(std::move(matching));
    add_segment(std::move(next), anchors);
  }
}

std::optional<std::string> check_mert(const LinearHypergraph& g, const RPartition& p, const Mert& m) {
  const std::size_t r = g.uniformity();
  if (m.levels.empty() || m.levels[0] != VertexSet{m.root}) return std::string("level 0 is not the root");
  if (m.levels.size() != m.height + 1 || m.segments.size() != m.height + 1)
    return std::string("height does not match the stored levels");
  for (std::size_t i = 0; i < m.levels.size(); ++i) {
    for (Vertex v : m.levels[i]) {
      if (p.part_of(v) != m.level_part[i]) return "level " + std::to_string(i) + " spans several parts";
      if (m.depth[v] != static_cast<int>(i)) return "depth mismatch at vertex " + std::to_string(v);
      if (i > 0) {
        const Vertex u = m.parent[v];
        if (u == kNoVertex || m.depth[u] != static_cast<int>(i) - 1)
          return "parent of " + std::to_string(v) + " is not on the previous level";
      }
    }
    if (i > 0 && m.level_part[i] == m.level_part[i - 1]) return "consecutive levels share a part";
  }
  std::vector<std::uint8_t> color_used(g.universe(), 0);
  std::size_t tree_edges = 0;
  for (std::size_t i = 1; i < m.levels.size(); ++i) {
    for (Vertex v : m.levels[i]) {
      ++tree_edges;
      const auto& c = m.color[v];
      if (c.size() + 2 != r) return "color of " + std::to_string(v) + " has the wrong size";
      VertexSet full = c;
      full.push_back(v);
      full.push_back(m.parent[v]);
      if (!g.find_edge(full)) return "tree edge at " + std::to_string(v) + " does not expand to an edge";
      for (Vertex x : c) {
        if (color_used[x] || m.in_tree(x)) return "coloring is not strongly rainbow at " + std::to_string(x);
        color_used[x] = 1;
      }
    }
  }
  if (tree_edges != m.edge_count()) return std::string("segments are not the expansion of the tree");
  for (std::size_t i = 1; i < m.segments.size(); ++i) {
    VertexSet seen_level;
    for (EdgeId e : m.segments[i]) {
      std::size_t prev = 0, cur = 0, older = 0;
      for (Vertex u : g.edge(e)) {
        if (std::binary_search(m.levels[i - 1].begin(), m.levels[i - 1].end(), u)) ++prev;
        if (std::binary_search(m.levels[i].begin(), m.levels[i].end(), u)) ++cur;
        if (m.segment_of[u] < static_cast<int>(i) - 1 || (m.segment_of[u] == static_cast<int>(i) - 1 &&
                                                           !std::binary_search(m.levels[i - 1].begin(), m.levels[i - 1].end(), u)))
          ++older;
      }
      if (prev != 1 || cur != 1 || older != 0)
        return "segment " + std::to_string(i) + " edge " + std::to_string(e) + " has the wrong intersection pattern";
    }
  }
  for (std::size_t i = 1; i < m.matchings.size(); ++i) {
    const auto& mi = m.matchings[i];
    std::vector<std::uint8_t> used(g.universe(), 0);
    if (i + 1 >= m.segments.size() || mi.size() != m.segments[i + 1].size())
      return "matching " + std::to_string(i) + " does not pair with the next segment";
    for (std::size_t a = 0; a < mi.size(); ++a) {
      const auto& tuple = mi[a];
      if (tuple.size() + 1 != r) return "matching " + std::to_string(i) + " has a tuple of the wrong size";
      for (Vertex u : tuple) {
        if (used[u]) return "matching " + std::to_string(i) + " is not a matching";
        used[u] = 1;
      }
      std::size_t owners = 0;
      for (Vertex v : m.levels[i]) {
        VertexSet full = tuple;
        full.push_back(v);
        if (g.find_edge(full)) ++owners;
      }
      if (owners != 1) return "matching tuple without a unique anchor";
    }
  }
  return std::nullopt;
}

std::string mert_to_json(const Mert& m) {
  nlohmann::ordered_json j;
  j["root"] = m.root;
  j["height"] = m.height;
  j["matching"] = m.matching;
  j["last_level_fallback"] = m.last_level_fallback;
  j["levels"] = m.levels;
  j["level_parts"] = m.level_part;
  j["segments"] = m.segments;
  auto matchings = nlohmann::ordered_json::array();
  for (std::size_t i = 1; i < m.matchings.size(); ++i) matchings.push_back(m.matchings[i]);
  j["matchings"] = matchings;
  auto tree = nlohmann::ordered_json::array();
  for (std::size_t i = 1; i < m.levels.size(); ++i)
    for (Vertex v : m.levels[i]) tree.push_back({{"child", v}, {"parent", m.parent[v]}, {"color", m.color[v]}});
  j["tree"] = tree;
  return j.dump();
}

Vertex closest_common_ancestor(const Mert& m, Vertex u, Vertex v) {
  while (m.depth[u] > m.depth[v]) u = m.parent[u];
  while (m.depth[v] > m.depth[u]) v = m.parent[v];
  while (u != v) {
    u = m.parent[u];
    v = m.parent[v];
  }
  return u;
}

std::vector<Vertex> tree_path(const Mert& m, Vertex u, Vertex v) {
  if (!m.in_tree(u) || !m.in_tree(v)) throw Error(ErrorKind::PreconditionFailed, "vertex outside the tree");
  const Vertex top = closest_common_ancestor(m, u, v);
  std::vector<Vertex> left, right;
  for (Vertex a = u; a != top; a = m.parent[a]) left.push_back(a);
  left.push_back(top);
  for (Vertex b = v; b != top; b = m.parent[b]) right.push_back(b);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

LinearPath expand_tree_path(const Mert& m, const std::vector<Vertex>& q) {
  LinearPath out;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    Vertex a = q[i], b = q[i + 1];
    Vertex child = kNoVertex;
    if (m.in_tree(a) && m.parent[a] == b) child = a;
    else if (m.in_tree(b) && m.parent[b] == a) child = b;
    if (child == kNoVertex) throw Error(ErrorKind::PreconditionFailed, "consecutive vertices are not a tree edge");
    VertexSet e = m.color[child];
    e.push_back(a);
    e.push_back(b);
    std::sort(e.begin(), e.end());
    out.edges.push_back(std::move(e));
  }
  return out;
}

int TreePathBundle::label_of(Vertex v) const {
  auto it = std::lower_bound(members.begin(), members.end(), v);
  if (it == members.end() || *it != v) return 0;
  return labels[static_cast<std::size_t>(it - members.begin())];
}

const std::vector<Vertex>& TreePathBundle::path_of(Vertex v) const {
  auto it = std::lower_bound(members.begin(), members.end(), v);
  if (it == members.end() || *it != v) throw Error(ErrorKind::PreconditionFailed, "vertex is not in S");
  return paths[static_cast<std::size_t>(it - members.begin())];
}

TreePathBundle anchor_and_label(const Mert& m, const VertexSet& s_in, const std::function<double(Vertex)>& weight) {
  VertexSet s = s_in;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.size() < 2) throw Error(ErrorKind::SingletonSet, "need at least two vertices to anchor");
  for (Vertex v : s)
    if (!m.in_tree(v)) throw Error(ErrorKind::PreconditionFailed, "vertex outside the tree");
  Vertex top = s[0];
  for (std::size_t i = 1; i < s.size(); ++i) top = closest_common_ancestor(m, top, s[i]);

  TreePathBundle b;
  b.anchor = top;
  b.level = static_cast<std::size_t>(m.depth[top]);
  b.members = s;
  std::vector<Vertex> child_of(s.size(), kNoVertex);
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<Vertex> path;
    for (Vertex a = s[i]; a != top; a = m.parent[a]) path.push_back(a);
    path.push_back(top);
    std::reverse(path.begin(), path.end());
    if (path.size() >= 2) child_of[i] = path[1];
    b.paths.push_back(std::move(path));
  }
  std::vector<std::pair<Vertex, double>> children;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (child_of[i] == kNoVertex) continue;
    auto it = std::find_if(children.begin(), children.end(), [&](const auto& c) { return c.first == child_of[i]; });
    const double w = weight ? weight(s[i]) : 0.0;
    if (it == children.end()) children.push_back({child_of[i], w});
    else it->second += w;
  }
  std::sort(children.begin(), children.end());
  if (children.empty()) throw Error(ErrorKind::SingletonSet, "members do not branch below the anchor");
  auto best = children.begin();
  for (auto it = children.begin(); it != children.end(); ++it)
    if (it->second < best->second) best = it;
  b.designated_child = best->first;
  for (std::size_t i = 0; i < s.size(); ++i) b.labels.push_back(child_of[i] == b.designated_child ? 1 : 2);
  return b;
}

}  // namespace lincyc

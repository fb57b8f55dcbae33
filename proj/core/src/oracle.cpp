#include "lincyc/oracle.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"

namespace lincyc {

namespace {

class CycleSearch {
 public:
  using Visit = std::function<bool(const std::vector<EdgeId>&)>;

  CycleSearch(const LinearHypergraph& g, const std::vector<bool>& alive, std::uint64_t budget)
      : g_(g), alive_(alive), budget_(budget), used_(g.universe(), 0) {}

  /// Visits every cycle with length in [min_len, max_len] whose lowest edge is
  /// at least first_edge. Returns false when the visitor asked to stop.
  bool run(std::size_t min_len, std::size_t max_len, EdgeId first_edge, const Visit& visit) {
    min_len_ = std::max<std::size_t>(min_len, 3);
    max_len_ = max_len;
    visit_ = &visit;
    if (max_len_ < 3) return true;
    for (EdgeId e0 = first_edge; e0 < g_.edge_count(); ++e0) {
      if (!is_alive(e0)) continue;
      e0_ = e0;
      auto ed = g_.edge(e0);
      for (Vertex v : ed) used_[v] = 1;
      path_.assign(1, e0);
      for (std::size_t a = 0; a < ed.size(); ++a)
        for (std::size_t b = a + 1; b < ed.size(); ++b) {
          closing_ = ed[b];
          if (!extend(ed[a])) {
            for (Vertex v : ed) used_[v] = 0;
            return false;
          }
        }
      for (Vertex v : ed) used_[v] = 0;
    }
    return true;
  }

  std::uint64_t expansions() const { return expansions_; }
  bool exhausted() const { return expansions_ > budget_; }

 private:
  bool is_alive(EdgeId e) const { return alive_.empty() || alive_[e]; }

  bool extend(Vertex pivot) {
    if (++expansions_ > budget_) return false;
    const std::size_t next_len = path_.size() + 1;
    for (EdgeId f : g_.incident(pivot)) {
      if (f <= e0_ || !is_alive(f)) continue;
      auto ed = g_.edge(f);
      bool closes = false, clear = true;
      for (Vertex v : ed) {
        if (v == pivot) continue;
        if (v == closing_) {
          closes = true;
          continue;
        }
        if (used_[v]) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      if (closes) {
        if (path_.size() >= 2 && next_len >= min_len_ && next_len <= max_len_) {
          path_.push_back(f);
          const bool go_on = (*visit_)(path_);
          path_.pop_back();
          if (!go_on) return false;
        }
        continue;
      }
      if (next_len + 1 > max_len_) continue;
      for (Vertex v : ed) used_[v] = 1;
      used_[pivot] = 1;
      path_.push_back(f);
      bool go_on = true;
      for (Vertex v : ed) {
        if (v == pivot) continue;
        if (!extend(v)) {
          go_on = false;
          break;
        }
      }
      path_.pop_back();
      for (Vertex v : ed)
        if (v != pivot) used_[v] = 0;
      if (!go_on) return false;
    }
    return true;
  }

  const LinearHypergraph& g_;
  const std::vector<bool>& alive_;
  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  std::vector<std::uint8_t> used_;
  std::vector<EdgeId> path_;
  EdgeId e0_ = 0;
  Vertex closing_ = kNoVertex;
  std::size_t min_len_ = 3;
  std::size_t max_len_ = 0;
  const Visit* visit_ = nullptr;
};

LinearCycle to_cycle(const LinearHypergraph& g, const std::vector<EdgeId>& edges) {
  LinearCycle c;
  for (EdgeId e : edges) c.edges.push_back(g.edge_set(e));
  return c;
}

const std::vector<bool> kAllAlive;

}  // namespace

Spectrum enumerate_cycles(const LinearHypergraph& g, std::size_t max_len, std::uint64_t budget) {
  if (max_len < 3) throw Error(ErrorKind::PreconditionFailed, "maximum length must be at least 3");
  Spectrum s;
  s.max_len = max_len;
  CycleSearch search(g, kAllAlive, budget);
  const bool finished = search.run(3, max_len, 0, [&](const std::vector<EdgeId>& edges) {
    const std::size_t len = edges.size();
    s.lengths.insert(len);
    ++s.counts[len];
    if (!s.witnesses.count(len)) s.witnesses.emplace(len, to_cycle(g, edges));
    return true;
  });
  s.complete = finished && !search.exhausted();
  s.expansions = search.expansions();
  return s;
}

std::string spectrum_to_json(const Spectrum& s) {
  nlohmann::ordered_json j;
  j["L"] = s.max_len;
  j["lengths"] = std::vector<std::size_t>(s.lengths.begin(), s.lengths.end());
  j["complete"] = s.complete;
  auto counts = nlohmann::ordered_json::object();
  for (const auto& [len, c] : s.counts) counts[std::to_string(len)] = c;
  j["counts"] = counts;
  return j.dump();
}

std::optional<LinearCycle> find_cycle_of_length(const LinearHypergraph& g, std::size_t len, std::uint64_t budget,
                                                const std::vector<bool>& alive, EdgeId first_edge) {
  std::optional<LinearCycle> found;
  CycleSearch search(g, alive, budget);
  search.run(len, len, first_edge, [&](const std::vector<EdgeId>& edges) {
    found = to_cycle(g, edges);
    return false;
  });
  if (!found && search.exhausted())
    throw Error(ErrorKind::BudgetExceeded, "cycle search of length " + std::to_string(len) + " ran out of budget");
  return found;
}

std::optional<FoundCycle> first_short_cycle(const LinearHypergraph& g, std::size_t max_len,
                                            const std::vector<bool>& alive, EdgeId first_edge,
                                            std::uint64_t budget) {
  std::optional<FoundCycle> found;
  CycleSearch search(g, alive, budget);
  search.run(3, max_len, first_edge, [&](const std::vector<EdgeId>& edges) {
    found = FoundCycle{to_cycle(g, edges), edges};
    return false;
  });
  if (!found && search.exhausted())
    throw Error(ErrorKind::BudgetExceeded, "short cycle search ran out of budget");
  return found;
}

std::optional<std::size_t> girth(const LinearHypergraph& g, std::size_t cap, std::uint64_t budget) {
  for (std::size_t len = 3; len <= cap; ++len)
    if (find_cycle_of_length(g, len, budget)) return len;
  return std::nullopt;
}

bool rainbow_path_exists(const ColoredGraph& h, const std::vector<bool>& in_first, std::size_t ell) {
  if (h.vertices().size() > 20) throw Error(ErrorKind::TooLarge, "exhaustive rainbow search is limited to 20 vertices");
  if (ell == 0) return false;
  const std::size_t n = h.universe();
  std::vector<int> mark(n, 0);
  // mark: 1 on the path, 2 used as a color.
  std::function<bool(Vertex, std::size_t)> grow = [&](Vertex end, std::size_t len) -> bool {
    if (len == ell) return true;
    for (const auto& inc : h.adjacent(end)) {
      if (in_first[inc.edge] || mark[inc.neighbor]) continue;
      const auto& color = h.edge(inc.edge).color;
      if (std::any_of(color.begin(), color.end(), [&](Vertex c) { return mark[c] != 0 || c == inc.neighbor; })) continue;
      mark[inc.neighbor] = 1;
      for (Vertex c : color) mark[c] = 2;
      const bool ok = grow(inc.neighbor, len + 1);
      mark[inc.neighbor] = 0;
      for (Vertex c : color) mark[c] = 0;
      if (ok) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    if (!in_first[i]) continue;
    const auto& e = h.edge(i);
    if (std::any_of(e.color.begin(), e.color.end(), [&](Vertex c) { return c == e.u || c == e.v; })) continue;
    for (int dir = 0; dir < 2; ++dir) {
      const Vertex a = dir == 0 ? e.u : e.v, b = dir == 0 ? e.v : e.u;
      mark[a] = mark[b] = 1;
      bool color_clash = false;
      for (Vertex c : e.color) {
        if (mark[c]) color_clash = true;
        mark[c] = 2;
      }
      const bool ok = !color_clash && grow(b, 1);
      std::fill(mark.begin(), mark.end(), 0);
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace lincyc

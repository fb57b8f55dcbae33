#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lincyc/hypergraph.hpp"

namespace lincyc {

/// Maximal expanded rooted tree of an r-partite linear graph.
///
/// Segment H_i (i >= 1) holds the edges hanging from L_{i-1}; each such edge
/// contributes one tree edge from its vertex in L_i to its vertex in L_{i-1},
/// colored by the remaining r-2 vertices. Matching M_i (1 <= i < height) is
/// the set of (r-1)-tuples whose edges form H_{i+1}.
struct Mert {
  Vertex root = kNoVertex;
  std::size_t height = 0;
  std::vector<std::vector<EdgeId>> segments;
  std::vector<VertexSet> levels;
  std::vector<int> level_part;
  std::vector<std::vector<VertexSet>> matchings;
  /// Tree parent of each tree vertex; kNoVertex elsewhere.
  std::vector<Vertex> parent;
  /// Color of the tree edge from v to its parent; empty elsewhere.
  std::vector<VertexSet> color;
  /// For every vertex first covered by segment i >= 1: the L_{i-1} vertex of
  /// its segment edge, and that edge.
  std::vector<Vertex> attach;
  std::vector<EdgeId> hyperedge;
  /// Segment in which a vertex first appears (0 for the root), -1 if unused.
  std::vector<int> segment_of;
  /// Tree depth, -1 for vertices outside the tree.
  std::vector<int> depth;
  /// Set when the last level could not be placed in the second part.
  bool last_level_fallback = false;
  std::string matching = "greedy-maximal";

  bool in_tree(Vertex v) const { return v < depth.size() && depth[v] >= 0; }
  /// V(H_0) ∪ ... ∪ V(H_i) membership.
  bool covered_by(Vertex v, std::size_t i) const {
    return v < segment_of.size() && segment_of[v] >= 0 && static_cast<std::size_t>(segment_of[v]) <= i;
  }
  std::size_t edge_count() const;
};

/// Runs the tree construction from `root`, which must lie in part 0.
Mert build_mert(const LinearHypergraph& g, const RPartition& p, Vertex root);

/// Recomputes every structural invariant; returns the first violation.
std::optional<std::string> check_mert(const LinearHypergraph& g, const RPartition& p, const Mert& m);

std::string mert_to_json(const Mert& m);

/// Tree vertices from u to v (inclusive) through their closest common ancestor.
std::vector<Vertex> tree_path(const Mert& m, Vertex u, Vertex v);
Vertex closest_common_ancestor(const Mert& m, Vertex u, Vertex v);

/// Expands each tree edge to its hyperedge. The input is a vertex sequence
/// along tree edges; fewer than two vertices give the empty path.
LinearPath expand_tree_path(const Mert& m, const std::vector<Vertex>& q);

struct TreePathBundle {
  Vertex anchor = kNoVertex;
  std::size_t level = 0;
  Vertex designated_child = kNoVertex;
  /// Label per member of S, aligned with `members`.
  VertexSet members;
  std::vector<int> labels;
  /// Tree path from the anchor to each member, aligned with `members`.
  std::vector<std::vector<Vertex>> paths;

  int label_of(Vertex v) const;
  const std::vector<Vertex>& path_of(Vertex v) const;
};

/// Closest common ancestor of S, a designated child, and the 1/2 labels.
/// `weight` (optional) scores each member; the child whose members weigh
/// least is designated, ties to the lowest vertex id. Throws SingletonSet
/// when |S| < 2.
TreePathBundle anchor_and_label(const Mert& m, const VertexSet& s,
                                const std::function<double(Vertex)>& weight = {});

}  // namespace lincyc

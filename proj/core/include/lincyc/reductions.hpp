#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lincyc/hypergraph.hpp"

namespace lincyc {

/// Largest induced subgraph with minimum degree at least d/r, obtained by
/// repeatedly deleting the lowest-indexed vertex of minimum degree. Throws
/// EmptyCore when d exceeds the average degree.
LinearHypergraph min_degree_subgraph(const LinearHypergraph& g, double d);

/// Induced subgraph with minimum degree at least `k` (k-core); may be empty.
LinearHypergraph core_at_least(const LinearHypergraph& g, double k);

struct PeelResult {
  /// Peeled vertices first (in deletion order), then the core ascending.
  std::vector<Vertex> ordering;
  /// Number of peeled vertices.
  std::size_t cut = 0;
  /// Induced on ordering[cut..]; minimum degree at least d.
  ColoredGraph core;
  /// Position of each vertex in `ordering`, or npos.
  std::vector<std::size_t> position;
};

/// Peels vertices of degree < d (lowest index first). Each peeled vertex has
/// fewer than d neighbours later in the ordering. Throws EmptyCore when no
/// core survives.
PeelResult degenerate_ordering(const ColoredGraph& h, double d);

class BfsLayers {
 public:
  BfsLayers() = default;
  BfsLayers(const LinearHypergraph& g, Vertex root);

  Vertex root() const noexcept { return root_; }
  const std::vector<VertexSet>& layers() const noexcept { return layers_; }
  std::size_t depth() const noexcept { return layers_.size(); }
  const VertexSet& layer(std::size_t i) const { return layers_.at(i); }

  /// -1 when v is unreachable.
  int distance(Vertex v) const noexcept { return v < distance_.size() ? distance_[v] : -1; }
  Vertex parent(Vertex v) const noexcept { return parent_[v]; }
  EdgeId parent_edge(Vertex v) const noexcept { return parent_edge_[v]; }
  /// Vertices of the last edge on the path to v (empty for the root).
  std::span<const Vertex> parent_edge_set(Vertex v) const noexcept {
    if (distance(v) <= 0) return {};
    return {parent_edge_vertices_.data() + static_cast<std::size_t>(v) * r_, r_};
  }

  /// Edge ids of the fixed shortest path from the root to v, root side first.
  std::vector<EdgeId> path_edges(Vertex v) const;
  LinearPath path_to(Vertex v) const;

 private:
  std::size_t r_ = 0;
  Vertex root_ = kNoVertex;
  std::vector<Vertex> parent_edge_vertices_;
  std::vector<VertexSet> layers_;
  std::vector<int> distance_;
  std::vector<Vertex> parent_;
  std::vector<EdgeId> parent_edge_;
};

/// Layers by linear-path distance from x, with a fixed shortest path per
/// reachable vertex (lowest parent, then lowest edge id).
BfsLayers bfs_layers(const LinearHypergraph& g, Vertex x);

/// Repeatedly deletes a minimum-degree vertex while the average degree stays
/// at least d. On return no single vertex deletion keeps the average at d.
/// Throws PreconditionFailed when d(G) < d.
LinearHypergraph d_minimal(const LinearHypergraph& g, double d);

/// Whether at least d|S|/r edges meet S. Throws PreconditionFailed unless S
/// is a nonempty proper subset of V(G).
bool boundary_lower_bound_check(const LinearHypergraph& g, const VertexSet& s, double d);

struct PartiteReduction {
  LinearHypergraph graph;
  RPartition partition;
  std::size_t restarts = 0;
};

/// r!/r^r
double partite_fraction(std::size_t r);
/// e_kept * r^r >= r! * e_total, exactly.
bool meets_partite_bound(std::size_t kept, std::size_t total, std::size_t r);

/// Partition of V(G) into r parts and the spanning subgraph of transversal
/// edges, with at least r!/r^r of the edges kept. A hint partition that
/// already keeps every edge is returned as is.
PartiteReduction r_partite_reduction(const LinearHypergraph& g, std::uint64_t seed,
                                     const std::optional<RPartition>& hint = std::nullopt,
                                     std::size_t max_restarts = 64);

}  // namespace lincyc

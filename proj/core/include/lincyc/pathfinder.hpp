#pragma once

#include <cstdint>
#include <vector>

#include "lincyc/hypergraph.hpp"
#include "lincyc/reductions.hpp"

namespace lincyc {

struct SearchOptions {
  /// Run below the stated degree preconditions instead of rejecting.
  bool best_effort = false;
  std::size_t max_attempts = 200;
  /// Node-expansion cap for the backtracking searches.
  std::size_t budget = 2'000'000;
};

/// ⌈log n / log(δ/d)⌉, or 0 when undefined.
std::size_t layer_bound(std::size_t n, double min_degree, double d);

struct DenseLayer {
  std::size_t m = 0;
  /// Each edge meets L_m and avoids every earlier layer.
  LinearHypergraph h;
  std::size_t bound = 0;
  /// The layer index whose incident edges were dense.
  std::size_t source_layer = 0;
};

/// Finds m >= 1 and a subgraph of average degree at least d/4 whose edges
/// touch L_m(x) and avoid L_0..L_{m-1}. Requires 1 <= d <= δ(G)/2.
DenseLayer dense_layer_subgraph(const LinearHypergraph& g, Vertex x, double d,
                                const SearchOptions& opts = {});
DenseLayer dense_layer_subgraph(const LinearHypergraph& g, const BfsLayers& layers, double d,
                                const SearchOptions& opts = {});

struct AnchoredSubgraph {
  std::size_t m = 0;
  /// Anchor vertices, a subset of L_m(x) covering exactly one vertex per edge of F.
  VertexSet a;
  LinearHypergraph f;
  /// Shortest paths from x in the input graph; P_v is layers.path_to(v).
  BfsLayers layers;
  std::size_t bound = 0;
  std::size_t attempts = 0;
  /// Vertices dropped to keep anchor paths clear of F.
  std::size_t repaired = 0;
  double min_degree_target = 0.0;
};

/// The three anchoring properties; returns a description of the first failure.
std::optional<std::string> check_anchored(const AnchoredSubgraph& s, double d);

AnchoredSubgraph anchored_subgraph(const LinearHypergraph& g, Vertex x, double d, std::uint64_t seed,
                                   const SearchOptions& opts = {});

/// A path of length >= k+2 on which every vertex of A has path-degree one.
/// Each edge of F must carry exactly one vertex of A; δ(F) >= rk is required
/// unless best-effort.
LinearPath path_with_part(const LinearHypergraph& f, const VertexSet& a, std::size_t k,
                          const SearchOptions& opts = {});

/// Whether every A-vertex on the path lies in exactly one of its edges.
bool part_vertices_are_ends(const LinearPath& p, const VertexSet& a);

struct PanConnectedFamily {
  VertexSet e;
  VertexSet f;
  std::size_t t = 0;
  /// Lengths t+3, ..., t+k+2 in order; all start at x and end with e, f.
  std::vector<LinearPath> paths;
  std::size_t bound = 0;
  double d_used = 0.0;
};

/// k paths from x of consecutive lengths sharing their last two edges.
/// Requires δ(F) >= 2kr²4^{r+1} unless best-effort.
PanConnectedFamily pan_connected(const LinearHypergraph& f, Vertex x, std::size_t k, std::uint64_t seed,
                                 const SearchOptions& opts = {});

/// kr²4^{r+1}
double pan_degree(std::size_t r, std::size_t k);

struct RainbowPath {
  /// v_0 v_1 ... v_len; edge (v_0,v_1) is in E1, the rest in E2.
  std::vector<Vertex> vertices;
  /// Indices into the colored graph's edge list.
  std::vector<std::size_t> edges;
  std::size_t length() const noexcept { return edges.size(); }
};

/// Simple path, colors pairwise disjoint, first edge in E1, the rest in E2.
bool is_good_rainbow_path(const ColoredGraph& h, const std::vector<bool>& in_first, const RainbowPath& p);

/// A strongly rainbow path of length exactly ℓ whose first edge lies in E1
/// (`in_first[i]`) and whose other edges lie in E2.
RainbowPath rainbow_special_path(const ColoredGraph& h, const std::vector<bool>& in_first, std::size_t ell,
                                 const SearchOptions& opts = {});

}  // namespace lincyc

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lincyc/error.hpp"

namespace lincyc {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

namespace detail {

// Open-addressing map from an unordered vertex pair to the unique edge
// containing it.
class PairIndex {
 public:
  void reserve(std::size_t pairs);
  /// Inserts {u,v} -> e unless present; returns the previous owner if any.
  std::optional<EdgeId> insert(Vertex u, Vertex v, EdgeId e);
  std::optional<EdgeId> find(Vertex u, Vertex v) const;
  std::size_t size() const noexcept { return size_; }

 private:
  void grow();

  std::vector<std::uint64_t> keys_;
  std::vector<EdgeId> values_;
  std::size_t mask_ = 0;
  std::size_t size_ = 0;
};

}  // namespace detail

/// A linear r-uniform hypergraph: every edge has exactly r vertices and two
/// distinct edges share at most one vertex.
///
/// Vertex ids live in a fixed universe 0..n-1. A graph built from an edge list
/// owns the whole universe; subgraphs keep the universe (so witnesses stay in
/// the original ids) and carry an explicit vertex set.
///
/// Values are immutable after construction.
class LinearHypergraph {
 public:
  LinearHypergraph() = default;

  /// Validates and builds. Throws BuildError (NonUniformEdge, DuplicatePair,
  /// VertexOutOfRange) on the first violation in input order.
  static LinearHypergraph build(std::size_t n, std::size_t r,
                                const std::vector<std::vector<Vertex>>& edges);

  std::size_t universe() const noexcept { return n_; }
  std::size_t uniformity() const noexcept { return r_; }
  std::size_t edge_count() const noexcept { return r_ == 0 ? 0 : flat_.size() / r_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }

  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  bool has_vertex(Vertex v) const noexcept { return v < n_ && member_[v] != 0; }

  std::span<const Vertex> edge(EdgeId e) const noexcept {
    return {flat_.data() + static_cast<std::size_t>(e) * r_, r_};
  }
  VertexSet edge_set(EdgeId e) const {
    auto s = edge(e);
    return {s.begin(), s.end()};
  }
  std::span<const EdgeId> incident(Vertex v) const noexcept {
    return {incidence_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// The unique edge containing both u and v, if any.
  std::optional<EdgeId> edge_through(Vertex u, Vertex v) const;
  /// Edge id of a vertex set (any order), if it is an edge.
  std::optional<EdgeId> find_edge(std::span<const Vertex> vertices) const;

  /// r * e(G) / |V(G)|; zero for an empty vertex set.
  double average_degree() const noexcept;
  std::size_t min_degree() const noexcept;

  std::vector<std::vector<Vertex>> edge_list() const;

  /// Same universe, uniformity, and edge set (edge order ignored).
  friend bool operator==(const LinearHypergraph& a, const LinearHypergraph& b);

  /// Trusted constructor for subgraphs of an already-validated graph.
  /// `edges` must be a subset of E(parent) and lie inside `vertices`.
  static LinearHypergraph subgraph(const LinearHypergraph& parent, VertexSet vertices,
                                   std::span<const EdgeId> edges);

 private:
  void index();

  std::size_t n_ = 0;
  std::size_t r_ = 0;
  VertexSet vertices_;
  std::vector<std::uint8_t> member_;
  std::vector<Vertex> flat_;
  std::vector<std::size_t> offsets_{0};
  std::vector<EdgeId> incidence_;
  detail::PairIndex pairs_;
};

struct DegreeStats {
  std::size_t min_degree = 0;
  double average_degree = 0.0;
  /// Indexed by vertex id over the whole universe; zero outside V(G).
  std::vector<std::size_t> per_vertex;
};

DegreeStats degrees(const LinearHypergraph& g);

LinearHypergraph induced(const LinearHypergraph& g, const VertexSet& s);
LinearHypergraph edge_induced(const LinearHypergraph& g, std::span<const EdgeId> f);

/// Vertex partition A_1..A_r, stored as a part label per vertex (-1 when the
/// vertex is not covered).
class RPartition {
 public:
  RPartition() = default;
  RPartition(std::size_t universe, std::size_t parts)
      : part_of_(universe, -1), parts_(parts) {}

  std::size_t part_count() const noexcept { return parts_; }
  int part_of(Vertex v) const noexcept { return v < part_of_.size() ? part_of_[v] : -1; }
  void assign(Vertex v, int part) { part_of_.at(v) = part; }
  VertexSet part(int index) const;
  const std::vector<int>& labels() const noexcept { return part_of_; }

  /// True iff every edge of g has exactly one vertex in each part.
  bool is_partition_of(const LinearHypergraph& g) const;
  bool edge_is_transversal(std::span<const Vertex> edge) const;

 private:
  std::vector<int> part_of_;
  std::size_t parts_ = 0;
};

/// Spanning subgraph of the edges that meet every part exactly once.
LinearHypergraph partite_subgraph(const LinearHypergraph& g, const RPartition& p);

struct ColoredEdge {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;
  VertexSet color;
  EdgeId source = kNoEdge;
};

/// A 2-graph whose edges carry vertex-set colors.
class ColoredGraph {
 public:
  struct Incidence {
    Vertex neighbor;
    std::size_t edge;
  };

  ColoredGraph() = default;
  /// Vertex set is the set of endpoints.
  ColoredGraph(std::size_t universe, std::vector<ColoredEdge> edges);
  ColoredGraph(std::size_t universe, VertexSet vertices, std::vector<ColoredEdge> edges);

  std::size_t universe() const noexcept { return universe_; }
  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  bool has_vertex(Vertex v) const noexcept { return v < universe_ && member_[v] != 0; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<ColoredEdge>& edges() const noexcept { return edges_; }
  const ColoredEdge& edge(std::size_t i) const { return edges_.at(i); }
  std::span<const Incidence> adjacent(Vertex v) const noexcept { return adjacency_[v]; }
  std::size_t degree(Vertex v) const noexcept { return adjacency_[v].size(); }

  std::size_t min_degree() const noexcept;
  double average_degree() const noexcept;

  /// Edges sharing an endpoint have disjoint colors, and no color meets V(H).
  bool strongly_proper() const;
  /// All edges have pairwise disjoint colors, and no color meets V(H).
  bool strongly_rainbow() const;

  /// Keeps the listed edges; the vertex set becomes their endpoints.
  ColoredGraph edge_subgraph(std::span<const std::size_t> edge_indices) const;
  ColoredGraph induced(const VertexSet& s) const;
  /// Connected components, each sorted, ordered by smallest vertex.
  std::vector<VertexSet> components() const;

 private:
  std::size_t universe_ = 0;
  VertexSet vertices_;
  std::vector<std::uint8_t> member_;
  std::vector<ColoredEdge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

/// The (A_i,A_j)-projection (parts are 0-based). Each hyperedge becomes the
/// 2-edge e ∩ (A_i ∪ A_j), colored by the remaining r-2 vertices. Throws
/// NotPartite if some edge misses a part.
ColoredGraph project(const LinearHypergraph& g, const RPartition& p, int i, int j);

struct LinearPath {
  std::vector<VertexSet> edges;
  std::size_t length() const noexcept { return edges.size(); }
};

struct LinearCycle {
  std::vector<VertexSet> edges;
  std::size_t length() const noexcept { return edges.size(); }
};

/// Why a candidate edge list was rejected: the first offending index pair.
struct Rejection {
  std::size_t first = 0;
  std::size_t second = 0;
  std::string reason;
};

template <class T>
class Checked {
 public:
  Checked(T value) : state_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Checked(Rejection rejection) : state_(std::move(rejection)) {}  // NOLINT

  bool ok() const noexcept { return std::holds_alternative<T>(state_); }
  explicit operator bool() const noexcept { return ok(); }
  const T& value() const { return std::get<T>(state_); }
  T& value() { return std::get<T>(state_); }
  const Rejection& rejection() const { return std::get<Rejection>(state_); }

 private:
  std::variant<T, Rejection> state_;
};

/// Accepts iff consecutive edges meet in exactly one vertex and all other
/// pairs are disjoint, and every edge belongs to g.
Checked<LinearPath> verify_path(const LinearHypergraph& g, const std::vector<VertexSet>& edges);
/// Same as verify_path, treating the list as cyclic; needs t >= 3 and
/// (r-1)t distinct vertices.
Checked<LinearCycle> verify_cycle(const LinearHypergraph& g, const std::vector<VertexSet>& edges);

/// x lies in the first edge of the path and in no other edge.
bool path_starts_at(const LinearPath& path, Vertex x);

enum class Parity { All, Even };

struct CycleFamily {
  std::vector<LinearCycle> cycles;
  Parity parity = Parity::All;
  std::size_t shortest = 0;
  /// Claimed bound on `shortest`; empty when the bound formula is undefined.
  std::optional<double> bound;

  std::vector<std::size_t> lengths() const;
};

/// Every member verifies as a cycle of g and the lengths are consecutive
/// (resp. consecutive even). Returns the first problem, if any.
std::optional<std::string> check_family(const LinearHypergraph& g, const CycleFamily& family);

std::size_t intersection_size(std::span<const Vertex> a, std::span<const Vertex> b);
bool disjoint(std::span<const Vertex> a, std::span<const Vertex> b);

}  // namespace lincyc

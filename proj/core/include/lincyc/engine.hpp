#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lincyc/constants.hpp"
#include "lincyc/hypergraph.hpp"
#include "lincyc/mert.hpp"
#include "lincyc/pathfinder.hpp"

namespace lincyc {

using TraceValue = std::variant<std::int64_t, double, std::string>;

struct TraceEntry {
  std::string stage;
  std::vector<std::pair<std::string, TraceValue>> values;

  TraceEntry& set(const std::string& key, TraceValue value);
};

using Trace = std::vector<TraceEntry>;

struct EngineOptions {
  /// Reject inputs below the density regime.
  bool strict = false;
  /// Ignore lemma density thresholds and degree preconditions.
  bool best_effort = false;
  /// Roots tried by the even pipeline when best-effort.
  std::size_t max_roots = 8;
  std::uint64_t oracle_budget = 20'000'000;
  SearchOptions search;
};

/// Edges of h kept after the random transversal cleanup: every member of the
/// matching meets the kept vertex set in at most one vertex, and at least
/// (1/(r-1))^{r-1} e(h) edges survive. Throws RetriesExhausted.
LinearHypergraph transversal_cleanup(const LinearHypergraph& h, const std::vector<VertexSet>& matching,
                                     std::uint64_t seed, std::size_t max_attempts = 256);

struct LemmaResult {
  std::optional<CycleFamily> family;
  /// The m in the length formula when a family was assembled.
  std::size_t m = 0;
  Trace trace;
  std::string failure;
};

/// Cycles of lengths 2m+2, ..., 2m+2k (m <= t-1) from the edges hanging off
/// level t-1 into segment t. Needs 1 <= t <= height.
LemmaResult cycles_from_boundary(const LinearHypergraph& g, const RPartition& p, const Mert& tree, std::size_t t,
                                 std::size_t k, const EngineOptions& opts = {});

/// Cycles of lengths 2m+1, ..., 2m+2k (m <= t) from the edges meeting segment t
/// in two or more vertices and avoiding earlier segments.
LemmaResult cycles_from_internal(const LinearHypergraph& g, const RPartition& p, const Mert& tree, std::size_t t,
                                 std::size_t k, std::uint64_t seed, const EngineOptions& opts = {});

enum class EngineMode { All, Even, Exact };

EngineMode parse_engine_mode(const std::string& s);
const char* to_string(EngineMode m) noexcept;

struct EngineReport {
  EngineMode mode = EngineMode::All;
  /// "cycles", "failure", or "contradiction".
  std::string outcome = "failure";
  std::optional<CycleFamily> family;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  bool in_regime = false;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> bound;
  Trace trace;

  bool ok() const noexcept { return outcome == "cycles" && family.has_value(); }
  std::string to_json() const;
};

/// k cycles of consecutive lengths via the core, anchored subgraph, and
/// pan-connected paths from an anchor vertex.
EngineReport consecutive_cycles(const LinearHypergraph& g, std::size_t k, std::uint64_t seed,
                                const EngineOptions& opts = {});

/// k cycles of consecutive even lengths via the r-partite reduction, a
/// d-minimal subgraph, and the tree lemmas layer by layer.
EngineReport even_consecutive_cycles(const LinearHypergraph& g, std::size_t k, std::uint64_t seed,
                                     const EngineOptions& opts = {});

/// A single cycle of length exactly 2k, from the even pipeline when its
/// interval contains 2k and from the exhaustive search otherwise.
EngineReport find_c2k(const LinearHypergraph& g, std::size_t k, std::uint64_t seed, const EngineOptions& opts = {});

EngineReport find(const LinearHypergraph& g, EngineMode mode, std::size_t k, std::uint64_t seed,
                  const EngineOptions& opts = {});

}  // namespace lincyc

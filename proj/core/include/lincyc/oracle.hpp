#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "lincyc/hypergraph.hpp"

namespace lincyc {

inline constexpr std::uint64_t kOracleBudget = 100'000'000;

struct Spectrum {
  std::size_t max_len = 0;
  std::set<std::size_t> lengths;
  /// Number of distinct cycles per length (only meaningful when complete).
  std::map<std::size_t, std::uint64_t> counts;
  /// One cycle per length, the first one found.
  std::map<std::size_t, LinearCycle> witnesses;
  bool complete = true;
  std::uint64_t expansions = 0;
};

/// All linear cycles of length 3..max_len. Each cycle is reached once, from
/// its lowest edge id and in the orientation leaving that edge through its
/// smaller junction vertex. Stops with complete = false past `budget` node
/// expansions.
Spectrum enumerate_cycles(const LinearHypergraph& g, std::size_t max_len, std::uint64_t budget = kOracleBudget);

std::string spectrum_to_json(const Spectrum& s);

/// A cycle of exactly `len` edges using only edges with `alive[e]` (all when
/// empty) and lowest edge id at least `first_edge`. Throws BudgetExceeded.
std::optional<LinearCycle> find_cycle_of_length(const LinearHypergraph& g, std::size_t len,
                                                std::uint64_t budget = kOracleBudget,
                                                const std::vector<bool>& alive = {}, EdgeId first_edge = 0);

/// The first cycle of length at most `max_len` in scan order, with its lowest
/// edge id. Used by the short-cycle cleanup.
struct FoundCycle {
  LinearCycle cycle;
  std::vector<EdgeId> edges;
};
std::optional<FoundCycle> first_short_cycle(const LinearHypergraph& g, std::size_t max_len,
                                            const std::vector<bool>& alive, EdgeId first_edge,
                                            std::uint64_t budget = kOracleBudget);

/// Length of a shortest linear cycle if it is at most `cap`. Throws BudgetExceeded.
std::optional<std::size_t> girth(const LinearHypergraph& g, std::size_t cap, std::uint64_t budget = kOracleBudget);

/// Exhaustive check for a path v_0..v_ℓ whose first edge is in E1, whose other
/// edges are not, and whose colors are pairwise disjoint and avoid the path.
/// Throws TooLarge above 20 vertices.
bool rainbow_path_exists(const ColoredGraph& h, const std::vector<bool>& in_first, std::size_t ell);

}  // namespace lincyc

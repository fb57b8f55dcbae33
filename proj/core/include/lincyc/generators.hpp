#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lincyc/hypergraph.hpp"

namespace lincyc {

enum class GenMode { Steiner, Sparsified, Planted, Random };

GenMode parse_gen_mode(const std::string& s);
const char* to_string(GenMode m) noexcept;

struct GenSpec {
  std::size_t n = 0;
  std::size_t r = 3;
  GenMode mode = GenMode::Steiner;
  /// Target average degree (sparsified, random) or background degree (planted).
  double d = 0.0;
  /// Longest forbidden cycle length; 0 derives it from epsilon.
  std::size_t girth_floor = 0;
  double epsilon = 0.5;
  std::uint64_t seed = 1;
  /// Planted cycle lengths.
  std::vector<std::size_t> lengths;
  std::size_t max_attempts = 20;
};

/// Throws PreconditionFailed on inconsistent parameters.
void validate(const GenSpec& spec);

/// A maximal linear r-graph on 0..n-1: random r-sets are accepted while they
/// reuse no pair, then a sweep adds every r-set that still fits.
LinearHypergraph greedy_partial_steiner(std::size_t n, std::size_t r, std::uint64_t seed);

struct SparsifyReport {
  LinearHypergraph graph;
  double p = 0.0;
  std::size_t max_len = 0;
  std::size_t sampled_edges = 0;
  std::size_t deleted_edges = 0;
  std::size_t attempts = 0;
  double average_degree = 0.0;
  /// 2(2rd)^m
  double expected_short_cycles_bound = 0.0;
  /// 0.8 d n^{ε²} > 2^{m+1} r, evaluated with the given epsilon.
  bool density_condition = false;
  /// Oracle girth after cleanup (empty when no cycle of length <= max_len + 3).
  bool oracle_confirmed = false;
};

/// Keeps each edge with probability p = 2rd/n, then repeatedly deletes the
/// lexicographically least edge of a linear cycle of length <= m. Retries
/// until the average degree is at least d; throws RetriesExhausted otherwise.
SparsifyReport high_girth_sparsify(const LinearHypergraph& base, double d, std::size_t m, std::uint64_t seed,
                                   std::size_t max_attempts = 20, double epsilon = 0.5);

struct PlantedInstance {
  LinearHypergraph graph;
  std::vector<LinearCycle> witnesses;
};

/// Vertex-disjoint linear cycles of the given lengths plus random background
/// edges (target extra average degree `background`) that keep the graph linear.
/// Throws Infeasible when the cycles need more than n vertices.
PlantedInstance plant_cycles(std::size_t n, std::size_t r, const std::vector<std::size_t>& lengths,
                             double background, std::uint64_t seed);

/// Random linear r-graph with about d*n/r edges, built by rejection sampling.
LinearHypergraph random_linear(std::size_t n, std::size_t r, double d, std::uint64_t seed);

/// max(3, ⌊(1-ε) log_d n⌋)
std::size_t girth_target(std::size_t n, double d, double epsilon);

struct Generated {
  LinearHypergraph graph;
  std::vector<LinearCycle> witnesses;
  std::string summary;
};

Generated generate(const GenSpec& spec);

}  // namespace lincyc

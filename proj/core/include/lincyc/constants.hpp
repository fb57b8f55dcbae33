#pragma once

#include <cstddef>
#include <optional>

namespace lincyc {

/// Density constants as functions of r and k. Logarithms are base 2.
struct Constants {
  std::size_t r = 3;
  std::size_t k = 2;

  /// Consecutive lengths: regime d(G) >= c1_all * k.
  double c1_all() const;
  double c3_all() const;
  double c2_all() const;
  /// Consecutive even lengths in a general linear r-graph.
  double c1_even() const;
  double c2_even() const;
  /// Consecutive even lengths in an r-partite linear r-graph.
  double c3_part() const;
  double c4_part() const;
  /// Density coefficient for the exact 2k cycle: e(G) >= c_exact * k * n^{1+1/k}.
  double c_exact() const;
};

/// ⌈log n / (log(d/k) - c)⌉, empty when the denominator is not positive.
std::optional<double> log_ratio_ceiling(double n, double d, double k, double c);

/// 6⌈log n / (log(d/k) - c2_all)⌉ + 6
std::optional<double> all_lengths_bound(const Constants& c, double n, double d);
/// 2⌈log n / (log(d/k) - c2_even)⌉
std::optional<double> even_lengths_bound(const Constants& c, double n, double d);
/// p = ⌈log n / (log(d/k) - c4_part)⌉ for an r-partite graph of average degree d.
std::optional<double> partite_layer_count(const Constants& c, double n, double d);

/// The chain for the exact 2k cycle at e(G) = c_exact * k * n^{1+1/k}: returns
/// ⌈log n / (log(c_exact * r) + (log n)/k - c2_even)⌉, which must be <= k.
double exact_cycle_layer_bound(const Constants& c, double n);

}  // namespace lincyc

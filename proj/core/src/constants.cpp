#include "lincyc/constants.hpp"

#include <cmath>

namespace lincyc {

namespace {

double rd(const Constants& c) { return static_cast<double>(c.r); }
double kd(const Constants& c) { return static_cast<double>(c.k); }

}  // namespace

double Constants::c1_all() const { return std::ldexp(1.0, static_cast<int>(4 * r + 8)) * std::pow(rd(*this), 3); }
double Constants::c3_all() const { return std::ldexp(1.0, static_cast<int>(4 * r + 4)) * std::pow(rd(*this), 5); }
double Constants::c2_all() const { return std::log2(c3_all()); }
double Constants::c1_even() const { return 128.0 * std::pow(rd(*this), 2.0 * rd(*this) + 3); }
double Constants::c2_even() const { return std::log2(64.0 * kd(*this) * std::pow(rd(*this), 2.0 * rd(*this) + 2)); }
double Constants::c3_part() const { return 128.0 * std::pow(rd(*this), rd(*this) + 3); }
double Constants::c4_part() const { return std::log2(64.0 * kd(*this) * std::pow(rd(*this), rd(*this) + 2)); }
double Constants::c_exact() const { return 64.0 * kd(*this) * std::pow(rd(*this), 2.0 * rd(*this) + 3); }

std::optional<double> log_ratio_ceiling(double n, double d, double k, double c) {
  const double denom = std::log2(d / k) - c;
  if (!(denom > 0) || n < 1) return std::nullopt;
  return std::ceil(std::log2(n) / denom);
}

std::optional<double> all_lengths_bound(const Constants& c, double n, double d) {
  auto q = log_ratio_ceiling(n, d, kd(c), c.c2_all());
  if (!q) return std::nullopt;
  return 6 * *q + 6;
}

std::optional<double> even_lengths_bound(const Constants& c, double n, double d) {
  auto q = log_ratio_ceiling(n, d, kd(c), c.c2_even());
  if (!q) return std::nullopt;
  return 2 * *q;
}

std::optional<double> partite_layer_count(const Constants& c, double n, double d) {
  return log_ratio_ceiling(n, d, kd(c), c.c4_part());
}

double exact_cycle_layer_bound(const Constants& c, double n) {
  const double logn = std::log2(n);
  return std::ceil(logn / (std::log2(c.c_exact() * rd(c)) + logn / kd(c) - c.c2_even()));
}

}  // namespace lincyc

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "lincyc/constants.hpp"

using namespace lincyc;

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t out = 1;
  while (e-- > 0) out *= b;
  return out;
}

double lg(double x) { return std::log(x) / std::log(2.0); }

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b)); }

}  // namespace

TEST_CASE("constants match integer recomputation") {
  for (std::uint64_t r : {3u, 4u, 5u})
    for (std::uint64_t k : {2u, 3u, 5u}) {
      Constants c{r, k};
      const auto ri = static_cast<unsigned>(r);
      CHECK(c.c1_all() == static_cast<double>(ipow(2, 4 * ri + 8) * ipow(r, 3)));
      CHECK(c.c3_all() == static_cast<double>(ipow(2, 4 * ri + 4) * ipow(r, 5)));
      CHECK(c.c1_even() == static_cast<double>(128 * ipow(r, 2 * ri + 3)));
      CHECK(c.c3_part() == static_cast<double>(128 * ipow(r, ri + 3)));
      CHECK(c.c_exact() == static_cast<double>(64 * k * ipow(r, 2 * ri + 3)));
      CHECK(close(c.c2_all(), lg(static_cast<double>(ipow(2, 4 * ri + 4) * ipow(r, 5)))));
      CHECK(close(c.c2_even(), lg(static_cast<double>(64 * k * ipow(r, 2 * ri + 2)))));
      CHECK(close(c.c4_part(), lg(static_cast<double>(64 * k * ipow(r, ri + 2)))));
    }
}

TEST_CASE("partite layer count at d/k = 2^18") {
  Constants c{3, 2};
  CHECK(close(c.c4_part(), lg(31104.0)));
  for (double n : {1e3, 1e6, 1e9}) {
    const double d = 2.0 * std::ldexp(1.0, 18);
    const auto p = partite_layer_count(c, n, d);
    REQUIRE(p.has_value());
    CHECK(*p == std::ceil(lg(n) / (18.0 - lg(31104.0))));
  }
}

TEST_CASE("bounds are empty below the log threshold") {
  Constants c{3, 2};
  CHECK_FALSE(all_lengths_bound(c, 1000, 10).has_value());
  CHECK_FALSE(even_lengths_bound(c, 1000, 10).has_value());
  const double d = 2.0 * std::ldexp(1.0, 40);
  const auto q = std::ceil(lg(1e6) / (40.0 - c.c2_all()));
  CHECK(*all_lengths_bound(c, 1e6, d) == 6 * q + 6);
  CHECK(*even_lengths_bound(c, 1e6, d) == 2 * std::ceil(lg(1e6) / (40.0 - c.c2_even())));
}

TEST_CASE("exact-cycle chain stays within k at the threshold density") {
  for (std::size_t k = 2; k <= 5; ++k) {
    Constants c{3, k};
    for (double n : {10.0, 1e3, 1e6, 1e9, 1e12, 1e15}) {
      // e(G) = c_exact k n^{1+1/k}  =>  d(G)/k = r c_exact n^{1/k}.
      const double e = c.c_exact() * static_cast<double>(k) * std::pow(n, 1.0 + 1.0 / static_cast<double>(k));
      const double d_over_k = 3.0 * e / n / static_cast<double>(k);
      const double ell = std::ceil(lg(n) / (lg(d_over_k) - c.c2_even()));
      CHECK(ell <= static_cast<double>(k));
      CHECK(exact_cycle_layer_bound(c, n) == doctest::Approx(ell));
      CHECK(exact_cycle_layer_bound(c, n) <= static_cast<double>(k));
    }
  }
}

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "ekscat/error.hpp"
#include "ekscat/statistics.hpp"
#include "oracles.hpp"

using namespace ekscat;

namespace {

const FactorTable& table() {
  static const FactorTable t(100000);
  return t;
}

std::vector<EKSample> samples_of(std::initializer_list<double> values) {
  std::vector<EKSample> out;
  std::uint32_t q = 1;
  for (double v : values) out.push_back({q++, v});
  return out;
}

}  // namespace

TEST_CASE("normalization") {
  CHECK_THROWS_AS(EKNormalization::at(15.9), InvalidArgument);
  CHECK_THROWS_AS(EKNormalization::at(std::nan("")), InvalidArgument);
  const auto n = EKNormalization::at(1e7);
  // f, g at 10^7 from an independent double-precision evaluation.
  CHECK(n.f == doctest::Approx(3.8640404138107947).epsilon(1e-14));
  CHECK(n.g == doctest::Approx(2.6760431651304204).epsilon(1e-14));
  CHECK(normalize(0, n) == doctest::Approx(-3.8640404138107947 / 2.6760431651304204));
  CHECK(normalize(n.f, n) == 0.0);
  for (double t : {-1.0, 0.0, 1.0, 2.0}) {
    for (double x : {16.0, 1e5, 1e7, 1e12}) {
      const auto m = EKNormalization::at(x);
      CHECK(normalize(m.f + t * m.g, m) == doctest::Approx(t).epsilon(1e-14));
    }
  }
}

TEST_CASE("standard normal CDF") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std_normal_cdf(1.0) == doctest::Approx(0.841344746068542948).epsilon(1e-15));
  for (double a : {0.5, 1.0, 2.0, 3.7, 6.0}) {
    CHECK(std::abs(std_normal_cdf(a) + std_normal_cdf(-a) - 1.0) < 1e-12);
  }
  for (int i = 0; i <= 24; ++i) {
    const double a = -6.0 + 0.5 * i;
    CHECK(std::abs(std_normal_cdf(a) - static_cast<double>(oracle::normal_cdf(a))) < 1e-12);
  }
  CHECK(std_normal_pdf(0.0) == doctest::Approx(1.0 / std::sqrt(2 * std::numbers::pi)));
}

TEST_CASE("empirical CDF") {
  const auto s = samples_of({-1.0, 0.0, 1.0});
  CHECK(empirical_cdf(s, 0.0) == doctest::Approx(2.0 / 3.0));
  CHECK(empirical_cdf(s, std::numeric_limits<double>::infinity()) == 1.0);
  CHECK(empirical_cdf(s, 5.0) == 1.0);
  CHECK(empirical_cdf(s, -1.5) == 0.0);
  CHECK(empirical_cdf(s, -1.0) == doctest::Approx(1.0 / 3.0));  // non-strict
  CHECK_THROWS_AS(empirical_cdf({}, 0.0), InvalidArgument);

  const auto d = EmpiricalDistribution::from_samples(s);
  double prev = 0.0;
  for (double a = -3; a <= 3; a += 0.25) {
    const double c = d.cdf(a);
    REQUIRE(c >= prev);
    REQUIRE(c == empirical_cdf(s, a));
    prev = c;
  }
}

TEST_CASE("KS distance") {
  CHECK(ks_distance(samples_of({0.0})) == 0.5);
  CHECK_THROWS_AS(ks_distance({}), InvalidArgument);

  // Normal quantiles at k/(n+1), found by bisection.
  const int n = 99;
  std::vector<EKSample> q;
  for (int k = 1; k <= n; ++k) {
    const double target = static_cast<double>(k) / (n + 1);
    double lo = -8, hi = 8;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (std_normal_cdf(mid) < target ? lo : hi) = mid;
    }
    q.push_back({static_cast<std::uint32_t>(k), 0.5 * (lo + hi)});
  }
  CHECK(ks_distance(q) <= 2.0 / (n + 1));

  // Duplicate values form a single jump of height 2/n.
  const auto dup = samples_of({0.0, 0.0, 1.0});
  const double phi0 = 0.5, phi1 = std_normal_cdf(1.0);
  const double expected = std::max({phi0, std::abs(2.0 / 3 - phi0), std::abs(2.0 / 3 - phi1),
                                    std::abs(1.0 - phi1)});
  CHECK(ks_distance(dup) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(EmpiricalDistribution::from_samples(dup).atoms().size() == 2);
}

TEST_CASE("histogram binning") {
  const auto s = samples_of({-1.0, 0.0, 1.0});
  const auto h = histogram(s, -2.0, 2.0, 4);
  CHECK(h.counts == std::vector<std::uint64_t>{0, 1, 1, 1});
  CHECK(h.total == 3);
  CHECK(h.below == 0);
  CHECK(h.above == 0);
  CHECK(h.bin_lo(3) == 1.0);

  const auto away = histogram(s, 10.0, 20.0, 5);
  CHECK(away.below == 3);
  CHECK(away.counts == std::vector<std::uint64_t>{3, 0, 0, 0, 0});
  const auto high = histogram(s, -20.0, -10.0, 2);
  CHECK(high.above == 3);
  CHECK(high.counts == std::vector<std::uint64_t>{0, 3});

  // Right edge belongs to the next bin; hi itself is out of range.
  const auto edges = histogram(samples_of({0.25, 0.5, 0.75, 1.0}), 0.0, 1.0, 4);
  CHECK(edges.counts == std::vector<std::uint64_t>{0, 1, 1, 2});
  CHECK(edges.above == 1);

  CHECK_THROWS_AS(histogram(s, 1.0, 1.0, 4), InvalidArgument);
  CHECK_THROWS_AS(histogram(s, 2.0, 1.0, 4), InvalidArgument);
  CHECK_THROWS_AS(histogram(s, 0.0, 1.0, 0), InvalidArgument);

  double mass = 0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) mass += h.density(i) * h.width;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scan rows") {
  const auto& t = table();
  const auto rows = scan(t, 61, 1);
  REQUIRE(rows.size() == 61);
  CHECK(rows[4] == ArithmeticRecord{5, 4, 2, 3, 1, 1});
  CHECK(rows[60] == ArithmeticRecord{61, 60, 2, 31, 1, 3});
  const auto one = scan(t, 1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == ArithmeticRecord{1, 1, 1, 1, 0, 0});
  CHECK_THROWS_AS(scan(t, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(scan(t, t.limit() + 1, 1), InvalidArgument);
}

TEST_CASE("scan is independent of worker count") {
  const auto& t = table();
  const auto a = scan(t, 100000, 1);
  const auto b = scan(t, 100000, 4);
  CHECK(a == b);
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i].q == i + 1);
}

TEST_CASE("A(x) by both routes") {
  const auto& t = table();
  CHECK(count_A(t, 10) == 4);
  CHECK(count_A(t, 20) == 6);
  CHECK(count_A(t, 1) == 1);
  CHECK(count_A_via_O(t, 10) == 4);
  CHECK(count_A_via_O(t, 2) == 2);
  CHECK(in_O(t, 25));
  CHECK(in_O(t, 1));
  CHECK_FALSE(in_O(t, 2));
  CHECK(count_A_via_O(t, 25) == count_A_via_O(t, 24) + 1);
  CHECK_THROWS_AS(count_A(t, 0), InvalidArgument);
  CHECK_THROWS_AS(count_A_via_O(t, t.limit() + 1), InvalidArgument);

  std::uint64_t brute = 0;
  for (std::uint32_t x = 1; x <= 3000; ++x) {
    brute += brute_force_s(x) != 0;
    REQUIRE(count_A(t, x) == brute);
    REQUIRE(count_A_via_O(t, x) == brute);
  }
  CHECK(count_A(t, 100000, 3) == count_A_via_O(t, 100000, 1));
}

TEST_CASE("E(x)") {
  const auto& t = table();
  CHECK(count_E(t, 2) == 0);
  CHECK(count_E(t, 60) == 0);
  CHECK(count_E(t, 100) == 1);
  CHECK_THROWS_AS(count_E(t, 0), InvalidArgument);
  for (std::uint32_t x : {1000u, 10000u, 100000u}) CHECK(count_E(t, x) <= count_A(t, x));
}

TEST_CASE("summary pass matches the direct counters") {
  const auto& t = table();
  for (unsigned workers : {1u, 4u}) {
    const auto s = summarize(t, 50000, workers);
    CHECK(s.x == 50000);
    CHECK(s.a_count == count_A(t, 50000));
    CHECK(s.e_count == count_E(t, 50000));
    std::uint64_t total = 0;
    for (auto c : s.omega_n_counts) total += c;
    CHECK(total == 50000);
  }
}

TEST_CASE("alpha constant") {
  CHECK_THROWS_AS(alpha_constant(4), InvalidArgument);
  const auto a5 = alpha_constant(5);
  CHECK(a5.value ==
        doctest::Approx(3.0 / (2.0 * std::numbers::pi) * std::sqrt(25.0 / 24.0)).epsilon(1e-15));
  CHECK(a5.prime_limit == 5);

  const auto a4 = alpha_constant(10000);
  CHECK(a4.value == doctest::Approx(static_cast<double>(oracle::alpha_product(10000))).epsilon(1e-14));
  // mpmath, 30 digits: 0.490692856009068391483969719848
  CHECK(a4.value == doctest::Approx(0.4906928560090684).epsilon(1e-14));
  CHECK(a4.tail_bound < 1.0 / (2 * 10000.0));

  double prev_value = 0, prev_tail = 1;
  for (std::uint64_t p : {5ull, 13ull, 100ull, 1000ull, 10000ull, 100000ull}) {
    const auto a = alpha_constant(p);
    REQUIRE(a.value >= prev_value);
    REQUIRE(a.tail_bound < prev_tail);
    REQUIRE(a.tail_bound < 1.0 / (2.0 * static_cast<double>(p)));
    prev_value = a.value;
    prev_tail = a.tail_bound;
  }
}

TEST_CASE("Erdos-Kac samples") {
  const auto& t = table();
  CHECK_THROWS_AS(ek_samples(t, 15, OmegaColumn::omega_n), InvalidArgument);
  CHECK_THROWS_AS(ek_samples(t, t.limit() + 1, OmegaColumn::omega_n), InvalidArgument);

  const auto s16 = ek_samples(t, 16, OmegaColumn::omega_n);
  REQUIRE(s16.size() == 16);
  const auto n16 = EKNormalization::at(16);
  CHECK(s16[0].q == 1);
  CHECK(s16[0].value == (0.0 - n16.f) / n16.g);

  // Compressed distribution from omega counts equals the raw-sample route.
  for (auto which : {OmegaColumn::omega_n, OmegaColumn::omega_phi}) {
    const auto raw = ek_samples(t, 100000, which, 2);
    const auto summary = summarize(t, 100000);
    const auto& counts =
        which == OmegaColumn::omega_n ? summary.omega_n_counts : summary.omega_phi_counts;
    const auto compact =
        EmpiricalDistribution::from_omega_counts(counts, EKNormalization::at(100000));
    CHECK(compact.ks_distance() == ks_distance(raw));
    for (double a = -2; a <= 2; a += 1) CHECK(compact.cdf(a) == empirical_cdf(raw, a));
    const auto h1 = compact.histogram(-4, 4, 60);
    const auto h2 = histogram(raw, -4, 4, 60);
    CHECK(h1.counts == h2.counts);
  }
}

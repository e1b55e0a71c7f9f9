#pragma once

// Slow, obviously-correct reference computations. Nothing here may call
// into the library under test.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

inline std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(std::uint64_t m) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d) continue;
    unsigned e = 0;
    while (m % d == 0) {
      m /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

inline bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) return false;
  return true;
}

inline unsigned omega(std::uint64_t m) { return static_cast<unsigned>(trial_factor(m).size()); }

// |{1 <= p <= q : gcd(p, q) = 1}|.
inline std::uint64_t totient(std::uint64_t q) {
  std::uint64_t c = 0;
  for (std::uint64_t p = 1; p <= q; ++p) c += std::gcd(p, q) == 1;
  return c;
}

// y in [1, q) with p*y = -1 mod q, by search; 0 if none.
inline std::uint64_t partner(std::uint64_t p, std::uint64_t q) {
  for (std::uint64_t y = 1; y < q; ++y)
    if ((p * y + 1) % q == 0) return y;
  return 0;
}

// Phi(a) by composite Simpson quadrature of the normal density over [0, |a|]
// in long double.
inline long double normal_cdf(long double a) {
  const long double pi = 3.141592653589793238462643383279502884L;
  auto pdf = [&](long double y) { return std::exp(-y * y / 2) / std::sqrt(2 * pi); };
  const long double b = std::fabs(a);
  if (b == 0) return 0.5L;
  const int n = 20000;
  const long double h = b / n;
  long double sum = pdf(0) + pdf(b);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4 : 2) * pdf(i * h);
  const long double half = sum * h / 3;
  return a > 0 ? 0.5L + half : 0.5L - half;
}

// (3/2pi) prod_{p <= limit, p = 1 mod 4} (1 - p^-2)^{-1/2} by direct product
// over trial-division primes.
inline long double alpha_product(std::uint64_t limit) {
  long double prod = 1;
  for (std::uint64_t p = 5; p <= limit; p += 4)
    if (is_prime(p)) prod *= 1 / std::sqrt(1 - 1.0L / (static_cast<long double>(p) * p));
  return 3 / (2 * 3.141592653589793238462643383279502884L) * prod;
}

}  // namespace oracle

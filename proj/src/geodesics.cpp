#include "ekscat/geodesics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "ekscat/error.hpp"

namespace ekscat {

std::optional<std::uint32_t> modular_inverse(std::uint32_t a, std::uint32_t m) {
  if (m == 0) throw InvalidArgument("modular_inverse: modulus must be positive");
  if (m == 1) return 0;
  std::int64_t old_r = a % m, r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t quot = old_r / r;
    old_r -= quot * r;
    std::swap(old_r, r);
    old_s -= quot * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) return std::nullopt;
  std::int64_t inv = old_s % static_cast<std::int64_t>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint32_t>(inv);
}

std::uint32_t pair_partner(std::uint32_t p, std::uint32_t q) {
  if (q < 2 || p < 1 || p >= q) {
    throw InvalidArgument("pair_partner: need q >= 2 and 1 <= p < q (p=" + std::to_string(p) +
                          ", q=" + std::to_string(q) + ")");
  }
  const auto inv = modular_inverse(p, q);
  if (!inv) {
    throw InvalidArgument("pair_partner: gcd(" + std::to_string(p) + ", " + std::to_string(q) +
                          ") != 1");
  }
  return q - *inv;
}

RationalCusp::RationalCusp(std::uint32_t p, std::uint32_t q) : p_(p), q_(q) {
  if (q == 0 || p >= q || std::gcd(p, q) != 1) {
    throw InvalidArgument("cusp " + std::to_string(p) + "/" + std::to_string(q) +
                          " is not a reduced fraction in [0, 1)");
  }
}

bool same_geodesic(const RationalCusp& w1, const RationalCusp& w2) noexcept {
  if (w1 == w2) return true;
  if (w1.q() != w2.q() || w1.q() < 2) return false;
  return (std::uint64_t{w1.p()} * w2.p() + 1) % w1.q() == 0;
}

double sojourn_time(std::uint32_t q, double t0) {
  if (!(t0 > 1.0)) throw InvalidArgument("t0 must be > 1");
  return 2.0 * std::log(static_cast<double>(q) * t0);
}

GeodesicFamily enumerate_family(const FactorTable& t, std::uint32_t q, double t0) {
  if (!t.contains(q)) {
    throw InvalidArgument("enumerate_family: q=" + std::to_string(q) + " outside [1, " +
                          std::to_string(t.limit()) + "]");
  }
  GeodesicFamily family{q, {}, sojourn_time(q, t0), t0};
  if (q == 1) {
    family.numerators.push_back(0);
    return family;
  }
  const std::uint32_t expected = n_of_q(totient(t, q), s_of_q(t, q));
  family.numerators.reserve(expected);
  for (std::uint32_t p = 1; p < q; ++p) {
    const auto inv = modular_inverse(p, q);
    if (!inv) continue;
    const std::uint32_t y = q - *inv;
    if (p <= y) family.numerators.push_back(p);
  }
  if (family.numerators.size() != expected) {
    throw InvariantViolation("|G_q| = " + std::to_string(family.numerators.size()) +
                             " but n_q = " + std::to_string(expected) + " at q=" +
                             std::to_string(q));
  }
  return family;
}

void enumerate_up_to(const FactorTable& t, std::uint32_t q_max, double t0,
                     const std::function<void(const GeodesicFamily&)>& sink) {
  if (!t.contains(q_max)) {
    throw InvalidArgument("enumerate_up_to: q_max=" + std::to_string(q_max) +
                          " outside [1, " + std::to_string(t.limit()) + "]");
  }
  for (std::uint32_t q = 1; q <= q_max; ++q) sink(enumerate_family(t, q, t0));
}

}  // namespace ekscat

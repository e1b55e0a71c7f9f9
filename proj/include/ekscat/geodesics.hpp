#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ekscat/sieve.hpp"

namespace ekscat {

/// Inverse of a modulo m by the extended Euclidean algorithm, or nullopt
/// when gcd(a, m) != 1. Requires m >= 1.
std::optional<std::uint32_t> modular_inverse(std::uint32_t a, std::uint32_t m);

/// The unique y in [1, q) with p*y = -1 (mod q).
///
/// Requires q >= 2, 1 <= p < q and gcd(p, q) = 1; throws InvalidArgument
/// otherwise. The map p -> y is an involution on the units mod q.
std::uint32_t pair_partner(std::uint32_t p, std::uint32_t q);

/// Reduced fraction p/q in [0, 1). 0/1 is the only cusp with q = 1.
class RationalCusp {
 public:
  /// Throws InvalidArgument unless 0 <= p < q and gcd(p, q) = 1.
  RationalCusp(std::uint32_t p, std::uint32_t q);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t q() const noexcept { return q_; }

  friend bool operator==(const RationalCusp&, const RationalCusp&) = default;

 private:
  std::uint32_t p_;
  std::uint32_t q_;
};

/// True iff the vertical geodesics over w1 and w2 project to the same
/// geodesic on the modular surface: w1 == w2, or both share the
/// denominator q >= 2 and q | p1*p2 + 1.
bool same_geodesic(const RationalCusp& w1, const RationalCusp& w2) noexcept;

/// Sojourn time 2*ln(q*t0) shared by every scattering geodesic with
/// denominator q. Requires t0 > 1.
double sojourn_time(std::uint32_t q, double t0);

/// The scattering geodesics with denominator q, each named by the numerator
/// of its representative cusp p/q.
struct GeodesicFamily {
  std::uint32_t q = 0;
  std::vector<std::uint32_t> numerators;  // ascending
  double sojourn = 0.0;
  double t0 = 0.0;
};

/// Numerators of G_q: every self-paired unit (p^2 = -1 mod q) together with
/// the smaller member of each pair {p, pair_partner(p, q)}. G_1 = {0}.
///
/// Throws InvalidArgument if q is outside the table or t0 <= 1, and
/// InvariantViolation if the count disagrees with (phi(q) + s_q) / 2.
GeodesicFamily enumerate_family(const FactorTable& t, std::uint32_t q, double t0);

/// Calls sink with the families for q = 1..q_max, in order of q.
void enumerate_up_to(const FactorTable& t, std::uint32_t q_max, double t0,
                     const std::function<void(const GeodesicFamily&)>& sink);

}  // namespace ekscat

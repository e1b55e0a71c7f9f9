#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ekscat {

/// Residue class of a prime modulo 4.
enum class PrimeClass { two, one_mod_4, three_mod_4 };

PrimeClass classify_prime(std::uint32_t p) noexcept;

struct PrimePower {
  std::uint32_t prime = 0;
  std::uint32_t exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization of a 32-bit integer, primes strictly increasing.
///
/// Any m < 2^32 has at most 9 distinct prime factors
/// (2*3*5*7*11*13*17*19*23*29 > 2^32), so storage is inline.
class Factorization {
 public:
  static constexpr std::size_t max_distinct = 9;

  void push_back(PrimePower pp) { terms_[size_++] = pp; }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  const PrimePower* begin() const noexcept { return terms_.data(); }
  const PrimePower* end() const noexcept { return terms_.data() + size_; }
  const PrimePower& operator[](std::size_t i) const noexcept { return terms_[i]; }
  std::span<const PrimePower> terms() const noexcept { return {terms_.data(), size_}; }

  /// Product of p^e over all terms.
  std::uint64_t value() const noexcept;

 private:
  std::array<PrimePower, max_distinct> terms_{};
  std::size_t size_ = 0;
};

enum class SieveMode {
  linear,     // single pass linear sieve over the whole range
  segmented,  // cache-sized blocks sieved by base primes <= sqrt(limit)
};

struct SieveOptions {
  SieveMode mode = SieveMode::linear;
  unsigned workers = 1;  // used by the segmented build only
  std::uint32_t segment_size = 1u << 18;
};

/// Smallest-prime-factor table over [2, limit].
///
/// Entries are 32 bits wide, so a table costs 4*(limit+1) bytes and limit is
/// capped at 2^32 - 1 (about 16 GiB at the cap; 40 MB at 10^7). Immutable
/// after construction and safe to share between threads.
class FactorTable {
 public:
  static constexpr std::uint64_t max_limit = 0xFFFFFFFFull;

  /// Throws InvalidArgument for limit < 2 or limit > max_limit, and
  /// ResourceError if the table cannot be allocated.
  explicit FactorTable(std::uint64_t limit, SieveOptions options = {});

  std::uint32_t limit() const noexcept { return limit_; }

  /// spf(m) for 2 <= m <= limit; unchecked.
  std::uint32_t spf(std::uint32_t m) const noexcept { return spf_[m]; }

  bool contains(std::uint64_t m) const noexcept { return m >= 1 && m <= limit_; }

  std::span<const std::uint32_t> raw() const noexcept { return spf_; }

 private:
  std::uint32_t limit_;
  std::vector<std::uint32_t> spf_;
};

FactorTable build_factor_table(std::uint64_t limit, SieveOptions options = {});

// Queries below throw InvalidArgument when the argument lies outside [1, t.limit()].

Factorization factorize(const FactorTable& t, std::uint64_t m);
unsigned omega(const FactorTable& t, std::uint64_t m);
std::uint32_t totient(const FactorTable& t, std::uint64_t q);

/// Number of p in [1, q) with p^2 = -1 (mod q), with s_1 = 1.
///
/// Evaluated from the factorization of q: by CRT the count is the product
/// of local counts, which are 1 for 2^1, 0 for 4 | q, 2 for p^k with
/// p = 1 (mod 4) and 0 for p = 3 (mod 4).
std::uint32_t s_of_q(const FactorTable& t, std::uint64_t q);

std::uint32_t totient_of(const Factorization& f) noexcept;
std::uint32_t sqrt_minus_one_count(const Factorization& f) noexcept;

/// Exhaustive count of p in [1, q) with p*p mod q == q - 1; returns 1 for
/// q = 1. O(q). Throws InvalidArgument for q = 0.
std::uint32_t brute_force_s(std::uint32_t q);

/// (phi + s) / 2. Throws InvariantViolation when phi + s is odd.
std::uint32_t n_of_q(std::uint32_t phi, std::uint32_t s);

/// Per-q row of every arithmetic function the experiments need.
struct ArithmeticRecord {
  std::uint32_t q = 0;
  std::uint32_t phi = 0;
  std::uint32_t s = 0;
  std::uint32_t n = 0;
  std::uint32_t omega_n = 0;
  std::uint32_t omega_phi = 0;

  friend bool operator==(const ArithmeticRecord&, const ArithmeticRecord&) = default;
};

/// Builds the record for q and checks its invariants (parity, s <= phi,
/// s zero or a power of two). Throws InvariantViolation if one fails.
ArithmeticRecord make_record(const FactorTable& t, std::uint64_t q);

}  // namespace ekscat

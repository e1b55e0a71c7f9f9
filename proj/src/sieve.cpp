#include "ekscat/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <new>
#include <string>
#include <thread>

#include "ekscat/error.hpp"

namespace ekscat {
namespace {

void check_range(const FactorTable& t, std::uint64_t m, const char* what) {
  if (!t.contains(m)) {
    throw InvalidArgument(std::string(what) + ": argument " + std::to_string(m) +
                          " outside [1, " + std::to_string(t.limit()) + "]");
  }
}

std::uint32_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return static_cast<std::uint32_t>(r);
}

void linear_sieve(std::vector<std::uint32_t>& spf, std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t lp = spf[i];
    for (std::uint32_t p : primes) {
      const std::uint64_t m = i * p;
      if (p > lp || m > limit) break;
      spf[m] = p;
    }
  }
}

void segmented_sieve(std::vector<std::uint32_t>& spf, std::uint64_t limit,
                     const SieveOptions& options) {
  const std::uint32_t root = isqrt(limit);

  // Base primes by a plain sieve over [2, root].
  std::vector<std::uint32_t> base;
  {
    std::vector<bool> composite(root + 1, false);
    for (std::uint64_t i = 2; i <= root; ++i) {
      if (composite[i]) continue;
      base.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= root; j += i) composite[j] = true;
    }
  }

  const std::uint64_t seg = std::max<std::uint32_t>(options.segment_size, 1024);
  const std::uint64_t nseg = (limit - 2) / seg + 1;

  // Segments write disjoint slices, so any assignment of segments to
  // workers yields the same table.
  auto run = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t s = first; s < nseg; s += stride) {
      const std::uint64_t lo = 2 + s * seg;
      const std::uint64_t hi = std::min(limit + 1, lo + seg);
      for (std::uint32_t p : base) {
        const std::uint64_t pp = std::uint64_t{p} * p;
        if (pp >= hi) break;
        std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
        for (std::uint64_t m = start; m < hi; m += p) {
          if (spf[m] == 0) spf[m] = p;
        }
      }
      for (std::uint64_t m = lo; m < hi; ++m) {
        if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(m);
      }
    }
  };

  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1 || nseg == 1) {
    run(0, 1);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
}

}  // namespace

PrimeClass classify_prime(std::uint32_t p) noexcept {
  if (p == 2) return PrimeClass::two;
  return p % 4 == 1 ? PrimeClass::one_mod_4 : PrimeClass::three_mod_4;
}

std::uint64_t Factorization::value() const noexcept {
  std::uint64_t v = 1;
  for (const auto& [p, e] : *this) {
    for (std::uint32_t i = 0; i < e; ++i) v *= p;
  }
  return v;
}

FactorTable::FactorTable(std::uint64_t limit, SieveOptions options) {
  if (limit < 2) {
    throw InvalidArgument("factor table limit must be >= 2, got " + std::to_string(limit));
  }
  if (limit > max_limit) {
    throw InvalidArgument("factor table limit " + std::to_string(limit) +
                          " exceeds 2^32 - 1");
  }
  limit_ = static_cast<std::uint32_t>(limit);
  try {
    spf_.assign(limit + 1, 0);
  } catch (const std::bad_alloc&) {
    throw ResourceError("cannot allocate factor table of " +
                        std::to_string((limit + 1) * sizeof(std::uint32_t)) + " bytes");
  } catch (const std::length_error&) {
    throw ResourceError("cannot allocate factor table of " +
                        std::to_string((limit + 1) * sizeof(std::uint32_t)) + " bytes");
  }
  spf_[1] = 1;
  if (options.mode == SieveMode::segmented) {
    segmented_sieve(spf_, limit, options);
  } else {
    linear_sieve(spf_, limit);
  }
}

FactorTable build_factor_table(std::uint64_t limit, SieveOptions options) {
  return FactorTable(limit, options);
}

Factorization factorize(const FactorTable& t, std::uint64_t m) {
  check_range(t, m, "factorize");
  Factorization f;
  auto rest = static_cast<std::uint32_t>(m);
  while (rest > 1) {
    const std::uint32_t p = t.spf(rest);
    std::uint32_t e = 0;
    do {
      rest /= p;
      ++e;
    } while (rest % p == 0);
    f.push_back({p, e});
  }
  return f;
}

unsigned omega(const FactorTable& t, std::uint64_t m) {
  check_range(t, m, "omega");
  unsigned count = 0;
  auto rest = static_cast<std::uint32_t>(m);
  while (rest > 1) {
    const std::uint32_t p = t.spf(rest);
    do rest /= p;
    while (rest % p == 0);
    ++count;
  }
  return count;
}

std::uint32_t totient_of(const Factorization& f) noexcept {
  std::uint32_t phi = 1;
  for (const auto& [p, e] : f) {
    phi *= p - 1;
    for (std::uint32_t i = 1; i < e; ++i) phi *= p;
  }
  return phi;
}

std::uint32_t sqrt_minus_one_count(const Factorization& f) noexcept {
  std::uint32_t s = 1;
  for (const auto& [p, e] : f) {
    switch (classify_prime(p)) {
      case PrimeClass::two:
        if (e >= 2) return 0;
        break;
      case PrimeClass::three_mod_4:
        return 0;
      case PrimeClass::one_mod_4:
        s *= 2;
        break;
    }
  }
  return s;
}

std::uint32_t totient(const FactorTable& t, std::uint64_t q) {
  check_range(t, q, "totient");
  return totient_of(factorize(t, q));
}

std::uint32_t s_of_q(const FactorTable& t, std::uint64_t q) {
  check_range(t, q, "s_of_q");
  return sqrt_minus_one_count(factorize(t, q));
}

std::uint32_t brute_force_s(std::uint32_t q) {
  if (q == 0) throw InvalidArgument("brute_force_s: q must be positive");
  if (q == 1) return 1;
  std::uint32_t count = 0;
  const std::uint64_t target = q - 1;
  for (std::uint64_t p = 1; p < q; ++p) {
    if (p * p % q == target) ++count;
  }
  return count;
}

std::uint32_t n_of_q(std::uint32_t phi, std::uint32_t s) {
  const std::uint64_t sum = std::uint64_t{phi} + s;
  if (sum % 2 != 0) {
    throw InvariantViolation("phi + s is odd (phi=" + std::to_string(phi) +
                             ", s=" + std::to_string(s) + ")");
  }
  return static_cast<std::uint32_t>(sum / 2);
}

ArithmeticRecord make_record(const FactorTable& t, std::uint64_t q) {
  const Factorization f = factorize(t, q);
  ArithmeticRecord r;
  r.q = static_cast<std::uint32_t>(q);
  r.phi = totient_of(f);
  r.s = sqrt_minus_one_count(f);
  if (r.s > r.phi || (r.s != 0 && !std::has_single_bit(r.s)) ||
      (q >= 3 && (r.phi % 2 != 0 || r.s % 2 != 0))) {
    throw InvariantViolation("record invariant failed at q=" + std::to_string(q));
  }
  r.n = n_of_q(r.phi, r.s);
  r.omega_n = omega(t, r.n);
  r.omega_phi = omega(t, r.phi);
  return r;
}

}  // namespace ekscat

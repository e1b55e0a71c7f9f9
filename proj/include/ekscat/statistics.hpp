#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ekscat/sieve.hpp"

namespace ekscat {

/// Centering f(x) = (ln ln x)^2 / 2 and scale g(x) = (ln ln x)^{3/2} / sqrt(3)
/// for the omega(n_q) statistic at cutoff x.
struct EKNormalization {
  double x = 0.0;
  double f = 0.0;
  double g = 0.0;

  /// Throws InvalidArgument for x < 16.
  static EKNormalization at(double x);
};

inline constexpr double min_ek_cutoff = 16.0;

double normalize(double omega_value, const EKNormalization& norm) noexcept;

struct EKSample {
  std::uint32_t q = 0;
  double value = 0.0;
};

enum class OmegaColumn { omega_n, omega_phi };

/// Records for q = 1..x, delivered in q order in contiguous chunks.
/// Throws InvalidArgument if x is outside the table.
void scan(const FactorTable& t, std::uint32_t x, unsigned workers,
          const std::function<void(std::span<const ArithmeticRecord>)>& sink);

std::vector<ArithmeticRecord> scan(const FactorTable& t, std::uint32_t x, unsigned workers = 1);

/// Phi(a) = erfc(-a / sqrt 2) / 2 using the C library erfc (fdlibm-derived
/// rational approximations, below 1 ulp relative error in glibc). Phi(0) is
/// exactly 0.5.
double std_normal_cdf(double a) noexcept;
double std_normal_pdf(double a) noexcept;

struct HistogramBins {
  double lo = 0.0;
  double width = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  // Samples outside [lo, hi); these are also included in the first/last bin.
  std::uint64_t below = 0;
  std::uint64_t above = 0;

  double hi() const noexcept { return lo + width * static_cast<double>(counts.size()); }
  double bin_lo(std::size_t i) const noexcept { return lo + width * static_cast<double>(i); }
  double bin_hi(std::size_t i) const noexcept { return lo + width * static_cast<double>(i + 1); }
  double density(std::size_t i) const noexcept {
    return static_cast<double>(counts[i]) / (static_cast<double>(total) * width);
  }
};

/// Distinct sample values with multiplicities, sorted ascending.
///
/// The normalized statistic only takes a handful of distinct values (one per
/// omega), so CDF, KS and binning work on this compressed form.
class EmpiricalDistribution {
 public:
  struct Atom {
    double value;
    std::uint64_t weight;
  };

  static EmpiricalDistribution from_samples(std::span<const EKSample> samples);
  static EmpiricalDistribution from_omega_counts(std::span<const std::uint64_t> counts,
                                                 const EKNormalization& norm);

  std::uint64_t total() const noexcept { return total_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }

  /// Fraction of samples with value <= a.
  double cdf(double a) const;
  /// sup |F_n - Phi| over both sides of every jump of F_n.
  double ks_distance() const;
  /// Equal-width bins over [lo, hi); ties at an edge go to the right bin and
  /// out-of-range samples are clamped into the edge bins.
  HistogramBins histogram(double lo, double hi, unsigned bins) const;
  double mean() const;
  double variance() const;

 private:
  std::vector<Atom> atoms_;
  std::uint64_t total_ = 0;
};

// The three functions below throw InvalidArgument on empty input.
double empirical_cdf(std::span<const EKSample> samples, double a);
double ks_distance(std::span<const EKSample> samples);
/// Throws InvalidArgument for lo >= hi or bins == 0.
HistogramBins histogram(std::span<const EKSample> samples, double lo, double hi, unsigned bins);

/// #{q <= x : s_q != 0}, from s_of_q.
std::uint64_t count_A(const FactorTable& t, std::uint32_t x, unsigned workers = 1);
/// #{q <= x : q in O or q/2 in O}, O = integers whose prime factors are all
/// 1 mod 4 (1 in O). Independent of the s_q formula; must equal count_A.
std::uint64_t count_A_via_O(const FactorTable& t, std::uint32_t x, unsigned workers = 1);
/// #{q <= x : |omega(n_q) - omega(phi(q))| > 1}.
std::uint64_t count_E(const FactorTable& t, std::uint32_t x, unsigned workers = 1);

bool in_O(const FactorTable& t, std::uint64_t m);

struct AlphaEstimate {
  double value = 0.0;
  std::uint64_t prime_limit = 0;
  // Relative truncation error bound: value <= alpha <= value * (1 + tail_bound).
  double tail_bound = 0.0;
};

/// (3 / 2pi) * prod_{p <= prime_limit, p = 1 mod 4} (1 - p^-2)^{-1/2}.
///
/// The omitted factors satisfy
///   sum_{p > P} -ln(1 - p^-2) / 2 <= sum_{n > P} 1 / (2(n^2 - 1))
///                                  = (1/P + 1/(P+1)) / 4 < 1 / (2P),
/// so tail_bound = expm1((1/P + 1/(P+1)) / 4), which stays below 1/(2P).
/// Throws InvalidArgument for prime_limit < 5.
AlphaEstimate alpha_constant(std::uint64_t prime_limit);

/// One sample per q = 1..x of the selected omega column, normalized at x.
/// Throws InvalidArgument for x < 16 or x outside the table.
std::vector<EKSample> ek_samples(const FactorTable& t, std::uint32_t x, OmegaColumn which,
                                 unsigned workers = 1);

/// Everything one pass over q = 1..x yields for the reports.
struct ScanSummary {
  std::uint32_t x = 0;
  std::uint64_t a_count = 0;
  std::uint64_t e_count = 0;
  std::vector<std::uint64_t> omega_n_counts;    // index = omega value
  std::vector<std::uint64_t> omega_phi_counts;

  void merge(const ScanSummary& other);
};

ScanSummary summarize(const FactorTable& t, std::uint32_t x, unsigned workers = 1);

}  // namespace ekscat

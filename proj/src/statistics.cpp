#include "ekscat/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ekscat/error.hpp"
#include "ekscat/parallel.hpp"

namespace ekscat {
namespace {

constexpr std::uint64_t scan_chunk = 1u << 16;

void check_cutoff(const FactorTable& t, std::uint32_t x, const char* what) {
  if (!t.contains(x)) {
    throw InvalidArgument(std::string(what) + ": x=" + std::to_string(x) + " outside [1, " +
                          std::to_string(t.limit()) + "]");
  }
}

template <class PerQ>
std::uint64_t count_if_q(std::uint32_t x, unsigned workers, PerQ pred) {
  std::uint64_t total = 0;
  ordered_chunks(
      1, x, scan_chunk, workers,
      [&](std::uint64_t lo, std::uint64_t hi) {
        std::uint64_t c = 0;
        for (std::uint64_t q = lo; q < hi; ++q) c += pred(q) ? 1 : 0;
        return c;
      },
      [&](std::uint64_t c) { total += c; });
  return total;
}

void add_count(std::vector<std::uint64_t>& counts, std::size_t index, std::uint64_t by = 1) {
  if (counts.size() <= index) counts.resize(index + 1, 0);
  counts[index] += by;
}

}  // namespace

EKNormalization EKNormalization::at(double x) {
  if (!(x >= min_ek_cutoff)) {
    throw InvalidArgument("normalization cutoff must be >= 16, got " + std::to_string(x));
  }
  const double ll = std::log(std::log(x));
  return {x, 0.5 * ll * ll, std::pow(ll, 1.5) / std::numbers::sqrt3};
}

double normalize(double omega_value, const EKNormalization& norm) noexcept {
  return (omega_value - norm.f) / norm.g;
}

void scan(const FactorTable& t, std::uint32_t x, unsigned workers,
          const std::function<void(std::span<const ArithmeticRecord>)>& sink) {
  check_cutoff(t, x, "scan");
  ordered_chunks(
      1, x, scan_chunk, workers,
      [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<ArithmeticRecord> rows;
        rows.reserve(hi - lo);
        for (std::uint64_t q = lo; q < hi; ++q) rows.push_back(make_record(t, q));
        return rows;
      },
      [&](const std::vector<ArithmeticRecord>& rows) { sink(rows); });
}

std::vector<ArithmeticRecord> scan(const FactorTable& t, std::uint32_t x, unsigned workers) {
  std::vector<ArithmeticRecord> out;
  scan(t, x, workers, [&](std::span<const ArithmeticRecord> rows) {
    out.insert(out.end(), rows.begin(), rows.end());
  });
  return out;
}

double std_normal_cdf(double a) noexcept {
  return 0.5 * std::erfc(-a * (1.0 / std::numbers::sqrt2));
}

double std_normal_pdf(double a) noexcept {
  return std::exp(-0.5 * a * a) / std::sqrt(2.0 * std::numbers::pi);
}

EmpiricalDistribution EmpiricalDistribution::from_samples(std::span<const EKSample> samples) {
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& s : samples) values.push_back(s.value);
  std::sort(values.begin(), values.end());
  EmpiricalDistribution d;
  for (double v : values) {
    if (!d.atoms_.empty() && d.atoms_.back().value == v) {
      ++d.atoms_.back().weight;
    } else {
      d.atoms_.push_back({v, 1});
    }
  }
  d.total_ = values.size();
  return d;
}

EmpiricalDistribution EmpiricalDistribution::from_omega_counts(
    std::span<const std::uint64_t> counts, const EKNormalization& norm) {
  EmpiricalDistribution d;
  for (std::size_t w = 0; w < counts.size(); ++w) {
    if (counts[w] == 0) continue;
    d.atoms_.push_back({normalize(static_cast<double>(w), norm), counts[w]});
    d.total_ += counts[w];
  }
  return d;
}

double EmpiricalDistribution::cdf(double a) const {
  if (total_ == 0) throw InvalidArgument("empirical CDF of an empty sample");
  std::uint64_t below = 0;
  for (const auto& atom : atoms_) {
    if (atom.value > a) break;
    below += atom.weight;
  }
  return static_cast<double>(below) / static_cast<double>(total_);
}

double EmpiricalDistribution::ks_distance() const {
  if (total_ == 0) throw InvalidArgument("KS distance of an empty sample");
  const auto n = static_cast<double>(total_);
  std::uint64_t cum = 0;
  double d = 0.0;
  for (const auto& atom : atoms_) {
    const double phi = std_normal_cdf(atom.value);
    const double left = static_cast<double>(cum) / n;
    cum += atom.weight;
    const double right = static_cast<double>(cum) / n;
    d = std::max({d, std::abs(left - phi), std::abs(right - phi)});
  }
  return d;
}

HistogramBins EmpiricalDistribution::histogram(double lo, double hi, unsigned bins) const {
  if (!(lo < hi)) throw InvalidArgument("histogram range needs lo < hi");
  if (bins == 0) throw InvalidArgument("histogram needs at least one bin");
  HistogramBins h;
  h.lo = lo;
  h.width = (hi - lo) / bins;
  h.counts.assign(bins, 0);
  h.total = total_;
  for (const auto& atom : atoms_) {
    std::size_t idx = 0;
    if (atom.value < lo) {
      h.below += atom.weight;
    } else if (atom.value >= hi) {
      h.above += atom.weight;
      idx = bins - 1;
    } else {
      auto k = static_cast<std::int64_t>(std::floor((atom.value - lo) / h.width));
      k = std::clamp<std::int64_t>(k, 0, bins - 1);
      // Snap to the [lo, hi) edge convention despite rounding in the division.
      if (atom.value < h.bin_lo(static_cast<std::size_t>(k)) && k > 0) --k;
      if (k + 1 < static_cast<std::int64_t>(bins) &&
          atom.value >= h.bin_lo(static_cast<std::size_t>(k + 1)))
        ++k;
      idx = static_cast<std::size_t>(k);
    }
    h.counts[idx] += atom.weight;
  }
  return h;
}

double EmpiricalDistribution::mean() const {
  if (total_ == 0) throw InvalidArgument("mean of an empty sample");
  long double sum = 0;
  for (const auto& atom : atoms_) sum += static_cast<long double>(atom.value) * atom.weight;
  return static_cast<double>(sum / total_);
}

double EmpiricalDistribution::variance() const {
  const double mu = mean();
  long double sum = 0;
  for (const auto& atom : atoms_) {
    const long double dv = atom.value - mu;
    sum += dv * dv * atom.weight;
  }
  return static_cast<double>(sum / total_);
}

double empirical_cdf(std::span<const EKSample> samples, double a) {
  if (samples.empty()) throw InvalidArgument("empirical_cdf: empty sample");
  std::uint64_t below = 0;
  for (const auto& s : samples) below += s.value <= a ? 1 : 0;
  return static_cast<double>(below) / static_cast<double>(samples.size());
}

double ks_distance(std::span<const EKSample> samples) {
  if (samples.empty()) throw InvalidArgument("ks_distance: empty sample");
  return EmpiricalDistribution::from_samples(samples).ks_distance();
}

HistogramBins histogram(std::span<const EKSample> samples, double lo, double hi, unsigned bins) {
  return EmpiricalDistribution::from_samples(samples).histogram(lo, hi, bins);
}

bool in_O(const FactorTable& t, std::uint64_t m) {
  for (const auto& [p, e] : factorize(t, m)) {
    if (p % 4 != 1) return false;
  }
  return true;
}

std::uint64_t count_A(const FactorTable& t, std::uint32_t x, unsigned workers) {
  check_cutoff(t, x, "count_A");
  return count_if_q(x, workers, [&](std::uint64_t q) { return s_of_q(t, q) != 0; });
}

std::uint64_t count_A_via_O(const FactorTable& t, std::uint32_t x, unsigned workers) {
  check_cutoff(t, x, "count_A_via_O");
  return count_if_q(x, workers, [&](std::uint64_t q) {
    return in_O(t, q) || (q % 2 == 0 && in_O(t, q / 2));
  });
}

std::uint64_t count_E(const FactorTable& t, std::uint32_t x, unsigned workers) {
  check_cutoff(t, x, "count_E");
  return count_if_q(x, workers, [&](std::uint64_t q) {
    const auto r = make_record(t, q);
    return std::max(r.omega_n, r.omega_phi) - std::min(r.omega_n, r.omega_phi) > 1;
  });
}

AlphaEstimate alpha_constant(std::uint64_t prime_limit) {
  if (prime_limit < 5) {
    throw InvalidArgument("alpha_constant: prime limit must be >= 5 (first prime 1 mod 4)");
  }
  // Odd-only sieve: index i stands for 2i + 1.
  const std::uint64_t half = prime_limit / 2 + 1;
  std::vector<bool> composite(half, false);
  long double log_sum = 0;
  for (std::uint64_t i = 1; i < half; ++i) {
    const std::uint64_t p = 2 * i + 1;
    if (p > prime_limit) break;
    if (composite[i]) continue;
    for (std::uint64_t j = p * p; j <= prime_limit; j += 2 * p) composite[j / 2] = true;
    if (p % 4 == 1) {
      const long double inv_sq = 1.0L / (static_cast<long double>(p) * p);
      log_sum -= 0.5L * std::log1p(-inv_sq);
    }
  }
  const long double lead = 3.0L / (2.0L * std::numbers::pi_v<long double>);
  const auto P = static_cast<double>(prime_limit);
  return {static_cast<double>(lead * std::exp(log_sum)), prime_limit,
          std::expm1(0.25 * (1.0 / P + 1.0 / (P + 1.0)))};
}

std::vector<EKSample> ek_samples(const FactorTable& t, std::uint32_t x, OmegaColumn which,
                                 unsigned workers) {
  if (x < min_ek_cutoff) {
    throw InvalidArgument("ek_samples: x must be >= 16, got " + std::to_string(x));
  }
  check_cutoff(t, x, "ek_samples");
  const auto norm = EKNormalization::at(x);
  std::vector<EKSample> out;
  out.reserve(x);
  scan(t, x, workers, [&](std::span<const ArithmeticRecord> rows) {
    for (const auto& r : rows) {
      const auto w = which == OmegaColumn::omega_n ? r.omega_n : r.omega_phi;
      out.push_back({r.q, normalize(w, norm)});
    }
  });
  return out;
}

void ScanSummary::merge(const ScanSummary& other) {
  x = std::max(x, other.x);
  a_count += other.a_count;
  e_count += other.e_count;
  for (std::size_t i = 0; i < other.omega_n_counts.size(); ++i)
    add_count(omega_n_counts, i, other.omega_n_counts[i]);
  for (std::size_t i = 0; i < other.omega_phi_counts.size(); ++i)
    add_count(omega_phi_counts, i, other.omega_phi_counts[i]);
}

ScanSummary summarize(const FactorTable& t, std::uint32_t x, unsigned workers) {
  check_cutoff(t, x, "summarize");
  ScanSummary total;
  ordered_chunks(
      1, x, scan_chunk, workers,
      [&](std::uint64_t lo, std::uint64_t hi) {
        ScanSummary part;
        for (std::uint64_t q = lo; q < hi; ++q) {
          const auto r = make_record(t, q);
          part.x = r.q;
          part.a_count += r.s != 0 ? 1 : 0;
          part.e_count +=
              std::max(r.omega_n, r.omega_phi) - std::min(r.omega_n, r.omega_phi) > 1 ? 1 : 0;
          add_count(part.omega_n_counts, r.omega_n);
          add_count(part.omega_phi_counts, r.omega_phi);
        }
        return part;
      },
      [&](const ScanSummary& part) { total.merge(part); });
  if (total.e_count > total.a_count) {
    throw InvariantViolation("E(x) exceeds A(x) at x=" + std::to_string(x));
  }
  return total;
}

}  // namespace ekscat

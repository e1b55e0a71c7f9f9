#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ekscat/sieve.hpp"
#include "ekscat/statistics.hpp"

namespace ekscat {

/// Shortest "%.{digits}g" rendering, independent of locale.
std::string format_general(double v, int digits = 12);

/// `q,phi,s,n,omega_n,omega_phi`, one row per q = 1..x.
void write_scan_csv(std::ostream& os, const FactorTable& t, std::uint32_t x, unsigned workers);

/// `q,p,sojourn`, one row per geodesic with denominator q <= x; sojourn to
/// 12 significant digits.
void write_geodesics_csv(std::ostream& os, const FactorTable& t, std::uint32_t x, double t0,
                         unsigned workers);

/// `bin_lo,bin_hi,count,density`, density = count / (total * width).
void write_histogram_csv(std::ostream& os, const HistogramBins& bins);

struct EkhistOptions {
  double lo = -4.0;
  double hi = 4.0;
  unsigned bins = 60;
};

struct EkhistResult {
  HistogramBins bins;
  nlohmann::json summary;
};

/// Histogram of (omega(n_q) - f(x)) / g(x) over q <= x, plus a JSON summary
/// with the KS distance and empirical CDF at a = -2..2 for both omega(n_q)
/// and omega(phi(q)).
EkhistResult ekhist_report(const FactorTable& t, std::uint32_t x, const EkhistOptions& options,
                           unsigned workers);

nlohmann::json acheck_report(const FactorTable& t, std::uint32_t x, std::uint64_t prime_limit,
                             unsigned workers);

nlohmann::json echeck_report(const FactorTable& t, std::uint32_t x, unsigned workers);

/// alpha at prime_limit; f and g are added when x >= 16 (x = 0 omits them).
nlohmann::json constants_report(std::uint64_t prime_limit, double x);

}  // namespace ekscat

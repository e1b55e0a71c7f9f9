#include "ekscat/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "ekscat/error.hpp"
#include "ekscat/geodesics.hpp"
#include "ekscat/parallel.hpp"

namespace ekscat {
namespace {

void append_uint(std::string& out, std::uint64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void write_or_throw(std::ostream& os, const std::string& chunk) {
  os.write(chunk.data(), static_cast<std::streamsize>(chunk.size()));
  if (!os) throw IoError("write failed");
}

nlohmann::json cdf_table(const EmpiricalDistribution& d) {
  nlohmann::json out = nlohmann::json::object();
  for (int a = -2; a <= 2; ++a) out[std::to_string(a)] = d.cdf(a);
  return out;
}

}  // namespace

std::string format_general(double v, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return {buf, res.ptr};
}

void write_scan_csv(std::ostream& os, const FactorTable& t, std::uint32_t x, unsigned workers) {
  write_or_throw(os, "q,phi,s,n,omega_n,omega_phi\n");
  std::string buf;
  scan(t, x, workers, [&](std::span<const ArithmeticRecord> rows) {
    buf.clear();
    for (const auto& r : rows) {
      append_uint(buf, r.q);
      buf += ',';
      append_uint(buf, r.phi);
      buf += ',';
      append_uint(buf, r.s);
      buf += ',';
      append_uint(buf, r.n);
      buf += ',';
      append_uint(buf, r.omega_n);
      buf += ',';
      append_uint(buf, r.omega_phi);
      buf += '\n';
    }
    write_or_throw(os, buf);
  });
}

void write_geodesics_csv(std::ostream& os, const FactorTable& t, std::uint32_t x, double t0,
                         unsigned workers) {
  if (!t.contains(x)) {
    throw InvalidArgument("geodesics: limit " + std::to_string(x) + " outside the table");
  }
  sojourn_time(1, t0);  // validates t0 before any output
  write_or_throw(os, "q,p,sojourn\n");
  ordered_chunks(
      1, x, 512, workers,
      [&](std::uint64_t lo, std::uint64_t hi) {
        std::string out;
        for (std::uint64_t q = lo; q < hi; ++q) {
          const auto family = enumerate_family(t, static_cast<std::uint32_t>(q), t0);
          std::string tail = "," + format_general(family.sojourn) + "\n";
          for (std::uint32_t p : family.numerators) {
            append_uint(out, q);
            out += ',';
            append_uint(out, p);
            out += tail;
          }
        }
        return out;
      },
      [&](const std::string& chunk) { write_or_throw(os, chunk); });
}

void write_histogram_csv(std::ostream& os, const HistogramBins& bins) {
  std::string out = "bin_lo,bin_hi,count,density\n";
  for (std::size_t i = 0; i < bins.counts.size(); ++i) {
    out += format_general(bins.bin_lo(i));
    out += ',';
    out += format_general(bins.bin_hi(i));
    out += ',';
    append_uint(out, bins.counts[i]);
    out += ',';
    out += format_general(bins.density(i));
    out += '\n';
  }
  write_or_throw(os, out);
}

EkhistResult ekhist_report(const FactorTable& t, std::uint32_t x, const EkhistOptions& options,
                           unsigned workers) {
  if (x < min_ek_cutoff) {
    throw InvalidArgument("ekhist: limit must be >= 16, got " + std::to_string(x));
  }
  const auto summary = summarize(t, x, workers);
  const auto norm = EKNormalization::at(x);
  const auto dist_n = EmpiricalDistribution::from_omega_counts(summary.omega_n_counts, norm);
  const auto dist_phi = EmpiricalDistribution::from_omega_counts(summary.omega_phi_counts, norm);

  EkhistResult result{dist_n.histogram(options.lo, options.hi, options.bins), {}};
  nlohmann::json normal = nlohmann::json::object();
  for (int a = -2; a <= 2; ++a) normal[std::to_string(a)] = std_normal_cdf(a);

  result.summary = {
      {"x", x},
      {"f", norm.f},
      {"g", norm.g},
      {"ks_distance", dist_n.ks_distance()},
      {"cdf", cdf_table(dist_n)},
      {"normal_cdf", normal},
      {"mean", dist_n.mean()},
      {"variance", dist_n.variance()},
      {"bins", options.bins},
      {"range", {options.lo, options.hi}},
      {"below_range", result.bins.below},
      {"above_range", result.bins.above},
      {"omega_phi",
       {{"ks_distance", dist_phi.ks_distance()},
        {"cdf", cdf_table(dist_phi)},
        {"mean", dist_phi.mean()},
        {"variance", dist_phi.variance()}}},
  };
  return result;
}

nlohmann::json acheck_report(const FactorTable& t, std::uint32_t x, std::uint64_t prime_limit,
                             unsigned workers) {
  const auto a = count_A(t, x, workers);
  const auto a_via_o = count_A_via_O(t, x, workers);
  const auto alpha = alpha_constant(prime_limit);
  const double xd = x;
  const double ratio = static_cast<double>(a) * std::sqrt(std::log(xd)) / (alpha.value * xd);
  return {
      {"x", x},
      {"A_x", a},
      {"A_x_via_O", a_via_o},
      {"equal", a == a_via_o},
      {"alpha", alpha.value},
      {"prime_limit", alpha.prime_limit},
      {"tail_bound", alpha.tail_bound},
      {"ratio_to_asymptotic", ratio},
  };
}

nlohmann::json echeck_report(const FactorTable& t, std::uint32_t x, unsigned workers) {
  const auto summary = summarize(t, x, workers);
  const double xd = x;
  return {
      {"x", x},
      {"E_x", summary.e_count},
      {"E_ratio", static_cast<double>(summary.e_count) / xd},
      {"A_x", summary.a_count},
      {"A_ratio", static_cast<double>(summary.a_count) / xd},
  };
}

nlohmann::json constants_report(std::uint64_t prime_limit, double x) {
  const auto alpha = alpha_constant(prime_limit);
  nlohmann::json out = {
      {"alpha", alpha.value},
      {"prime_limit", alpha.prime_limit},
      {"tail_bound", alpha.tail_bound},
  };
  if (x != 0) {
    const auto norm = EKNormalization::at(x);
    out["x"] = x;
    out["f"] = norm.f;
    out["g"] = norm.g;
  }
  return out;
}

}  // namespace ekscat

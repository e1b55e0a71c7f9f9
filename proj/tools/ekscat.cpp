// ekscat: arithmetic scans, scattering-geodesic enumeration and Erdos-Kac
// statistics for the modular surface.
//
// Exit codes: 0 ok, 2 usage, 3 I/O, 4 invariant violation.

#include <unistd.h>

#include <chrono>
#include <csignal>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ekscat/error.hpp"
#include "ekscat/parallel.hpp"
#include "ekscat/report.hpp"
#include "ekscat/sieve.hpp"
#include "ekscat/svg.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 2;
constexpr int exit_io = 3;
constexpr int exit_invariant = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string subcommand;
  std::uint64_t limit = 0;
  double t0 = 2.0;
  unsigned bins = 60;
  std::string range = "-4:4";
  double lo = -4.0;
  double hi = 4.0;
  std::uint64_t prime_limit = 1000000;
  std::string format;
  std::string output;
  unsigned workers = 0;
  bool segmented = false;
};

// Temp file that only becomes `path` on commit(); removed on SIGINT/SIGTERM.
char g_temp_path[4096] = {0};

extern "C" void remove_temp_and_exit(int sig) {
  if (g_temp_path[0] != '\0') ::unlink(g_temp_path);
  std::_Exit(128 + sig);
}

class AtomicOutput {
 public:
  explicit AtomicOutput(std::string path) : path_(std::move(path)) {
    if (path_.empty()) return;
    temp_ = path_ + ".tmp." + std::to_string(::getpid());
    if (temp_.size() >= sizeof g_temp_path) throw ekscat::IoError("output path too long");
    std::strcpy(g_temp_path, temp_.c_str());
    file_.open(temp_, std::ios::binary | std::ios::trunc);
    if (!file_) throw ekscat::IoError("cannot open " + temp_ + " for writing");
  }
  AtomicOutput(const AtomicOutput&) = delete;
  AtomicOutput& operator=(const AtomicOutput&) = delete;
  ~AtomicOutput() {
    if (!temp_.empty() && !committed_) {
      file_.close();
      std::error_code ec;
      std::filesystem::remove(temp_, ec);
      g_temp_path[0] = '\0';
    }
  }

  bool to_stdout() const { return path_.empty(); }
  std::ostream& stream() { return path_.empty() ? std::cout : file_; }

  void commit() {
    if (path_.empty()) {
      std::cout.flush();
      if (!std::cout) throw ekscat::IoError("write to standard output failed");
      return;
    }
    file_.close();
    if (file_.fail()) throw ekscat::IoError("write to " + temp_ + " failed");
    std::error_code ec;
    std::filesystem::rename(temp_, path_, ec);
    if (ec) throw ekscat::IoError("cannot rename " + temp_ + " to " + path_ + ": " + ec.message());
    committed_ = true;
    g_temp_path[0] = '\0';
  }

 private:
  std::string path_;
  std::string temp_;
  std::ofstream file_;
  bool committed_ = false;
};

void validate(RunConfig& cfg) {
  const bool needs_limit = cfg.subcommand != "constants";
  if (needs_limit && cfg.limit < 1) throw UsageError("--limit must be >= 1");
  if (cfg.limit > ekscat::FactorTable::max_limit) throw UsageError("--limit must be < 2^32");
  if (cfg.subcommand == "ekhist" && cfg.limit < 16) throw UsageError("ekhist needs --limit >= 16");
  if (cfg.subcommand == "constants" && cfg.limit != 0 && cfg.limit < 16) {
    throw UsageError("constants needs --limit >= 16 to report f and g");
  }
  if (!(cfg.t0 > 1.0)) throw UsageError("--t0 must be > 1");
  if (cfg.bins < 1) throw UsageError("--bins must be >= 1");
  if (cfg.prime_limit < 5) throw UsageError("--prime-limit must be >= 5");
  const auto colon = cfg.range.find(':');
  if (colon == std::string::npos) throw UsageError("--range must look like LO:HI");
  try {
    std::size_t used = 0;
    const std::string lo = cfg.range.substr(0, colon), hi = cfg.range.substr(colon + 1);
    cfg.lo = std::stod(lo, &used);
    if (used != lo.size()) throw std::invalid_argument("trailing");
    cfg.hi = std::stod(hi, &used);
    if (used != hi.size()) throw std::invalid_argument("trailing");
  } catch (const std::logic_error&) {
    throw UsageError("--range must look like LO:HI, got '" + cfg.range + "'");
  }
  if (!(cfg.lo < cfg.hi)) throw UsageError("--range needs LO < HI");

  const std::string default_format = cfg.subcommand == "scan" || cfg.subcommand == "geodesics" ||
                                             cfg.subcommand == "ekhist"
                                         ? "csv"
                                         : "json";
  if (cfg.format.empty()) cfg.format = default_format;
  const bool ok = cfg.subcommand == "ekhist"
                      ? (cfg.format == "csv" || cfg.format == "svg" || cfg.format == "json")
                      : cfg.format == default_format;
  if (!ok) throw UsageError("--format " + cfg.format + " not supported by " + cfg.subcommand);
  cfg.workers = ekscat::resolve_workers(cfg.workers);
}

ekscat::FactorTable make_table(const RunConfig& cfg) {
  ekscat::SieveOptions options;
  options.mode = cfg.segmented ? ekscat::SieveMode::segmented : ekscat::SieveMode::linear;
  options.workers = cfg.workers;
  return ekscat::build_factor_table(std::max<std::uint64_t>(cfg.limit, 2), options);
}

void write_json(std::ostream& os, const nlohmann::json& j) {
  os << j.dump(2) << '\n';
  if (!os) throw ekscat::IoError("write failed");
}

int run(RunConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  if (cfg.subcommand == "constants") {
    AtomicOutput out(cfg.output);
    write_json(out.stream(), ekscat::constants_report(cfg.prime_limit, static_cast<double>(cfg.limit)));
    out.commit();
    return exit_ok;
  }

  const auto table = make_table(cfg);
  const auto x = static_cast<std::uint32_t>(cfg.limit);

  if (cfg.subcommand == "scan") {
    AtomicOutput out(cfg.output);
    ekscat::write_scan_csv(out.stream(), table, x, cfg.workers);
    out.commit();
    std::cerr << "scan: " << x << " rows in " << elapsed() << " s\n";
  } else if (cfg.subcommand == "geodesics") {
    AtomicOutput out(cfg.output);
    ekscat::write_geodesics_csv(out.stream(), table, x, cfg.t0, cfg.workers);
    out.commit();
    std::cerr << "geodesics: q <= " << x << " in " << elapsed() << " s\n";
  } else if (cfg.subcommand == "ekhist") {
    const auto result =
        ekscat::ekhist_report(table, x, {cfg.lo, cfg.hi, cfg.bins}, cfg.workers);
    AtomicOutput out(cfg.output);
    if (cfg.format == "json") {
      auto j = result.summary;
      j["histogram"] = nlohmann::json::array();
      for (std::size_t i = 0; i < result.bins.counts.size(); ++i) {
        j["histogram"].push_back({{"bin_lo", result.bins.bin_lo(i)},
                                  {"bin_hi", result.bins.bin_hi(i)},
                                  {"count", result.bins.counts[i]},
                                  {"density", result.bins.density(i)}});
      }
      write_json(out.stream(), j);
      out.commit();
    } else {
      if (cfg.format == "svg") {
        ekscat::SvgPlotOptions plot;
        plot.title = "Density histogram, 1 <= q <= " + std::to_string(x);
        plot.x_label = "(omega(n_q) - (log log N)^2 / 2) / ((log log N)^(3/2) / sqrt 3)";
        ekscat::render_histogram_svg(out.stream(), result.bins, plot);
      } else {
        ekscat::write_histogram_csv(out.stream(), result.bins);
      }
      out.commit();
      // Summary goes to stdout unless the histogram itself went there.
      write_json(out.to_stdout() ? std::cerr : std::cout, result.summary);
    }
    std::cerr << "ekhist: " << x << " samples in " << elapsed() << " s\n";
  } else if (cfg.subcommand == "acheck") {
    AtomicOutput out(cfg.output);
    write_json(out.stream(), ekscat::acheck_report(table, x, cfg.prime_limit, cfg.workers));
    out.commit();
  } else if (cfg.subcommand == "echeck") {
    AtomicOutput out(cfg.output);
    write_json(out.stream(), ekscat::echeck_report(table, x, cfg.workers));
    out.commit();
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::signal(SIGINT, remove_temp_and_exit);
  std::signal(SIGTERM, remove_temp_and_exit);

  CLI::App app{"Scattering geodesics on the modular surface: arithmetic scans and Erdos-Kac statistics"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool limit_required) {
    auto* limit = sub->add_option("--limit", cfg.limit, "Largest q (and factor table size)");
    if (limit_required) limit->required();
    sub->add_option("--output", cfg.output, "Output path (default: standard output)");
    sub->add_option("--format", cfg.format, "csv | json | svg");
    sub->add_option("--workers", cfg.workers, "Worker threads (default: machine parallelism)");
    sub->add_flag("--segmented", cfg.segmented, "Build the factor table with a segmented sieve");
  };

  auto* scan = app.add_subcommand("scan", "CSV of q,phi,s,n,omega_n,omega_phi for q <= limit");
  add_common(scan, true);
  auto* geo = app.add_subcommand("geodesics", "CSV of q,p,sojourn for every geodesic with q <= limit");
  add_common(geo, true);
  geo->add_option("--t0", cfg.t0, "Cusp cutoff T0 (> 1)");
  auto* ekhist = app.add_subcommand("ekhist", "Density histogram of the normalized omega(n_q)");
  add_common(ekhist, true);
  ekhist->add_option("--bins", cfg.bins, "Number of bins");
  ekhist->add_option("--range", cfg.range, "Histogram range LO:HI");
  auto* acheck = app.add_subcommand("acheck", "A(x) by two routes and its asymptotic ratio");
  add_common(acheck, true);
  acheck->add_option("--prime-limit", cfg.prime_limit, "Truncation bound for alpha");
  auto* echeck = app.add_subcommand("echeck", "Exceptional set size |E(x)|");
  add_common(echeck, true);
  auto* constants = app.add_subcommand("constants", "alpha with tail bound; f and g at --limit");
  add_common(constants, false);
  constants->add_option("--prime-limit", cfg.prime_limit, "Truncation bound for alpha");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }
  for (auto* sub : {scan, geo, ekhist, acheck, echeck, constants}) {
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  }

  try {
    return run(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ekscat::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ekscat::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return exit_io;
  } catch (const ekscat::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return exit_invariant;
  } catch (const ekscat::ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_io;
  }
}

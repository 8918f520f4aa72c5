// zdl: compute divisor/zeta error-term samples, verify the claim registry,
// and emit plot-ready CSV from cached scans.
#include <fcntl.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "zdl/claims.hpp"
#include "zdl/divisor.hpp"
#include "zdl/estar.hpp"
#include "zdl/fit.hpp"
#include "zdl/zeta.hpp"

namespace fs = std::filesystem;

#ifndef ZDL_SHARE_DIR
#define ZDL_SHARE_DIR "share"
#endif

namespace {

constexpr int kExitPass = 0;
constexpr int kExitClaimFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct TRange {
  double lo = 0.0, hi = 0.0, step = 0.0;

  // Node lo + i*step for every i with node <= hi; empty when hi < lo.
  std::vector<double> nodes() const {
    std::vector<double> out;
    if (hi >= lo)
      for (std::uint64_t i = 0;; ++i) {
        const double t = lo + double(i) * step;
        if (t > hi + step * 1e-9) break;
        out.push_back(t);
      }
    return out;
  }
};

TRange parse_range(const std::string& s) {
  TRange r;
  char extra;
  if (std::sscanf(s.c_str(), "%lf:%lf:%lf%c", &r.lo, &r.hi, &r.step, &extra) !=
          3 ||
      !(r.step > 0.0))
    throw CLI::ValidationError("--t-range", "expected lo:hi:step with step > 0");
  return r;
}

fs::path cache_dir() {
  if (const char* env = std::getenv("ZDL_CACHE_DIR")) return fs::path(env);
  return fs::path("zdl-cache");
}

// One writer per cache directory: the lock file is created exclusively and
// removed when the invocation ends.  A stale lock must be removed by hand.
class CacheLock {
 public:
  explicit CacheLock(const fs::path& dir) : path_(dir / ".lock") {
    fs::create_directories(dir);
    fd_ = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd_ < 0)
      throw std::runtime_error("cache directory is locked by " +
                               path_.string() +
                               " (another invocation running, or a stale lock "
                               "to remove by hand)");
  }
  ~CacheLock() {
    if (fd_ >= 0) {
      ::close(fd_);
      ::unlink(path_.c_str());
    }
  }
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;

 private:
  fs::path path_;
  int fd_ = -1;
};

struct RunConfig {
  std::string what;
  std::string suite;
  std::optional<TRange> t_range;
  double x = 0.0;
  bool have_x = false;
  std::uint64_t n_max = 131072;
  double t_max = 1e5;
  double tol = 1e-6;
  std::string mode;  // "", "quadrature", "surrogate"
  std::string out;
  std::uint64_t seed = 20260823;
  int threads = 0;
  double k = 1.0;
  double G = 10.0;
  std::string registry;
};

std::optional<zdl::ESource> forced_source(const RunConfig& cfg) {
  if (cfg.mode == "quadrature") return zdl::ESource::quadrature;
  if (cfg.mode == "surrogate") return zdl::ESource::atkinson_surrogate;
  return std::nullopt;
}

void write_xy_csv(const fs::path& path, const char* header,
                  const std::vector<std::pair<double, double>>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << header << "\n";
  char buf[80];
  for (const auto& [a, b] : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", a, b);
    out << buf;
  }
}

// ---------------------------------------------------------------------------
// compute

int cmd_compute(const RunConfig& cfg) {
  if (cfg.out.empty()) throw CLI::ValidationError("--out", "required");
  std::vector<double> xs;
  if (cfg.have_x)
    xs.push_back(cfg.x);
  else if (cfg.t_range)
    xs = cfg.t_range->nodes();
  else
    throw CLI::ValidationError("compute", "need --x or --t-range");

  if (cfg.what == "delta" || cfg.what == "delta-star") {
    const zdl::DivisorTable table = zdl::sieve_divisors(cfg.n_max);
    std::vector<std::pair<double, double>> rows;
    for (double x : xs)
      rows.emplace_back(x, cfg.what == "delta"
                               ? zdl::delta(x, table)
                               : zdl::delta_star_exact(x, table));
    write_xy_csv(cfg.out, cfg.what == "delta" ? "x,delta" : "x,delta_star",
                 rows);
  } else if (cfg.what == "e-star") {
    const zdl::DivisorTable table = zdl::sieve_divisors(cfg.n_max);
    const zdl::EStarEvaluator ev(table);
    const auto forced = forced_source(cfg);
    std::vector<zdl::ErrorSample> samples;
    for (double t : xs)
      samples.push_back(forced ? ev.sample(t, *forced) : ev.sample(t));
    zdl::write_error_samples(samples, cfg.out);
    zdl::write_error_samples(samples, cache_dir() / "samples_e_star.csv");
  } else if (cfg.what == "j") {
    std::vector<std::pair<double, double>> rows;
    for (double t : xs)
      rows.emplace_back(t, zdl::smoothed_moment_J(cfg.k, t, cfg.G));
    write_xy_csv(cfg.out, "t,J", rows);
  } else {
    throw CLI::ValidationError(
        "--what", "expected delta, delta-star, e-star, or j");
  }
  std::printf("wrote %s (%zu rows)\n", cfg.out.c_str(), xs.size());
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const RunConfig& cfg) {
  zdl::ClaimConfig cc;
  cc.n_max = cfg.n_max;
  cc.t_max = cfg.t_max;
  cc.tol = cfg.tol;
  cc.seed = cfg.seed;
  cc.cache_dir = cache_dir();
  zdl::ClaimEngine eng(cc, cfg.registry);

  std::vector<zdl::ClaimResult> results;
  if (!cfg.what.empty())
    results.push_back(eng.run_claim(cfg.what));
  else if (!cfg.suite.empty())
    results = eng.run_suite(cfg.suite);
  else
    results = eng.run_all();

  zdl::print_claim_reports(results);
  if (!cfg.out.empty()) zdl::save_claim_reports(results, cc, cfg.out);

  int gated = 0, failed = 0, errored = 0;
  for (const zdl::ClaimResult& r : results) {
    if (r.errored) ++errored;
    if (!r.spec.gated || r.errored) continue;
    ++gated;
    if (!r.pass) ++failed;
  }
  std::printf("%d gated, %d failed, %d errored\n", gated, failed, errored);
  if (errored > 0) return kExitRuntime;
  return failed > 0 ? kExitClaimFailure : kExitPass;
}

// ---------------------------------------------------------------------------
// plotdata

zdl::MasterScan load_scan_or_advise() {
  const fs::path cache = cache_dir() / "master_scan.json";
  if (!fs::exists(cache))
    throw std::runtime_error(
        cache.string() +
        " not found; run `zdl verify --suite moments` first to build it");
  return zdl::load_master_scan(cache);
}

int cmd_plotdata(const RunConfig& cfg) {
  const fs::path out = cfg.out.empty() ? fs::path("plots") : fs::path(cfg.out);
  if (cfg.what == "moments") {
    const zdl::MasterScan scan = load_scan_or_advise();
    fs::create_directories(out);
    for (int k = 1; k <= 5; ++k) {
      const zdl::MomentReport rep =
          zdl::moment_report(scan, k, scan.T.front(), scan.T.back());
      // recover the fit line: intercept from the centered least squares
      double mlt = 0.0, mli = 0.0;
      for (std::size_t i = 0; i < rep.T_values.size(); ++i) {
        mlt += std::log(rep.T_values[i]);
        mli += std::log(rep.integrals[i]);
      }
      mlt /= double(rep.T_values.size());
      mli /= double(rep.T_values.size());
      char name[32];
      std::snprintf(name, sizeof name, "moment_k%d.csv", k);
      std::ofstream f(out / name, std::ios::trunc);
      f << "logT,log_integral,fit\n";
      char buf[120];
      for (std::size_t i = 0; i < rep.T_values.size(); ++i) {
        const double lt = std::log(rep.T_values[i]);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", lt,
                      std::log(rep.integrals[i]),
                      mli + rep.fitted_exponent * (lt - mlt));
        f << buf;
      }
      std::printf("wrote %s (exponent %.4f)\n", (out / name).c_str(),
                  rep.fitted_exponent);
    }
  } else if (cfg.what == "r-slope") {
    const zdl::MasterScan scan = load_scan_or_advise();
    fs::create_directories(out.parent_path().empty() ? "." : out.parent_path());
    std::ofstream f(out, std::ios::trunc);
    f << "T,integral_over_T,three_pi_over_4\n";
    char buf[120];
    for (std::size_t i = 0; i < scan.T.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", scan.T[i],
                    scan.fine[0][i] / scan.T[i], 3.0 * zdl::kPi / 4.0);
      f << buf;
    }
    std::printf("wrote %s (%zu rows)\n", out.c_str(), scan.T.size());
  } else if (cfg.what == "e-star") {
    const fs::path cache = cache_dir() / "samples_e_star.csv";
    if (!fs::exists(cache))
      throw std::runtime_error(
          cache.string() +
          " not found; run `zdl compute --what e-star --t-range lo:hi:step "
          "--out samples.csv` first");
    std::ifstream in(cache);
    std::string line;
    std::getline(in, line);  // cached header
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
      double t, E, est, ds, es;
      char method[32], source[32];
      if (std::sscanf(line.c_str(), "%lf,%lf,%31[^,],%lf,%lf,%lf,%31s", &t, &E,
                      method, &est, &ds, &es, source) != 7)
        continue;
      if (cfg.t_range && (t < cfg.t_range->lo || t > cfg.t_range->hi)) continue;
      rows.emplace_back(t, es);
    }
    fs::create_directories(out.parent_path().empty() ? "." : out.parent_path());
    write_xy_csv(out, "t,e_star", rows);
    std::printf("wrote %s (%zu rows)\n", out.c_str(), rows.size());
  } else {
    throw CLI::ValidationError("--what",
                               "expected moments, r-slope, or e-star");
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divisor-problem and zeta mean-square error-term laboratory"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.registry = std::string(ZDL_SHARE_DIR) + "/claims.json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n-max", cfg.n_max, "divisor table limit");
    sub->add_option("--tol", cfg.tol, "quadrature tolerance");
    sub->add_option("--out", cfg.out, "output file (or directory)");
    sub->add_option("--seed", cfg.seed, "seed for randomized sample points");
    sub->add_option("--threads", cfg.threads, "OpenMP thread count");
    sub->add_option_function<std::string>(
        "--t-range", [&](const std::string& s) { cfg.t_range = parse_range(s); },
        "sample range lo:hi:step");
  };

  CLI::App* compute = app.add_subcommand("compute", "emit sample CSVs");
  add_common(compute);
  compute->add_option("--what", cfg.what, "delta | delta-star | e-star | j")
      ->required();
  compute->add_option("--x", cfg.x, "single evaluation point")
      ->each([&](const std::string&) { cfg.have_x = true; });
  compute->add_option("--mode", cfg.mode, "quadrature | surrogate")
      ->check(CLI::IsMember({"quadrature", "surrogate"}));
  compute->add_option("--k", cfg.k, "moment order for --what j");
  compute->add_option("--G", cfg.G, "Gaussian window for --what j");

  CLI::App* verify = app.add_subcommand("verify", "run claim suites");
  add_common(verify);
  verify->add_option("--suite", cfg.suite, "claim suite to run (default all)");
  verify->add_option("--what", cfg.what, "single claim id to run");
  verify->add_option("--t-max", cfg.t_max, "master scan reach");
  verify->add_option("--registry", cfg.registry, "claim registry file");

  CLI::App* plotdata = app.add_subcommand("plotdata", "emit plot-ready CSVs");
  add_common(plotdata);
  plotdata->add_option("--what", cfg.what, "moments | r-slope | e-star")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

#ifdef _OPENMP
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif

  try {
    const CacheLock lock(cache_dir());
    if (compute->parsed()) return cmd_compute(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    return cmd_plotdata(cfg);
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const zdl::PreconditionError& e) {
    std::fprintf(stderr, "precondition: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
}

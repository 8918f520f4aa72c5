// Data-driven verification claims: the registry file maps claim ids to
// acceptance bands; the engine owns the shared resources (divisor table,
// E* evaluator, cached master scan) and runs claims by id or suite.
#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "zdl/divisor.hpp"
#include "zdl/estar.hpp"

namespace zdl {

struct ClaimSpec {
  std::string id;
  std::string suite;
  std::string statement;
  double band_lo = 0.0;
  double band_hi = 0.0;
  bool gated = true;  // ungated claims report their statistic but never fail
};

struct ClaimResult {
  ClaimSpec spec;
  double statistic = 0.0;
  bool pass = false;
  bool errored = false;
  std::string note;   // human context: counts, constants, skipped cells
  std::string error;  // what() when errored
  double runtime_s = 0.0;
};

struct ClaimConfig {
  std::uint64_t n_max = 131072;
  double t_max = 1e5;       // master scan reach
  double crossover = 5000;  // quadrature/surrogate switch
  double tol = 1e-6;        // quadrature tolerance for spot checks
  std::uint64_t seed = 20260823;
  std::filesystem::path cache_dir;  // empty = no scan caching
};

class ClaimEngine {
 public:
  ClaimEngine(ClaimConfig cfg, const std::filesystem::path& registry_json);

  const std::vector<ClaimSpec>& registry() const { return specs_; }
  std::vector<std::string> suites() const;  // distinct, in registry order

  ClaimResult run_claim(const std::string& id);
  std::vector<ClaimResult> run_suite(const std::string& suite);
  std::vector<ClaimResult> run_all();

  // Shared resources, built on first use.
  const ClaimConfig& config() const { return cfg_; }
  const DivisorTable& table();
  EStarEvaluator& evaluator();
  const MasterScan& scan();  // loads a matching cache or runs and saves
  std::uint64_t claim_seed(const std::string& id) const;

 private:
  ClaimConfig cfg_;
  std::vector<ClaimSpec> specs_;
  std::unique_ptr<DivisorTable> table_;
  std::unique_ptr<EStarEvaluator> ev_;
  std::unique_ptr<MasterScan> scan_;
};

// Reports serialize to JSON (schema versioned) for machine consumption;
// the config snapshot makes a report reproducible from seed alone.
void save_claim_reports(std::span<const ClaimResult> results,
                        const ClaimConfig& cfg,
                        const std::filesystem::path& path);

// One "id: PASS/FAIL/REPORT/ERROR statistic [band] note" line per claim.
void print_claim_reports(std::span<const ClaimResult> results);

}  // namespace zdl

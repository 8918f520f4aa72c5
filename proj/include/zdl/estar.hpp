// E*(t) = E(t) - 2 pi Delta*(t/(2 pi)) and everything built on it: the
// master moment scan with checkpointed prefixes, the mean-value remainder
// R(T), Gaussian smoothing inequalities, large-values point selection, the
// pointwise zeta bound, and short-interval increments of Delta*.
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "zdl/atkinson.hpp"
#include "zdl/common.hpp"
#include "zdl/divisor.hpp"
#include "zdl/zeta.hpp"

namespace zdl {

enum class ESource { quadrature, atkinson_surrogate };

struct ErrorSample {
  double t = 0.0;
  double E = 0.0;
  double delta_star = 0.0;  // Delta*(t/(2 pi))
  double e_star = 0.0;      // E - 2 pi delta_star, stored as computed
  ESource source = ESource::quadrature;
  double est_err = 0.0;     // declared accuracy of the E value
};

// Evaluates E* with a declared E-source policy: quadrature (sampled mean
// square grid) up to the crossover height, Atkinson surrogate with
// N = round(t) beyond.  Delta* uses the exact alternating sum while
// 4t/(2 pi) fits the divisor table and the Voronoi series after that.
class EStarEvaluator {
 public:
  explicit EStarEvaluator(const DivisorTable& table, double crossover = 5000.0,
                          double grid_h = 0.0125);

  ErrorSample sample(double t) const;                // source by crossover
  ErrorSample sample(double t, ESource mode) const;  // source forced
  double e_star(double t) const { return sample(t).e_star; }

  double crossover() const { return crossover_; }
  double grid_h() const { return grid_h_; }
  const DivisorTable& table() const { return table_; }
  const AtkinsonSums& sums() const { return sums_; }
  // Mean square grid over [0, max(crossover, t_hi)]; built on first use.
  const ESampleGrid& grid(double t_hi = 0.0) const;

 private:
  const DivisorTable& table_;
  AtkinsonSums sums_;
  double crossover_;
  double grid_h_;
  mutable std::unique_ptr<ESampleGrid> grid_;
  double delta_star_at(double t) const;
};

// ---------------------------------------------------------------------------
// master moment scan

// One streaming pass over [0, t_max] at node spacing step/2 accumulating
// composite-Simpson prefixes at the requested step ("coarse") and at step/2
// ("fine") for each tracked quantity, snapshotted at the checkpoints.
// Quantity indices: 0 signed E*, then |E*|^k for k = 1..5 at indices 1..5,
// and 6 R^2 with R(t) = int_0^t E* - (3 pi/4) t.
struct MasterScan {
  static constexpr int kVersion = 1;
  static constexpr std::size_t kQuantities = 7;
  double t_max = 0.0;
  double step = 0.0;       // the requested (coarse) Simpson step
  double crossover = 0.0;
  std::uint64_t n_max = 0;  // divisor table limit used
  std::vector<double> T;    // snapshot positions (multiples of 2*step)
  std::array<std::vector<double>, kQuantities> fine;
  std::array<std::vector<double>, kQuantities> coarse;

  // Largest |fine - coarse| / |fine| over checkpoints for one quantity.
  double halving_rel(std::size_t quantity) const;
};

// Checkpoints are rounded to multiples of 2*step; duplicates collapse.
MasterScan run_master_scan(const EStarEvaluator& ev, double t_max, double step,
                           std::span<const double> checkpoints);

void save_master_scan(const MasterScan& scan, const std::filesystem::path& path);
MasterScan load_master_scan(const std::filesystem::path& path);

struct MomentReport {
  double k = 0.0;
  std::vector<double> T_values;
  std::vector<double> integrals;  // int_0^T |E*|^k dt at each T
  double fitted_exponent = 0.0;
  double fit_residual = 0.0;      // RMS in log space
};

// Extracts the k-th moment column (k in {0,1,2,3,4,5}; k = 0 degenerates to
// integral = T) restricted to checkpoints in [T_lo, T_hi], with the log-log
// exponent fit.  Throws RefinementError if the step-halving spread of the
// column exceeds 1%.
MomentReport moment_report(const MasterScan& scan, double k, double T_lo,
                           double T_hi);

// Standalone moment scan for one (possibly non-integer) k >= 0: composite
// Simpson of |E*|^k over [0, max T_list] at the given step, checkpointed at
// the T_list positions (rounded to multiples of 2*step).  Same halving gate
// as moment_report.  `forced` pins the E-source; default is the crossover
// policy.
MomentReport moment_scan(const EStarEvaluator& ev, double k,
                         std::span<const double> T_list, double step,
                         std::optional<ESource> forced = std::nullopt);

// Exponent fit of int_0^T R^2 over checkpoints in [T_lo, T_hi] (quantity 6
// of the scan); the k field of the result is set to 2 for "R squared".
MomentReport r_square_report(const MasterScan& scan, double T_lo, double T_hi);

// R(T) = int_0^T E* dt - (3 pi/4) T at a snapshot position (T must lie
// within step of a checkpoint); R(0) = 0 without a scan.
double r_remainder(const MasterScan& scan, double T);

// ---------------------------------------------------------------------------
// smoothing, large values, pointwise bound, short intervals

struct SmoothingCheck {
  double T = 0.0, G = 0.0;
  double lhs = 0.0;        // E*(T)
  double rhs_upper = 0.0;  // (2/(sqrt(pi) G)) int_0^inf E*(T+u) e^{-u^2/G^2}
  double rhs_lower = 0.0;  // same with E*(T-u)
  double margin_constant = 0.0;  // smallest c making both inequalities hold
                                 // with error term c * G * T^{0.01}
};

// Both sides of the Gaussian smoothing inequalities.  Preconditions:
// 2 <= G <= T/(10 log T).  Integrals truncated at u = trunc_factor * G *
// sqrt(40 log T); trunc_factor exists for the tail-stability test.
SmoothingCheck smoothing_check(const EStarEvaluator& ev, double T, double G,
                               double trunc_factor = 1.0);

struct LargeValuesReport {
  double V = 0.0, T = 0.0;
  std::vector<double> points;      // selected t_r, ascending
  std::vector<double> sup_values;  // |E*(t_r)| per point, in [V, 2V)
  std::uint64_t R_count = 0;
  double bound_value = 0.0;        // T^{3/2} V^{-4}
};

// Greedy large-values selection on [T, 2T]: windows of length V, per-window
// sup of |E*| on a grid of spacing scan_step (must be <= V/10), windows with
// sup in [V, 2V) kept subject to >= V separation of the sup points.
LargeValuesReport large_values(const EStarEvaluator& ev, double V, double T,
                               double scan_step);

struct PointwiseBound {
  double T = 0.0;
  double lhs = 0.0;  // |zeta(1/2 + iT)|^2
  double rhs = 0.0;  // log T * int_{T-1}^{T+1} |zeta|^2 dt + 1
};

PointwiseBound pointwise_bound_check(double T);

struct ShortIntervalDecomposition {
  double total = 0.0;        // Delta*(T+H) - Delta*(T), computed directly
  double smooth = 0.0;       // -(main_term(T+H) - main_term(T)), O(H log T)
  double alternating = 0.0;  // (1/2) sum_{4T < n <= 4(T+H)} (-1)^n d(n)
};

// Exact short-interval increment of Delta*.  Preconditions: 0 <= H <= T,
// 4(T+H) <= table.n_max.
ShortIntervalDecomposition delta_star_short_interval(double T, double H,
                                                     const DivisorTable& table);

// ---------------------------------------------------------------------------
// serialization

void save_moment_report(const MomentReport& report,
                        const std::filesystem::path& path);
void save_large_values_report(const LargeValuesReport& report,
                              const std::filesystem::path& path);

// Sample cache rows `t,E,method,est_err,delta_star,e_star,source`.
void write_error_samples(std::span<const ErrorSample> samples,
                         const std::filesystem::path& csv);

}  // namespace zdl

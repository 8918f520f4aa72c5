// Critical-line zeta machinery: zeta(1/2+it) by Euler-Maclaurin at small t
// and the Riemann-Siegel formula above, the Hardy function Z(t), the mean
// square integral with its error term E(T), power moments, and the
// Gaussian-smoothed moment J_k(T,G).
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "zdl/common.hpp"

namespace zdl {

enum class ZetaMethod { euler_maclaurin, riemann_siegel };

struct ZetaPoint {
  double t = 0.0;
  std::complex<double> value;
  ZetaMethod method = ZetaMethod::euler_maclaurin;
  double est_abs_err = 0.0;
};

// Method crossover: Euler-Maclaurin below, Riemann-Siegel above.  Chosen so
// the Riemann-Siegel truncation error is comfortably below the 1e-8 accuracy
// contract on the whole Riemann-Siegel range (see the calibration test).
inline constexpr double kZetaSwitchT = 400.0;

// Phase computations carry ~1e8 * eps of irreducible rounding; beyond this
// height the 1e-8 contract can no longer be met, so evaluation refuses.
inline constexpr double kZetaMaxT = 1e8;

// zeta(1/2+it) for |t| <= kZetaMaxT; negative t handled by conjugation.
ZetaPoint zeta_half(double t);

// Hardy's function Z(t) = e^{i theta(t)} zeta(1/2+it), real-valued.
// Requires t >= 5 (the Stirling form of theta is used on both branches).
double hardy_z(double t);

// Riemann-Siegel theta via Stirling asymptotics (three correction terms).
// Accurate to ~1e-9 already at t = 5 and to round-off for t >= 30.
double rs_theta(double t);

// B_{2j}/(2j)! for j = 1..15 (index 0 unused), computed once at startup from
// zeta(2j) rather than from a hard-coded table.
const std::array<double, 16>& bernoulli_ratios();

// ---------------------------------------------------------------------------
// mean square integral

struct Panel {
  double t_lo = 0.0, t_hi = 0.0;
  double value = 0.0;
  double est_err = 0.0;
};

struct MeanSquareAccumulator {
  double T = 0.0;
  double integral = 0.0;  // sum of panel values, ascending compensated sum
  double est_err = 0.0;
  std::uint64_t evals = 0;
  std::vector<Panel> panels;
};

// Thrown when the evaluation budget runs out; carries the completed prefix.
class QuadratureBudgetError : public std::runtime_error {
 public:
  explicit QuadratureBudgetError(MeanSquareAccumulator p)
      : std::runtime_error("quadrature evaluation budget exceeded at t = " +
                           std::to_string(p.T)),
        partial(std::move(p)) {}
  MeanSquareAccumulator partial;
};

// Adaptive composite Simpson quadrature of |zeta(1/2+it)|^2 over [0, T] with
// estimated absolute error <= tol*(1+T).  Seed panels follow the local
// oscillation scale 2 pi / log(max(t,10)/(2 pi)).
MeanSquareAccumulator mean_square_integral(double T, double tol,
                                           std::uint64_t max_evals = 200000000);

// Same quadrature over [t_lo, t_hi]; error goal tol*(1 + t_hi - t_lo).
double mean_square_between(double t_lo, double t_hi, double tol);

// E(T) = mean square integral - T (log(T/2pi) + 2 gamma - 1).
double big_E(double T, double tol);

// Fixed-step composite Simpson of |zeta(1/2+it)|^{2k} over [0, T].  Evaluates
// at the given step and at step/2; throws RefinementError if they differ by
// >= 1%, otherwise returns the finer value.
double power_moment(double k, double T, double step);

// Raw integral of f(T+u) exp(-(u/G)^2) du, truncated at |u| <= G
// sqrt(A log T) (discarded Gaussian mass < 1e-10 of the total at A = 40).
double gauss_weighted_integral(const std::function<double(double)>& f,
                               double T, double G, double A = 40.0);

// J_k(T,G) = (1/(sqrt(pi) G)) int |zeta(1/2+iT+iu)|^{2k} e^{-(u/G)^2} du.
// Preconditions: T >= 10, 1 <= G <= T/(10 log T).
double smoothed_moment_J(double k, double T, double G);

// ---------------------------------------------------------------------------
// persistent E-sample grid

// Cumulative mean-square integral at uniform nodes t = i*h, used so that
// E(t)-heavy scans never recompute the quadrature prefix.  E values between
// nodes are completed with a short Simpson sliver.
struct ESampleGrid {
  double h = 0.0;
  double t_max = 0.0;
  double tol = 0.0;               // declared accuracy goal
  std::vector<double> I;          // I[i] ~ integral over [0, i*h]
  std::vector<double> cum_est;    // cumulative error estimate at node i

  double I_at(double t) const;    // integral over [0, t], t <= t_max
  double E_at(double t) const;    // I_at(t) - main term
  double est_at(double t) const;
};

ESampleGrid build_e_sample_grid(double t_max, double h = 0.0125);

// CSV rows `t,E,method,est_err` plus a JSON sidecar with the grid metadata.
void save_e_sample_grid(const ESampleGrid& g, const std::filesystem::path& csv,
                        const std::filesystem::path& sidecar);
ESampleGrid load_e_sample_grid(const std::filesystem::path& csv,
                               const std::filesystem::path& sidecar);

}  // namespace zdl

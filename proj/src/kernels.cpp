// Compiled with -O3 -ffast-math -march=native (see CMakeLists) so the loops
// below vectorize through libmvec.  Keep double-double arithmetic and
// anything else that relies on strict IEEE ordering out of this file.
#include "zdl/kernels.hpp"

#include <cmath>

#include "zdl/common.hpp"

namespace zdl::kernels {

double sigma1_partial(double T, std::uint64_t n_lo, std::uint64_t n_hi,
                      const double* alt_d34) {
  const double c1 = kPi / (2.0 * T);  // x = c1 n = pi n / (2T)
  const double c2 = 2.0 * kPi * T;
  const double two_T = 2.0 * T;
  const double pi_sq = kPi * kPi;
  const double pi_over_4 = 0.25 * kPi;
  double acc = 0.0;
  // arsinh spelled out as a log so the whole body maps onto vector calls.
  for (std::int64_t n = std::int64_t(n_lo); n < std::int64_t(n_hi); ++n) {
    const double dn = double(n);
    const double x = c1 * dn;
    const double sx = std::sqrt(x);
    const double as = std::log(sx + std::sqrt(1.0 + x));  // arsinh(sqrt(x))
    const double f = two_T * as + std::sqrt(c2 * dn + pi_sq * dn * dn) - pi_over_4;
    const double e = sx / (std::sqrt(std::sqrt(1.0 + x)) * as);
    acc += alt_d34[n] * e * std::cos(f);
  }
  return acc;
}

double sigma2_partial(double T, std::uint64_t n_lo, std::uint64_t n_hi,
                      const double* d12) {
  const double log_a = std::log(T / kTwoPi);
  const double pi_over_4 = 0.25 * kPi;
  double acc = 0.0;
  for (std::int64_t n = std::int64_t(n_lo); n < std::int64_t(n_hi); ++n) {
    const double lg = log_a - std::log(double(n));  // log(T/(2 pi n))
    acc += d12[n] * std::cos(T * lg - T + pi_over_4) / lg;
  }
  return acc;
}

}  // namespace zdl::kernels

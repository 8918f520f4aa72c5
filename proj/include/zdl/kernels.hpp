// Hot inner loops of the Atkinson sums, isolated in their own translation
// unit so that one file can be compiled with -ffast-math and vector math
// (libmvec) while everything precision-sensitive stays at strict IEEE
// semantics.  Callers split the index range into fixed blocks and merge the
// partial sums in index order, so results do not depend on the thread count.
#pragma once

#include <cstdint>

namespace zdl::kernels {

// Partial first Atkinson sum over n in [n_lo, n_hi):
//   sum alt_d34[n] * e(T,n) * cos(f(T,n))
// with f(T,n) = 2T arsinh(sqrt(pi n/(2T))) + sqrt(2 pi n T + pi^2 n^2) - pi/4
// and  e(T,n) = (1 + pi n/(2T))^{-1/4} / ((2T/(pi n))^{1/2} arsinh(...)).
// alt_d34[n] = (-1)^n d(n) n^{-3/4} is precomputed once per divisor table.
double sigma1_partial(double T, std::uint64_t n_lo, std::uint64_t n_hi,
                      const double* alt_d34);

// Partial second Atkinson sum over n in [n_lo, n_hi):
//   sum d12[n] * cos(T log(T/(2 pi n)) - T + pi/4) / log(T/(2 pi n))
// with d12[n] = d(n) n^{-1/2} precomputed by the caller.
double sigma2_partial(double T, std::uint64_t n_lo, std::uint64_t n_hi,
                      const double* d12);

}  // namespace zdl::kernels

// Atkinson's explicit formula for E(T): the oscillatory sums Sigma1 (over
// n <= N with alternating divisor weights) and Sigma2 (over n <= N'), their
// phase f(T,n) and amplitude e(T,n), and the assembled fast E-surrogate
// E(T) ~ Sigma1 + Sigma2 with O(log^2 T) error.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "zdl/common.hpp"
#include "zdl/divisor.hpp"

namespace zdl {

// Phase assembly keeps ~11 significant digits at T = 1e8 (phase ~ sqrt(T));
// beyond that too much of the cosine argument is rounding noise.
inline constexpr double kAtkinsonMaxT = 1e8;

struct AtkinsonEval {
  double T = 0.0;
  std::uint64_t N = 0;      // Sigma1 truncation, default round(T)
  double N_prime = 0.0;     // Sigma2 truncation (real)
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double E_approx = 0.0;    // sigma1 + sigma2 + pi (mean of the remainder)
  bool sigma2_empty = false;  // N' < 1: Sigma2 was an empty sum
};

// f(T,n) = 2T arsinh(sqrt(pi n/(2T))) + sqrt(2 pi n T + pi^2 n^2) - pi/4.
double phase_f(double T, std::uint64_t n);

// e(T,n) = (1 + pi n/(2T))^{-1/4} {(2T/(pi n))^{1/2} arsinh(sqrt(pi n/(2T)))}^{-1};
// equals 1 + O(n/T), decreasing in n, always in (0, 1].
double amp_e(double T, std::uint64_t n);

// N' = T/(2 pi) + N/2 - (N^2/4 + N T/(2 pi))^{1/2}, computed in the
// rationalized form a^2/(a + N/2 + sqrt(N^2/4 + N a)) with a = T/(2 pi):
// the textbook expression cancels catastrophically once N >> T.
double n_prime(double T, std::uint64_t N);

// Precomputed per-table weights for the two sums: alt_d34[n] = (-1)^n d(n)
// n^{-3/4} and d12[n] = d(n) n^{-1/2}.  Build once, evaluate many T.
class AtkinsonSums {
 public:
  explicit AtkinsonSums(const DivisorTable& table);

  // Sigma1(T) = 2^{1/2} (T/(2 pi))^{1/4} sum_{n<=N} (-1)^n d(n) n^{-3/4}
  //             e(T,n) cos(f(T,n)), via the vectorized kernel in fixed
  // blocks merged in index order (thread-count independent).
  double sigma1(double T, std::uint64_t N) const;

  // Sigma2(T) = -2 sum_{n<=N'} d(n) n^{-1/2} (log T/(2 pi n))^{-1}
  //             cos(T log(T/(2 pi n)) - T + pi/4); empty when N' < 1.
  double sigma2(double T, std::uint64_t N, bool* empty = nullptr) const;

  AtkinsonEval evaluate(double T) const;                   // N = round(T)
  AtkinsonEval evaluate(double T, std::uint64_t N) const;

  const DivisorTable& table() const { return table_; }

 private:
  const DivisorTable& table_;
  std::vector<double> alt_d34_;
  std::vector<double> d12_;
};

// One-shot wrappers; they rebuild the weight arrays per call, so prefer an
// AtkinsonSums instance inside loops.
double sigma1(double T, std::uint64_t N, const DivisorTable& table);
double sigma2(double T, std::uint64_t N, const DivisorTable& table);
AtkinsonEval atkinson_E(double T, const DivisorTable& table);

// Serial reference implementations: one term at a time with std::asinh,
// Kahan accumulation, and explicit two-word mod-2pi phase reduction.  Kept
// for testing the fast kernels; the benchmark target compares the two.
double sigma1_reference(double T, std::uint64_t N, const DivisorTable& table);
double sigma2_reference(double T, std::uint64_t N, const DivisorTable& table);

// Diagnostic mode: Sigma1 with every cosine replaced by 1, exposing the
// amplitude envelope 2^{1/2}(T/2pi)^{1/4} sum (-1)^n d(n) n^{-3/4} e(T,n).
double sigma1_flat(double T, std::uint64_t N, const DivisorTable& table);

// Cross-check rows `T,N,N_prime,sigma1,sigma2,E_approx,E_quad,abs_err`.
struct AtkinsonDiagRow {
  AtkinsonEval eval;
  double E_quad = 0.0;
};
void write_atkinson_diagnostics(const std::filesystem::path& csv,
                                std::span<const AtkinsonDiagRow> rows);

}  // namespace zdl

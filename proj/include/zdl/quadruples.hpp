// Counting near-resonant quadruples of k-th roots (the Robert-Sargos shape
// N^eps (N^4 delta + N^2)) and the inverse square-root gap sum from the
// large-values machinery.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "zdl/common.hpp"

namespace zdl {

struct QuadrupleCount {
  std::uint64_t N = 0;
  int k = 2;
  double delta = 0.0;
  std::uint64_t count = 0;     // quadruples N < n1..n4 <= 2N with
                               // |n1^{1/k}+n2^{1/k}-n3^{1/k}-n4^{1/k}| < delta N^{1/k}
  double bound_value = 0.0;    // N^4 delta + N^2
  double ratio = 0.0;          // count / bound_value
};

// Meet-in-the-middle count: sort the N^2 pair sums, slide a strict window
// of width delta * N^{1/k}.  Exact integer count.  Pre: N >= 1, k >= 2,
// delta > 0, N <= 2000 (memory and O(N^2 log N) budget).
QuadrupleCount count_quadruples(std::uint64_t N, int k, double delta);

// Plain four-loop reference with the identical predicate, kept for testing.
// Pre: N <= 64.
QuadrupleCount count_quadruples_reference(std::uint64_t N, int k, double delta);

// The delta -> 0+ limit for k = 2 in exact integer arithmetic: counts
// ordered quadruples with n1^{1/2}+n2^{1/2} = n3^{1/2}+n4^{1/2} exactly,
// via squarefree-core decomposition (sqrt(n) = a sqrt(alpha) and distinct
// surd coefficients must match term by term).  Note this exceeds the
// trivial 2N^2 - N once the window holds genuine coincidences such as
// sqrt(50)+sqrt(98) = 2 sqrt(72) (first at N = 49).  Pre: N <= 2000.
std::uint64_t count_quadruples_exact_limit(std::uint64_t N);

// Cartesian sweep; rows in N-major, delta-minor order.
std::vector<QuadrupleCount> bound_sweep(std::span<const std::uint64_t> N_list,
                                        int k,
                                        std::span<const double> delta_list);

// sum_{K < m != n <= 2K} |sqrt(m) - sqrt(n)|^{-1}, exact double sum.
// Computed in O(K) by grouping over the gap g = |m - n| with prefix sums
// of sqrt; the O(K^2) direct form is kept for testing.  Pre: 2 <= K <= 1e6
// (direct form: K <= 1e4).
double inverse_sqrt_gap_sum(std::uint64_t K);
double inverse_sqrt_gap_sum_reference(std::uint64_t K);

// CSV rows `N,k,delta,count,bound,ratio`.
void write_quadruple_csv(std::span<const QuadrupleCount> rows,
                         const std::filesystem::path& csv);

}  // namespace zdl

// Divisor-function side of the laboratory: the sieve of d(n) with prefix
// sums, the error term Delta(x) of the Dirichlet divisor problem, the
// modified error term Delta*(x) built from the alternating sum
// (1/2) sum_{n<=4x} (-1)^n d(n), and the truncated Voronoi-type series
// for Delta*.
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "zdl/common.hpp"

namespace zdl {

struct DivisorTable {
  std::uint64_t n_max = 0;
  // All arrays are 1-based; index 0 is unused and holds 0.
  std::vector<std::uint32_t> d;         // d[n] = number of divisors
  std::vector<std::int64_t> prefix;     // sum_{m<=n} d(m)
  std::vector<std::int64_t> alt_prefix; // sum_{m<=n} (-1)^m d(m)
};

// Block-striped pair-marking sieve, parallel over disjoint index stripes.
DivisorTable sieve_divisors(std::uint64_t n_max);

// Naive multiple-marking reference (one increment per divisor).  Slower but
// transparently correct; kept for tests and benchmarks.
DivisorTable sieve_divisors_serial(std::uint64_t n_max);

// x(log x + 2*gamma - 1).  Domain error for x <= 0.
double main_term(double x);

// Delta(x) = sum_{n<=x} d(n) - main_term(x), left-closed at integers.
// Preconditions: 1 <= x <= table.n_max.
double delta(double x, const DivisorTable& table);

// Delta*(x) via the alternating sum (1/2)*alt_prefix(4x) - main_term(x).
// Preconditions: x > 0, 4x <= table.n_max.
double delta_star_exact(double x, const DivisorTable& table);

// The equivalent three-term combination -Delta(x) + 2 Delta(2x) - (1/2) Delta(4x).
// Kept separate so tests can assert the two forms agree.
double delta_star_three_delta(double x, const DivisorTable& table);

// Value the Voronoi-type series for Delta* actually converges to at x.
// Equal to delta_star_exact(x) except when 4x is an integer, where the
// alternating sum jumps and the series converges to the midpoint of the
// one-sided limits (classical behaviour of Voronoi summation at jumps).
double delta_star_series_limit(double x, const DivisorTable& table);

struct VoronoiResult {
  double value;       // truncated series
  double tail_bound;  // c * x^{1/2+eps} / sqrt(n_trunc), heuristic (c=1, eps=0.01)
};

// Truncated series (1/(pi sqrt 2)) x^{1/4} sum_{n<=n_trunc} (-1)^n d(n)
// n^{-3/4} cos(4 pi sqrt(n x) - pi/4), summed in ascending order with
// compensated accumulation.  Preconditions: x >= 1, 1 <= n_trunc <= 64*x,
// n_trunc <= table.n_max.
VoronoiResult delta_star_voronoi(double x, std::uint64_t n_trunc,
                                 const DivisorTable& table);

// Binary cache: 16-byte header (magic "DTAB", u32 version, u64 n_max),
// then d as little-endian u32.  Prefixes are recomputed on load.
void save_divisor_table(const DivisorTable& table,
                        const std::filesystem::path& path);
DivisorTable load_divisor_table(const std::filesystem::path& path);

}  // namespace zdl

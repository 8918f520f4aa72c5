#include "zdl/divisor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace zdl {

// ----------------------------------------------------------------------------
// sieves

// Marks divisor pairs (i, n/i) with i <= sqrt(n): multiples i*m with m > i
// contribute 2, squares contribute 1.  Restricted to a half-open stripe
// [lo, hi) so stripes can be processed independently (each cell is written
// by exactly one thread; the result is bit-identical to the serial run).
static void sieve_stripe(std::uint32_t* d, std::uint64_t lo, std::uint64_t hi,
                         std::uint64_t root) {
  for (std::uint64_t i = 1; i <= root; ++i) {
    const std::uint64_t sq = i * i;
    if (sq >= hi) break;
    if (sq >= lo) d[sq] += 1;
    std::uint64_t m = std::max(i + 1, (lo + i - 1) / i);
    for (std::uint64_t j = i * m; j < hi; j += i) {
      if (j > sq) d[j] += 2;
    }
  }
}

static void fill_prefixes(DivisorTable& t) {
  t.prefix.assign(t.n_max + 1, 0);
  t.alt_prefix.assign(t.n_max + 1, 0);
  std::int64_t p = 0, a = 0;
  for (std::uint64_t n = 1; n <= t.n_max; ++n) {
    p += t.d[n];
    a += (n & 1) ? -std::int64_t(t.d[n]) : std::int64_t(t.d[n]);
    t.prefix[n] = p;
    t.alt_prefix[n] = a;
  }
}

DivisorTable sieve_divisors(std::uint64_t n_max) {
  if (n_max < 1) throw PreconditionError("sieve_divisors: n_max must be >= 1");
  DivisorTable t;
  t.n_max = n_max;
  t.d.assign(n_max + 1, 0);
  const auto root = static_cast<std::uint64_t>(std::sqrt(double(n_max)));
  // Stripe length at least root so every i <= root has a multiple in every
  // stripe and no scan is wasted.
  const std::uint64_t stripe =
      std::max<std::uint64_t>(1 << 16, std::bit_ceil(root + 1));
  const std::uint64_t n_stripes = (n_max + stripe) / stripe;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < std::int64_t(n_stripes); ++b) {
    const std::uint64_t lo = std::max<std::uint64_t>(1, b * stripe);
    const std::uint64_t hi = std::min(n_max + 1, (b + 1) * stripe);
    if (lo < hi) sieve_stripe(t.d.data(), lo, hi, root);
  }
  fill_prefixes(t);
  return t;
}

DivisorTable sieve_divisors_serial(std::uint64_t n_max) {
  if (n_max < 1) throw PreconditionError("sieve_divisors: n_max must be >= 1");
  DivisorTable t;
  t.n_max = n_max;
  t.d.assign(n_max + 1, 0);
  for (std::uint64_t i = 1; i <= n_max; ++i)
    for (std::uint64_t j = i; j <= n_max; j += i) t.d[j] += 1;
  fill_prefixes(t);
  return t;
}

// ----------------------------------------------------------------------------
// error terms

double main_term(double x) {
  if (!(x > 0.0)) throw PreconditionError("main_term: x must be positive");
  return x * (std::log(x) + 2.0 * kEulerGamma - 1.0);
}

double delta(double x, const DivisorTable& table) {
  if (!(x >= 1.0)) throw PreconditionError("delta: x must be >= 1");
  if (x > double(table.n_max))
    throw TableExhausted(std::uint64_t(std::ceil(x)), table.n_max);
  const auto m = static_cast<std::uint64_t>(std::floor(x));
  return double(table.prefix[m]) - main_term(x);
}

double delta_star_exact(double x, const DivisorTable& table) {
  if (!(x > 0.0)) throw PreconditionError("delta_star_exact: x must be positive");
  const double y = 4.0 * x;
  if (y > double(table.n_max))
    throw TableExhausted(std::uint64_t(std::ceil(y)), table.n_max);
  const auto m = static_cast<std::uint64_t>(std::floor(y));
  const double alt = (m >= 1) ? double(table.alt_prefix[m]) : 0.0;
  return 0.5 * alt - main_term(x);
}

double delta_star_three_delta(double x, const DivisorTable& table) {
  return -delta(x, table) + 2.0 * delta(2.0 * x, table) -
         0.5 * delta(4.0 * x, table);
}

double delta_star_series_limit(double x, const DivisorTable& table) {
  const double y = 4.0 * x;
  const auto r = static_cast<std::int64_t>(std::llround(y));
  const bool on_jump = r >= 1 && std::abs(y - double(r)) <= 1e-9 * std::max(4.0, y);
  if (!on_jump || std::uint64_t(r) > table.n_max)
    return delta_star_exact(x, table);
  // Midpoint of the one-sided limits of the alternating sum at the jump.
  const double left = (r >= 2) ? double(table.alt_prefix[r - 1]) : 0.0;
  const double right = double(table.alt_prefix[r]);
  return 0.25 * (left + right) - main_term(x);
}

VoronoiResult delta_star_voronoi(double x, std::uint64_t n_trunc,
                                 const DivisorTable& table) {
  if (!(x >= 1.0)) throw PreconditionError("delta_star_voronoi: x must be >= 1");
  if (n_trunc < 1 || double(n_trunc) > 64.0 * x)
    throw PreconditionError(
        "delta_star_voronoi: n_trunc must satisfy 1 <= n_trunc <= 64*x");
  if (n_trunc > table.n_max) throw TableExhausted(n_trunc, table.n_max);

  // Ascending Kahan sum: terms decay like n^{-3/4}, so compensation keeps
  // round-off below the truncation error.
  double sum = 0.0, comp = 0.0;
  for (std::uint64_t n = 1; n <= n_trunc; ++n) {
    const double sign = (n & 1) ? -1.0 : 1.0;
    const double term = sign * double(table.d[n]) *
                        std::pow(double(n), -0.75) *
                        std::cos(4.0 * kPi * std::sqrt(double(n) * x) - 0.25 * kPi);
    const double yk = term - comp;
    const double tk = sum + yk;
    comp = (tk - sum) - yk;
    sum = tk;
  }
  VoronoiResult r;
  r.value = std::pow(x, 0.25) / (kPi * std::sqrt(2.0)) * sum;
  // Heuristic truncation bound, c * x^{1/2+eps} * n^{-1/2} with (c, eps) =
  // (1.0, 0.01).  Not rigorous; reported for orientation only.
  r.tail_bound = std::pow(x, 0.51) / std::sqrt(double(n_trunc));
  return r;
}

// ----------------------------------------------------------------------------
// binary cache

namespace {
constexpr char kMagic[4] = {'D', 'T', 'A', 'B'};
constexpr std::uint32_t kFormatVersion = 1;
static_assert(std::endian::native == std::endian::little,
              "cache I/O assumes a little-endian host");

struct CacheHeader {
  char magic[4];
  std::uint32_t version;
  std::uint64_t n_max;
};
static_assert(sizeof(CacheHeader) == 16);
}  // namespace

void save_divisor_table(const DivisorTable& table,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  CacheHeader h;
  std::memcpy(h.magic, kMagic, 4);
  h.version = kFormatVersion;
  h.n_max = table.n_max;
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  out.write(reinterpret_cast<const char*>(table.d.data() + 1),
            std::streamsize(table.n_max * sizeof(std::uint32_t)));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

DivisorTable load_divisor_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CacheHeader h;
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!in || std::memcmp(h.magic, kMagic, 4) != 0)
    throw std::runtime_error(path.string() + ": not a divisor table cache");
  if (h.version != kFormatVersion)
    throw std::runtime_error(path.string() + ": unsupported cache version " +
                             std::to_string(h.version));
  DivisorTable t;
  t.n_max = h.n_max;
  t.d.assign(h.n_max + 1, 0);
  in.read(reinterpret_cast<char*>(t.d.data() + 1),
          std::streamsize(h.n_max * sizeof(std::uint32_t)));
  if (!in) throw std::runtime_error(path.string() + ": truncated cache");
  fill_prefixes(t);
  return t;
}

}  // namespace zdl

#include "zdl/quadruples.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace zdl {

namespace {

// k-th roots of N+1 .. 2N, shared by both counters so their predicates are
// bit-identical.
std::vector<double> roots(std::uint64_t N, int k) {
  std::vector<double> r(N);
  for (std::uint64_t i = 0; i < N; ++i)
    r[i] = std::pow(double(N + 1 + i), 1.0 / double(k));
  return r;
}

void check_nk(std::uint64_t N, int k, double delta, std::uint64_t n_cap) {
  if (N < 1 || N > n_cap)
    throw PreconditionError("count_quadruples: N outside [1, budget]");
  if (k < 2) throw PreconditionError("count_quadruples: k must be >= 2");
  if (!(delta > 0.0))
    throw PreconditionError("count_quadruples: delta must be > 0");
}

}  // namespace

QuadrupleCount count_quadruples(std::uint64_t N, int k, double delta) {
  check_nk(N, k, delta, 2000);
  const std::vector<double> r = roots(N, k);
  const double w = delta * std::pow(double(N), 1.0 / double(k));

  std::vector<double> s(N * N);
  for (std::uint64_t i = 0; i < N; ++i)
    for (std::uint64_t j = 0; j < N; ++j) s[i * N + j] = r[i] + r[j];
  std::sort(s.begin(), s.end());

  // For each position a, the quadruples it heads are the b with s[b] in
  // the open interval (s[a] - w, s[a] + w).  Window ends found by binary
  // search so the loop parallelizes with an exact integer merge.
  std::uint64_t count = 0;
  const std::int64_t n2 = std::int64_t(s.size());
#pragma omp parallel for schedule(static) reduction(+ : count)
  for (std::int64_t a = 0; a < n2; ++a) {
    const auto lo = std::upper_bound(s.begin(), s.end(), s[a] - w);
    const auto hi = std::lower_bound(s.begin(), s.end(), s[a] + w);
    if (hi > lo) count += std::uint64_t(hi - lo);
  }

  QuadrupleCount q;
  q.N = N;
  q.k = k;
  q.delta = delta;
  q.count = count;
  q.bound_value = double(N) * double(N) * double(N) * double(N) * delta +
                  double(N) * double(N);
  q.ratio = double(count) / q.bound_value;
  return q;
}

QuadrupleCount count_quadruples_reference(std::uint64_t N, int k,
                                          double delta) {
  check_nk(N, k, delta, 64);
  const std::vector<double> r = roots(N, k);
  const double w = delta * std::pow(double(N), 1.0 / double(k));
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < N; ++a)
    for (std::uint64_t b = 0; b < N; ++b)
      for (std::uint64_t c = 0; c < N; ++c)
        for (std::uint64_t d = 0; d < N; ++d)
          if (std::abs(r[a] + r[b] - r[c] - r[d]) < w) ++count;
  QuadrupleCount q;
  q.N = N;
  q.k = k;
  q.delta = delta;
  q.count = count;
  q.bound_value = double(N) * double(N) * double(N) * double(N) * delta +
                  double(N) * double(N);
  q.ratio = double(count) / q.bound_value;
  return q;
}

std::uint64_t count_quadruples_exact_limit(std::uint64_t N) {
  if (N < 1 || N > 2000)
    throw PreconditionError("count_quadruples_exact_limit: N outside [1, 2000]");
  // sqrt(n) = a sqrt(alpha) with alpha squarefree; sums of surds agree
  // exactly iff the per-alpha coefficient totals agree.  Encode the pair
  // signature {(alpha1, a1+?), ...} into one 64-bit key.
  const std::uint64_t hi = 2 * N;
  std::vector<std::uint32_t> core(hi + 1), coef(hi + 1);
  for (std::uint64_t n = 1; n <= hi; ++n) {
    std::uint64_t a = 1, alpha = n;
    for (std::uint64_t p = 2; p * p <= alpha; ++p)
      while (alpha % (p * p) == 0) {
        alpha /= p * p;
        a *= p;
      }
    core[n] = std::uint32_t(alpha);
    coef[n] = std::uint32_t(a);
  }
  std::map<std::uint64_t, std::uint64_t> mult;
  for (std::uint64_t n1 = N + 1; n1 <= hi; ++n1)
    for (std::uint64_t n2 = N + 1; n2 <= hi; ++n2) {
      std::uint64_t c1 = core[n1], a1 = coef[n1];
      std::uint64_t c2 = core[n2], a2 = coef[n2];
      std::uint64_t key;
      if (c1 == c2) {
        key = (c1 << 32) | (a1 + a2);
      } else {
        if (c1 > c2) {
          std::swap(c1, c2);
          std::swap(a1, a2);
        }
        // distinct cores: 12-bit fields suffice (core <= 4000, coef <= 63)
        key = (1ull << 63) | (c1 << 44) | (a1 << 32) | (c2 << 12) | a2;
      }
      ++mult[key];
    }
  std::uint64_t count = 0;
  for (const auto& [key, m] : mult) count += m * m;
  return count;
}

std::vector<QuadrupleCount> bound_sweep(std::span<const std::uint64_t> N_list,
                                        int k,
                                        std::span<const double> delta_list) {
  std::vector<QuadrupleCount> rows;
  rows.reserve(N_list.size() * delta_list.size());
  for (std::uint64_t N : N_list)
    for (double delta : delta_list) rows.push_back(count_quadruples(N, k, delta));
  return rows;
}

double inverse_sqrt_gap_sum(std::uint64_t K) {
  if (K < 2 || K > 1000000)
    throw PreconditionError("inverse_sqrt_gap_sum: K outside [2, 1e6]");
  // 1/(sqrt(n) - sqrt(m)) = (sqrt(n) + sqrt(m))/(n - m); group by the gap
  // g = n - m and pull the inner sums out of prefix sums of sqrt.
  const std::uint64_t hi = 2 * K;
  std::vector<double> P(hi + 1, 0.0);  // P[x] = sum_{j <= x, j > K} sqrt(j)
  {
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t j = K + 1; j <= hi; ++j) {
      const double y = std::sqrt(double(j)) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      P[j] = sum;
    }
  }
  double total = 0.0, comp = 0.0;
  for (std::uint64_t g = 1; g < K; ++g) {
    // sum over m in (K, 2K-g] of sqrt(m) + sqrt(m+g)
    const double inner = (P[hi - g] - P[K]) + (P[hi] - P[K + g]);
    const double y = inner / double(g) - comp;
    const double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  return 2.0 * total;
}

double inverse_sqrt_gap_sum_reference(std::uint64_t K) {
  if (K < 2 || K > 10000)
    throw PreconditionError(
        "inverse_sqrt_gap_sum_reference: K outside [2, 1e4]");
  const std::uint64_t hi = 2 * K;
  std::vector<double> rt(hi + 1);
  for (std::uint64_t j = K + 1; j <= hi; ++j) rt[j] = std::sqrt(double(j));
  double total = 0.0, comp = 0.0;
  for (std::uint64_t m = K + 1; m <= hi; ++m)
    for (std::uint64_t n = K + 1; n <= hi; ++n) {
      if (m == n) continue;
      const double y = 1.0 / std::abs(rt[m] - rt[n]) - comp;
      const double t = total + y;
      comp = (t - total) - y;
      total = t;
    }
  return total;
}

void write_quadruple_csv(std::span<const QuadrupleCount> rows,
                         const std::filesystem::path& csv) {
  std::ofstream out(csv, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + csv.string());
  out << "N,k,delta,count,bound,ratio\n";
  char line[160];
  for (const QuadrupleCount& q : rows) {
    std::snprintf(line, sizeof line, "%llu,%d,%.17g,%llu,%.17g,%.17g\n",
                  (unsigned long long)q.N, q.k, q.delta,
                  (unsigned long long)q.count, q.bound_value, q.ratio);
    out << line;
  }
}

}  // namespace zdl

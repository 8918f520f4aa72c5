#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "zdl/quadruples.hpp"
#include "mp_reference.hpp"

using namespace zdl;

TEST_CASE("two-pointer count equals brute force") {
  for (std::uint64_t N = 1; N <= 12; ++N)
    for (int k : {2, 3})
      for (double d : {1e-3, 1e-1, 1.0}) {
        const QuadrupleCount fast = count_quadruples(N, k, d);
        const QuadrupleCount ref = count_quadruples_reference(N, k, d);
        CHECK(fast.count == ref.count);
        CHECK(fast.bound_value == ref.bound_value);
      }
}

TEST_CASE("window saturation gives N^4") {
  // delta N^{1/k} beyond the total spread of the roots: every tuple counts
  for (std::uint64_t N : {4, 16, 64}) {
    const double spread =
        2.0 * (std::pow(2.0 * double(N), 0.5) - std::pow(double(N), 0.5));
    const double d = 1.01 * spread / std::pow(double(N), 0.5);
    CHECK(count_quadruples(N, 2, d).count == N * N * N * N);
  }
}

TEST_CASE("monotone in delta") {
  const std::uint64_t N = 32;
  std::uint64_t prev = 0;
  for (double d : {1e-4, 1e-2, 0.1, 0.3, 1.0}) {
    const std::uint64_t c = count_quadruples(N, 2, d).count;
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("delta to zero limit: exact coincidence counts") {
  // below the first genuine coincidence only the 2N^2 - N trivial
  // quadruples (c,d a permutation of a,b) remain
  CHECK(count_quadruples_exact_limit(8) == 120);
  CHECK(count_quadruples_exact_limit(40) == 3160);
  // (41, 82] admits sqrt(49) + sqrt(81) = sqrt(64) + sqrt(64): 4 orderings
  CHECK(count_quadruples_exact_limit(41) == 3325);
  CHECK(count_quadruples_exact_limit(48) == 4564);
  // (49, 98] admits sqrt(50) + sqrt(98) = 2 sqrt(72)
  CHECK(count_quadruples_exact_limit(49) == 4757);
  CHECK(count_quadruples_exact_limit(100) == 19924);

  // a tiny window must reproduce the limit (spacings at N = 48 are far
  // larger than 1e-12 N^{1/2})
  CHECK(count_quadruples(48, 2, 1e-12).count == 4564);
}

TEST_CASE("bound sweep fields") {
  const std::uint64_t Ns[] = {16, 32};
  const double ds[] = {0.01, 0.1};
  const auto rows = bound_sweep(Ns, 2, ds);
  REQUIRE(rows.size() == 4);
  for (const QuadrupleCount& q : rows) {
    const double n4 = std::pow(double(q.N), 4.0);
    CHECK(q.bound_value ==
          doctest::Approx(n4 * q.delta + double(q.N) * double(q.N)));
    CHECK(q.ratio == doctest::Approx(double(q.count) / q.bound_value));
    CHECK(q.k == 2);
  }
  CHECK(rows[0].N == 16);  // N-major, delta-minor order
  CHECK(rows[1].N == 16);
  CHECK(rows[1].delta == 0.1);
}

TEST_CASE("inverse sqrt gap sum") {
  // K = 2 by hand: interval (2, 4] holds {3, 4}, so the sum is
  // 2/(2 - sqrt 3) = 2 (2 + sqrt 3)
  CHECK(inverse_sqrt_gap_sum(2) ==
        doctest::Approx(mpref::kGapV[0]).epsilon(1e-15));
  CHECK(inverse_sqrt_gap_sum(100) ==
        doctest::Approx(mpref::kGapV[1]).epsilon(1e-12));
  CHECK(inverse_sqrt_gap_sum(1000) ==
        doctest::Approx(mpref::kGapV[2]).epsilon(1e-12));

  // grouped-by-gap form against the direct O(K^2) reference
  for (std::uint64_t K : {50, 500, 3000})
    CHECK(inverse_sqrt_gap_sum(K) ==
          doctest::Approx(inverse_sqrt_gap_sum_reference(K)).epsilon(1e-13));

  CHECK_THROWS_AS(inverse_sqrt_gap_sum(1), PreconditionError);
  CHECK_THROWS_AS(inverse_sqrt_gap_sum(2000001), PreconditionError);
}

TEST_CASE("gap sum tracks K^{3/2} log K") {
  double rmin = 1e300, rmax = 0.0;
  for (std::uint64_t K : {100, 1000, 10000}) {
    const double r = inverse_sqrt_gap_sum(K) /
                     (std::pow(double(K), 1.5) * std::log(double(K)));
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  CHECK(rmax / rmin < 3.0);
}

TEST_CASE("quadruple csv") {
  const std::uint64_t Ns[] = {8};
  const double ds[] = {0.5};
  const auto rows = bound_sweep(Ns, 2, ds);
  const auto path = std::filesystem::temp_directory_path() / "quad_test.csv";
  write_quadruple_csv(rows, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "N,k,delta,count,bound,ratio");
  std::string row;
  CHECK(std::getline(in, row).good());
  CHECK(row.substr(0, 4) == "8,2,");
  std::filesystem::remove(path);
}

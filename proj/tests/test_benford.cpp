#include <cmath>
#include <vector>

#include "colben/benford.hpp"
#include "colben/collatz.hpp"
#include "colben/equidist.hpp"
#include "colben/logspace.hpp"
#include "colben/rng.hpp"
#include "doctest.h"

using namespace colben;

TEST_CASE("digit_count across bases and sizes") {
  CHECK(digit_count(BigInt(1), 10) == 1);
  CHECK(digit_count(BigInt(9), 10) == 1);
  CHECK(digit_count(BigInt(10), 10) == 2);
  CHECK(digit_count(BigInt(999), 10) == 3);
  CHECK(digit_count(BigInt(1000), 10) == 4);
  CHECK(digit_count(BigInt(8), 2) == 4);
  CHECK(digit_count(pow2(100), 2) == 101);
  // Exact power of the base: the classic off-by-one trap for float logs.
  BigInt p10 = 1;
  for (int i = 0; i < 60; ++i) p10 *= 10;
  CHECK(digit_count(p10, 10) == 61);
  CHECK(digit_count(p10 - 1, 10) == 60);
  CHECK_THROWS_AS(digit_count(BigInt(0), 10), std::invalid_argument);
  CHECK_THROWS_AS(digit_count(BigInt(5), 1), std::invalid_argument);
}

TEST_CASE("digit_count handles bases beyond 62") {
  // mpz_sizeinbase only covers bases 2..62; larger bases take the fallback.
  CHECK(digit_count(BigInt(99), 100) == 1);
  CHECK(digit_count(BigInt(100), 100) == 2);
  CHECK(digit_count(BigInt(9999), 100) == 2);
  CHECK(digit_count(BigInt(10000), 100) == 3);
}

TEST_CASE("leading_digits pulls the exact top of the numeral") {
  const DigitBlock b = leading_digits(BigInt(271828), 10, 3);
  CHECK(b.digits == std::vector<unsigned>{2, 7, 1});
  CHECK(b.value() == 271);
  CHECK(b.r() == doctest::Approx(2.71));

  // Short numbers are padded on the right with zeros.
  const DigitBlock p = leading_digits(BigInt(5), 10, 3);
  CHECK(p.digits == std::vector<unsigned>{5, 0, 0});
  CHECK(p.value() == 500);

  const DigitBlock two = leading_digits(pow2(100), 2, 4);
  CHECK(two.digits == std::vector<unsigned>{1, 0, 0, 0});

  // 2^10 = 1024 in base 10.
  CHECK(leading_digits(BigInt(1024), 10, 2).value() == 10);
  CHECK(leading_digits(BigInt(1024), 10, 1).value() == 1);
  CHECK_THROWS_AS(leading_digits(BigInt(0), 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(leading_digits(BigInt(7), 10, 0), std::invalid_argument);
}

TEST_CASE("block_from_value round-trips and validates") {
  const DigitBlock b = block_from_value(271, 10, 3);
  CHECK(b.digits == std::vector<unsigned>{2, 7, 1});
  CHECK(b.value() == 271);
  CHECK(block_from_value(10, 10, 2).digits == std::vector<unsigned>{1, 0});
  CHECK_THROWS_AS(block_from_value(99, 10, 3), std::invalid_argument);   // leading 0
  CHECK_THROWS_AS(block_from_value(1000, 10, 3), std::invalid_argument); // too wide
}

TEST_CASE("benford_prob on the classic first-digit table") {
  CHECK(benford_prob(block_from_value(1, 10, 1)) ==
        doctest::Approx(std::log10(2.0)).epsilon(1e-15));
  CHECK(benford_prob(block_from_value(9, 10, 1)) ==
        doctest::Approx(std::log10(10.0 / 9.0)).epsilon(1e-15));
  CHECK(benford_prob(block_from_value(1, 2, 1)) == doctest::Approx(1.0));
  // Two-digit block "10": log10(1 + 1/10).
  CHECK(benford_prob(block_from_value(10, 10, 2)) ==
        doctest::Approx(std::log10(1.1)).epsilon(1e-15));
}

TEST_CASE("benford probabilities sum to one over every block family") {
  for (unsigned base : {2u, 3u, 10u, 16u}) {
    for (std::size_t k = 1; k <= 3; ++k) {
      double total = 0.0;
      const long lo = static_cast<long>(std::pow(double(base), double(k - 1)));
      const long hi = static_cast<long>(std::pow(double(base), double(k)));
      for (long v = lo; v < hi; ++v) total += benford_prob(block_from_value(v, base, k));
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("digit blocks match the fractional-part interval criterion") {
  // First digit of x is d iff {log10 x} lies in [log10 d, log10 (d+1)).
  for (long x = 1; x <= 100000; ++x) {
    const long d = leading_digits(BigInt(x), 10, 1).value();
    const double f = std::log10(static_cast<double>(x));
    const double fr = f - std::floor(f);
    // Guard against boundary rounding: only assert when safely interior.
    const double lo = std::log10(static_cast<double>(d));
    const double hi = std::log10(static_cast<double>(d) + 1.0);
    if (fr > lo + 1e-12 || d == 1) CHECK(fr < hi);
    if (fr < hi - 1e-12) CHECK(fr >= lo - 1e-12);
  }
}

TEST_CASE("empirical_block_freq counts blocks with multiplicity") {
  const std::vector<BigInt> xs = {BigInt(12), BigInt(13), BigInt(129),
                                  BigInt(2), BigInt(1200)};
  const BlockFrequencies t = empirical_block_freq(xs, 10, 2);
  CHECK(t.base == 10);
  CHECK(t.k_digits == 2);
  CHECK(t.freq.at(12) == doctest::Approx(0.6));  // 12, 129, 1200
  CHECK(t.freq.at(13) == doctest::Approx(0.2));
  CHECK(t.freq.at(20) == doctest::Approx(0.2));  // 2 pads to block 20
  double total = 0.0;
  for (const auto& [v, f] : t.freq) total += f;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(empirical_block_freq({}, 10, 1), std::invalid_argument);
}

TEST_CASE("benford_deviation covers unobserved blocks too") {
  // {1, 10, 100}: every x has first digit 1, so the deviation is
  // 1 - log10(2) (block 1 over-represented), matched by no other block.
  const std::vector<BigInt> ones = {BigInt(1), BigInt(10), BigInt(100)};
  CHECK(benford_deviation(ones, 10, 1) ==
        doctest::Approx(1.0 - std::log10(2.0)).epsilon(1e-12));
  // A set hitting only digit 9: deviation is 1 - log10(10/9).
  const std::vector<BigInt> nines = {BigInt(9), BigInt(92)};
  CHECK(benford_deviation(nines, 10, 1) ==
        doctest::Approx(1.0 - std::log10(10.0 / 9.0)).epsilon(1e-12));
}

TEST_CASE("deviation is bounded by the discrepancy of the log set") {
  // Blocks are intervals in {log_B x}, so sup block deviation <= D of the
  // fractional log set. Check on assorted trajectories.
  for (long seed : {27L, 703L, 871L}) {
    const BigInt m(seed);
    const std::size_t n = 60;
    const TrajectoryRecord tr = trajectory(m, n);
    const std::vector<BigInt>& xs = tr.iterates;
    std::vector<double> logs;
    logs.reserve(xs.size());
    for (const BigInt& x : xs) logs.push_back(log_base(x, 10));
    const double d = discrepancy(SampleSet{logs}).d;
    for (std::size_t k = 1; k <= 2; ++k)
      CHECK(benford_deviation(xs, 10, k) <= d + 1e-12);
  }
}

TEST_CASE("powers of two lean Benford in base 10") {
  //  {log10 2^j} equidistributes; at j <= 2000 the first-digit frequency of 1
  // is already within a percent of log10 2.
  std::vector<BigInt> pows;
  BigInt p = 1;
  for (int j = 1; j <= 2000; ++j) {
    p *= 2;
    pows.push_back(p);
  }
  const BlockFrequencies t = empirical_block_freq(pows, 10, 1);
  CHECK(t.freq.at(1) == doctest::Approx(std::log10(2.0)).epsilon(0.02));
  CHECK(benford_deviation(pows, 10, 1) < 0.01);
}

TEST_CASE("wide blocks on big integers stay exact") {
  // 10-digit leading block of 2^400, frozen from exact integer division:
  // 2^400 = 25822498780869085896559917076... so the block is 2582249878.
  const DigitBlock b = leading_digits(pow2(400), 10, 10);
  CHECK(b.value() == 2582249878L);
  // Block width is capped so value() fits comfortably in a long.
  CHECK_THROWS_AS(leading_digits(pow2(400), 10, 16), std::invalid_argument);
}

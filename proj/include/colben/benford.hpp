// Leading digit-block probabilities log_B(r + B^{1-K}) - log_B(r), extraction
// of leading blocks from big integers by exact division (never floating
// logs), empirical frequency tables, and the sup deviation from the Benford
// prediction, which is bounded by the discrepancy of the log set.
#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "colben/bigint.hpp"

namespace colben {

struct DigitBlock {
  unsigned base = 10;
  std::vector<unsigned> digits;  // d_0..d_{K-1}, 1 <= d_0 < B, 0 <= d_j < B

  // The block read as an integer: v = sum d_j B^{K-1-j}, so r = v * B^{1-K}.
  long value() const;
  double r() const;
};

// Number of base-B digits of x (exact, corrects mpz_sizeinbase overestimates).
std::size_t digit_count(const BigInt& x, unsigned base);

// First k_digits digits of x in base B; x with fewer digits is zero-padded on
// the right (equivalently: the block determined by {{log_B x}}).
DigitBlock leading_digits(const BigInt& x, unsigned base, std::size_t k_digits);

DigitBlock block_from_value(long value, unsigned base, std::size_t k_digits);

// P(block) = log_B(r + B^{1-K}) - log_B r = log_B(1 + 1/v).
double benford_prob(const DigitBlock& block);

struct BlockFrequencies {
  unsigned base = 10;
  std::size_t k_digits = 1;
  std::map<long, double> freq;  // block value -> relative frequency
};

BlockFrequencies empirical_block_freq(const std::vector<BigInt>& xs, unsigned base,
                                      std::size_t k_digits);

// max over all K-digit blocks of |empirical frequency - benford_prob|.
double benford_deviation(const std::vector<BigInt>& xs, unsigned base,
                         std::size_t k_digits);

}  // namespace colben

// Exact iterate algebra for the accelerated qx+1 map (q odd, default 3):
//   T(n) = n/2          if n even,
//   T(n) = (q*n + 1)/2  if n odd.
// Everything here is integer/rational exact; no floating point.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "colben/bigint.hpp"

namespace colben {

// Parity bits b_0, b_1, ... where b_k is the parity of the k-th iterate
// (b_0 = parity of the seed itself).
struct ParityVector {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  std::size_t ones() const;
  bool operator==(const ParityVector&) const = default;
};

struct TrajectoryRecord {
  BigInt seed;
  unsigned q = 3;
  std::vector<BigInt> iterates;  // x_1 .. x_n (the seed x_0 is not repeated)
  ParityVector parity;           // b_0 .. b_{n-1}, parities of x_0 .. x_{n-1}
};

// The k-th iterate split per the closed form
//   T^k(m) = q^{s_k}/2^k * m + sum_{j<k} b_j * q^{b_{j+1}+...+b_{k-1}} / 2^{k-j}
// with s_k = b_0 + ... + b_{k-1}. leading + remainder == total == T^k(m),
// and total is always an integer.
struct ClosedFormIterate {
  Rational leading;
  Rational remainder;
  Rational total;
};

BigInt t_step(const BigInt& n, unsigned q = 3);

TrajectoryRecord trajectory(const BigInt& m, std::size_t n_steps, unsigned q = 3);

ParityVector parity_vector(const BigInt& m, std::size_t n_bits, unsigned q = 3);

ClosedFormIterate closed_form(const BigInt& m, std::size_t k, unsigned q = 3);

// The unique m in [1, 2^N] whose first N parity bits equal `bits` (N = size).
// O(N) big-integer steps: lifts one bit of m per parity bit.
BigInt invert_parity(const ParityVector& bits, unsigned q = 3);

}  // namespace colben

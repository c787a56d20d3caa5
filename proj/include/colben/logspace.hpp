// Logarithmic views of trajectories: exact-iterate logs y_k = log_B T^k(m),
// the two-rotation approximations y~_k driven by the parity vector alone, and
// the exact\approximate gap. The gap is computed from an exact integer ratio,
// never by subtracting two large logs.
#pragma once

#include <cstddef>
#include <vector>

#include "colben/bigint.hpp"
#include "colben/collatz.hpp"

namespace colben {

enum class LogKind { kExactLog, kClosedFormApprox, kTranslatedApprox };

struct LogSequence {
  LogKind kind;
  unsigned base = 10;
  std::vector<double> values;  // index k-1 holds the entry for iterate k
};

// log_B(x) for integer x >= 1, any integer base B >= 2. Accurate to ~1e-14
// relative regardless of the size of x.
double log_base(const BigInt& x, unsigned base);

// y_k = log_B T^k(m) for k = 1..n_steps.
LogSequence y_sequence(const BigInt& m, std::size_t n_steps, unsigned base, unsigned q = 3);

// y~_k = y~_{k-1} + (b_{k-1} ? log_B(q/2) : log_B(1/2)), accumulated in long
// double. translated=true starts from 0, else from log_B m.
LogSequence tilde_y_sequence(const BigInt& m, std::size_t n_steps, unsigned base,
                             bool translated, unsigned q = 3);

// Entry k-1 is y_k - y~_k (untranslated) = log_B(T^k(m) * 2^k / (q^{s_k} m)),
// computed as log1p of an exact rational. Always >= 0.
std::vector<double> approx_error(const BigInt& m, std::size_t n_steps, unsigned base,
                                 unsigned q = 3);

// Membership in the exceptional set E(N): m <= 2^{0.99 N} or
// s_N(m) <= 2N/5. Both tests are exact integer comparisons. Fixed to q = 3.
bool exceptional_member(const BigInt& m, std::size_t n_steps);

// H(x) = -x log2 x - (1-x) log2(1-x) on [0, 1], endpoints 0.
double binary_entropy(double x);

}  // namespace colben

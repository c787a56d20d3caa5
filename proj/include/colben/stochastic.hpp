// The fair-coin two-rotation process: y_n = y_{n-1} + (theta1 or theta2),
// each step an independent coin flip. Provides realizations, exhaustive path
// enumeration, the exact second moment of the exponential sum with its
// closed-interval discrepancy consequences, and Monte Carlo estimates of E[D].
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "colben/equidist.hpp"
#include "colben/rng.hpp"

namespace colben {

struct ProcessParams {
  double theta1 = 0.0;  // step taken on a 1-bit
  double theta2 = 0.0;  // step taken on a 0-bit
  double y0 = 0.0;
};

// Steps of log_B(3/2) and log_B(1/2): the process the parity vector drives.
ProcessParams base_b_params(unsigned base, unsigned q = 3);

struct Realization {
  ProcessParams params;
  std::vector<std::uint8_t> path;  // path[n] = 1 means step theta1
  std::vector<double> values;      // y_1 .. y_N
};

Realization realize(const ProcessParams& params, std::size_t n_steps, CounterRng& rng);
Realization realize_from_path(const ProcessParams& params,
                              const std::vector<std::uint8_t>& path);

// All 2^N paths in lexicographic order (all-zeros first). n_steps <= 24.
std::vector<Realization> enumerate_paths(const ProcessParams& params, std::size_t n_steps);

// E|U_N(k)|^2 = N + 2 Re sum_{r=1}^{N} (N - r) z^r with
// z = (e(k theta1) + e(k theta2)) / 2, evaluated in closed geometric form
// away from z = 1 and by direct summation when |1 - z| <= 1e-4.
double second_moment_exact(const ProcessParams& params, long k, std::size_t n_steps);

// (1 + 1/(||k theta1||^2 + ||k theta2||^2)) * N; throws std::domain_error
// when both distances vanish (k theta1 and k theta2 both integers).
double second_moment_bound(const ProcessParams& params, long k, std::size_t n_steps);

struct McDiscrepancy {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

// Mean closed-interval discrepancy over independent realizations. Trial t
// draws from stream t of `seed`; the reduction order is fixed, so results are
// identical for every thread count.
McDiscrepancy expected_discrepancy_mc(const ProcessParams& params, std::size_t n_steps,
                                      std::size_t trials, std::uint64_t seed,
                                      unsigned threads = 0);

// Erdos-Turan pipeline upper bound for E[D_N]:
//   1/(K+1) + 3 sum_{k=1}^K sqrt(E|U_N(k)|^2) / (k N).
double expected_discrepancy_upper(const ProcessParams& params, std::size_t n_steps,
                                  std::size_t k_max);

// Default cutoff K = floor(N^{1/(2(1+alpha))}), at least 1.
std::size_t default_k_cutoff(std::size_t n_steps, double alpha = 7.616);

}  // namespace colben

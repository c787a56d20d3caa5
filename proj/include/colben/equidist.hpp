// Discrepancy of finite real sequences mod 1, exponential-sum coefficients,
// and the Erdos-Turan bound tying the two together. Intervals are closed on
// both ends and ties count with multiplicity, so degenerate [a,a] intervals
// contribute and D of a single point is 1.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace colben {

struct SampleSet {
  std::vector<double> values;  // raw reals; reduced mod 1 on use

  std::size_t size() const { return values.size(); }
};

struct DiscrepancyValue {
  double d = 0.0;       // sup over closed [a,b] of |Z(a,b)/N - (b-a)|
  double d_star = 0.0;  // sup over [0,b]
};

// Fraction of points whose fractional part lies in [alpha, beta].
double z_count(const SampleSet& set, double alpha, double beta);

DiscrepancyValue discrepancy(const SampleSet& set);
DiscrepancyValue discrepancy(std::span<const double> values);

namespace detail {
// In-place variant for hot loops: `fracs` is overwritten (reduced and sorted).
DiscrepancyValue discrepancy_sorted_scratch(std::vector<double>& fracs);
}  // namespace detail

// U_N(k) = sum_j exp(2 pi i k y_j), pairwise-summed in input order.
std::complex<double> fourier_coeff(const SampleSet& set, long k);

// D(Y) <= 1/(K+1) + 3 * sum_{k=1}^K |U_N(k)| / (k N).
double erdos_turan_bound(const SampleSet& set, std::size_t k_max);

struct PerturbationReport {
  double epsilon = 0.0;  // max |y_i - y'_i|
  double delta_d = 0.0;  // |D(Y) - D(Y')|, bounded by 2*epsilon
};

PerturbationReport perturb_compare(const SampleSet& a, const SampleSet& b);

}  // namespace colben

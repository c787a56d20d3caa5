#include "colben/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "colben/numeric.hpp"

namespace colben {

double z_count(const SampleSet& set, double alpha, double beta) {
  if (set.size() == 0) throw std::invalid_argument("sample set must be non-empty");
  if (!(alpha >= 0.0 && beta <= 1.0 && alpha <= beta))
    throw std::invalid_argument("need 0 <= alpha <= beta <= 1");
  std::size_t hits = 0;
  for (double y : set.values) {
    const double f = frac(y);
    if (f >= alpha && f <= beta) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(set.size());
}

namespace detail {

DiscrepancyValue discrepancy_sorted_scratch(std::vector<double>& fracs) {
  const std::size_t n = fracs.size();
  if (n == 0) throw std::invalid_argument("sample set must be non-empty");
  for (double& v : fracs) v = frac(v);
  std::sort(fracs.begin(), fracs.end());

  // With u_(1) <= ... <= u_(N) (ties kept, closed intervals):
  //   D  = 1/N + max_i (i/N - u_(i)) - min_i (i/N - u_(i))
  //   D* = max_i max( i/N - u_(i), u_(i) - (i-1)/N )
  // Both are exact sup values, not grid approximations.
  const double inv_n = 1.0 / static_cast<double>(n);
  double g_max = -2.0, g_min = 2.0, star = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double u = fracs[i - 1];
    const double g = static_cast<double>(i) * inv_n - u;
    g_max = std::max(g_max, g);
    g_min = std::min(g_min, g);
    star = std::max({star, g, u - static_cast<double>(i - 1) * inv_n});
  }
  DiscrepancyValue out;
  out.d = std::clamp(inv_n + g_max - g_min, 0.0, 1.0);
  out.d_star = std::clamp(star, 0.0, 1.0);
  return out;
}

}  // namespace detail

DiscrepancyValue discrepancy(std::span<const double> values) {
  std::vector<double> scratch(values.begin(), values.end());
  return detail::discrepancy_sorted_scratch(scratch);
}

DiscrepancyValue discrepancy(const SampleSet& set) {
  return discrepancy(std::span<const double>(set.values.data(), set.values.size()));
}

std::complex<double> fourier_coeff(const SampleSet& set, long k) {
  if (set.size() == 0) throw std::invalid_argument("sample set must be non-empty");
  const auto& ys = set.values;
  // k*y is reduced mod 1 in long double: the product is exact while k*y fits
  // a 64-bit mantissa, so term error stays at the cos/sin ulp level and the
  // pairwise sum keeps |U_N(k)| trustworthy at N = 1e6.
  return pairwise_transform_sum<std::complex<double>>(0, ys.size(), [&](std::size_t j) {
    long double t = static_cast<long double>(k) * static_cast<long double>(ys[j]);
    t -= std::floor(t);
    if (t >= 1.0L) t -= 1.0L;
    if (t < 0.0L) t = 0.0L;
    const double angle = static_cast<double>(2.0L * std::numbers::pi_v<long double> * t);
    return std::complex<double>(std::cos(angle), std::sin(angle));
  });
}

double erdos_turan_bound(const SampleSet& set, std::size_t k_max) {
  if (set.size() == 0) throw std::invalid_argument("sample set must be non-empty");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  const double n = static_cast<double>(set.size());
  double sum = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k)
    sum += std::abs(fourier_coeff(set, static_cast<long>(k))) /
           (static_cast<double>(k) * n);
  return 1.0 / static_cast<double>(k_max + 1) + 3.0 * sum;
}

PerturbationReport perturb_compare(const SampleSet& a, const SampleSet& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sample sets must have equal size");
  if (a.size() == 0) throw std::invalid_argument("sample set must be non-empty");
  PerturbationReport rep;
  for (std::size_t i = 0; i < a.size(); ++i)
    rep.epsilon = std::max(rep.epsilon, std::abs(a.values[i] - b.values[i]));
  rep.delta_d = std::abs(discrepancy(a).d - discrepancy(b).d);
  return rep;
}

}  // namespace colben

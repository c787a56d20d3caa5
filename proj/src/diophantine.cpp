#include "colben/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "colben/numeric.hpp"

namespace colben {

double dist_nearest_int(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("dist_nearest_int needs finite x");
  const double d = std::abs(x - std::nearbyint(x));
  return d > 0.5 ? 1.0 - d : d;
}

namespace detail {

double dist_nearest_int_prod(long k, double theta) {
  // hi + lo == k * theta exactly; hi - round(hi) is exact (Sterbenz), so the
  // only rounding left is the final small addition.
  const auto [hi, lo] = two_prod(static_cast<double>(k), theta);
  const double r = (hi - std::nearbyint(hi)) + lo;
  const double d = std::abs(r);
  return d > 0.5 ? 1.0 - d : d;
}

}  // namespace detail

DioScanReport dio_scan_2d(double theta1, double theta2, std::uint64_t k_max, double alpha,
                          bool keep_trace) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");

  DioScanReport rep;
  rep.k_max = k_max;
  rep.alpha = alpha;
  rep.worst_quality = std::numeric_limits<double>::infinity();
  if (keep_trace) rep.trace.reserve(k_max);

  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const double d1 = detail::dist_nearest_int_prod(static_cast<long>(k), theta1);
    const double d2 = detail::dist_nearest_int_prod(static_cast<long>(k), theta2);
    const double quality =
        std::max(d1, d2) * std::pow(static_cast<double>(k), alpha);
    if (quality < rep.worst_quality) {
      rep.worst_quality = quality;
      rep.worst_k = k;
    }
    if (keep_trace) rep.trace.push_back({k, d1, d2});
  }
  return rep;
}

LinFormScan lin_form_scan(long u_max) {
  if (u_max < 1) throw std::invalid_argument("u_max must be >= 1");

  // ln 2 and ln 3 as double-double constants derived from long double.
  static const long double kLn2 = std::log(2.0L);
  static const long double kLn3 = std::log(3.0L);
  const double ln2_hi = static_cast<double>(kLn2);
  const double ln2_lo = static_cast<double>(kLn2 - static_cast<long double>(ln2_hi));
  const double ln3_hi = static_cast<double>(kLn3);
  const double ln3_lo = static_cast<double>(kLn3 - static_cast<long double>(ln3_hi));

  LinFormScan out;
  out.u_max = u_max;
  out.min_value = std::numeric_limits<double>::infinity();

  for (long u1 = -u_max; u1 <= u_max; ++u1) {
    for (long u2 = -u_max; u2 <= u_max; ++u2) {
      if (u1 == 0 && u2 == 0) continue;
      const auto [p1, e1] = two_prod(static_cast<double>(u1), ln2_hi);
      const auto [p2, e2] = two_prod(static_cast<double>(u2), ln3_hi);
      // The hi parts sum error-free via two_sum and the integer subtraction
      // below is exact (|hi| and |u0| agree to within 0.5), so `value` is
      // good to ~1e-17 absolute: ample for minima around 1e-5.
      const auto [hi, carry] = two_sum(p1, p2);
      const double lo = carry + e1 + e2 + static_cast<double>(u1) * ln2_lo +
                        static_cast<double>(u2) * ln3_lo;
      const double u0 = -std::nearbyint(hi);
      const double value = std::abs((hi + u0) + lo);
      if (value < out.min_value) {
        out.min_value = value;
        out.u0 = static_cast<long>(u0);
        out.u1 = u1;
        out.u2 = u2;
      }
    }
  }
  const long height = std::max(std::labs(out.u1), std::labs(out.u2));
  out.empirical_constant = out.min_value * std::pow(static_cast<double>(height), 7.616);
  return out;
}

}  // namespace colben

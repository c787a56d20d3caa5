// Distance-to-nearest-integer machinery and small-scale searches for the
// simultaneous approximation quality of a rotation pair, plus the integer
// linear-form scan over u0 + u1 ln 2 + u2 ln 3.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace colben {

// ||x|| = min_n |x - n|, in [0, 1/2].
double dist_nearest_int(double x);

namespace detail {
// ||k * theta|| with the product formed error-free (double-double), so the
// distance is trustworthy near 0 even for k ~ 1e6.
double dist_nearest_int_prod(long k, double theta);
}  // namespace detail

struct DioTraceRow {
  std::uint64_t k = 0;
  double dist1 = 0.0;
  double dist2 = 0.0;
};

struct DioScanReport {
  std::uint64_t k_max = 0;
  double alpha = 0.0;
  std::uint64_t worst_k = 0;      // smallest k attaining the minimum
  double worst_quality = 0.0;     // min_k max(||k theta1||, ||k theta2||) * k^alpha
  std::vector<DioTraceRow> trace;  // filled only when keep_trace
};

DioScanReport dio_scan_2d(double theta1, double theta2, std::uint64_t k_max, double alpha,
                          bool keep_trace = false);

struct LinFormScan {
  long u_max = 0;
  long u0 = 0, u1 = 0, u2 = 0;      // argmin over 0 < max(|u1|,|u2|) <= u_max
  double min_value = 0.0;           // min |u0 + u1 ln 2 + u2 ln 3|
  double empirical_constant = 0.0;  // min_value * max(|u1|,|u2|)^7.616
};

LinFormScan lin_form_scan(long u_max);

}  // namespace colben

// Floating-point helpers: fractional parts, deterministic pairwise summation,
// and exact double-double products for |k*theta| style arguments.
#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace colben {

// Fractional part with the floor convention: frac(-0.25) = 0.75. The result
// is clamped into [0, 1); frac of a tiny negative would otherwise round to 1.
inline double frac(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f -= 1.0;
  if (f < 0.0) f = 0.0;
  return f;
}

// Pairwise (cascade) summation: O(log n) error growth and a fixed reduction
// tree, so the result is independent of chunking or thread count.
template <class T>
T pairwise_sum(std::span<const T> xs) {
  const std::size_t n = xs.size();
  if (n <= 16) {
    T acc{};
    for (const T& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs.data(), xs.size()));
}

// Pairwise sum of fn(i) for i in [lo, hi), without materializing the terms.
template <class T, class Fn>
T pairwise_transform_sum(std::size_t lo, std::size_t hi, Fn&& fn) {
  const std::size_t n = hi - lo;
  if (n <= 16) {
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += fn(i);
    return acc;
  }
  const std::size_t mid = lo + n / 2;
  return pairwise_transform_sum<T>(lo, mid, fn) + pairwise_transform_sum<T>(mid, hi, fn);
}

// Error-free product: a*b = hi + lo exactly.
inline std::pair<double, double> two_prod(double a, double b) {
  const double hi = a * b;
  const double lo = std::fma(a, b, -hi);
  return {hi, lo};
}

// Error-free sum (Knuth): a+b = s + e exactly.
inline std::pair<double, double> two_sum(double a, double b) {
  const double s = a + b;
  const double v = s - a;
  const double e = (a - (s - v)) + (b - v);
  return {s, e};
}

// Shortest decimal form that parses back to exactly the same double.
inline std::string shortest_decimal(double v) {
  std::array<char, 32> buf;
  const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::logic_error("double formatting failed");
  return std::string(buf.data(), p);
}

}  // namespace colben

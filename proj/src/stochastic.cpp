#include "colben/stochastic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "colben/diophantine.hpp"
#include "colben/numeric.hpp"
#include "colben/parallel.hpp"

namespace colben {

namespace {

std::complex<double> ipow(std::complex<double> z, std::size_t e) {
  std::complex<double> acc = 1.0;
  while (e != 0) {
    if (e & 1) acc *= z;
    z *= z;
    e >>= 1;
  }
  return acc;
}

std::complex<double> unit_phase(long k, double theta) {
  long double t = static_cast<long double>(k) * static_cast<long double>(theta);
  t -= std::floor(t);
  if (t >= 1.0L) t -= 1.0L;
  if (t < 0.0L) t = 0.0L;
  const double angle = static_cast<double>(2.0L * std::numbers::pi_v<long double> * t);
  return {std::cos(angle), std::sin(angle)};
}

void fill_values(const ProcessParams& p, const std::vector<std::uint8_t>& path,
                 std::vector<double>& out) {
  out.resize(path.size());
  long double acc = p.y0;
  for (std::size_t n = 0; n < path.size(); ++n) {
    acc += path[n] ? static_cast<long double>(p.theta1) : static_cast<long double>(p.theta2);
    out[n] = static_cast<double>(acc);
  }
}

}  // namespace

ProcessParams base_b_params(unsigned base, unsigned q) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be odd and >= 3");
  const long double ln_b = std::log(static_cast<long double>(base));
  const long double ln2 = 0.6931471805599453094172321215L;
  ProcessParams p;
  p.theta1 = static_cast<double>((std::log(static_cast<long double>(q)) - ln2) / ln_b);
  p.theta2 = static_cast<double>(-ln2 / ln_b);
  p.y0 = 0.0;
  return p;
}

Realization realize(const ProcessParams& params, std::size_t n_steps, CounterRng& rng) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  Realization r;
  r.params = params;
  r.path.resize(n_steps);
  for (auto& b : r.path) b = rng.next_bit() ? 1 : 0;
  fill_values(params, r.path, r.values);
  return r;
}

Realization realize_from_path(const ProcessParams& params,
                              const std::vector<std::uint8_t>& path) {
  if (path.empty()) throw std::invalid_argument("path must be non-empty");
  for (auto b : path)
    if (b > 1) throw std::invalid_argument("path bits must be 0 or 1");
  Realization r;
  r.params = params;
  r.path = path;
  fill_values(params, r.path, r.values);
  return r;
}

std::vector<Realization> enumerate_paths(const ProcessParams& params, std::size_t n_steps) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (n_steps > 24) throw std::invalid_argument("enumerate_paths is capped at n_steps <= 24");
  const std::size_t count = std::size_t{1} << n_steps;
  std::vector<Realization> out;
  out.reserve(count);
  std::vector<std::uint8_t> path(n_steps);
  for (std::size_t idx = 0; idx < count; ++idx) {
    for (std::size_t j = 0; j < n_steps; ++j)
      path[j] = static_cast<std::uint8_t>((idx >> (n_steps - 1 - j)) & 1);
    out.push_back(realize_from_path(params, path));
  }
  return out;
}

double second_moment_exact(const ProcessParams& params, long k, std::size_t n_steps) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  const std::complex<double> z =
      0.5 * (unit_phase(k, params.theta1) + unit_phase(k, params.theta2));
  const double n = static_cast<double>(n_steps);

  std::complex<double> s;  // sum_{r=1}^{N} (N - r) z^r
  if (std::abs(1.0 - z) > 1e-4) {
    const std::complex<double> one_minus = 1.0 - z;
    s = ((n - 1.0) * z - n * z * z + ipow(z, n_steps + 1)) / (one_minus * one_minus);
  } else {
    // Near z = 1 the geometric form loses everything to cancellation (its
    // numerator is three ~N-sized terms summing to ~N|1-z|^2); the direct
    // sum is stable there and the region keeps it cheap.
    std::complex<double> z_pow = 1.0;
    for (std::size_t r = 1; r <= n_steps; ++r) {
      z_pow *= z;
      s += (n - static_cast<double>(r)) * z_pow;
    }
  }
  return n + 2.0 * s.real();
}

double second_moment_bound(const ProcessParams& params, long k, std::size_t n_steps) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  const double d1 = detail::dist_nearest_int_prod(k, params.theta1);
  const double d2 = detail::dist_nearest_int_prod(k, params.theta2);
  const double denom = d1 * d1 + d2 * d2;
  if (denom == 0.0)
    throw std::domain_error("second_moment_bound degenerate: k*theta1 and k*theta2 both integral");
  return (1.0 + 1.0 / denom) * static_cast<double>(n_steps);
}

McDiscrepancy expected_discrepancy_mc(const ProcessParams& params, std::size_t n_steps,
                                      std::size_t trials, std::uint64_t seed,
                                      unsigned threads) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (trials < 100) throw std::invalid_argument("trials must be >= 100");

  std::vector<double> ds(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    CounterRng rng(seed, t);
    thread_local std::vector<double> buf;
    buf.resize(n_steps);
    long double acc = params.y0;
    for (std::size_t n = 0; n < n_steps; ++n) {
      acc += rng.next_bit() ? static_cast<long double>(params.theta1)
                            : static_cast<long double>(params.theta2);
      buf[n] = static_cast<double>(acc);
    }
    ds[t] = detail::discrepancy_sorted_scratch(buf).d;
  });

  McDiscrepancy out;
  out.trials = trials;
  out.mean = pairwise_sum(ds) / static_cast<double>(trials);
  const double mean = out.mean;
  const double ss = pairwise_transform_sum<double>(0, trials, [&](std::size_t t) {
    const double dev = ds[t] - mean;
    return dev * dev;
  });
  if (trials > 1)
    out.std_error = std::sqrt(ss / static_cast<double>(trials - 1) /
                              static_cast<double>(trials));
  return out;
}

double expected_discrepancy_upper(const ProcessParams& params, std::size_t n_steps,
                                  std::size_t k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  const double n = static_cast<double>(n_steps);
  double sum = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    // E|U|^2 is mathematically >= 0; clip float dust before the sqrt.
    const double m2 = std::max(0.0, second_moment_exact(params, static_cast<long>(k), n_steps));
    sum += std::sqrt(m2) / (static_cast<double>(k) * n);
  }
  return 1.0 / static_cast<double>(k_max + 1) + 3.0 * sum;
}

std::size_t default_k_cutoff(std::size_t n_steps, double alpha) {
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const double k = std::floor(std::pow(static_cast<double>(n_steps), 1.0 / (2.0 * (1.0 + alpha))));
  return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

}  // namespace colben

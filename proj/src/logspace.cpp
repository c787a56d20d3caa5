#include "colben/logspace.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace colben {

namespace {

void check_base(unsigned base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
}

// Largest t with t <= 2^{0.99 N}, i.e. t^100 <= 2^{99 N}, by binary search.
BigInt exceptional_seed_threshold(std::size_t n) {
  BigInt lo = pow2((99 * n) / 100);       // lo^100 = 2^{100*floor(.99N)} <= 2^{99N}
  BigInt hi = pow2((99 * n) / 100 + 1);   // strictly above
  const BigInt cap = pow2(99 * n);
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) >> 1;
    BigInt p;
    mpz_pow_ui(p.get_mpz_t(), mid.get_mpz_t(), 100);
    if (p <= cap)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

const BigInt& cached_seed_threshold(std::size_t n) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, BigInt> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.try_emplace(n);
  if (inserted) it->second = exceptional_seed_threshold(n);
  return it->second;
}

}  // namespace

double log_base(const BigInt& x, unsigned base) {
  check_base(base);
  if (x < 1) throw std::invalid_argument("log_base requires x >= 1");
  signed long int exp2;
  const double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());  // x = mant * 2^exp2
  const long double ln_x = std::log(static_cast<long double>(mant)) +
                           static_cast<long double>(exp2) * 0.6931471805599453094172321215L;
  return static_cast<double>(ln_x / std::log(static_cast<long double>(base)));
}

LogSequence y_sequence(const BigInt& m, std::size_t n_steps, unsigned base, unsigned q) {
  check_base(base);
  const TrajectoryRecord rec = trajectory(m, n_steps, q);
  LogSequence out;
  out.kind = LogKind::kExactLog;
  out.base = base;
  out.values.reserve(n_steps);
  for (const BigInt& x : rec.iterates) out.values.push_back(log_base(x, base));
  return out;
}

LogSequence tilde_y_sequence(const BigInt& m, std::size_t n_steps, unsigned base,
                             bool translated, unsigned q) {
  check_base(base);
  const ParityVector pv = parity_vector(m, n_steps, q);
  const long double ln_b = std::log(static_cast<long double>(base));
  const long double theta1 = std::log(static_cast<long double>(q) / 2.0L) / ln_b;
  const long double theta2 = -0.6931471805599453094172321215L / ln_b;

  LogSequence out;
  out.kind = translated ? LogKind::kTranslatedApprox : LogKind::kClosedFormApprox;
  out.base = base;
  out.values.reserve(n_steps);
  long double acc = translated ? 0.0L : static_cast<long double>(log_base(m, base));
  for (std::size_t k = 0; k < n_steps; ++k) {
    acc += pv.bits[k] ? theta1 : theta2;
    out.values.push_back(static_cast<double>(acc));
  }
  return out;
}

std::vector<double> approx_error(const BigInt& m, std::size_t n_steps, unsigned base,
                                 unsigned q) {
  check_base(base);
  if (m < 1) throw std::invalid_argument("seed must be >= 1");
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  const double ln_b = std::log(static_cast<double>(base));

  std::vector<double> errs;
  errs.reserve(n_steps);
  BigInt x = m, q_pow(1);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    if (mpz_odd_p(x.get_mpz_t())) q_pow *= q;
    x = t_step(x, q);
    // y_k - y~_k = log_B(x_k 2^k / (q^{s_k} m)); the ratio is 1 + t with
    // t >= 0 exactly, so log1p avoids all cancellation.
    BigInt num = x << k;
    num -= q_pow * m;
    if (num < 0) throw std::logic_error("iterate below rotation lower bound");
    Rational t(num, q_pow * m);
    t.canonicalize();
    errs.push_back(std::log1p(t.get_d()) / ln_b);
  }
  return errs;
}

bool exceptional_member(const BigInt& m, std::size_t n_steps) {
  if (m < 1) throw std::invalid_argument("seed must be >= 1");
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (m <= cached_seed_threshold(n_steps)) return true;
  const std::size_t ones = parity_vector(m, n_steps, 3).ones();
  return 5 * ones <= 2 * n_steps;
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("binary_entropy needs x in [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

}  // namespace colben

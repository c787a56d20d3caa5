#include "colben/collatz.hpp"

#include <numeric>
#include <stdexcept>

namespace colben {

namespace {

void check_q(unsigned q) {
  if (q < 3 || q % 2 == 0) throw std::invalid_argument("q must be odd and >= 3");
}

void check_seed(const BigInt& m) {
  if (m < 1) throw std::invalid_argument("seed must be >= 1");
}

bool is_odd(const BigInt& x) { return mpz_odd_p(x.get_mpz_t()) != 0; }

}  // namespace

std::size_t ParityVector::ones() const {
  return std::accumulate(bits.begin(), bits.end(), std::size_t{0});
}

BigInt t_step(const BigInt& n, unsigned q) {
  check_q(q);
  check_seed(n);
  if (is_odd(n)) return (n * q + 1) >> 1;
  return n >> 1;
}

TrajectoryRecord trajectory(const BigInt& m, std::size_t n_steps, unsigned q) {
  check_q(q);
  check_seed(m);
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  TrajectoryRecord rec;
  rec.seed = m;
  rec.q = q;
  rec.iterates.reserve(n_steps);
  rec.parity.bits.reserve(n_steps);
  BigInt x = m;
  for (std::size_t k = 0; k < n_steps; ++k) {
    rec.parity.bits.push_back(is_odd(x) ? 1 : 0);
    x = t_step(x, q);
    rec.iterates.push_back(x);
  }
  return rec;
}

ParityVector parity_vector(const BigInt& m, std::size_t n_bits, unsigned q) {
  check_q(q);
  check_seed(m);
  if (n_bits < 1) throw std::invalid_argument("n_bits must be >= 1");
  ParityVector pv;
  pv.bits.reserve(n_bits);
  BigInt x = m;
  for (std::size_t k = 0; k < n_bits; ++k) {
    pv.bits.push_back(is_odd(x) ? 1 : 0);
    if (k + 1 < n_bits) x = t_step(x, q);
  }
  return pv;
}

ClosedFormIterate closed_form(const BigInt& m, std::size_t k, unsigned q) {
  check_q(q);
  check_seed(m);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const ParityVector pv = parity_vector(m, k, q);

  ClosedFormIterate out;
  out.leading = Rational(pow_ui(q, pv.ones()) * m, pow2(k));
  out.leading.canonicalize();

  // Accumulate remainder terms from j = k-1 down so the exponent
  // b_{j+1}+...+b_{k-1} grows incrementally.
  Rational rem(0);
  BigInt q_pow(1);  // q^{b_{j+1}+...+b_{k-1}}
  for (std::size_t j = k; j-- > 0;) {
    if (pv.bits[j]) {
      Rational term(q_pow, pow2(k - j));
      term.canonicalize();
      rem += term;
      q_pow *= q;
    }
  }
  out.remainder = rem;
  out.total = out.leading + out.remainder;

  // The closed form must reproduce the iterate exactly; anything else is a
  // bug in this module, not bad input.
  const BigInt direct = trajectory(m, k, q).iterates.back();
  if (out.total != Rational(direct)) throw std::logic_error("closed form mismatch");
  return out;
}

BigInt invert_parity(const ParityVector& bits, unsigned q) {
  check_q(q);
  const std::size_t n = bits.size();
  if (n < 1) throw std::invalid_argument("parity vector must be non-empty");
  for (std::uint8_t b : bits.bits)
    if (b > 1) throw std::invalid_argument("parity bits must be 0 or 1");

  // Invariants entering round k, for the residue r built so far (bits 0..k-1):
  //   q_pow = q^{s_k},  c = 2^k * R_k(r)  via  c_{k+1} = q^{b_k} c_k + b_k 2^k,
  //   T^k(r + 2^k h) = (q_pow * r + c)/2^k + q_pow * h  for every h >= 0.
  // Since q is odd, the parity of T^k is parity((q_pow*r + c)/2^k) XOR (h&1),
  // which pins down bit k of m.
  BigInt r(0), c(0), q_pow(1);
  for (std::size_t k = 0; k < n; ++k) {
    BigInt base = q_pow * r + c;
    base >>= k;  // exact: T^k of the residue class is an integer
    const int base_parity = mpz_odd_p(base.get_mpz_t()) ? 1 : 0;
    if (base_parity != bits.bits[k]) mpz_setbit(r.get_mpz_t(), k);
    if (bits.bits[k]) {
      c = c * q + pow2(k);
      q_pow *= q;
    }
  }
  // r == 0 means the all-even residue class; its representative in [1, 2^N]
  // is 2^N itself.
  return r == 0 ? pow2(n) : r;
}

}  // namespace colben

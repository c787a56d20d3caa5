// Arbitrary-precision integer/rational aliases and small helpers shared by
// every module. GMP supplies the raw arithmetic; everything built on top of
// it lives in the individual modules.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>

#include "colben/rng.hpp"

namespace colben {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt pow2(std::size_t k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(k));
  return r;
}

inline BigInt pow_ui(unsigned long base, std::size_t k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, static_cast<unsigned long>(k));
  return r;
}

inline std::size_t bit_length(const BigInt& x) {
  return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

// Accepts a decimal literal or the shorthand "2^k" (k decimal, no spaces).
inline BigInt parse_bigint(const std::string& s) {
  if (auto caret = s.find('^'); caret != std::string::npos) {
    const std::string base = s.substr(0, caret);
    const std::string exp = s.substr(caret + 1);
    if (base != "2" || exp.empty() || exp.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad big integer literal: " + s);
    return pow2(std::stoul(exp));
  }
  BigInt r;
  if (mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("bad big integer literal: " + s);
  return r;
}

// Uniform draw from [1, upper] by rejection on fixed-width bit strings, so the
// draw sequence depends only on the RNG stream, never on word size.
inline BigInt uniform_bigint(CounterRng& rng, const BigInt& upper) {
  if (upper < 1) throw std::invalid_argument("uniform_bigint: upper must be >= 1");
  const std::size_t bits = bit_length(upper);
  const std::size_t words = (bits + 63) / 64;
  BigInt candidate;
  for (;;) {
    candidate = 0;
    for (std::size_t w = 0; w < words; ++w) {
      candidate <<= 64;
      candidate += BigInt(rng.next_u64());
    }
    candidate >>= (words * 64 - bits);
    if (candidate >= 1 && candidate <= upper) return candidate;
  }
}

}  // namespace colben

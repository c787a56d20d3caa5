#include "colben/benford.hpp"

#include <cmath>
#include <stdexcept>

namespace colben {

namespace {

void check_base(unsigned base) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
}

// Keeps block integer values inside `long` and block spaces enumerable.
void check_block_width(unsigned base, std::size_t k_digits) {
  if (k_digits < 1) throw std::invalid_argument("k_digits must be >= 1");
  double width_bits = static_cast<double>(k_digits) * std::log2(static_cast<double>(base));
  if (width_bits > 50.0) throw std::invalid_argument("digit block too wide");
}

void check_block(const DigitBlock& b) {
  check_base(b.base);
  check_block_width(b.base, b.digits.size());
  if (b.digits.empty()) throw std::invalid_argument("digit block must be non-empty");
  if (b.digits[0] < 1 || b.digits[0] >= b.base)
    throw std::invalid_argument("leading digit must be in [1, B-1]");
  for (unsigned d : b.digits)
    if (d >= b.base) throw std::invalid_argument("digit out of range");
}

}  // namespace

long DigitBlock::value() const {
  long v = 0;
  for (unsigned d : digits) v = v * static_cast<long>(base) + static_cast<long>(d);
  return v;
}

double DigitBlock::r() const {
  return static_cast<double>(value()) *
         std::pow(static_cast<double>(base), 1.0 - static_cast<double>(digits.size()));
}

std::size_t digit_count(const BigInt& x, unsigned base) {
  check_base(base);
  if (x < 1) throw std::invalid_argument("x must be >= 1");
  if (base > 62) {  // mpz_sizeinbase only covers 2..62
    std::size_t n = 1;
    BigInt pw(base);
    while (pw <= x) {
      pw *= base;
      ++n;
    }
    return n;
  }
  std::size_t n = mpz_sizeinbase(x.get_mpz_t(), static_cast<int>(base));
  if (n > 1 && x < pow_ui(base, n - 1)) --n;
  return n;
}

DigitBlock leading_digits(const BigInt& x, unsigned base, std::size_t k_digits) {
  check_base(base);
  check_block_width(base, k_digits);
  if (x < 1) throw std::invalid_argument("x must be >= 1");

  const std::size_t n = digit_count(x, base);
  BigInt v;
  if (n >= k_digits)
    v = x / pow_ui(base, n - k_digits);
  else
    v = x * pow_ui(base, k_digits - n);

  DigitBlock block;
  block.base = base;
  block.digits.resize(k_digits);
  for (std::size_t j = k_digits; j-- > 0;) {
    block.digits[j] = static_cast<unsigned>(mpz_fdiv_ui(v.get_mpz_t(), base));
    v /= base;
  }
  return block;
}

DigitBlock block_from_value(long value, unsigned base, std::size_t k_digits) {
  check_base(base);
  check_block_width(base, k_digits);
  DigitBlock block;
  block.base = base;
  block.digits.resize(k_digits);
  long v = value;
  for (std::size_t j = k_digits; j-- > 0;) {
    block.digits[j] = static_cast<unsigned>(v % static_cast<long>(base));
    v /= static_cast<long>(base);
  }
  if (v != 0 || block.digits[0] < 1)
    throw std::invalid_argument("value does not encode a K-digit block");
  return block;
}

double benford_prob(const DigitBlock& block) {
  check_block(block);
  const long v = block.value();
  return std::log1p(1.0 / static_cast<double>(v)) /
         std::log(static_cast<double>(block.base));
}

BlockFrequencies empirical_block_freq(const std::vector<BigInt>& xs, unsigned base,
                                      std::size_t k_digits) {
  check_base(base);
  check_block_width(base, k_digits);
  if (xs.empty()) throw std::invalid_argument("xs must be non-empty");

  std::map<long, std::size_t> counts;
  for (const BigInt& x : xs) ++counts[leading_digits(x, base, k_digits).value()];

  BlockFrequencies out;
  out.base = base;
  out.k_digits = k_digits;
  const double n = static_cast<double>(xs.size());
  for (const auto& [v, c] : counts) out.freq[v] = static_cast<double>(c) / n;
  return out;
}

double benford_deviation(const std::vector<BigInt>& xs, unsigned base,
                         std::size_t k_digits) {
  const BlockFrequencies table = empirical_block_freq(xs, base, k_digits);
  const double ln_b = std::log(static_cast<double>(base));

  // All K-digit blocks, including those never observed.
  const long lo = static_cast<long>(mpz_get_si(pow_ui(base, k_digits - 1).get_mpz_t()));
  const long hi = lo * static_cast<long>(base);
  double dev = 0.0;
  for (long v = lo; v < hi; ++v) {
    const double prob = std::log1p(1.0 / static_cast<double>(v)) / ln_b;
    const auto it = table.freq.find(v);
    const double emp = it == table.freq.end() ? 0.0 : it->second;
    dev = std::max(dev, std::abs(emp - prob));
  }
  return dev;
}

}  // namespace colben

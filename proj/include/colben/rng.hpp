// Counter-based pseudorandom generator. Output i of a stream is a pure
// function of (seed, stream, i): out_i = mix64(key + (i+1)*GAMMA) with
// key = mix64(mix64(seed ^ SALT) + stream). Streams are replayable and
// independent, so parallel trials each own a stream and results never depend
// on scheduling or thread count.
#pragma once

#include <cstdint>

namespace colben {

// Finalizer from SplitMix64: bijective on 64-bit words, good avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSalt = 0x5851f42d4c957f2dULL;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(mix64(seed ^ kSalt) + stream)) {}

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGamma); }

  // Uniform in [0, 1): the top 53 bits scaled by 2^-53.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bit() { return (next_u64() >> 63) != 0; }

  void skip_to(std::uint64_t counter) { counter_ = counter; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace colben

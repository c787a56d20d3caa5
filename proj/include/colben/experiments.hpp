// Experiment harness: ensemble discrepancy studies over seed ranges, the
// exact distribution-match and closed-form identity verifiers, the
// approximation-error census, and report persistence.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "colben/bigint.hpp"

namespace colben {

inline constexpr const char* kCodeVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

struct ExperimentConfig {
  unsigned base = 10;
  std::size_t depth = 0;     // N: iterates per seed
  BigInt seed_bound = 0;     // X: seeds drawn from [1, X]; must be >= 2^N
  std::size_t sample_size = 0;
  bool census = false;       // enumerate all m in [1, 2^N]; needs X = 2^N, N <= 24
  std::uint64_t rng_seed = 0;
  std::string output_path;
  double threshold = 0.0;    // 0 means "use default_threshold(depth)"
  unsigned threads = 0;      // 0 means all cores
};

// 2 * N^{-1/36}; exceeds 1 for every N <= 2^36, which reports state openly.
double default_threshold(std::size_t depth);

struct SeedResult {
  BigInt seed;
  double d_exact = 0.0;   // D of {log_B x_k}
  double d_tilde = 0.0;   // D of the translated two-rotation approximation
  double max_err = 0.0;   // max_k (y_k - y~_k)
  bool exceptional = false;  // d_exact >= threshold
};

struct ThresholdFraction {
  double threshold = 0.0;
  double fraction = 0.0;
};

struct DiscrepancyReport {
  ExperimentConfig config;
  std::string code_version = kCodeVersion;
  double threshold = 0.0;  // resolved value actually applied
  std::vector<SeedResult> per_seed;

  std::size_t count = 0;
  double mean_d_exact = 0.0;
  double mean_d_tilde = 0.0;
  double std_error = 0.0;  // of d_exact
  std::size_t exceptional_count = 0;
  double exceptional_fraction = 0.0;
  double empirical_c_ratio = 0.0;  // exceptional_fraction * N^{1/36}, reported never asserted
  std::vector<ThresholdFraction> extra_fractions;  // at 0.2, 0.3, 0.5
  std::vector<std::uint64_t> histogram;            // of d_exact, bins of width 0.01
};

inline constexpr double kHistogramBinWidth = 0.01;

DiscrepancyReport run_theorem21(const ExperimentConfig& config);

struct VerifyResult {
  bool pass = true;
  std::size_t checked = 0;
  std::string diagnostic;  // empty on pass; counterexample description on fail
};

// Exhaustive exact-rational identity T^k(m) = leading + remainder for
// m <= m_bound, k <= k_bound, plus the parity-vector bijection on [1, 2^N]
// at N = k_bound (k_bound <= 24 for that part).
VerifyResult verify_prop51(std::size_t m_bound, std::size_t k_bound, unsigned q = 3);

// Step-label multiset of the translated approximations over all m in
// [1, 2^N] must equal the full set of 2^N coin-flip paths, exactly.
VerifyResult verify_lemma52(unsigned base, std::size_t depth);

struct Lemma51Row {
  BigInt seed;
  double max_err = 0.0;
  bool member = false;    // in the exceptional set E(N)
  bool bound_ok = true;   // non-members must satisfy max_err <= 2^{1-N/100}
};

struct Lemma51Report {
  unsigned base = 10;
  std::size_t depth = 0;
  std::size_t samples = 0;  // 0 means exhaustive census (depth <= 24)
  std::uint64_t rng_seed = 0;
  bool census = false;

  double bound = 0.0;       // 2^{1-N/100}
  std::size_t count = 0;
  std::size_t member_count = 0;
  double member_fraction = 0.0;
  double member_cap = 0.0;  // 2^{1-0.01N}, the Lemma cardinality cap / 2^N
  bool all_non_members_ok = true;
  std::vector<Lemma51Row> rows;  // kept when count <= 65536
};

Lemma51Report lemma51_census(unsigned base, std::size_t depth, std::size_t samples,
                             std::uint64_t rng_seed, unsigned threads = 0);

enum class ReportFormat { kCsv, kJson };

void write_report(const DiscrepancyReport& report, const std::string& path,
                  ReportFormat format);

DiscrepancyReport read_report_json(const std::string& path);

}  // namespace colben

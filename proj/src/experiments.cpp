#include "colben/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "colben/collatz.hpp"
#include "colben/equidist.hpp"
#include "colben/logspace.hpp"
#include "colben/numeric.hpp"
#include "colben/parallel.hpp"
#include "colben/stochastic.hpp"

namespace colben {

namespace {

constexpr double kExtraThresholds[] = {0.2, 0.3, 0.5};

std::uint32_t pack_bits(const std::vector<std::uint8_t>& bits) {
  std::uint32_t packed = 0;
  for (std::size_t j = 0; j < bits.size(); ++j)
    packed |= static_cast<std::uint32_t>(bits[j] & 1) << j;
  return packed;
}

}  // namespace

double default_threshold(std::size_t depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  return 2.0 * std::pow(static_cast<double>(depth), -1.0 / 36.0);
}

DiscrepancyReport run_theorem21(const ExperimentConfig& config) {
  if (config.base < 2) throw std::invalid_argument("base must be >= 2");
  if (config.depth < 1) throw std::invalid_argument("depth must be >= 1");
  const BigInt two_n = pow2(config.depth);
  if (config.census) {
    if (config.depth > 24) throw std::invalid_argument("census mode is capped at depth <= 24");
    if (config.seed_bound != 0 && config.seed_bound != two_n)
      throw std::invalid_argument("census mode requires seed_bound = 2^depth");
  } else {
    if (config.sample_size < 1) throw std::invalid_argument("sample_size must be >= 1");
    if (config.seed_bound < two_n)
      throw std::invalid_argument("seed_bound must be >= 2^depth");
  }
  if (config.threshold < 0.0 || !std::isfinite(config.threshold))
    throw std::invalid_argument("threshold must be finite and >= 0");

  DiscrepancyReport rep;
  rep.config = config;
  if (rep.config.census) rep.config.seed_bound = two_n;
  rep.threshold = config.threshold > 0.0 ? config.threshold : default_threshold(config.depth);

  const std::size_t count = config.census
                                ? static_cast<std::size_t>(mpz_get_ui(two_n.get_mpz_t()))
                                : config.sample_size;
  rep.per_seed.resize(count);
  const double threshold = rep.threshold;
  parallel_for(count, config.threads, [&](std::size_t i) {
    SeedResult& row = rep.per_seed[i];
    if (config.census) {
      row.seed = static_cast<unsigned long>(i + 1);
    } else {
      CounterRng rng(config.rng_seed, i);
      row.seed = uniform_bigint(rng, config.seed_bound);
    }
    const LogSequence exact = y_sequence(row.seed, config.depth, config.base);
    const LogSequence tilde =
        tilde_y_sequence(row.seed, config.depth, config.base, /*translated=*/true);
    row.d_exact = discrepancy(std::span<const double>(exact.values)).d;
    row.d_tilde = discrepancy(std::span<const double>(tilde.values)).d;
    const std::vector<double> errs = approx_error(row.seed, config.depth, config.base);
    row.max_err = *std::max_element(errs.begin(), errs.end());
    row.exceptional = row.d_exact >= threshold;
  });

  rep.count = count;
  if (count > 0) {
    const double n = static_cast<double>(count);
    rep.mean_d_exact = pairwise_transform_sum<double>(
                           0, count, [&](std::size_t i) { return rep.per_seed[i].d_exact; }) /
                       n;
    rep.mean_d_tilde = pairwise_transform_sum<double>(
                           0, count, [&](std::size_t i) { return rep.per_seed[i].d_tilde; }) /
                       n;
    if (count > 1) {
      const double mean = rep.mean_d_exact;
      const double ss = pairwise_transform_sum<double>(0, count, [&](std::size_t i) {
        const double dev = rep.per_seed[i].d_exact - mean;
        return dev * dev;
      });
      rep.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
  }

  rep.histogram.assign(static_cast<std::size_t>(std::lround(1.0 / kHistogramBinWidth)), 0);
  for (const SeedResult& row : rep.per_seed) {
    if (row.exceptional) ++rep.exceptional_count;
    auto bin = static_cast<std::size_t>(row.d_exact / kHistogramBinWidth);
    if (bin >= rep.histogram.size()) bin = rep.histogram.size() - 1;
    ++rep.histogram[bin];
  }
  if (count > 0)
    rep.exceptional_fraction =
        static_cast<double>(rep.exceptional_count) / static_cast<double>(count);
  rep.empirical_c_ratio =
      rep.exceptional_fraction * std::pow(static_cast<double>(config.depth), 1.0 / 36.0);
  for (double t : kExtraThresholds) {
    std::size_t hits = 0;
    for (const SeedResult& row : rep.per_seed)
      if (row.d_exact >= t) ++hits;
    rep.extra_fractions.push_back(
        {t, count == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(count)});
  }
  return rep;
}

VerifyResult verify_prop51(std::size_t m_bound, std::size_t k_bound, unsigned q) {
  if (m_bound < 1 || k_bound < 1) throw std::invalid_argument("bounds must be >= 1");
  if (k_bound > 24)
    throw std::invalid_argument("bijectivity check is capped at k_bound <= 24");

  VerifyResult res;
  // Part 1: closed-form identity, exact rationals throughout.
  for (std::size_t m = 1; m <= m_bound; ++m) {
    const TrajectoryRecord rec = trajectory(BigInt(static_cast<unsigned long>(m)),
                                            k_bound, q);
    for (std::size_t k = 1; k <= k_bound; ++k) {
      const ClosedFormIterate cf = closed_form(rec.seed, k, q);
      ++res.checked;
      if (cf.leading + cf.remainder != cf.total ||
          cf.total != Rational(rec.iterates[k - 1])) {
        res.pass = false;
        std::ostringstream os;
        os << "closed-form mismatch at m=" << m << " k=" << k;
        res.diagnostic = os.str();
        return res;
      }
    }
  }

  // Part 2: parity map is a bijection [1, 2^N] -> {0,1}^N at N = k_bound,
  // via the explicit inverse.
  const std::size_t n_seeds = std::size_t{1} << k_bound;
  std::vector<bool> seen(n_seeds, false);
  for (std::size_t m = 1; m <= n_seeds; ++m) {
    const ParityVector pv =
        parity_vector(BigInt(static_cast<unsigned long>(m)), k_bound, q);
    const std::uint32_t packed = pack_bits(pv.bits);
    ++res.checked;
    if (seen[packed] || invert_parity(pv, q) != BigInt(static_cast<unsigned long>(m))) {
      res.pass = false;
      std::ostringstream os;
      os << "parity bijection failure at m=" << m;
      res.diagnostic = os.str();
      return res;
    }
    seen[packed] = true;
  }
  return res;
}

VerifyResult verify_lemma52(unsigned base, std::size_t depth) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (depth < 1 || depth > 16) throw std::invalid_argument("depth must be in [1, 16]");

  const ProcessParams params = base_b_params(base);
  const double midpoint = 0.5 * (params.theta1 + params.theta2);

  // Label sequence of each seed's translated approximation, packed to bits
  // (1 = theta1-step). Increments are classified by nearest theta; the gap
  // |theta1 - theta2| = log_B 3 dwarfs accumulation noise.
  const std::size_t n_seeds = std::size_t{1} << depth;
  std::vector<std::uint32_t> from_seeds(n_seeds);
  for (std::size_t m = 1; m <= n_seeds; ++m) {
    const LogSequence tilde = tilde_y_sequence(BigInt(static_cast<unsigned long>(m)),
                                               depth, base, /*translated=*/true);
    std::uint32_t packed = 0;
    double prev = 0.0;
    for (std::size_t k = 0; k < depth; ++k) {
      const double inc = tilde.values[k] - prev;
      prev = tilde.values[k];
      if (inc > midpoint) packed |= std::uint32_t{1} << k;
    }
    from_seeds[m - 1] = packed;
  }

  std::vector<std::uint32_t> from_paths;
  from_paths.reserve(n_seeds);
  for (const Realization& r : enumerate_paths(params, depth))
    from_paths.push_back(pack_bits(r.path));

  std::sort(from_seeds.begin(), from_seeds.end());
  std::sort(from_paths.begin(), from_paths.end());

  VerifyResult res;
  res.checked = n_seeds;
  if (from_seeds != from_paths) {
    res.pass = false;
    const auto [it1, it2] =
        std::mismatch(from_seeds.begin(), from_seeds.end(), from_paths.begin());
    std::ostringstream os;
    os << "label multiset mismatch at sorted position " << (it1 - from_seeds.begin())
       << ": seeds give pattern " << *it1 << ", paths give " << *it2;
    res.diagnostic = os.str();
  }
  return res;
}

Lemma51Report lemma51_census(unsigned base, std::size_t depth, std::size_t samples,
                             std::uint64_t rng_seed, unsigned threads) {
  if (base < 2) throw std::invalid_argument("base must be >= 2");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  const bool census = samples == 0;
  if (census && depth > 24)
    throw std::invalid_argument("exhaustive census is capped at depth <= 24");

  Lemma51Report rep;
  rep.base = base;
  rep.depth = depth;
  rep.samples = samples;
  rep.rng_seed = rng_seed;
  rep.census = census;
  rep.bound = std::exp2(1.0 - static_cast<double>(depth) / 100.0);
  rep.member_cap = std::exp2(1.0 - 0.01 * static_cast<double>(depth));
  rep.count = census ? (std::size_t{1} << depth) : samples;

  std::vector<Lemma51Row> rows(rep.count);
  parallel_for(rep.count, threads, [&](std::size_t i) {
    Lemma51Row& row = rows[i];
    if (census) {
      row.seed = static_cast<unsigned long>(i + 1);
    } else {
      CounterRng rng(rng_seed, i);
      row.seed = uniform_bigint(rng, pow2(depth));
    }
    const std::vector<double> errs = approx_error(row.seed, depth, base);
    row.max_err = *std::max_element(errs.begin(), errs.end());
    row.member = exceptional_member(row.seed, depth);
    row.bound_ok = row.member || row.max_err <= rep.bound;
  });

  for (const Lemma51Row& row : rows) {
    if (row.member) ++rep.member_count;
    if (!row.bound_ok) rep.all_non_members_ok = false;
  }
  rep.member_fraction =
      static_cast<double>(rep.member_count) / static_cast<double>(rep.count);
  if (rep.count <= 65536) rep.rows = std::move(rows);
  return rep;
}

}  // namespace colben

// Report persistence: CSV (row per seed + aggregates footer) and JSON with a
// versioned schema. All floating-point values are serialized in shortest
// round-trip decimal form, so write -> parse reproduces every bit.
#include <fstream>
#include <stdexcept>
#include <string>

#include "colben/experiments.hpp"
#include "colben/numeric.hpp"
#include "json.hpp"

namespace colben {

namespace {

using nlohmann::json;

std::string fmt_double(double v) { return shortest_decimal(v); }

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

void write_csv(const DiscrepancyReport& rep, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "seed,d_exact,d_tilde,max_err,exceptional\n";
  for (const SeedResult& row : rep.per_seed) {
    out << row.seed.get_str() << ',' << fmt_double(row.d_exact) << ','
        << fmt_double(row.d_tilde) << ',' << fmt_double(row.max_err) << ','
        << (row.exceptional ? '1' : '0') << '\n';
  }
  out << "# aggregates\n";
  out << "# schema_version=" << kReportSchemaVersion << '\n';
  out << "# code_version=" << rep.code_version << '\n';
  out << "# base=" << rep.config.base << '\n';
  out << "# depth=" << rep.config.depth << '\n';
  out << "# seed_bound=" << rep.config.seed_bound.get_str() << '\n';
  out << "# sample_size=" << rep.config.sample_size << '\n';
  out << "# census=" << (rep.config.census ? 1 : 0) << '\n';
  out << "# rng_seed=" << rep.config.rng_seed << '\n';
  out << "# threshold=" << fmt_double(rep.threshold) << '\n';
  out << "# count=" << rep.count << '\n';
  out << "# mean_d_exact=" << fmt_double(rep.mean_d_exact) << '\n';
  out << "# mean_d_tilde=" << fmt_double(rep.mean_d_tilde) << '\n';
  out << "# std_error=" << fmt_double(rep.std_error) << '\n';
  out << "# exceptional_count=" << rep.exceptional_count << '\n';
  out << "# exceptional_fraction=" << fmt_double(rep.exceptional_fraction) << '\n';
  out << "# empirical_c_ratio=" << fmt_double(rep.empirical_c_ratio) << '\n';
  for (const ThresholdFraction& tf : rep.extra_fractions)
    out << "# fraction_ge_" << fmt_double(tf.threshold) << '=' << fmt_double(tf.fraction)
        << '\n';
  out << "# histogram_bin_width=" << fmt_double(kHistogramBinWidth) << '\n';
  out << "# histogram=";
  for (std::size_t i = 0; i < rep.histogram.size(); ++i)
    out << (i == 0 ? "" : ",") << rep.histogram[i];
  out << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

json to_json(const DiscrepancyReport& rep) {
  json cfg;
  cfg["base"] = rep.config.base;
  cfg["depth"] = rep.config.depth;
  cfg["seed_bound"] = rep.config.seed_bound.get_str();
  cfg["sample_size"] = rep.config.sample_size;
  cfg["census"] = rep.config.census;
  cfg["rng_seed"] = rep.config.rng_seed;
  cfg["output_path"] = rep.config.output_path;
  cfg["threshold"] = rep.config.threshold;
  cfg["threads"] = rep.config.threads;

  json rows = json::array();
  for (const SeedResult& row : rep.per_seed) {
    json r;
    r["seed"] = row.seed.get_str();
    r["d_exact"] = row.d_exact;
    r["d_tilde"] = row.d_tilde;
    r["max_err"] = row.max_err;
    r["exceptional"] = row.exceptional;
    rows.push_back(std::move(r));
  }

  json extra;
  for (const ThresholdFraction& tf : rep.extra_fractions)
    extra[fmt_double(tf.threshold)] = tf.fraction;

  json agg;
  agg["count"] = rep.count;
  agg["mean_d_exact"] = rep.mean_d_exact;
  agg["mean_d_tilde"] = rep.mean_d_tilde;
  agg["std_error"] = rep.std_error;
  agg["exceptional_count"] = rep.exceptional_count;
  agg["exceptional_fraction"] = rep.exceptional_fraction;
  agg["empirical_c_ratio"] = rep.empirical_c_ratio;
  agg["extra_fractions"] = std::move(extra);
  agg["histogram_bin_width"] = kHistogramBinWidth;
  agg["histogram"] = rep.histogram;

  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["code_version"] = rep.code_version;
  j["threshold"] = rep.threshold;
  j["config"] = std::move(cfg);
  j["per_seed"] = std::move(rows);
  j["aggregates"] = std::move(agg);
  return j;
}

}  // namespace

void write_report(const DiscrepancyReport& report, const std::string& path,
                  ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    write_csv(report, path);
    return;
  }
  std::ofstream out = open_out(path);
  out << to_json(report).dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

DiscrepancyReport read_report_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("bad JSON in " + path + ": " + e.what());
  }

  try {
    DiscrepancyReport rep;
    if (j.at("schema_version").get<int>() != kReportSchemaVersion)
      throw std::runtime_error("unsupported schema_version");
    rep.code_version = j.at("code_version").get<std::string>();
    rep.threshold = j.at("threshold").get<double>();

    const json& cfg = j.at("config");
    rep.config.base = cfg.at("base").get<unsigned>();
    rep.config.depth = cfg.at("depth").get<std::size_t>();
    rep.config.seed_bound = parse_bigint(cfg.at("seed_bound").get<std::string>());
    rep.config.sample_size = cfg.at("sample_size").get<std::size_t>();
    rep.config.census = cfg.at("census").get<bool>();
    rep.config.rng_seed = cfg.at("rng_seed").get<std::uint64_t>();
    rep.config.output_path = cfg.at("output_path").get<std::string>();
    rep.config.threshold = cfg.at("threshold").get<double>();
    rep.config.threads = cfg.at("threads").get<unsigned>();

    for (const json& r : j.at("per_seed")) {
      SeedResult row;
      row.seed = parse_bigint(r.at("seed").get<std::string>());
      row.d_exact = r.at("d_exact").get<double>();
      row.d_tilde = r.at("d_tilde").get<double>();
      row.max_err = r.at("max_err").get<double>();
      row.exceptional = r.at("exceptional").get<bool>();
      rep.per_seed.push_back(std::move(row));
    }

    const json& agg = j.at("aggregates");
    rep.count = agg.at("count").get<std::size_t>();
    rep.mean_d_exact = agg.at("mean_d_exact").get<double>();
    rep.mean_d_tilde = agg.at("mean_d_tilde").get<double>();
    rep.std_error = agg.at("std_error").get<double>();
    rep.exceptional_count = agg.at("exceptional_count").get<std::size_t>();
    rep.exceptional_fraction = agg.at("exceptional_fraction").get<double>();
    rep.empirical_c_ratio = agg.at("empirical_c_ratio").get<double>();
    for (const auto& [key, value] : agg.at("extra_fractions").items())
      rep.extra_fractions.push_back({std::stod(key), value.get<double>()});
    rep.histogram = agg.at("histogram").get<std::vector<std::uint64_t>>();
    return rep;
  } catch (const json::exception& e) {
    throw std::runtime_error("bad report schema in " + path + ": " + e.what());
  }
}

}  // namespace colben

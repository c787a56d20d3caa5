#include "colben/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "colben/benford.hpp"
#include "colben/bigint.hpp"
#include "colben/collatz.hpp"
#include "colben/diophantine.hpp"
#include "colben/equidist.hpp"
#include "colben/experiments.hpp"
#include "colben/logspace.hpp"
#include "colben/numeric.hpp"
#include "colben/stochastic.hpp"
#include "json.hpp"

namespace colben {

namespace {

using nlohmann::json;

std::string fd(double v) { return shortest_decimal(v); }

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad number in list: " + tok);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty value list");
  return out;
}

std::vector<long> parse_long_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    const long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("bad integer in list: " + tok);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

ParityVector parse_bit_pattern(const std::string& s) {
  ParityVector pv;
  pv.bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit pattern must be 0s and 1s");
    pv.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  if (pv.bits.empty()) throw std::invalid_argument("bit pattern must be non-empty");
  return pv;
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

std::string digits_to_string(const DigitBlock& block) {
  std::string s;
  for (std::size_t i = 0; i < block.digits.size(); ++i) {
    if (i) s.push_back('.');
    s += std::to_string(block.digits[i]);
  }
  return s;
}

json json_header(const char* op) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["code_version"] = kCodeVersion;
  j["op"] = op;
  return j;
}

void write_json_doc(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

struct OutSpec {
  std::string path;
  std::string format = "csv";
};

void add_out_opts(CLI::App* sub, OutSpec& spec) {
  sub->add_option("--out", spec.path, "write a machine-readable document to this path")
      ->envname("COLBEN_OUT");
  sub->add_option("--format", spec.format, "file format for --out: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("COLBEN_FORMAT");
}

// JSON export shared by all subcommands except run-theorem21 (whose CSV goes
// through write_report instead).
void emit_json(const OutSpec& spec, const json& j) {
  if (spec.path.empty()) return;
  if (spec.format != "json")
    throw std::invalid_argument(
        "--out for this subcommand requires --format json (csv files are "
        "produced by run-theorem21 only)");
  write_json_doc(spec.path, j);
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Flat key=value config mirroring ExperimentConfig. All fields required
// except threshold; sample_size admits the literal "census".
void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("bad config line (want key=value): " + stripped);
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    seen.insert(key);
    if (key == "base") {
      cfg.base = static_cast<unsigned>(std::stoul(value));
    } else if (key == "depth") {
      cfg.depth = std::stoull(value);
    } else if (key == "seed_bound") {
      cfg.seed_bound = parse_bigint(value);
    } else if (key == "sample_size") {
      if (value == "census") {
        cfg.census = true;
        cfg.sample_size = 0;
      } else {
        cfg.census = false;
        cfg.sample_size = std::stoull(value);
      }
    } else if (key == "rng_seed") {
      cfg.rng_seed = std::stoull(value);
    } else if (key == "output_path") {
      cfg.output_path = value;
    } else if (key == "threshold") {
      cfg.threshold = std::stod(value);
    } else {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }
  for (const char* required :
       {"base", "depth", "seed_bound", "sample_size", "rng_seed", "output_path"})
    if (!seen.count(required))
      throw std::invalid_argument(std::string("config missing required key: ") + required);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact 3x+1 iterate algebra, discrepancy statistics, and Benford analysis",
               "colben"};
  app.require_subcommand(1);

  // trajectory
  auto* sub_traj = app.add_subcommand("trajectory", "iterate the map and print each value");
  std::string traj_seed;
  std::size_t traj_steps = 1;
  unsigned traj_q = 3;
  OutSpec traj_out;
  sub_traj->add_option("--seed", traj_seed, "start value (decimal or 2^k)")
      ->required()
      ->envname("COLBEN_SEED");
  sub_traj->add_option("--steps", traj_steps, "number of iterations")
      ->required()
      ->envname("COLBEN_STEPS");
  sub_traj->add_option("--q", traj_q, "odd multiplier (default 3)")->envname("COLBEN_Q");
  add_out_opts(sub_traj, traj_out);

  // parity
  auto* sub_parity = app.add_subcommand("parity", "print the parity vector of a seed");
  std::string parity_seed;
  std::size_t parity_bits = 1;
  unsigned parity_q = 3;
  OutSpec parity_out;
  sub_parity->add_option("--seed", parity_seed, "start value (decimal or 2^k)")
      ->required()
      ->envname("COLBEN_SEED");
  sub_parity->add_option("--bits", parity_bits, "number of parity bits")
      ->required()
      ->envname("COLBEN_BITS");
  sub_parity->add_option("--q", parity_q, "odd multiplier (default 3)")->envname("COLBEN_Q");
  add_out_opts(sub_parity, parity_out);

  // invert-parity
  auto* sub_invert =
      app.add_subcommand("invert-parity", "find the seed in [1,2^N] with a given parity vector");
  std::string invert_bits;
  unsigned invert_q = 3;
  OutSpec invert_out;
  sub_invert->add_option("--bits", invert_bits, "parity pattern, e.g. 110")
      ->required()
      ->envname("COLBEN_BITS");
  sub_invert->add_option("--q", invert_q, "odd multiplier (default 3)")->envname("COLBEN_Q");
  add_out_opts(sub_invert, invert_out);

  // closed-form
  auto* sub_closed =
      app.add_subcommand("closed-form", "leading term and remainder of the k-th iterate");
  std::string closed_seed;
  std::size_t closed_k = 1;
  unsigned closed_q = 3;
  OutSpec closed_out;
  sub_closed->add_option("--seed", closed_seed, "start value (decimal or 2^k)")
      ->required()
      ->envname("COLBEN_SEED");
  sub_closed->add_option("--k", closed_k, "iterate index")->required()->envname("COLBEN_K");
  sub_closed->add_option("--q", closed_q, "odd multiplier (default 3)")->envname("COLBEN_Q");
  add_out_opts(sub_closed, closed_out);

  // discrepancy
  auto* sub_disc = app.add_subcommand("discrepancy", "closed-interval discrepancy of a set");
  std::string disc_values;
  std::string disc_file;
  OutSpec disc_out;
  sub_disc->add_option("--values", disc_values, "comma-separated reals")
      ->envname("COLBEN_VALUES");
  sub_disc->add_option("--values-file", disc_file, "whitespace-separated reals from a file")
      ->envname("COLBEN_VALUES_FILE");
  add_out_opts(sub_disc, disc_out);

  // simulate
  auto* sub_sim = app.add_subcommand("simulate", "draw one two-rotation realization");
  double sim_t1 = 0.0, sim_t2 = 0.0, sim_y0 = 0.0;
  std::size_t sim_steps = 1;
  std::uint64_t sim_seed = 0, sim_stream = 0;
  OutSpec sim_out;
  sub_sim->add_option("--theta1", sim_t1, "step on a 1-bit")->required()->envname("COLBEN_THETA1");
  sub_sim->add_option("--theta2", sim_t2, "step on a 0-bit")->required()->envname("COLBEN_THETA2");
  sub_sim->add_option("--y0", sim_y0, "start value (default 0)")->envname("COLBEN_Y0");
  sub_sim->add_option("--steps", sim_steps, "number of steps")->required()->envname("COLBEN_STEPS");
  sub_sim->add_option("--rng-seed", sim_seed, "RNG seed")->envname("COLBEN_RNG_SEED");
  sub_sim->add_option("--stream", sim_stream, "RNG stream index")->envname("COLBEN_STREAM");
  add_out_opts(sub_sim, sim_out);

  // enumerate
  auto* sub_enum = app.add_subcommand("enumerate", "all 2^N two-rotation paths, D statistics");
  double enum_t1 = 0.0, enum_t2 = 0.0, enum_y0 = 0.0;
  std::size_t enum_steps = 1;
  OutSpec enum_out;
  sub_enum->add_option("--theta1", enum_t1, "step on a 1-bit")->required()->envname("COLBEN_THETA1");
  sub_enum->add_option("--theta2", enum_t2, "step on a 0-bit")->required()->envname("COLBEN_THETA2");
  sub_enum->add_option("--y0", enum_y0, "start value (default 0)")->envname("COLBEN_Y0");
  sub_enum->add_option("--steps", enum_steps, "path length (<= 24)")
      ->required()
      ->envname("COLBEN_STEPS");
  add_out_opts(sub_enum, enum_out);

  // moments
  auto* sub_mom = app.add_subcommand("moments", "exact |U_N(k)|^2 expectation and its bound");
  double mom_t1 = 0.0, mom_t2 = 0.0;
  std::size_t mom_steps = 1;
  std::string mom_ks = "1";
  OutSpec mom_out;
  sub_mom->add_option("--theta1", mom_t1, "step on a 1-bit")->required()->envname("COLBEN_THETA1");
  sub_mom->add_option("--theta2", mom_t2, "step on a 0-bit")->required()->envname("COLBEN_THETA2");
  sub_mom->add_option("--steps", mom_steps, "N")->required()->envname("COLBEN_STEPS");
  sub_mom->add_option("--k", mom_ks, "comma-separated frequencies (default 1)")
      ->envname("COLBEN_K");
  add_out_opts(sub_mom, mom_out);

  // dio-scan
  auto* sub_dio = app.add_subcommand("dio-scan", "simultaneous approximation quality scan");
  double dio_t1 = 0.0, dio_t2 = 0.0, dio_alpha = 7.616;
  std::uint64_t dio_kmax = 1;
  bool dio_trace = false;
  OutSpec dio_out;
  sub_dio->add_option("--theta1", dio_t1, "first rotation")->required()->envname("COLBEN_THETA1");
  sub_dio->add_option("--theta2", dio_t2, "second rotation")->required()->envname("COLBEN_THETA2");
  sub_dio->add_option("--k-max", dio_kmax, "scan upper limit")->required()->envname("COLBEN_K_MAX");
  sub_dio->add_option("--alpha", dio_alpha, "quality exponent (default 7.616)")
      ->envname("COLBEN_ALPHA");
  sub_dio->add_flag("--trace", dio_trace, "keep the per-k distance trace")
      ->envname("COLBEN_TRACE");
  add_out_opts(sub_dio, dio_out);

  // lin-form
  auto* sub_lin = app.add_subcommand("lin-form", "scan |u0 + u1 ln2 + u2 ln3| minima");
  long lin_umax = 1;
  OutSpec lin_out;
  sub_lin->add_option("--u-max", lin_umax, "height bound on (u1, u2)")
      ->required()
      ->envname("COLBEN_U_MAX");
  add_out_opts(sub_lin, lin_out);

  // benford
  auto* sub_ben = app.add_subcommand("benford", "digit-block statistics of a trajectory");
  std::string ben_seed;
  std::size_t ben_steps = 1, ben_digits = 1;
  unsigned ben_base = 10, ben_q = 3;
  OutSpec ben_out;
  sub_ben->add_option("--seed", ben_seed, "start value (decimal or 2^k)")
      ->required()
      ->envname("COLBEN_SEED");
  sub_ben->add_option("--steps", ben_steps, "number of iterates")
      ->required()
      ->envname("COLBEN_STEPS");
  sub_ben->add_option("--base", ben_base, "digit base (default 10)")->envname("COLBEN_BASE");
  sub_ben->add_option("--digits", ben_digits, "leading digits per block (default 1)")
      ->envname("COLBEN_DIGITS");
  sub_ben->add_option("--q", ben_q, "odd multiplier (default 3)")->envname("COLBEN_Q");
  add_out_opts(sub_ben, ben_out);

  // verify-prop51
  auto* sub_p51 = app.add_subcommand("verify-prop51", "exhaustive closed-form identity check");
  std::size_t p51_m = 1, p51_k = 1;
  unsigned p51_q = 3;
  OutSpec p51_out;
  sub_p51->add_option("--m-bound", p51_m, "check all seeds m <= this")
      ->required()
      ->envname("COLBEN_M_BOUND");
  sub_p51->add_option("--k-bound", p51_k, "check all iterates k <= this (<= 24)")
      ->required()
      ->envname("COLBEN_K_BOUND");
  sub_p51->add_option("--q", p51_q, "odd multiplier (default 3)")->envname("COLBEN_Q");
  add_out_opts(sub_p51, p51_out);

  // verify-lemma52
  auto* sub_l52 = app.add_subcommand("verify-lemma52", "step-label multiset equality check");
  unsigned l52_base = 10;
  std::size_t l52_depth = 1;
  OutSpec l52_out;
  sub_l52->add_option("--base", l52_base, "log base (default 10)")->envname("COLBEN_BASE");
  sub_l52->add_option("--depth", l52_depth, "path length N (<= 16)")
      ->required()
      ->envname("COLBEN_DEPTH");
  add_out_opts(sub_l52, l52_out);

  // lemma51-census
  auto* sub_l51 = app.add_subcommand("lemma51-census", "approximation-error census over seeds");
  unsigned l51_base = 10, l51_threads = 0;
  std::size_t l51_depth = 1, l51_samples = 0;
  std::uint64_t l51_seed = 0;
  OutSpec l51_out;
  sub_l51->add_option("--base", l51_base, "log base (default 10)")->envname("COLBEN_BASE");
  sub_l51->add_option("--depth", l51_depth, "iterates per seed")
      ->required()
      ->envname("COLBEN_DEPTH");
  sub_l51->add_option("--samples", l51_samples, "sample count; 0 = exhaustive census")
      ->envname("COLBEN_SAMPLES");
  sub_l51->add_option("--rng-seed", l51_seed, "RNG seed")->envname("COLBEN_RNG_SEED");
  sub_l51->add_option("--threads", l51_threads, "worker threads (default: all cores)")
      ->envname("COLBEN_THREADS");
  add_out_opts(sub_l51, l51_out);

  // run-theorem21
  auto* sub_t21 = app.add_subcommand("run-theorem21", "ensemble discrepancy study");
  std::string t21_config, t21_seed_bound;
  unsigned t21_base = 10, t21_threads = 0;
  std::size_t t21_depth = 0, t21_samples = 0;
  bool t21_census = false;
  std::uint64_t t21_seed = 0;
  double t21_threshold = 0.0;
  OutSpec t21_out;
  sub_t21->add_option("--config", t21_config, "flat key=value config file")
      ->envname("COLBEN_CONFIG");
  sub_t21->add_option("--base", t21_base, "log base (default 10)")->envname("COLBEN_BASE");
  sub_t21->add_option("--depth", t21_depth, "iterates per seed")->envname("COLBEN_DEPTH");
  sub_t21->add_option("--seed-bound", t21_seed_bound, "X: seeds drawn from [1, X]")
      ->envname("COLBEN_SEED_BOUND");
  sub_t21->add_option("--samples", t21_samples, "number of sampled seeds")
      ->envname("COLBEN_SAMPLES");
  sub_t21->add_flag("--census", t21_census, "enumerate every seed in [1, 2^depth]")
      ->envname("COLBEN_CENSUS");
  sub_t21->add_option("--rng-seed", t21_seed, "RNG seed")->envname("COLBEN_RNG_SEED");
  sub_t21->add_option("--threshold", t21_threshold,
                      "exceptional threshold (default 2*N^{-1/36})")
      ->envname("COLBEN_THRESHOLD");
  sub_t21->add_option("--threads", t21_threads, "worker threads (default: all cores)")
      ->envname("COLBEN_THREADS");
  add_out_opts(sub_t21, t21_out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sub_traj->parsed()) {
      const TrajectoryRecord rec = trajectory(parse_bigint(traj_seed), traj_steps, traj_q);
      for (const BigInt& x : rec.iterates) out << x.get_str() << '\n';
      json j = json_header("trajectory");
      j["seed"] = rec.seed.get_str();
      j["q"] = rec.q;
      j["steps"] = traj_steps;
      json iter = json::array();
      for (const BigInt& x : rec.iterates) iter.push_back(x.get_str());
      j["iterates"] = std::move(iter);
      j["parity"] = bits_to_string(rec.parity.bits);
      emit_json(traj_out, j);
      return 0;
    }

    if (sub_parity->parsed()) {
      const ParityVector pv = parity_vector(parse_bigint(parity_seed), parity_bits, parity_q);
      out << bits_to_string(pv.bits) << '\n';
      json j = json_header("parity");
      j["seed"] = parity_seed;
      j["q"] = parity_q;
      j["bits"] = bits_to_string(pv.bits);
      emit_json(parity_out, j);
      return 0;
    }

    if (sub_invert->parsed()) {
      const ParityVector pv = parse_bit_pattern(invert_bits);
      const BigInt m = invert_parity(pv, invert_q);
      out << m.get_str() << '\n';
      json j = json_header("invert-parity");
      j["bits"] = invert_bits;
      j["q"] = invert_q;
      j["residue"] = m.get_str();
      j["modulus"] = pow2(pv.size()).get_str();
      emit_json(invert_out, j);
      return 0;
    }

    if (sub_closed->parsed()) {
      const ClosedFormIterate cf = closed_form(parse_bigint(closed_seed), closed_k, closed_q);
      out << "leading " << cf.leading.get_str() << '\n';
      out << "remainder " << cf.remainder.get_str() << '\n';
      out << "total " << cf.total.get_str() << '\n';
      json j = json_header("closed-form");
      j["seed"] = closed_seed;
      j["k"] = closed_k;
      j["q"] = closed_q;
      j["leading"] = cf.leading.get_str();
      j["remainder"] = cf.remainder.get_str();
      j["total"] = cf.total.get_str();
      emit_json(closed_out, j);
      return 0;
    }

    if (sub_disc->parsed()) {
      if (disc_values.empty() == disc_file.empty())
        throw std::invalid_argument("give exactly one of --values or --values-file");
      SampleSet set;
      if (!disc_values.empty()) {
        set.values = parse_double_list(disc_values);
      } else {
        std::ifstream in(disc_file);
        if (!in) throw std::runtime_error("cannot open: " + disc_file);
        double v;
        while (in >> v) set.values.push_back(v);
        if (set.values.empty()) throw std::invalid_argument("no values in " + disc_file);
      }
      const DiscrepancyValue dv = discrepancy(set);
      out << fd(dv.d) << '\n';
      json j = json_header("discrepancy");
      j["n"] = set.size();
      j["d"] = dv.d;
      j["d_star"] = dv.d_star;
      emit_json(disc_out, j);
      return 0;
    }

    if (sub_sim->parsed()) {
      const ProcessParams params{sim_t1, sim_t2, sim_y0};
      CounterRng rng(sim_seed, sim_stream);
      const Realization r = realize(params, sim_steps, rng);
      for (double v : r.values) out << fd(v) << '\n';
      const double d = discrepancy(std::span<const double>(r.values)).d;
      out << "D " << fd(d) << '\n';
      json j = json_header("simulate");
      j["theta1"] = sim_t1;
      j["theta2"] = sim_t2;
      j["y0"] = sim_y0;
      j["steps"] = sim_steps;
      j["rng_seed"] = sim_seed;
      j["stream"] = sim_stream;
      j["path"] = bits_to_string(r.path);
      j["values"] = r.values;
      j["d"] = d;
      emit_json(sim_out, j);
      return 0;
    }

    if (sub_enum->parsed()) {
      const ProcessParams params{enum_t1, enum_t2, enum_y0};
      const std::vector<Realization> paths = enumerate_paths(params, enum_steps);
      std::vector<double> ds(paths.size());
      std::vector<double> scratch;
      for (std::size_t i = 0; i < paths.size(); ++i) {
        scratch = paths[i].values;
        ds[i] = detail::discrepancy_sorted_scratch(scratch).d;
      }
      const double mean = pairwise_sum(ds) / static_cast<double>(ds.size());
      const auto [lo, hi] = std::minmax_element(ds.begin(), ds.end());
      out << "paths " << paths.size() << '\n';
      out << "mean_d " << fd(mean) << '\n';
      out << "min_d " << fd(*lo) << '\n';
      out << "max_d " << fd(*hi) << '\n';
      json j = json_header("enumerate");
      j["theta1"] = enum_t1;
      j["theta2"] = enum_t2;
      j["y0"] = enum_y0;
      j["steps"] = enum_steps;
      j["paths"] = paths.size();
      j["mean_d"] = mean;
      j["min_d"] = *lo;
      j["max_d"] = *hi;
      if (enum_steps <= 12) {
        json rows = json::array();
        for (std::size_t i = 0; i < paths.size(); ++i) {
          json row;
          row["path"] = bits_to_string(paths[i].path);
          row["d"] = ds[i];
          rows.push_back(std::move(row));
        }
        j["per_path"] = std::move(rows);
      }
      emit_json(enum_out, j);
      return 0;
    }

    if (sub_mom->parsed()) {
      const ProcessParams params{mom_t1, mom_t2, 0.0};
      json rows = json::array();
      for (long k : parse_long_list(mom_ks)) {
        const double exact = second_moment_exact(params, k, mom_steps);
        out << "k " << k << " exact " << fd(exact) << " bound ";
        json row;
        row["k"] = k;
        row["exact"] = exact;
        try {
          const double bound = second_moment_bound(params, k, mom_steps);
          out << fd(bound) << '\n';
          row["bound"] = bound;
        } catch (const std::domain_error&) {
          out << "degenerate\n";
          row["bound"] = nullptr;
        }
        rows.push_back(std::move(row));
      }
      json j = json_header("moments");
      j["theta1"] = mom_t1;
      j["theta2"] = mom_t2;
      j["steps"] = mom_steps;
      j["moments"] = std::move(rows);
      emit_json(mom_out, j);
      return 0;
    }

    if (sub_dio->parsed()) {
      const DioScanReport rep = dio_scan_2d(dio_t1, dio_t2, dio_kmax, dio_alpha, dio_trace);
      out << "worst_k " << rep.worst_k << '\n';
      out << "worst_quality " << fd(rep.worst_quality) << '\n';
      json j = json_header("dio-scan");
      j["theta1"] = dio_t1;
      j["theta2"] = dio_t2;
      j["k_max"] = rep.k_max;
      j["alpha"] = rep.alpha;
      j["worst_k"] = rep.worst_k;
      j["worst_quality"] = rep.worst_quality;
      if (dio_trace) {
        json rows = json::array();
        for (const DioTraceRow& row : rep.trace) {
          json r;
          r["k"] = row.k;
          r["dist1"] = row.dist1;
          r["dist2"] = row.dist2;
          rows.push_back(std::move(r));
        }
        j["trace"] = std::move(rows);
      }
      emit_json(dio_out, j);
      return 0;
    }

    if (sub_lin->parsed()) {
      const LinFormScan scan = lin_form_scan(lin_umax);
      out << "min_value " << fd(scan.min_value) << '\n';
      out << "argmin " << scan.u0 << ' ' << scan.u1 << ' ' << scan.u2 << '\n';
      out << "empirical_constant " << fd(scan.empirical_constant) << '\n';
      json j = json_header("lin-form");
      j["u_max"] = scan.u_max;
      j["u0"] = scan.u0;
      j["u1"] = scan.u1;
      j["u2"] = scan.u2;
      j["min_value"] = scan.min_value;
      j["empirical_constant"] = scan.empirical_constant;
      emit_json(lin_out, j);
      return 0;
    }

    if (sub_ben->parsed()) {
      const BigInt m = parse_bigint(ben_seed);
      const TrajectoryRecord rec = trajectory(m, ben_steps, ben_q);
      const BlockFrequencies table = empirical_block_freq(rec.iterates, ben_base, ben_digits);
      const double dev = benford_deviation(rec.iterates, ben_base, ben_digits);
      const LogSequence logs = y_sequence(m, ben_steps, ben_base, ben_q);
      const double d_log = discrepancy(std::span<const double>(logs.values)).d;
      json rows = json::array();
      for (const auto& [value, freq] : table.freq) {
        const DigitBlock block = block_from_value(value, ben_base, ben_digits);
        const double prob = benford_prob(block);
        out << "block " << value << " digits " << digits_to_string(block) << " freq "
            << fd(freq) << " prob " << fd(prob) << '\n';
        json row;
        row["value"] = value;
        row["digits"] = digits_to_string(block);
        row["freq"] = freq;
        row["prob"] = prob;
        rows.push_back(std::move(row));
      }
      out << "deviation " << fd(dev) << '\n';
      out << "d_log " << fd(d_log) << '\n';
      json j = json_header("benford");
      j["seed"] = ben_seed;
      j["steps"] = ben_steps;
      j["base"] = ben_base;
      j["digits"] = ben_digits;
      j["q"] = ben_q;
      j["blocks"] = std::move(rows);
      j["deviation"] = dev;
      j["d_log"] = d_log;
      emit_json(ben_out, j);
      return 0;
    }

    if (sub_p51->parsed()) {
      const VerifyResult res = verify_prop51(p51_m, p51_k, p51_q);
      out << (res.pass ? "PASS" : "FAIL") << " checked=" << res.checked;
      if (!res.pass) out << ' ' << res.diagnostic;
      out << '\n';
      json j = json_header("verify-prop51");
      j["m_bound"] = p51_m;
      j["k_bound"] = p51_k;
      j["q"] = p51_q;
      j["pass"] = res.pass;
      j["checked"] = res.checked;
      j["diagnostic"] = res.diagnostic;
      emit_json(p51_out, j);
      return res.pass ? 0 : 1;
    }

    if (sub_l52->parsed()) {
      const VerifyResult res = verify_lemma52(l52_base, l52_depth);
      out << (res.pass ? "PASS" : "FAIL") << " checked=" << res.checked;
      if (!res.pass) out << ' ' << res.diagnostic;
      out << '\n';
      json j = json_header("verify-lemma52");
      j["base"] = l52_base;
      j["depth"] = l52_depth;
      j["pass"] = res.pass;
      j["checked"] = res.checked;
      j["diagnostic"] = res.diagnostic;
      emit_json(l52_out, j);
      return res.pass ? 0 : 1;
    }

    if (sub_l51->parsed()) {
      const Lemma51Report rep =
          lemma51_census(l51_base, l51_depth, l51_samples, l51_seed, l51_threads);
      out << "count " << rep.count << '\n';
      out << "census " << (rep.census ? 1 : 0) << '\n';
      out << "bound " << fd(rep.bound) << '\n';
      out << "member_count " << rep.member_count << '\n';
      out << "member_fraction " << fd(rep.member_fraction) << '\n';
      out << "member_cap " << fd(rep.member_cap) << '\n';
      out << (rep.all_non_members_ok ? "PASS" : "FAIL all_non_members_ok=false") << '\n';
      json j = json_header("lemma51-census");
      j["base"] = rep.base;
      j["depth"] = rep.depth;
      j["samples"] = rep.samples;
      j["rng_seed"] = rep.rng_seed;
      j["census"] = rep.census;
      j["bound"] = rep.bound;
      j["count"] = rep.count;
      j["member_count"] = rep.member_count;
      j["member_fraction"] = rep.member_fraction;
      j["member_cap"] = rep.member_cap;
      j["all_non_members_ok"] = rep.all_non_members_ok;
      if (!rep.rows.empty()) {
        json rows = json::array();
        for (const Lemma51Row& row : rep.rows) {
          json r;
          r["seed"] = row.seed.get_str();
          r["max_err"] = row.max_err;
          r["member"] = row.member;
          r["bound_ok"] = row.bound_ok;
          rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
      }
      emit_json(l51_out, j);
      return rep.all_non_members_ok ? 0 : 1;
    }

    if (sub_t21->parsed()) {
      ExperimentConfig cfg;
      if (!t21_config.empty()) apply_config_file(t21_config, cfg);
      if (sub_t21->count("--base")) cfg.base = t21_base;
      if (sub_t21->count("--depth")) cfg.depth = t21_depth;
      if (sub_t21->count("--seed-bound")) cfg.seed_bound = parse_bigint(t21_seed_bound);
      if (sub_t21->count("--samples")) {
        cfg.sample_size = t21_samples;
        if (!sub_t21->count("--census")) cfg.census = false;
      }
      if (sub_t21->count("--census")) cfg.census = t21_census;
      if (sub_t21->count("--rng-seed")) cfg.rng_seed = t21_seed;
      if (sub_t21->count("--threshold")) cfg.threshold = t21_threshold;
      cfg.threads = t21_threads;
      if (!t21_out.path.empty()) cfg.output_path = t21_out.path;

      const DiscrepancyReport rep = run_theorem21(cfg);
      out << "count " << rep.count << '\n';
      out << "mean_d_exact " << fd(rep.mean_d_exact) << '\n';
      out << "mean_d_tilde " << fd(rep.mean_d_tilde) << '\n';
      out << "std_error " << fd(rep.std_error) << '\n';
      out << "threshold " << fd(rep.threshold);
      if (rep.threshold > 1.0)
        out << " (exceeds 1: bound vacuous at this depth, every D <= 1)";
      out << '\n';
      out << "exceptional_count " << rep.exceptional_count << '\n';
      out << "exceptional_fraction " << fd(rep.exceptional_fraction) << '\n';
      out << "empirical_c_ratio " << fd(rep.empirical_c_ratio) << '\n';
      for (const ThresholdFraction& tf : rep.extra_fractions)
        out << "fraction_ge_" << fd(tf.threshold) << ' ' << fd(tf.fraction) << '\n';

      if (!rep.config.output_path.empty()) {
        const ReportFormat format =
            t21_out.format == "json" ? ReportFormat::kJson : ReportFormat::kCsv;
        write_report(rep, rep.config.output_path, format);
        out << "report " << rep.config.output_path << '\n';
      }
      return 0;
    }

    err << "error: no subcommand dispatched\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace colben

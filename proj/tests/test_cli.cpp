#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "colben/cli.hpp"
#include "colben/experiments.hpp"
#include "colben/stochastic.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace colben;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Value of the first stdout line starting with "<key> ".
std::string field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
  return {};
}

double num_field(const std::string& text, const std::string& key) {
  const std::string v = field(text, key);
  REQUIRE_FALSE(v.empty());
  return std::stod(v);
}

std::string temp_file(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("trajectory prints one iterate per line") {
  const CliRun r = run({"trajectory", "--seed", "3", "--steps", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "5\n8\n4\n2\n");
  CHECK(r.err.empty());

  // Power-of-two seed syntax.
  const CliRun p = run({"trajectory", "--seed", "2^5", "--steps", "2"});
  CHECK(p.code == 0);
  CHECK(p.out == "16\n8\n");

  const CliRun q5 = run({"trajectory", "--seed", "1", "--steps", "2", "--q", "5"});
  CHECK(q5.out == "3\n8\n");
}

TEST_CASE("parity and invert-parity are inverse views") {
  const CliRun r = run({"parity", "--seed", "3", "--bits", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "1100\n");

  const CliRun inv = run({"invert-parity", "--bits", "110"});
  CHECK(inv.code == 0);
  CHECK(inv.out == "3\n");

  const CliRun back = run({"parity", "--seed", "3", "--bits", "3"});
  CHECK(back.out == "110\n");

  const CliRun bad = run({"invert-parity", "--bits", "1x0"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("bit pattern") != std::string::npos);
}

TEST_CASE("closed-form prints the three exact rationals") {
  const CliRun r = run({"closed-form", "--seed", "3", "--k", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "leading 27/4\nremainder 5/4\ntotal 8\n");
}

TEST_CASE("discrepancy accepts inline values or a file, not both") {
  const CliRun one = run({"discrepancy", "--values", "0.5"});
  CHECK(one.code == 0);
  CHECK(one.out == "1\n");

  const std::string path = temp_file("disc_vals.txt");
  { std::ofstream f(path); f << "0.1 0.3\n0.5 0.7 0.9\n"; }
  const CliRun file = run({"discrepancy", "--values-file", path});
  CHECK(file.code == 0);
  CHECK(std::stod(file.out) == doctest::Approx(0.2).epsilon(1e-12));
  std::filesystem::remove(path);

  const CliRun both = run({"discrepancy", "--values", "0.5", "--values-file", path});
  CHECK(both.code == 2);
  const CliRun neither = run({"discrepancy"});
  CHECK(neither.code == 2);
  const CliRun missing = run({"discrepancy", "--values-file", "/no/such/file"});
  CHECK(missing.code == 1);  // runtime failure, not a usage error
}

TEST_CASE("simulate is reproducible per seed and stream") {
  const std::vector<std::string> args = {"simulate", "--theta1", "0.17609125905568124",
                                         "--theta2", "-0.3010299956639812",
                                         "--steps", "32", "--rng-seed", "9"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);  // bitwise reproducible

  std::vector<std::string> other = args;
  other.push_back("--stream");
  other.push_back("1");
  const CliRun c = run(other);
  CHECK(c.out != a.out);

  // 32 value lines plus the trailing D line.
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 33);
  CHECK(num_field(a.out, "D") > 0.0);
}

TEST_CASE("enumerate reports path-ensemble discrepancy statistics") {
  const CliRun r = run({"enumerate", "--theta1", "0.17609125905568124", "--theta2",
                        "-0.3010299956639812", "--steps", "10"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "paths") == "1024");
  const double mean = num_field(r.out, "mean_d");
  // Cross-check against the library.
  const std::vector<Realization> paths = enumerate_paths(base_b_params(10), 10);
  double acc = 0.0;
  for (const Realization& p : paths) acc += discrepancy(SampleSet{p.values}).d;
  acc /= static_cast<double>(paths.size());
  CHECK(mean == doctest::Approx(acc).epsilon(1e-12));
  CHECK(num_field(r.out, "min_d") <= mean);
  CHECK(num_field(r.out, "max_d") >= mean);
}

TEST_CASE("moments prints exact and bound per frequency, flagging degeneracy") {
  const CliRun r = run({"moments", "--theta1", "0.17609125905568124", "--theta2",
                        "-0.3010299956639812", "--steps", "100", "--k", "1,2"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line1, line2;
  std::getline(in, line1);
  std::getline(in, line2);
  CHECK(line1.rfind("k 1 exact ", 0) == 0);
  CHECK(line2.rfind("k 2 exact ", 0) == 0);
  // Frozen bound value for k=1 (the reciprocal-distance formula).
  CHECK(line1.find("bound 922.1845802743836") != std::string::npos);

  const CliRun d = run({"moments", "--theta1", "0.5", "--theta2", "0.25", "--steps",
                        "10", "--k", "4"});
  CHECK(d.code == 0);
  CHECK(d.out.find("k 4 exact 100 bound degenerate") != std::string::npos);
}

TEST_CASE("dio-scan reproduces the frozen base-10 anchor") {
  const CliRun r = run({"dio-scan", "--theta1", "0.17609125905568124", "--theta2",
                        "-0.3010299956639812", "--k-max", "1000"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "worst_k") == "1");
  CHECK(num_field(r.out, "worst_quality") ==
        doctest::Approx(0.3010299956639812).epsilon(1e-14));
}

TEST_CASE("lin-form output reconstructs its own minimum") {
  const CliRun r = run({"lin-form", "--u-max", "1"});
  CHECK(r.code == 0);
  const double mv = num_field(r.out, "min_value");
  CHECK(mv == doctest::Approx(std::log(3.0) - 1.0).epsilon(1e-13));
  std::istringstream arg(field(r.out, "argmin"));
  long u0 = 0, u1 = 0, u2 = 0;
  arg >> u0 >> u1 >> u2;
  CHECK(std::max(std::abs(u1), std::abs(u2)) == 1);
  const double recon = std::abs(static_cast<double>(u0) +
                                static_cast<double>(u1) * std::log(2.0) +
                                static_cast<double>(u2) * std::log(3.0));
  CHECK(recon == doctest::Approx(mv).epsilon(1e-12));
  CHECK(num_field(r.out, "empirical_constant") == doctest::Approx(mv).epsilon(1e-12));
}

TEST_CASE("benford lists block frequencies and the deviation pair") {
  const CliRun r = run({"benford", "--seed", "27", "--steps", "40"});
  CHECK(r.code == 0);
  CHECK(r.out.find("block 1 digits 1 freq ") != std::string::npos);
  const double dev = num_field(r.out, "deviation");
  const double dlog = num_field(r.out, "d_log");
  CHECK(dev >= 0.0);
  CHECK(dev <= dlog + 1e-12);  // block deviation is discrepancy-bounded
}

TEST_CASE("verifiers report PASS with their check counts") {
  const CliRun p = run({"verify-prop51", "--m-bound", "64", "--k-bound", "8"});
  CHECK(p.code == 0);
  CHECK(p.out.rfind("PASS checked=", 0) == 0);

  const CliRun l = run({"verify-lemma52", "--depth", "8"});
  CHECK(l.code == 0);
  CHECK(l.out.rfind("PASS checked=256", 0) == 0);

  const CliRun cap = run({"verify-lemma52", "--depth", "20"});
  CHECK(cap.code == 2);  // depth cap is a usage error

  const CliRun census = run({"lemma51-census", "--depth", "12"});
  CHECK(census.code == 0);
  CHECK(field(census.out, "count") == "4096");
  CHECK(census.out.find("PASS") != std::string::npos);
}

TEST_CASE("run-theorem21 census over flags, with CSV and JSON reports") {
  const std::string csv = temp_file("t21.csv");
  const CliRun r = run({"run-theorem21", "--depth", "6", "--seed-bound", "2^6",
                        "--census", "--out", csv});
  CHECK(r.code == 0);
  CHECK(field(r.out, "count") == "64");
  CHECK(field(r.out, "report") == csv);
  CHECK(r.out.find("exceeds 1: bound vacuous") != std::string::npos);
  {
    std::ifstream in(csv);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "seed,d_exact,d_tilde,max_err,exceptional");
  }
  std::filesystem::remove(csv);

  const std::string jsonpath = temp_file("t21.json");
  const CliRun j = run({"run-theorem21", "--depth", "6", "--seed-bound", "2^6",
                        "--census", "--out", jsonpath, "--format", "json"});
  CHECK(j.code == 0);
  const DiscrepancyReport rep = read_report_json(jsonpath);
  CHECK(rep.count == 64);
  CHECK(rep.mean_d_exact == doctest::Approx(num_field(j.out, "mean_d_exact")));
  std::filesystem::remove(jsonpath);

  // An explicit sub-1 threshold switches the vacuity note off.
  const CliRun t = run({"run-theorem21", "--depth", "6", "--seed-bound", "2^6",
                        "--census", "--threshold", "0.5"});
  CHECK(t.code == 0);
  CHECK(t.out.find("exceeds 1") == std::string::npos);
  CHECK(field(t.out, "threshold") == "0.5");
}

TEST_CASE("run-theorem21 config file drives the run and flags override it") {
  const std::string cfg = temp_file("t21_cfg.txt");
  const std::string outp = temp_file("t21_cfg.csv");
  {
    std::ofstream f(cfg);
    f << "# ensemble study\n"
      << "base = 10\n"
      << "depth = 6\n"
      << "seed_bound = 2^6\n"
      << "sample_size = census\n"
      << "rng_seed = 0\n"
      << "output_path = " << outp << "\n";
  }
  const CliRun r = run({"run-theorem21", "--config", cfg});
  CHECK(r.code == 0);
  CHECK(field(r.out, "count") == "64");
  CHECK(std::filesystem::exists(outp));
  std::filesystem::remove(outp);

  // Flags override config keys (depth and bound together here).
  const CliRun o = run({"run-theorem21", "--config", cfg, "--depth", "8",
                        "--seed-bound", "2^8"});
  CHECK(o.code == 0);
  CHECK(field(o.out, "count") == "256");
  std::filesystem::remove(outp);

  // Missing keys and unknown keys are usage errors.
  { std::ofstream f(cfg); f << "base = 10\n"; }
  CHECK(run({"run-theorem21", "--config", cfg}).code == 2);
  { std::ofstream f(cfg); f << "base = 10\nmystery = 1\n"; }
  CHECK(run({"run-theorem21", "--config", cfg}).code == 2);
  std::filesystem::remove(cfg);
}

TEST_CASE("single-command JSON export carries the shared envelope") {
  const std::string path = temp_file("traj.json");
  const CliRun r = run({"trajectory", "--seed", "3", "--steps", "4", "--out", path,
                        "--format", "json"});
  CHECK(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["code_version"] == kCodeVersion);
  CHECK(j["op"] == "trajectory");
  CHECK(j["parity"] == "1100");
  REQUIRE(j["iterates"].is_array());
  CHECK(j["iterates"].size() == 4);
  CHECK(j["iterates"][0] == "5");
  std::filesystem::remove(path);

  // --out without --format json is refused for these subcommands.
  const CliRun bad = run({"trajectory", "--seed", "3", "--steps", "4", "--out", path});
  CHECK(bad.code == 2);
  CHECK_FALSE(std::filesystem::exists(path));
}

TEST_CASE("environment variables fill omitted flags") {
  setenv("COLBEN_Q", "5", 1);
  const CliRun r = run({"parity", "--seed", "1", "--bits", "3"});
  unsetenv("COLBEN_Q");
  CHECK(r.code == 0);
  CHECK(r.out == "110\n");  // q=5: 1 -> 3 -> 8, parities odd/odd/even

  // Explicit flag beats the environment.
  setenv("COLBEN_Q", "5", 1);
  const CliRun f = run({"parity", "--seed", "1", "--bits", "3", "--q", "3"});
  unsetenv("COLBEN_Q");
  CHECK(f.out == "101\n");
}

TEST_CASE("usage errors and help exit as documented") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"trajectory"}).code == 2);                       // missing required
  CHECK(run({"trajectory", "--seed", "3", "--steps", "4", "--bogus"}).code == 2);
  CHECK(run({"trajectory", "--seed", "abc", "--steps", "4"}).code == 2);
  CHECK(run({"trajectory", "--seed", "0", "--steps", "4"}).code == 2);

  const CliRun help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("colben") != std::string::npos);

  const CliRun sub_help = run({"discrepancy", "--help"});
  CHECK(sub_help.code == 0);
  CHECK(sub_help.out.find("--values") != std::string::npos);
}

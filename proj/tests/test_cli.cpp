// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>

#include "secqos/cli/commands.hpp"
#include "secqos/cli/scenario.hpp"
#include "secqos/energy.hpp"

using namespace secqos;
using namespace secqos::cli;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("secqos_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_tool(const std::string &args) {
  const std::string cmd = std::string(SECQOS_TOOL) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path write_config(const fs::path &dir, const std::string &name, const std::string &json) {
  const fs::path p = dir / name;
  std::ofstream(p) << json;
  return p;
}

const char *kAnalyze = R"({
  "name": "small",
  "seed": 3,
  "source": {"type": "discrete_markov", "p11": 0.8, "p22": 0.8},
  "fading": {"mean_z2": 1.0, "power_correlation": 0.2},
  "split": {"delta": 0.5},
  "theta": 1.0,
  "snr": [0.1, 1.0, 10.0],
  "method": {"kind": "mc", "samples": 100000}
})";

} // namespace

TEST_CASE("scenario parsing") {
  const Scenario s = parse_scenario(kAnalyze);
  CHECK(s.name == "small");
  CHECK(s.seed == 3);
  REQUIRE(std::holds_alternative<OnOffDiscreteMarkov>(s.source));
  CHECK(std::get<OnOffDiscreteMarkov>(s.source).p11 == 0.8);
  CHECK(s.fading.power_correlation == 0.2);
  CHECK(s.snr.size() == 3);
  REQUIRE(std::holds_alternative<MonteCarlo>(s.method));
  CHECK(std::get<MonteCarlo>(s.method).samples == 100000);
  CHECK(std::get<MonteCarlo>(s.method).seed == 3);

  const Scenario t = parse_scenario(R"({"source": {"type": "discrete_markov", "s": 0.3},
    "theta": {"user2": 2.0}, "snr": {"db_min": -10, "db_max": 10, "points": 3}})");
  CHECK(std::get<OnOffDiscreteMarkov>(t.source).p22 == Approx(0.3));
  CHECK(std::get<OnOffDiscreteMarkov>(t.source).p11 == Approx(0.7));
  CHECK(t.theta_of(Message::Confidential2) == 2.0);
  CHECK(t.theta_of(Message::Common) == 1.0);
  CHECK(t.snr[0] == Approx(0.1));
  CHECK(t.snr[1] == Approx(1.0));
  CHECK(t.snr[2] == Approx(10.0));
}

TEST_CASE("scenario errors name the offending field") {
  auto message_of = [](const std::string &json) {
    try {
      parse_scenario(json);
    } catch (const ConfigError &e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message_of(R"({"snr": []})").find("snr") != std::string::npos);
  CHECK(message_of(R"({"source": {"type": "bogus"}})").find("source") != std::string::npos);
  CHECK(message_of(R"({"sourse": {}})").find("sourse") != std::string::npos);
  CHECK(message_of(R"({"source": {"type": "discrete_markov", "p11": 1.2, "p22": 0.5}})")
            .find("source") != std::string::npos);
  CHECK(message_of(R"({"simulate": {"horizon": 1000}})").find("simulate.horizon") !=
        std::string::npos);
  CHECK(message_of(R"({"nocsi": {"lambdas": [0.0]}})").find("nocsi") != std::string::npos);
  CHECK(message_of(R"({"method": {"kind": "quad"}, "fading": {"power_correlation": 0.3}})") != "");
  CHECK(message_of("{ not json").find("not valid JSON") != std::string::npos);
}

TEST_CASE("analyze writes identical csv on rerun") {
  const fs::path dir = scratch_dir("analyze");
  const Scenario s = parse_scenario(kAnalyze);
  RunOptions o;
  o.out_dir = dir / "a";
  const auto first = cmd_analyze(s, o);
  o.out_dir = dir / "b";
  const auto second = cmd_analyze(s, o);
  REQUIRE(first.files.size() == 1);
  const std::string csv = slurp(first.files[0]);
  CHECK(csv == slurp(second.files[0]));
  CHECK(csv.rfind("# secqos analyze v1\n# seed=3\n", 0) == 0);
  CHECK(csv.find("snr[linear],snr_db[dB]") != std::string::npos);

  Scenario empty = s;
  empty.snr.clear();
  CHECK_THROWS_AS(analyze_table(empty), ConfigError);
}

TEST_CASE("throughput curves are ordered by the source parameter") {
  // s = P_on; a larger s carries more traffic at every snr
  for (double rho : {0.1, 0.5}) {
    std::vector<std::vector<double>> curves;
    for (double sp : {0.2, 0.5, 0.8}) {
      Scenario s;
      s.source = OnOffDiscreteMarkov{1.0 - sp, sp};
      s.fading.power_correlation = rho;
      s.split = {0.5, 0.5};
      s.method = MonteCarlo{200000, 1};
      s.snr = db_grid(-10, 20, 7);
      const CsvTable t = analyze_table(s);
      std::vector<double> r;
      for (std::size_t k = 0; k < t.rows(); ++k)
        r.push_back(std::stod(t.row_at(k)[6]));
      curves.push_back(r);
    }
    for (std::size_t k = 0; k < curves[0].size(); ++k) {
      CHECK(curves[0][k] < curves[1][k]);
      CHECK(curves[1][k] < curves[2][k]);
      if (k > 0)
        CHECK(curves[2][k] > curves[2][k - 1]);
    }
  }
}

TEST_CASE("energy table") {
  Scenario s;
  s.source = OnOffDiscreteMarkov{0.2, 0.8};
  s.method = GaussLaguerre{64};
  s.snr = {0.01};
  const CsvTable t = energy_table(s);
  CHECK(t.rows() == 1);
  CHECK(t.str().find("ebn0_min_closed_form[dB]=-1.59") != std::string::npos);

  // minimum energy per bit does not depend on burstiness
  for (double sp : {0.2, 0.5, 0.8}) {
    s.source = OnOffDiscreteMarkov{1.0 - sp, sp};
    CHECK(min_ebn0_closed_form(s.source, Message::Confidential1, 1.0, s.fading, s.split,
                               s.method) == Approx(std::numbers::ln2).epsilon(1e-15));
  }
}

TEST_CASE("common-message energy efficiency improves with correlation") {
  double previous = 1e300;
  for (double rho : {0.0, 0.4, 0.8}) {
    FadingScenario f;
    f.power_correlation = rho;
    const double e = min_ebn0_closed_form(OnOffMarkovFluid{9.0, 1.0}, Message::Common, 1.0, f,
                                          {0.5, 0.5}, MonteCarlo{1'000'000, 1});
    CHECK(e < previous);
    previous = e;
  }
}

TEST_CASE("nocsi table") {
  Scenario s = parse_scenario(R"({"source": {"type": "fluid", "alpha": 0.5, "beta": 0.5},
    "snr": {"min": 0.001, "max": 1, "points": 4},
    "nocsi": {"theta": 0.5, "coefficients": [0.6, 1.0], "lambdas": [0.1]}})");
  const CsvTable a = nocsi_table(s);
  const CsvTable b = nocsi_table(s);
  CHECK(a.str() == b.str());
  CHECK(a.rows() == 12);
}

TEST_CASE("simulate command") {
  Scenario s = parse_scenario(R"({"seed": 5, "source": {"type": "discrete_markov", "s": 0.5},
    "split": {"delta": 0.7}, "method": {"kind": "quad"},
    "simulate": {"message": "common", "theta": 1, "horizon": 1000000}})");
  const SimulationResult r = run_simulation(s);
  CHECK(r.report.blocks == 1000000);
  CHECK(r.fit.theta_sim == Approx(1.0).epsilon(0.2));
  const CsvTable t = simulation_table(s, r);
  CHECK(t.str().find("theta_sim=") != std::string::npos);
}

TEST_CASE("figure presets") {
  const auto names = figure_names();
  CHECK(names.size() == 11);
  const auto fig3 = simulation_presets("fig3", 1);
  REQUIRE(fig3.size() == 3);
  CHECK(fig3[0].simulate.theta == 0.5);
  CHECK(fig3[2].simulate.theta == 2.0);
  CHECK(fig3[0].seed != fig3[1].seed);
  const auto fig11 = simulation_presets("fig11", 1);
  REQUIRE(fig11.size() == 3);
  CHECK(fig11[1].simulate.no_csi);
  CHECK(fig11[1].simulate.snr == 0.05);
}

TEST_CASE("command-line tool exit codes") {
  const fs::path dir = scratch_dir("tool");
  const fs::path good = write_config(dir, "good.json", kAnalyze);
  const fs::path bad = write_config(dir, "bad.json", R"({"snr": []})");
  const fs::path short_sim = write_config(dir, "short.json", R"({"simulate": {"horizon": 10}})");
  const fs::path lambda = write_config(dir, "lambda.json", R"({"nocsi": {"lambdas": [-1]}})");
  const std::string out = " --out " + (dir / "out").string();

  CHECK(run_tool("analyze --config " + good.string() + out) == 0);
  CHECK(fs::exists(dir / "out" / "small_analyze.csv"));
  CHECK(run_tool("analyze --config " + good.string() + out + " --seed 9 --samples 5000") == 0);
  CHECK(slurp(dir / "out" / "small_analyze.csv").find("# seed=9") != std::string::npos);
  CHECK(run_tool("analyze --config " + bad.string() + out) == 2);
  CHECK(run_tool("simulate --config " + short_sim.string() + out) == 2);
  CHECK(run_tool("nocsi --config " + lambda.string() + out) == 2);
  CHECK(run_tool("analyze --config " + good.string() + out + " --method quad") == 2);
  CHECK(run_tool("analyze --config /nonexistent.json") == 2);
  CHECK(run_tool("reproduce fig99") == 2);
  CHECK(run_tool("") == 2);
  CHECK(run_tool("--help") == 0);
}

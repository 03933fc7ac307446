#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "flow/graph.hpp"

using namespace cli;

namespace {

RunConfig parse(std::vector<std::string> args) {
  std::vector<const char*> argv{"spirallab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data());
}

std::string tmp(const std::string& name) { return "/tmp/spirallab_test_" + name; }

RunConfig small(const std::string& cmd) {
  RunConfig c;
  c.experiment = cmd;
  c.T = 5000;
  c.n_paths = 6;
  c.h_max = 4;
  c.samples = 30;
  c.d_max = 6;
  c.geom_samples = 200;
  return c;
}

double col(const Report& r, size_t row, size_t c) { return std::stod(r.rows.at(row).at(c)); }

}  // namespace

TEST_CASE("argument parsing and config files") {
  auto c = parse({"spiral_khintchine", "--kappas", "0.25,1,4", "--T", "2000", "--seed", "9"});
  CHECK(c.experiment == "spiral_khintchine");
  CHECK(c.kappas == std::vector<double>{0.25, 1, 4});
  CHECK(c.T == 2000);
  CHECK(c.seed == 9);

  {
    std::ofstream f(tmp("cfg.ini"));
    f << "# run\nseed = 4\nout = x\n[dioph]\nsamples = 17\nphi = power\ns = 0.5\n";
  }
  c = parse({"--config", tmp("cfg.ini"), "dioph", "--samples", "3"});
  CHECK(c.experiment == "dioph");
  CHECK(c.seed == 4);
  CHECK(c.samples == 3);  // flag overrides the file
  CHECK(c.phi == "power");
  CHECK(c.s == 0.5);
  CHECK(c.out == "x");

  CHECK_THROWS_AS(parse({"no_such_command"}), CLI::ParseError);
  CHECK_THROWS_AS(parse({}), CLI::ParseError);
  CHECK_THROWS_AS(parse({"dioph", "--samples", "many"}), CLI::ParseError);
}

TEST_CASE("validation before dispatch") {
  auto bad = [](auto mutate) {
    RunConfig c = small("dioph");
    mutate(c);
    CHECK_THROWS_AS(c.validate(), ConfigError);
  };
  bad([](RunConfig& c) { c.experiment = "nope"; });
  bad([](RunConfig& c) { c.T = 10; });
  bad([](RunConfig& c) { c.n_paths = 0; });
  bad([](RunConfig& c) { c.lo_exp = 1; });
  bad([](RunConfig& c) { c.q = 4; });
  bad([](RunConfig& c) { c.q = 2; });
  bad([](RunConfig& c) { c.h_max = c.h_min; });
  bad([](RunConfig& c) { c.phi = "exp"; });
  bad([](RunConfig& c) { c.s = -1; });
  bad([](RunConfig& c) { c.rank = 1; });
  bad([](RunConfig& c) { c.fixture = "nope"; });
  bad([](RunConfig& c) { c.k = c.dim; });
  bad([](RunConfig& c) { c.kappas = {}; });
  CHECK_NOTHROW(small("dioph").validate());
  try {
    RunConfig c = small("dioph");
    c.samples = 0;
    c.validate();
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("samples") != std::string::npos);
  }
}

TEST_CASE("reports: csv, json, provenance") {
  auto r = run(small("spiral_loglaw"));
  CHECK(r.columns.front() == "path");
  CHECK(r.rows.size() == 6);
  const auto j = r.to_json(small("spiral_loglaw"));
  CHECK(j["schema"] == "spirallab.report/1");
  CHECK(j["version"] == version());
  CHECK(j["config"]["T"] == 5000);
  for (const auto& t : j["targets"]) {
    const std::string p = t["provenance"];
    CHECK((p == "paper" || p == "derived" || p == "extrapolated"));
  }
  CHECK(fmt(0.1) == "0.1");
  CHECK(fmt(INFINITY) == "inf");
  Report bad;
  bad.columns = {"a", "b"};
  CHECK_THROWS(bad.add_row({"1"}));
}

TEST_CASE("log law runs are seeded") {
  auto c = small("spiral_loglaw");
  const auto a = run(c).csv(), b = run(c).csv();
  CHECK(a == b);
  c.seed = 2;
  CHECK(run(c).csv() != a);
  // statistics near 1/log 2 on K4
  auto big = small("spiral_loglaw");
  big.T = 200000;
  big.n_paths = 15;
  const auto r = run(big);
  CHECK(r.summary["median"].get<double>() == doctest::Approx(1 / std::log(2.0)).epsilon(0.3));
}

TEST_CASE("degenerate graphs and cycles are rejected") {
  {
    std::ofstream f(tmp("path.txt"));
    f << "a b\nb c\n";
  }
  auto c = small("spiral_loglaw");
  c.graph = tmp("path.txt");
  CHECK_THROWS_AS(run(c), flow::GraphError);
  c.graph = tmp("missing.txt");
  CHECK_THROWS_AS(run(c), ConfigError);
  c.graph = "K4";
  c.cycle = "0 1 0";
  CHECK_THROWS_AS(run(c), flow::GraphError);
  c.cycle = "0 1 9";
  CHECK_THROWS_AS(run(c), flow::GraphError);
}

TEST_CASE("khintchine sweep") {
  auto c = small("spiral_khintchine");
  c.T = 20000;
  c.n_paths = 20;
  c.kappas = {0, 0.5, 1, 2, 4};
  const auto r = run(c);
  REQUIRE(r.rows.size() == 5);
  CHECK(col(r, 0, 2) == 1.0);  // g = 0
  for (size_t i = 1; i < 5; ++i) CHECK(col(r, i, 2) <= col(r, i - 1, 2));
  CHECK(col(r, 1, 2) - col(r, 3, 2) >= 0.6);
}

TEST_CASE("approach depth command") {
  auto c = small("approx_point");
  const auto a = run(c);
  CHECK(a.csv() == run(c).csv());
  CHECK(a.targets.front().provenance == "extrapolated");
  // widening the window can only raise each statistic
  auto w = c;
  w.lo_exp = 0.25;
  const auto b = run(w);
  for (size_t i = 0; i < a.rows.size(); ++i)
    if (!a.rows[i][2].empty()) CHECK(col(b, i, 2) >= col(a, i, 2));
  c.x0 = "zz";
  CHECK_THROWS_AS(run(c), flow::GraphError);
}

TEST_CASE("diophantine trends") {
  auto c = small("dioph");
  const auto div = run(c);
  CHECK(div.rows.size() == 30 * 3);
  CHECK(div.summary["integral"] == "divergent");
  CHECK(div.summary["orbit_complete"] == true);
  // running minima only go down
  for (size_t i = 0; i < div.rows.size(); ++i)
    if (div.rows[i][1] != "2") CHECK(col(div, i, 3) <= col(div, i - 1, 3));
  CHECK(div.summary["running_min_decrease"].get<double>() >= 1);

  c.phi = "power";
  c.s = 1;
  const auto conv = run(c);
  CHECK(conv.summary["integral"] == "convergent");
  double prev = 0;
  for (const auto& sh : conv.summary["shells"]) {
    CHECK(sh["median_phi_shell_min"].get<double>() >= prev);
    prev = sh["median_phi_shell_min"].get<double>();
  }
  // rational points (finite or periodic expansions) are flagged and skipped
  c.points = {"3:1:1,2", "3:1:" + std::string("1,2,0,") + "1,2,0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,0,1,2,0"};
  const auto rat = run(c);
  CHECK(rat.summary["excluded_rational_points"].size() == 2);
  CHECK(rat.rows.empty());
  CHECK(rat.status == kExitInconclusive);
  c.points = {"3:0:1"};
  CHECK_THROWS_AS(run(c), ConfigError);
}

TEST_CASE("coset counts and measure band") {
  auto c = small("coset_count");
  c.d_max = 9;
  const auto r = run(c);
  REQUIRE(r.rows.size() == 9);
  for (size_t i = 0; i < r.rows.size(); ++i) {
    const long D = static_cast<long>(i) + 1;
    const long expect = static_cast<long>(std::pow(3, D - 1)) + (D % 2 ? 1 : -1);
    CHECK(std::stol(r.rows[i][1]) == expect);
  }
  CHECK(r.summary["slope"].get<double>() == doctest::Approx(std::log(3.0)).epsilon(0.1));
  c.rank = 3;
  c.d_max = 6;
  CHECK(run(c).summary["slope"].get<double>() == doctest::Approx(std::log(5.0)).epsilon(0.1));

  auto m = small("measure_band");
  const auto b = run(m);
  CHECK(b.summary["disjoint"] == true);
  CHECK(b.summary["fitted_c"].get<double>() <= 20);
  CHECK(b.summary["ratio_max"] == "3/2");
}

TEST_CASE("bc_run fixtures and instance files") {
  auto c = small("bc_run");
  const std::vector<std::pair<std::string, std::string>> expect = {
      {"spiral-convergent", "measure-zero"}, {"spiral-divergent", "positive-measure"},
      {"nested", "measure-zero"},            {"independent", "positive-measure"},
      {"overlapping", "hypotheses-violated"}, {"inverted", "hypotheses-violated"}};
  for (const auto& [f, v] : expect) {
    c.fixture = f;
    c.n_max = f.starts_with("spiral") ? 7 : 0;
    const auto r = run(c);
    CHECK_MESSAGE(r.summary["verdict"]["verdict"] == v, f);
  }
  c.fixture = "overlapping";
  c.n_max = 0;
  c.export_instance = tmp("inst.json");
  const auto r = run(c);
  CHECK(r.rows[6][1] == "0");
  // round trip through the exported file
  auto d = small("bc_run");
  d.instance = tmp("inst.json");
  const auto r2 = run(d);
  CHECK(r2.csv() == r.csv());
  {
    std::ofstream f(tmp("garbage.json"));
    f << "{not json";
  }
  d.instance = tmp("garbage.json");
  CHECK_THROWS_AS(run(d), ConfigError);
}

TEST_CASE("geometry suite") {
  auto c = small("geom_validate");
  const auto r = run(c);
  CHECK(r.summary["ok"] == true);
  CHECK(r.status == kExitOk);
  CHECK(r.csv() == run(c).csv());
}

TEST_CASE("front end exit codes and outputs") {
  const std::string out = tmp("front");
  std::vector<std::string> args = {"spiral_loglaw", "--T", "2000", "--paths", "3", "--out", out};
  std::vector<const char*> argv{"spirallab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  CHECK(main_entry(static_cast<int>(argv.size()), argv.data()) == kExitOk);
  std::ifstream f(out + ".csv"), j(out + ".json");
  CHECK(f.good());
  CHECK(j.good());
  auto code = [](std::vector<std::string> a) {
    std::vector<const char*> v{"spirallab"};
    for (const auto& s : a) v.push_back(s.c_str());
    return main_entry(static_cast<int>(v.size()), v.data());
  };
  CHECK(code({"spiral_loglaw", "--T", "5"}) == kExitInvalid);
  CHECK(code({"bogus"}) == kExitInvalid);
  CHECK(code({"bc_run", "--fixture", "x"}) == kExitInvalid);
  CHECK(code({"spiral_loglaw", "--graph", "K4", "--cycle", "0 1", "--out", out}) == kExitInvalid);
}

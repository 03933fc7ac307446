#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "bcengine/instance.hpp"
#include "cli/commands.hpp"
#include "exactnum/fq.hpp"
#include "flow/graph.hpp"

namespace cli {

namespace {

void need(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key + ": " + what);
}

void build_app(CLI::App& app, RunConfig& cfg) {
  app.set_config("--config", "", "key = value configuration file ([command] sections)");
  app.add_option("--seed", cfg.seed, "master seed");
  app.add_option("--out", cfg.out, "output prefix, writes <out>.csv and <out>.json");
  app.require_subcommand(1);

  auto paths = [&](CLI::App* s) {
    s->add_option("--graph", cfg.graph, "K<n>, petersen, or an edge list file");
    s->add_option("--T", cfg.T, "path length");
    s->add_option("--paths", cfg.n_paths, "number of sample paths");
    s->add_option("--lo-exp", cfg.lo_exp, "window [T^lo, T]");
  };
  auto* s = app.add_subcommand("spiral_loglaw", "penetration log law on a quotient graph");
  paths(s);
  s->add_option("--cycle", cfg.cycle, "target cycle as a vertex list");
  s = app.add_subcommand("spiral_khintchine", "event rates of p >= kappa log t");
  paths(s);
  s->add_option("--cycle", cfg.cycle, "target cycle as a vertex list");
  s->add_option("--kappas", cfg.kappas, "kappa values in units of 1/h")->delimiter(',');
  s = app.add_subcommand("approx_point", "approach depth to a vertex");
  paths(s);
  s->add_option("--x0", cfg.x0, "target vertex");

  s = app.add_subcommand("dioph", "approximation by the orbit of a quadratic irrational");
  s->add_option("--q", cfg.q, "field size (odd prime)");
  s->add_option("--h-min", cfg.h_min, "first shell exponent");
  s->add_option("--h-max", cfg.h_max, "last shell exponent");
  s->add_option("--samples", cfg.samples, "Haar samples");
  s->add_option("--phi", cfg.phi, "log-reciprocal or power");
  s->add_option("--s", cfg.s, "exponent of the power family");
  s->add_option("--points", cfg.points, "explicit points q:v:c1,c2,.. separated by ';'")->delimiter(';');

  for (const char* name : {"coset_count", "measure_band"}) {
    s = app.add_subcommand(name, name == std::string("coset_count") ? "double coset counts by depth"
                                                                   : "exact neighborhood masses by depth");
    s->add_option("--rank", cfg.rank, "rank of the free group");
    s->add_option("--d-max", cfg.d_max, "largest depth");
  }

  s = app.add_subcommand("bc_run", "Borel-Cantelli engine on a fixture or instance file");
  s->add_option("--fixture", cfg.fixture, "fixture name");
  s->add_option("--instance", cfg.instance, "instance JSON file");
  s->add_option("--n-max", cfg.n_max, "level cap (0: fixture default)");
  s->add_option("--export-instance", cfg.export_instance, "write the instance JSON here");

  s = app.add_subcommand("geom_validate", "d_C bounds suite in hyperbolic space");
  s->add_option("--dim", cfg.dim, "dimension n of H^n");
  s->add_option("--k", cfg.k, "dimension of C");
  s->add_option("--samples", cfg.geom_samples, "random samples");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
}

const std::vector<std::string> kFixtures = {"spiral-convergent", "spiral-divergent", "point-convergent",
                                            "point-divergent",   "nested",           "independent",
                                            "overlapping",       "inverted"};

}  // namespace

void RunConfig::validate() const {
  need(std::find(kCommands.begin(), kCommands.end(), experiment) != kCommands.end(), "experiment",
       "unknown command '" + experiment + "'");
  need(T >= 100, "T", "must be at least 100");
  need(n_paths >= 1, "paths", "must be positive");
  need(lo_exp > 0 && lo_exp < 1, "lo-exp", "must lie in (0, 1)");
  need(!kappas.empty(), "kappas", "empty list");
  for (double k : kappas) need(k >= 0, "kappas", "must be non-negative");
  need(q > 0, "q", "must be an odd prime");
  try {
    exactnum::require_odd_prime(static_cast<exactnum::u32>(q));
  } catch (const std::exception&) {
    throw ConfigError("q: must be an odd prime");
  }
  need(h_min >= 1 && h_max > h_min && h_max <= 8, "h-min/h-max", "need 1 <= h_min < h_max <= 8");
  need(samples >= 1, "samples", "must be positive");
  need(phi == "log-reciprocal" || phi == "power", "phi", "log-reciprocal or power");
  need(s >= 0, "s", "must be non-negative");
  need(rank >= 2 && rank <= 4, "rank", "must lie in [2, 4]");
  need(d_max >= 2 && d_max <= 18, "d-max", "must lie in [2, 18]");
  need(!instance.empty() || std::find(kFixtures.begin(), kFixtures.end(), fixture) != kFixtures.end(), "fixture",
       "unknown fixture '" + fixture + "'");
  need(n_max == 0 || n_max >= 2, "n-max", "0 or at least 2");
  need(dim >= 2 && dim <= 8, "dim", "must lie in [2, 8]");
  need(k >= 1 && k < dim, "k", "need 1 <= k < dim");
  need(geom_samples >= 1, "samples", "must be positive");
}

json RunConfig::to_json() const {
  return {{"experiment", experiment}, {"graph", graph},     {"cycle", cycle},       {"x0", x0},
          {"T", T},                   {"paths", n_paths},   {"lo_exp", lo_exp},     {"kappas", kappas},
          {"q", q},                   {"h_min", h_min},     {"h_max", h_max},       {"samples", samples},
          {"phi", phi},               {"s", s},             {"points", points},             {"rank", rank},         {"d_max", d_max},
          {"fixture", fixture},       {"instance", instance}, {"n_max", n_max},     {"dim", dim},
          {"k", k},                   {"geom_samples", geom_samples}, {"seed", seed}, {"out", out}};
}

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"spirallab"};
  RunConfig cfg;
  build_app(app, cfg);
  app.parse(argc, argv);
  for (auto* sub : app.get_subcommands()) cfg.experiment = sub->get_name();
  return cfg;
}

int main_entry(int argc, const char* const* argv) {
  CLI::App app{"spirallab: experiments on spiraling geodesics and Diophantine approximation"};
  RunConfig cfg;
  build_app(app, cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }
  for (auto* sub : app.get_subcommands()) cfg.experiment = sub->get_name();

  Report rep;
  try {
    cfg.validate();
    rep = run(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const flow::GraphError& e) {
    std::cerr << "invalid graph or cycle: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const bcengine::InstanceError& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  }

  const std::string body = rep.csv();
  const std::string summary = rep.to_json(cfg).dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << body;
    std::cerr << summary;
  } else {
    std::ofstream c(cfg.out + ".csv", std::ios::binary), j(cfg.out + ".json", std::ios::binary);
    if (!c || !j) {
      std::cerr << "cannot write " << cfg.out << ".csv/.json\n";
      return kExitInvalid;
    }
    c << body;
    j << summary;
    std::cout << summary;
  }
  return rep.status;
}

}  // namespace cli

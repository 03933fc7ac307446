#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace cli {

using json = nlohmann::json;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string> kCommands = {"spiral_loglaw", "spiral_khintchine", "dioph",        "approx_point",
                                                   "coset_count",   "measure_band",      "bc_run",       "geom_validate"};

struct RunConfig {
  std::string experiment;

  // quotient graph experiments
  std::string graph = "K4";  // K<n>, petersen, or a path to an edge list
  std::string cycle = "0 1 2";
  std::string x0 = "0";
  long T = 1'000'000;
  int n_paths = 100;
  double lo_exp = 0.5;
  std::vector<double> kappas = {0.5, 2.0};  // in units of 1/h

  // Diophantine approximation
  int q = 3;
  int h_min = 2;  // shells q^h_min .. q^h_max
  int h_max = 6;
  int samples = 200;
  std::string phi = "log-reciprocal";  // or power: t^-s
  double s = 1.0;
  std::vector<std::string> points;  // explicit points (Laurent text, valuation >= 1) instead of Haar samples

  // free group
  int rank = 2;
  int d_max = 14;

  // Borel-Cantelli engine
  std::string fixture = "spiral-divergent";
  std::string instance;  // JSON instance file, overrides fixture
  int n_max = 0;         // 0: fixture default
  std::string export_instance;

  // hyperbolic space
  int dim = 3;
  int k = 1;
  long geom_samples = 10'000;

  std::uint64_t seed = 1;
  std::string out;  // output prefix: <out>.csv and <out>.json

  // Throws ConfigError naming the offending key.
  void validate() const;
  json to_json() const;
};

}  // namespace cli

#pragma once

#include <cstdint>
#include <vector>

#include "flow/graph.hpp"

namespace flow {

// Maximal-entropy Markov chain on darts from the Perron data of the non-backtracking operator.
struct ParryChain {
  const QuotientGraph* graph = nullptr;
  double lambda = 0;
  double entropy = 0;  // log lambda
  std::vector<double> pi;
  // succ[e] lists the allowed successors of e; prob[e] the matching probabilities, cum[e] their partial sums.
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<double>> prob;
  std::vector<std::vector<double>> cum;
  std::vector<double> pi_cum;
  int iterations = 0;
};

// The graph must outlive the chain.
ParryChain perron(const QuotientGraph& G, double tol = 1e-12, int max_iter = 1'000'000);

// max over darts of |(pi P)_e - pi_e|, summed: the l1 stationarity defect.
double stationarity_defect(const ParryChain& c);

struct GeodesicPath {
  std::vector<int> darts;
  std::uint64_t seed = 0;
  long length() const { return static_cast<long>(darts.size()); }
};

GeodesicPath sample_path(const ParryChain& c, long T, std::uint64_t seed);

}  // namespace flow

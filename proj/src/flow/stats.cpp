#include "flow/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "exactnum/rng.hpp"

namespace flow {

std::vector<Run> penetration(const QuotientGraph& G, const GeodesicPath& path, const Cycle& C) {
  // next_on[e] = the dart continuing e along C in the same orientation, -1 off C
  std::vector<int> next_on(G.num_darts(), -1);
  const int L = C.length();
  for (int i = 0; i < L; ++i) {
    next_on[C.darts[i]] = C.darts[(i + 1) % L];
    next_on[QuotientGraph::reversal(C.darts[(i + 1) % L])] = QuotientGraph::reversal(C.darts[i]);
  }
  std::vector<Run> runs;
  const auto& d = path.darts;
  for (size_t i = 0; i < d.size();) {
    if (next_on[d[i]] < 0) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < d.size() && d[j] == next_on[d[j - 1]]) ++j;
    runs.push_back({static_cast<long>(i) + 1, static_cast<long>(j - i)});
    i = j;
  }
  return runs;
}

std::optional<double> loglaw_statistic(const std::vector<Run>& runs, long T, Window w) {
  if (T < 100) throw std::invalid_argument("loglaw statistic needs T >= 100");
  const double lo = std::pow(static_cast<double>(T), w.lo_exp);
  std::optional<double> best;
  for (const Run& r : runs) {
    if (r.t < lo || r.t > T) continue;
    const double v = r.p / std::log(static_cast<double>(r.t));
    if (!best || v > *best) best = v;
  }
  return best;
}

double khintchine_event_rate(const ParryChain& c, const Cycle& C, const std::function<double(double)>& g, long T,
                             int n_paths, std::uint64_t seed) {
  int hits = 0;
  for (int k = 0; k < n_paths; ++k) {
    auto path = sample_path(c, T, exactnum::derive_seed(seed, k));
    for (const Run& r : penetration(*c.graph, path, C)) {
      if (2 * r.t < T) continue;
      if (r.p >= g(static_cast<double>(r.t))) {
        ++hits;
        break;
      }
    }
  }
  return static_cast<double>(hits) / n_paths;
}

std::vector<Run> approach_depths(const ParryChain& c, const GeodesicPath& path, int x0) {
  const QuotientGraph& G = *c.graph;
  std::vector<Run> out;
  const auto& d = path.darts;
  for (size_t i = 0; i < d.size(); ++i) {
    if (G.head(d[i]) != x0) continue;
    long s = 0;
    for (size_t j = i + 1; j < d.size() && d[j] == c.succ[d[j - 1]].front(); ++j) ++s;
    out.push_back({static_cast<long>(i) + 1, s});
  }
  return out;
}

std::optional<double> closest_approach(const ParryChain& c, const GeodesicPath& path, int x0, Window w) {
  return loglaw_statistic(approach_depths(c, path, x0), path.length(), w);
}

double median(std::vector<double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace flow

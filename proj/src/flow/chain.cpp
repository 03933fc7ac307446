#include "flow/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "exactnum/rng.hpp"

namespace flow {

namespace {

// Every dart reachable from dart 0 in the successor graph and its reverse.
bool strongly_connected(const std::vector<std::vector<int>>& succ) {
  const size_t n = succ.size();
  std::vector<std::vector<int>> pred(n);
  for (size_t e = 0; e < n; ++e)
    for (int f : succ[e]) pred[f].push_back(static_cast<int>(e));
  auto reach = [&](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<int> st{0};
    seen[0] = 1;
    size_t cnt = 1;
    while (!st.empty()) {
      int e = st.back();
      st.pop_back();
      for (int f : adj[e])
        if (!seen[f]) seen[f] = 1, ++cnt, st.push_back(f);
    }
    return cnt == n;
  };
  return reach(succ) && reach(pred);
}

// Perron vector of the lazy operator (I + B)/2 (or its transpose) by power iteration from all ones.
std::vector<double> power(const std::vector<std::vector<int>>& adj, double tol, int max_iter, double& mu, int& iters) {
  const size_t n = adj.size();
  std::vector<double> x(n, 1.0 / n), y(n);
  mu = 0;
  for (iters = 1; iters <= max_iter; ++iters) {
    for (size_t e = 0; e < n; ++e) {
      double s = x[e];
      for (int f : adj[e]) s += x[f];
      y[e] = 0.5 * s;
    }
    const double norm = std::accumulate(y.begin(), y.end(), 0.0);
    double diff = 0;
    for (size_t e = 0; e < n; ++e) {
      y[e] /= norm;
      diff = std::max(diff, std::abs(y[e] - x[e]));
    }
    x.swap(y);
    mu = norm;  // x had unit l1 norm
    if (diff < tol) break;
  }
  if (iters > max_iter) throw std::runtime_error("Perron iteration did not converge");
  return x;
}

}  // namespace

ParryChain perron(const QuotientGraph& G, double tol, int max_iter) {
  ParryChain c;
  c.graph = &G;
  const int n = G.num_darts();
  c.succ.resize(n);
  for (int e = 0; e < n; ++e)
    for (int f : G.out(G.head(e)))
      if (f != QuotientGraph::reversal(e)) c.succ[e].push_back(f);
  if (!strongly_connected(c.succ)) throw GraphError("non-backtracking transitions are not irreducible");
  std::vector<std::vector<int>> pred(n);
  for (int e = 0; e < n; ++e)
    for (int f : c.succ[e]) pred[f].push_back(e);
  double mu_r, mu_l;
  int it_r, it_l;
  auto r = power(c.succ, tol, max_iter, mu_r, it_r);
  auto l = power(pred, tol, max_iter, mu_l, it_l);
  c.iterations = std::max(it_r, it_l);
  c.lambda = 2 * mu_r - 1;
  c.entropy = std::log(c.lambda);
  c.prob.resize(n);
  c.cum.resize(n);
  for (int e = 0; e < n; ++e) {
    double acc = 0;
    for (int f : c.succ[e]) {
      const double p = r[f] / (c.lambda * r[e]);
      c.prob[e].push_back(p);
      acc += p;
    }
    // renormalize rounding so that each row sums to 1
    double run = 0;
    for (auto& p : c.prob[e]) {
      p /= acc;
      run += p;
      c.cum[e].push_back(run);
    }
    c.cum[e].back() = 1.0;
  }
  c.pi.resize(n);
  double z = 0;
  for (int e = 0; e < n; ++e) z += c.pi[e] = l[e] * r[e];
  double run = 0;
  for (int e = 0; e < n; ++e) {
    c.pi[e] /= z;
    run += c.pi[e];
    c.pi_cum.push_back(run);
  }
  c.pi_cum.back() = 1.0;
  return c;
}

double stationarity_defect(const ParryChain& c) {
  std::vector<double> next(c.pi.size(), 0.0);
  for (size_t e = 0; e < c.pi.size(); ++e)
    for (size_t j = 0; j < c.succ[e].size(); ++j) next[c.succ[e][j]] += c.pi[e] * c.prob[e][j];
  double d = 0;
  for (size_t e = 0; e < c.pi.size(); ++e) d += std::abs(next[e] - c.pi[e]);
  return d;
}

GeodesicPath sample_path(const ParryChain& c, long T, std::uint64_t seed) {
  if (T < 1) throw std::invalid_argument("path length must be >= 1");
  exactnum::Rng rng(seed);
  GeodesicPath path;
  path.seed = seed;
  path.darts.reserve(T);
  auto pick = [&](const std::vector<double>& cum) {
    const double u = rng.uniform();
    return static_cast<size_t>(std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
  };
  int e = static_cast<int>(std::min(pick(c.pi_cum), c.pi.size() - 1));
  path.darts.push_back(e);
  for (long t = 1; t < T; ++t) {
    const auto& cum = c.cum[e];
    e = c.succ[e][std::min(pick(cum), cum.size() - 1)];
    path.darts.push_back(e);
  }
  return path;
}

}  // namespace flow

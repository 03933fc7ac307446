#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "flow/chain.hpp"

namespace flow {

// Maximal run of consecutive path darts along a lift of the cycle, entered at time t (1-based).
struct Run {
  long t = 0;
  long p = 0;
  friend bool operator==(const Run&, const Run&) = default;
};

std::vector<Run> penetration(const QuotientGraph& G, const GeodesicPath& path, const Cycle& C);

struct Window {
  double lo_exp = 0.5;  // window [T^lo_exp, T]
};

// sup over runs with t in [T^lo_exp, T] of p / log t; nullopt when no run falls in the window.
std::optional<double> loglaw_statistic(const std::vector<Run>& runs, long T, Window w = {});

// Fraction of paths with a run entered at t in [T/2, T] with p >= g(t). g may return +infinity.
double khintchine_event_rate(const ParryChain& c, const Cycle& C, const std::function<double(double)>& g, long T,
                             int n_paths, std::uint64_t seed);

// Approach depth s(t): when the path enters x0 at time t (head of dart t is x0), the number of further steps
// that follow the reference continuation (smallest-index allowed successor). Tree analogue of -log d(ell(t), x0).
std::vector<Run> approach_depths(const ParryChain& c, const GeodesicPath& path, int x0);

// sup over t in the window of s(t) / log t; target 1/h is an extrapolation, not a proved tree statement.
std::optional<double> closest_approach(const ParryChain& c, const GeodesicPath& path, int x0, Window w = {});

double median(std::vector<double> v);

}  // namespace flow

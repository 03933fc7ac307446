#pragma once

#include <vector>

#include "quadratic/quadirr.hpp"

namespace quadratic {

using exactnum::RatFunc;

struct CFExpansion {
  std::vector<Poly> preperiod;
  std::vector<Poly> period;
  // Set when the state budget ran out; preperiod then holds the quotients found so far.
  bool budget_exceeded = false;
};

// Exact expansion on the state (P, Q) with alpha_n = (P + sqrt D) / Q.
CFExpansion cf_expand(const QuadIrr& alpha, int max_states = 100000);
// Euclidean expansion of a rational function; the last quotient has degree >= 1 unless it is the only one.
std::vector<Poly> cf_rational(const RatFunc& r);

// First n quotients of an expansion (period repeated as needed).
std::vector<Poly> cf_quotients(const CFExpansion& cf, int n);

struct Convergent {
  Poly p, q;
};
// p_k / q_k for k = 0 .. quotients.size()-1.
std::vector<Convergent> convergents(const std::vector<Poly>& quotients);

}  // namespace quadratic

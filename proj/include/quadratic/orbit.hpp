#pragma once

#include <set>
#include <vector>

#include "quadratic/quadirr.hpp"

namespace quadratic {

// Representative of alpha modulo translations: alpha - floor(alpha), so |result| < 1.
QuadIrr reduce(const QuadIrr& alpha);

struct OrbitOptions {
  int d_max = 3;         // degree cap for the translation generators
  long budget = 200000;  // max number of stored elements
};

struct OrbitResult {
  std::vector<QuadIrr> elements;  // reduced representatives, canonical order
  bool complete = false;          // saturation pass at d_max + 1 added nothing
  bool budget_exhausted = false;
  int d_used = 0;
};

// Orbit of alpha under SL_2(F_q[X]) modulo translations, restricted to height <= H_max.
// Generators: beta -> reduce(-1/(beta + t)) for deg t <= d_max, and SL_2(F_q).
OrbitResult orbit_enumerate(const QuadIrr& alpha, QMag H_max, const OrbitOptions& opt = {});

}  // namespace quadratic

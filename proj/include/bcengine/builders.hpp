#pragma once

#include <functional>

#include "bcengine/instance.hpp"

namespace bcengine {

// f = e^{-g}; g is evaluated at integer times and rounded up onto the grid (warning when off-grid).
using GFn = std::function<double(int)>;

// Free group F_2, C0 the axis of a: items are double cosets <a> r <a> with D(r) = n, n in [1, n_max],
// B_r(eps) = N_r(eps); f1 = 3^n, f2 = e^{-(n+1)}, f3 = e^{-(n+1+g(n))}, f4 = 3, f5(eps) = eps^{log 3}.
BCInstance build_spiral_instance(int n_max, const GFn& g, long max_cosets = 2'000'000);

// Orbit of the identity under F_2 on its Cayley tree: level n is the sphere of radius t_n,
// B_w(eps) the visual ball of radius eps around the ray through w (extended by its last letter).
// shells: t_{n+1} = t_n + 1 when `unit_shells`, else t_n + max(1, g(t_n)).
BCInstance build_point_instance(int n_max, const GFn& g, bool unit_shells, int t_cap = 11);

// Single cylinder per level, nested: A_n = cylinder of depth 2n + 1 around one ray (q = 2).
BCInstance build_nested_instance(int n_max);
// A_n = {xi : digit n of xi is 0} (q = 2), independent across levels.
BCInstance build_independent_instance(int n_max);

// Constructed violations.
BCInstance overlapping_level_instance(int n_max);  // two items of one level overlap
BCInstance inverted_radii_instance(int n_max);     // f3 > f2 at one level

}  // namespace bcengine

#pragma once

#include <functional>
#include <vector>

#include "treespace/cayley.hpp"

namespace treespace {

// Double coset <a> w <a> in F_k, a = letter 0, with its canonical representative:
// reduced, neither starting nor ending with a or a^-1.
struct DoubleCoset {
  Word w;
  int depth = 0;  // D = d(axis(a), w axis(a))
};

bool is_canonical_coset_word(const Word& w);
// Canonical representative of <a> g <a>; throws if g lies in <a>.
Word canonical_coset_word(const Word& g);
// D computed from the Gromov products of the four endpoints.
int coset_depth(const CayleyTree& T, const Word& w);

// Calls visit(w) for every canonical word of length 1..D_max in lexicographic order of
// (length, letters). Stops early when visit returns false.
void for_each_coset_word(int k, int D_max, const std::function<bool(const Word&)>& visit);

struct CosetList {
  std::vector<DoubleCoset> cosets;
  bool truncated = false;  // max_count reached before the enumeration finished
};
CosetList free_group_double_cosets(int k, int D_max, long max_count = 5'000'000);

// Exact mass of N_r(e^{-m}) = {xi : d_{C0}(xi, w a^{+-inf}) <= e^{-m}}, C0 the axis of a, m >= 1.
CylinderUnion coset_neighborhood(const CayleyTree& T, const Word& w, int m);

}  // namespace treespace

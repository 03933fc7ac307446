#pragma once

#include <vector>

#include "treespace/tree.hpp"

namespace treespace {

// Letters of F_k: generator i is 2i, its inverse 2i+1.
using Word = std::vector<int>;

inline int inverse_letter(int x) { return x ^ 1; }
Word free_reduce(const Word& w);
Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);  // reduced product

// Eventually periodic reduced infinite word: prefix followed by period repeated forever.
struct CayleyBoundary {
  Word prefix;
  Word period;
  int letter(long i) const {
    return i < static_cast<long>(prefix.size()) ? prefix[i] : period[(i - prefix.size()) % period.size()];
  }
};

// Cayley tree of F_k with respect to the free generators, based at the identity.
class CayleyTree {
 public:
  using Vertex = Word;
  using Boundary = CayleyBoundary;

  explicit CayleyTree(int k);
  int rank() const { return k_; }
  int branching() const { return 2 * k_ - 1; }
  Vertex base() const { return {}; }
  int depth(const Vertex& v) const { return static_cast<int>(v.size()); }
  Vertex ancestor(const Vertex& v, int d) const { return Vertex(v.begin(), v.begin() + d); }
  Vertex ray_vertex(const Boundary& xi, int d) const;
  Address address(const Vertex& v) const;
  Address boundary_address(const Boundary& xi, int len) const;

  // Validates and normalizes (the infinite word must be reduced, the period cyclically reduced).
  Boundary boundary(Word prefix, Word period) const;
  // Left multiplication by g.
  Vertex act(const Word& g, const Vertex& v) const { return concat(g, v); }
  Boundary act(const Word& g, const Boundary& xi) const;

  // Endpoints of the axis of the generator a = letter 0: a^{-inf} and a^{+inf}.
  Boundary axis_minus() const { return {{}, {1}}; }
  Boundary axis_plus() const { return {{}, {0}}; }

 private:
  int k_;
};

}  // namespace treespace

#include "treespace/cayley.hpp"

#include <stdexcept>

namespace treespace {

Word free_reduce(const Word& w) {
  Word r;
  for (int x : w) {
    if (!r.empty() && r.back() == inverse_letter(x)) r.pop_back();
    else r.push_back(x);
  }
  return r;
}

Word inverse_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r) x = inverse_letter(x);
  return r;
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return free_reduce(r);
}

CayleyTree::CayleyTree(int k) : k_(k) {
  if (k < 1) throw std::invalid_argument("free group rank must be positive");
}

Word CayleyTree::ray_vertex(const Boundary& xi, int d) const {
  Word w(d);
  for (int i = 0; i < d; ++i) w[i] = xi.letter(i);
  return w;
}

Address CayleyTree::address(const Vertex& v) const {
  Address a;
  a.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (i == 0) {
      a.push_back(v[0]);
    } else {
      const int bad = inverse_letter(v[i - 1]);
      a.push_back(v[i] < bad ? v[i] : v[i] - 1);
    }
  }
  return a;
}

Address CayleyTree::boundary_address(const Boundary& xi, int len) const { return address(ray_vertex(xi, len)); }

CayleyTree::Boundary CayleyTree::boundary(Word prefix, Word period) const {
  if (period.empty()) throw std::invalid_argument("boundary word needs a nonempty period");
  for (int x : prefix)
    if (x < 0 || x >= 2 * k_) throw std::invalid_argument("letter out of range");
  for (int x : period)
    if (x < 0 || x >= 2 * k_) throw std::invalid_argument("letter out of range");
  if (free_reduce(period) != period || period.front() == inverse_letter(period.back()))
    throw std::invalid_argument("period must be cyclically reduced");
  if (free_reduce(prefix) != prefix) throw std::invalid_argument("prefix must be reduced");
  if (!prefix.empty() && prefix.back() == inverse_letter(period.front()))
    throw std::invalid_argument("prefix and period cancel");
  return {std::move(prefix), std::move(period)};
}

CayleyTree::Boundary CayleyTree::act(const Word& g, const Boundary& xi) const {
  // Unroll the period so that cancellation with g stays inside the finite part.
  Word body = xi.prefix;
  while (body.size() < g.size() + xi.prefix.size() + 1) body.insert(body.end(), xi.period.begin(), xi.period.end());
  Word w = concat(g, body);
  if (w.size() < body.size() - g.size()) throw std::logic_error("cancellation beyond the unrolled part");
  return {std::move(w), xi.period};
}

}  // namespace treespace

#include "treespace/double_coset.hpp"

#include <stdexcept>

namespace treespace {

namespace {
bool is_a(int x) { return x == 0 || x == 1; }
}  // namespace

bool is_canonical_coset_word(const Word& w) {
  return !w.empty() && free_reduce(w) == w && !is_a(w.front()) && !is_a(w.back());
}

Word canonical_coset_word(const Word& g) {
  Word w = free_reduce(g);
  size_t b = 0, e = w.size();
  while (b < e && is_a(w[b])) ++b;
  while (e > b && is_a(w[e - 1])) --e;
  if (b == e) throw std::invalid_argument("element lies in <a>");
  return Word(w.begin() + b, w.begin() + e);
}

int coset_depth(const CayleyTree& T, const Word& w) {
  const auto am = T.axis_minus(), ap = T.axis_plus();
  return line_distance(T, am, ap, T.act(w, am), T.act(w, ap));
}

void for_each_coset_word(int k, int D_max, const std::function<bool(const Word&)>& visit) {
  const int L = 2 * k;
  for (int len = 1; len <= D_max; ++len) {
    Word w(len);
    bool stop = false;
    std::function<void(int)> rec = [&](int i) {
      if (stop) return;
      if (i == len) {
        if (!is_a(w.back()) && !visit(w)) stop = true;
        return;
      }
      for (int x = 0; x < L && !stop; ++x) {
        if (i == 0 && is_a(x)) continue;
        if (i > 0 && x == inverse_letter(w[i - 1])) continue;
        w[i] = x;
        rec(i + 1);
      }
    };
    rec(0);
    if (stop) return;
  }
}

CosetList free_group_double_cosets(int k, int D_max, long max_count) {
  CosetList out;
  CayleyTree T(k);
  for_each_coset_word(k, D_max, [&](const Word& w) {
    if (static_cast<long>(out.cosets.size()) >= max_count) {
      out.truncated = true;
      return false;
    }
    out.cosets.push_back({w, coset_depth(T, w)});
    return true;
  });
  return out;
}

CylinderUnion coset_neighborhood(const CayleyTree& T, const Word& w, int m) {
  const auto C0 = ConvexSub<CayleyTree>::line(T.axis_minus(), T.axis_plus());
  const auto zp = T.act(w, T.axis_plus()), zm = T.act(w, T.axis_minus());
  return dC_ball(T, C0, zp, m).unite(dC_ball(T, C0, zm, m));
}

}  // namespace treespace

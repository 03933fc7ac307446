#include "quadratic/orbit.hpp"

#include <deque>

#include "exactnum/poly.hpp"

namespace quadratic {

QuadIrr reduce(const QuadIrr& alpha) {
  Poly f = alpha.floor();
  return f.is_zero() ? alpha : alpha.translate(-f);
}

namespace {

// -1/beta; the minimal polynomial C Y^2 - B Y + A keeps the same sqrt(D) branch before normalization.
QuadIrr inv_neg(const QuadIrr& b) { return QuadIrr(b.C(), -b.B(), b.A(), b.sigma()); }

struct Enumerator {
  QMag H;
  long budget;
  std::set<QuadIrr> seen;
  std::deque<QuadIrr> queue;
  std::vector<Mobius> finite;
  bool exhausted = false;

  bool offer(const QuadIrr& beta) {
    if (!(beta.height() <= H)) return false;
    QuadIrr r = reduce(beta);
    if (seen.contains(r)) return false;
    if (static_cast<long>(seen.size()) >= budget) {
      exhausted = true;
      return false;
    }
    seen.insert(r);
    queue.push_back(r);
    return true;
  }

  // Applies the generators with translation degree in [lo, hi]; returns the number of new elements.
  long apply(const QuadIrr& beta, const std::vector<Poly>& ts, bool with_finite) {
    long added = 0;
    for (const Poly& t : ts) added += offer(inv_neg(beta.translate(t)));
    if (with_finite)
      for (const Mobius& g : finite) added += offer(act(g, beta));
    return added;
  }

  void saturate(const std::vector<Poly>& ts) {
    while (!queue.empty() && !exhausted) {
      QuadIrr b = queue.front();
      queue.pop_front();
      apply(b, ts, true);
    }
  }
};

std::vector<Poly> polys_of_degree(u32 q, int d) {
  std::vector<Poly> out;
  for (Poly& p : exactnum::all_polys_up_to_degree(q, d))
    if (p.degree() == d) out.push_back(std::move(p));
  return out;
}

}  // namespace

OrbitResult orbit_enumerate(const QuadIrr& alpha, QMag H_max, const OrbitOptions& opt) {
  const u32 q = alpha.q();
  Enumerator en{H_max, opt.budget, {}, {}, Mobius::sl2_fq(q)};
  OrbitResult res;
  int d = opt.d_max;
  std::vector<Poly> ts = exactnum::all_polys_up_to_degree(q, d);
  // alpha's own height may exceed H_max; it still seeds the search.
  QuadIrr start = reduce(alpha);
  if (!en.offer(start)) en.apply(start, ts, true);
  const int d_limit = opt.d_max + 3;
  while (true) {
    en.saturate(ts);
    if (en.exhausted) break;
    // Verification round with the next translation degree.
    std::vector<Poly> extra = polys_of_degree(q, d + 1);
    std::vector<QuadIrr> snapshot(en.seen.begin(), en.seen.end());
    long added = 0;
    for (const QuadIrr& b : snapshot) added += en.apply(b, extra, false);
    if (en.exhausted) break;
    if (added == 0) {
      res.complete = true;
      break;
    }
    ++d;
    ts.insert(ts.end(), extra.begin(), extra.end());
    if (d > d_limit) break;
  }
  res.d_used = d;
  res.budget_exhausted = en.exhausted;
  res.elements.assign(en.seen.begin(), en.seen.end());
  return res;
}

}  // namespace quadratic

#include "bcengine/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bcengine {

namespace {

bool is_prefix(const Address& a, const Address& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::string lvl(int n) { return "n=" + std::to_string(n); }

void fit(std::optional<mpq_class>& slot, const mpq_class& v) {
  if (!slot || v > *slot) slot = v;
}

Tagged tagged_cylinders(const BCInstance& inst, const std::vector<size_t>& ids, auto radius) {
  Tagged out;
  for (size_t i : ids)
    for (const auto& a : inst.items[i].ball(radius(inst.items[i])).cylinders()) out.emplace_back(a, i);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<std::pair<size_t, size_t>> first_overlap(Tagged cyl) {
  std::sort(cyl.begin(), cyl.end());
  std::vector<const std::pair<Address, size_t>*> stack;
  for (const auto& e : cyl) {
    while (!stack.empty() && !is_prefix(stack.back()->first, e.first)) stack.pop_back();
    if (!stack.empty() && stack.back()->second != e.second) return std::make_pair(stack.back()->second, e.second);
    stack.push_back(&e);
  }
  return std::nullopt;
}

bool HypothesisReport::part_a() const { return cond(0).holds && cond(1).holds; }

bool HypothesisReport::part_b() const {
  for (int k = 1; k <= 7; ++k)
    if (!cond(k).holds) return false;
  return true;
}

std::vector<int> HypothesisReport::failing() const {
  std::vector<int> out;
  for (const auto& c : conditions)
    if (!c.holds) out.push_back(c.number);
  return out;
}

json HypothesisReport::to_json() const {
  json a = json::array();
  for (const auto& c : conditions) {
    json cj = {{"condition", c.number}, {"holds", c.holds}, {"detail", c.detail}};
    if (c.fitted_c) cj["fitted_c"] = to_string(*c.fitted_c);
    a.push_back(cj);
  }
  return {{"conditions", a},
          {"fitted_c", to_string(fitted_c)},
          {"convergence_part_holds", part_a()},
          {"divergence_part_holds", part_b()},
          {"warnings", warnings}};
}

HypothesisReport check_hypotheses(const BCInstance& inst) {
  inst.validate();
  const auto& r = inst.rates;
  if (inst.n_max() - r.n_min + 1 < 2) throw InstanceError("need at least two levels");
  const auto levels = inst.by_level();
  HypothesisReport rep;
  rep.warnings = inst.warnings;
  if (!inst.enumeration_complete) rep.warnings.push_back("index set enumeration incomplete");
  rep.conditions.resize(8);
  for (int k = 0; k <= 7; ++k) rep.conditions[k].number = k;
  auto fail = [](ConditionResult& c, const std::string& why) {
    if (c.holds) c.detail = why;
    c.holds = false;
  };

  // (0) Card I_n <= c f1(n), mu(B_i(eps)) <= c f4 f5(eps); (4) two-sided count; (5) two-sided mass
  auto& c0 = rep.conditions[0];
  auto& c4 = rep.conditions[4];
  auto& c5 = rep.conditions[5];
  for (int n = r.n_min; n <= inst.n_max(); ++n) {
    const size_t k = r.idx(n);
    const mpq_class card = static_cast<unsigned long>(levels[k].size());
    fit(c0.fitted_c, card / r.f1[k]);
    if (card == 0) {
      fail(c4, "I_" + std::to_string(n) + " is empty");
      continue;
    }
    fit(c4.fitted_c, std::max<mpq_class>(card / r.f1[k], r.f1[k] / card));
  }
  for (const auto& it : inst.items) {
    const size_t k = r.idx(it.level);
    for (const auto& [m, b] : it.balls) {
      if (m < r.m2[k]) continue;
      const mpq_class ref = r.f4[k] * r.f5(m);
      const mpq_class mass = b.mass();
      fit(c0.fitted_c, mass / ref);
      if (mass == 0) {
        fail(c5, "item " + it.id + ": B(e^-" + std::to_string(m) + ") is empty");
        continue;
      }
      fit(c5.fitted_c, std::max<mpq_class>(mass / ref, ref / mass));
    }
  }
  for (auto* c : {&c0, &c4, &c5}) {
    if (c->fitted_c && *c->fitted_c < 1) c->fitted_c = mpq_class(1);
    if (c->fitted_c && *c->fitted_c > r.c)
      fail(*c, "needs c >= " + to_string(*c->fitted_c) + ", declared c = " + to_string(r.c));
  }

  // (1) f3 <= f2
  auto& c1 = rep.conditions[1];
  for (int n = r.n_min; n <= inst.n_max(); ++n)
    if (r.m3[r.idx(n)] < r.m2[r.idx(n)]) fail(c1, "f3 > f2 at " + lvl(n));

  // (2) 1 / f5(f2(n)) <= f4(n) f1(n)
  auto& c2 = rep.conditions[2];
  for (int n = r.n_min; n <= inst.n_max(); ++n) {
    const size_t k = r.idx(n);
    if (1 / r.f5(r.m2[k]) > r.f4[k] * r.f1[k]) fail(c2, "1/f5(f2) > f4 f1 at " + lvl(n));
  }

  // (3) f5(c' eps) <= c'' f5(eps); for a power law this is base^{k'} <= c''
  auto& c3 = rep.conditions[3];
  c3.fitted_c = pow_q(r.f5_base, r.c_prime_exp);
  if (*c3.fitted_c > r.c_second) fail(c3, "f5(c' eps) / f5(eps) = " + to_string(*c3.fitted_c) + " > c''");

  // (6) B_i(f2(n)), i in I_n, pairwise disjoint
  auto& c6 = rep.conditions[6];
  for (int n = r.n_min; n <= inst.n_max() && c6.holds; ++n) {
    const int m2 = r.m2[r.idx(n)];
    auto hit = first_overlap(tagged_cylinders(inst, levels[r.idx(n)], [&](const Item&) { return m2; }));
    if (hit)
      fail(c6, "items " + inst.items[hit->first].id + " and " + inst.items[hit->second].id + " overlap at " + lvl(n));
  }

  // (7) B_j(f3) meets B_i(f3), n_i < n_j  =>  B_j(f2(n_j)) inside B_i(c f3(n_i))
  auto& c7 = rep.conditions[7];
  const int shift = r.c_shift();
  if (r.c > 1)
    rep.warnings.push_back("c f3 snapped down to the grid: e^{-(m3 - " + std::to_string(shift) + ")}");
  std::vector<size_t> all(inst.items.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto f3cyl = tagged_cylinders(inst, all, [&](const Item& it) { return r.m3[r.idx(it.level)]; });
  std::set<std::pair<size_t, size_t>> seen;
  for (size_t j = 0; j < inst.items.size() && c7.holds; ++j) {
    const Item& J = inst.items[j];
    std::set<size_t> cand;
    for (const auto& x : J.ball(r.m3[r.idx(J.level)]).cylinders()) {
      for (size_t len = 0; len <= x.size(); ++len) {
        Address p(x.begin(), x.begin() + len);
        auto lo = std::lower_bound(f3cyl.begin(), f3cyl.end(), std::make_pair(p, size_t{0}));
        for (; lo != f3cyl.end() && lo->first == p; ++lo) cand.insert(lo->second);
      }
      for (auto it = std::lower_bound(f3cyl.begin(), f3cyl.end(), std::make_pair(x, size_t{0}));
           it != f3cyl.end() && is_prefix(x, it->first); ++it)
        cand.insert(it->second);
    }
    for (size_t i : cand) {
      const Item& I = inst.items[i];
      if (I.level >= J.level || !seen.emplace(i, j).second) continue;
      const auto& outer = I.ball(r.m3[r.idx(I.level)] - shift);
      if (!outer.contains(J.ball(r.m2[r.idx(J.level)]))) {
        fail(c7, "B_" + J.id + "(f2) not inside B_" + I.id + "(c f3)");
        break;
      }
    }
  }

  rep.fitted_c = 1;
  for (auto* c : {&c0, &c4, &c5})
    if (c->fitted_c && *c->fitted_c > rep.fitted_c) rep.fitted_c = *c->fitted_c;
  for (auto& c : rep.conditions)
    if (c.holds && c.detail.empty()) c.detail = "ok";
  return rep;
}

CylinderUnion level_set(const BCInstance& inst, int n, size_t budget) {
  const auto& r = inst.rates;
  const int m3 = r.m3[r.idx(n)];
  std::vector<Address> list;
  for (const auto& it : inst.items) {
    if (it.level != n) continue;
    for (const auto& a : it.ball(m3).cylinders()) list.push_back(a);
    if (list.size() > budget) throw BudgetExceeded("cylinder budget exceeded at level " + std::to_string(n));
  }
  return CylinderUnion::from_list(inst.q, std::move(list));
}

mpq_class limsup_measure_truncated(const BCInstance& inst, int n0, int N, size_t budget) {
  if (n0 > N) throw InstanceError("n0 > N");
  return tail_masses(inst, N, budget).at(static_cast<size_t>(n0 - inst.rates.n_min));
}

std::vector<mpq_class> tail_masses(const BCInstance& inst, int N, size_t budget) {
  const int lo = inst.rates.n_min;
  if (N < lo || N > inst.n_max()) throw InstanceError("truncation level outside the instance");
  std::vector<mpq_class> out(static_cast<size_t>(N - lo + 1));
  CylinderUnion U(inst.q);
  for (int n = N; n >= lo; --n) {
    U = U.unite(level_set(inst, n, budget));
    if (U.size() > budget) throw BudgetExceeded("cylinder budget exceeded in the union");
    out[static_cast<size_t>(n - lo)] = U.mass();
  }
  return out;
}

mpq_class series_partial(const BCInstance& inst, int N) {
  const auto& r = inst.rates;
  mpq_class s = 0;
  for (int n = r.n_min; n <= N; ++n) {
    const size_t k = r.idx(n);
    s += r.f1[k] * r.f4[k] * r.f5(r.m3[k]);
  }
  return s;
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::measure_zero:
      return "measure-zero";
    case VerdictKind::positive_measure:
      return "positive-measure";
    case VerdictKind::hypotheses_violated:
      return "hypotheses-violated";
    case VerdictKind::inconclusive:
      return "inconclusive";
  }
  return "?";
}

json Verdict::to_json() const {
  json j = {{"verdict", to_string(kind)}, {"detail", detail}, {"series", series}, {"tail_ratio", tail_ratio}};
  j["failing_conditions"] = failing;
  json t = json::array();
  for (const auto& x : tails) t.push_back(to_string(x));
  j["tail_masses"] = t;
  if (qi_constant) j["quasi_independence_constant"] = *qi_constant;
  if (qi_measured) j["quasi_independence_measured"] = *qi_measured;
  if (kochen_stone) j["kochen_stone_ratio"] = *kochen_stone;
  return j;
}

Verdict verdict(const BCInstance& inst, size_t budget) { return verdict(inst, check_hypotheses(inst), budget); }

Verdict verdict(const BCInstance& inst, const HypothesisReport& rep, size_t budget) {
  Verdict v;
  const auto& r = inst.rates;
  if (!rep.part_a()) {
    v.kind = VerdictKind::hypotheses_violated;
    v.failing = rep.failing();
    v.detail = "counting or radius hypotheses fail";
    return v;
  }
  const int N = inst.n_max(), half = r.n_min + (N - r.n_min) / 2;
  const mpq_class SN = series_partial(inst, N), Sh = series_partial(inst, half);
  v.tail_ratio = mpq_class((SN - Sh) / Sh).get_d();
  auto term = [&](int n) {
    const size_t k = r.idx(n);
    return mpq_class(r.f1[k] * r.f4[k] * r.f5(r.m3[k]));
  };
  const double decay = std::pow(mpq_class(term(N) / term(half)).get_d(), 1.0 / std::max(1, N - half));
  if (v.tail_ratio < 0.02 && decay < 0.9) v.series = "convergent";
  else if (v.tail_ratio > 0.15) v.series = "divergent";
  else v.series = "undecided";

  try {
    v.tails = tail_masses(inst, N, budget);
  } catch (const BudgetExceeded& e) {
    v.detail = std::string("truncation: ") + e.what();
    return v;
  }
  const mpq_class& tN = v.tails.back();
  const mpq_class& th = v.tails[static_cast<size_t>(half - r.n_min)];

  if (v.series == "convergent") {
    if (tN * 10 <= th) {
      v.kind = VerdictKind::measure_zero;
      v.detail = "series tail small and truncated tail masses decay";
    } else {
      v.detail = "series looks convergent but truncated tail masses do not decay";
    }
    return v;
  }
  if (v.series != "divergent") {
    v.detail = "series behaviour undecided on the truncation range";
    return v;
  }
  if (!rep.part_b()) {
    v.kind = VerdictKind::hypotheses_violated;
    v.failing = rep.failing();
    v.detail = "divergent series but conditions (1)-(7) do not all hold";
    return v;
  }
  const double c = r.c.get_d();
  const double C = std::pow(c, 8) * std::pow(r.c_second.get_d(), std::log(c) / r.c_prime_exp + 1);
  v.qi_constant = C;
  std::vector<CylinderUnion> A;
  for (int n = r.n_min; n <= N; ++n) A.push_back(level_set(inst, n, budget));
  mpq_class sum = 0, pair_sum = 0;
  double worst = 0;
  for (size_t a = 0; a < A.size(); ++a) {
    const mpq_class ma = A[a].mass();
    sum += ma;
    pair_sum += ma;
    for (size_t b = a + 1; b < A.size(); ++b) {
      const mpq_class mab = A[a].intersect(A[b]).mass();
      pair_sum += 2 * mab;
      const mpq_class prod = ma * A[b].mass();
      if (prod > 0) worst = std::max(worst, mpq_class(mab / prod).get_d());
    }
  }
  v.qi_measured = worst;
  v.kochen_stone = pair_sum > 0 ? mpq_class(sum * sum / pair_sum).get_d() : 0.0;
  if (worst > C) {
    v.detail = "measured quasi-independence exceeds the constant";
    return v;
  }
  const mpq_class floor = mpq_class(1) / mpq_class(C);
  bool bounded = true;
  for (int n0 = r.n_min; n0 <= half; ++n0)
    if (v.tails[static_cast<size_t>(n0 - r.n_min)] < floor) bounded = false;
  if (bounded) {
    v.kind = VerdictKind::positive_measure;
    v.detail = "conditions (1)-(7) hold and tail masses stay above 1/C";
  } else {
    v.detail = "tail masses fall below 1/C";
  }
  return v;
}

}  // namespace bcengine

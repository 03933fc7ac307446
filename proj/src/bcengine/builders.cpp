#include "bcengine/builders.hpp"

#include <cmath>
#include <set>

#include "treespace/double_coset.hpp"

namespace bcengine {

namespace {

using treespace::CayleyTree;
using treespace::Word;

// Grid exponent of g(t), rounded up (f snapped down onto the grid).
int grid_g(const GFn& g, int t, std::vector<std::string>& warnings) {
  const double v = g(t);
  if (!(v >= 0)) throw InstanceError("g must be non-negative (f <= 1)");
  const int k = static_cast<int>(std::ceil(v - 1e-12));
  if (std::abs(v - k) > 1e-12 && warnings.size() < 20)
    warnings.push_back("f(" + std::to_string(t) + ") off the grid, snapped down to e^-" + std::to_string(k));
  return k;
}

// Radii tabulated for an item of level n: both rates, one step inside f2, and c f3 snapped.
std::set<int> radii(const RateFns& r, int n) {
  const size_t k = r.idx(n);
  return {r.m2[k], r.m2[k] + 1, r.m3[k], r.m3[k] - r.c_shift()};
}

void fill_balls(const RateFns& r, Item& it, const std::function<CylinderUnion(int)>& ball) {
  for (int m : radii(r, it.level)) it.balls.emplace(m, ball(m));
}

std::string word_id(const Word& w) {
  static const char* L = "aAbB";
  std::string s;
  for (int x : w) s += L[x];
  return s;
}

std::string addr_id(const Address& a) {
  std::string s;
  for (int x : a) s += static_cast<char>('0' + x);
  return s;
}

void reserve_levels(RateFns& r, int n_min, int n_max) {
  r.n_min = n_min;
  const size_t L = static_cast<size_t>(n_max - n_min + 1);
  r.f1.assign(L, 1);
  r.f4.assign(L, 1);
  r.m2.assign(L, 0);
  r.m3.assign(L, 0);
}

}  // namespace

BCInstance build_spiral_instance(int n_max, const GFn& g, long max_cosets) {
  if (n_max < 2) throw InstanceError("need n_max >= 2");
  BCInstance inst;
  inst.name = "spiral";
  inst.q = 3;
  auto& r = inst.rates;
  reserve_levels(r, 1, n_max);
  r.f5_base = 3;
  r.c = 5;
  r.c_prime_exp = 1;
  r.c_second = 3;
  for (int n = 1; n <= n_max; ++n) {
    const size_t k = r.idx(n);
    r.f1[k] = pow_q(3, n);
    r.f4[k] = 3;
    r.m2[k] = n + 1;
    r.m3[k] = n + 1 + grid_g(g, n, inst.warnings);
  }
  const CayleyTree T(2);
  auto cos = treespace::free_group_double_cosets(2, n_max, max_cosets);
  if (cos.truncated) {
    inst.enumeration_complete = false;
    inst.warnings.push_back("double coset enumeration stopped at " + std::to_string(cos.cosets.size()));
  }
  for (const auto& dc : cos.cosets) {
    if (dc.depth < 1 || dc.depth > n_max) continue;
    Item it;
    it.id = word_id(dc.w);
    it.level = dc.depth;
    fill_balls(r, it, [&](int m) { return treespace::coset_neighborhood(T, dc.w, std::max(m, 1)); });
    inst.items.push_back(std::move(it));
  }
  return inst;
}

BCInstance build_point_instance(int n_max, const GFn& g, bool unit_shells, int t_cap) {
  if (n_max < 2) throw InstanceError("need n_max >= 2");
  BCInstance inst;
  inst.name = unit_shells ? "point-unit-shells" : "point-sparse-shells";
  inst.q = 3;
  std::vector<int> t{1}, gg;
  while (true) {
    gg.push_back(grid_g(g, t.back(), inst.warnings));
    if (static_cast<int>(t.size()) == n_max) break;
    const int next = t.back() + (unit_shells ? 1 : std::max(1, gg.back()));
    if (next > t_cap) {
      inst.enumeration_complete = false;
      inst.warnings.push_back("orbit cap " + std::to_string(t_cap) + " reached after " +
                              std::to_string(t.size()) + " shells");
      break;
    }
    t.push_back(next);
  }
  if (t.size() < 2) throw InstanceError("orbit cap too small for two shells");
  auto& r = inst.rates;
  reserve_levels(r, 1, static_cast<int>(t.size()));
  r.f5_base = 3;
  r.c = 3;
  r.c_prime_exp = 1;
  r.c_second = 3;
  for (size_t k = 0; k < t.size(); ++k) {
    r.f1[k] = pow_q(3, t[k]);
    r.f4[k] = 1;
    r.m2[k] = t[k];
    r.m3[k] = t[k] + gg[k];
  }
  const CayleyTree T(2);
  for (size_t k = 0; k < t.size(); ++k) {
    const int len = t[k];
    Word w(static_cast<size_t>(len));
    std::function<void(int)> rec = [&](int i) {
      if (i == len) {
        const auto zeta = T.boundary(w, {w.back()});
        Item it;
        it.id = word_id(w);
        it.level = static_cast<int>(k) + 1;
        fill_balls(r, it, [&](int m) {
          return CylinderUnion::cylinder(3, T.boundary_address(zeta, std::max(m, 0)));
        });
        inst.items.push_back(std::move(it));
        return;
      }
      for (int x = 0; x < 4; ++x) {
        if (i > 0 && x == treespace::inverse_letter(w[i - 1])) continue;
        w[i] = x;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return inst;
}

BCInstance build_nested_instance(int n_max) {
  if (n_max < 2) throw InstanceError("need n_max >= 2");
  BCInstance inst;
  inst.name = "nested";
  inst.q = 2;
  auto& r = inst.rates;
  reserve_levels(r, 1, n_max);
  r.f5_base = 2;
  r.c = 2;
  r.c_prime_exp = 1;
  r.c_second = 2;
  for (int n = 1; n <= n_max; ++n) {
    const size_t k = r.idx(n);
    r.m2[k] = n;
    r.m3[k] = 2 * n + 1;
    Item it;
    it.id = std::to_string(n);
    it.level = n;
    fill_balls(r, it, [](int m) { return CylinderUnion::cylinder(2, Address(static_cast<size_t>(std::max(m, 0)), 0)); });
    inst.items.push_back(std::move(it));
  }
  return inst;
}

BCInstance build_independent_instance(int n_max) {
  if (n_max < 2) throw InstanceError("need n_max >= 2");
  BCInstance inst;
  inst.name = "independent";
  inst.q = 2;
  auto& r = inst.rates;
  reserve_levels(r, 1, n_max);
  r.f5_base = 2;
  r.c = 3;
  r.c_prime_exp = 1;
  r.c_second = 2;
  for (int n = 1; n <= n_max; ++n) {
    const size_t k = r.idx(n);
    r.f1[k] = pow_q(2, n);
    r.f4[k] = 2;
    r.m2[k] = r.m3[k] = n + 1;
    Address p(static_cast<size_t>(n));
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == p.size()) {
        Item it;
        it.id = addr_id(p);
        it.level = n;
        // ray p 0 0 0 ...
        fill_balls(r, it, [&](int m) {
          Address a(p.begin(), p.begin() + std::min<size_t>(p.size(), static_cast<size_t>(std::max(m, 0))));
          a.resize(static_cast<size_t>(std::max(m, 0)), 0);
          return CylinderUnion::cylinder(2, a);
        });
        inst.items.push_back(std::move(it));
        return;
      }
      for (int x = 0; x < (i == 0 ? 3 : 2); ++x) {
        p[i] = x;
        rec(i + 1);
      }
    };
    rec(0);
  }
  return inst;
}

BCInstance overlapping_level_instance(int n_max) {
  BCInstance inst = build_independent_instance(n_max);
  inst.name = "overlapping-level";
  for (const auto& it : inst.items)
    if (it.level == 2) {
      Item dup = it;
      dup.id = it.id + "'";
      inst.items.push_back(std::move(dup));
      break;
    }
  return inst;
}

BCInstance inverted_radii_instance(int n_max) {
  BCInstance inst = build_independent_instance(n_max);
  inst.name = "inverted-radii";
  const int n = 2;
  auto& r = inst.rates;
  const size_t k = r.idx(n);
  r.m3[k] = r.m2[k] - 1;
  for (auto& it : inst.items)
    if (it.level == n) {
      Address a(it.ball(r.m2[k]).cylinders().front());
      for (int m = r.m3[k] - r.c_shift(); m <= r.m3[k]; ++m)
        it.balls.emplace(m, CylinderUnion::cylinder(2, Address(a.begin(), a.begin() + m)));
    }
  return inst;
}

}  // namespace bcengine

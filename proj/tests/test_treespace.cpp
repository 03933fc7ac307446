#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "quadratic/orbit.hpp"
#include "treespace/double_coset.hpp"

using namespace treespace;
using exactnum::Rng;

namespace {

// (q+1)-regular tree whose vertices are their own address codes; boundary points are digit streams.
struct AddressTree {
  using Vertex = Address;
  struct Boundary {
    u64 seed = 0;
    Address prefix;
  };
  int q;
  int branching() const { return q; }
  Vertex base() const { return {}; }
  int depth(const Vertex& v) const { return static_cast<int>(v.size()); }
  Vertex ancestor(const Vertex& v, int d) const { return Vertex(v.begin(), v.begin() + d); }
  Vertex ray_vertex(const Boundary& xi, int d) const {
    Vertex v = xi.prefix;
    Rng rng(xi.seed);
    while (static_cast<int>(v.size()) < d) v.push_back(static_cast<int>(rng.below(v.empty() ? q + 1 : q)));
    v.resize(d);
    return v;
  }
  Address address(const Vertex& v) const { return v; }
};

BTBoundary laurent_point(u32 q, int lo, std::vector<u32> digits) {
  return BTBoundary::point(KPoint::from_laurent_exact(Laurent(q, lo, digits)));
}

}  // namespace

TEST_CASE("cylinder unions") {
  const int q = 2;
  auto c = CylinderUnion::cylinder(q, {1, 0, 1});
  CHECK(c.mass() == mpq_class(1, 12));  // (1/3) 2^-2 on the 3-regular tree
  CHECK((c.unite(CylinderUnion::complement_of(q, {1, 0, 1})) == CylinderUnion::whole(q)));
  CHECK(CylinderUnion::complement_of(q, {1, 0, 1}).mass() == mpq_class(11, 12));
  for (int qq : {2, 3, 5}) {
    // all depth-3 cylinders partition the boundary
    std::vector<Address> all;
    for (int a = 0; a <= qq; ++a)
      for (int b = 0; b < qq; ++b)
        for (int d = 0; d < qq; ++d) all.push_back({a, b, d});
    auto u = CylinderUnion::from_list(qq, all);
    CHECK(u == CylinderUnion::whole(qq));
    all.pop_back();
    CHECK(CylinderUnion::from_list(qq, all).size() == static_cast<size_t>(qq + 1 - 1 + qq - 1 + qq - 1));
    CHECK(u.mass() == 1);
  }
  auto a = CylinderUnion::from_list(3, {{0}, {1, 2}, {1, 2, 0}});
  CHECK(a.size() == 2);
  auto b = CylinderUnion::from_list(3, {{1}, {2, 0}});
  auto i = a.intersect(b);
  CHECK(i == CylinderUnion::cylinder(3, {1, 2}));
  // inclusion-exclusion, exact
  CHECK(a.unite(b).mass() == a.mass() + b.mass() - i.mass());
  CHECK(a.contains(CylinderUnion::cylinder(3, {0, 1, 1})));
  CHECK(!a.contains(b));
  CHECK(CylinderUnion::cylinder(3, {0}).disjoint_from(CylinderUnion::cylinder(3, {1, 0})));
  CHECK_THROWS(CylinderUnion::cylinder(3, {4}));
  CHECK_THROWS(CylinderUnion::cylinder(3, {0, 3}));
}

TEST_CASE("shadows on a 3-regular tree") {
  AddressTree T{2};
  Address v{1, 0, 1};
  auto s = shadow(T, T.base(), v);
  CHECK(s.mass() == mpq_class(1, 12));
  // nesting along the ray
  Address v2{1, 0, 1, 1, 0};
  CHECK(shadow(T, T.base(), v).contains(shadow(T, T.base(), v2)));
  // seen from a point beyond v, the shadow of v is the complement of the branch toward x
  Address x{1, 0, 1, 1};
  auto s2 = shadow(T, x, v);
  CHECK(s2 == CylinderUnion::complement_of(2, {1, 0, 1, 1}));
  // shadows along a ray decay like q^-d exactly
  AddressTree::Boundary xi{7, {}};
  for (int d = 1; d < 12; ++d) {
    auto m = shadow(T, T.base(), T.ray_vertex(xi, d)).mass();
    CHECK(m == mpq_class(1, 3 * (1 << (d - 1))));
  }
  // from another point y the masses are comparable to q^-d(y,v), here with a constant ratio
  Address y{2, 1, 1};
  std::set<mpq_class> ratios;
  for (int d = 5; d < 14; ++d) {
    auto v3 = T.ray_vertex(xi, d);
    mpq_class r = shadow(T, y, v3).mass();
    r *= mpq_class(mpz_class(1) << dist(T, y, v3));
    ratios.insert(r);
  }
  CHECK(ratios.size() == 1);
}

TEST_CASE("Bruhat-Tits coordinates") {
  const u32 q = 3;
  BTTree T(q);
  auto x0 = T.base();
  CHECK(T.depth(x0) == 0);
  // ball {nu(x - X) >= 1} : up one step to {nu >= -1}, then down twice
  auto v = T.make(1, -1, {1, 0});
  CHECK(T.depth(v) == 1 - 2 * (-1));
  CHECK(T.ancestor(v, 1) == T.make(-1, 0, {}));
  CHECK(T.ancestor(v, 2) == T.make(0, -1, {1}));
  CHECK(T.address(v) == Address{0, 1, 0});
  CHECK(oracle::dist(T, v, x0) == 3);
  // S swaps 0 and infinity and fixes x0
  CHECK(T.invert(x0) == x0);
  CHECK(T.invert(T.make(2, 0, {})) == T.make(-2, 0, {}));
  auto zero = BTBoundary::point(KPoint::from_poly(Poly(q)));
  CHECK(T.invert(zero).inf);
  CHECK(!T.invert(BTBoundary::infinity()).inf);
  // equivariance of vertex maps with the boundary maps along rays
  Rng rng(1);
  for (int k = 0; k < 200; ++k) {
    auto xi = oracle::bt_point(T, rng);
    Poly b(q, {static_cast<long long>(rng.below(3)), static_cast<long long>(rng.below(3))});
    u32 s = 1 + static_cast<u32>(rng.below(2));
    auto yi = T.invert(T.scale(T.translate(xi, b), s));
    for (int d = 0; d < 10; ++d) {
      auto w = T.invert(T.scale(T.translate(T.ray_vertex(xi, d + 6), b), s));
      // the image of a far vertex of the ray lies close to the image ray
      int g = gromov(T, w, yi);
      CHECK(T.depth(w) - g <= 12);
    }
    // isometry: distances preserved
    auto u1 = T.ray_vertex(xi, 4), u2 = T.ray_vertex(oracle::bt_point(T, rng), 5);
    auto f = [&](const BTVertex& z) { return T.invert(T.scale(T.translate(z, b), s)); };
    CHECK(dist(T, f(u1), f(u2)) == dist(T, u1, u2));
  }
}

TEST_CASE("Gromov products: closed form vs generic") {
  const u32 q = 3;
  BTTree T(q);
  Rng rng(2);
  for (int k = 0; k < 300; ++k) {
    auto xi = oracle::bt_point(T, rng);
    auto eta = rng.below(2) ? oracle::bt_near(T, xi, rng) : oracle::bt_point(T, rng);
    if (xi.inf || eta.inf || same_point(T, xi, eta)) continue;
    auto nu = [&](const BTBoundary& z) {
      auto v = z.pt->valuation_below(0);
      return v ? *v : 0;
    };
    const int u = nu(xi), u2 = nu(eta);
    int expect;
    if (u != u2) {
      expect = -std::max(u, u2);
    } else {
      const int w = -*hamenstadt(xi, eta);
      expect = w - 2 * u;
    }
    CHECK(gromov(T, xi, eta) == expect);
  }
}

TEST_CASE("Busemann functions") {
  BTTree T(3);
  CayleyTree F(2);
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    auto xi = oracle::bt_point(T, rng);
    auto x = T.ray_vertex(oracle::bt_point(T, rng), static_cast<int>(rng.below(6)));
    auto y = T.ray_vertex(oracle::bt_point(T, rng), static_cast<int>(rng.below(6)));
    auto z = T.ray_vertex(oracle::bt_point(T, rng), static_cast<int>(rng.below(6)));
    CHECK(busemann(T, xi, x, y) == -busemann(T, xi, y, x));
    CHECK(busemann(T, xi, x, z) == busemann(T, xi, x, y) + busemann(T, xi, y, z));
    CHECK(busemann(T, xi, x, y) == oracle::busemann(T, xi, x, y));
    int kk = static_cast<int>(rng.below(5));
    CHECK(busemann(T, xi, x, ray_from(T, x, xi, kk)) == kk);

    auto zeta = oracle::cay_point(F, rng);
    auto a = F.ray_vertex(oracle::cay_point(F, rng), static_cast<int>(rng.below(6)));
    auto b = F.ray_vertex(oracle::cay_point(F, rng), static_cast<int>(rng.below(6)));
    auto c = F.ray_vertex(oracle::cay_point(F, rng), static_cast<int>(rng.below(6)));
    CHECK(busemann(F, zeta, a, c) == busemann(F, zeta, a, b) + busemann(F, zeta, b, c));
    CHECK(busemann(F, zeta, a, b) == oracle::busemann(F, zeta, a, b));
  }
}

TEST_CASE("closest point") {
  const u32 q = 3;
  BTTree T(q);
  using C = ConvexSub<BTTree>;
  auto v = T.make(2, 0, {1, 2});
  auto xi = laurent_point(q, 0, {1, 1, 0, 2});
  CHECK(closest_point(T, C::vertex(v), xi) == v);
  // line (0, infinity), xi = 1 + X^-1 + ...: the level-0 ball around 1, which is x0
  auto zero = BTBoundary::point(KPoint::from_poly(Poly(q)));
  auto line = C::line(zero, BTBoundary::infinity());
  CHECK(closest_point(T, line, xi) == T.make(0, 0, {}));
  CHECK(closest_point(T, line, xi) == T.make(0, 0, {1}));
  // xi = X^-2 + ...: the ball {nu >= 2} on the line
  CHECK(closest_point(T, line, laurent_point(q, 2, {1, 1})) == T.make(2, 0, {}));
  CHECK(closest_point(T, line, laurent_point(q, -3, {2})) == T.make(-3, 0, {}));
  CHECK_THROWS_AS(closest_point(T, line, BTBoundary::infinity()), ProjectionAtInfinity);
  // translation equivariance
  Poly b(q, {1, 2});
  auto tl = C::line(T.translate(zero, b), BTBoundary::infinity());
  CHECK(closest_point(T, tl, T.translate(xi, b)) == T.translate(closest_point(T, line, xi), b));
}

TEST_CASE("d_C formula against the limit definition") {
  BTTree T(3);
  CayleyTree F(2);
  Rng rng(4);
  int checked = 0;
  auto run = [&](const auto& M, auto point, auto near) {
    for (int k = 0; k < 400; ++k) {
      auto C = oracle::random_convex(M, rng, point, near);
      auto xi = point();
      auto eta = rng.below(2) ? near(xi) : point();
      if (oracle::at_infinity(M, C, xi) || oracle::at_infinity(M, C, eta)) continue;
      CHECK(closest_point(M, C, xi) == oracle::projection(M, C, xi));
      auto val = d_C(M, C, xi, eta);
      if (val.zero) continue;
      int lim = oracle::dC_limit_twice(M, C, xi, eta, 90);
      CHECK(lim == oracle::dC_limit_twice(M, C, xi, eta, 120));
      CHECK(val.twice == lim);
      CHECK(d_C(M, C, eta, xi) == val);
      ++checked;
    }
  };
  run(T, [&] { return oracle::bt_point(T, rng); }, [&](const BTBoundary& z) { return oracle::bt_near(T, z, rng); });
  run(F, [&] { return oracle::cay_point(F, rng); }, [&](const CayleyBoundary& z) { return oracle::cay_near(F, z, rng); });
  CHECK(checked > 500);
}

TEST_CASE("d_C worked cases") {
  const u32 q = 3;
  BTTree T(q);
  using C = ConvexSub<BTTree>;
  auto zero = BTBoundary::point(KPoint::from_poly(Poly(q)));
  auto line = C::line(zero, BTBoundary::infinity());
  // both project to x0 (valuation 0) and share 3 steps beyond it
  auto xi = laurent_point(q, 0, {1, 2, 0, 1});
  auto eta = laurent_point(q, 0, {1, 2, 0, 2});
  auto v = d_C(T, line, xi, eta);
  CHECK(v.twice == -6);  // e^-3
  // projections at distance 4 on the line
  auto a = laurent_point(q, 0, {1});
  auto b = laurent_point(q, 4, {1});
  CHECK(d_C(T, line, a, b).twice == 4);  // e^2
  CHECK(d_C(T, line, xi, xi).zero);
}

TEST_CASE("scaling, equivariance and two-sided bounds") {
  BTTree T(3);
  CayleyTree F(2);
  Rng rng(5);
  const double lb = std::log(3 - 2 * std::sqrt(2.0));
  auto run = [&](const auto& M, auto point, auto near, auto iso_c, auto iso_b) {
    using Mod = std::decay_t<decltype(M)>;
    for (int k = 0; k < 300; ++k) {
      auto C = oracle::random_convex(M, rng, point, near);
      auto xi = point();
      auto eta = rng.below(2) ? near(xi) : point();
      if (oracle::at_infinity(M, C, xi) || oracle::at_infinity(M, C, eta)) continue;
      auto v = d_C(M, C, xi, eta);
      if (v.zero) continue;
      const int m = 1 + static_cast<int>(rng.below(4));
      CHECK(d_C(M, ConvexSub<Mod>::nbhd(C, m), xi, eta).twice == v.twice + 2 * m);
      const int dpp = dist(M, closest_point(M, C, xi), closest_point(M, C, eta));
      const int dline = distance_to_line(M, C, xi, eta);
      CHECK(v.twice <= dpp);
      CHECK(v.exponent() >= lb + dpp / 2.0 - dline - 1e-12);
      // isometry equivariance
      CHECK(d_C(M, iso_c(C), iso_b(xi), iso_b(eta)) == v);
    }
  };
  Poly b(3, {2, 1});
  std::function<ConvexSub<BTTree>(const ConvexSub<BTTree>&)> bt_c;
  auto bt_b = [&](const BTBoundary& z) { return T.invert(T.scale(T.translate(z, b), 2)); };
  auto bt_v = [&](const BTVertex& z) { return T.invert(T.scale(T.translate(z, b), 2)); };
  bt_c = [&](const ConvexSub<BTTree>& C) {
    ConvexSub<BTTree> r = C;
    r.v = bt_v(C.v);
    if (C.kind == ConvexSub<BTTree>::Kind::line) r.a = bt_b(C.a), r.b = bt_b(C.b);
    for (auto& w : r.verts) w = bt_v(w);
    if (C.inner) r.inner = std::make_shared<const ConvexSub<BTTree>>(bt_c(*C.inner));
    return r;
  };
  run(T, [&] { return oracle::bt_point(T, rng); }, [&](const BTBoundary& z) { return oracle::bt_near(T, z, rng); },
      bt_c, bt_b);
  Word g{2, 0, 3};
  std::function<ConvexSub<CayleyTree>(const ConvexSub<CayleyTree>&)> cay_c;
  auto cay_b = [&](const CayleyBoundary& z) { return F.act(g, z); };
  cay_c = [&](const ConvexSub<CayleyTree>& C) {
    ConvexSub<CayleyTree> r = C;
    r.v = F.act(g, C.v);
    if (C.kind == ConvexSub<CayleyTree>::Kind::line) r.a = cay_b(C.a), r.b = cay_b(C.b);
    for (auto& w : r.verts) w = F.act(g, w);
    if (C.inner) r.inner = std::make_shared<const ConvexSub<CayleyTree>>(cay_c(*C.inner));
    return r;
  };
  run(F, [&] { return oracle::cay_point(F, rng); },
      [&](const CayleyBoundary& z) { return oracle::cay_near(F, z, rng); }, cay_c, cay_b);
}

TEST_CASE("Hamenstadt distance") {
  const u32 q = 3;
  BTTree T(q);
  auto xi = laurent_point(q, 0, {1, 0, 2, 1});
  auto eta = laurent_point(q, 0, {1, 0, 1});
  CHECK(*hamenstadt(xi, eta) == -2);  // |xi - eta| = q^-2 -> e^-2
  Rng rng(6);
  for (int k = 0; k < 200; ++k) {
    auto a = BTBoundary::point(KPoint::haar(q, static_cast<int>(rng.below(5)) - 2, rng.next()));
    auto b = rng.below(2) ? oracle::bt_near(T, a, rng) : BTBoundary::point(KPoint::haar(q, -2, rng.next()));
    auto h = hamenstadt(a, b);
    REQUIRE(h.has_value());
    Poly c(q, {static_cast<long long>(rng.below(3)), static_cast<long long>(rng.below(3))});
    CHECK(hamenstadt(T.translate(a, c), T.translate(b, c)) == h);
    // horoball limit: level-t balls around a and b
    for (int t : {30, 45}) {
      auto at = T.make(t, a.pt->lo(), [&] {
        std::vector<u32> d;
        for (int i = a.pt->lo(); i < t; ++i) d.push_back(a.pt->digit(i));
        return d;
      }());
      auto bt = T.make(t, b.pt->lo(), [&] {
        std::vector<u32> d;
        for (int i = b.pt->lo(); i < t; ++i) d.push_back(b.pt->digit(i));
        return d;
      }());
      int twice = oracle::dist(T, at, bt) - 2 * t;
      CHECK(twice == 2 * *h);
    }
  }
  CHECK(!hamenstadt(xi, xi).has_value());
}

TEST_CASE("line distance") {
  BTTree T(3);
  CayleyTree F(2);
  Rng rng(7);
  for (int k = 0; k < 150; ++k) {
    auto a = oracle::bt_point(T, rng), b = oracle::bt_point(T, rng);
    auto c = rng.below(2) ? oracle::bt_near(T, a, rng) : oracle::bt_point(T, rng);
    auto d = rng.below(2) ? oracle::bt_near(T, b, rng) : oracle::bt_point(T, rng);
    if (same_point(T, a, b) || same_point(T, c, d)) continue;
    int L = line_distance(T, a, b, c, d);
    CHECK(L == line_distance(T, c, d, a, b));
    CHECK(L == line_distance(T, b, a, c, d));
    CHECK(L == oracle::line_distance(T, a, b, c, d));
    CHECK(line_distance(T, a, b, a, b) == 0);
  }
  for (int k = 0; k < 150; ++k) {
    auto a = oracle::cay_point(F, rng), b = oracle::cay_point(F, rng);
    auto c = rng.below(2) ? oracle::cay_near(F, a, rng) : oracle::cay_point(F, rng);
    auto d = rng.below(2) ? oracle::cay_near(F, b, rng) : oracle::cay_point(F, rng);
    if (same_point(F, a, b) || same_point(F, c, d)) continue;
    CHECK(line_distance(F, a, b, c, d) == oracle::line_distance(F, a, b, c, d));
  }
}

TEST_CASE("height-depth relation for the base quadratic orbit") {
  const u32 q = 3;
  BTTree T(q);
  quadratic::QuadIrr alpha(Poly(q, {1}), Poly(q), -Poly(q, {1, 0, 1}), 1);
  auto a = BTBoundary::point(KPoint::from_quadirr(alpha));
  auto as = BTBoundary::point(KPoint::from_quadirr(alpha.conjugate()));
  auto orbit = quadratic::orbit_enumerate(alpha, exactnum::QMag::from_exponent(-5));
  std::set<double> quotients;
  int used = 0;
  for (const auto& beta : orbit.elements) {
    auto b = BTBoundary::point(KPoint::from_quadirr(beta));
    auto bs = BTBoundary::point(KPoint::from_quadirr(beta.conjugate()));
    if (b.pt->valuation_below(1) || bs.pt->valuation_below(1)) continue;  // window nu >= 1
    int D = line_distance(T, a, as, b, bs);
    int nu = -*hamenstadt(b, bs);
    // e^-D versus |beta - beta*|^{1/log q} = e^{-nu}
    quotients.insert(nu - D);
    ++used;
  }
  MESSAGE("height-depth pairs in window: " << used);
  CHECK(used >= 50);
  CHECK(quotients.size() == 1);
}

TEST_CASE("free group double cosets") {
  CayleyTree F(2);
  // w = b: the axes of a and b a b^-1 are at distance 1
  CHECK(coset_depth(F, {2}) == 1);
  CHECK(canonical_coset_word({0, 2, 1}) == Word{2});
  CHECK_THROWS(canonical_coset_word({0, 0}));
  auto list = free_group_double_cosets(2, 8);
  CHECK(!list.truncated);
  std::map<int, long> count;
  for (const auto& r : list.cosets) {
    CHECK(is_canonical_coset_word(r.w));
    CHECK(r.depth == static_cast<int>(r.w.size()));
    ++count[r.depth];
  }
  // transfer matrix on the type of the last letter: a-type letters may follow b-type ones freely
  for (int n = 1; n <= 8; ++n) {
    long ends_b = 2, ends_a = 0;
    for (int i = 2; i <= n; ++i) {
      const long nb = ends_b + 2 * ends_a, na = 2 * ends_b + ends_a;
      ends_b = nb;
      ends_a = na;
    }
    CHECK(count[n] == ends_b);
  }
  // slope of log counts ~ log 3
  double s = std::log(double(count[8]) / count[4]) / 4;
  CHECK(s == doctest::Approx(std::log(3.0)).epsilon(0.1));
}

TEST_CASE("coset neighborhoods: measure band and disjointness") {
  CayleyTree F(2);
  auto list = free_group_double_cosets(2, 6);
  for (const auto& r : list.cosets) {
    for (int m = r.depth; m <= r.depth + 4; ++m) {
      auto N = coset_neighborhood(F, r.w, m);
      mpq_class scaled = N.mass();
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), 3, m);
      scaled *= p;
      CHECK(scaled == (m == r.depth ? mpq_class(3, 4) : mpq_class(3, 2)));
    }
    // halving epsilon (m -> m+1) divides the mass by 3 = e^{delta}
    CHECK(coset_neighborhood(F, r.w, r.depth + 2).mass() * 3 == coset_neighborhood(F, r.w, r.depth + 1).mass());
  }
  // disjointness at the window radius
  const int N = 2;
  std::map<int, std::vector<CylinderUnion>> by_window;
  for (const auto& r : list.cosets) by_window[r.depth / N].push_back(coset_neighborhood(F, r.w, (r.depth / N + 1) * N));
  for (auto& [n, sets] : by_window)
    for (size_t i = 0; i < sets.size(); ++i)
      for (size_t j = i + 1; j < sets.size(); j += 7) CHECK(sets[i].disjoint_from(sets[j]));
  CHECK_THROWS(coset_neighborhood(F, {2}, 0));
}

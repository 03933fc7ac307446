#pragma once

#include <algorithm>
#include <climits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "treespace/cylinder.hpp"

// Generic algorithms over a rooted tree model M providing
//   Vertex, Boundary, base(), depth(v), ancestor(v, d), ray_vertex(xi, d),
//   branching(), address(v)
// where depth is the distance to base(), ancestor(v, d) is the vertex at distance d from base()
// on [base, v], and ray_vertex(xi, d) the vertex at distance d on the ray [base, xi).

namespace treespace {

// Boundary comparisons stop after this many steps; points agreeing that long are treated as equal.
inline constexpr int kBoundaryCap = 2048;

struct ProjectionAtInfinity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class M>
int gromov(const M& m, const typename M::Vertex& v, const typename M::Vertex& w) {
  int lo = 0, hi = std::min(m.depth(v), m.depth(w));
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (m.ancestor(v, mid) == m.ancestor(w, mid)) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

template <class M>
int gromov(const M& m, const typename M::Vertex& v, const typename M::Boundary& xi) {
  int lo = 0, hi = m.depth(v);
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (m.ancestor(v, mid) == m.ray_vertex(xi, mid)) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

// (xi|eta) at the base vertex; returns cap when the rays agree for cap steps.
template <class M>
int gromov(const M& m, const typename M::Boundary& xi, const typename M::Boundary& eta, int cap = kBoundaryCap) {
  auto same = [&](int d) { return m.ray_vertex(xi, d) == m.ray_vertex(eta, d); };
  int lo = 0, step = 1;
  while (true) {
    int probe = std::min(lo + step, cap);
    if (!same(probe)) {
      int hi = probe - 1;
      while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (same(mid)) lo = mid;
        else hi = mid - 1;
      }
      return lo;
    }
    lo = probe;
    if (lo == cap) return cap;
    step *= 2;
  }
}

template <class M>
bool same_point(const M& m, const typename M::Boundary& xi, const typename M::Boundary& eta) {
  return gromov(m, xi, eta) >= kBoundaryCap;
}

template <class M>
int dist(const M& m, const typename M::Vertex& v, const typename M::Vertex& w) {
  return m.depth(v) + m.depth(w) - 2 * gromov(m, v, w);
}

// beta_xi(x, y) = lim d(x, xi_t) - d(y, xi_t).
template <class M>
int busemann(const M& m, const typename M::Boundary& xi, const typename M::Vertex& x, const typename M::Vertex& y) {
  return (m.depth(x) - 2 * gromov(m, x, xi)) - (m.depth(y) - 2 * gromov(m, y, xi));
}

// (xi|eta) based at p.
template <class M>
int gromov_at(const M& m, const typename M::Vertex& p, const typename M::Boundary& xi,
              const typename M::Boundary& eta) {
  const int o = m.depth(p);
  const int twice = 2 * gromov(m, xi, eta) + (o - 2 * gromov(m, p, xi)) + (o - 2 * gromov(m, p, eta));
  return twice / 2;
}

// Vertex at distance t from p on the ray [p, xi).
template <class M>
typename M::Vertex ray_from(const M& m, const typename M::Vertex& p, const typename M::Boundary& xi, int t) {
  const int dp = m.depth(p);
  const int g = gromov(m, p, xi);
  if (t <= dp - g) return m.ancestor(p, dp - t);
  return m.ray_vertex(xi, g + (t - (dp - g)));
}

// First vertex after v on the geodesic [v, x]; requires v != x.
template <class M>
typename M::Vertex step_toward(const M& m, const typename M::Vertex& v, const typename M::Vertex& x) {
  const int dv = m.depth(v);
  if (dv > gromov(m, v, x)) return m.ancestor(v, dv - 1);
  return m.ancestor(x, dv + 1);
}

// Boundary points whose ray from x passes through v.
template <class M>
CylinderUnion shadow(const M& m, const typename M::Vertex& x, const typename M::Vertex& v) {
  const int q = m.branching();
  if (v == x) return CylinderUnion::whole(q);
  const auto w = step_toward(m, v, x);
  const int dv = m.depth(v);
  if (dv > 0 && w == m.ancestor(v, dv - 1)) return CylinderUnion::cylinder(q, m.address(v));
  return CylinderUnion::complement_of(q, m.address(w));
}

// Convex subsets: a vertex, a geodesic line ]a, b[, a finite connected subtree, or the closed
// m-neighborhood of another convex subset.
template <class M>
struct ConvexSub {
  enum class Kind { vertex, line, subtree, nbhd };
  Kind kind = Kind::vertex;
  typename M::Vertex v{};
  typename M::Boundary a{}, b{};
  std::vector<typename M::Vertex> verts;
  std::shared_ptr<const ConvexSub> inner;
  int m = 0;

  static ConvexSub vertex(typename M::Vertex v) {
    ConvexSub c;
    c.kind = Kind::vertex;
    c.v = std::move(v);
    return c;
  }
  static ConvexSub line(typename M::Boundary a, typename M::Boundary b) {
    ConvexSub c;
    c.kind = Kind::line;
    c.a = std::move(a);
    c.b = std::move(b);
    return c;
  }
  static ConvexSub subtree(std::vector<typename M::Vertex> vs) {
    if (vs.empty()) throw std::invalid_argument("empty subtree");
    ConvexSub c;
    c.kind = Kind::subtree;
    c.verts = std::move(vs);
    return c;
  }
  static ConvexSub nbhd(const ConvexSub& base, int m) {
    if (m < 0) throw std::invalid_argument("negative neighborhood radius");
    ConvexSub c;
    c.kind = Kind::nbhd;
    c.inner = std::make_shared<const ConvexSub>(base);
    c.m = m;
    return c;
  }
};

template <class M>
typename M::Vertex closest_point(const M& m, const ConvexSub<M>& C, const typename M::Boundary& xi) {
  using K = typename ConvexSub<M>::Kind;
  switch (C.kind) {
    case K::vertex:
      return C.v;
    case K::line: {
      // Center of the tripod (a, b, xi): depth of the largest pairwise Gromov product.
      const int gab = gromov(m, C.a, C.b), gax = gromov(m, C.a, xi), gbx = gromov(m, C.b, xi);
      if (gax >= kBoundaryCap || gbx >= kBoundaryCap) throw ProjectionAtInfinity("boundary point is an endpoint of C");
      const int g = std::max({gab, gax, gbx});
      return m.ray_vertex(gbx == g ? C.b : C.a, g);
    }
    case K::subtree: {
      const typename M::Vertex* best = nullptr;
      int best_val = INT_MAX;
      for (const auto& v : C.verts) {
        const int val = m.depth(v) - 2 * gromov(m, v, xi);
        if (val < best_val) {
          best_val = val;
          best = &v;
        }
      }
      return *best;
    }
    case K::nbhd: {
      const auto p = closest_point(m, *C.inner, xi);
      return ray_from(m, p, xi, C.m);
    }
  }
  throw std::logic_error("unknown convex subset kind");
}

// Distance between the geodesic lines ]a,b[ and ]c,d[ from the three pairings of Gromov products.
template <class M>
int line_distance(const M& m, const typename M::Boundary& a, const typename M::Boundary& b,
                  const typename M::Boundary& c, const typename M::Boundary& d) {
  const long s1 = long(gromov(m, a, b)) + gromov(m, c, d);
  const long s2 = long(gromov(m, a, c)) + gromov(m, b, d);
  const long s3 = long(gromov(m, a, d)) + gromov(m, b, c);
  if (std::max(s2, s3) >= kBoundaryCap) return 0;  // shared endpoint
  return static_cast<int>(std::max(0L, s1 - std::max(s2, s3)));
}

// d(C, ]xi, eta[)
template <class M>
int distance_to_line(const M& m, const ConvexSub<M>& C, const typename M::Boundary& xi,
                     const typename M::Boundary& eta) {
  using K = typename ConvexSub<M>::Kind;
  switch (C.kind) {
    case K::vertex:
      return gromov_at(m, C.v, xi, eta);
    case K::line:
      return line_distance(m, C.a, C.b, xi, eta);
    case K::subtree: {
      int best = INT_MAX;
      for (const auto& v : C.verts) best = std::min(best, gromov_at(m, v, xi, eta));
      return best;
    }
    case K::nbhd:
      return std::max(0, distance_to_line(m, *C.inner, xi, eta) - C.m);
  }
  throw std::logic_error("unknown convex subset kind");
}

// d_C(xi, eta) = e^{twice/2}; zero (xi == eta) is distinguished.
struct DCValue {
  bool zero = false;
  int twice = 0;
  double exponent() const { return twice / 2.0; }
  friend bool operator==(const DCValue&, const DCValue&) = default;
};

template <class M>
DCValue d_C(const M& m, const ConvexSub<M>& C, const typename M::Boundary& xi, const typename M::Boundary& eta) {
  const auto p = closest_point(m, C, xi);
  const auto p2 = closest_point(m, C, eta);
  if (!(p == p2)) return {false, dist(m, p, p2)};
  if (same_point(m, xi, eta)) return {true, 0};
  return {false, -2 * gromov_at(m, p, xi, eta)};
}

// {zeta' : d_C(zeta', zeta) <= e^{-r}} for an integer r >= 1.
template <class M>
CylinderUnion dC_ball(const M& m, const ConvexSub<M>& C, const typename M::Boundary& zeta, int r) {
  if (r < 1) throw std::invalid_argument("ball radius off the exact grid (need e^{-r}, r >= 1)");
  const auto p = closest_point(m, C, zeta);
  return shadow(m, p, ray_from(m, p, zeta, r));
}

}  // namespace treespace

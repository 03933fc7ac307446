#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "exactnum/laurent.hpp"
#include "quadratic/quadirr.hpp"
#include "treespace/tree.hpp"

namespace treespace {

using exactnum::Laurent;
using exactnum::Poly;
using exactnum::RatFunc;
using exactnum::u32;
using exactnum::u64;

// A point of K^ = F_q((X^-1)) given as a coefficient stream a_lo, a_{lo+1}, ... (coefficient of X^-i),
// extended on demand and memoized. Extension never changes earlier coefficients.
class KPoint {
 public:
  using Fill = std::function<void(std::vector<u32>& buf, size_t need)>;
  KPoint(u32 q, int lo, Fill fill, std::optional<RatFunc> exact = std::nullopt);

  static KPoint from_ratfunc(const RatFunc& r);
  static KPoint from_poly(const Poly& p) { return from_ratfunc(RatFunc(p)); }
  static KPoint from_laurent_exact(const Laurent& f);  // f read as a finite sum
  static KPoint from_quadirr(const quadratic::QuadIrr& a);
  // Haar digits at indices floor, floor+1, ...; same digits as exactnum::sample_haar for the seed.
  static KPoint haar(u32 q, int floor, u64 seed);
  // Fixed digits at indices lo .. lo+prefix.size()-1, then Haar digits from seed.
  static KPoint prefixed(u32 q, int lo, std::vector<u32> prefix, u64 seed);

  u32 q() const { return q_; }
  int lo() const { return lo_; }
  u32 digit(int i) const;
  // Index of the first nonzero coefficient among indices < limit, or nullopt.
  std::optional<int> valuation_below(int limit) const;
  const std::optional<RatFunc>& exact() const { return exact_; }
  // Laurent value with coefficients known on [lo, abs_prec); throws if zero there.
  Laurent truncated(int abs_prec) const;

 private:
  struct Memo {
    Fill fill;
    std::vector<u32> buf;
  };
  u32 q_;
  int lo_;
  std::shared_ptr<Memo> memo_;
  std::optional<RatFunc> exact_;
};

// Point of the boundary K^ u {infinity}.
struct BTBoundary {
  bool inf = true;
  std::shared_ptr<KPoint> pt;

  static BTBoundary infinity() { return {}; }
  static BTBoundary point(KPoint p) { return {false, std::make_shared<KPoint>(std::move(p))}; }
};

// Ball {x : nu(x - c) >= n}. The center keeps only coefficients of index < n;
// digits cover indices lo .. n-1 with digits[0] != 0, or are empty for center 0.
struct BTVertex {
  int n = 0;
  int lo = 0;
  std::vector<u32> digits;

  u32 coeff(int i) const { return i >= lo && i < n && !digits.empty() ? digits[i - lo] : 0; }
  friend bool operator==(const BTVertex&, const BTVertex&) = default;
  friend auto operator<=>(const BTVertex&, const BTVertex&) = default;
};

// Bruhat-Tits tree of SL_2 over K^, based at x0 = ball {nu >= 0}.
class BTTree {
 public:
  using Vertex = BTVertex;
  using Boundary = BTBoundary;

  explicit BTTree(u32 q);
  u32 q() const { return q_; }
  int branching() const { return static_cast<int>(q_); }

  Vertex base() const { return {}; }
  // Canonical ball with the given level whose center has the given coefficients from index lo.
  Vertex make(int n, int lo, const std::vector<u32>& coeffs) const;
  int depth(const Vertex& v) const;
  Vertex ancestor(const Vertex& v, int d) const;
  Vertex ray_vertex(const Boundary& xi, int d) const;
  Address address(const Vertex& v) const;
  Address boundary_address(const Boundary& xi, int len) const;

  // Isometries: x -> x + b, x -> s x (s in F_q^*), x -> -1/x.
  Vertex translate(const Vertex& v, const Poly& b) const;
  Boundary translate(const Boundary& xi, const Poly& b) const;
  Vertex scale(const Vertex& v, u32 s) const;
  Boundary scale(const Boundary& xi, u32 s) const;
  Vertex invert(const Vertex& v) const;
  Boundary invert(const Boundary& xi) const;

 private:
  // min(0, nu(xi)); 0 when no negative-index coefficient is nonzero.
  int up_steps(const KPoint& p) const;
  u32 q_;
};

// Hamenstadt distance relative to the horoball at infinity through x0: e^{-nu(xi - eta)}.
// Returns the exponent -nu(xi - eta), or nullopt when the points agree up to the boundary cap.
std::optional<int> hamenstadt(const BTBoundary& xi, const BTBoundary& eta, int cap = kBoundaryCap);

}  // namespace treespace

#include "treespace/bruhat_tits.hpp"

#include <algorithm>

#include "exactnum/rng.hpp"

namespace treespace {

using exactnum::add_mod;
using exactnum::mul_mod;

KPoint::KPoint(u32 q, int lo, Fill fill, std::optional<RatFunc> exact)
    : q_(q), lo_(lo), memo_(std::make_shared<Memo>(Memo{std::move(fill), {}})), exact_(std::move(exact)) {}

u32 KPoint::digit(int i) const {
  if (i < lo_) return 0;
  const size_t idx = static_cast<size_t>(i - lo_);
  if (memo_->buf.size() <= idx) {
    memo_->fill(memo_->buf, std::max(idx + 1, 2 * memo_->buf.size()));
    if (memo_->buf.size() <= idx) throw std::logic_error("KPoint stream did not extend");
  }
  return memo_->buf[idx];
}

std::optional<int> KPoint::valuation_below(int limit) const {
  for (int i = lo_; i < limit; ++i)
    if (digit(i)) return i;
  return std::nullopt;
}

Laurent KPoint::truncated(int abs_prec) const {
  auto v = valuation_below(abs_prec);
  if (!v) throw exactnum::PrecisionExhausted("point vanishes on the requested window", abs_prec);
  std::vector<u32> c;
  for (int i = *v; i < abs_prec; ++i) c.push_back(digit(i));
  return Laurent(q_, *v, std::move(c));
}

KPoint KPoint::from_ratfunc(const RatFunc& r) {
  const u32 q = r.q();
  if (r.is_zero())
    return KPoint(q, 0, [](std::vector<u32>& buf, size_t need) { buf.resize(std::max(need, buf.size()), 0); }, r);
  const int lo = exactnum::embed_ratfunc(r, 1).valuation();
  return KPoint(
      q, lo,
      [r](std::vector<u32>& buf, size_t need) {
        buf = exactnum::embed_ratfunc(r, static_cast<int>(std::max<size_t>(need, 16))).coeffs();
      },
      r);
}

KPoint KPoint::from_laurent_exact(const Laurent& f) {
  const u32 q = f.q();
  if (f.is_zero()) return from_ratfunc(RatFunc(Poly(q)));
  const int N = std::max(0, f.abs_precision() - 1);
  std::vector<u32> num(N - f.valuation() + 1, 0);
  for (int i = f.valuation(); i < f.abs_precision(); ++i) num[N - i] = f.coeff(i);
  return from_ratfunc(RatFunc(Poly(q, std::move(num)), Poly::monomial(q, 1, N)));
}

KPoint KPoint::from_quadirr(const quadratic::QuadIrr& a) {
  const int lo = a.expand(1).valuation();
  return KPoint(a.q(), lo, [a](std::vector<u32>& buf, size_t need) {
    buf = a.expand(static_cast<int>(std::max<size_t>(need, 32))).coeffs();
  });
}

KPoint KPoint::haar(u32 q, int floor, u64 seed) { return prefixed(q, floor, {}, seed); }

KPoint KPoint::prefixed(u32 q, int lo, std::vector<u32> prefix, u64 seed) {
  return KPoint(q, lo, [q, prefix, seed](std::vector<u32>& buf, size_t need) {
    const size_t n = std::max<size_t>(need, 32);
    buf = prefix;
    exactnum::Rng rng(seed);
    while (buf.size() < n) buf.push_back(static_cast<u32>(rng.below(q)));
  });
}

BTTree::BTTree(u32 q) : q_(q) { exactnum::require_odd_prime(q); }

BTVertex BTTree::make(int n, int lo, const std::vector<u32>& coeffs) const {
  BTVertex v;
  v.n = n;
  int i = lo;
  size_t k = 0;
  while (k < coeffs.size() && i < n && coeffs[k] % q_ == 0) ++k, ++i;
  if (k == coeffs.size() || i >= n) return v;
  v.lo = i;
  for (; k < coeffs.size() && i < n; ++k, ++i) v.digits.push_back(coeffs[k] % q_);
  // coefficients beyond the given ones are zero
  while (i < n) v.digits.push_back(0), ++i;
  return v;
}

namespace {
int meet_level(const BTVertex& v) { return std::min({0, v.n, v.digits.empty() ? 0 : v.lo}); }
}  // namespace

int BTTree::depth(const Vertex& v) const { return v.n - 2 * meet_level(v); }

BTVertex BTTree::ancestor(const Vertex& v, int d) const {
  const int m = meet_level(v);
  if (d <= -m) return BTVertex{-d, 0, {}};
  return make(2 * m + d, v.lo, v.digits);
}

int BTTree::up_steps(const KPoint& p) const {
  auto v = p.valuation_below(0);
  return v ? *v : 0;
}

BTVertex BTTree::ray_vertex(const Boundary& xi, int d) const {
  if (xi.inf) return BTVertex{-d, 0, {}};
  const KPoint& p = *xi.pt;
  const int u = up_steps(p);
  if (d <= -u) return BTVertex{-d, 0, {}};
  const int level = 2 * u + d;
  std::vector<u32> c;
  for (int i = p.lo(); i < level; ++i) c.push_back(p.digit(i));
  return make(level, p.lo(), c);
}

Address BTTree::address(const Vertex& v) const {
  const int m = meet_level(v);
  Address a(-m, 0);
  for (int j = m; j < v.n; ++j) a.push_back(m == 0 && j == 0 ? 1 + static_cast<int>(v.coeff(0)) : static_cast<int>(v.coeff(j)));
  return a;
}

Address BTTree::boundary_address(const Boundary& xi, int len) const {
  Address a;
  if (xi.inf) return Address(len, 0);
  const KPoint& p = *xi.pt;
  const int u = up_steps(p);
  for (int s = 0; s < -u && static_cast<int>(a.size()) < len; ++s) a.push_back(0);
  for (int j = u; static_cast<int>(a.size()) < len; ++j)
    a.push_back(u == 0 && j == 0 ? 1 + static_cast<int>(p.digit(0)) : static_cast<int>(p.digit(j)));
  return a;
}

BTVertex BTTree::translate(const Vertex& v, const Poly& b) const {
  if (b.is_zero()) return v;
  const int lo = std::min(v.digits.empty() ? v.n : v.lo, -b.degree());
  std::vector<u32> c;
  for (int i = lo; i < v.n; ++i) c.push_back(add_mod(v.coeff(i), b.coeff(-i), q_));
  return make(v.n, lo, c);
}

BTBoundary BTTree::translate(const Boundary& xi, const Poly& b) const {
  if (xi.inf || b.is_zero()) return xi;
  auto p = xi.pt;
  const int lo = std::min(p->lo(), -b.degree());
  const u32 q = q_;
  std::optional<RatFunc> ex;
  if (p->exact()) ex = *p->exact() + RatFunc(b);
  return BTBoundary::point(KPoint(
      q, lo,
      [p, b, lo, q](std::vector<u32>& buf, size_t need) {
        for (size_t k = buf.size(); k < need; ++k) {
          const int i = lo + static_cast<int>(k);
          buf.push_back(add_mod(p->digit(i), b.coeff(-i), q));
        }
      },
      ex));
}

BTVertex BTTree::scale(const Vertex& v, u32 s) const {
  if (s % q_ == 0) throw std::invalid_argument("scaling by zero");
  std::vector<u32> c = v.digits;
  for (auto& x : c) x = mul_mod(x, s, q_);
  return make(v.n, v.lo, c);
}

BTBoundary BTTree::scale(const Boundary& xi, u32 s) const {
  if (s % q_ == 0) throw std::invalid_argument("scaling by zero");
  if (xi.inf) return xi;
  auto p = xi.pt;
  const u32 q = q_;
  std::optional<RatFunc> ex;
  if (p->exact()) ex = *p->exact() * RatFunc(Poly::constant(q, s));
  const int lo = p->lo();
  return BTBoundary::point(KPoint(
      q, lo,
      [p, s, lo, q](std::vector<u32>& buf, size_t need) {
        for (size_t k = buf.size(); k < need; ++k) buf.push_back(mul_mod(p->digit(lo + static_cast<int>(k)), s, q));
      },
      ex));
}

BTVertex BTTree::invert(const Vertex& v) const {
  if (v.digits.empty()) return BTVertex{-v.n, 0, {}};
  const int prec = v.n - v.lo;
  Laurent r = exactnum::neg(exactnum::inv(Laurent(q_, v.lo, v.digits), prec));
  return make(v.n - 2 * v.lo, -v.lo, r.coeffs());
}

BTBoundary BTTree::invert(const Boundary& xi) const {
  if (xi.inf) return BTBoundary::point(KPoint::from_ratfunc(RatFunc(Poly(q_))));
  auto p = xi.pt;
  if (p->exact()) {
    if (p->exact()->is_zero()) return BTBoundary::infinity();
    return BTBoundary::point(KPoint::from_ratfunc(RatFunc(Poly::constant(q_, -1)) / *p->exact()));
  }
  auto nu = p->valuation_below(p->lo() + kBoundaryCap);
  if (!nu) throw exactnum::ArithmeticError("cannot invert a point indistinguishable from 0");
  const int v = *nu;
  return BTBoundary::point(KPoint(q_, -v, [p, v](std::vector<u32>& buf, size_t need) {
    const int n = static_cast<int>(std::max<size_t>(need, 16));
    buf = exactnum::neg(exactnum::inv(p->truncated(v + n), n)).coeffs();
  }));
}

std::optional<int> hamenstadt(const BTBoundary& xi, const BTBoundary& eta, int cap) {
  if (xi.inf || eta.inf) throw std::invalid_argument("Hamenstadt distance needs finite points");
  const int lo = std::min(xi.pt->lo(), eta.pt->lo());
  for (int i = lo; i < lo + cap; ++i)
    if (xi.pt->digit(i) != eta.pt->digit(i)) return -i;
  return std::nullopt;
}

}  // namespace treespace

#include "hypgeom/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

#include "exactnum/rng.hpp"

namespace hypgeom {

double lorentz(const Vec& x, const Vec& y) { return -x(0) * y(0) + x.tail(x.size() - 1).dot(y.tail(y.size() - 1)); }

double hdist(const Vec& x, const Vec& y) {
  // Two formulas, acosh(-<x, y>) and 4 sinh^2(d/2) = <x - y, x - y>; use the one with less cancellation.
  const Vec d = x - y;
  const double s2 = lorentz(d, d);
  const double loss_diff = d.squaredNorm() / std::max(s2, 1e-300);
  const double c = -lorentz(x, y);
  const double loss_cosh =
      (std::abs(x(0) * y(0)) + std::abs(x.tail(x.size() - 1).dot(y.tail(y.size() - 1)))) / std::max(c - 1, 1e-300);
  if (c < 2 || loss_diff <= loss_cosh) return 2 * std::asinh(std::sqrt(std::max(0.0, s2)) / 2);
  return std::acosh(std::max(1.0, c));
}

void check_point(const Vec& x) {
  if (x(0) <= 0 || std::abs(lorentz(x, x) + 1) > 1e-12 * std::max(1.0, x(0) * x(0)))
    throw GeometryError("not a point of the hyperboloid");
}

Vec boundary_point(const Vec& direction) {
  const double r = direction.norm();
  if (r == 0) throw GeometryError("zero direction");
  Vec xi(direction.size() + 1);
  xi(0) = 1;
  xi.tail(direction.size()) = direction / r;
  return xi;
}

Vec origin(int n) {
  Vec o = Vec::Zero(n + 1);
  o(0) = 1;
  return o;
}

Vec ray_point(const Vec& p, const Vec& xi, double t) {
  const Vec u = xi / (-lorentz(xi, p)) - p;
  return std::cosh(t) * p + std::sinh(t) * u;
}

double busemann(const Vec& xi, const Vec& x) { return std::log(-lorentz(x, xi)) - std::log(xi(0)); }

Mat boost(int n, int i, double s) {
  Mat L = Mat::Identity(n + 1, n + 1);
  L(0, 0) = L(i, i) = std::cosh(s);
  L(0, i) = L(i, 0) = std::sinh(s);
  return L;
}

Mat rotation(int n, int i, int j, double a) {
  Mat L = Mat::Identity(n + 1, n + 1);
  L(i, i) = L(j, j) = std::cos(a);
  L(i, j) = -std::sin(a);
  L(j, i) = std::sin(a);
  return L;
}

Mat random_lorentz(int n, std::uint64_t seed, double max_boost) {
  exactnum::Rng rng(seed);
  Mat L = Mat::Identity(n + 1, n + 1);
  for (int r = 0; r < 3; ++r) {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) L = rotation(n, i, j, 2 * M_PI * rng.uniform()) * L;
    L = boost(n, 1 + static_cast<int>(rng.below(n)), max_boost * (2 * rng.uniform() - 1)) * L;
  }
  return L;
}

TotGeod::TotGeod(Mat basis) : basis_(std::move(basis)) {
  const int c = static_cast<int>(basis_.cols());
  if (c < 2 || c >= basis_.rows()) throw GeometryError("need 1 <= k < n");
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < c; ++j) {
      const double want = i != j ? 0 : (i == 0 ? -1 : 1);
      if (std::abs(lorentz(basis_.col(i), basis_.col(j)) - want) > 1e-10) throw GeometryError("basis is not Lorentz-orthonormal");
    }
  if (basis_(0, 0) < 0) basis_.col(0) *= -1;
}

TotGeod TotGeod::standard(int n, int k) {
  if (k < 1 || k >= n) throw GeometryError("need 1 <= k < n");
  return TotGeod(Mat::Identity(n + 1, n + 1).leftCols(k + 1));
}

Vec TotGeod::project_W(const Vec& x) const {
  Vec r = lorentz(x, basis_.col(0)) * -basis_.col(0);
  for (int i = 1; i < basis_.cols(); ++i) r += lorentz(x, basis_.col(i)) * basis_.col(i);
  return r;
}

double TotGeod::distance(const Vec& x) const {
  const Vec p = perp(x);
  return std::asinh(std::sqrt(std::max(0.0, lorentz(p, p))));
}

bool TotGeod::at_infinity(const Vec& xi, double tol) const {
  const Vec p = perp(xi);
  return std::sqrt(std::max(0.0, lorentz(p, p))) <= tol * xi(0);
}

ProjData project(const TotGeod& C, const Vec& xi) {
  if (C.at_infinity(xi)) throw GeometryError("boundary point lies in the boundary of C");
  const Vec w = C.project_W(xi);
  const Vec p = C.perp(xi);
  return {w / std::sqrt(-lorentz(w, w)), p / std::sqrt(lorentz(p, p))};
}

double dC_closed_form(double rho, double theta) {
  const double a = std::sinh(rho / 2), b = std::sin(theta / 2);
  return std::sqrt(a * a + b * b);
}

RhoTheta rho_theta(const TotGeod& C, const Vec& xi, const Vec& eta) {
  const auto a = project(C, xi), b = project(C, eta);
  const double c = std::clamp(lorentz(a.normal, b.normal), -1.0, 1.0);
  return {hdist(a.foot, b.foot), std::acos(c)};
}

double d_C(const TotGeod& C, const Vec& xi, const Vec& eta) {
  const auto [rho, theta] = rho_theta(C, xi, eta);
  return dC_closed_form(rho, theta);
}

double dC_limit(const TotGeod& C, const Vec& xi, const Vec& eta, double t, double eps) {
  // the foot on N_eps C lies at distance eps along the ray from the foot on C, so follow that ray for t + eps
  const Vec p = project(C, xi).foot, q = project(C, eta).foot;
  return std::exp(hdist(ray_point(p, xi, t + eps), ray_point(q, eta, t + eps)) / 2 - t);
}

double dC_limit_from(const TotGeod& C, const Vec& x, const Vec& y, const Vec& xi, const Vec& eta, double t) {
  const Vec xt = ray_point(x, xi, t), yt = ray_point(y, eta, t);
  const Vec p = project(C, xi).foot, q = project(C, eta).foot;
  return std::exp((hdist(xt, yt) - hdist(xt, p) - hdist(yt, q)) / 2);
}

double visual_distance(const Vec& x, const Vec& xi, const Vec& eta) {
  const Vec u = xi / (-lorentz(xi, x)) - x, v = eta / (-lorentz(eta, x)) - x;
  const Vec d = u - v;
  return std::sqrt(std::max(0.0, lorentz(d, d))) / 2;
}

double distance_to_line(const TotGeod& C, const Vec& xi, const Vec& eta) {
  const Vec a = C.perp(xi), b = C.perp(eta);
  const double s2 = (std::sqrt(lorentz(a, a) * lorentz(b, b)) + lorentz(a, b)) / (-lorentz(xi, eta));
  return std::asinh(std::sqrt(std::max(0.0, s2)));
}

bool BoundsReport::ok() const {
  return samples > 0 && upper_violations == 0 && lower_violations == 0 && basepoint_violations == 0 &&
         scaling_violations == 0 && disjoint_violations == 0 && triangle_witness;
}

BoundsReport bounds_suite(int n, int k, long samples, std::uint64_t seed) {
  BoundsReport r;
  const double c0 = 3 - 2 * std::sqrt(2.0);
  const double slack = 1e-8;
  exactnum::Rng rng(seed);
  double lo4 = HUGE_VAL, hi4 = 0;
  for (long s = 0; s < samples; ++s) {
    const TotGeod C = TotGeod::standard(n, k).transformed(random_lorentz(n, rng.next()));
    auto dir = [&] {
      Vec d(n);
      for (int i = 0; i < n; ++i) d(i) = rng.normal();
      return boundary_point(d);
    };
    const Vec xi = dir(), eta = dir();
    if (C.at_infinity(xi, 1e-6) || C.at_infinity(eta, 1e-6)) continue;
    ++r.samples;
    const auto [rho, theta] = rho_theta(C, xi, eta);
    const double dc = dC_closed_form(rho, theta);
    const double dline = distance_to_line(C, xi, eta);
    if (dc > std::exp(rho / 2) * (1 + slack)) ++r.upper_violations;
    if (c0 * std::exp(rho / 2 - dline) > dc * (1 + slack)) ++r.lower_violations;
    // base point x0 in C: (3 - 2 sqrt 2) d_x0 <= d_C e^{-(d(x0, pi xi) + d(x0, pi eta))/2} <= d_x0
    const Vec x0 = C.base();
    const double dx0 = visual_distance(x0, xi, eta);
    const double mid = dc * std::exp(-(hdist(x0, project(C, xi).foot) + hdist(x0, project(C, eta).foot)) / 2);
    if (c0 * dx0 > mid * (1 + slack) || mid > dx0 * (1 + slack)) ++r.basepoint_violations;
    r.fitted_cK = std::max({r.fitted_cK, dc / dx0, dx0 / dc});
    const double base = dC_limit(C, xi, eta, 30);
    for (double eps : {0.1, 1.0, 2.0}) {
      const double v = dC_limit(C, xi, eta, 30, eps);
      if (std::abs(v - std::exp(eps) * base) > 1e-8 * std::exp(eps) * base) ++r.scaling_violations;
    }
    if (dc <= 0.1) {
      if (dline <= 0) ++r.disjoint_violations;
      const double q = dc / std::exp(-dline);
      lo4 = std::min(lo4, q);
      hi4 = std::max(hi4, q);
    }
  }
  if (hi4 > 0) r.fitted_c_prime = std::max(hi4, 1 / lo4);
  // a, b, c on one side of a geodesic line in H^2 with consecutive feet 10 apart
  const TotGeod L = TotGeod::standard(2, 1);
  // boundary point whose foot on the line {x2 = 0} is (cosh x, sinh x, 0)
  auto above = [](double x) { return Vec((Vec(3) << 1.0, std::tanh(x), 1 / std::cosh(x)).finished()); };
  const Vec a = above(-10), b = above(0), c = above(10);
  r.triangle_witness = d_C(L, a, c) > d_C(L, a, b) + d_C(L, b, c);
  return r;
}

}  // namespace hypgeom

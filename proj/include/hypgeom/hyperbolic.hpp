#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>

// Real hyperbolic space H^n in the hyperboloid model of R^{1,n}, <x, y> = -x0 y0 + x1 y1 + ... + xn yn.
// Boundary points are null vectors normalized to (1, u), |u| = 1.

namespace hypgeom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct GeometryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

double lorentz(const Vec& x, const Vec& y);
double hdist(const Vec& x, const Vec& y);
// Throws unless <x,x> = -1 within 1e-12 and x0 > 0.
void check_point(const Vec& x);
Vec boundary_point(const Vec& direction);  // direction in R^n
Vec origin(int n);
// Point at distance t from p on the ray toward the boundary point xi.
Vec ray_point(const Vec& p, const Vec& xi, double t);
// Busemann function of xi normalized at origin: log(-<x, xi>) - log(-<o, xi>).
double busemann(const Vec& xi, const Vec& x);

// Lorentz maps: boost in the (0, i) plane, rotation in the (i, j) plane, i, j >= 1.
Mat boost(int n, int i, double s);
Mat rotation(int n, int i, int j, double angle);
// Product of random boosts and rotations, deterministic per seed.
Mat random_lorentz(int n, std::uint64_t seed, double max_boost = 1.0);

// Totally geodesic C = W cap H^n, W spanned by the columns e0 (timelike), e1 .. ek.
class TotGeod {
 public:
  TotGeod(Mat basis);  // checks the Gram matrix is diag(-1, 1, .., 1) within 1e-10
  static TotGeod standard(int n, int k);
  TotGeod transformed(const Mat& L) const { return TotGeod(L * basis_); }

  int n() const { return static_cast<int>(basis_.rows()) - 1; }
  int k() const { return static_cast<int>(basis_.cols()) - 1; }
  const Mat& basis() const { return basis_; }
  Vec base() const { return basis_.col(0); }
  Vec project_W(const Vec& x) const;
  Vec perp(const Vec& x) const { return x - project_W(x); }
  double distance(const Vec& x) const;  // d(x, C)
  bool at_infinity(const Vec& xi, double tol = 1e-9) const;

 private:
  Mat basis_;
};

struct ProjData {
  Vec foot;    // pi_C(xi)
  Vec normal;  // unit normal to C, constant along C under parallel transport
};

ProjData project(const TotGeod& C, const Vec& xi);

double dC_closed_form(double rho, double theta);
struct RhoTheta {
  double rho, theta;
};
RhoTheta rho_theta(const TotGeod& C, const Vec& xi, const Vec& eta);
double d_C(const TotGeod& C, const Vec& xi, const Vec& eta);

// e^{d(xi_t, eta_t)/2 - t} with rays from the feet on the eps-neighborhood of C.
double dC_limit(const TotGeod& C, const Vec& xi, const Vec& eta, double t, double eps = 0);
// e^{(d(xi_t, eta_t) - d(xi_t, pi xi) - d(eta_t, pi eta))/2} with rays from arbitrary x, y.
double dC_limit_from(const TotGeod& C, const Vec& x, const Vec& y, const Vec& xi, const Vec& eta, double t);

// Visual distance seen from x: sin of half the angle at x.
double visual_distance(const Vec& x, const Vec& xi, const Vec& eta);
// d(C, ]xi, eta[)
double distance_to_line(const TotGeod& C, const Vec& xi, const Vec& eta);

struct BoundsReport {
  long samples = 0;
  long upper_violations = 0;      // d_C <= e^{rho/2}
  long lower_violations = 0;      // (3 - 2 sqrt 2) e^{rho/2} e^{-d(C, line)} <= d_C
  long basepoint_violations = 0;  // comparison with the visual distance from x0 in C, explicit constants
  long scaling_violations = 0;    // d_{N_eps C} = e^eps d_C within 1e-8 relative
  double fitted_cK = 0;           // max of d_C/d_x0 and its inverse over the sample
  double fitted_c_prime = 0;      // for pairs with d_C <= 0.1: ratio band with e^{-d(C, line)}
  long disjoint_violations = 0;   // d_C <= 0.1 but the line meets C
  bool triangle_witness = false;  // d_C(a,c) > d_C(a,b) + d_C(b,c) for a collinear triple in H^2
  bool ok() const;
};

BoundsReport bounds_suite(int n, int k, long samples, std::uint64_t seed);

}  // namespace hypgeom

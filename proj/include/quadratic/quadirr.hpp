#pragma once

#include <compare>
#include <string>

#include "exactnum/laurent.hpp"

namespace quadratic {

using exactnum::Laurent;
using exactnum::Poly;
using exactnum::QMag;
using exactnum::u32;

struct Mobius {
  Poly a, b, c, d;

  // Throws std::invalid_argument unless ad - bc = 1.
  Mobius(Poly a, Poly b, Poly c, Poly d);
  static Mobius identity(u32 q);
  static Mobius translation(const Poly& b);
  static Mobius S(u32 q);  // [[0,1],[-1,0]]
  // Every element of SL_2(F_q), in a fixed order.
  static std::vector<Mobius> sl2_fq(u32 q);

  u32 q() const { return a.q(); }
  friend Mobius operator*(const Mobius& x, const Mobius& y);
  friend bool operator==(const Mobius& x, const Mobius& y) = default;
};

// Root (-B + sigma*sqrt(D)) / (2A) of A Y^2 + B Y + C, D = B^2 - 4AC.
// The branch sqrt(D) = 2 sqrt(D/4) takes the canonical root of D/4 = (B/2)^2 - AC,
// so alpha = (-B/2 + sigma*sqrt(D/4)) / A.
// Canonical form: A monic, gcd(A, B, C) = 1.
class QuadIrr {
 public:
  // Normalizes to canonical form. Throws ArithmeticError if D is a square in F_q[X]
  // or has no root in K^ (odd degree or non-residue leading coefficient).
  QuadIrr(Poly A, Poly B, Poly C, int sigma);
  // alpha = (P + V sqrt(D)) / Q with V, Q nonzero.
  static QuadIrr from_form(const Poly& P, const Poly& V, const Poly& Q, const Poly& D);

  u32 q() const { return A_.q(); }
  const Poly& A() const { return A_; }
  const Poly& B() const { return B_; }
  const Poly& C() const { return C_; }
  int sigma() const { return sigma_; }
  const Poly& D() const { return D_; }
  // Polynomial part of the canonical sqrt(D).
  Poly sqrt_poly_part() const;

  QuadIrr conjugate() const;
  Laurent expand(int prec) const;
  // Exact height |alpha - alpha*|^{-1} = |A| q^{-deg(D)/2}.
  QMag height() const;
  // Height recomputed from the expansions of alpha and alpha*.
  QMag height_via_expand(int prec = 24) const;
  // Polynomial part of alpha.
  Poly floor() const;
  QuadIrr translate(const Poly& b) const;  // alpha + b

  std::string to_string() const;

  friend bool operator==(const QuadIrr& x, const QuadIrr& y) {
    return x.sigma_ == y.sigma_ && x.A_ == y.A_ && x.B_ == y.B_ && x.C_ == y.C_;
  }
  friend std::strong_ordering operator<=>(const QuadIrr& x, const QuadIrr& y);

 private:
  QuadIrr() = default;
  void finish();
  Poly A_, B_, C_, D_;
  int sigma_ = 1;
};

// The distinguished branch 2 sqrt(D/4) of sqrt(D), to prec coefficients.
Laurent sqrt_branch(const Poly& D, int prec);

// gamma.alpha = (a alpha + b) / (c alpha + d).
QuadIrr act(const Mobius& g, const QuadIrr& alpha);

}  // namespace quadratic

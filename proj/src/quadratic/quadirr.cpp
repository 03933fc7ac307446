#include "quadratic/quadirr.hpp"

#include <sstream>

namespace quadratic {

using exactnum::ArithmeticError;
using exactnum::canonical_sqrt_mod;
using exactnum::inv_mod;
using exactnum::mul_mod;

Mobius::Mobius(Poly a_, Poly b_, Poly c_, Poly d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
  if (!(a * d - b * c).is_one()) throw std::invalid_argument("Mobius matrix must have determinant 1");
}

Mobius Mobius::identity(u32 q) { return Mobius(Poly::constant(q, 1), Poly(q), Poly(q), Poly::constant(q, 1)); }

Mobius Mobius::translation(const Poly& b) {
  const u32 q = b.q();
  return Mobius(Poly::constant(q, 1), b, Poly(q), Poly::constant(q, 1));
}

Mobius Mobius::S(u32 q) { return Mobius(Poly(q), Poly::constant(q, 1), Poly::constant(q, -1), Poly(q)); }

std::vector<Mobius> Mobius::sl2_fq(u32 q) {
  std::vector<Mobius> out;
  for (u32 a = 0; a < q; ++a)
    for (u32 b = 0; b < q; ++b)
      for (u32 c = 0; c < q; ++c)
        for (u32 d = 0; d < q; ++d)
          if ((static_cast<exactnum::u64>(a) * d + static_cast<exactnum::u64>(q - b) * c) % q == 1)
            out.emplace_back(Poly::constant(q, a), Poly::constant(q, b), Poly::constant(q, c), Poly::constant(q, d));
  return out;
}

Mobius operator*(const Mobius& x, const Mobius& y) {
  return Mobius(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
}

namespace {

u32 sigma_mod(int sigma, u32 q) { return sigma > 0 ? 1 : q - 1; }

// The distinguished branch of sqrt(D) is 2 sqrt(D/4) with sqrt(D/4) canonical.
u32 branch_lead(const Poly& D) {
  const u32 q = D.q();
  return mul_mod(2, *canonical_sqrt_mod(mul_mod(D.lc(), inv_mod(4 % q, q), q), q), q);
}

// Leading coefficient of the distinguished sqrt of D, after checking that D is an irrational square in K^.
u32 check_discriminant(const Poly& D) {
  if (D.is_zero() || exactnum::poly_sqrt(D)) throw ArithmeticError("discriminant is a square: rational input");
  if (D.degree() % 2) throw ArithmeticError("no root in K^: odd-degree discriminant");
  if (!exactnum::is_square_mod(D.lc(), D.q()))
    throw ArithmeticError("no root in K^: leading coefficient of D is not a square");
  return branch_lead(D);
}

}  // namespace

void QuadIrr::finish() {
  D_ = B_ * B_ - (A_ * C_).scaled(4);
}

QuadIrr::QuadIrr(Poly A, Poly B, Poly C, int sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("root selector must be +1 or -1");
  if (A.is_zero()) throw ArithmeticError("leading polynomial A must be nonzero");
  const u32 q = A.q();
  const Poly D = B * B - (A * C).scaled(4);
  const u32 c = check_discriminant(D);
  Poly g = exactnum::gcd(exactnum::gcd(A, B), C);
  A_ = A / g;
  B_ = B / g;
  C_ = C / g;
  const u32 u = inv_mod(A_.lc(), q);
  A_ = A_.scaled(u);
  B_ = B_.scaled(u);
  C_ = C_.scaled(u);
  finish();
  // sqrt(D_) = +-u sqrt(D)/g; g is monic so the leading coefficient of u sqrt(D)/g is u c.
  const u32 cn = branch_lead(D_);
  sigma_ = mul_mod(u, c, q) == cn ? sigma : -sigma;
}

QuadIrr QuadIrr::from_form(const Poly& P, const Poly& V, const Poly& Q, const Poly& D) {
  if (V.is_zero() || Q.is_zero()) throw ArithmeticError("degenerate form (P + V sqrt D)/Q");
  const u32 q = D.q();
  const u32 c = check_discriminant(D);
  Poly A = Q * Q, B = (P * Q).scaled(q - 2), C = P * P - V * V * D;
  Poly g = exactnum::gcd(exactnum::gcd(A, B), C);
  A = A / g;
  B = B / g;
  C = C / g;
  const u32 u = inv_mod(A.lc(), q);
  QuadIrr r;
  r.A_ = A.scaled(u);
  r.B_ = B.scaled(u);
  r.C_ = C.scaled(u);
  r.finish();
  // The intended branch of sqrt(D_) is 2 u Q V sqrt(D) / g.
  const u32 lead = mul_mod(mul_mod(mul_mod(2, u, q), mul_mod(Q.lc(), V.lc(), q), q), c, q);
  const u32 cn = branch_lead(r.D_);
  if (lead == cn) r.sigma_ = 1;
  else if (lead == q - cn) r.sigma_ = -1;
  else throw std::logic_error("from_form: inconsistent square-root branch");
  return r;
}

Laurent sqrt_branch(const Poly& D, int prec) {
  const u32 q = D.q();
  Laurent quarter = exactnum::scale(exactnum::embed_poly(D, prec), inv_mod(4 % q, q));
  return exactnum::scale(exactnum::lau_sqrt(quarter, prec), 2);
}

Poly QuadIrr::sqrt_poly_part() const {
  const int h = D_.degree() / 2;
  return sqrt_branch(D_, h + 1).polynomial_part();
}

QuadIrr QuadIrr::conjugate() const {
  QuadIrr r = *this;
  r.sigma_ = -sigma_;
  return r;
}

Laurent QuadIrr::expand(int prec) const {
  if (prec < 1) throw std::invalid_argument("precision must be positive");
  const u32 q = this->q();
  int w = prec + D_.degree() + 2;
  for (int attempt = 0; attempt < 64; ++attempt) {
    try {
      Laurent sd = exactnum::scale(sqrt_branch(D_, w), sigma_mod(sigma_, q));
      Laurent num = exactnum::sub(sd, exactnum::embed_poly(B_, w));
      Laurent r = exactnum::div(num, exactnum::embed_poly(A_.scaled(2), w), w);
      if (r.precision() >= prec) return r.truncated(prec);
      w += prec - r.precision() + 2;
    } catch (const exactnum::PrecisionExhausted&) {
      w *= 2;
    }
  }
  throw exactnum::PrecisionExhausted("expand: cancellation did not resolve", 0);
}

QMag QuadIrr::height() const { return QMag::from_exponent(D_.degree() / 2 - A_.degree()); }

QMag QuadIrr::height_via_expand(int prec) const {
  Laurent diff = exactnum::sub(expand(prec), conjugate().expand(prec));
  return diff.magnitude().inverse();
}

Poly QuadIrr::floor() const {
  Poly num = sqrt_poly_part().scaled(sigma_mod(sigma_, q())) - B_;
  return num / A_.scaled(2);
}

QuadIrr QuadIrr::translate(const Poly& b) const {
  QuadIrr r = *this;
  r.B_ = B_ - (A_ * b).scaled(2);
  r.C_ = A_ * b * b - B_ * b + C_;
  return r;
}

std::string QuadIrr::to_string() const {
  std::ostringstream os;
  os << "(" << A_.to_string() << "; " << B_.to_string() << "; " << C_.to_string() << "; " << (sigma_ > 0 ? '+' : '-')
     << ")";
  return os.str();
}

std::strong_ordering operator<=>(const QuadIrr& x, const QuadIrr& y) {
  if (auto c = x.A_ <=> y.A_; c != 0) return c;
  if (auto c = x.B_ <=> y.B_; c != 0) return c;
  if (auto c = x.C_ <=> y.C_; c != 0) return c;
  return x.sigma_ <=> y.sigma_;
}

QuadIrr act(const Mobius& g, const QuadIrr& alpha) {
  const u32 q = alpha.q();
  // alpha = (U + V sqrt D) / W
  const Poly U = -alpha.B();
  const Poly V = Poly::constant(q, alpha.sigma());
  const Poly W = alpha.A().scaled(2);
  const Poly& D = alpha.D();
  const Poly num = g.a * U + g.b * W;
  const Poly den = g.c * U + g.d * W;
  const Poly P = num * den - g.a * g.c * D;
  const Poly Q = den * den - g.c * g.c * D;
  return QuadIrr::from_form(P, V * W, Q, D);
}

}  // namespace quadratic

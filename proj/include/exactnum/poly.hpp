#pragma once

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exactnum/fq.hpp"

namespace exactnum {

// Polynomial over F_q, coefficients lowest degree first, no trailing zeros.
class Poly {
 public:
  explicit Poly(u32 q = 3);
  Poly(u32 q, std::vector<u32> coeffs);
  Poly(u32 q, std::initializer_list<long long> coeffs);

  static Poly constant(u32 q, long long c);
  static Poly monomial(u32 q, long long c, int deg);
  static Poly X(u32 q) { return monomial(q, 1, 1); }

  u32 q() const { return q_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  u32 coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  FieldElem coeff_elem(int i) const { return FieldElem(coeff(i), q_); }
  u32 lc() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<u32>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly scaled(u32 c) const;
  Poly shifted(int k) const;  // multiply by X^k, k >= 0
  Poly monic() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) = default;
  // Degree first, then coefficients from the top.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  void trim();
  u32 q_;
  std::vector<u32> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // exact-or-floor quotient
Poly operator%(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);  // monic, gcd(0,0) = 0
Poly pow(Poly a, unsigned e);
// Square root in F_q[X] when a is a perfect square (leading coefficient canonical).
std::optional<Poly> poly_sqrt(const Poly& a);
// Every polynomial of degree <= d (including 0) in a fixed order.
std::vector<Poly> all_polys_up_to_degree(u32 q, int d);

// Element of F_q(X) with monic denominator and coprime numerator/denominator.
class RatFunc {
 public:
  RatFunc(Poly num, Poly den);
  explicit RatFunc(Poly p);
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  u32 q() const { return num_.q(); }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  friend bool operator==(const RatFunc& a, const RatFunc& b) = default;
  RatFunc inverse() const;
  std::string to_string() const;

 private:
  Poly num_, den_;
};

}  // namespace exactnum

#pragma once

#include <climits>
#include <string>
#include <utility>
#include <vector>

#include "exactnum/fq.hpp"
#include "exactnum/poly.hpp"

namespace exactnum {

// Magnitude q^{-e}, or the distinguished zero.
class QMag {
 public:
  static QMag zero() { return QMag(true, 0); }
  static QMag from_exponent(int e) { return QMag(false, e); }
  bool is_zero() const { return zero_; }
  int exponent() const;  // e in q^{-e}
  double to_double(u32 q) const;
  QMag inverse() const;

  friend QMag operator*(QMag a, QMag b);
  friend bool operator==(QMag a, QMag b) = default;
  // Orders by size of the magnitude.
  friend bool operator<(QMag a, QMag b);
  friend bool operator<=(QMag a, QMag b) { return !(b < a); }

 private:
  QMag(bool z, int e) : zero_(z), e_(e) {}
  bool zero_;
  int e_;
};

struct PrecisionExhausted : ArithmeticError {
  PrecisionExhausted(const std::string& what, int attained_abs)
      : ArithmeticError(what), attained_abs_precision(attained_abs) {}
  int attained_abs_precision;
};

// sum_{i >= v} a_i X^{-i} known to a relative precision of coeffs.size() terms.
class Laurent {
 public:
  static constexpr int kExact = INT_MAX / 4;

  static Laurent zero(u32 q);
  // Leading zeros are stripped; an all-zero window throws PrecisionExhausted.
  Laurent(u32 q, int valuation, std::vector<u32> coeffs);

  u32 q() const { return q_; }
  bool is_zero() const { return zero_; }
  int valuation() const;
  int precision() const { return zero_ ? kExact : static_cast<int>(c_.size()); }
  // Index of the first unknown coefficient.
  int abs_precision() const { return zero_ ? kExact : v_ + static_cast<int>(c_.size()); }
  // Coefficient of X^{-i}; i must be below abs_precision().
  u32 coeff(int i) const;
  const std::vector<u32>& coeffs() const { return c_; }
  QMag magnitude() const;
  Laurent truncated(int prec) const;
  // Polynomial part sum_{i <= 0} a_i X^{-i}; needs abs_precision() > 0.
  Poly polynomial_part() const;

  std::string serialize() const;
  static Laurent parse(const std::string& text);

  friend bool operator==(const Laurent& a, const Laurent& b) = default;

 private:
  Laurent(u32 q) : q_(q), zero_(true), v_(0) {}
  u32 q_;
  bool zero_;
  int v_;
  std::vector<u32> c_;
};

enum class LauOp { add, sub, mul, div, inv, neg };

// Result carries min(prec, attainable) coefficients.
Laurent lau_arith(LauOp op, const Laurent& f, const Laurent* g, int prec);
Laurent add(const Laurent& f, const Laurent& g, int prec = Laurent::kExact);
Laurent sub(const Laurent& f, const Laurent& g, int prec = Laurent::kExact);
Laurent mul(const Laurent& f, const Laurent& g, int prec = Laurent::kExact);
Laurent inv(const Laurent& f, int prec);
Laurent div(const Laurent& f, const Laurent& g, int prec);
Laurent neg(const Laurent& f);
Laurent scale(const Laurent& f, u32 c);

std::pair<int, QMag> valuation_abs(const Laurent& f);

Laurent embed_poly(const Poly& p, int prec);
Laurent embed_ratfunc(const RatFunc& r, int prec);

// Throws ArithmeticError("no root in K^") on odd valuation or non-residue leading coefficient.
Laurent lau_sqrt(const Laurent& f, int prec);

// Coefficients at indices valuation_floor .. valuation_floor+prec-1 i.i.d. uniform on F_q.
// Prefixes agree across prec for a fixed seed. An all-zero draw returns the zero value.
Laurent sample_haar(u32 q, int valuation_floor, int prec, u64 seed);

}  // namespace exactnum

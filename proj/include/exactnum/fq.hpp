#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace exactnum {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct ArithmeticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_prime(u32 n);

// Throws std::invalid_argument unless q is an odd prime.
void require_odd_prime(u32 q);

inline u32 add_mod(u32 a, u32 b, u32 q) {
  u32 s = a + b;
  return s >= q ? s - q : s;
}
inline u32 sub_mod(u32 a, u32 b, u32 q) { return a >= b ? a - b : a + q - b; }
inline u32 neg_mod(u32 a, u32 q) { return a == 0 ? 0 : q - a; }
inline u32 mul_mod(u32 a, u32 b, u32 q) {
  return static_cast<u32>((static_cast<u64>(a) * b) % q);
}
u32 pow_mod(u32 a, u64 e, u32 q);
u32 inv_mod(u32 a, u32 q);
// Reduces a signed integer into [0, q).
u32 reduce_mod(long long a, u32 q);

bool is_square_mod(u32 a, u32 q);
// Square root with the smaller representative in [0, q); nullopt for non-residues.
std::optional<u32> canonical_sqrt_mod(u32 a, u32 q);

class FieldElem {
 public:
  FieldElem(u32 value, u32 q);
  u32 value() const { return v_; }
  u32 modulus() const { return q_; }
  bool is_zero() const { return v_ == 0; }
  FieldElem inverse() const;

  friend FieldElem operator+(FieldElem a, FieldElem b);
  friend FieldElem operator-(FieldElem a, FieldElem b);
  friend FieldElem operator*(FieldElem a, FieldElem b);
  friend FieldElem operator/(FieldElem a, FieldElem b);
  FieldElem operator-() const { return FieldElem(neg_mod(v_, q_), q_); }
  friend bool operator==(FieldElem a, FieldElem b) { return a.q_ == b.q_ && a.v_ == b.v_; }

 private:
  u32 v_;
  u32 q_;
};

}  // namespace exactnum

#include "exactnum/fq.hpp"

namespace exactnum {

bool is_prime(u32 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void require_odd_prime(u32 q) {
  if (q < 3 || !is_prime(q))
    throw std::invalid_argument("modulus must be an odd prime, got " + std::to_string(q));
}

u32 pow_mod(u32 a, u64 e, u32 q) {
  u32 r = 1 % q;
  a %= q;
  while (e) {
    if (e & 1) r = mul_mod(r, a, q);
    a = mul_mod(a, a, q);
    e >>= 1;
  }
  return r;
}

u32 inv_mod(u32 a, u32 q) {
  a %= q;
  if (a == 0) throw ArithmeticError("inverse of zero in F_q");
  long long t = 0, nt = 1, r = q, nr = a;
  while (nr) {
    long long k = r / nr;
    long long tmp = t - k * nt;
    t = nt;
    nt = tmp;
    tmp = r - k * nr;
    r = nr;
    nr = tmp;
  }
  return reduce_mod(t, q);
}

u32 reduce_mod(long long a, u32 q) {
  long long r = a % static_cast<long long>(q);
  return static_cast<u32>(r < 0 ? r + q : r);
}

bool is_square_mod(u32 a, u32 q) {
  a %= q;
  if (a == 0) return true;
  return pow_mod(a, (q - 1) / 2, q) == 1;
}

std::optional<u32> canonical_sqrt_mod(u32 a, u32 q) {
  a %= q;
  if (a == 0) return 0u;
  if (!is_square_mod(a, q)) return std::nullopt;
  // Tonelli-Shanks
  u32 s = 0;
  u64 odd = q - 1;
  while ((odd & 1) == 0) {
    odd >>= 1;
    ++s;
  }
  u32 z = 2;
  while (is_square_mod(z, q)) ++z;
  u32 m = s;
  u32 c = pow_mod(z, odd, q);
  u32 t = pow_mod(a, odd, q);
  u32 r = pow_mod(a, (odd + 1) / 2, q);
  while (t != 1) {
    u32 i = 0;
    u32 tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, q);
      ++i;
    }
    u32 b = c;
    for (u32 j = 0; j + 1 < m - i; ++j) b = mul_mod(b, b, q);
    m = i;
    c = mul_mod(b, b, q);
    t = mul_mod(t, c, q);
    r = mul_mod(r, b, q);
  }
  u32 other = neg_mod(r, q);
  return r < other ? r : other;
}

FieldElem::FieldElem(u32 value, u32 q) : v_(value % q), q_(q) {}

static void same_field(FieldElem a, FieldElem b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("mixed moduli");
}

FieldElem FieldElem::inverse() const { return FieldElem(inv_mod(v_, q_), q_); }

FieldElem operator+(FieldElem a, FieldElem b) {
  same_field(a, b);
  return FieldElem(add_mod(a.v_, b.v_, a.q_), a.q_);
}
FieldElem operator-(FieldElem a, FieldElem b) {
  same_field(a, b);
  return FieldElem(sub_mod(a.v_, b.v_, a.q_), a.q_);
}
FieldElem operator*(FieldElem a, FieldElem b) {
  same_field(a, b);
  return FieldElem(mul_mod(a.v_, b.v_, a.q_), a.q_);
}
FieldElem operator/(FieldElem a, FieldElem b) {
  same_field(a, b);
  return a * b.inverse();
}

}  // namespace exactnum

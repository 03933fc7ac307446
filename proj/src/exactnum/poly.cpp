#include "exactnum/poly.hpp"

#include <algorithm>
#include <sstream>

namespace exactnum {

Poly::Poly(u32 q) : q_(q) {}

Poly::Poly(u32 q, std::vector<u32> coeffs) : q_(q), c_(std::move(coeffs)) {
  for (auto& x : c_) x %= q_;
  trim();
}

Poly::Poly(u32 q, std::initializer_list<long long> coeffs) : q_(q) {
  c_.reserve(coeffs.size());
  for (long long x : coeffs) c_.push_back(reduce_mod(x, q));
  trim();
}

Poly Poly::constant(u32 q, long long c) { return Poly(q, {c}); }

Poly Poly::monomial(u32 q, long long c, int deg) {
  std::vector<u32> v(deg + 1, 0);
  v[deg] = reduce_mod(c, q);
  return Poly(q, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = neg_mod(x, q_);
  return r;
}

Poly Poly::scaled(u32 c) const {
  c %= q_;
  if (c == 0) return Poly(q_);
  Poly r = *this;
  for (auto& x : r.c_) x = mul_mod(x, c, q_);
  return r;
}

Poly Poly::shifted(int k) const {
  if (is_zero()) return *this;
  Poly r(q_);
  r.c_.assign(k, 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(inv_mod(lc(), q_));
}

static void check_q(const Poly& a, const Poly& b) {
  if (a.q() != b.q()) throw std::invalid_argument("polynomials over different fields");
}

Poly operator+(const Poly& a, const Poly& b) {
  check_q(a, b);
  std::vector<u32> r(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = add_mod(a.coeff(i), b.coeff(i), a.q_);
  return Poly(a.q_, std::move(r));
}

Poly operator-(const Poly& a, const Poly& b) {
  check_q(a, b);
  std::vector<u32> r(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = sub_mod(a.coeff(i), b.coeff(i), a.q_);
  return Poly(a.q_, std::move(r));
}

Poly operator*(const Poly& a, const Poly& b) {
  check_q(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.q_);
  const u32 q = a.q_;
  std::vector<u64> acc(a.c_.size() + b.c_.size() - 1, 0);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (!a.c_[i]) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      acc[i + j] += static_cast<u64>(a.c_[i]) * b.c_[j];
      if (acc[i + j] >= (1ull << 62)) acc[i + j] %= q;
    }
  }
  std::vector<u32> r(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<u32>(acc[i] % q);
  return Poly(q, std::move(r));
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (int i = a.degree(); i >= 0; --i)
    if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    u32 c = c_[i];
    if (!c) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << "X";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  check_q(a, b);
  if (b.is_zero()) throw ArithmeticError("polynomial division by zero");
  const u32 q = a.q();
  if (a.degree() < b.degree()) return {Poly(q), a};
  std::vector<u32> r = a.coeffs();
  const std::vector<u32>& d = b.coeffs();
  const int db = b.degree();
  const u32 inv_lc = inv_mod(b.lc(), q);
  std::vector<u32> quot(a.degree() - db + 1, 0);
  for (int i = a.degree(); i >= db; --i) {
    u32 c = mul_mod(r[i], inv_lc, q);
    if (!c) continue;
    quot[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] = sub_mod(r[i - db + j], mul_mod(c, d[j], q), q);
  }
  r.resize(db);
  return {Poly(q, std::move(quot)), Poly(q, std::move(r))};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly gcd(Poly a, Poly b) {
  check_q(a, b);
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly pow(Poly a, unsigned e) {
  Poly r = Poly::constant(a.q(), 1);
  while (e) {
    if (e & 1) r = r * a;
    a = a * a;
    e >>= 1;
  }
  return r;
}

std::optional<Poly> poly_sqrt(const Poly& a) {
  const u32 q = a.q();
  if (a.is_zero()) return a;
  if (a.degree() % 2) return std::nullopt;
  auto s0 = canonical_sqrt_mod(a.lc(), q);
  if (!s0) return std::nullopt;
  // Coefficient recursion from the top: s = sum s_k X^{h-k}.
  const int h = a.degree() / 2;
  std::vector<u32> top(h + 1, 0);  // top[k] = coefficient of X^{h-k}
  top[0] = *s0;
  const u32 inv2s0 = inv_mod(mul_mod(2, *s0, q), q);
  for (int k = 1; k <= h; ++k) {
    u32 acc = a.coeff(2 * h - k);
    for (int j = 1; j < k; ++j) acc = sub_mod(acc, mul_mod(top[j], top[k - j], q), q);
    top[k] = mul_mod(acc, inv2s0, q);
  }
  std::vector<u32> c(h + 1);
  for (int k = 0; k <= h; ++k) c[h - k] = top[k];
  Poly s(q, std::move(c));
  if (s * s == a) return s;
  return std::nullopt;
}

std::vector<Poly> all_polys_up_to_degree(u32 q, int d) {
  std::vector<Poly> out;
  if (d < 0) return {Poly(q)};
  std::vector<u32> c(d + 1, 0);
  while (true) {
    out.emplace_back(q, c);
    int i = 0;
    while (i <= d && ++c[i] == q) c[i++] = 0;
    if (i > d) break;
  }
  return out;
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ArithmeticError("rational function with zero denominator");
  Poly g = gcd(num_, den_);
  num_ = num_ / g;
  den_ = den_ / g;
  u32 inv = inv_mod(den_.lc(), den_.q());
  num_ = num_.scaled(inv);
  den_ = den_.scaled(inv);
}

RatFunc::RatFunc(Poly p) : num_(std::move(p)), den_(Poly::constant(num_.q(), 1)) {}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator-(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}
RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw ArithmeticError("inverse of zero rational function");
  return RatFunc(den_, num_);
}

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace exactnum

#include "exactnum/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "exactnum/rng.hpp"

namespace exactnum {

int QMag::exponent() const {
  if (zero_) throw ArithmeticError("exponent of zero magnitude");
  return e_;
}

double QMag::to_double(u32 q) const { return zero_ ? 0.0 : std::pow(static_cast<double>(q), -e_); }

QMag QMag::inverse() const {
  if (zero_) throw ArithmeticError("inverse of zero magnitude");
  return QMag(false, -e_);
}

QMag operator*(QMag a, QMag b) {
  if (a.zero_ || b.zero_) return QMag::zero();
  return QMag(false, a.e_ + b.e_);
}

bool operator<(QMag a, QMag b) {
  if (b.zero_) return false;
  if (a.zero_) return true;
  return a.e_ > b.e_;
}

Laurent Laurent::zero(u32 q) { return Laurent(q); }

Laurent::Laurent(u32 q, int valuation, std::vector<u32> coeffs) : q_(q), zero_(false), v_(valuation) {
  size_t lead = 0;
  while (lead < coeffs.size() && coeffs[lead] % q == 0) ++lead;
  if (lead == coeffs.size())
    throw PrecisionExhausted("all known coefficients vanish", valuation + static_cast<int>(coeffs.size()));
  c_.assign(coeffs.begin() + lead, coeffs.end());
  for (auto& x : c_) x %= q;
  v_ += static_cast<int>(lead);
}

int Laurent::valuation() const {
  if (zero_) throw ArithmeticError("valuation of zero");
  return v_;
}

u32 Laurent::coeff(int i) const {
  if (zero_) return 0;
  if (i < v_) return 0;
  if (i >= abs_precision()) throw PrecisionExhausted("coefficient beyond known precision", abs_precision());
  return c_[i - v_];
}

QMag Laurent::magnitude() const { return zero_ ? QMag::zero() : QMag::from_exponent(v_); }

Laurent Laurent::truncated(int prec) const {
  if (zero_ || prec >= precision()) return *this;
  if (prec < 1) throw std::invalid_argument("precision must be positive");
  Laurent r = *this;
  r.c_.resize(prec);
  return r;
}

Poly Laurent::polynomial_part() const {
  if (zero_ || v_ > 0) return Poly(q_);
  if (abs_precision() <= 0) throw PrecisionExhausted("polynomial part not determined", abs_precision());
  std::vector<u32> p(-v_ + 1, 0);
  for (int i = v_; i <= 0; ++i) p[-i] = coeff(i);
  return Poly(q_, std::move(p));
}

std::string Laurent::serialize() const {
  std::ostringstream os;
  os << q_ << ':';
  if (zero_) {
    os << "zero:";
    return os.str();
  }
  os << v_ << ':';
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  return os.str();
}

Laurent Laurent::parse(const std::string& text) {
  auto p1 = text.find(':');
  auto p2 = text.find(':', p1 == std::string::npos ? 0 : p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos)
    throw std::invalid_argument("malformed Laurent text: " + text);
  u32 q = static_cast<u32>(std::stoul(text.substr(0, p1)));
  require_odd_prime(q);
  std::string vs = text.substr(p1 + 1, p2 - p1 - 1);
  if (vs == "zero") return zero(q);
  int v = std::stoi(vs);
  std::vector<u32> c;
  std::stringstream rest(text.substr(p2 + 1));
  std::string tok;
  while (std::getline(rest, tok, ',')) {
    unsigned long x = std::stoul(tok);
    if (x >= q) throw std::invalid_argument("coefficient out of range: " + tok);
    c.push_back(static_cast<u32>(x));
  }
  if (c.empty()) throw std::invalid_argument("Laurent text without coefficients");
  if (c[0] == 0) throw std::invalid_argument("leading coefficient must be nonzero");
  return Laurent(q, v, std::move(c));
}

static void check_q(const Laurent& f, const Laurent& g) {
  if (f.q() != g.q()) throw std::invalid_argument("Laurent series over different fields");
}

Laurent add(const Laurent& f, const Laurent& g, int prec) {
  check_q(f, g);
  if (f.is_zero()) return g.truncated(prec);
  if (g.is_zero()) return f.truncated(prec);
  const u32 q = f.q();
  const int lo = std::min(f.valuation(), g.valuation());
  const int abs = std::min(f.abs_precision(), g.abs_precision());
  int first = lo;
  while (first < abs && add_mod(f.coeff(first), g.coeff(first), q) == 0) ++first;
  if (first == abs) throw PrecisionExhausted("cancellation exhausted the known precision", abs);
  const int end = static_cast<int>(std::min<long long>(abs, static_cast<long long>(first) + prec));
  std::vector<u32> c;
  c.reserve(end - first);
  for (int i = first; i < end; ++i) c.push_back(add_mod(f.coeff(i), g.coeff(i), q));
  return Laurent(q, first, std::move(c));
}

Laurent neg(const Laurent& f) {
  if (f.is_zero()) return f;
  std::vector<u32> c = f.coeffs();
  for (auto& x : c) x = neg_mod(x, f.q());
  return Laurent(f.q(), f.valuation(), std::move(c));
}

Laurent scale(const Laurent& f, u32 c) {
  c %= f.q();
  if (f.is_zero() || c == 0) return Laurent::zero(f.q());
  std::vector<u32> r = f.coeffs();
  for (auto& x : r) x = mul_mod(x, c, f.q());
  return Laurent(f.q(), f.valuation(), std::move(r));
}

Laurent sub(const Laurent& f, const Laurent& g, int prec) { return add(f, neg(g), prec); }

Laurent mul(const Laurent& f, const Laurent& g, int prec) {
  check_q(f, g);
  if (f.is_zero() || g.is_zero()) return Laurent::zero(f.q());
  const u32 q = f.q();
  const int n = std::min({f.precision(), g.precision(), prec});
  const auto& a = f.coeffs();
  const auto& b = g.coeffs();
  std::vector<u64> acc(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (int j = 0; i + j < n; ++j) {
      acc[i + j] += static_cast<u64>(a[i]) * b[j];
      if (acc[i + j] >= (1ull << 62)) acc[i + j] %= q;
    }
  }
  std::vector<u32> c(n);
  for (int k = 0; k < n; ++k) c[k] = static_cast<u32>(acc[k] % q);
  return Laurent(q, f.valuation() + g.valuation(), std::move(c));
}

Laurent inv(const Laurent& f, int prec) {
  if (f.is_zero()) throw ArithmeticError("inversion of zero");
  const u32 q = f.q();
  const int n = std::min(f.precision(), prec);
  if (n < 1) throw std::invalid_argument("precision must be positive");
  const auto& a = f.coeffs();
  std::vector<u32> b(n, 0);
  b[0] = inv_mod(a[0], q);
  const u32 nb0 = neg_mod(b[0], q);
  for (int k = 1; k < n; ++k) {
    u64 acc = 0;
    for (int j = 1; j <= k; ++j) {
      acc += static_cast<u64>(a[j]) * b[k - j];
      if (acc >= (1ull << 62)) acc %= q;
    }
    b[k] = mul_mod(static_cast<u32>(acc % q), nb0, q);
  }
  return Laurent(q, -f.valuation(), std::move(b));
}

Laurent div(const Laurent& f, const Laurent& g, int prec) {
  if (f.is_zero()) {
    if (g.is_zero()) throw ArithmeticError("inversion of zero");
    return f;
  }
  const int n = std::min({f.precision(), g.precision(), prec});
  return mul(f, inv(g, n), n);
}

Laurent lau_arith(LauOp op, const Laurent& f, const Laurent* g, int prec) {
  auto need = [&] {
    if (!g) throw std::invalid_argument("binary Laurent operation without second operand");
    return *g;
  };
  switch (op) {
    case LauOp::add: return add(f, need(), prec);
    case LauOp::sub: return sub(f, need(), prec);
    case LauOp::mul: return mul(f, need(), prec);
    case LauOp::div: return div(f, need(), prec);
    case LauOp::inv: return inv(f, prec);
    case LauOp::neg: return neg(f).truncated(prec);
  }
  throw std::logic_error("unknown Laurent operation");
}

std::pair<int, QMag> valuation_abs(const Laurent& f) {
  if (f.is_zero()) return {Laurent::kExact, QMag::zero()};
  return {f.valuation(), f.magnitude()};
}

Laurent embed_poly(const Poly& p, int prec) {
  if (p.is_zero()) return Laurent::zero(p.q());
  if (prec < 1) throw std::invalid_argument("precision must be positive");
  const int d = p.degree();
  std::vector<u32> c(prec, 0);
  for (int k = 0; k < prec && k <= d; ++k) c[k] = p.coeff(d - k);
  return Laurent(p.q(), -d, std::move(c));
}

Laurent embed_ratfunc(const RatFunc& r, int prec) {
  if (r.is_zero()) return Laurent::zero(r.q());
  return div(embed_poly(r.num(), prec), embed_poly(r.den(), prec), prec);
}

Laurent lau_sqrt(const Laurent& f, int prec) {
  const u32 q = f.q();
  if (f.is_zero()) return f;
  if (f.valuation() % 2 != 0) throw ArithmeticError("no root in K^: odd valuation");
  const auto& a = f.coeffs();
  auto s0 = canonical_sqrt_mod(a[0], q);
  if (!s0) throw ArithmeticError("no root in K^: leading coefficient is not a square");
  const int n = std::min(f.precision(), prec);
  std::vector<u32> s(n, 0);
  s[0] = *s0;
  const u32 inv2s0 = inv_mod(mul_mod(2, *s0, q), q);
  for (int k = 1; k < n; ++k) {
    u32 acc = a[k];
    for (int j = 1; j < k; ++j) acc = sub_mod(acc, mul_mod(s[j], s[k - j], q), q);
    s[k] = mul_mod(acc, inv2s0, q);
  }
  return Laurent(q, f.valuation() / 2, std::move(s));
}

Laurent sample_haar(u32 q, int valuation_floor, int prec, u64 seed) {
  require_odd_prime(q);
  if (prec < 1) throw std::invalid_argument("precision must be positive");
  Rng rng(seed);
  std::vector<u32> c(prec);
  for (auto& x : c) x = static_cast<u32>(rng.below(q));
  if (std::all_of(c.begin(), c.end(), [](u32 x) { return x == 0; })) return Laurent::zero(q);
  return Laurent(q, valuation_floor, std::move(c));
}

}  // namespace exactnum

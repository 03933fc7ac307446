#include "quadratic/contfrac.hpp"

#include <map>

namespace quadratic {

CFExpansion cf_expand(const QuadIrr& alpha, int max_states) {
  const u32 q = alpha.q();
  const Poly& D = alpha.D();
  const Poly S = alpha.sqrt_poly_part();
  const u32 s = alpha.sigma() > 0 ? 1 : q - 1;
  Poly P = (-alpha.B()).scaled(s);
  Poly Q = alpha.A().scaled(2 * s % q);
  std::map<std::pair<Poly, Poly>, int> seen;
  std::vector<Poly> quot;
  CFExpansion out;
  while (true) {
    auto [it, inserted] = seen.emplace(std::make_pair(P, Q), static_cast<int>(quot.size()));
    if (!inserted) {
      const int j = it->second;
      out.preperiod.assign(quot.begin(), quot.begin() + j);
      out.period.assign(quot.begin() + j, quot.end());
      return out;
    }
    if (static_cast<int>(quot.size()) >= max_states) {
      out.preperiod = std::move(quot);
      out.budget_exceeded = true;
      return out;
    }
    Poly a = (P + S) / Q;
    Poly Pn = a * Q - P;
    auto [Qn, rem] = exactnum::divmod(D - Pn * Pn, Q);
    if (!rem.is_zero()) throw std::logic_error("cf_expand: state invariant Q | D - P^2 broken");
    quot.push_back(std::move(a));
    P = std::move(Pn);
    Q = std::move(Qn);
  }
}

std::vector<Poly> cf_rational(const RatFunc& r) {
  std::vector<Poly> out;
  Poly a = r.num(), b = r.den();
  while (!b.is_zero()) {
    auto [k, rem] = exactnum::divmod(a, b);
    out.push_back(std::move(k));
    a = std::move(b);
    b = std::move(rem);
  }
  return out;
}

std::vector<Poly> cf_quotients(const CFExpansion& cf, int n) {
  std::vector<Poly> out;
  for (int i = 0; i < n; ++i) {
    if (i < static_cast<int>(cf.preperiod.size())) out.push_back(cf.preperiod[i]);
    else if (cf.period.empty()) break;
    else out.push_back(cf.period[(i - cf.preperiod.size()) % cf.period.size()]);
  }
  return out;
}

std::vector<Convergent> convergents(const std::vector<Poly>& quotients) {
  std::vector<Convergent> out;
  if (quotients.empty()) return out;
  const u32 q = quotients[0].q();
  Poly p2(q), p1 = Poly::constant(q, 1), q2 = Poly::constant(q, 1), q1(q);
  for (const Poly& a : quotients) {
    Poly p = a * p1 + p2, qq = a * q1 + q2;
    out.push_back({p, qq});
    p2 = std::move(p1);
    p1 = std::move(p);
    q2 = std::move(q1);
    q1 = std::move(qq);
  }
  return out;
}

}  // namespace quadratic

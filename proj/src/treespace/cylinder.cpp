#include "treespace/cylinder.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace treespace {

namespace {

bool is_prefix(const Address& p, const Address& a) {
  return p.size() <= a.size() && std::equal(p.begin(), p.end(), a.begin());
}

}  // namespace

void CylinderUnion::check(const Address& a) const {
  for (size_t i = 0; i < a.size(); ++i) {
    const int hi = i == 0 ? q_ : q_ - 1;
    if (a[i] < 0 || a[i] > hi) throw std::invalid_argument("cylinder address digit out of range");
  }
}

CylinderUnion CylinderUnion::whole(int q) { return cylinder(q, {}); }

CylinderUnion CylinderUnion::cylinder(int q, Address a) {
  CylinderUnion u(q);
  u.check(a);
  u.c_.push_back(std::move(a));
  return u;
}

CylinderUnion CylinderUnion::complement_of(int q, const Address& a) {
  CylinderUnion u(q);
  u.check(a);
  Address pre;
  for (size_t i = 0; i < a.size(); ++i) {
    const int hi = i == 0 ? q : q - 1;
    for (int d = 0; d <= hi; ++d) {
      if (d == a[i]) continue;
      Address s = pre;
      s.push_back(d);
      u.c_.push_back(std::move(s));
    }
    pre.push_back(a[i]);
  }
  std::sort(u.c_.begin(), u.c_.end());
  return u;
}

CylinderUnion CylinderUnion::from_list(int q, std::vector<Address> list) {
  CylinderUnion u(q);
  for (const auto& a : list) u.check(a);
  std::sort(list.begin(), list.end());
  for (auto& a : list) {
    if (!u.c_.empty() && is_prefix(u.c_.back(), a)) continue;
    u.c_.push_back(std::move(a));
    // a complete set of siblings collapses to its parent
    while (!u.c_.empty() && !u.c_.back().empty()) {
      Address parent(u.c_.back().begin(), u.c_.back().end() - 1);
      const size_t k = parent.empty() ? q + 1 : q;
      if (u.c_.size() < k || static_cast<size_t>(u.c_.back().back()) != k - 1) break;
      bool full = true;
      for (size_t j = 0; j < k && full; ++j) {
        const Address& s = u.c_[u.c_.size() - k + j];
        full = s.size() == parent.size() + 1 && static_cast<size_t>(s.back()) == j &&
               std::equal(parent.begin(), parent.end(), s.begin());
      }
      if (!full) break;
      u.c_.resize(u.c_.size() - k);
      u.c_.push_back(std::move(parent));
    }
  }
  return u;
}

mpq_class CylinderUnion::cylinder_mass(int q, size_t len) {
  if (len == 0) return 1;
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), q, len - 1);
  den *= q + 1;
  mpq_class r(1, den);
  r.canonicalize();
  return r;
}

mpq_class CylinderUnion::mass() const {
  mpq_class m = 0;
  for (const auto& a : c_) m += cylinder_mass(q_, a.size());
  return m;
}

CylinderUnion CylinderUnion::unite(const CylinderUnion& o) const {
  if (o.q_ != q_) throw std::invalid_argument("cylinder unions over different trees");
  std::vector<Address> all = c_;
  all.insert(all.end(), o.c_.begin(), o.c_.end());
  return from_list(q_, std::move(all));
}

CylinderUnion CylinderUnion::intersect(const CylinderUnion& o) const {
  if (o.q_ != q_) throw std::invalid_argument("cylinder unions over different trees");
  CylinderUnion r(q_);
  const auto& B = o.c_;
  for (const Address& x : c_) {
    // members of B extending x form a contiguous range
    for (auto it = std::lower_bound(B.begin(), B.end(), x); it != B.end() && is_prefix(x, *it); ++it)
      r.c_.push_back(*it);
    // at most one member of B is a proper prefix of x
    for (size_t len = 0; len < x.size(); ++len) {
      Address p(x.begin(), x.begin() + len);
      if (std::binary_search(B.begin(), B.end(), p)) {
        r.c_.push_back(x);
        break;
      }
    }
  }
  return from_list(q_, std::move(r.c_));
}

bool CylinderUnion::disjoint_from(const CylinderUnion& o) const { return intersect(o).empty(); }

bool CylinderUnion::contains(const CylinderUnion& o) const { return o.intersect(*this).mass() == o.mass(); }

bool CylinderUnion::contains_point(const Address& prefix) const {
  for (size_t len = 0; len <= prefix.size(); ++len) {
    Address p(prefix.begin(), prefix.begin() + len);
    if (std::binary_search(c_.begin(), c_.end(), p)) return true;
  }
  return false;
}

std::string CylinderUnion::to_string() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < c_.size(); ++i) {
    os << (i ? " " : "") << "[";
    for (size_t j = 0; j < c_[i].size(); ++j) os << (j ? "," : "") << c_[i][j];
    os << "]";
  }
  os << "}";
  return os.str();
}

}  // namespace treespace

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace treespace {

using Address = std::vector<int>;

// Finite union of pairwise disjoint boundary cylinders of a (q+1)-regular tree, in address
// coordinates from the base vertex. The first digit ranges over [0, q], later digits over [0, q-1].
// A length-L cylinder has mass 1/((q+1) q^(L-1)); the empty address is the whole boundary.
class CylinderUnion {
 public:
  explicit CylinderUnion(int q = 2) : q_(q) {}
  static CylinderUnion whole(int q);
  static CylinderUnion cylinder(int q, Address a);
  static CylinderUnion complement_of(int q, const Address& a);
  // Normalizes an arbitrary list of cylinders (overlaps allowed) into a disjoint union.
  static CylinderUnion from_list(int q, std::vector<Address> list);

  int q() const { return q_; }
  const std::vector<Address>& cylinders() const { return c_; }
  bool empty() const { return c_.empty(); }
  size_t size() const { return c_.size(); }

  mpq_class mass() const;
  static mpq_class cylinder_mass(int q, size_t len);

  CylinderUnion unite(const CylinderUnion& o) const;
  CylinderUnion intersect(const CylinderUnion& o) const;
  bool disjoint_from(const CylinderUnion& o) const;
  bool contains(const CylinderUnion& o) const;
  // Whether a boundary point with this address prefix (long enough) lies in the union.
  bool contains_point(const Address& prefix) const;

  std::string to_string() const;
  friend bool operator==(const CylinderUnion& a, const CylinderUnion& b) = default;

 private:
  void check(const Address& a) const;
  int q_;
  std::vector<Address> c_;
};

}  // namespace treespace

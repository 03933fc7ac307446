#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "treespace/cylinder.hpp"

namespace bcengine {

using treespace::Address;
using treespace::CylinderUnion;
using json = nlohmann::json;

struct InstanceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Radii live on the grid eps = e^{-m}, m an integer; a rate with values in that grid is stored
// by its exponent. Tables are indexed by level n in [n_min, n_max].
struct RateFns {
  int n_min = 0;
  std::vector<mpq_class> f1, f4;
  std::vector<int> m2, m3;  // f2(n) = e^{-m2(n)}, f3(n) = e^{-m3(n)}
  mpq_class f5_base = 1;    // f5(e^{-m}) = f5_base^{-m}
  mpq_class c = 1;
  int c_prime_exp = 1;      // c' = e^{c_prime_exp}
  mpq_class c_second = 1;   // c''

  int n_max() const { return n_min + static_cast<int>(m2.size()) - 1; }
  size_t idx(int n) const;
  mpq_class f5(int m) const;
  // floor(log c): c f3(n) is snapped down to e^{-(m3(n) - c_shift())}.
  int c_shift() const;
};

struct Item {
  std::string id;
  int level = 0;
  std::map<int, CylinderUnion> balls;  // m -> B_i(e^{-m})

  const CylinderUnion& ball(int m) const;
};

struct BCInstance {
  std::string name;
  int q = 2;
  RateFns rates;
  std::vector<Item> items;
  bool enumeration_complete = true;
  std::vector<std::string> warnings;

  int n_max() const { return rates.n_max(); }
  // Item indices per level, n_min .. n_max.
  std::vector<std::vector<size_t>> by_level() const;
  // Table shapes, level range, branching, and monotonicity of every tabulated family.
  void validate() const;

  json to_json() const;
  static BCInstance from_json(const json& j);
};

std::string to_string(const mpq_class& x);
mpq_class parse_rational(const std::string& s);
mpq_class pow_q(const mpq_class& b, int e);

}  // namespace bcengine

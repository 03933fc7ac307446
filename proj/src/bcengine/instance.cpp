#include "bcengine/instance.hpp"

#include <cmath>

namespace bcengine {

std::string to_string(const mpq_class& x) { return x.get_str(); }

mpq_class parse_rational(const std::string& s) {
  mpq_class r;
  if (s.empty() || r.set_str(s, 10) != 0) throw InstanceError("not a rational number: '" + s + "'");
  r.canonicalize();
  if (r.get_den() == 0) throw InstanceError("zero denominator: '" + s + "'");
  return r;
}

mpq_class pow_q(const mpq_class& b, int e) {
  mpz_class num, den;
  const unsigned long k = static_cast<unsigned long>(std::abs(e));
  mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), k);
  mpq_class r = e >= 0 ? mpq_class(num, den) : mpq_class(den, num);
  r.canonicalize();
  return r;
}

size_t RateFns::idx(int n) const {
  if (n < n_min || n > n_max()) throw InstanceError("level " + std::to_string(n) + " outside the rate tables");
  return static_cast<size_t>(n - n_min);
}

mpq_class RateFns::f5(int m) const { return pow_q(f5_base, -m); }

int RateFns::c_shift() const {
  int k = 0;
  // largest k with e^k <= c; e^k is irrational for k >= 1, so compare in floating point
  while (std::exp(static_cast<double>(k + 1)) <= c.get_d()) ++k;
  return k;
}

const CylinderUnion& Item::ball(int m) const {
  auto it = balls.find(m);
  if (it == balls.end())
    throw InstanceError("item " + id + ": radius e^-" + std::to_string(m) + " not tabulated");
  return it->second;
}

std::vector<std::vector<size_t>> BCInstance::by_level() const {
  std::vector<std::vector<size_t>> out(static_cast<size_t>(std::max(0, n_max() - rates.n_min + 1)));
  for (size_t i = 0; i < items.size(); ++i) out[rates.idx(items[i].level)].push_back(i);
  return out;
}

void BCInstance::validate() const {
  const auto& r = rates;
  const size_t L = r.m2.size();
  if (L == 0) throw InstanceError("empty rate tables");
  if (r.m3.size() != L || r.f1.size() != L || r.f4.size() != L) throw InstanceError("rate tables differ in length");
  for (size_t k = 0; k < L; ++k)
    if (r.f1[k] <= 0 || r.f4[k] <= 0) throw InstanceError("f1 and f4 must be positive");
  if (r.f5_base <= 1) throw InstanceError("f5 base must exceed 1 (f5 increasing)");
  if (r.c < 1) throw InstanceError("c must be at least 1");
  if (r.c_prime_exp < 1) throw InstanceError("c' must exceed 1");
  if (r.c_second <= 1) throw InstanceError("c'' must exceed 1");
  if (q < 2) throw InstanceError("branching must be at least 2");
  for (const auto& it : items) {
    r.idx(it.level);
    if (it.balls.empty()) throw InstanceError("item " + it.id + " has no balls");
    const CylinderUnion* prev = nullptr;
    int pm = 0;
    for (const auto& [m, b] : it.balls) {
      if (b.q() != q) throw InstanceError("item " + it.id + ": branching mismatch");
      if (prev && !prev->contains(b))
        throw InstanceError("item " + it.id + ": B(e^-" + std::to_string(m) + ") not inside B(e^-" +
                            std::to_string(pm) + ")");
      prev = &b;
      pm = m;
    }
  }
}

namespace {

json cyl_json(const CylinderUnion& u) {
  json a = json::array();
  for (const auto& c : u.cylinders()) a.push_back(c);
  return a;
}

json rat_list(const std::vector<mpq_class>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

std::vector<mpq_class> parse_rat_list(const json& a) {
  std::vector<mpq_class> v;
  for (const auto& x : a) v.push_back(parse_rational(x.get<std::string>()));
  return v;
}

}  // namespace

json BCInstance::to_json() const {
  json j;
  j["name"] = name;
  j["q"] = q;
  j["enumeration_complete"] = enumeration_complete;
  j["warnings"] = warnings;
  json rj;
  rj["n_min"] = rates.n_min;
  rj["f1"] = rat_list(rates.f1);
  rj["f4"] = rat_list(rates.f4);
  rj["m2"] = rates.m2;
  rj["m3"] = rates.m3;
  rj["f5_base"] = to_string(rates.f5_base);
  rj["c"] = to_string(rates.c);
  rj["c_prime_exp"] = rates.c_prime_exp;
  rj["c_second"] = to_string(rates.c_second);
  j["rates"] = rj;
  json ij = json::array();
  for (const auto& it : items) {
    json b = json::object();
    for (const auto& [m, u] : it.balls) b[std::to_string(m)] = cyl_json(u);
    ij.push_back({{"id", it.id}, {"level", it.level}, {"balls", b}});
  }
  j["items"] = ij;
  return j;
}

BCInstance BCInstance::from_json(const json& j) {
  BCInstance inst;
  try {
    inst.name = j.value("name", "");
    inst.q = j.at("q").get<int>();
    inst.enumeration_complete = j.value("enumeration_complete", true);
    if (j.contains("warnings")) inst.warnings = j["warnings"].get<std::vector<std::string>>();
    const auto& rj = j.at("rates");
    inst.rates.n_min = rj.at("n_min").get<int>();
    inst.rates.f1 = parse_rat_list(rj.at("f1"));
    inst.rates.f4 = parse_rat_list(rj.at("f4"));
    inst.rates.m2 = rj.at("m2").get<std::vector<int>>();
    inst.rates.m3 = rj.at("m3").get<std::vector<int>>();
    inst.rates.f5_base = parse_rational(rj.at("f5_base").get<std::string>());
    inst.rates.c = parse_rational(rj.at("c").get<std::string>());
    inst.rates.c_prime_exp = rj.at("c_prime_exp").get<int>();
    inst.rates.c_second = parse_rational(rj.at("c_second").get<std::string>());
    for (const auto& ij : j.at("items")) {
      Item it;
      it.id = ij.at("id").get<std::string>();
      it.level = ij.at("level").get<int>();
      for (const auto& [k, v] : ij.at("balls").items()) {
        std::vector<Address> cyl = v.get<std::vector<Address>>();
        it.balls.emplace(std::stoi(k), CylinderUnion::from_list(inst.q, std::move(cyl)));
      }
      inst.items.push_back(std::move(it));
    }
  } catch (const json::exception& e) {
    throw InstanceError(std::string("malformed instance: ") + e.what());
  }
  inst.validate();
  return inst;
}

}  // namespace bcengine

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "bcengine/builders.hpp"
#include "bcengine/engine.hpp"
#include "cli/commands.hpp"
#include "flow/chain.hpp"
#include "hypgeom/hyperbolic.hpp"
#include "oracles.hpp"
#include "quadratic/orbit.hpp"

using namespace treespace;
using exactnum::Rng;

namespace {

int failures = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail, double secs) {
  std::printf("criterion %2d %-28s %s  (%s; %.1fs)\n", n, name.c_str(), ok ? "PASS" : "FAIL", detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void criterion(int n, const std::string& name, F body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(n, name, ok, detail, s);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

cli::RunConfig config(const std::string& cmd) {
  cli::RunConfig c;
  c.experiment = cmd;
  return c;
}

double cell(const cli::Report& r, size_t row, size_t col) { return std::stod(r.rows.at(row).at(col)); }

// Exact d_C formula against the truncated limit on random instances of one tree backend.
template <class M, class P, class N>
void dC_equivalence(const M& m, Rng& rng, P point, N near, long want, long& checked, long& bad) {
  long got = 0;
  while (got < want) {
    auto C = oracle::random_convex(m, rng, point, near);
    auto xi = point();
    auto eta = rng.below(2) ? near(xi) : point();
    if (oracle::at_infinity(m, C, xi) || oracle::at_infinity(m, C, eta)) continue;
    auto v = d_C(m, C, xi, eta);
    const int lim = oracle::dC_limit_twice(m, C, xi, eta, 90);
    if (v.zero) {
      // xi = eta: the limit exponent diverges to -infinity
      if (lim > -150) ++bad;
    } else if (v.twice != lim || !(closest_point(m, C, xi) == oracle::projection(m, C, xi))) {
      ++bad;
    }
    ++got;
  }
  checked += got;
}

// Upper bound, lower bound with 3 - 2 sqrt 2, and the scaling law under m-neighborhoods.
template <class M, class P, class N>
void tree_bounds(const M& m, Rng& rng, P point, N near, long want, long& checked, long& bad) {
  using Mod = std::decay_t<decltype(m)>;
  const double lb = std::log(3 - 2 * std::sqrt(2.0));
  long got = 0;
  while (got < want) {
    auto C = oracle::random_convex(m, rng, point, near);
    auto xi = point();
    auto eta = rng.below(2) ? near(xi) : point();
    if (oracle::at_infinity(m, C, xi) || oracle::at_infinity(m, C, eta)) continue;
    auto v = d_C(m, C, xi, eta);
    if (v.zero) continue;
    const int eps = 1 + static_cast<int>(rng.below(4));
    const int dpp = dist(m, closest_point(m, C, xi), closest_point(m, C, eta));
    const int dline = distance_to_line(m, C, xi, eta);
    bool ok = v.twice <= dpp;
    ok = ok && v.exponent() >= lb + dpp / 2.0 - dline - 1e-12;
    ok = ok && d_C(m, ConvexSub<Mod>::nbhd(C, eps), xi, eta).twice == v.twice + 2 * eps;
    if (!ok) ++bad;
    ++got;
  }
  checked += got;
}

}  // namespace

int main() {
  BTTree bt(3);
  CayleyTree f2(2);

  criterion(1, "tree d_C formula = limit", [&](std::string& d) {
    Rng rng(101);
    long checked = 0, bad = 0;
    dC_equivalence(bt, rng, [&] { return oracle::bt_point(bt, rng); },
                   [&](const BTBoundary& z) { return oracle::bt_near(bt, z, rng); }, 5000, checked, bad);
    dC_equivalence(f2, rng, [&] { return oracle::cay_point(f2, rng); },
                   [&](const CayleyBoundary& z) { return oracle::cay_near(f2, z, rng); }, 5000, checked, bad);
    d = std::to_string(checked) + " instances, " + std::to_string(bad) + " mismatches";
    return checked >= 10000 && bad == 0;
  });

  criterion(2, "hyperbolic closed form", [&](std::string& d) {
    using namespace hypgeom;
    Rng rng(202);
    double worst = 0;
    for (int s = 0; s < 100; ++s) {
      auto C = TotGeod::standard(3, 1 + s % 2).transformed(random_lorentz(3, rng.next()));
      auto dir = [&] { return Vec((Vec(3) << rng.normal(), rng.normal(), rng.normal()).finished()); };
      Vec xi = boundary_point(dir()), eta = boundary_point(dir());
      worst = std::max(worst, std::abs(d_C(C, xi, eta) - dC_limit(C, xi, eta, 30)));
    }
    double special = std::abs(dC_closed_form(0, M_PI) - 1);
    for (double rho : {0.1, 1.0, 4.0, 12.0})
      special = std::max(special, std::abs(dC_closed_form(rho, 0) - std::sinh(rho / 2)));
    d = fmt("max |closed - limit| = %.2e, special values err %.1e", worst, special);
    return worst <= 1e-6 && special <= 1e-12;
  });

  criterion(3, "d_C bounds and scaling", [&](std::string& d) {
    Rng rng(303);
    long checked = 0, bad = 0;
    tree_bounds(bt, rng, [&] { return oracle::bt_point(bt, rng); },
                [&](const BTBoundary& z) { return oracle::bt_near(bt, z, rng); }, 5000, checked, bad);
    tree_bounds(f2, rng, [&] { return oracle::cay_point(f2, rng); },
                [&](const CayleyBoundary& z) { return oracle::cay_near(f2, z, rng); }, 5000, checked, bad);
    auto h1 = hypgeom::bounds_suite(3, 1, 5000, 31), h2 = hypgeom::bounds_suite(3, 2, 5000, 32);
    d = std::to_string(checked) + " tree samples (" + std::to_string(bad) + " violations), " +
        std::to_string(h1.samples + h2.samples) + " in H^3, witness " + (h1.triangle_witness ? "ok" : "missing");
    return checked >= 10000 && bad == 0 && h1.samples + h2.samples >= 9500 && h1.ok() && h2.ok();
  });

  criterion(4, "Perron value and entropy", [&](std::string& d) {
    auto a = flow::perron(flow::QuotientGraph::complete(4));
    auto b = flow::perron(flow::QuotientGraph::petersen());
    d = fmt("K4 %.12f, Petersen %.12f, h %.12f", a.lambda, b.lambda, a.entropy);
    return std::abs(a.lambda - 2) <= 1e-10 && std::abs(b.lambda - 2) <= 1e-10 &&
           std::abs(a.entropy - std::log(a.lambda)) <= 1e-12 && std::abs(b.entropy - std::log(b.lambda)) <= 1e-12;
  });

  criterion(5, "logarithm law", [&](std::string& d) {
    auto r = cli::run(config("spiral_loglaw"));
    const double med = r.summary["median"], target = 1 / std::log(2.0);
    d = fmt("median %.4f vs %.4f, rel err %+.1f%%", med, target, 100 * (med / target - 1));
    return std::abs(med / target - 1) <= 0.15;
  });

  criterion(6, "Khintchine separation", [&](std::string& d) {
    auto r = cli::run(config("spiral_khintchine"));  // kappa h in {0.5, 2}
    const double lo = cell(r, 0, 2), hi = cell(r, 1, 2);
    d = fmt("rate %.2f at 0.5/h, %.2f at 2/h", lo, hi);
    return lo - hi >= 0.6;
  });

  criterion(7, "double coset growth", [&](std::string& d) {
    auto c = config("coset_count");
    c.d_max = 14;
    auto r = cli::run(c);
    const double slope = r.summary["slope"];
    d = fmt("slope %.4f vs log 3 = %.4f", slope, std::log(3.0));
    return std::abs(slope / std::log(3.0) - 1) <= 0.1;
  });

  criterion(8, "measure band", [&](std::string& d) {
    auto c = config("measure_band");
    c.d_max = 8;
    auto r = cli::run(c);
    double lo = INFINITY, hi = 0;
    for (const auto& row : r.rows) {
      const double x = mpq_class(row.at(4)).get_d();  // exact ratio p/q
      lo = std::min(lo, x), hi = std::max(hi, x);
    }
    const double fitted = std::max(hi, 1 / lo);
    const bool disjoint = r.summary["disjoint"];
    d = std::to_string(r.rows.size()) + " rows, " + fmt("ratios in [%.3f, %.3f], c = %.3f", lo, hi, fitted) +
        (disjoint ? ", disjoint" : ", overlap");
    return !r.rows.empty() && fitted <= 20 && disjoint;
  });

  criterion(9, "Borel-Cantelli engine", [&](std::string& d) {
    struct Case {
      std::string fixture, verdict;
      std::set<int> failing;
    };
    const std::vector<Case> cases = {{"spiral-convergent", "measure-zero", {}},
                                     {"point-convergent", "measure-zero", {7}},
                                     {"nested", "measure-zero", {2, 7}},
                                     {"spiral-divergent", "positive-measure", {}},
                                     {"point-divergent", "positive-measure", {}},
                                     {"independent", "positive-measure", {}},
                                     {"overlapping", "hypotheses-violated", {6}},
                                     {"inverted", "hypotheses-violated", {1}}};
    int good = 0;
    std::string bad;
    for (const auto& cs : cases) {
      auto c = config("bc_run");
      c.fixture = cs.fixture;
      auto r = cli::run(c);
      std::set<int> failing;
      for (const auto& row : r.rows)
        if (row[1] == "0") failing.insert(std::stoi(row[0]));
      if (r.summary["verdict"]["verdict"] == cs.verdict && failing == cs.failing) ++good;
      else bad += " " + cs.fixture;
    }
    // exact masses: monotone in the truncation and in n0, closed forms on the synthetic fixtures
    using namespace bcengine;
    bool exact = true;
    auto sp = build_spiral_instance(7, [](int) { return 0.0; });
    auto t6 = tail_masses(sp, 6), t7 = tail_masses(sp, 7);
    for (size_t k = 0; k < t6.size(); ++k) exact = exact && t7[k] >= t6[k] && (k == 0 || t6[k] <= t6[k - 1]);
    auto ind = tail_masses(build_independent_instance(10), 10);
    for (int n0 = 1; n0 <= 10; ++n0) exact = exact && ind[n0 - 1] == 1 - pow_q(mpq_class(1, 2), 10 - n0 + 1);
    auto nest = tail_masses(build_nested_instance(20), 20);
    for (int n0 = 1; n0 <= 20; ++n0) exact = exact && nest[n0 - 1] == mpq_class(1, 3) / pow_q(2, 2 * n0);
    d = std::to_string(good) + "/" + std::to_string(cases.size()) + " fixtures as expected" +
        (bad.empty() ? "" : " (wrong:" + bad + ")") + ", exact masses " + (exact ? "ok" : "wrong");
    return good == static_cast<int>(cases.size()) && exact;
  });

  criterion(10, "Diophantine trends", [&](std::string& d) {
    auto c = config("dioph");  // q = 3, 200 samples, shells 3^2 .. 3^6
    auto div = cli::run(c);
    c.phi = "power";
    c.s = 1;
    auto conv = cli::run(c);
    const double dec = div.summary["running_min_decrease"];
    const double hdec = div.summary["h_running_min_decrease"];
    const bool inc = conv.summary["shell_min_increasing"];
    const bool h2inc = conv.summary["h2_shell_min_increasing"];
    double floor = INFINITY;
    for (const auto& sh : conv.summary["shells"]) floor = std::min(floor, sh["median_phi_shell_min"].get<double>());
    d = fmt("1/log t running min down %.1fx, h|x-b| down %.1fx, t^-1 floor %.2f", dec, hdec, floor) +
        (inc ? ", increasing" : ", not increasing") + (h2inc ? ", h^2|x-b| increasing" : ", h^2|x-b| flat");
    return dec >= 2 && hdec > 1 && inc && floor > 0 && h2inc;
  });

  criterion(11, "height-depth constant", [&](std::string& d) {
    const u32 q = 3;
    quadratic::QuadIrr alpha(Poly(q, {1}), Poly(q), -Poly(q, {1, 0, 1}), 1);
    auto a = BTBoundary::point(KPoint::from_quadirr(alpha));
    auto as = BTBoundary::point(KPoint::from_quadirr(alpha.conjugate()));
    auto orbit = quadratic::orbit_enumerate(alpha, exactnum::QMag::from_exponent(-5));
    int used = 0, lo = INT_MAX, hi = INT_MIN;
    for (const auto& beta : orbit.elements) {
      auto b = BTBoundary::point(KPoint::from_quadirr(beta));
      auto bs = BTBoundary::point(KPoint::from_quadirr(beta.conjugate()));
      if (b.pt->valuation_below(1) || bs.pt->valuation_below(1)) continue;
      // log of e^{-D} / |beta - beta*|^{1/log q}
      const int v = -*hamenstadt(b, bs) - line_distance(bt, a, as, b, bs);
      lo = std::min(lo, v), hi = std::max(hi, v), ++used;
    }
    const double ratio = used ? std::exp(hi - lo) : INFINITY;
    d = std::to_string(used) + " orbit points, max/min ratio " + fmt("%.4f", ratio);
    return used >= 50 && ratio <= 1.01;
  });

  criterion(12, "byte-identical reruns", [&](std::string& d) {
    auto lg = config("spiral_loglaw");
    lg.T = 100000;
    auto mb = config("measure_band");
    mb.d_max = 6;
    auto dp = config("dioph");
    dp.h_max = 5;
    dp.samples = 50;
    std::vector<cli::RunConfig> cfgs = {lg, config("spiral_khintchine"), config("approx_point"), dp,
                                        config("coset_count"), mb, config("bc_run"), config("geom_validate")};
    cfgs[1].T = 100000;
    cfgs[2].T = 100000;
    int same = 0;
    for (const auto& c : cfgs) same += cli::run(c).csv() == cli::run(c).csv();
    d = std::to_string(same) + "/" + std::to_string(cfgs.size()) + " commands reproduce";
    return same == static_cast<int>(cfgs.size());
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

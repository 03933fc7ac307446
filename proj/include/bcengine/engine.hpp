#pragma once

#include <optional>

#include "bcengine/instance.hpp"

namespace bcengine {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConditionResult {
  int number = 0;  // 1..7; 0 is the counting bound of the convergence half
  bool holds = true;
  std::string detail;
  std::optional<mpq_class> fitted_c;  // smallest constant making the inequality hold on the tables
};

struct HypothesisReport {
  std::vector<ConditionResult> conditions;  // numbers 0..7 in order
  mpq_class fitted_c;                       // max over the fitted constants, at least 1
  std::vector<std::string> warnings;

  const ConditionResult& cond(int k) const { return conditions.at(k); }
  // Card I_n <= c f1(n) together with (1), (5) upper half, which is what the convergence half uses.
  bool part_a() const;
  bool part_b() const;
  std::vector<int> failing() const;
  json to_json() const;
};

HypothesisReport check_hypotheses(const BCInstance& inst);

// Cylinders tagged with an owner; returns two owners whose cylinders overlap, if any.
using Tagged = std::vector<std::pair<Address, size_t>>;
std::optional<std::pair<size_t, size_t>> first_overlap(Tagged cyl);

inline constexpr size_t kCylinderBudget = 4'000'000;

// A_n = union of B_i(f3(n)) over I_n.
CylinderUnion level_set(const BCInstance& inst, int n, size_t budget = kCylinderBudget);
// mu(A_{n0} u ... u A_N).
mpq_class limsup_measure_truncated(const BCInstance& inst, int n0, int N, size_t budget = kCylinderBudget);
// tau(n0) = mu(A_{n0} u ... u A_N) for n0 = n_min .. N; the n0-intersection of these unions is
// the last one, so the vector is non-increasing.
std::vector<mpq_class> tail_masses(const BCInstance& inst, int N, size_t budget = kCylinderBudget);
// Partial sums S(N) of f1 f4 f5(f3) from n_min.
mpq_class series_partial(const BCInstance& inst, int N);

enum class VerdictKind { measure_zero, positive_measure, hypotheses_violated, inconclusive };
std::string to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  std::string detail;
  std::vector<int> failing;  // condition numbers, for hypotheses_violated
  std::string series;        // convergent, divergent, undecided
  double tail_ratio = 0;     // (S(N) - S(N/2)) / S(N/2)
  std::vector<mpq_class> tails;
  std::optional<double> qi_constant;      // c^8 c''^(log c / log c' + 1)
  std::optional<double> qi_measured;      // max mu(A_n n A_m) / (mu(A_n) mu(A_m)), n != m
  std::optional<double> kochen_stone;     // (sum mu(A_n))^2 / sum mu(A_n n A_m)
  json to_json() const;
};

Verdict verdict(const BCInstance& inst, const HypothesisReport& rep, size_t budget = kCylinderBudget);
Verdict verdict(const BCInstance& inst, size_t budget = kCylinderBudget);

}  // namespace bcengine

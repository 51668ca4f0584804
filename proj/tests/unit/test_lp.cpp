#include "contract/lp.hpp"
#include "contract/structures.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

#include <random>

using namespace contract;
using testing_support::Q;

TEST_CASE("solve_lp examples") {
  LpProblem fixed = box_problem(1);
  fixed.lo[0] = 1;
  LpSolution s = solve_lp(fixed);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.x[0] == 1);

  LpProblem two = box_problem(2);
  two.objective = {Rational(2), Rational(1)};
  add_row(two, {Rational(1), Rational(1)}, Relation::le, Q(3, 2));
  LpSolution t = solve_lp(two);
  REQUIRE(t.status == LpStatus::optimal);
  CHECK(t.x[0] == 1);
  CHECK(t.x[1] == Q(1, 2));
  CHECK(t.objective_value == Q(5, 2));
  CHECK(fractional_support(t) == std::vector<int>{1});

  LpProblem bad = box_problem(1);
  add_row(bad, {Rational(0)}, Relation::ge, Rational(1));
  CHECK(solve_lp(bad).status == LpStatus::infeasible);

  LpProblem unb;
  unb.objective = {Rational(1)};
  unb.lo = {Rational(0)};
  unb.hi = {std::nullopt};
  CHECK(solve_lp(unb).status == LpStatus::unbounded);
}

TEST_CASE("fractional_support examples") {
  LpSolution s;
  s.status = LpStatus::optimal;
  s.x = {Rational(1), Rational(0)};
  CHECK(fractional_support(s).empty());
  s.x = {Q(1, 2), Q(1, 2), Q(1, 2)};
  CHECK(fractional_support(s).size() == 3);
}

TEST_CASE("cutting planes on the triangle matching LP") {
  Graph k3{3, {{0, 1}, {1, 2}, {0, 2}}};
  LpProblem lp = box_problem(3);
  lp.objective = {Rational(1), Rational(1), Rational(1)};
  for (int v = 0; v < 3; ++v) {
    std::vector<Rational> row(3, Rational(0));
    for (int e = 0; e < 3; ++e) {
      if (k3.edges[e].first == v || k3.edges[e].second == v) row[e] = 1;
    }
    add_row(lp, row, Relation::le, Rational(1));
  }
  LpSolution plain = solve_lp(lp);
  CHECK(plain.objective_value == Q(3, 2));
  SeparationOracle sep = [&](const std::vector<Rational>& x) -> std::optional<LpRow> {
    auto cut = matching_separation(k3, x);
    if (!cut) return std::nullopt;
    std::vector<Rational> row(3, Rational(0));
    for (int e : cut->elements) row[e] = 1;
    return LpRow{row, Relation::le, cut->rhs};
  };
  LpSolution cut = solve_lp_with_separation(lp, sep, 100);
  CHECK(cut.objective_value == 1);
  CHECK(fractional_support(cut).empty());

  SeparationOracle nothing = [](const std::vector<Rational>&) -> std::optional<LpRow> { return std::nullopt; };
  CHECK(solve_lp_with_separation(lp, nothing, 10).objective_value == plain.objective_value);
}

TEST_CASE("uniform matroid separation adds the rank cut") {
  MatroidSpec m = uniform_matroid(3, 2);
  auto cut = matroid_separation(m, {Rational(1), Rational(1), Rational(1)});
  REQUIRE(cut);
  CHECK(cut->rhs == 2);
  CHECK(cut->elements.size() == 3);
}

TEST_CASE("property: random LPs return exact vertices") {
  std::mt19937_64 rng(11);
  auto draw = [&](int lo, int hi) { return Q(lo + static_cast<long>(rng() % (hi - lo + 1)), 4); };
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    int m = 1 + static_cast<int>(rng() % 4);
    LpProblem lp = box_problem(n);
    for (int i = 0; i < n; ++i) lp.objective[i] = draw(-8, 8);
    for (int r = 0; r < m; ++r) {
      std::vector<Rational> row(n);
      for (int i = 0; i < n; ++i) row[i] = draw(-4, 8);
      auto rel = static_cast<Relation>(rng() % 3 == 0 ? 1 : 0);
      add_row(lp, row, rel, draw(0, 12));
    }
    LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::optimal) continue;
    ++optimal;
    CHECK(satisfies(lp, s.x));
    CHECK(tight_rank(lp, s.x) == n);
    Rational value = 0;
    for (int i = 0; i < n; ++i) value += lp.objective[i] * s.x[i];
    CHECK(value == s.objective_value);
    // No 0/1 point beats the LP optimum.
    for (Mask pt = 0; pt < (Mask{1} << n); ++pt) {
      std::vector<Rational> x(n);
      for (int i = 0; i < n; ++i) x[i] = has(pt, i) ? 1 : 0;
      if (!satisfies(lp, x)) continue;
      Rational v = 0;
      for (int i = 0; i < n; ++i) v += lp.objective[i] * x[i];
      CHECK(v <= s.objective_value);
    }
  }
  CHECK(optimal > 100);
}

TEST_CASE("property: budget-row LPs have at most (rows) fractional entries") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 6;
    int d = 1 + static_cast<int>(rng() % 2);
    LpProblem lp = box_problem(n);
    for (int i = 0; i < n; ++i) lp.objective[i] = Q(static_cast<long>(rng() % 20) - 5, 7);
    for (int j = 0; j < d; ++j) {
      std::vector<Rational> row(n);
      for (int i = 0; i < n; ++i) row[i] = Q(1 + static_cast<long>(rng() % 9), 3);
      add_row(lp, row, Relation::le, Q(static_cast<long>(rng() % 20), 3));
    }
    std::vector<Rational> p(n);
    for (int i = 0; i < n; ++i) p[i] = Q(static_cast<long>(rng() % 9), 5);
    add_row(lp, p, Relation::ge, Q(static_cast<long>(rng() % 10), 5));
    LpSolution s = solve_lp(lp);
    if (s.status != LpStatus::optimal) continue;
    CHECK(static_cast<int>(fractional_support(s).size()) <= d + 1);
  }
}

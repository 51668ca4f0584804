#include "contract/bm_eptas.hpp"
#include "contract/budget_fptas.hpp"
#include "contract/instance_gen.hpp"
#include "contract/oracle.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

#include <cmath>
#include <random>

using namespace contract;
using namespace testing_support;

namespace {

// E1 under a free matroid (uniform rank 3) plus its budget.
Instance e1_free_matroid() {
  Instance inst = e1();
  inst.constraint.kind = ConstraintKind::budgeted_matroid;
  inst.constraint.matroid = uniform_matroid(3, 3);
  return inst;
}

Instance random_bm(int n, ConstraintKind kind, MatroidType type, std::uint64_t seed, int vertices = 6) {
  GenSpec spec;
  spec.n = n;
  spec.kind = kind;
  spec.matroid_type = type;
  spec.num_vertices = vertices;
  spec.seed = seed;
  return random_instance(spec);
}

// Definition check written against feasibility only: every feasible delta with |delta| <= psi and every
// a in (delta & cls) \ x must admit b in x \ delta with w_b <= w_a and delta - a + b feasible.
bool exchange_property(const Instance& inst, const ActionSet& cls, const ActionSet& x, int psi) {
  Mask k = to_mask(cls), xm = to_mask(x);
  int n = inst.n();
  for (Mask delta = 0; delta < (Mask{1} << n); ++delta) {
    if (popcount(delta) > psi || !is_feasible(inst, delta)) continue;
    for (int a = 0; a < n; ++a) {
      if (!has(delta, a) || !has(k, a) || has(xm, a)) continue;
      bool ok = false;
      for (int b = 0; b < n && !ok; ++b) {
        if (!has(xm, b) || has(delta, b)) continue;
        if (inst.actions[b].w[0] > inst.actions[a].w[0]) continue;
        ok = is_feasible(inst, (delta & ~(Mask{1} << a)) | (Mask{1} << b));
      }
      if (!ok) return false;
    }
  }
  return true;
}

bool has_flag(const SolutionReport& r, const std::string& f) {
  return std::find(r.flags.begin(), r.flags.end(), f) != r.flags.end();
}

}  // namespace

TEST_CASE("beta_q_bound examples") {
  CHECK(beta_q_bound(e1_free_matroid(), Q(1, 2)) == Q(3, 10));
  Instance lossy = e1_free_matroid();
  for (auto& a : lossy.actions) a.c = 1;
  CHECK(beta_q_bound(lossy, Q(1, 2)) == 0);
  Instance one = single_action("1", "0");
  one.constraint.kind = ConstraintKind::budgeted_matroid;
  one.constraint.matroid = uniform_matroid(1, 1);
  CHECK(beta_q_bound(one, Q(1, 2)) == Q(1, 2));
}

TEST_CASE("beta_p_grid examples") {
  CHECK(beta_p_grid(e1_free_matroid(), Q(1, 2)) == std::vector<Rational>{Q(3, 20), Q(3, 10), Q(3, 5)});
  CHECK(beta_p_grid(single_action("1", "0"), Q(1, 2)) == std::vector<Rational>{Q(1, 2)});
  CHECK(beta_p_grid(single_action("0", "0"), Q(1, 2)).empty());
}

TEST_CASE("property: beta_p_grid brackets the best-response principal utility") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_bm(6, ConstraintKind::budgeted_matroid, MatroidType::uniform, 12000 + trial);
    Rational alpha = Q(static_cast<long>(rng() % 20), 20);
    Rational up = principal_utility(inst, best_response(inst, alpha), alpha);
    if (up <= 0) continue;
    bool found = false;
    for (const Rational& b : beta_p_grid(inst, alpha)) found = found || (up / 2 <= b && b <= up);
    CHECK(found);
  }
}

TEST_CASE("class_levels and psi_value") {
  CHECK(class_levels(Q(1, 2)) == 2);
  CHECK(psi_value(Q(1, 2)) == 8);
  for (int k = 1; k < 50; ++k) {
    Rational eps = Q(k, 100);
    int levels = class_levels(eps);
    CHECK(Rational((levels + 1) * (levels + 1) - 1) <= 16 / (eps * eps * eps * eps));
    CHECK(pow(1 - eps, levels) <= eps / 2);
    CHECK(pow(1 - eps, levels - 1) > eps / 2);
  }
}

TEST_CASE("profit_classes examples") {
  Rational eps = Q(1, 2);
  Instance a = single_action("3/10", "0");
  ProfitClasses pc = profit_classes(a, Q(0), Q(1, 2), Q(0), eps);
  REQUIRE(pc.size() == 1);
  CHECK(pc.begin()->first == ClassIndex{2, 0});
  Instance small = single_action("1/10", "0");
  CHECK(profit_classes(small, Q(0), Q(1, 2), Q(0), eps).empty());
  Instance big = single_action("2", "0");
  long long flagged = 0;
  ProfitClasses top = profit_classes(big, Q(0), Q(1, 2), Q(0), eps, &flagged);
  REQUIRE(top.size() == 1);
  CHECK(top.begin()->first == ClassIndex{1, 0});
  CHECK(flagged == 1);
}

TEST_CASE("property: every non-residual action lies in exactly one class with exact interval membership") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_bm(8, ConstraintKind::budgeted_matroid, MatroidType::partition, 13000 + trial);
    Rational alpha = Q(static_cast<long>(rng() % 20), 20);
    Rational eps = Q(1 + static_cast<long>(rng() % 4), 10);
    Rational bp = Q(1 + static_cast<long>(rng() % 10), 10), bq = Q(1 + static_cast<long>(rng() % 10), 10);
    long long flagged = 0;
    ProfitClasses pc = profit_classes(inst, alpha, bp, bq, eps, &flagged);
    std::vector<int> seen(inst.n(), 0);
    for (const auto& [key, cls] : pc) {
      CHECK(!(key.first == 0 && key.second == 0));
      for (int i : cls) {
        ++seen[i];
        Rational ratio = (1 - alpha) * inst.actions[i].p / (2 * bp);
        if (key.first >= 1 && ratio <= 1) {
          CHECK(ratio <= pow(1 - eps, key.first - 1));
          CHECK(ratio > pow(1 - eps, key.first));
        }
        if (key.first == 0) CHECK(ratio <= pow(1 - eps, class_levels(eps)));
      }
    }
    for (int s : seen) CHECK(s <= 1);
  }
}

TEST_CASE("exchange_set examples") {
  Instance u = make_instance({"1", "1", "1", "1", "1"}, {"0", "0", "0", "0", "0"},
                             {{"1"}, {"2"}, {"3"}, {"4"}, {"5"}}, {"100"}, ConstraintKind::budgeted_matroid);
  u.constraint.matroid = uniform_matroid(5, 3);
  ActionSet cls = {0, 1, 2, 3, 4};
  CHECK(exchange_set(u, cls, ExchangeMode::greedy, 2) == cls);
  CHECK(exchange_set(u, cls, ExchangeMode::full_class, 2) == cls);
  CHECK(exchange_set(u, {3, 1}, ExchangeMode::greedy, 0) == ActionSet{1});
  CHECK(is_exchange_set(u, cls, cls, 2));
  CHECK_FALSE(is_exchange_set(u, cls, {}, 1));
}

TEST_CASE("property: greedy exchange sets satisfy the definition exhaustively") {
  std::mt19937_64 rng(103);
  int shrunk = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto kind = trial % 2 ? ConstraintKind::budgeted_matching : ConstraintKind::budgeted_matroid;
    Instance inst = random_bm(8, kind, static_cast<MatroidType>(trial % 3), 14000 + trial, 5);
    ActionSet cls;
    for (int i = 0; i < inst.n(); ++i) {
      if (rng() % 4 != 0) cls.push_back(i);
    }
    int psi = 1 + static_cast<int>(rng() % 3);
    ActionSet x = exchange_set(inst, cls, ExchangeMode::greedy, psi);
    if (x.size() < cls.size()) ++shrunk;
    for (int i : x) CHECK(std::find(cls.begin(), cls.end(), i) != cls.end());
    CHECK(exchange_property(inst, cls, x, psi));
    CHECK(exchange_property(inst, cls, exchange_set(inst, cls, ExchangeMode::full_class, psi), psi));
  }
  MESSAGE("greedy exchange sets smaller than their class: " << shrunk);
}

TEST_CASE("representative_set examples") {
  Instance e = e1_free_matroid();
  Rational eps = Q(1, 2);
  RepresentativeSet none = representative_set(e, Q(1, 2), Q(100), Q(100), eps);
  CHECK(none.t.empty());
  RepresentativeSet rep = representative_set(e, Q(1, 2), Q(3, 10), Q(3, 10), eps);
  Mask u = 0;
  for (const auto& [key, x] : rep.parts) u |= to_mask(x);
  CHECK(from_mask(u) == rep.t);
  CHECK(!rep.t.empty());
}

TEST_CASE("low_value_actions examples") {
  Instance mixed = make_instance({"0", "1"}, {"0", "0"}, {{"1"}, {"1"}}, {"2"});
  CHECK(low_value_actions(mixed, Q(1, 2), Q(1), Q(0), Q(1, 2)) == ActionSet{0});
  Instance one = single_action("3/5", "1/5");
  CHECK(low_value_actions(one, Q(1, 2), Q(1, 5), Q(1, 2), Q(1, 2)).empty());
  CHECK(low_value_actions(single_action("0", "0"), Q(1, 2), Q(0), Q(0), Q(1, 2)) == ActionSet{0});
}

TEST_CASE("fractional_matching_lp examples") {
  Instance m = make_instance({"1/10", "1/10"}, {"0", "0"}, {{"1/10"}, {"1/10"}}, {"1"},
                             ConstraintKind::budgeted_matching);
  m.constraint.graph = Graph{3, {{0, 1}, {1, 2}}};
  Rational eps = Q(1, 4), dsmall = Q(1);
  LpSolution cover = fractional_matching_lp(m, Q(1, 2), {1}, Q(0), Q(1), eps, dsmall);
  REQUIRE(cover.status == LpStatus::optimal);
  CHECK(cover.x[0] == 0);
  CHECK(cover.x[1] == 0);
  Instance single = make_instance({"1/10"}, {"0"}, {{"1/10"}}, {"1"}, ConstraintKind::budgeted_matching);
  single.constraint.graph = Graph{2, {{0, 1}}};
  LpSolution s = fractional_matching_lp(single, Q(1, 2), {}, Q(0), Q(1), eps, dsmall);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK((s.x[0] == 0 || s.x[0] == 1));
  CHECK(fractional_support(s).empty());
}

TEST_CASE("swap_round examples") {
  std::mt19937_64 rng(5);
  Graph path{4, {{0, 1}, {1, 2}, {2, 3}}};
  CHECK(swap_round({Q(1), Q(0), Q(1)}, path, Q(0), rng) == ActionSet{0, 2});
  CHECK(swap_round({Q(0), Q(0), Q(0)}, path, Q(0), rng).empty());
  Graph k3{3, {{0, 1}, {1, 2}, {0, 2}}};
  for (int t = 0; t < 50; ++t) {
    CHECK(is_matching(k3, swap_round({Q(1, 3), Q(1, 3), Q(1, 3)}, k3, Q(1, 10), rng)));
  }
  CHECK_THROWS(swap_round({Q(1), Q(1), Q(1)}, k3, Q(0), rng));
}

TEST_CASE("property: swap_round marginals within 5 sigma") {
  std::mt19937_64 rng(7);
  Graph g{4, {{0, 1}, {2, 3}, {1, 2}}};
  std::vector<Rational> x = {Q(1, 2), Q(1, 2), Q(1, 2)};
  Rational gamma = Q(1, 10);
  const int trials = 10000;
  std::vector<int> hits(3, 0);
  for (int t = 0; t < trials; ++t) {
    ActionSet m = swap_round(x, g, gamma, rng);
    CHECK(is_matching(g, m));
    for (int e : m) ++hits[e];
  }
  for (int e = 0; e < 3; ++e) {
    double mean = Rational((1 - gamma) * x[e]).get_d();
    double sigma = std::sqrt(mean * (1 - mean) / trials);
    CHECK(std::abs(hits[e] / static_cast<double>(trials) - mean) <= 5 * sigma);
  }
}

TEST_CASE("property: eptas_split composes to the requested eps") {
  for (int k = 1; k < 100; ++k) {
    Rational eps = Q(k, 100);
    EptasSplit s = eptas_split(eps);
    CHECK(s.local < Q(1, 2));
    Rational principal = (1 - s.threshold) * (1 - s.contract) * (1 - 8 * s.local);
    CHECK(principal >= 1 - eps);
    CHECK(1 - 12 * s.local >= 1 - eps);
    CHECK(s.threshold + 12 * s.local <= eps);
  }
}

TEST_CASE("bmic_local on single actions") {
  Rational eps = Q(1, 20);
  Instance m = single_action("1", "1/4");
  m.constraint.kind = ConstraintKind::budgeted_matroid;
  m.constraint.matroid = uniform_matroid(1, 1);
  CHECK(bmic_local(m, Q(1, 2), Q(1, 2), eps) == ActionSet{0});
  Instance g = single_action("1", "1/4");
  g.constraint.kind = ConstraintKind::budgeted_matching;
  g.constraint.graph = Graph{2, {{0, 1}}};
  CHECK(bmic_local(g, Q(1, 2), Q(1, 2), eps) == ActionSet{0});
  CHECK_THROWS_AS(bmic_local(e1(), Q(1, 2), Q(0), eps), IncompatibleError);
  CHECK_THROWS_AS(bmic_local(m, Q(1, 2), Q(0), Q(1, 2)), ParameterError);
}

TEST_CASE("property: bmic_local local guarantees on budgeted matroids") {
  std::mt19937_64 rng(107);
  Rational eps = Q(1, 20);
  for (int trial = 0; trial < 12; ++trial) {
    Instance inst = random_bm(8, ConstraintKind::budgeted_matroid, static_cast<MatroidType>(trial % 3), 15000 + trial);
    Rational alpha = Q(1 + static_cast<long>(rng() % 19), 20);
    ActionSet y = best_response(inst, alpha);
    Rational R = principal_utility(inst, y, alpha);
    EptasStats stats;
    ActionSet s = bmic_local(inst, alpha, R, eps, {}, &stats);
    CHECK(is_feasible(inst, s));
    CHECK(stats.fractional_violations == 0);
    CHECK(stats.max_fractional <= 4);
    CHECK(principal_utility(inst, s, alpha) >= (1 - 8 * eps) * R);
    CHECK(agent_utility(inst, s, alpha) >= (1 - 12 * eps) * agent_utility(inst, y, alpha));
  }
}

TEST_CASE("bm_solve examples") {
  Rational eps = Q(1, 2);
  Instance e = e1_free_matroid();
  SolutionReport r = bm_solve(e, eps);
  SolutionReport b = bsa_solve(e1(), eps);
  Rational opt = optimal_contract(e1()).value;
  CHECK(r.u_p >= (1 - eps) * opt);
  CHECK(b.u_p >= (1 - eps) * opt);
  CHECK(eps_ic_check(e, r.set, r.alpha, eps).ok);

  Instance rank = make_instance({"1", "3/5", "1/2"}, {"1/5", "1/10", "1/10"}, {{"1"}, {"1"}, {"1"}}, {"2"},
                                ConstraintKind::budgeted_matroid);
  rank.constraint.matroid = uniform_matroid(3, 1);
  SolutionReport rr = bm_solve(rank, eps);
  CHECK(rr.u_p >= (1 - eps) * optimal_contract(rank).value);
  CHECK(eps_ic_check(rank, rr.set, rr.alpha, eps).ok);

  Instance none = make_instance({"1/10"}, {"1/2"}, {{"1"}}, {"1"}, ConstraintKind::budgeted_matroid);
  none.constraint.matroid = uniform_matroid(1, 1);
  SolutionReport nr = bm_solve(none, eps);
  CHECK(nr.set.empty());
  CHECK(nr.alpha == 1);
  CHECK(has_flag(nr, "no-incentivizable-set"));
}

TEST_CASE("property: bm_solve on random budgeted matroids and matchings") {
  Rational eps = Q(1, 2);
  for (int trial = 0; trial < 8; ++trial) {
    auto kind = trial % 2 ? ConstraintKind::budgeted_matching : ConstraintKind::budgeted_matroid;
    Instance inst = random_bm(6, kind, MatroidType::uniform, 16000 + trial, 5);
    EptasOptions o;
    o.seed = 3 + trial;
    SolutionReport r = bm_solve(inst, eps, o);
    CHECK(is_feasible(inst, r.set));
    if (kind == ConstraintKind::budgeted_matroid) {
      CHECK(eps_ic_check(inst, r.set, r.alpha, eps).ok);
      CHECK(r.u_p >= (1 - eps) * optimal_contract(inst).value);
    }
  }
}

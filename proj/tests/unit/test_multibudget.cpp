#include "contract/instance_gen.hpp"
#include "contract/multibudget_ptas.hpp"
#include "contract/oracle.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

#include <random>

using namespace contract;
using namespace testing_support;

namespace {

Instance random_multibudget(int n, int d, std::uint64_t seed) {
  GenSpec spec;
  spec.n = n;
  spec.d = d;
  spec.kind = ConstraintKind::multibudget;
  spec.seed = seed;
  return random_instance(spec);
}

// The single-action instance with the weight row copied into two dimensions.
Instance single_action_d2() {
  Instance inst = make_instance({"1"}, {"1/4"}, {{"1", "1"}}, {"1", "1"}, ConstraintKind::multibudget);
  return inst;
}

}  // namespace

TEST_CASE("exclusion_sets examples") {
  Instance e = e1();
  Rational half = Q(1, 2);
  ExclusionSets none = exclusion_sets(e, half, {}, {});
  CHECK(none.e1.empty());
  CHECK(none.e2.empty());
  CHECK(exclusion_sets(e, half, {2}, {}).e1 == ActionSet{0, 1});
  CHECK(exclusion_sets(e, half, {}, {0}).e2.empty());
  CHECK(exclusion_sets(e, half, {}, {2}).e2 == ActionSet{0, 1});
}

TEST_CASE("mbsa_guess_size") {
  Instance inst = random_multibudget(6, 2, 1);
  CHECK(mbsa_guess_size(inst, Q(4, 5)) == 4);
  CHECK(mbsa_guess_size(inst, Q(1, 2)) == 6);
  MbsaOptions o;
  o.h_override = 1;
  CHECK(mbsa_guess_size(inst, Q(1, 2), o) == 1);
}

TEST_CASE("mbsa_local examples") {
  Rational half = Q(1, 2);
  CHECK(mbsa_local(single_action("1", "1/4"), half, Q(0), half) == ActionSet{0});
  CHECK(!mbsa_local(single_action("1", "1/4"), half, Q(3, 5), half));
  Instance e = e1();
  auto s = mbsa_local(e, half, Q(9, 20), half);
  REQUIRE(s);
  CHECK(is_feasible(e, *s));
  CHECK(principal_utility(e, *s, half) >= half * Q(9, 20));
  CHECK(eps_ic_check(e, *s, half, half).ok);
}

TEST_CASE("mbsa_solve examples") {
  Rational eps = Q(1, 2);
  Instance one = single_action_d2();
  SolutionReport r = mbsa_solve(one, eps);
  CHECK(r.u_p >= (1 - eps) * optimal_contract(one).value);
  CHECK(eps_ic_check(one, r.set, r.alpha, eps).ok);

  Instance blocked = make_instance({"1", "1/2"}, {"0", "0"}, {{"1", "1"}, {"1", "2"}}, {"0", "0"},
                                   ConstraintKind::multibudget);
  SolutionReport none = mbsa_solve(blocked, eps);
  CHECK(none.set.empty());
  CHECK(none.alpha == 1);
  CHECK(none.u_p == 0);

  Instance rnd = random_multibudget(6, 2, 17);
  Rational big = Q(4, 5);
  MbsaStats stats;
  SolutionReport rr = mbsa_solve(rnd, big, {}, &stats);
  CHECK(is_feasible(rnd, rr.set));
  CHECK(eps_ic_check(rnd, rr.set, rr.alpha, big).ok);
  CHECK(rr.u_p >= (1 - big) * optimal_contract(rnd).value);
  CHECK(stats.max_fractional <= stats.fractional_bound);
  CHECK(stats.fractional_bound == 3);
}

TEST_CASE("mbsa rejects other kinds and bad eps") {
  Instance m = rank_one_pair();
  CHECK_THROWS_AS(mbsa_solve(m, Q(1, 2)), IncompatibleError);
  CHECK_THROWS_AS(mbsa_solve(single_action_d2(), Q(0)), ParameterError);
  CHECK_THROWS_AS(mbsa_solve(single_action_d2(), Q(1)), ParameterError);
}

TEST_CASE("property: mbsa_local output is feasible and meets the threshold guarantee") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = random_multibudget(5, 1 + trial % 2, 10000 + trial);
    Rational alpha = Q(static_cast<long>(rng() % 21), 20);
    Rational eps = Q(1, 2);
    MbsaOptions o;
    o.h_override = 3;  // 2h >= n keeps the guarantee rigorous
    ActionSet y = best_response(inst, alpha);
    Rational R = principal_utility(inst, y, alpha);
    MbsaStats stats;
    auto s = mbsa_local(inst, alpha, R, eps, o, &stats);
    REQUIRE(s);
    CHECK(is_feasible(inst, *s));
    CHECK(stats.max_fractional <= inst.d() + 1);
    CHECK(principal_utility(inst, *s, alpha) >= (1 - eps) * R);
    CHECK(eps_ic_check(inst, *s, alpha, eps).ok);
  }
}

TEST_CASE("property: guess completeness recovers the best-response agent utility") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = random_multibudget(4, 2, 11000 + trial);
    Rational alpha = Q(static_cast<long>(rng() % 21), 20);
    MbsaOptions o;
    o.h_override = 2;
    ActionSet y = best_response(inst, alpha);
    REQUIRE(static_cast<int>(y.size()) <= 4);
    auto s = mbsa_local(inst, alpha, Q(0), Q(1, 2), o);
    REQUIRE(s);
    CHECK(agent_utility(inst, *s, alpha) == agent_utility(inst, y, alpha));
  }
}

#pragma once

#include "contract/model.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace contract {

constexpr int kDefaultOracleCap = 20;

// Oracle size cap; CONTRACT_ORACLE_CAP overrides the default.
int oracle_cap();

// Every feasible set with its reward and cost sums, in depth-first order starting at the empty set.
struct FeasibleFamily {
  std::vector<Mask> sets;
  std::vector<Rational> reward;
  std::vector<Rational> cost;
};

FeasibleFamily enumerate_feasible(const Instance& inst);

// True when the member list of a is lexicographically smaller than that of b.
bool lex_less(Mask a, Mask b);

struct OracleReport {
  ActionSet best_set;
  Rational value;
  long long all_candidates_examined = 0;
};

// Argmax u_a, then max u_p, then lexicographically smallest member list.
ActionSet best_response(const Instance& inst, const Rational& alpha);
Mask best_response_mask(const FeasibleFamily& family, const Rational& alpha);

struct ContractOptimum {
  Rational alpha;
  ActionSet set;
  Rational value;
  long long candidates = 0;
};

// Exact optimal linear contract; ties go to the smaller alpha.
ContractOptimum optimal_contract(const Instance& inst);
ContractOptimum optimal_contract(const Instance& inst, const FeasibleFamily& family);

// Candidate contracts: 0, 1 and the breakpoints of the upper envelope of alpha*p(S) - c(S) inside (0,1).
std::vector<Rational> envelope_breakpoints(const FeasibleFamily& family);

struct IcCheck {
  bool ok = false;
  std::optional<ActionSet> witness;
};

IcCheck eps_ic_check(const Instance& inst, const ActionSet& s, const Rational& alpha, const Rational& eps);

// Multi-agent optimum of g over feasible sets without agents having p = 0 < c.
ActionSet brute_g_max(const Instance& inst);

struct Floor {
  std::vector<Rational> coeffs;
  Rational bound;
};

// Argmax of sum objective over feasible S meeting every floor; ties to the lexicographically smallest set.
std::optional<ActionSet> brute_constrained_max(const Instance& inst, const std::vector<Rational>& objective,
                                               const std::vector<Floor>& floors);

// Exhaustive 0/1 knapsack; returns the optimal value and a lexicographically smallest optimal set.
std::pair<Rational, ActionSet> brute_knapsack(const std::vector<Rational>& values,
                                              const std::vector<Rational>& weights, const Rational& capacity);

}  // namespace contract

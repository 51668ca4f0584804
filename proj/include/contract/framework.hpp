#pragma once

#include "contract/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace contract {

// (instance, alpha, R, eps) -> set, or nullopt when no feasible set exists for the threshold.
using LocalThresholdSolver =
    std::function<std::optional<ActionSet>(const Instance&, const Rational&, const Rational&, const Rational&)>;

// (instance, alpha, eps) -> set.
using LocalContractSolver = std::function<ActionSet(const Instance&, const Rational&, const Rational&)>;

// Ascending grid (1-alpha) p_min (1+eps)^i, i = 0..ceil(log_{1+eps}(sum p / p_min)); empty when all p = 0.
std::vector<Rational> threshold_grid(const Instance& inst, const Rational& alpha, const Rational& eps);

ActionSet adaptive_threshold(const LocalThresholdSolver& local, const Instance& inst, const Rational& alpha,
                             const Rational& eps);

// Uses the exact oracle for the best response at alpha = 1.
std::vector<Rational> candidate_contracts(const Instance& inst, const Rational& eps);
// Same grid given u_a(S_1, 1).
std::vector<Rational> candidate_contracts(const Instance& inst, const Rational& eps, const Rational& ua_at_one);

struct GlobalOptions {
  // Upper bound on u_p(local(alpha), alpha) for outputs with u_a >= 0; defaults to (1-alpha) sum p.
  std::function<Rational(const Rational&)> principal_bound;
  // Evaluate contracts best-first by bound and stop once the bound drops strictly below the incumbent.
  bool prune = true;
  // Local eps; defaults to the candidate eps.
  std::optional<Rational> local_eps;
};

struct GlobalStats {
  long long candidates = 0;
  long long evaluated = 0;
};

// Runs local at every candidate contract and returns the argmax of u_p (ties to the smaller alpha).
// Returns (empty set, alpha = 1) flagged "no-incentivizable-set" when every local output is empty.
SolutionReport global_solve(const LocalContractSolver& local, const Instance& inst, const Rational& eps,
                            const GlobalOptions& options = {}, GlobalStats* stats = nullptr);

// max (1-alpha) p.x over budget rows, q.x >= 0 and the unit box.
Rational lp_principal_bound(const Instance& inst, const Rational& alpha);

// Fractional knapsack optimum (greedy by density); zero-weight items are always taken.
Rational fractional_knapsack(const std::vector<Rational>& values, const std::vector<Rational>& weights,
                             const Rational& capacity);

}  // namespace contract

#pragma once

#include "contract/model.hpp"

#include <vector>

namespace contract {

struct CompositeWeights {
  Rational delta;  // smallest nonzero |q_k - q_l|, 0 when undefined
  Rational big_delta;
  std::vector<Rational> w;  // (big_delta + 1) q_i + p_i
};

CompositeWeights composite_weights(const Instance& inst, const Rational& alpha);

// Exact best response under a matroid constraint (greedy on composite weights).
// Only actions with q > 0, or q = 0 and p > 0, enter the greedy.
ActionSet matroid_best_response(const Instance& inst, const Rational& alpha);

// 0, 1, and every pairwise or single-action indifference point strictly inside (0, 1), ascending.
std::vector<Rational> matroid_breakpoints(const Instance& inst);

SolutionReport matroid_opt_solve(const Instance& inst);

}  // namespace contract

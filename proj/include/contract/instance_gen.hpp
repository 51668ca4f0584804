#pragma once

#include "contract/model.hpp"

#include <cstdint>
#include <vector>

namespace contract {

struct GenSpec {
  int n = 6;
  int d = 1;
  ConstraintKind kind = ConstraintKind::budget;
  Mode mode = Mode::single_agent;
  MatroidType matroid_type = MatroidType::uniform;
  int denominator = 20;  // every drawn value is a multiple of 1/denominator
  Rational p_lo = 0, p_hi = 1;
  Rational c_lo = 0, c_hi = Rational(1, 2);
  Rational w_lo = Rational(1, 10), w_hi = 1;
  Rational budget_fraction = Rational(1, 2);  // W_j = fraction of the total weight on dimension j
  int num_vertices = 6;                       // graphic matroid and matching kinds
  int num_blocks = 2;                         // partition matroid
  std::uint64_t seed = 1;
};

// Deterministic for a fixed spec; retries until some action is feasible on its own.
Instance random_instance(const GenSpec& spec);

struct KnapsackItems {
  std::vector<Rational> values;
  std::vector<Rational> weights;
  Rational capacity;
};

// Items (p = v, c = 0) plus one action with p = 2K/(1-eps), c = p/2, w = 0, where K = sum v.
Instance knapsack_hardness_sa_principal(const KnapsackItems& items, const Rational& eps);

// Actions with p = v and c = v/2.
Instance knapsack_hardness_sa_agent(const KnapsackItems& items);

// Multi-agent instance with p = v and c = eps_prime * v / n.
Instance knapsack_hardness_ma(const KnapsackItems& items, const Rational& eps_prime);

}  // namespace contract

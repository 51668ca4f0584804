#pragma once

#include "contract/lp.hpp"
#include "contract/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace contract {

enum class ExchangeMode { full_class, greedy };

struct EptasOptions {
  ExchangeMode mode = ExchangeMode::full_class;
  int tail_k = 5;              // delta = eps^3 / (20 k) for low-profit edges
  std::uint64_t seed = 1;      // matching rounding
};

struct EptasStats {
  long long lp_solves = 0;
  int max_fractional = 0;       // over every matroid LP(D) basic solution
  long long fractional_violations = 0;
  long long d_guesses = 0;
  long long out_of_range = 0;   // actions routed to the top class
  long long rounding_calls = 0;
  long long budget_fallbacks = 0;
};

using ClassIndex = std::pair<int, int>;  // (r, t)
using ProfitClasses = std::map<ClassIndex, ActionSet>;

// u_a of the exact best response at alpha.
Rational beta_q_bound(const Instance& inst, const Rational& alpha);

// {(1-alpha) p_min 2^i : i = 0..ceil(log2(sum p / p_min))}, p_min over positive rewards; empty when all p = 0.
std::vector<Rational> beta_p_grid(const Instance& inst, const Rational& alpha);

// Number of non-residual levels per axis: ceil(log_{1-eps}(eps/2)).
int class_levels(const Rational& eps);

// Classes K_{r,t} for (r, t) != (0, 0). A zero beta makes that axis residual for every action.
// Ratios above 1 go to level 1 and are counted in out_of_range.
ProfitClasses profit_classes(const Instance& inst, const Rational& alpha, const Rational& beta_p,
                             const Rational& beta_q, const Rational& eps, long long* out_of_range = nullptr);

// 2 / eps^2.
Rational psi_value(const Rational& eps);

// Exchange set of one class; the greedy mode falls back to the class when the exchange check fails.
ActionSet exchange_set(const Instance& inst, const ActionSet& cls, ExchangeMode mode, int psi);

// Checks the exchange property of x within cls against every feasible delta with |delta| <= psi.
bool is_exchange_set(const Instance& inst, const ActionSet& cls, const ActionSet& x, int psi);

struct RepresentativeSet {
  ActionSet t;
  ProfitClasses parts;
};

RepresentativeSet representative_set(const Instance& inst, const Rational& alpha, const Rational& beta_p,
                                     const Rational& beta_q, const Rational& eps,
                                     ExchangeMode mode = ExchangeMode::full_class);

// {i : (1-alpha) p_i <= eps R and q_i <= 2 eps beta_q}.
ActionSet low_value_actions(const Instance& inst, const Rational& alpha, const Rational& beta_q, const Rational& R,
                            const Rational& eps);

ActionSet inner_matroid(const Instance& inst, const Rational& alpha, const ActionSet& t, const Rational& R,
                        const Rational& beta_q, const Rational& eps, EptasStats* stats = nullptr);

// LP(D, R) over low-profit edges not touching D. x is indexed by action.
LpSolution fractional_matching_lp(const Instance& inst, const Rational& alpha, const ActionSet& d, const Rational& R,
                                  const Rational& beta_q, const Rational& eps, const Rational& delta_small);

// Scales x by (1 - gamma), decomposes it into matchings and merges them at random.
ActionSet swap_round(const std::vector<Rational>& x, const Graph& graph, const Rational& gamma, std::mt19937_64& rng);

ActionSet inner_matching(const Instance& inst, const Rational& alpha, const ActionSet& t, const Rational& R,
                         const Rational& beta_q, const Rational& eps, std::mt19937_64& rng,
                         const EptasOptions& options = {}, EptasStats* stats = nullptr);

ActionSet bmic_local(const Instance& inst, const Rational& alpha, const Rational& R, const Rational& eps,
                     const EptasOptions& options = {}, EptasStats* stats = nullptr);

struct EptasSplit {
  Rational local;
  Rational threshold;
  Rational contract;
};

// eps/60 for the local phase, 2 eps/5 for thresholds and contracts.
EptasSplit eptas_split(const Rational& eps);

SolutionReport bm_solve(const Instance& inst, const Rational& eps, const EptasOptions& options = {},
                        EptasStats* stats = nullptr);

}  // namespace contract

#pragma once

#include "contract/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace contract {

// (1 - sum c_i/p_i) p(S); nullopt when some member has p = 0 < c. The empty set gives 0.
std::optional<Rational> g_value(const Instance& inst, Mask s);
std::optional<Rational> g_value(const Instance& inst, const ActionSet& s);

// alpha_i = c_i / p_i on S (0 when c_i = 0), 0 elsewhere. Throws InvalidSetError for p = 0 < c.
std::vector<Rational> per_agent_contracts(const Instance& inst, const ActionSet& s);

// Exact check of the per-agent equilibrium rows against every single-agent deviation.
bool equilibrium_holds(const Instance& inst, const ActionSet& s, const std::vector<Rational>& alpha_vec);

// (instance, b, k) -> candidate T_k, or nullopt when none exists.
using TkSolver = std::function<std::optional<ActionSet>(const Instance&, const Rational&, const Rational&)>;

struct MaStats {
  long long tk_calls = 0;
  long long lp_solves = 0;
  int max_fractional = 0;
  int fractional_bound = 0;
};

// Framework loop over b in {p_i} and k in multiples of delta b, with delta = eps / n.
ActionSet ma_framework(const Instance& inst, const Rational& eps, const TkSolver& tk_solver);

// Rounded size-capped problem for fixed (t, b, r): max l~(S) s.t. |S| <= t, p~(S) >= k, w(S) <= W.
// Only agents with p_i <= b and l_i <= r take part.
std::optional<ActionSet> bma_tk_dp(const Instance& inst, int t, const Rational& b, const Rational& r,
                                   const Rational& k, const Rational& delta);

std::optional<ActionSet> bma_tk(const Instance& inst, const Rational& b, const Rational& k, const Rational& eps);

std::optional<ActionSet> mbma_tk_lp(const Instance& inst, const Rational& b, const Rational& k, const Rational& eps,
                                    MaStats* stats = nullptr);

SolutionReport bma_solve(const Instance& inst, const Rational& eps);
SolutionReport mbma_solve(const Instance& inst, const Rational& eps, MaStats* stats = nullptr);

}  // namespace contract

#pragma once

#include "contract/rational.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace contract {

enum class Relation { le, ge, eq };

struct LpRow {
  std::vector<Rational> coeffs;
  Relation rel = Relation::le;
  Rational rhs;
};

// Maximize objective . x subject to rows and lo <= x <= hi (hi empty = unbounded above).
struct LpProblem {
  std::vector<Rational> objective;
  std::vector<LpRow> rows;
  std::vector<Rational> lo;
  std::vector<std::optional<Rational>> hi;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;
  Rational objective_value;
  std::vector<int> basis;  // structural variables in the final basis
  int pivots = 0;
};

// Problem with n variables boxed in [0, 1] and no rows.
LpProblem box_problem(int n);

void add_row(LpProblem& lp, std::vector<Rational> coeffs, Relation rel, Rational rhs);

// Bounded-variable primal simplex with Bland's rule, two phases, exact arithmetic.
LpSolution solve_lp(const LpProblem& problem);

// Indices with 0 < x_i < 1.
std::vector<int> fractional_support(const LpSolution& solution);

using SeparationOracle = std::function<std::optional<LpRow>(const std::vector<Rational>& x)>;

// Cutting-plane loop; throws SeparationDivergence after row_cap added rows.
LpSolution solve_lp_with_separation(const LpProblem& problem, const SeparationOracle& separation, int row_cap);

// Rank of the constraints (rows and bounds) tight at x; a vertex has rank = number of variables.
int tight_rank(const LpProblem& problem, const std::vector<Rational>& x);

// True when x satisfies every row and bound exactly.
bool satisfies(const LpProblem& problem, const std::vector<Rational>& x);

}  // namespace contract

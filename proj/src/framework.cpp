#include "contract/framework.hpp"

#include "contract/lp.hpp"
#include "contract/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace contract {

std::vector<Rational> threshold_grid(const Instance& inst, const Rational& alpha, const Rational& eps) {
  std::optional<Rational> p_min;
  Rational total = 0;
  for (const auto& a : inst.actions) {
    total += a.p;
    if (a.p > 0 && (!p_min || a.p < *p_min)) p_min = a.p;
  }
  std::vector<Rational> grid;
  if (!p_min) return grid;
  int i_max = ceil_log(1 + eps, total / *p_min);
  Rational value = (1 - alpha) * *p_min;
  for (int i = 0; i <= i_max; ++i) {
    grid.push_back(value);
    value *= 1 + eps;
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

ActionSet adaptive_threshold(const LocalThresholdSolver& local, const Instance& inst, const Rational& alpha,
                             const Rational& eps) {
  std::vector<Rational> grid = threshold_grid(inst, alpha, eps);
  // A missing R = 0 answer is read as the empty set.
  std::optional<ActionSet> y = local(inst, alpha, Rational(0), eps);
  Rational z0 = (1 - eps) * (y ? agent_utility(inst, *y, alpha) : Rational(0));
  ActionSet x;
  Rational x_up = 0;
  for (const Rational& r : grid) {
    std::optional<ActionSet> s = local(inst, alpha, r, eps);
    if (!s) continue;
    Rational up = principal_utility(inst, *s, alpha);
    if (agent_utility(inst, *s, alpha) >= z0 && up >= x_up) {
      x = *s;
      x_up = up;
    }
  }
  return x;
}

std::vector<Rational> candidate_contracts(const Instance& inst, const Rational& eps, const Rational& ua_at_one) {
  std::vector<Rational> out{0, 1};
  if (ua_at_one > 0) {
    int n = inst.n();
    Rational target = Rational(n) * pow(Rational(2), n);
    int k_max = ceil_log(1 / (1 - eps), target);
    for (const auto& a : inst.actions) {
      Rational base = ua_at_one / (a.c + ua_at_one);
      Rational factor = 1 - eps;
      for (int k = 0; k <= k_max; ++k) {
        out.push_back(1 - factor * base);
        factor *= 1 - eps;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Rational> candidate_contracts(const Instance& inst, const Rational& eps) {
  ActionSet s1 = best_response(inst, Rational(1));
  return candidate_contracts(inst, eps, agent_utility(inst, s1, Rational(1)));
}

SolutionReport global_solve(const LocalContractSolver& local, const Instance& inst, const Rational& eps,
                            const GlobalOptions& options, GlobalStats* stats) {
  std::vector<Rational> alphas = candidate_contracts(inst, eps);
  Rational local_eps = options.local_eps ? *options.local_eps : eps;
  Rational total_p = 0;
  for (const auto& a : inst.actions) total_p += a.p;
  std::vector<Rational> bound(alphas.size());
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    bound[k] = options.principal_bound ? options.principal_bound(alphas[k]) : (1 - alphas[k]) * total_p;
  }
  std::vector<std::size_t> order(alphas.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return bound[a] > bound[b]; });

  bool prune = options.prune;
  bool have_best = false;
  bool all_empty = true;
  std::size_t best_k = 0;
  ActionSet best_set;
  Rational best_up;
  long long evaluated = 0;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    std::size_t k = order[pos];
    if (prune && have_best && bound[k] < best_up) break;
    ActionSet s = local(inst, alphas[k], local_eps);
    ++evaluated;
    Mask m = checked_mask(inst, s);
    if (agent_utility(inst, m, alphas[k]) < 0) prune = false;
    if (!s.empty()) all_empty = false;
    Rational up = principal_utility(inst, m, alphas[k]);
    if (!have_best || up > best_up || (up == best_up && alphas[k] < alphas[best_k])) {
      have_best = true;
      best_k = k;
      best_set = s;
      best_up = up;
    }
  }
  if (stats) {
    stats->candidates = static_cast<long long>(alphas.size());
    stats->evaluated = evaluated;
  }
  SolutionReport report;
  report.eps = eps;
  if (all_empty) {
    report.alpha = 1;
    report.flags.push_back("no-incentivizable-set");
  } else {
    report.set = best_set;
    report.alpha = alphas[best_k];
  }
  fill_utilities(inst, report);
  return report;
}

Rational lp_principal_bound(const Instance& inst, const Rational& alpha) {
  int n = inst.n();
  if (alpha >= 1) return 0;
  LpProblem lp = box_problem(n);
  for (int i = 0; i < n; ++i) lp.objective[i] = (1 - alpha) * inst.actions[i].p;
  for (int j = 0; j < inst.d(); ++j) {
    std::vector<Rational> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) row[i] = inst.actions[i].w[j];
    add_row(lp, std::move(row), Relation::le, inst.budgets[j]);
  }
  std::vector<Rational> q(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) q[i] = action_q(inst.actions[i], alpha);
  add_row(lp, std::move(q), Relation::ge, Rational(0));
  LpSolution sol = solve_lp(lp);
  return sol.status == LpStatus::optimal ? sol.objective_value : Rational(0);
}

Rational fractional_knapsack(const std::vector<Rational>& values, const std::vector<Rational>& weights,
                             const Rational& capacity) {
  Rational total = 0;
  std::vector<int> heavy;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    if (values[i] <= 0) continue;
    if (weights[i] == 0) {
      total += values[i];
    } else {
      heavy.push_back(i);
    }
  }
  std::sort(heavy.begin(), heavy.end(),
            [&](int a, int b) { return values[a] * weights[b] > values[b] * weights[a]; });
  Rational room = capacity;
  for (int i : heavy) {
    if (room <= 0) break;
    if (weights[i] <= room) {
      total += values[i];
      room -= weights[i];
    } else {
      total += values[i] * room / weights[i];
      room = 0;
    }
  }
  return total;
}

}  // namespace contract

#include "contract/multibudget_ptas.hpp"

#include "contract/framework.hpp"
#include "contract/lp.hpp"
#include "contract/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <stdexcept>

namespace contract {

namespace {

void require_multibudget(const Instance& inst) {
  if (inst.constraint.kind != ConstraintKind::multibudget && inst.constraint.kind != ConstraintKind::budget) {
    throw IncompatibleError("multi-budget algorithm needs budget constraints");
  }
  if (inst.mode != Mode::single_agent) throw IncompatibleError("multi-budget algorithm is single-agent");
}

Mask e1_mask(const Instance& inst, Mask s1) {
  if (s1 == 0) return 0;
  Rational p_min;
  bool first = true;
  for (int i : from_mask(s1)) {
    if (first || inst.actions[i].p < p_min) p_min = inst.actions[i].p;
    first = false;
  }
  Mask out = 0;
  for (int i = 0; i < inst.n(); ++i) {
    if (!has(s1, i) && inst.actions[i].p > p_min) out |= Mask{1} << i;
  }
  return out;
}

Mask e2_mask(const std::vector<Rational>& q, Mask s2) {
  if (s2 == 0) return 0;
  Rational q_min;
  bool first = true;
  for (int i : from_mask(s2)) {
    if (first || q[i] < q_min) q_min = q[i];
    first = false;
  }
  Mask out = 0;
  for (int i = 0; i < static_cast<int>(q.size()); ++i) {
    if (!has(s2, i) && q[i] > q_min) out |= Mask{1} << i;
  }
  return out;
}

Mask integral_ones(const std::vector<Rational>& x) {
  Mask out = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 1) out |= Mask{1} << i;
  }
  return out;
}

// Local solver for one contract; caches LP work per guess pattern across thresholds.
class MbsaLocal {
 public:
  MbsaLocal(const Instance& inst, const Rational& alpha, const Rational& eps, int h, MbsaStats* stats)
      : inst_(inst), alpha_(alpha), eps_(eps), stats_(stats) {
    int n = inst.n();
    q_.resize(n);
    for (int i = 0; i < n; ++i) q_[i] = action_q(inst.actions[i], alpha);
    FeasibleFamily family = enumerate_feasible(inst);
    std::vector<Mask> small;
    for (Mask m : family.sets) {
      if (popcount(m) <= h) small.push_back(m);
    }
    std::vector<Mask> e1(small.size()), e2(small.size());
    for (std::size_t k = 0; k < small.size(); ++k) {
      e1[k] = e1_mask(inst, small[k]);
      e2[k] = e2_mask(q_, small[k]);
    }
    std::map<std::pair<Mask, Mask>, long long> last;
    long long pos = 0;
    for (std::size_t a = 0; a < small.size(); ++a) {
      for (std::size_t b = 0; b < small.size(); ++b) {
        Mask fixed_one = small[a] | small[b];
        if (!is_feasible(inst, fixed_one)) continue;
        Mask fixed_zero = (e1[a] | e2[b]) & ~fixed_one;
        last[{fixed_one, fixed_zero}] = pos++;
      }
    }
    std::vector<std::pair<long long, std::pair<Mask, Mask>>> order;
    for (const auto& [key, p] : last) order.emplace_back(p, key);
    std::sort(order.begin(), order.end());
    for (const auto& [p, key] : order) patterns_.push_back(Pattern{key.first, key.second});
  }

  std::optional<ActionSet> solve(const Rational& R) {
    bool found = false;
    Mask best = 0;
    Rational z;
    for (auto& pat : patterns_) {
      std::optional<Mask> t = rounded(pat, R);
      if (!t) continue;
      if (principal_utility(inst_, *t, alpha_) < (1 - eps_) * R) continue;
      Rational ua = agent_utility(inst_, *t, alpha_);
      if (!found || ua >= z) {
        found = true;
        z = ua;
        best = *t;
      }
    }
    if (!found) return std::nullopt;
    return from_mask(best);
  }

 private:
  struct Pattern {
    Mask fixed_one;
    Mask fixed_zero;
    bool prepared = false;
    bool has_free = false;
    Mask base_set = 0;     // integral part of the solution without the threshold row
    Rational base_value;   // (1-alpha) p.x of that solution
    Rational max_value;    // largest reachable (1-alpha) p.x
    std::map<Rational, std::optional<Mask>> by_threshold;
  };

  LpProblem build(const Pattern& pat) const {
    int n = inst_.n();
    LpProblem lp = box_problem(n);
    for (int i = 0; i < n; ++i) {
      lp.objective[i] = q_[i];
      if (has(pat.fixed_one, i)) lp.lo[i] = 1;
      if (has(pat.fixed_zero, i)) lp.hi[i] = Rational(0);
    }
    for (int j = 0; j < inst_.d(); ++j) {
      std::vector<Rational> row(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) row[i] = inst_.actions[i].w[j];
      add_row(lp, std::move(row), Relation::le, inst_.budgets[j]);
    }
    return lp;
  }

  std::vector<Rational> principal_row() const {
    std::vector<Rational> row(static_cast<std::size_t>(inst_.n()));
    for (int i = 0; i < inst_.n(); ++i) row[i] = (1 - alpha_) * inst_.actions[i].p;
    return row;
  }

  Rational principal_value(const std::vector<Rational>& x) const {
    Rational v = 0;
    for (int i = 0; i < inst_.n(); ++i) v += x[i] * inst_.actions[i].p;
    return (1 - alpha_) * v;
  }

  void record(const LpSolution& sol) const {
    int frac = static_cast<int>(fractional_support(sol).size());
    int bound = inst_.d() + 1;
    if (stats_) {
      ++stats_->lp_solves;
      stats_->max_fractional = std::max(stats_->max_fractional, frac);
      stats_->fractional_bound = bound;
    }
    if (frac > bound) throw std::logic_error("basic solution has more than d + 1 fractional entries");
  }

  void prepare(Pattern& pat) const {
    pat.prepared = true;
    Mask all = inst_.n() == 64 ? ~Mask{0} : (Mask{1} << inst_.n()) - 1;
    pat.has_free = ((pat.fixed_one | pat.fixed_zero) & all) != all;
    if (!pat.has_free) return;
    LpProblem lp = build(pat);
    LpSolution base = solve_lp(lp);
    if (base.status != LpStatus::optimal) throw std::logic_error("guess LP infeasible despite a feasible guess");
    record(base);
    pat.base_set = integral_ones(base.x);
    pat.base_value = principal_value(base.x);
    lp.objective = principal_row();
    LpSolution top = solve_lp(lp);
    pat.max_value = top.objective_value;
  }

  std::optional<Mask> rounded(Pattern& pat, const Rational& R) const {
    if (!pat.prepared) prepare(pat);
    if (!pat.has_free) {
      if ((1 - alpha_) * reward_sum(inst_, pat.fixed_one) < R) return std::nullopt;
      return pat.fixed_one;
    }
    if (R <= pat.base_value) return pat.base_set;
    if (R > pat.max_value) return std::nullopt;
    auto it = pat.by_threshold.find(R);
    if (it != pat.by_threshold.end()) return it->second;
    LpProblem lp = build(pat);
    add_row(lp, principal_row(), Relation::ge, R);
    LpSolution sol = solve_lp(lp);
    std::optional<Mask> out;
    if (sol.status == LpStatus::optimal) {
      record(sol);
      out = integral_ones(sol.x);
    }
    pat.by_threshold.emplace(R, out);
    return out;
  }

  const Instance& inst_;
  Rational alpha_;
  Rational eps_;
  MbsaStats* stats_;
  std::vector<Rational> q_;
  std::vector<Pattern> patterns_;
};

}  // namespace

ExclusionSets exclusion_sets(const Instance& inst, const Rational& alpha, const ActionSet& s1, const ActionSet& s2) {
  std::vector<Rational> q(static_cast<std::size_t>(inst.n()));
  for (int i = 0; i < inst.n(); ++i) q[i] = action_q(inst.actions[i], alpha);
  return ExclusionSets{from_mask(e1_mask(inst, checked_mask(inst, s1))), from_mask(e2_mask(q, checked_mask(inst, s2)))};
}

int mbsa_guess_size(const Instance& inst, const Rational& eps, const MbsaOptions& options) {
  if (options.h_override) {
    if (*options.h_override < 0) throw ParameterError("h override must be >= 0");
    return *options.h_override;
  }
  return static_cast<int>(ceil_of(Rational(inst.d() + 1) / eps).get_si());
}

std::optional<ActionSet> mbsa_local(const Instance& inst, const Rational& alpha, const Rational& R, const Rational& eps,
                                    const MbsaOptions& options, MbsaStats* stats) {
  require_multibudget(inst);
  if (eps <= 0 || eps >= 1) throw ParameterError("eps must lie in (0, 1)");
  MbsaLocal local(inst, alpha, eps, mbsa_guess_size(inst, eps, options), stats);
  return local.solve(R);
}

SolutionReport mbsa_solve(const Instance& inst, const Rational& eps, const MbsaOptions& options, MbsaStats* stats) {
  auto start = std::chrono::steady_clock::now();
  require_multibudget(inst);
  if (eps <= 0 || eps >= 1) throw ParameterError("eps must lie in (0, 1)");
  Rational third = eps / 3;
  int h = mbsa_guess_size(inst, third, options);
  GlobalOptions go;
  go.local_eps = third;
  go.principal_bound = [&inst](const Rational& alpha) { return lp_principal_bound(inst, alpha); };
  LocalContractSolver local = [&](const Instance& in, const Rational& alpha, const Rational& e) {
    MbsaLocal solver(in, alpha, e, h, stats);
    LocalThresholdSolver threshold = [&solver](const Instance&, const Rational&, const Rational& R, const Rational&) {
      return solver.solve(R);
    };
    return adaptive_threshold(threshold, in, alpha, e);
  };
  SolutionReport report = global_solve(local, inst, third, go);
  report.eps = eps;
  report.algorithm = "mbsa-ptas";
  if (options.h_override) report.flags.push_back("h-override");
  report.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace contract

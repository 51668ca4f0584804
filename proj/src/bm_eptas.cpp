#include "contract/bm_eptas.hpp"

#include "contract/framework.hpp"
#include "contract/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace contract {

namespace {

constexpr int kCutRowCap = 2000;

void require_bm(const Instance& inst) {
  auto kind = inst.constraint.kind;
  if (kind != ConstraintKind::budgeted_matroid && kind != ConstraintKind::budgeted_matching) {
    throw IncompatibleError("EPTAS needs a budgeted matroid or budgeted matching constraint");
  }
  if (inst.d() != 1) throw IncompatibleError("EPTAS needs exactly one budget");
  if (inst.mode != Mode::single_agent) throw IncompatibleError("EPTAS is single-agent");
}

void require_local_eps(const Rational& eps) {
  if (eps <= 0 || eps >= Rational(1, 2)) throw ParameterError("local eps must lie in (0, 1/2)");
}

Mask all_mask(int n) { return n == 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

// (1-eps)^k for k = 0..levels, cached per eps.
const std::vector<Rational>& level_powers(const Rational& eps) {
  static std::map<Rational, std::vector<Rational>> cache;
  static std::mutex guard;
  std::lock_guard<std::mutex> lock(guard);
  auto it = cache.find(eps);
  if (it != cache.end()) return it->second;
  int levels = class_levels(eps);
  std::vector<Rational> pw(static_cast<std::size_t>(levels) + 1);
  pw[0] = 1;
  for (int k = 1; k <= levels; ++k) pw[k] = pw[k - 1] * (1 - eps);
  return cache.emplace(eps, std::move(pw)).first->second;
}

// Level r >= 1 with (1-eps)^r < ratio <= (1-eps)^(r-1), or 0 when ratio is at most (1-eps)^levels.
int level_of(const std::vector<Rational>& pw, const Rational& ratio, bool& out_of_range) {
  int levels = static_cast<int>(pw.size()) - 1;
  if (ratio <= 0 || levels == 0 || ratio <= pw[levels]) return 0;
  if (ratio > 1) {
    out_of_range = true;
    return 1;
  }
  int lo = 1, hi = levels;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (pw[mid] < ratio) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

bool structure_ok(const Instance& inst, Mask s) {
  if (has_matroid(inst.constraint.kind)) return is_independent(inst.constraint.matroid, s);
  if (has_matching(inst.constraint.kind)) return is_matching(inst.constraint.graph, s);
  return true;
}

LpRow cut_row(int n, const Cut& cut) {
  LpRow row;
  row.coeffs.assign(static_cast<std::size_t>(n), Rational(0));
  for (int e : cut.elements) row.coeffs[e] = 1;
  row.rel = Relation::le;
  row.rhs = cut.rhs;
  return row;
}

// Depth-first over subsets of t (in order) that are feasible and have at most max_size members.
void for_each_guess(const Instance& inst, const ActionSet& t, int max_size, const std::function<void(Mask)>& f) {
  std::function<void(std::size_t, Mask, int)> visit = [&](std::size_t pos, Mask m, int size) {
    f(m);
    if (size == max_size) return;
    for (std::size_t j = pos; j < t.size(); ++j) {
      Mask next = m | (Mask{1} << t[j]);
      if (is_feasible(inst, next)) visit(j + 1, next, size + 1);
    }
  };
  visit(0, 0, 0);
}

int guess_cap(const Rational& eps) { return static_cast<int>(floor_of(2 / eps).get_si()); }

Mask integral_ones(const std::vector<Rational>& x) {
  Mask out = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 1) out |= Mask{1} << i;
  }
  return out;
}

// K for one guess D under a matroid constraint; nullopt when LP(D) is infeasible.
std::optional<Mask> matroid_guess(const Instance& inst, const Rational& alpha, Mask d, Mask low, const Rational& R,
                                  const Rational& eps, EptasStats* stats) {
  int n = inst.n();
  Mask vars = low & ~d;
  Rational need = (1 - 4 * eps) * R - principal_utility(inst, d, alpha);
  Rational room = inst.budgets[0];
  for (int i : from_mask(d)) room -= inst.actions[i].w[0];
  if (vars == 0) {
    if (need > 0) return std::nullopt;
    return d;
  }
  LpProblem lp = box_problem(n);
  std::vector<Rational> prow(static_cast<std::size_t>(n)), wrow(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!has(vars, i)) {
      lp.hi[i] = Rational(0);
      continue;
    }
    lp.objective[i] = action_q(inst.actions[i], alpha);
    prow[i] = (1 - alpha) * inst.actions[i].p;
    wrow[i] = inst.actions[i].w[0];
  }
  add_row(lp, std::move(prow), Relation::ge, need);
  add_row(lp, std::move(wrow), Relation::le, room);
  MatroidSpec md = without_elements(restrict_after_fixing(inst.constraint.matroid, d), all_mask(n) & ~vars);
  SeparationOracle sep = [&](const std::vector<Rational>& x) -> std::optional<LpRow> {
    auto cut = matroid_separation(md, x);
    if (!cut) return std::nullopt;
    return cut_row(n, *cut);
  };
  LpSolution sol = solve_lp_with_separation(lp, sep, kCutRowCap);
  if (sol.status != LpStatus::optimal) return std::nullopt;
  int frac = static_cast<int>(fractional_support(sol).size());
  if (stats) {
    ++stats->lp_solves;
    stats->max_fractional = std::max(stats->max_fractional, frac);
    if (frac > 4) ++stats->fractional_violations;
  }
  return integral_ones(sol.x) | d;
}

Rational delta_small(const Rational& eps, int tail_k) {
  if (tail_k < 1) throw ParameterError("tail constant must be >= 1");
  return eps * eps * eps / (20 * tail_k);
}

Rational uniform_unit(std::mt19937_64& rng) {
  Integer num;
  std::uint64_t u = rng();
  mpz_import(num.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
  Integer den = 1;
  den <<= 64;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

// Every matching inside the support, as masks.
std::vector<Mask> matchings_within(const Graph& g, Mask support) {
  std::vector<Mask> out;
  ActionSet edges = from_mask(support);
  std::function<void(std::size_t, Mask)> visit = [&](std::size_t pos, Mask m) {
    out.push_back(m);
    for (std::size_t j = pos; j < edges.size(); ++j) {
      Mask next = m | (Mask{1} << edges[j]);
      if (is_matching(g, next)) visit(j + 1, next);
    }
  };
  visit(0, 0);
  return out;
}

// Keeps the component of a xor b through each vertex from a with probability pa / (pa + pb), else from b.
Mask merge_matchings(const Graph& g, Mask a, Mask b, const Rational& pa, const Rational& pb, std::mt19937_64& rng) {
  Mask diff = a ^ b;
  Mask out = a & b;
  Rational keep_a = pa / (pa + pb);
  while (diff != 0) {
    int start = __builtin_ctzll(diff);
    Mask comp = 0;
    std::vector<int> stack{start};
    comp |= Mask{1} << start;
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      for (int f : from_mask(diff & ~comp)) {
        const auto& ee = g.edges[e];
        const auto& ff = g.edges[f];
        bool touch = ee.first == ff.first || ee.first == ff.second || ee.second == ff.first || ee.second == ff.second;
        if (touch) {
          comp |= Mask{1} << f;
          stack.push_back(f);
        }
      }
    }
    diff &= ~comp;
    out |= uniform_unit(rng) < keep_a ? (comp & a) : (comp & b);
  }
  return out;
}

// Per-contract state shared by every threshold.
class BmLocal {
 public:
  BmLocal(const Instance& inst, const Rational& alpha, const Rational& eps, const EptasOptions& options,
          EptasStats* stats, std::mt19937_64& rng)
      : inst_(inst), alpha_(alpha), eps_(eps), options_(options), stats_(stats), rng_(rng) {
    beta_q_ = beta_q_bound(inst, alpha);
    for (const Rational& bp : beta_p_grid(inst, alpha)) {
      reps_.push_back(representative_set(inst, alpha, bp, beta_q_, eps, options.mode).t);
      long long flagged = 0;
      profit_classes(inst, alpha, bp, beta_q_, eps, &flagged);
      if (stats_) stats_->out_of_range += flagged;
    }
    int top = static_cast<int>(ceil_of(1 / eps).get_si());
    Rational factor = 1;
    for (int i = 0; i <= top; ++i) {
      filters_.push_back(2 * beta_q_ * factor);
      factor *= 1 - 12 * eps;
    }
  }

  ActionSet solve(const Rational& R) {
    Mask low = to_mask(low_value_actions(inst_, alpha_, beta_q_, R, eps_));
    std::map<Mask, std::optional<Mask>> matroid_cache;
    std::map<Mask, std::optional<LpSolution>> matching_cache;
    std::vector<Mask> best(filters_.size(), 0);
    std::vector<Rational> best_up(filters_.size(), Rational(0));
    for (const ActionSet& t : reps_) {
      Mask s = inner(t, R, low, matroid_cache, matching_cache);
      if (!is_feasible(inst_, s)) continue;
      Rational ua = agent_utility(inst_, s, alpha_);
      Rational up = principal_utility(inst_, s, alpha_);
      for (std::size_t i = 0; i < filters_.size(); ++i) {
        if (ua >= filters_[i] && up >= best_up[i]) {
          best[i] = s;
          best_up[i] = up;
        }
      }
    }
    std::size_t j = 0;
    Rational j_ua = agent_utility(inst_, best[0], alpha_);
    for (std::size_t i = 1; i < best.size(); ++i) {
      Rational ua = agent_utility(inst_, best[i], alpha_);
      if (ua > j_ua) {
        j = i;
        j_ua = ua;
      }
    }
    return from_mask(best[j]);
  }

 private:
  Mask inner(const ActionSet& t, const Rational& R, Mask low, std::map<Mask, std::optional<Mask>>& matroid_cache,
             std::map<Mask, std::optional<LpSolution>>& matching_cache) {
    Mask best = 0;
    Rational best_ua = 0;
    bool matroid = has_matroid(inst_.constraint.kind);
    Rational dsmall = delta_small(eps_, options_.tail_k);
    for_each_guess(inst_, t, guess_cap(eps_), [&](Mask d) {
      if (stats_) ++stats_->d_guesses;
      std::optional<Mask> k;
      if (matroid) {
        auto it = matroid_cache.find(d);
        if (it == matroid_cache.end()) {
          it = matroid_cache.emplace(d, matroid_guess(inst_, alpha_, d, low, R, eps_, stats_)).first;
        }
        k = it->second;
      } else {
        auto it = matching_cache.find(d);
        if (it == matching_cache.end()) {
          LpSolution sol = fractional_matching_lp(inst_, alpha_, from_mask(d), R, beta_q_, eps_, dsmall);
          std::optional<LpSolution> entry;
          if (sol.status == LpStatus::optimal) entry = std::move(sol);
          it = matching_cache.emplace(d, std::move(entry)).first;
        }
        if (it->second) k = round_matching(*it->second, d);
      }
      if (!k) return;
      Rational ua = agent_utility(inst_, *k, alpha_);
      if (best_ua < ua) {
        best = *k;
        best_ua = ua;
      }
    });
    return best;
  }

  Mask round_matching(const LpSolution& sol, Mask d) {
    Mask m = 0;
    bool any = std::any_of(sol.x.begin(), sol.x.end(), [](const Rational& v) { return v > 0; });
    if (any) {
      if (stats_) ++stats_->rounding_calls;
      m = to_mask(swap_round(sol.x, inst_.constraint.graph, eps_, rng_));
    }
    Mask k = m | d;
    if (!fits_budgets(inst_, k)) {
      if (stats_) ++stats_->budget_fallbacks;
      return 0;
    }
    return k;
  }

  const Instance& inst_;
  Rational alpha_;
  Rational eps_;
  EptasOptions options_;
  EptasStats* stats_;
  std::mt19937_64& rng_;
  Rational beta_q_;
  std::vector<ActionSet> reps_;
  std::vector<Rational> filters_;
};

}  // namespace

Rational beta_q_bound(const Instance& inst, const Rational& alpha) {
  return agent_utility(inst, best_response(inst, alpha), alpha);
}

std::vector<Rational> beta_p_grid(const Instance& inst, const Rational& alpha) {
  std::optional<Rational> p_min;
  Rational total = 0;
  for (const auto& a : inst.actions) {
    total += a.p;
    if (a.p > 0 && (!p_min || a.p < *p_min)) p_min = a.p;
  }
  std::vector<Rational> grid;
  if (!p_min) return grid;
  int top = ceil_log(Rational(2), total / *p_min);
  Rational value = (1 - alpha) * *p_min;
  for (int i = 0; i <= top; ++i) {
    grid.push_back(value);
    value *= 2;
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

int class_levels(const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw ParameterError("eps must lie in (0, 1)");
  return ceil_log_below(1 - eps, eps / 2);
}

ProfitClasses profit_classes(const Instance& inst, const Rational& alpha, const Rational& beta_p,
                             const Rational& beta_q, const Rational& eps, long long* out_of_range) {
  const auto& pw = level_powers(eps);
  ProfitClasses classes;
  for (int i = 0; i < inst.n(); ++i) {
    const Action& a = inst.actions[i];
    bool flagged = false;
    int r = beta_p > 0 ? level_of(pw, (1 - alpha) * a.p / (2 * beta_p), flagged) : 0;
    int t = beta_q > 0 ? level_of(pw, action_q(a, alpha) / (2 * beta_q), flagged) : 0;
    if (flagged && out_of_range) ++*out_of_range;
    if (r == 0 && t == 0) continue;
    classes[{r, t}].push_back(i);
  }
  return classes;
}

Rational psi_value(const Rational& eps) { return 2 / (eps * eps); }

bool is_exchange_set(const Instance& inst, const ActionSet& cls, const ActionSet& x, int psi) {
  Mask k = to_mask(cls);
  Mask xm = to_mask(x);
  FeasibleFamily family = enumerate_feasible(inst);
  for (Mask delta : family.sets) {
    if (popcount(delta) > psi) continue;
    for (int a : from_mask(delta & k & ~xm)) {
      bool ok = false;
      for (int b : from_mask(xm & ~delta)) {
        if (inst.actions[b].w[0] > inst.actions[a].w[0]) continue;
        if (is_feasible(inst, (delta & ~(Mask{1} << a)) | (Mask{1} << b))) {
          ok = true;
          break;
        }
      }
      if (!ok) return false;
    }
  }
  return true;
}

ActionSet exchange_set(const Instance& inst, const ActionSet& cls, ExchangeMode mode, int psi) {
  if (mode == ExchangeMode::full_class) return cls;
  std::size_t cap = 2 * static_cast<std::size_t>(std::max(psi, 0)) + 1;
  if (cls.size() <= cap) return cls;
  ActionSet order = cls;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (inst.actions[a].w[0] != inst.actions[b].w[0]) return inst.actions[a].w[0] < inst.actions[b].w[0];
    return a < b;
  });
  Mask x = 0;
  for (int e : order) {
    if (static_cast<std::size_t>(popcount(x)) >= cap) break;
    if (structure_ok(inst, x | (Mask{1} << e))) x |= Mask{1} << e;
  }
  ActionSet out = from_mask(x);
  try {
    if (is_exchange_set(inst, cls, out, psi)) return out;
  } catch (const ScaleError&) {
  }
  return cls;
}

RepresentativeSet representative_set(const Instance& inst, const Rational& alpha, const Rational& beta_p,
                                     const Rational& beta_q, const Rational& eps, ExchangeMode mode) {
  RepresentativeSet rep;
  int levels = class_levels(eps);
  Rational sigma_size = Rational((levels + 1) * (levels + 1) - 1);
  if (sigma_size > 16 / (eps * eps * eps * eps)) throw std::logic_error("class count exceeds 16 eps^-4");
  int psi = static_cast<int>(floor_of(psi_value(eps)).get_si());
  Mask t = 0;
  for (const auto& [key, cls] : profit_classes(inst, alpha, beta_p, beta_q, eps)) {
    ActionSet x = exchange_set(inst, cls, mode, psi);
    rep.parts[key] = x;
    t |= to_mask(x);
  }
  rep.t = from_mask(t);
  return rep;
}

ActionSet low_value_actions(const Instance& inst, const Rational& alpha, const Rational& beta_q, const Rational& R,
                            const Rational& eps) {
  ActionSet out;
  for (int i = 0; i < inst.n(); ++i) {
    const Action& a = inst.actions[i];
    if ((1 - alpha) * a.p <= eps * R && action_q(a, alpha) <= 2 * eps * beta_q) out.push_back(i);
  }
  return out;
}

ActionSet inner_matroid(const Instance& inst, const Rational& alpha, const ActionSet& t, const Rational& R,
                        const Rational& beta_q, const Rational& eps, EptasStats* stats) {
  require_bm(inst);
  if (!has_matroid(inst.constraint.kind)) throw IncompatibleError("inner_matroid needs a matroid constraint");
  require_local_eps(eps);
  Mask low = to_mask(low_value_actions(inst, alpha, beta_q, R, eps));
  Mask best = 0;
  Rational best_ua = 0;
  for_each_guess(inst, t, guess_cap(eps), [&](Mask d) {
    if (stats) ++stats->d_guesses;
    auto k = matroid_guess(inst, alpha, d, low, R, eps, stats);
    if (!k) return;
    Rational ua = agent_utility(inst, *k, alpha);
    if (best_ua < ua) {
      best = *k;
      best_ua = ua;
    }
  });
  return from_mask(best);
}

LpSolution fractional_matching_lp(const Instance& inst, const Rational& alpha, const ActionSet& d, const Rational& R,
                                  const Rational& beta_q, const Rational& eps, const Rational& delta_small) {
  if (!has_matching(inst.constraint.kind)) throw IncompatibleError("matching LP needs a matching constraint");
  const Graph& g = inst.constraint.graph;
  if (g.num_vertices > kMatchingVertexCap) throw ScaleError("matching LP limited to 16 vertices");
  int n = inst.n();
  Mask dm = checked_mask(inst, d);
  std::vector<char> blocked(static_cast<std::size_t>(g.num_vertices), 0);
  for (int e : d) {
    blocked[g.edges[e].first] = 1;
    blocked[g.edges[e].second] = 1;
  }
  Rational budget = inst.d() > 0 ? inst.budgets[0] : Rational(0);
  Mask vars = 0;
  for (int e = 0; e < n; ++e) {
    if (has(dm, e) || blocked[g.edges[e].first] || blocked[g.edges[e].second]) continue;
    const Action& a = inst.actions[e];
    bool low = (1 - alpha) * a.p <= delta_small * R && action_q(a, alpha) <= 2 * delta_small * beta_q;
    if (inst.d() > 0) low = low && a.w[0] <= delta_small * budget;
    if (low) vars |= Mask{1} << e;
  }
  Rational need = (1 - 4 * eps) * R - principal_utility(inst, dm, alpha);
  Rational room = budget;
  if (inst.d() > 0) {
    for (int e : d) room -= inst.actions[e].w[0];
  }
  if (vars == 0) {
    LpSolution sol;
    sol.x.assign(static_cast<std::size_t>(n), Rational(0));
    sol.status = need > 0 || room < 0 ? LpStatus::infeasible : LpStatus::optimal;
    return sol;
  }
  LpProblem lp = box_problem(n);
  std::vector<Rational> prow(static_cast<std::size_t>(n)), wrow(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) {
    if (!has(vars, e)) {
      lp.hi[e] = Rational(0);
      continue;
    }
    lp.objective[e] = action_q(inst.actions[e], alpha);
    prow[e] = (1 - alpha) * inst.actions[e].p;
    if (inst.d() > 0) wrow[e] = inst.actions[e].w[0];
  }
  add_row(lp, std::move(prow), Relation::ge, need);
  if (inst.d() > 0) add_row(lp, std::move(wrow), Relation::le, room);
  SeparationOracle sep = [&](const std::vector<Rational>& x) -> std::optional<LpRow> {
    auto cut = matching_separation(g, x);
    if (!cut) return std::nullopt;
    return cut_row(n, *cut);
  };
  return solve_lp_with_separation(lp, sep, kCutRowCap);
}

ActionSet swap_round(const std::vector<Rational>& x, const Graph& graph, const Rational& gamma, std::mt19937_64& rng) {
  if (gamma < 0 || gamma >= Rational(1, 2)) throw ParameterError("gamma must lie in [0, 1/2)");
  int n = static_cast<int>(x.size());
  if (n != static_cast<int>(graph.edges.size())) throw std::invalid_argument("x length differs from edge count");
  Mask support = 0;
  std::vector<Rational> y(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) {
    if (x[e] < 0 || x[e] > 1) throw std::logic_error("swap_round input outside the unit box");
    y[e] = (1 - gamma) * x[e];
    if (y[e] > 0) support |= Mask{1} << e;
  }
  if (support == 0) return {};
  // Convex decomposition: lambda >= 0 over matchings in the support, sum lambda_M 1_M = y, sum lambda = 1.
  std::vector<Mask> ms = matchings_within(graph, support);
  int m = static_cast<int>(ms.size());
  LpProblem lp;
  lp.objective.assign(static_cast<std::size_t>(m), Rational(0));
  lp.lo.assign(static_cast<std::size_t>(m), Rational(0));
  lp.hi.assign(static_cast<std::size_t>(m), std::nullopt);
  for (int e : from_mask(support)) {
    std::vector<Rational> row(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) row[k] = has(ms[k], e) ? 1 : 0;
    add_row(lp, std::move(row), Relation::eq, y[e]);
  }
  add_row(lp, std::vector<Rational>(static_cast<std::size_t>(m), Rational(1)), Relation::eq, Rational(1));
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::optimal) throw std::logic_error("point is not in the matching polytope");
  std::vector<std::pair<Mask, Rational>> parts;
  for (int k = 0; k < m; ++k) {
    if (sol.x[k] > 0) parts.emplace_back(ms[k], sol.x[k]);
  }
  Mask current = parts[0].first;
  Rational weight = parts[0].second;
  for (std::size_t k = 1; k < parts.size(); ++k) {
    current = merge_matchings(graph, current, parts[k].first, weight, parts[k].second, rng);
    weight += parts[k].second;
  }
  return from_mask(current);
}

ActionSet inner_matching(const Instance& inst, const Rational& alpha, const ActionSet& t, const Rational& R,
                         const Rational& beta_q, const Rational& eps, std::mt19937_64& rng,
                         const EptasOptions& options, EptasStats* stats) {
  require_bm(inst);
  if (!has_matching(inst.constraint.kind)) throw IncompatibleError("inner_matching needs a matching constraint");
  require_local_eps(eps);
  Rational dsmall = delta_small(eps, options.tail_k);
  Mask best = 0;
  Rational best_ua = 0;
  for_each_guess(inst, t, guess_cap(eps), [&](Mask d) {
    if (stats) ++stats->d_guesses;
    LpSolution sol = fractional_matching_lp(inst, alpha, from_mask(d), R, beta_q, eps, dsmall);
    if (sol.status != LpStatus::optimal) return;
    Mask m = 0;
    if (std::any_of(sol.x.begin(), sol.x.end(), [](const Rational& v) { return v > 0; })) {
      if (stats) ++stats->rounding_calls;
      m = to_mask(swap_round(sol.x, inst.constraint.graph, eps, rng));
    }
    Mask k = m | d;
    if (!fits_budgets(inst, k)) {
      if (stats) ++stats->budget_fallbacks;
      k = 0;
    }
    Rational ua = agent_utility(inst, k, alpha);
    if (best_ua < ua) {
      best = k;
      best_ua = ua;
    }
  });
  return from_mask(best);
}

ActionSet bmic_local(const Instance& inst, const Rational& alpha, const Rational& R, const Rational& eps,
                     const EptasOptions& options, EptasStats* stats) {
  require_bm(inst);
  require_local_eps(eps);
  std::mt19937_64 rng(options.seed);
  BmLocal local(inst, alpha, eps, options, stats, rng);
  return local.solve(R);
}

EptasSplit eptas_split(const Rational& eps) {
  return EptasSplit{eps / 60, 2 * eps / 5, 2 * eps / 5};
}

SolutionReport bm_solve(const Instance& inst, const Rational& eps, const EptasOptions& options, EptasStats* stats) {
  auto start = std::chrono::steady_clock::now();
  require_bm(inst);
  if (eps <= 0 || eps >= 1) throw ParameterError("eps must lie in (0, 1)");
  EptasSplit split = eptas_split(eps);
  std::mt19937_64 rng(options.seed);
  GlobalOptions go;
  go.local_eps = split.threshold;
  go.principal_bound = [&inst](const Rational& alpha) { return lp_principal_bound(inst, alpha); };
  LocalContractSolver local = [&](const Instance& in, const Rational& alpha, const Rational& eps_t) {
    BmLocal solver(in, alpha, split.local, options, stats, rng);
    LocalThresholdSolver threshold = [&solver](const Instance&, const Rational&, const Rational& R,
                                               const Rational&) -> std::optional<ActionSet> {
      return solver.solve(R);
    };
    return adaptive_threshold(threshold, in, alpha, eps_t);
  };
  SolutionReport report = global_solve(local, inst, split.contract, go);
  report.eps = eps;
  report.algorithm = has_matroid(inst.constraint.kind) ? "bmatroid-eptas" : "bmatch-eptas";
  if (stats && stats->out_of_range > 0) report.flags.push_back("class-range-clamped");
  report.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace contract

#include "contract/multi_agent.hpp"

#include "contract/lp.hpp"
#include "contract/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>

namespace contract {

namespace {

constexpr long long kNoValue = std::numeric_limits<long long>::min();

void require_ma(const Instance& inst, bool single_budget) {
  if (inst.mode != Mode::multi_agent) throw IncompatibleError("multi-agent algorithm needs multi_agent mode");
  auto kind = inst.constraint.kind;
  if (kind != ConstraintKind::budget && kind != ConstraintKind::multibudget) {
    throw IncompatibleError("multi-agent algorithm needs budget constraints");
  }
  if (single_budget && inst.d() != 1) throw IncompatibleError("algorithm needs exactly one budget");
}

void require_eps(const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw ParameterError("eps must lie in (0, 1)");
}

bool excluded(const Action& a) { return a.p == 0 && a.c > 0; }

Rational ratio(const Action& a) { return a.p == 0 ? Rational(0) : Rational(a.c / a.p); }

Rational ratio_sum(const Instance& inst, Mask s) {
  Rational total = 0;
  for (int i : from_mask(s)) total += ratio(inst.actions[i]);
  return total;
}

// l_i = 1/t - c_i/p_i.
Rational ell(const Action& a, int t) { return Rational(1, t) - ratio(a); }

struct IntBudget {
  std::vector<long long> w;
  long long capacity = 0;
};

IntBudget integer_budget(const Instance& inst) {
  Integer scale = 1;
  for (const auto& a : inst.actions) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a.w[0].get_den_mpz_t());
  mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), inst.budgets[0].get_den_mpz_t());
  const Integer limit = Integer(std::numeric_limits<long>::max() / 4) / (inst.n() + 1);
  IntBudget out;
  auto convert = [&](const Rational& v) {
    Integer s = v.get_num() * (scale / v.get_den());
    if (s > limit) throw ScaleError("weights too large for the integer DP");
    return static_cast<long long>(s.get_si());
  };
  for (const auto& a : inst.actions) out.w.push_back(convert(a.w[0]));
  out.capacity = convert(inst.budgets[0]);
  return out;
}

// k-independent table for one (t, b, r): for every p~ level y, the best l~ over sets reaching at least y.
struct TkTable {
  Rational p_step;
  Rational l_step;
  std::vector<std::pair<long long, Mask>> best_from;  // (z units, set), z = kNoValue when none
};

TkTable build_table(const Instance& inst, const IntBudget& ib, int t, const Rational& b, const Rational& r,
                    const Rational& delta) {
  TkTable table;
  table.p_step = delta * b;
  table.l_step = delta * r;
  struct Entry {
    long long w;
    Mask set;
  };
  std::map<std::tuple<int, long long, long long>, Entry> states;
  states[{0, 0, 0}] = Entry{0, 0};
  for (int i = 0; i < inst.n(); ++i) {
    const Action& a = inst.actions[i];
    if (excluded(a) || a.p > b) continue;
    Rational li = ell(a, t);
    if (li > r) continue;
    long long y = floor_of(a.p / table.p_step).get_si();
    long long z = floor_of(li / table.l_step).get_si();
    std::vector<std::pair<std::tuple<int, long long, long long>, Entry>> added;
    for (const auto& [key, e] : states) {
      auto [count, ys, zs] = key;
      if (count >= t || e.w + ib.w[i] > ib.capacity) continue;
      added.push_back({{count + 1, ys + y, zs + z}, Entry{e.w + ib.w[i], e.set | (Mask{1} << i)}});
    }
    for (auto& [key, e] : added) {
      auto it = states.find(key);
      if (it == states.end()) {
        states.emplace(key, e);
      } else if (e.w < it->second.w) {
        it->second = e;
      }
    }
  }
  long long y_max = 0;
  for (const auto& [key, e] : states) y_max = std::max(y_max, std::get<1>(key));
  table.best_from.assign(static_cast<std::size_t>(y_max) + 1, {kNoValue, 0});
  for (const auto& [key, e] : states) {
    auto& slot = table.best_from[std::get<1>(key)];
    if (std::get<2>(key) > slot.first) slot = {std::get<2>(key), e.set};
  }
  for (long long y = y_max; y-- > 0;) {
    if (table.best_from[y + 1].first > table.best_from[y].first) table.best_from[y] = table.best_from[y + 1];
  }
  return table;
}

std::optional<std::pair<long long, Mask>> query(const TkTable& table, const Rational& k) {
  long long units = k <= 0 ? 0 : ceil_of(k / table.p_step).get_si();
  if (units >= static_cast<long long>(table.best_from.size())) return std::nullopt;
  const auto& entry = table.best_from[units];
  if (entry.first == kNoValue) return std::nullopt;
  return entry;
}

// Distinct positive l values for a given t, in action order.
std::vector<Rational> ell_guesses(const Instance& inst, int t) {
  std::vector<Rational> out;
  for (const auto& a : inst.actions) {
    if (excluded(a)) continue;
    Rational li = ell(a, t);
    if (li <= 0) continue;
    if (std::find(out.begin(), out.end(), li) == out.end()) out.push_back(li);
  }
  return out;
}

// T_k oracle for the single-budget case; tables are built once per b.
class BmaTk {
 public:
  BmaTk(const Instance& inst, const Rational& eps) : inst_(inst), delta_(eps / inst.n()), ib_(integer_budget(inst)) {}

  std::optional<ActionSet> operator()(const Rational& b, const Rational& k) {
    auto& tables = tables_for(b);
    bool found = false;
    Rational best;
    Mask best_set = 0;
    for (const auto& table : tables) {
      auto hit = query(table, k);
      if (!hit) continue;
      Rational value = table.l_step * static_cast<long>(hit->first);
      if (!found || value > best) {
        found = true;
        best = value;
        best_set = hit->second;
      }
    }
    if (!found) return std::nullopt;
    return from_mask(best_set);
  }

 private:
  std::vector<TkTable>& tables_for(const Rational& b) {
    auto it = cache_.find(b);
    if (it != cache_.end()) return it->second;
    std::vector<TkTable> tables;
    for (int t = 1; t <= inst_.n(); ++t) {
      for (const Rational& r : ell_guesses(inst_, t)) tables.push_back(build_table(inst_, ib_, t, b, r, delta_));
    }
    return cache_.emplace(b, std::move(tables)).first->second;
  }

  const Instance& inst_;
  Rational delta_;
  IntBudget ib_;
  std::map<Rational, std::vector<TkTable>> cache_;
};

Mask integral_ones(const std::vector<Rational>& x) {
  Mask out = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 1) out |= Mask{1} << i;
  }
  return out;
}

// T_k oracle for several budgets; guess patterns and R-free LP work are cached per (b, t).
class MbmaTk {
 public:
  MbmaTk(const Instance& inst, const Rational& eps, MaStats* stats)
      : inst_(inst), eps_(eps), delta_(eps / inst.n()), stats_(stats) {
    h_ = static_cast<int>(ceil_of(Rational(inst.d() + 2) / eps).get_si());
    FeasibleFamily family = enumerate_feasible(inst);
    for (Mask m : family.sets) {
      bool ok = popcount(m) <= h_;
      for (int i : from_mask(m)) ok = ok && !excluded(inst.actions[i]);
      if (ok) small_.push_back(m);
    }
  }

  std::optional<ActionSet> operator()(const Rational& b, const Rational& k) {
    bool found = false;
    Rational z;
    Mask best = 0;
    for (int t = 1; t <= inst_.n(); ++t) {
      Group& g = group(b, t);
      for (auto& pat : g.patterns) {
        if (found && pat.ell_cap < z) continue;
        std::optional<Mask> tset = rounded(g, pat, k);
        if (!tset) continue;
        if (p_tilde(g, *tset) < (1 - eps_) * k) continue;
        Rational value = ell_sum(g, *tset);
        if (!found || value >= z) {
          found = true;
          z = value;
          best = *tset;
        }
      }
    }
    if (!found) return std::nullopt;
    return from_mask(best);
  }

 private:
  struct Pattern {
    Mask fixed_one;
    Mask fixed_zero;
    Rational ell_cap;  // sum of l over fixed ones and free positive l
    bool prepared = false;
    bool has_free = false;
    Mask base_set = 0;
    Rational base_value;  // p~ . x without the k row
    Rational max_value;
  };

  struct Group {
    int t = 1;
    Rational b;
    std::vector<Rational> p_tilde;
    std::vector<Rational> ell;
    Mask eligible = 0;
    std::vector<Pattern> patterns;
  };

  Rational p_tilde(const Group& g, Mask s) const {
    Rational v = 0;
    for (int i : from_mask(s)) v += g.p_tilde[i];
    return v;
  }

  Rational ell_sum(const Group& g, Mask s) const {
    Rational v = 0;
    for (int i : from_mask(s)) v += g.ell[i];
    return v;
  }

  Group& group(const Rational& b, int t) {
    auto key = std::make_pair(b, t);
    auto it = groups_.find(key);
    if (it != groups_.end()) return *it->second;
    auto g = std::make_unique<Group>();
    g->t = t;
    g->b = b;
    int n = inst_.n();
    Rational step = delta_ * b;
    g->p_tilde.resize(n);
    g->ell.resize(n);
    for (int i = 0; i < n; ++i) {
      const Action& a = inst_.actions[i];
      g->p_tilde[i] = step == 0 ? Rational(0) : Rational(step * floor_of(a.p / step));
      g->ell[i] = ell(a, t);
      if (!excluded(a) && a.p <= b) g->eligible |= Mask{1} << i;
    }
    std::vector<Mask> guesses;
    for (Mask m : small_) {
      if ((m & ~g->eligible) == 0) guesses.push_back(m);
    }
    std::vector<Mask> e1(guesses.size()), e2(guesses.size());
    for (std::size_t k = 0; k < guesses.size(); ++k) {
      e1[k] = exclusion(g->p_tilde, guesses[k]);
      e2[k] = exclusion(g->ell, guesses[k]);
    }
    std::map<std::pair<Mask, Mask>, long long> last;
    long long pos = 0;
    for (std::size_t a = 0; a < guesses.size(); ++a) {
      for (std::size_t c = 0; c < guesses.size(); ++c) {
        Mask one = guesses[a] | guesses[c];
        if (popcount(one) > t || !is_feasible(inst_, one)) continue;
        Mask zero = ((e1[a] | e2[c]) | ~g->eligible) & ~one & all_mask();
        last[{one, zero}] = pos++;
      }
    }
    std::vector<std::pair<long long, std::pair<Mask, Mask>>> order;
    for (const auto& [key2, p] : last) order.emplace_back(p, key2);
    std::sort(order.begin(), order.end());
    for (const auto& [p, key2] : order) {
      Pattern pat;
      pat.fixed_one = key2.first;
      pat.fixed_zero = key2.second;
      pat.ell_cap = 0;
      for (int i = 0; i < n; ++i) {
        if (has(pat.fixed_one, i) || (!has(pat.fixed_zero, i) && g->ell[i] > 0)) pat.ell_cap += g->ell[i];
      }
      g->patterns.push_back(std::move(pat));
    }
    return *groups_.emplace(key, std::move(g)).first->second;
  }

  Mask all_mask() const { return inst_.n() == 64 ? ~Mask{0} : (Mask{1} << inst_.n()) - 1; }

  static Mask exclusion(const std::vector<Rational>& v, Mask s) {
    if (s == 0) return 0;
    Rational low;
    bool first = true;
    for (int i : from_mask(s)) {
      if (first || v[i] < low) low = v[i];
      first = false;
    }
    Mask out = 0;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      if (!has(s, i) && v[i] > low) out |= Mask{1} << i;
    }
    return out;
  }

  LpProblem build(const Group& g, const Pattern& pat) const {
    int n = inst_.n();
    LpProblem lp = box_problem(n);
    for (int i = 0; i < n; ++i) {
      lp.objective[i] = g.ell[i];
      if (has(pat.fixed_one, i)) lp.lo[i] = 1;
      if (has(pat.fixed_zero, i)) lp.hi[i] = Rational(0);
    }
    for (int j = 0; j < inst_.d(); ++j) {
      std::vector<Rational> row(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) row[i] = inst_.actions[i].w[j];
      add_row(lp, std::move(row), Relation::le, inst_.budgets[j]);
    }
    add_row(lp, std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)), Relation::le, Rational(g.t));
    return lp;
  }

  void record(const LpSolution& sol) const {
    int frac = static_cast<int>(fractional_support(sol).size());
    int bound = inst_.d() + 2;
    if (stats_) {
      ++stats_->lp_solves;
      stats_->max_fractional = std::max(stats_->max_fractional, frac);
      stats_->fractional_bound = bound;
    }
    if (frac > bound) throw std::logic_error("basic solution has more than d + 2 fractional entries");
  }

  void prepare(const Group& g, Pattern& pat) const {
    pat.prepared = true;
    pat.has_free = ((pat.fixed_one | pat.fixed_zero) & all_mask()) != all_mask();
    if (!pat.has_free) return;
    LpProblem lp = build(g, pat);
    LpSolution base = solve_lp(lp);
    if (base.status != LpStatus::optimal) throw std::logic_error("guess LP infeasible despite a feasible guess");
    record(base);
    pat.base_set = integral_ones(base.x);
    pat.base_value = 0;
    for (int i = 0; i < inst_.n(); ++i) pat.base_value += g.p_tilde[i] * base.x[i];
    lp.objective = g.p_tilde;
    pat.max_value = solve_lp(lp).objective_value;
  }

  std::optional<Mask> rounded(const Group& g, Pattern& pat, const Rational& k) const {
    if (!pat.prepared) prepare(g, pat);
    if (!pat.has_free) {
      if (p_tilde(g, pat.fixed_one) < k) return std::nullopt;
      return pat.fixed_one;
    }
    if (k <= pat.base_value) return pat.base_set;
    if (k > pat.max_value) return std::nullopt;
    LpProblem lp = build(g, pat);
    add_row(lp, g.p_tilde, Relation::ge, k);
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::optimal) return std::nullopt;
    record(sol);
    return integral_ones(sol.x);
  }

  const Instance& inst_;
  Rational eps_;
  Rational delta_;
  MaStats* stats_;
  int h_ = 0;
  std::vector<Mask> small_;
  std::map<std::pair<Rational, int>, std::unique_ptr<Group>> groups_;
};

SolutionReport ma_report(const Instance& inst, const ActionSet& s, const Rational& eps, const char* algorithm,
                         double ms) {
  SolutionReport report;
  report.set = s;
  report.alpha_vec = per_agent_contracts(inst, s);
  if (!equilibrium_holds(inst, s, report.alpha_vec)) throw std::logic_error("per-agent contracts fail equilibrium rows");
  report.g = g_value(inst, s);
  report.alpha = 0;
  report.u_a = 0;
  report.u_p = report.g ? *report.g : Rational(0);
  report.eps = eps;
  report.algorithm = algorithm;
  report.flags.push_back("equilibrium-verified");
  report.ms = ms;
  return report;
}

}  // namespace

std::optional<Rational> g_value(const Instance& inst, Mask s) {
  Rational reward = 0;
  Rational sum = 0;
  for (int i : from_mask(s)) {
    const Action& a = inst.actions[i];
    if (excluded(a)) return std::nullopt;
    reward += a.p;
    sum += ratio(a);
  }
  return (1 - sum) * reward;
}

std::optional<Rational> g_value(const Instance& inst, const ActionSet& s) { return g_value(inst, checked_mask(inst, s)); }

std::vector<Rational> per_agent_contracts(const Instance& inst, const ActionSet& s) {
  Mask m = checked_mask(inst, s);
  std::vector<Rational> out(static_cast<std::size_t>(inst.n()), Rational(0));
  for (int i : from_mask(m)) {
    const Action& a = inst.actions[i];
    if (excluded(a)) throw InvalidSetError("agent " + std::to_string(i) + " has p = 0 < c");
    out[i] = ratio(a);
  }
  return out;
}

bool equilibrium_holds(const Instance& inst, const ActionSet& s, const std::vector<Rational>& alpha_vec) {
  Mask m = checked_mask(inst, s);
  if (static_cast<int>(alpha_vec.size()) != inst.n()) return false;
  for (int i = 0; i < inst.n(); ++i) {
    const Action& a = inst.actions[i];
    Rational gain = alpha_vec[i] * a.p;
    if (has(m, i)) {
      if (gain < a.c) return false;
    } else if (is_feasible(inst, m | (Mask{1} << i))) {
      if (gain > a.c) return false;
    }
  }
  return true;
}

ActionSet ma_framework(const Instance& inst, const Rational& eps, const TkSolver& tk_solver) {
  require_eps(eps);
  int n = inst.n();
  Rational delta = eps / n;
  long long steps = ceil_of(Rational(n) / delta).get_si();
  std::vector<Rational> bs;
  for (const auto& a : inst.actions) {
    if (a.p > 0 && std::find(bs.begin(), bs.end(), a.p) == bs.end()) bs.push_back(a.p);
  }
  ActionSet best;
  Rational best_value = 0;
  for (const Rational& b : bs) {
    Rational step = delta * b;
    for (long long j = 0; j <= steps; ++j) {
      Rational k = step * static_cast<long>(j);
      if (k < best_value) continue;  // (1 - sum c/p) <= 1, so k bounds the candidate value
      auto tk = tk_solver(inst, b, k);
      if (!tk) continue;
      Rational value = (1 - ratio_sum(inst, checked_mask(inst, *tk))) * k;
      if (best_value <= value) {
        best = *tk;
        best_value = value;
      }
    }
  }
  return best;
}

std::optional<ActionSet> bma_tk_dp(const Instance& inst, int t, const Rational& b, const Rational& r,
                                   const Rational& k, const Rational& delta) {
  require_ma(inst, true);
  if (t < 1) throw ParameterError("t must be >= 1");
  if (b <= 0 || r <= 0 || delta <= 0) throw ParameterError("b, r and delta must be positive");
  TkTable table = build_table(inst, integer_budget(inst), t, b, r, delta);
  auto hit = query(table, k);
  if (!hit) return std::nullopt;
  return from_mask(hit->second);
}

std::optional<ActionSet> bma_tk(const Instance& inst, const Rational& b, const Rational& k, const Rational& eps) {
  require_ma(inst, true);
  require_eps(eps);
  BmaTk tk(inst, eps);
  return tk(b, k);
}

std::optional<ActionSet> mbma_tk_lp(const Instance& inst, const Rational& b, const Rational& k, const Rational& eps,
                                    MaStats* stats) {
  require_ma(inst, false);
  require_eps(eps);
  MbmaTk tk(inst, eps, stats);
  return tk(b, k);
}

SolutionReport bma_solve(const Instance& inst, const Rational& eps) {
  auto start = std::chrono::steady_clock::now();
  require_ma(inst, true);
  require_eps(eps);
  Rational third = eps / 3;
  BmaTk tk(inst, third);
  TkSolver solver = [&tk](const Instance&, const Rational& b, const Rational& k) { return tk(b, k); };
  ActionSet s = ma_framework(inst, third, solver);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return ma_report(inst, s, eps, "bma-fptas", ms);
}

SolutionReport mbma_solve(const Instance& inst, const Rational& eps, MaStats* stats) {
  auto start = std::chrono::steady_clock::now();
  require_ma(inst, false);
  require_eps(eps);
  Rational third = eps / 3;
  MbmaTk tk(inst, third, stats);
  TkSolver solver = [&](const Instance&, const Rational& b, const Rational& k) {
    if (stats) ++stats->tk_calls;
    return tk(b, k);
  };
  ActionSet s = ma_framework(inst, third, solver);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return ma_report(inst, s, eps, "mbma-ptas", ms);
}

}  // namespace contract

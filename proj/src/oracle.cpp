#include "contract/oracle.hpp"

#include "contract/multi_agent.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace contract {

int oracle_cap() {
  if (const char* env = std::getenv("CONTRACT_ORACLE_CAP")) {
    try {
      int cap = std::stoi(env);
      if (cap > 0) return std::min(cap, 30);
    } catch (const std::exception&) {
    }
  }
  return kDefaultOracleCap;
}

namespace {

void require_cap(const Instance& inst) {
  if (inst.n() > oracle_cap()) {
    throw ScaleError("instance has " + std::to_string(inst.n()) + " actions, oracle cap is " +
                     std::to_string(oracle_cap()));
  }
}

struct Enumerator {
  const Instance& inst;
  FeasibleFamily& out;
  std::vector<Rational> load;
  std::vector<char> used;

  void visit(int start, Mask s, const Rational& p, const Rational& c) {
    out.sets.push_back(s);
    out.reward.push_back(p);
    out.cost.push_back(c);
    for (int i = start; i < inst.n(); ++i) {
      const Action& a = inst.actions[i];
      bool fits = true;
      for (int j = 0; j < inst.d() && fits; ++j) fits = load[j] + a.w[j] <= inst.budgets[j];
      if (!fits) continue;
      Mask next = s | (Mask{1} << i);
      if (has_matroid(inst.constraint.kind) && !is_independent(inst.constraint.matroid, next)) continue;
      int u = -1;
      int v = -1;
      if (has_matching(inst.constraint.kind)) {
        u = inst.constraint.graph.edges[i].first;
        v = inst.constraint.graph.edges[i].second;
        if (used[u] || used[v]) continue;
        used[u] = used[v] = 1;
      }
      for (int j = 0; j < inst.d(); ++j) load[j] += a.w[j];
      visit(i + 1, next, p + a.p, c + a.c);
      for (int j = 0; j < inst.d(); ++j) load[j] -= a.w[j];
      if (u >= 0) used[u] = used[v] = 0;
    }
  }
};

}  // namespace

FeasibleFamily enumerate_feasible(const Instance& inst) {
  require_cap(inst);
  FeasibleFamily family;
  Enumerator e{inst, family, std::vector<Rational>(static_cast<std::size_t>(inst.d()), 0),
               std::vector<char>(static_cast<std::size_t>(inst.constraint.graph.num_vertices), 0)};
  e.visit(0, 0, 0, 0);
  return family;
}

bool lex_less(Mask a, Mask b) {
  while (a != 0 && b != 0) {
    Mask la = a & -a;
    Mask lb = b & -b;
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

Mask best_response_mask(const FeasibleFamily& family, const Rational& alpha) {
  std::size_t best = 0;
  Rational best_ua = alpha * family.reward[0] - family.cost[0];
  Rational ua;
  for (std::size_t k = 1; k < family.sets.size(); ++k) {
    ua = alpha * family.reward[k] - family.cost[k];
    int uc = cmp(ua, best_ua);
    if (uc < 0) continue;
    if (uc == 0) {
      // Equal agent utility: larger reward means larger principal utility when alpha < 1.
      int pc = alpha < 1 ? cmp(family.reward[k], family.reward[best]) : 0;
      if (pc < 0) continue;
      if (pc == 0 && !lex_less(family.sets[k], family.sets[best])) continue;
    }
    best = k;
    best_ua = ua;
  }
  return family.sets[best];
}

ActionSet best_response(const Instance& inst, const Rational& alpha) {
  return from_mask(best_response_mask(enumerate_feasible(inst), alpha));
}

std::vector<Rational> envelope_breakpoints(const FeasibleFamily& family) {
  // Lines y = P*alpha - C; keep the cheapest set per reward level.
  std::vector<std::pair<Rational, Rational>> lines;
  for (std::size_t k = 0; k < family.sets.size(); ++k) lines.emplace_back(family.reward[k], family.cost[k]);
  std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  std::vector<std::pair<Rational, Rational>> unique;
  for (const auto& l : lines) {
    if (unique.empty() || unique.back().first != l.first) unique.push_back(l);
  }
  // Intersection abscissa of lines a (smaller slope) and b.
  auto cross = [](const std::pair<Rational, Rational>& a, const std::pair<Rational, Rational>& b) {
    return Rational((b.second - a.second) / (b.first - a.first));
  };
  std::vector<std::pair<Rational, Rational>> hull;
  for (const auto& l : unique) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], l) <= cross(hull[hull.size() - 2], hull.back())) {
      hull.pop_back();
    }
    hull.push_back(l);
  }
  std::vector<Rational> out{0};
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    Rational x = cross(hull[k], hull[k + 1]);
    if (x > 0 && x < 1) out.push_back(x);
  }
  out.push_back(1);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ContractOptimum optimal_contract(const Instance& inst, const FeasibleFamily& family) {
  ContractOptimum best;
  bool first = true;
  std::vector<Rational> candidates = envelope_breakpoints(family);
  for (const Rational& alpha : candidates) {
    Mask s = best_response_mask(family, alpha);
    Rational value = principal_utility(inst, s, alpha);
    if (first || value > best.value) {
      best.alpha = alpha;
      best.set = from_mask(s);
      best.value = value;
      first = false;
    }
  }
  best.candidates = static_cast<long long>(candidates.size());
  return best;
}

ContractOptimum optimal_contract(const Instance& inst) { return optimal_contract(inst, enumerate_feasible(inst)); }

IcCheck eps_ic_check(const Instance& inst, const ActionSet& s, const Rational& alpha, const Rational& eps) {
  Mask mask = checked_mask(inst, s);
  FeasibleFamily family = enumerate_feasible(inst);
  IcCheck out;
  if (!is_feasible(inst, mask)) return out;
  Mask best = best_response_mask(family, alpha);
  Rational target = (1 - eps) * agent_utility(inst, best, alpha);
  out.ok = agent_utility(inst, mask, alpha) >= target;
  if (!out.ok) out.witness = from_mask(best);
  return out;
}

ActionSet brute_g_max(const Instance& inst) {
  FeasibleFamily family = enumerate_feasible(inst);
  Mask best = 0;
  Rational best_g = 0;
  for (Mask s : family.sets) {
    auto g = g_value(inst, s);
    if (!g) continue;
    if (*g > best_g || (*g == best_g && lex_less(s, best))) {
      best = s;
      best_g = *g;
    }
  }
  return from_mask(best);
}

std::optional<ActionSet> brute_constrained_max(const Instance& inst, const std::vector<Rational>& objective,
                                               const std::vector<Floor>& floors) {
  FeasibleFamily family = enumerate_feasible(inst);
  std::optional<Mask> best;
  Rational best_value;
  for (Mask s : family.sets) {
    bool ok = true;
    for (const auto& f : floors) {
      Rational total = 0;
      for (Mask rest = s; rest != 0; rest &= rest - 1) total += f.coeffs[__builtin_ctzll(rest)];
      if (total < f.bound) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Rational value = 0;
    for (Mask rest = s; rest != 0; rest &= rest - 1) value += objective[__builtin_ctzll(rest)];
    if (!best || value > best_value || (value == best_value && lex_less(s, *best))) {
      best = s;
      best_value = value;
    }
  }
  if (!best) return std::nullopt;
  return from_mask(*best);
}

std::pair<Rational, ActionSet> brute_knapsack(const std::vector<Rational>& values,
                                              const std::vector<Rational>& weights, const Rational& capacity) {
  int n = static_cast<int>(values.size());
  if (n > oracle_cap()) throw ScaleError("knapsack oracle above cap");
  Rational best_value = 0;
  Mask best = 0;
  for (Mask s = 0; s < (Mask{1} << n); ++s) {
    Rational w = 0;
    Rational v = 0;
    for (Mask rest = s; rest != 0; rest &= rest - 1) {
      int i = __builtin_ctzll(rest);
      w += weights[i];
      v += values[i];
    }
    if (w > capacity) continue;
    if (v > best_value || (v == best_value && lex_less(s, best))) {
      best_value = v;
      best = s;
    }
  }
  return {best_value, from_mask(best)};
}

}  // namespace contract

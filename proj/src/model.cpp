#include "contract/model.hpp"

#include <algorithm>

namespace contract {

const char* kind_name(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::budget: return "budget";
    case ConstraintKind::multibudget: return "multibudget";
    case ConstraintKind::matroid: return "matroid";
    case ConstraintKind::budgeted_matroid: return "budgeted_matroid";
    case ConstraintKind::matching: return "matching";
    case ConstraintKind::budgeted_matching: return "budgeted_matching";
  }
  return "unknown";
}

const char* mode_name(Mode mode) {
  return mode == Mode::single_agent ? "single_agent" : "multi_agent";
}

bool has_matroid(ConstraintKind kind) {
  return kind == ConstraintKind::matroid || kind == ConstraintKind::budgeted_matroid;
}

bool has_matching(ConstraintKind kind) {
  return kind == ConstraintKind::matching || kind == ConstraintKind::budgeted_matching;
}

void validate(const Instance& inst) {
  int n = inst.n();
  if (n < 1) throw std::invalid_argument("instance needs at least one action");
  if (n > 64) throw std::invalid_argument("instance limited to 64 actions");
  for (const auto& b : inst.budgets) {
    if (b < 0) throw std::invalid_argument("budget must be non-negative");
  }
  for (int i = 0; i < n; ++i) {
    const Action& a = inst.actions[i];
    std::string where = "action " + std::to_string(i);
    if (a.index != i) throw std::invalid_argument(where + ": index must equal position");
    if (a.p < 0) throw std::invalid_argument(where + ": p must be >= 0");
    if (a.c < 0) throw std::invalid_argument(where + ": c must be >= 0");
    if (static_cast<int>(a.w.size()) != inst.d()) {
      throw std::invalid_argument(where + ": weight vector length differs from budget count");
    }
    for (const auto& w : a.w) {
      if (w < 0) throw std::invalid_argument(where + ": weights must be >= 0");
    }
  }
  const auto& con = inst.constraint;
  if (has_matroid(con.kind)) {
    const auto& m = con.matroid;
    if (m.ground_size != n) throw std::invalid_argument("matroid ground size differs from action count");
    switch (m.type) {
      case MatroidType::uniform:
        if (m.k < 0 || m.k > n) throw std::invalid_argument("uniform matroid needs 0 <= k <= n");
        break;
      case MatroidType::partition:
        if (static_cast<int>(m.block_of.size()) != n) throw std::invalid_argument("partition blocks must cover every action");
        for (int cap : m.capacities) {
          if (cap < 0) throw std::invalid_argument("partition capacities must be >= 0");
        }
        break;
      case MatroidType::graphic:
        if (static_cast<int>(m.graph.edges.size()) != n) throw std::invalid_argument("graphic matroid needs one edge per action");
        for (const auto& e : m.graph.edges) {
          if (e.first < 0 || e.second < 0 || e.first >= m.graph.num_vertices || e.second >= m.graph.num_vertices) {
            throw std::invalid_argument("graphic matroid edge endpoint out of range");
          }
          if (e.first == e.second) throw std::invalid_argument("graphic matroid edge is a self-loop");
        }
        break;
      case MatroidType::explicit_list:
        if (n > 16) throw std::invalid_argument("explicit matroid limited to 16 actions");
        break;
    }
  }
  if (has_matching(con.kind)) {
    const auto& g = con.graph;
    if (static_cast<int>(g.edges.size()) != n) throw std::invalid_argument("matching graph needs one edge per action");
    for (const auto& e : g.edges) {
      if (e.first < 0 || e.second < 0 || e.first >= g.num_vertices || e.second >= g.num_vertices) {
        throw std::invalid_argument("matching edge endpoint out of range");
      }
      if (e.first == e.second) throw std::invalid_argument("matching edge is a self-loop");
    }
  }
}

Rational action_q(const Action& a, const Rational& alpha) { return alpha * a.p - a.c; }

Mask checked_mask(const Instance& inst, const ActionSet& s) {
  Mask m = 0;
  for (int i : s) {
    if (i < 0 || i >= inst.n()) throw InvalidSetError("action index out of range: " + std::to_string(i));
    if (has(m, i)) throw InvalidSetError("duplicate action index: " + std::to_string(i));
    m |= Mask{1} << i;
  }
  return m;
}

Rational reward_sum(const Instance& inst, Mask s) {
  Rational total = 0;
  for (Mask rest = s; rest != 0; rest &= rest - 1) total += inst.actions[__builtin_ctzll(rest)].p;
  return total;
}

Rational cost_sum(const Instance& inst, Mask s) {
  Rational total = 0;
  for (Mask rest = s; rest != 0; rest &= rest - 1) total += inst.actions[__builtin_ctzll(rest)].c;
  return total;
}

Rational agent_utility(const Instance& inst, Mask s, const Rational& alpha) {
  return alpha * reward_sum(inst, s) - cost_sum(inst, s);
}

Rational principal_utility(const Instance& inst, Mask s, const Rational& alpha) {
  return (1 - alpha) * reward_sum(inst, s);
}

Rational agent_utility(const Instance& inst, const ActionSet& s, const Rational& alpha) {
  return agent_utility(inst, checked_mask(inst, s), alpha);
}

Rational principal_utility(const Instance& inst, const ActionSet& s, const Rational& alpha) {
  return principal_utility(inst, checked_mask(inst, s), alpha);
}

bool fits_budgets(const Instance& inst, Mask s) {
  for (int j = 0; j < inst.d(); ++j) {
    Rational total = 0;
    for (Mask rest = s; rest != 0; rest &= rest - 1) total += inst.actions[__builtin_ctzll(rest)].w[j];
    if (total > inst.budgets[j]) return false;
  }
  return true;
}

bool is_feasible(const Instance& inst, Mask s) {
  if (!fits_budgets(inst, s)) return false;
  if (has_matroid(inst.constraint.kind) && !is_independent(inst.constraint.matroid, s)) return false;
  if (has_matching(inst.constraint.kind) && !is_matching(inst.constraint.graph, s)) return false;
  return true;
}

bool is_feasible(const Instance& inst, const ActionSet& s) { return is_feasible(inst, checked_mask(inst, s)); }

Instance normalize_rewards(const Instance& inst) {
  Rational total = 0;
  for (const auto& a : inst.actions) total += a.p;
  if (total <= 0) throw ParameterError("cannot normalize all-zero rewards");
  Instance out = inst;
  for (auto& a : out.actions) a.p /= total;
  out.meta["normalized"] = "true";
  out.meta["reward_scale"] = to_string(total);
  return out;
}

void fill_utilities(const Instance& inst, SolutionReport& report) {
  Mask s = checked_mask(inst, report.set);
  report.u_a = agent_utility(inst, s, report.alpha);
  report.u_p = principal_utility(inst, s, report.alpha);
}

}  // namespace contract

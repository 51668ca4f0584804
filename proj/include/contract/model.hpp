#pragma once

#include "contract/errors.hpp"
#include "contract/rational.hpp"
#include "contract/structures.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace contract {

struct Action {
  int index = 0;
  Rational p;
  Rational c;
  std::vector<Rational> w;
};

enum class ConstraintKind { budget, multibudget, matroid, budgeted_matroid, matching, budgeted_matching };
enum class Mode { single_agent, multi_agent };

struct Constraint {
  ConstraintKind kind = ConstraintKind::budget;
  MatroidSpec matroid;  // matroid kinds
  Graph graph;          // matching kinds
};

struct Instance {
  std::vector<Action> actions;
  std::vector<Rational> budgets;
  Constraint constraint;
  Mode mode = Mode::single_agent;
  std::map<std::string, std::string> meta;

  int n() const { return static_cast<int>(actions.size()); }
  int d() const { return static_cast<int>(budgets.size()); }
};

struct SolutionReport {
  ActionSet set;
  Rational alpha;
  std::vector<Rational> alpha_vec;  // multi-agent only
  Rational u_a;
  Rational u_p;
  std::optional<Rational> g;
  std::string algorithm;
  Rational eps;
  double ms = 0;
  std::vector<std::string> flags;
};

const char* kind_name(ConstraintKind kind);
const char* mode_name(Mode mode);
bool has_matroid(ConstraintKind kind);
bool has_matching(ConstraintKind kind);

// Throws std::invalid_argument naming the offending field.
void validate(const Instance& inst);

Rational action_q(const Action& a, const Rational& alpha);
Rational agent_utility(const Instance& inst, const ActionSet& s, const Rational& alpha);
Rational principal_utility(const Instance& inst, const ActionSet& s, const Rational& alpha);
Rational agent_utility(const Instance& inst, Mask s, const Rational& alpha);
Rational principal_utility(const Instance& inst, Mask s, const Rational& alpha);
Rational reward_sum(const Instance& inst, Mask s);
Rational cost_sum(const Instance& inst, Mask s);

bool fits_budgets(const Instance& inst, Mask s);
bool is_feasible(const Instance& inst, Mask s);
bool is_feasible(const Instance& inst, const ActionSet& s);

Instance normalize_rewards(const Instance& inst);

// Fills u_a and u_p from (set, alpha).
void fill_utilities(const Instance& inst, SolutionReport& report);

// Validates indices against the instance and returns the mask.
Mask checked_mask(const Instance& inst, const ActionSet& s);

}  // namespace contract

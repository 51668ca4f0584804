#include "contract/matroid_exact.hpp"

#include <algorithm>
#include <chrono>

namespace contract {

namespace {

void require_matroid(const Instance& inst) {
  if (inst.constraint.kind != ConstraintKind::matroid) {
    throw IncompatibleError("matroid algorithm needs a matroid constraint");
  }
  if (inst.mode != Mode::single_agent) throw IncompatibleError("matroid algorithm is single-agent");
}

}  // namespace

CompositeWeights composite_weights(const Instance& inst, const Rational& alpha) {
  CompositeWeights out;
  int n = inst.n();
  std::vector<Rational> q(n);
  for (int i = 0; i < n; ++i) q[i] = action_q(inst.actions[i], alpha);
  bool found = false;
  Rational max_p_gap = 0;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      Rational gap = abs(q[k] - q[l]);
      if (gap != 0 && (!found || gap < out.delta)) {
        out.delta = gap;
        found = true;
      }
      Rational pg = abs(inst.actions[k].p - inst.actions[l].p);
      if (pg > max_p_gap) max_p_gap = pg;
    }
  }
  out.big_delta = found ? Rational(max_p_gap / out.delta) : Rational(0);
  out.w.resize(n);
  for (int i = 0; i < n; ++i) out.w[i] = (out.big_delta + 1) * q[i] + inst.actions[i].p;
  return out;
}

ActionSet matroid_best_response(const Instance& inst, const Rational& alpha) {
  require_matroid(inst);
  Mask excluded = 0;
  for (int i = 0; i < inst.n(); ++i) {
    Rational q = action_q(inst.actions[i], alpha);
    bool keep = q > 0 || (q == 0 && inst.actions[i].p > 0);
    if (!keep) excluded |= Mask{1} << i;
  }
  CompositeWeights cw = composite_weights(inst, alpha);
  MatroidSpec m = without_elements(inst.constraint.matroid, excluded);
  return greedy_max_weight(m, cw.w);
}

std::vector<Rational> matroid_breakpoints(const Instance& inst) {
  std::vector<Rational> out{Rational(0), Rational(1)};
  int n = inst.n();
  auto push = [&](const Rational& a) {
    if (a > 0 && a < 1) out.push_back(a);
  };
  for (int i = 0; i < n; ++i) {
    const auto& ai = inst.actions[i];
    if (ai.p != 0) push(ai.c / ai.p);
    for (int j = i + 1; j < n; ++j) {
      const auto& aj = inst.actions[j];
      if (ai.p != aj.p) push((ai.c - aj.c) / (ai.p - aj.p));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SolutionReport matroid_opt_solve(const Instance& inst) {
  auto start = std::chrono::steady_clock::now();
  require_matroid(inst);
  SolutionReport best;
  bool have = false;
  for (const Rational& alpha : matroid_breakpoints(inst)) {
    ActionSet s = matroid_best_response(inst, alpha);
    Rational up = principal_utility(inst, s, alpha);
    if (!have || up > best.u_p) {
      best.set = s;
      best.alpha = alpha;
      best.u_p = up;
      have = true;
    }
  }
  fill_utilities(inst, best);
  best.algorithm = "matroid-opt";
  if (best.alpha == 0) best.flags.push_back("alpha-zero-closure");
  best.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return best;
}

}  // namespace contract

#include "contract/budget_fptas.hpp"

#include "contract/framework.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

namespace contract {

namespace {

void require_budget(const Instance& inst) {
  if (inst.constraint.kind != ConstraintKind::budget || inst.d() != 1) {
    throw IncompatibleError("budget algorithm needs a single budget constraint");
  }
  if (inst.mode != Mode::single_agent) throw IncompatibleError("budget algorithm is single-agent");
}

void require_eps(const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw ParameterError("eps must lie in (0, 1)");
}

// Weights and capacity scaled to integers by the common denominator.
struct IntWeights {
  std::vector<long long> w;
  long long capacity = 0;
};

IntWeights integer_weights(const Instance& inst) {
  Integer scale = 1;
  for (const auto& a : inst.actions) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a.w[0].get_den_mpz_t());
  mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), inst.budgets[0].get_den_mpz_t());
  const Integer limit = Integer(std::numeric_limits<long>::max() / 4) / (inst.n() + 1);
  IntWeights out;
  auto convert = [&](const Rational& v) {
    Integer s = v.get_num() * (scale / v.get_den());
    if (s > limit) throw ScaleError("weights too large for the integer DP");
    return static_cast<long long>(s.get_si());
  };
  for (const auto& a : inst.actions) out.w.push_back(convert(a.w[0]));
  out.capacity = convert(inst.budgets[0]);
  return out;
}

struct DpItem {
  int index;
  long long x;
  long long y;
  long long w;
};

struct DpState {
  long long x;
  long long y;
  long long w;
  Mask set;
};

struct DpAnswer {
  Mask set;
  long long x;
};

// Suffix-min Fenwick tree over y in [0, size).
class SuffixMin {
 public:
  explicit SuffixMin(long long size) : tree_(static_cast<std::size_t>(size) + 1, kInf) {}
  void update(long long y, long long w) {
    for (long long i = static_cast<long long>(tree_.size()) - 1 - y; i < static_cast<long long>(tree_.size()); i += i & -i) {
      tree_[i] = std::min(tree_[i], w);
    }
  }
  long long query(long long y) const {
    long long best = kInf;
    for (long long i = static_cast<long long>(tree_.size()) - 1 - y; i > 0; i -= i & -i) best = std::min(best, tree_[i]);
    return best;
  }

 private:
  static constexpr long long kInf = std::numeric_limits<long long>::max();
  std::vector<long long> tree_;
};

// Pareto DP over (x, min(y, target), w). With x_floor set, states that cannot exceed it are dropped.
std::optional<DpAnswer> pareto_dp(const std::vector<DpItem>& items, long long target, long long capacity,
                                  std::optional<long long> x_floor) {
  std::size_t m = items.size();
  std::vector<long long> rem_x(m + 1, 0), rem_y(m + 1, 0);
  for (std::size_t i = m; i-- > 0;) {
    rem_x[i] = rem_x[i + 1] + items[i].x;
    rem_y[i] = std::min(target, rem_y[i + 1] + items[i].y);
  }
  if (rem_y[0] < target) return std::nullopt;
  if (x_floor && rem_x[0] <= *x_floor) return std::nullopt;
  std::vector<DpState> states{{0, 0, 0, 0}};
  std::vector<DpState> next;
  for (std::size_t i = 0; i < m; ++i) {
    const DpItem& it = items[i];
    next.clear();
    auto viable = [&](const DpState& s) {
      if (std::min(target, s.y + rem_y[i + 1]) < target) return false;
      return !x_floor || s.x + rem_x[i + 1] > *x_floor;
    };
    for (const auto& s : states) {
      if (viable(s)) next.push_back(s);
    }
    for (const auto& s : states) {
      if (s.w + it.w > capacity) continue;
      DpState t{s.x + it.x, std::min(target, s.y + it.y), s.w + it.w, s.set | (Mask{1} << it.index)};
      if (viable(t)) next.push_back(t);
    }
    std::stable_sort(next.begin(), next.end(), [](const DpState& a, const DpState& b) {
      if (a.x != b.x) return a.x > b.x;
      if (a.y != b.y) return a.y > b.y;
      return a.w < b.w;
    });
    states.clear();
    SuffixMin front(target + 1);
    for (const auto& s : next) {
      if (front.query(s.y) <= s.w) continue;
      front.update(s.y, s.w);
      states.push_back(s);
    }
  }
  for (const auto& s : states) {
    if (s.y >= target) return DpAnswer{s.set, s.x};
  }
  return std::nullopt;
}

// Smallest number of q-steps reaching bound; nullopt when no grid point can.
std::optional<long long> y_target(const Rational& bound, const Rational& q_step) {
  if (bound <= 0) return 0;
  if (q_step == 0) return std::nullopt;
  return ceil_of(bound / q_step).get_si();
}

std::vector<DpItem> dp_items(const RoundedInstance& ri, const IntWeights& iw) {
  std::vector<DpItem> items;
  for (std::size_t k = 0; k < ri.items.size(); ++k) {
    int i = ri.items[k];
    items.push_back({i, ri.p_units[k], ri.q_units[k], iw.w[i]});
  }
  return items;
}

}  // namespace

ActionSet knapsack_fptas(const std::vector<Rational>& values, const std::vector<Rational>& weights,
                         const Rational& capacity, const Rational& eps) {
  require_eps(eps);
  if (values.size() != weights.size()) throw ParameterError("values and weights differ in length");
  std::vector<int> items;
  Rational vmax = 0;
  for (int i = 0; i < static_cast<int>(values.size()); ++i) {
    if (values[i] < 0) throw ParameterError("knapsack values must be >= 0");
    if (weights[i] > capacity) continue;
    items.push_back(i);
    vmax = std::max(vmax, values[i]);
  }
  if (vmax == 0) return {};
  Rational unit = eps * vmax / static_cast<long>(items.size());
  std::vector<long long> scaled;
  long long total = 0;
  for (int i : items) {
    scaled.push_back(floor_of(values[i] / unit).get_si());
    total += scaled.back();
  }
  // best[v] = lightest set with scaled profit exactly v.
  std::vector<std::optional<std::pair<Rational, Mask>>> best(static_cast<std::size_t>(total) + 1);
  best[0] = std::make_pair(Rational(0), Mask{0});
  long long reach = 0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    int i = items[k];
    for (long long v = reach; v >= 0; --v) {
      if (!best[v]) continue;
      Rational w = best[v]->first + weights[i];
      if (w > capacity) continue;
      auto& slot = best[v + scaled[k]];
      if (!slot || w < slot->first) slot = std::make_pair(w, best[v]->second | (Mask{1} << i));
    }
    reach += scaled[k];
  }
  for (long long v = total; v >= 0; --v) {
    if (best[v]) return from_mask(best[v]->second);
  }
  return {};
}

RoundedInstance round_instance(const Instance& inst, const Rational& alpha, const Rational& b, const Rational& r,
                               const Rational& delta) {
  RoundedInstance ri;
  ri.delta = delta;
  ri.b = b;
  ri.r = r;
  Rational ps = ri.p_step();
  Rational qs = ri.q_step();
  for (int i = 0; i < inst.n(); ++i) {
    const Action& a = inst.actions[i];
    Rational q = action_q(a, alpha);
    if (q < 0 || q > r || a.p > b) continue;
    ri.items.push_back(i);
    ri.p_units.push_back(ps == 0 ? 0 : floor_of(a.p / ps).get_si());
    ri.q_units.push_back(qs == 0 ? 0 : floor_of(q / qs).get_si());
  }
  return ri;
}

std::optional<ActionSet> bsa_dp(const Instance& inst, const Rational& alpha, const Rational& b, const Rational& r,
                                const Rational& bound, const Rational& delta) {
  require_budget(inst);
  RoundedInstance ri = round_instance(inst, alpha, b, r, delta);
  auto target = y_target(bound, ri.q_step());
  if (!target) return std::nullopt;
  IntWeights iw = integer_weights(inst);
  auto ans = pareto_dp(dp_items(ri, iw), *target, iw.capacity, std::nullopt);
  if (!ans) return std::nullopt;
  return from_mask(ans->set);
}

ActionSet bsa_local(const Instance& inst, const Rational& alpha, const Rational& eps, const BsaDpObserver& observer) {
  require_budget(inst);
  require_eps(eps);
  int n = inst.n();
  std::vector<int> nonneg;
  std::vector<Rational> values, weights;
  for (int i = 0; i < n; ++i) {
    Rational q = action_q(inst.actions[i], alpha);
    if (q < 0) continue;
    nonneg.push_back(i);
    values.push_back(q);
    weights.push_back(inst.actions[i].w[0]);
  }
  if (nonneg.empty()) return {};
  Rational z = 0;
  for (int k : knapsack_fptas(values, weights, inst.budgets[0], eps)) z += values[k];
  Rational bound = (1 - eps) * z;
  Rational delta = eps / n;
  IntWeights iw = integer_weights(inst);

  std::vector<Rational> bs, rs;
  for (int i = 0; i < n; ++i) bs.push_back(inst.actions[i].p);
  for (std::size_t k = 0; k < nonneg.size(); ++k) rs.push_back(values[k]);
  std::sort(bs.begin(), bs.end());
  bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());

  Mask best = 0;
  Rational best_value = 0;  // p~ of the incumbent under its own rounding
  for (const Rational& b : bs) {
    for (const Rational& r : rs) {
      if (observer) observer(BsaDpCall{alpha, b, r, bound, delta});
      if (b == 0) continue;  // every p~ is 0 and cannot beat the incumbent
      RoundedInstance ri = round_instance(inst, alpha, b, r, delta);
      std::vector<Rational> pv, wv;
      for (int i : ri.items) {
        pv.push_back(inst.actions[i].p);
        wv.push_back(inst.actions[i].w[0]);
      }
      if (fractional_knapsack(pv, wv, inst.budgets[0]) <= best_value) continue;
      auto target = y_target(bound, ri.q_step());
      if (!target) continue;
      Rational step = ri.p_step();
      long long floor_units = floor_of(best_value / step).get_si();
      auto ans = pareto_dp(dp_items(ri, iw), *target, iw.capacity, floor_units);
      if (!ans) continue;
      Rational value = step * static_cast<long>(ans->x);
      if (value > best_value) {
        best_value = value;
        best = ans->set;
      }
    }
  }
  return from_mask(best);
}

SolutionReport bsa_solve(const Instance& inst, const Rational& eps) {
  auto start = std::chrono::steady_clock::now();
  require_budget(inst);
  require_eps(eps);
  Rational half = eps / 2;
  GlobalOptions options;
  options.local_eps = half;
  options.principal_bound = [&inst](const Rational& alpha) -> Rational {
    std::vector<Rational> pv, wv;
    for (const auto& a : inst.actions) {
      if (action_q(a, alpha) < 0) continue;
      pv.push_back(a.p);
      wv.push_back(a.w[0]);
    }
    return (1 - alpha) * fractional_knapsack(pv, wv, inst.budgets[0]);
  };
  LocalContractSolver local = [](const Instance& in, const Rational& alpha, const Rational& e) {
    return bsa_local(in, alpha, e);
  };
  SolutionReport report = global_solve(local, inst, half, options);
  report.eps = eps;
  report.algorithm = "bsa-fptas";
  for (const auto& a : inst.actions) {
    if (action_q(a, report.alpha) < 0) {
      report.flags.push_back("negative-q-actions-dropped");
      break;
    }
  }
  report.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace contract

#include "contract/instance_gen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace contract {

namespace {

Rational draw(std::mt19937_64& rng, const Rational& lo, const Rational& hi, int den) {
  Integer a = ceil_of(lo * den);
  Integer b = floor_of(hi * den);
  if (a > b) throw ParameterError("empty value range for denominator " + std::to_string(den));
  long span = Integer(b - a).get_si();
  std::uniform_int_distribution<long> dist(0, span);
  Rational v(Integer(a + dist(rng)), den);
  v.canonicalize();
  return v;
}

Graph random_graph(std::mt19937_64& rng, int vertices, int edges) {
  if (vertices < 2) throw ParameterError("graph needs at least two vertices");
  Graph g;
  g.num_vertices = vertices;
  std::uniform_int_distribution<int> vd(0, vertices - 1);
  for (int e = 0; e < edges; ++e) {
    int u = vd(rng);
    int v = vd(rng);
    while (v == u) v = vd(rng);
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return g;
}

int budget_dims(const GenSpec& spec) {
  switch (spec.kind) {
    case ConstraintKind::budget:
    case ConstraintKind::budgeted_matroid:
    case ConstraintKind::budgeted_matching:
      return 1;
    case ConstraintKind::multibudget:
      return spec.d;
    case ConstraintKind::matroid:
    case ConstraintKind::matching:
      return 0;
  }
  return 0;
}

Instance draw_instance(const GenSpec& spec, std::mt19937_64& rng) {
  Instance inst;
  inst.mode = spec.mode;
  inst.constraint.kind = spec.kind;
  int d = budget_dims(spec);
  for (int i = 0; i < spec.n; ++i) {
    Action a;
    a.index = i;
    a.p = draw(rng, spec.p_lo, spec.p_hi, spec.denominator);
    a.c = draw(rng, spec.c_lo, spec.c_hi, spec.denominator);
    for (int j = 0; j < d; ++j) a.w.push_back(draw(rng, spec.w_lo, spec.w_hi, spec.denominator));
    inst.actions.push_back(std::move(a));
  }
  for (int j = 0; j < d; ++j) {
    Rational total = 0;
    Rational lightest = inst.actions[0].w[j];
    for (const auto& a : inst.actions) {
      total += a.w[j];
      lightest = std::min(lightest, a.w[j]);
    }
    // Never below the lightest action, so small instances keep a feasible singleton.
    inst.budgets.push_back(std::max(Rational(total * spec.budget_fraction), lightest));
  }
  if (has_matroid(spec.kind)) {
    switch (spec.matroid_type) {
      case MatroidType::uniform: {
        std::uniform_int_distribution<int> kd(1, spec.n);
        inst.constraint.matroid = uniform_matroid(spec.n, kd(rng));
        break;
      }
      case MatroidType::partition: {
        int blocks = std::max(1, spec.num_blocks);
        std::uniform_int_distribution<int> bd(0, blocks - 1);
        std::vector<int> block_of(spec.n);
        std::vector<int> sizes(blocks, 0);
        for (int i = 0; i < spec.n; ++i) {
          block_of[i] = bd(rng);
          ++sizes[block_of[i]];
        }
        std::vector<int> caps(blocks);
        for (int b = 0; b < blocks; ++b) {
          std::uniform_int_distribution<int> cd(1, std::max(1, sizes[b]));
          caps[b] = cd(rng);
        }
        inst.constraint.matroid = partition_matroid(block_of, caps);
        break;
      }
      case MatroidType::graphic:
        inst.constraint.matroid = graphic_matroid(random_graph(rng, spec.num_vertices, spec.n));
        break;
      case MatroidType::explicit_list:
        throw ParameterError("explicit matroids are not generated");
    }
  }
  if (has_matching(spec.kind)) inst.constraint.graph = random_graph(rng, spec.num_vertices, spec.n);
  return inst;
}

}  // namespace

Instance random_instance(const GenSpec& spec) {
  if (spec.n < 1 || spec.n > 64) throw ParameterError("n must lie in [1, 64]");
  if (spec.denominator < 1) throw ParameterError("denominator must be positive");
  if (spec.kind == ConstraintKind::multibudget && spec.d < 1) throw ParameterError("multibudget needs d >= 1");
  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Instance inst = draw_instance(spec, rng);
    bool some_single = false;
    for (int i = 0; i < inst.n() && !some_single; ++i) some_single = is_feasible(inst, Mask{1} << i);
    if (!some_single) continue;
    inst.meta["seed"] = std::to_string(spec.seed);
    inst.meta["generator"] = "random";
    validate(inst);
    return inst;
  }
  throw ParameterError("generator could not produce a feasible singleton");
}

namespace {

Instance knapsack_base(const KnapsackItems& items) {
  if (items.values.size() != items.weights.size()) throw ParameterError("values and weights differ in length");
  Instance inst;
  inst.constraint.kind = ConstraintKind::budget;
  inst.budgets = {items.capacity};
  for (std::size_t i = 0; i < items.values.size(); ++i) {
    Action a;
    a.index = static_cast<int>(i);
    a.p = items.values[i];
    a.c = 0;
    a.w = {items.weights[i]};
    inst.actions.push_back(std::move(a));
  }
  return inst;
}

}  // namespace

Instance knapsack_hardness_sa_principal(const KnapsackItems& items, const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw ParameterError("eps must lie in (0, 1)");
  Instance inst = knapsack_base(items);
  Rational k = 0;
  for (const auto& v : items.values) k += v;
  Action extra;
  extra.index = inst.n();
  extra.p = 2 * k / (1 - eps);
  extra.c = extra.p / 2;
  extra.w = {Rational(0)};
  inst.actions.push_back(std::move(extra));
  inst.meta["generator"] = "knapsack_hardness_sa_principal";
  inst.meta["K"] = to_string(k);
  validate(inst);
  return inst;
}

Instance knapsack_hardness_sa_agent(const KnapsackItems& items) {
  Instance inst = knapsack_base(items);
  for (auto& a : inst.actions) a.c = a.p / 2;
  inst.meta["generator"] = "knapsack_hardness_sa_agent";
  validate(inst);
  return inst;
}

Instance knapsack_hardness_ma(const KnapsackItems& items, const Rational& eps_prime) {
  if (eps_prime < 0) throw ParameterError("eps_prime must be >= 0");
  Instance inst = knapsack_base(items);
  Rational n = inst.n();
  for (auto& a : inst.actions) a.c = eps_prime * a.p / n;
  inst.mode = Mode::multi_agent;
  inst.meta["generator"] = "knapsack_hardness_ma";
  validate(inst);
  return inst;
}

}  // namespace contract

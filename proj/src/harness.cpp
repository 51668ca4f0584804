#include "contract/harness.hpp"

#include "contract/bm_eptas.hpp"
#include "contract/budget_fptas.hpp"
#include "contract/matroid_exact.hpp"
#include "contract/multi_agent.hpp"
#include "contract/multibudget_ptas.hpp"
#include "contract/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace contract {

using nlohmann::json;

namespace {

Rational json_rational(const json& v) { return v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<int>()); }

ConstraintKind kind_by_name(const std::string& name) {
  for (auto kind : {ConstraintKind::budget, ConstraintKind::multibudget, ConstraintKind::matroid,
                    ConstraintKind::budgeted_matroid, ConstraintKind::matching, ConstraintKind::budgeted_matching}) {
    if (name == kind_name(kind)) return kind;
  }
  throw ParameterError("unknown constraint kind \"" + name + "\"");
}

MatroidType matroid_type_by_name(const std::string& name) {
  if (name == "uniform") return MatroidType::uniform;
  if (name == "partition") return MatroidType::partition;
  if (name == "graphic") return MatroidType::graphic;
  throw ParameterError("unknown generator matroid type \"" + name + "\"");
}

ResultRow evaluate(const Instance& inst, const std::string& id, const std::string& alg, const Rational& eps,
                   std::uint64_t seed) {
  ResultRow row;
  row.instance_id = id;
  row.alg = alg;
  row.eps = eps;
  row.seed = seed;
  try {
    RunOptions options;
    options.seed = seed;
    SolutionReport report = run_algorithm(inst, alg, eps, options);
    row.ms = report.ms;
    row.set_size = static_cast<int>(report.set.size());
    row.u_a = report.u_a;
    row.u_p = report.u_p;
    if (inst.mode == Mode::multi_agent) {
      row.alpha = alpha_digest(report.alpha_vec);
      row.oracle_opt = *g_value(inst, brute_g_max(inst));
      row.oracle_ua = 0;
    } else {
      row.alpha = to_string(report.alpha);
      row.oracle_ua = agent_utility(inst, best_response(inst, report.alpha), report.alpha);
      row.oracle_opt = optimal_contract(inst).value;
    }
    if (row.oracle_ua > 0) row.ratio_a = row.u_a / row.oracle_ua;
    if (row.oracle_opt > 0) row.ratio_p = row.u_p / row.oracle_opt;
  } catch (const std::exception& e) {
    row.error = e.what();
    std::replace(row.error.begin(), row.error.end(), ',', ';');
  }
  return row;
}

}  // namespace

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"bsa-fptas",    "mbsa-ptas", "matroid-opt", "bmatroid-eptas",
                                                 "bmatch-eptas", "bma-fptas", "mbma-ptas"};
  return names;
}

bool is_randomized(const std::string& alg) { return alg == "bmatch-eptas"; }

SolutionReport run_algorithm(const Instance& input, const std::string& alg, const Rational& eps,
                             const RunOptions& options) {
  Instance inst = options.normalize ? normalize_rewards(input) : input;
  if (alg == "matroid-opt") {
    if (inst.constraint.kind != ConstraintKind::matroid || inst.mode != Mode::single_agent) {
      throw IncompatibleError("matroid-opt needs a single-agent matroid instance");
    }
    return matroid_opt_solve(inst);
  }
  if (eps <= 0 || eps >= 1) throw ParameterError("eps must lie in (0, 1)");
  if (alg == "bsa-fptas") {
    if (inst.constraint.kind != ConstraintKind::budget || inst.d() != 1 || inst.mode != Mode::single_agent) {
      throw IncompatibleError("bsa-fptas needs a single-agent instance with one budget");
    }
    return bsa_solve(inst, eps);
  }
  if (alg == "mbsa-ptas") {
    MbsaOptions mo;
    mo.h_override = options.h_override;
    return mbsa_solve(inst, eps, mo);
  }
  if (alg == "bmatroid-eptas" || alg == "bmatch-eptas") {
    auto want = alg == "bmatroid-eptas" ? ConstraintKind::budgeted_matroid : ConstraintKind::budgeted_matching;
    if (inst.constraint.kind != want || inst.mode != Mode::single_agent) {
      throw IncompatibleError(alg + " needs a single-agent " + kind_name(want) + " instance");
    }
    EptasOptions eo;
    eo.seed = options.seed;
    eo.tail_k = options.tail_k;
    return bm_solve(inst, eps, eo);
  }
  if (alg == "bma-fptas") return bma_solve(inst, eps);
  if (alg == "mbma-ptas") return mbma_solve(inst, eps);
  throw ParameterError("unknown algorithm \"" + alg + "\"");
}

VerifyResult verify_report(const Instance& inst, const SolutionReport& report) {
  VerifyResult out;
  Mask s = 0;
  try {
    s = checked_mask(inst, report.set);
  } catch (const std::exception& e) {
    out.witness = {{"reason", "invalid-set"}, {"detail", e.what()}};
    return out;
  }
  if (!is_feasible(inst, s)) {
    out.witness = {{"reason", "infeasible-set"}, {"set", report.set}};
    return out;
  }
  const Rational& eps = report.eps;
  if (inst.mode == Mode::multi_agent) {
    auto g = g_value(inst, s);
    if (!g) {
      out.witness = {{"reason", "agent-cannot-be-paid"}, {"set", report.set}};
      return out;
    }
    if (!equilibrium_holds(inst, report.set, report.alpha_vec)) {
      out.witness = {{"reason", "equilibrium-violated"}, {"set", report.set}};
      return out;
    }
    if (!report.g || *report.g != *g) {
      out.witness = {{"reason", "g-mismatch"}, {"recomputed", to_string(*g)}};
      return out;
    }
    ActionSet star = brute_g_max(inst);
    Rational g_star = *g_value(inst, star);
    if (*g < (1 - eps) * g_star) {
      out.witness = {{"reason", "g-below-guarantee"}, {"g", to_string(*g)}, {"g_star", to_string(g_star)}, {"best_set", star}};
      return out;
    }
    out.ok = true;
    return out;
  }
  Rational ua = agent_utility(inst, s, report.alpha);
  Rational up = principal_utility(inst, s, report.alpha);
  if (ua != report.u_a || up != report.u_p) {
    out.witness = {{"reason", "utility-mismatch"}, {"u_a", to_string(ua)}, {"u_p", to_string(up)}};
    return out;
  }
  IcCheck ic = eps_ic_check(inst, report.set, report.alpha, eps);
  if (!ic.ok) {
    out.witness = {{"reason", "eps-ic-violated"}, {"alpha", to_string(report.alpha)}};
    if (ic.witness) out.witness["deviation"] = *ic.witness;
    return out;
  }
  ContractOptimum opt = optimal_contract(inst);
  if (up < (1 - eps) * opt.value) {
    out.witness = {{"reason", "principal-below-guarantee"}, {"u_p", to_string(up)}, {"opt", to_string(opt.value)},
                   {"opt_alpha", to_string(opt.alpha)}, {"opt_set", opt.set}};
    return out;
  }
  out.ok = true;
  return out;
}

std::vector<AlphaRegion> alpha_regions(const Instance& inst) {
  std::vector<Rational> points;
  if (inst.constraint.kind == ConstraintKind::matroid) {
    points = matroid_breakpoints(inst);
  } else {
    points = envelope_breakpoints(enumerate_feasible(inst));
  }
  points.push_back(0);
  points.push_back(1);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  std::vector<AlphaRegion> out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    Rational mid = (points[i] + points[i + 1]) / 2;
    ActionSet br = best_response(inst, mid);
    if (!out.empty() && out.back().set == br) {
      out.back().hi = points[i + 1];
      continue;
    }
    Mask m = to_mask(br);
    out.push_back(AlphaRegion{points[i], points[i + 1], br, agent_utility(inst, m, points[i]),
                              principal_utility(inst, m, points[i])});
  }
  return out;
}

GenSpec gen_spec_from_json(const json& doc) {
  GenSpec spec;
  if (doc.contains("n")) spec.n = doc["n"].get<int>();
  if (doc.contains("d")) spec.d = doc["d"].get<int>();
  if (doc.contains("kind")) spec.kind = kind_by_name(doc["kind"].get<std::string>());
  if (doc.contains("mode")) spec.mode = doc["mode"].get<std::string>() == "multi_agent" ? Mode::multi_agent : Mode::single_agent;
  if (doc.contains("matroid_type")) spec.matroid_type = matroid_type_by_name(doc["matroid_type"].get<std::string>());
  if (doc.contains("denominator")) spec.denominator = doc["denominator"].get<int>();
  if (doc.contains("p_lo")) spec.p_lo = json_rational(doc["p_lo"]);
  if (doc.contains("p_hi")) spec.p_hi = json_rational(doc["p_hi"]);
  if (doc.contains("c_lo")) spec.c_lo = json_rational(doc["c_lo"]);
  if (doc.contains("c_hi")) spec.c_hi = json_rational(doc["c_hi"]);
  if (doc.contains("w_lo")) spec.w_lo = json_rational(doc["w_lo"]);
  if (doc.contains("w_hi")) spec.w_hi = json_rational(doc["w_hi"]);
  if (doc.contains("budget_fraction")) spec.budget_fraction = json_rational(doc["budget_fraction"]);
  if (doc.contains("num_vertices")) spec.num_vertices = doc["num_vertices"].get<int>();
  if (doc.contains("num_blocks")) spec.num_blocks = doc["num_blocks"].get<int>();
  if (doc.contains("seed")) spec.seed = doc["seed"].get<std::uint64_t>();
  return spec;
}

std::vector<ResultRow> run_sweep(const json& config, int jobs) {
  struct Task {
    std::string id;
    Instance inst;
    std::string alg;
    Rational eps;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  std::vector<std::string> algs = config.value("algorithms", std::vector<std::string>{});
  std::vector<Rational> epss;
  for (const auto& e : config.value("eps", json::array())) epss.push_back(json_rational(e));
  int gen_index = 0;
  for (const auto& gen : config.value("generators", json::array())) {
    GenSpec spec = gen_spec_from_json(gen);
    int count = gen.value("count", 1);
    std::string prefix = gen.value("id", "gen" + std::to_string(gen_index));
    for (int i = 0; i < count; ++i) {
      GenSpec one = spec;
      one.seed = spec.seed + static_cast<std::uint64_t>(i);
      Instance inst = random_instance(one);
      std::string id = prefix + "-" + std::to_string(one.seed);
      for (const auto& alg : algs) {
        for (const auto& eps : epss) tasks.push_back(Task{id, inst, alg, eps, one.seed});
      }
    }
    ++gen_index;
  }
  std::vector<ResultRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      rows[i] = evaluate(t.inst, t.id, t.alg, t.eps, t.seed);
    }
  };
  int threads = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < threads; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace contract

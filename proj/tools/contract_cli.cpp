#include "contract/harness.hpp"
#include "contract/io.hpp"
#include "contract/rational.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace contract;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitIncompatible = 2;
constexpr int kExitParse = 3;

struct SolveArgs {
  std::string alg;
  std::string eps = "1/10";
  std::string input;
  std::uint64_t seed = 1;
  bool normalize = false;
  std::optional<int> h_override;
  int tail_k = 5;
};

RunOptions run_options(const SolveArgs& a) {
  RunOptions o;
  o.seed = a.seed;
  o.normalize = a.normalize;
  o.h_override = a.h_override;
  o.tail_k = a.tail_k;
  return o;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// Loads the instance and eps; prints the error and returns the exit code on failure.
std::optional<int> load(const SolveArgs& a, Instance& inst, Rational& eps) {
  try {
    inst = parse_instance(a.input);
    eps = parse_rational(a.eps);
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  return std::nullopt;
}

int run_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kExitIncompatible;
}

int cmd_solve(const SolveArgs& a) {
  Instance inst;
  Rational eps;
  if (auto code = load(a, inst, eps)) return *code;
  try {
    SolutionReport report = run_algorithm(inst, a.alg, eps, run_options(a));
    json doc = report_to_json(report);
    doc["seed"] = a.seed;
    std::cout << doc.dump(2) << "\n";
  } catch (const std::exception& e) {
    return run_error(e);
  }
  return kExitOk;
}

int cmd_verify(const SolveArgs& a, const std::string& report_path, int seeds) {
  Instance inst;
  Rational eps;
  if (auto code = load(a, inst, eps)) return *code;
  if (!report_path.empty()) {
    SolutionReport report;
    try {
      report = report_from_json(read_json_file(report_path));
    } catch (const std::exception& e) {
      std::cerr << "parse error: " << e.what() << "\n";
      return kExitParse;
    }
    try {
      VerifyResult v = verify_report(inst, report);
      if (!v.ok) {
        std::cout << json{{"ok", false}, {"witness", v.witness}}.dump(2) << "\n";
        return kExitViolation;
      }
      std::cout << json{{"ok", true}}.dump() << "\n";
    } catch (const std::exception& e) {
      return run_error(e);
    }
    return kExitOk;
  }
  try {
    int runs = is_randomized(a.alg) ? seeds : 1;
    int passed = 0;
    bool all_feasible = true;
    json failures = json::array();
    for (int k = 0; k < runs; ++k) {
      RunOptions o = run_options(a);
      o.seed = a.seed + static_cast<std::uint64_t>(k);
      SolutionReport report = run_algorithm(inst, a.alg, eps, o);
      const Instance checked = a.normalize ? normalize_rewards(inst) : inst;
      VerifyResult v = verify_report(checked, report);
      if (v.ok) {
        ++passed;
      } else {
        if (v.witness.value("reason", "") == "infeasible-set") all_feasible = false;
        if (failures.size() < 5) failures.push_back({{"seed", o.seed}, {"witness", v.witness}});
      }
    }
    bool ok = is_randomized(a.alg) ? all_feasible && passed * 10 >= runs * 9 : passed == runs;
    json doc = {{"ok", ok}, {"passed", passed}, {"runs", runs}};
    if (!failures.empty()) doc["failures"] = failures;
    if (is_randomized(a.alg)) std::cerr << "pass rate " << passed << "/" << runs << "\n";
    std::cout << doc.dump(2) << "\n";
    return ok ? kExitOk : kExitViolation;
  } catch (const std::exception& e) {
    return run_error(e);
  }
}

int cmd_sweep(const std::string& config_path, const std::string& output, int jobs) {
  json config;
  try {
    config = read_json_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    auto rows = run_sweep(config, jobs);
    std::ostringstream out;
    out << csv_header() << "\n";
    for (const auto& row : rows) out << csv_line(row) << "\n";
    if (output.empty()) {
      std::cout << out.str();
    } else {
      std::ofstream(output) << out.str();
    }
  } catch (const std::exception& e) {
    return run_error(e);
  }
  return kExitOk;
}

int cmd_breakpoints(const std::string& input) {
  Instance inst;
  try {
    inst = parse_instance(input);
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    std::cout << "alpha_lo\talpha_hi\tset\tu_a\tu_p\n";
    for (const auto& r : alpha_regions(inst)) {
      std::cout << to_string(r.lo) << "\t" << to_string(r.hi) << "\t" << json(r.set).dump() << "\t" << to_string(r.u_a)
                << "\t" << to_string(r.u_p) << "\n";
    }
  } catch (const std::exception& e) {
    return run_error(e);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear contract design under combinatorial constraints"};
  app.require_subcommand(1);

  SolveArgs args;
  auto add_solve_flags = [&](CLI::App* sub, bool need_alg) {
    auto* alg = sub->add_option("--alg", args.alg, "Algorithm")->check(CLI::IsMember(algorithm_names()));
    if (need_alg) alg->required();
    sub->add_option("--eps", args.eps, "Accuracy in (0, 1), as a/b or decimal");
    sub->add_option("--input", args.input, "Instance JSON")->required();
    sub->add_option("--seed", args.seed, "Random seed");
    sub->add_flag("--normalize", args.normalize, "Scale rewards to sum to 1");
    sub->add_option("--h-override", args.h_override, "Guess size for mbsa-ptas");
    sub->add_option("--tail-k", args.tail_k, "Low-profit tail constant for bmatch-eptas");
  };

  auto* solve = app.add_subcommand("solve", "Solve an instance and print the report");
  add_solve_flags(solve, true);

  std::string report_path;
  int seeds = 200;
  auto* verify = app.add_subcommand("verify", "Check a report (or a fresh solve) against the exact oracles");
  add_solve_flags(verify, false);
  verify->add_option("--report", report_path, "Report JSON to check instead of solving");
  verify->add_option("--seeds", seeds, "Seeds for randomized algorithms");

  std::string config_path, output;
  int jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Run generators x algorithms x eps and write CSV");
  sweep->add_option("--config", config_path, "Sweep configuration JSON")->required();
  sweep->add_option("--output", output, "CSV path (stdout when omitted)");
  sweep->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  std::string bp_input;
  auto* breakpoints = app.add_subcommand("breakpoints", "Print best-response regions over alpha");
  breakpoints->add_option("--input", bp_input, "Instance JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitIncompatible;
  }

  if (solve->parsed()) return cmd_solve(args);
  if (verify->parsed()) {
    if (report_path.empty() && args.alg.empty()) {
      std::cerr << "verify needs --report or --alg\n";
      return kExitIncompatible;
    }
    return cmd_verify(args, report_path, seeds);
  }
  if (sweep->parsed()) return cmd_sweep(config_path, output, jobs);
  if (breakpoints->parsed()) return cmd_breakpoints(bp_input);
  return kExitIncompatible;
}

#pragma once

#include "contract/instance_gen.hpp"
#include "contract/io.hpp"
#include "contract/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace contract {

struct RunOptions {
  std::uint64_t seed = 1;
  bool normalize = false;
  std::optional<int> h_override;
  int tail_k = 5;
};

const std::vector<std::string>& algorithm_names();
bool is_randomized(const std::string& alg);

// Dispatches by name. Unknown names throw ParameterError; kind mismatches IncompatibleError.
SolutionReport run_algorithm(const Instance& inst, const std::string& alg, const Rational& eps,
                             const RunOptions& options = {});

struct VerifyResult {
  bool ok = false;
  nlohmann::json witness;  // reason and offending values when !ok
};

// Feasibility, utility bookkeeping, eps-IC and u_p >= (1-eps) OPT (g >= (1-eps) g* for multi-agent).
VerifyResult verify_report(const Instance& inst, const SolutionReport& report);

struct AlphaRegion {
  Rational lo;
  Rational hi;
  ActionSet set;  // best response inside the region
  Rational u_a;   // at lo
  Rational u_p;   // at lo
};

// Regions of constant best response over [0, 1], split at the candidate breakpoints.
std::vector<AlphaRegion> alpha_regions(const Instance& inst);

// config: {"generators":[{GenSpec fields, "count":N, "id":"..."}], "algorithms":[...], "eps":["1/10",...]}
std::vector<ResultRow> run_sweep(const nlohmann::json& config, int jobs = 1);

GenSpec gen_spec_from_json(const nlohmann::json& doc);

}  // namespace contract

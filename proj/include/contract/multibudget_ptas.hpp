#pragma once

#include "contract/model.hpp"

#include <optional>

namespace contract {

struct ExclusionSets {
  ActionSet e1;  // outside S1 with p_i > p_min(S1)
  ActionSet e2;  // outside S2 with q_i > q_min(S2)
};

ExclusionSets exclusion_sets(const Instance& inst, const Rational& alpha, const ActionSet& s1, const ActionSet& s2);

struct MbsaOptions {
  std::optional<int> h_override;
};

struct MbsaStats {
  long long lp_solves = 0;
  int max_fractional = 0;
  int fractional_bound = 0;  // d + 1
};

// Guess sizes used for eps: ceil((d + 1) / eps) unless overridden.
int mbsa_guess_size(const Instance& inst, const Rational& eps, const MbsaOptions& options = {});

std::optional<ActionSet> mbsa_local(const Instance& inst, const Rational& alpha, const Rational& R, const Rational& eps,
                                    const MbsaOptions& options = {}, MbsaStats* stats = nullptr);

SolutionReport mbsa_solve(const Instance& inst, const Rational& eps, const MbsaOptions& options = {},
                          MbsaStats* stats = nullptr);

}  // namespace contract

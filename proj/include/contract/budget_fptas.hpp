#pragma once

#include "contract/model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace contract {

// Classic profit-rounding knapsack FPTAS; returns indices into values.
ActionSet knapsack_fptas(const std::vector<Rational>& values, const std::vector<Rational>& weights,
                         const Rational& capacity, const Rational& eps);

// Rounded view for one (b, r) guess. Only actions with 0 <= q_i <= r and p_i <= b take part.
struct RoundedInstance {
  Rational delta;
  Rational b;
  Rational r;
  std::vector<int> items;
  std::vector<long long> p_units;  // p~_i = p_units * delta * b
  std::vector<long long> q_units;  // q~_i = q_units * delta * r
  Rational p_step() const { return delta * b; }
  Rational q_step() const { return delta * r; }
};

RoundedInstance round_instance(const Instance& inst, const Rational& alpha, const Rational& b, const Rational& r,
                               const Rational& delta);

// Max p~(S) subject to q~(S) >= the smallest grid point >= bound and w(S) <= W; nullopt when nothing qualifies.
std::optional<ActionSet> bsa_dp(const Instance& inst, const Rational& alpha, const Rational& b, const Rational& r,
                                const Rational& bound, const Rational& delta);

struct BsaDpCall {
  Rational alpha;
  Rational b;
  Rational r;
  Rational bound;
  Rational delta;
};

// Receives the arguments of every rounded DP the local solver runs.
using BsaDpObserver = std::function<void(const BsaDpCall&)>;

ActionSet bsa_local(const Instance& inst, const Rational& alpha, const Rational& eps,
                    const BsaDpObserver& observer = nullptr);

SolutionReport bsa_solve(const Instance& inst, const Rational& eps);

}  // namespace contract

#pragma once

#include "contract/model.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace contract {

// Malformed JSON or a field of the wrong shape.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json instance_to_json(const Instance& inst);
// Validates the result; field errors throw ParseError, invariant errors std::invalid_argument.
Instance instance_from_json(const nlohmann::json& doc);

Instance parse_instance_text(const std::string& text);
Instance parse_instance(const std::string& path);
std::string serialize_instance(const Instance& inst);

nlohmann::json report_to_json(const SolutionReport& report);
SolutionReport report_from_json(const nlohmann::json& doc);

bool same_instance(const Instance& a, const Instance& b);
bool same_report(const SolutionReport& a, const SolutionReport& b);

struct ResultRow {
  std::string instance_id;
  std::string alg;
  Rational eps;
  std::string alpha;  // rational, or a digest of the contract vector
  int set_size = 0;
  Rational u_a;
  Rational u_p;
  Rational oracle_ua;
  Rational oracle_opt;
  std::optional<Rational> ratio_a;  // empty when the oracle value is zero
  std::optional<Rational> ratio_p;
  std::uint64_t seed = 0;
  double ms = 0;
  std::string error;
};

std::string csv_header();
std::string csv_line(const ResultRow& row);

// Short stable digest of a contract vector.
std::string alpha_digest(const std::vector<Rational>& alpha_vec);

}  // namespace contract

#include "contract/harness.hpp"
#include "contract/instance_gen.hpp"
#include "contract/io.hpp"
#include "contract/matroid_exact.hpp"
#include "contract/oracle.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

#include <sstream>

using namespace contract;
using namespace testing_support;
using nlohmann::json;

namespace {

int count_lines(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

TEST_CASE("parse_instance_text examples") {
  Instance one = parse_instance_text(R"({"actions":[{"p":"1/2","c":"0.1","w":["1"]}],"budgets":["1"],
                                         "constraint":{"kind":"budget"}})");
  CHECK(one.n() == 1);
  CHECK(one.actions[0].c == Q(1, 10));
  CHECK(one.mode == Mode::single_agent);

  try {
    parse_instance_text(R"({"actions":[{"p":"1","c":"0","w":["1"]},{"p":"1","c":"0","w":["1","2"]}],
                            "budgets":["1"],"constraint":{"kind":"budget"}})");
    FAIL("mismatched dimensions accepted");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }

  CHECK_THROWS(parse_instance_text(R"({"actions":[{"p":"1","c":"0"},{"p":"1","c":"0"}],"budgets":[],
                                      "constraint":{"kind":"matroid","matroid":{"type":"uniform","k":3}}})"));
  CHECK_THROWS_AS(parse_instance_text("{not json"), ParseError);
  CHECK_THROWS_AS(parse_instance_text(R"({"actions":[{"p":[7],"c":"0","w":["1"]}],"budgets":["1"],
                                         "constraint":{"kind":"budget"}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance_text(R"({"actions":[{"p":"1","c":"0","w":["1"]}],"budgets":["1"],
                                         "constraint":{"kind":"nonsense"}})"),
                  ParseError);
}

TEST_CASE("property: instance serialization round-trips for every kind") {
  for (auto kind : {ConstraintKind::budget, ConstraintKind::multibudget, ConstraintKind::matroid,
                    ConstraintKind::budgeted_matroid, ConstraintKind::matching, ConstraintKind::budgeted_matching}) {
    for (int s = 0; s < 9; ++s) {
      GenSpec spec;
      spec.n = 6;
      spec.d = kind == ConstraintKind::multibudget ? 2 : 1;
      spec.kind = kind;
      spec.matroid_type = static_cast<MatroidType>(s % 3);
      spec.mode = s % 2 && !has_matroid(kind) && !has_matching(kind) ? Mode::multi_agent : Mode::single_agent;
      spec.seed = 900 + s;
      Instance inst = random_instance(spec);
      Instance back = parse_instance_text(serialize_instance(inst));
      CHECK(same_instance(inst, back));
      CHECK(serialize_instance(back) == serialize_instance(inst));
    }
  }
  Instance ex = rank_one_pair();
  ex.constraint.matroid = MatroidSpec{};
  ex.constraint.matroid.type = MatroidType::explicit_list;
  ex.constraint.matroid.ground_size = 2;
  ex.constraint.matroid.independent = {0, 1, 2};
  CHECK(same_instance(ex, parse_instance_text(serialize_instance(ex))));
}

TEST_CASE("property: report serialization round-trips") {
  for (int s = 0; s < 20; ++s) {
    GenSpec spec;
    spec.n = 5;
    spec.seed = 950 + s;
    Instance inst = random_instance(spec);
    SolutionReport r = run_algorithm(inst, "bsa-fptas", Q(1, 3));
    CHECK(same_report(r, report_from_json(report_to_json(r))));
  }
  GenSpec ma;
  ma.n = 4;
  ma.mode = Mode::multi_agent;
  ma.seed = 3;
  SolutionReport m = run_algorithm(random_instance(ma), "bma-fptas", Q(1, 2));
  CHECK(same_report(m, report_from_json(report_to_json(m))));
}

TEST_CASE("run_algorithm dispatch errors") {
  CHECK_THROWS_AS(run_algorithm(e1(), "matroid-opt", Q(1, 2)), IncompatibleError);
  CHECK_THROWS_AS(run_algorithm(e1(), "no-such-alg", Q(1, 2)), ParameterError);
  CHECK_THROWS_AS(run_algorithm(e1(), "bsa-fptas", Q(0)), ParameterError);
  GenSpec spec;
  spec.kind = ConstraintKind::budgeted_matching;
  CHECK_THROWS_AS(run_algorithm(random_instance(spec), "bsa-fptas", Q(1, 2)), IncompatibleError);
  CHECK(run_algorithm(rank_one_pair(), "matroid-opt", Q(1, 2)).u_p == Q(3, 4));
  CHECK(is_randomized("bmatch-eptas"));
  CHECK_FALSE(is_randomized("bsa-fptas"));
}

TEST_CASE("verify_report examples") {
  SolutionReport exact = run_algorithm(rank_one_pair(), "matroid-opt", Q(1, 2));
  CHECK(verify_report(rank_one_pair(), exact).ok);
  Instance e = e1();
  SolutionReport r = run_algorithm(e, "bsa-fptas", Q(1, 10));
  CHECK(verify_report(e, r).ok);
  SolutionReport bad = r;
  bad.set = {0, 1, 2};
  VerifyResult v = verify_report(e, bad);
  CHECK_FALSE(v.ok);
  CHECK(v.witness.contains("reason"));
  SolutionReport lie = r;
  lie.u_p += 1;
  CHECK_FALSE(verify_report(e, lie).ok);
  SolutionReport poor = r;
  poor.set = {};
  poor.alpha = 1;
  fill_utilities(e, poor);
  CHECK_FALSE(verify_report(e, poor).ok);
}

TEST_CASE("alpha_regions examples") {
  auto one = alpha_regions(single_action("1", "1/4"));
  REQUIRE(one.size() == 2);
  CHECK(one[0].set.empty());
  CHECK(one[0].hi == Q(1, 4));
  CHECK(one[1].set == ActionSet{0});
  CHECK(one[1].hi == 1);

  Instance same = make_instance({"1/2", "1/2"}, {"0", "0"}, {{}, {}}, {}, ConstraintKind::matroid);
  same.constraint.matroid = uniform_matroid(2, 1);
  auto s = alpha_regions(same);
  REQUIRE(s.size() == 1);
  CHECK(s[0].lo == 0);
  CHECK(s[0].hi == 1);

  auto pair = alpha_regions(rank_one_pair());
  REQUIRE(pair.size() == 3);
  CHECK(pair[0].set.empty());
  CHECK(pair[0].hi == Q(1, 6));
  CHECK(pair[1].set == ActionSet{1});
  CHECK(pair[1].hi == Q(1, 4));
  CHECK(pair[2].set == ActionSet{0});
}

TEST_CASE("csv header and rows") {
  CHECK(csv_header() == "instance_id,alg,eps,alpha,set_size,u_a,u_p,oracle_ua,oracle_opt,ratio_a,ratio_p,seed,ms,error");
  ResultRow row;
  row.instance_id = "x-1";
  row.alg = "bsa-fptas";
  row.eps = Q(1, 10);
  row.alpha = "1/2";
  row.set_size = 2;
  row.u_a = Q(3, 10);
  row.u_p = Q(9, 20);
  row.oracle_ua = Q(3, 10);
  row.oracle_opt = Q(9, 20);
  row.ratio_a = Rational(1);
  row.ratio_p = Q(1, 3);
  auto cells = split(csv_line(row));
  REQUIRE(cells.size() == 14);
  CHECK(cells[5] == "3/10");
  CHECK(cells[10] == "0.333333333333");
  CHECK(alpha_digest({Q(1, 2)}) == alpha_digest({Q(1, 2)}));
  CHECK(alpha_digest({Q(1, 2)}) != alpha_digest({Q(1, 3)}));
}

TEST_CASE("run_sweep examples") {
  CHECK(run_sweep(json::object()).empty());
  json config = {{"generators", json::array({{{"n", 5}, {"count", 10}, {"seed", 40}, {"id", "b"}}})},
                 {"algorithms", {"bsa-fptas", "mbsa-ptas"}},
                 {"eps", {"3/10"}}};
  auto rows = run_sweep(config, 2);
  CHECK(rows.size() == 20);
  std::ostringstream csv;
  csv << csv_header() << '\n';
  for (const auto& r : rows) csv << csv_line(r) << '\n';
  CHECK(count_lines(csv.str()) == 21);
  for (const auto& r : rows) {
    CHECK(r.error.empty());
    REQUIRE(r.ratio_p.has_value());
    CHECK(*r.ratio_p >= 1 - r.eps);
    // Rows re-verify: regenerate the instance, rerun, and recompute utilities.
    GenSpec spec;
    spec.n = 5;
    spec.seed = r.seed;
    Instance inst = random_instance(spec);
    SolutionReport again = run_algorithm(inst, r.alg, r.eps);
    CHECK(to_string(again.alpha) == r.alpha);
    CHECK(agent_utility(inst, to_mask(again.set), again.alpha) == r.u_a);
    CHECK(principal_utility(inst, to_mask(again.set), again.alpha) == r.u_p);
  }
  json broken = {{"generators", json::array({{{"n", 4}, {"count", 1}, {"kind", "matroid"}, {"d", 0}}})},
                 {"algorithms", {"bsa-fptas"}},
                 {"eps", {"1/2"}}};
  auto err = run_sweep(broken);
  REQUIRE(err.size() == 1);
  CHECK_FALSE(err[0].error.empty());
}

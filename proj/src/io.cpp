#include "contract/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace contract {

using nlohmann::json;

namespace {

Rational read_rational(const json& v, const std::string& field) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  } catch (const std::invalid_argument& e) {
    throw ParseError(field + ": " + e.what());
  }
  throw ParseError(field + ": expected a rational string");
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

int read_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ParseError(field + ": expected an integer");
  return v.get<int>();
}

json rationals_to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

std::vector<Rational> rationals_from_json(const json& v, const std::string& field) {
  if (!v.is_array()) throw ParseError(field + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(read_rational(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

json edges_to_json(const Graph& g) {
  json out = json::array();
  for (const auto& [u, v] : g.edges) out.push_back({u, v});
  return out;
}

Graph graph_from_json(const json& obj, const std::string& where) {
  Graph g;
  g.num_vertices = read_int(member(obj, "num_vertices", where), where + ".num_vertices");
  const json& edges = member(obj, "edges", where);
  if (!edges.is_array()) throw ParseError(where + ".edges: expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    std::string f = where + ".edges[" + std::to_string(i) + "]";
    if (!edges[i].is_array() || edges[i].size() != 2) throw ParseError(f + ": expected [u, v]");
    g.edges.emplace_back(read_int(edges[i][0], f), read_int(edges[i][1], f));
  }
  return g;
}

json matroid_to_json(const MatroidSpec& m) {
  switch (m.type) {
    case MatroidType::uniform: return {{"type", "uniform"}, {"k", m.k}};
    case MatroidType::partition: return {{"type", "partition"}, {"blocks", m.block_of}, {"capacities", m.capacities}};
    case MatroidType::graphic:
      return {{"type", "graphic"}, {"num_vertices", m.graph.num_vertices}, {"edges", edges_to_json(m.graph)}};
    case MatroidType::explicit_list: {
      json sets = json::array();
      for (Mask s : m.independent) sets.push_back(from_mask(s));
      return {{"type", "explicit"}, {"independent", sets}};
    }
  }
  return {};
}

MatroidSpec matroid_from_json(const json& obj, int n) {
  const std::string where = "constraint.matroid";
  std::string type = member(obj, "type", where).get<std::string>();
  if (type == "uniform") {
    MatroidSpec m = uniform_matroid(n, read_int(member(obj, "k", where), where + ".k"));
    return m;
  }
  if (type == "partition") {
    auto blocks = member(obj, "blocks", where).get<std::vector<int>>();
    auto caps = member(obj, "capacities", where).get<std::vector<int>>();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (blocks[i] < 0 || blocks[i] >= static_cast<int>(caps.size())) {
        throw std::invalid_argument(where + ".blocks[" + std::to_string(i) + "]: block id out of range");
      }
    }
    return partition_matroid(blocks, caps);
  }
  if (type == "graphic") {
    Graph g = graph_from_json(obj, where);
    for (const auto& [u, v] : g.edges) {
      if (u < 0 || v < 0 || u >= g.num_vertices || v >= g.num_vertices) {
        throw std::invalid_argument(where + ".edges: endpoint out of range");
      }
    }
    return graphic_matroid(g);
  }
  if (type == "explicit") {
    if (n > 16) throw std::invalid_argument(where + ": explicit matroid limited to 16 actions");
    std::vector<Mask> sets;
    for (const auto& s : member(obj, "independent", where)) {
      ActionSet members = s.get<ActionSet>();
      for (int i : members) {
        if (i < 0 || i >= n) throw std::invalid_argument(where + ".independent: element out of range");
      }
      sets.push_back(to_mask(members));
    }
    return explicit_matroid(n, sets);
  }
  throw ParseError(where + ".type: unknown matroid type \"" + type + "\"");
}

ConstraintKind kind_from_name(const std::string& name) {
  for (auto kind : {ConstraintKind::budget, ConstraintKind::multibudget, ConstraintKind::matroid,
                    ConstraintKind::budgeted_matroid, ConstraintKind::matching, ConstraintKind::budgeted_matching}) {
    if (name == kind_name(kind)) return kind;
  }
  throw ParseError("constraint.kind: unknown kind \"" + name + "\"");
}

bool same_graph(const Graph& a, const Graph& b) { return a.num_vertices == b.num_vertices && a.edges == b.edges; }

bool same_matroid(const MatroidSpec& a, const MatroidSpec& b) {
  return a.type == b.type && a.ground_size == b.ground_size && a.k == b.k && a.block_of == b.block_of &&
         a.capacities == b.capacities && same_graph(a.graph, b.graph) && a.independent == b.independent &&
         a.loops == b.loops;
}

std::string ratio_text(const std::optional<Rational>& r) { return r ? to_decimal(*r, 12) : std::string(); }

}  // namespace

json instance_to_json(const Instance& inst) {
  json doc;
  doc["actions"] = json::array();
  for (const auto& a : inst.actions) {
    doc["actions"].push_back({{"p", to_string(a.p)}, {"c", to_string(a.c)}, {"w", rationals_to_json(a.w)}});
  }
  doc["budgets"] = rationals_to_json(inst.budgets);
  json con = {{"kind", kind_name(inst.constraint.kind)}};
  if (has_matroid(inst.constraint.kind)) con["matroid"] = matroid_to_json(inst.constraint.matroid);
  if (has_matching(inst.constraint.kind)) {
    con["num_vertices"] = inst.constraint.graph.num_vertices;
    con["edges"] = edges_to_json(inst.constraint.graph);
  }
  doc["constraint"] = con;
  doc["mode"] = mode_name(inst.mode);
  doc["meta"] = inst.meta;
  return doc;
}

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("document: expected an object");
  Instance inst;
  try {
    const json& actions = member(doc, "actions", "document");
    if (!actions.is_array()) throw ParseError("actions: expected an array");
    for (std::size_t i = 0; i < actions.size(); ++i) {
      std::string where = "actions[" + std::to_string(i) + "]";
      Action a;
      a.index = static_cast<int>(i);
      a.p = read_rational(member(actions[i], "p", where), where + ".p");
      a.c = read_rational(member(actions[i], "c", where), where + ".c");
      if (actions[i].contains("w")) a.w = rationals_from_json(actions[i]["w"], where + ".w");
      inst.actions.push_back(std::move(a));
    }
    if (doc.contains("budgets")) inst.budgets = rationals_from_json(doc["budgets"], "budgets");
    for (const auto& a : inst.actions) {
      if (a.w.size() != inst.budgets.size()) {
        throw std::invalid_argument("actions[" + std::to_string(a.index) + "].w: length " +
                                    std::to_string(a.w.size()) + " differs from " +
                                    std::to_string(inst.budgets.size()) + " budgets");
      }
    }
    const json& con = member(doc, "constraint", "document");
    inst.constraint.kind = kind_from_name(member(con, "kind", "constraint").get<std::string>());
    if (has_matroid(inst.constraint.kind)) {
      inst.constraint.matroid = matroid_from_json(member(con, "matroid", "constraint"), inst.n());
    }
    if (has_matching(inst.constraint.kind)) inst.constraint.graph = graph_from_json(con, "constraint");
    std::string mode = doc.value("mode", std::string("single_agent"));
    if (mode == "single_agent") {
      inst.mode = Mode::single_agent;
    } else if (mode == "multi_agent") {
      inst.mode = Mode::multi_agent;
    } else {
      throw ParseError("mode: unknown mode \"" + mode + "\"");
    }
    if (doc.contains("meta")) {
      for (const auto& [key, value] : doc["meta"].items()) {
        inst.meta[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed field: ") + e.what());
  }
  validate(inst);
  return inst;
}

Instance parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return instance_from_json(doc);
}

Instance parse_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_text(buffer.str());
}

std::string serialize_instance(const Instance& inst) { return instance_to_json(inst).dump(2); }

json report_to_json(const SolutionReport& report) {
  json doc;
  doc["set"] = report.set;
  doc["alpha"] = to_string(report.alpha);
  if (!report.alpha_vec.empty()) doc["alpha_vec"] = rationals_to_json(report.alpha_vec);
  doc["u_a"] = to_string(report.u_a);
  doc["u_p"] = to_string(report.u_p);
  if (report.g) doc["g"] = to_string(*report.g);
  doc["algorithm"] = report.algorithm;
  doc["eps"] = to_string(report.eps);
  doc["ms"] = report.ms;
  doc["flags"] = report.flags;
  return doc;
}

SolutionReport report_from_json(const json& doc) {
  SolutionReport r;
  try {
    r.set = member(doc, "set", "report").get<ActionSet>();
    r.alpha = read_rational(member(doc, "alpha", "report"), "alpha");
    if (doc.contains("alpha_vec")) r.alpha_vec = rationals_from_json(doc["alpha_vec"], "alpha_vec");
    r.u_a = read_rational(member(doc, "u_a", "report"), "u_a");
    r.u_p = read_rational(member(doc, "u_p", "report"), "u_p");
    if (doc.contains("g")) r.g = read_rational(doc["g"], "g");
    r.algorithm = doc.value("algorithm", std::string());
    if (doc.contains("eps")) r.eps = read_rational(doc["eps"], "eps");
    r.ms = doc.value("ms", 0.0);
    if (doc.contains("flags")) r.flags = doc["flags"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return r;
}

bool same_instance(const Instance& a, const Instance& b) {
  if (a.n() != b.n() || a.budgets != b.budgets || a.mode != b.mode || a.meta != b.meta) return false;
  for (int i = 0; i < a.n(); ++i) {
    const Action& x = a.actions[i];
    const Action& y = b.actions[i];
    if (x.index != y.index || x.p != y.p || x.c != y.c || x.w != y.w) return false;
  }
  const auto& ca = a.constraint;
  const auto& cb = b.constraint;
  if (ca.kind != cb.kind) return false;
  if (has_matroid(ca.kind) && !same_matroid(ca.matroid, cb.matroid)) return false;
  if (has_matching(ca.kind) && !same_graph(ca.graph, cb.graph)) return false;
  return true;
}

bool same_report(const SolutionReport& a, const SolutionReport& b) {
  return a.set == b.set && a.alpha == b.alpha && a.alpha_vec == b.alpha_vec && a.u_a == b.u_a && a.u_p == b.u_p &&
         a.g == b.g && a.algorithm == b.algorithm && a.eps == b.eps && a.ms == b.ms && a.flags == b.flags;
}

std::string csv_header() {
  return "instance_id,alg,eps,alpha,set_size,u_a,u_p,oracle_ua,oracle_opt,ratio_a,ratio_p,seed,ms,error";
}

std::string csv_line(const ResultRow& row) {
  std::ostringstream out;
  out << row.instance_id << ',' << row.alg << ',' << to_string(row.eps) << ',' << row.alpha << ',' << row.set_size
      << ',' << to_string(row.u_a) << ',' << to_string(row.u_p) << ',' << to_string(row.oracle_ua) << ','
      << to_string(row.oracle_opt) << ',' << ratio_text(row.ratio_a) << ',' << ratio_text(row.ratio_p) << ','
      << row.seed << ',' << std::fixed << std::setprecision(3) << row.ms << ',' << row.error;
  return out.str();
}

std::string alpha_digest(const std::vector<Rational>& alpha_vec) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& a : alpha_vec) {
    for (char ch : to_string(a) + ";") {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ULL;
    }
  }
  std::ostringstream out;
  out << "vec:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace contract

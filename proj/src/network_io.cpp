#include "deltacf/network_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace deltacf {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::schema, "schema error at " + path + ": " + message);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw Error(ErrorCode::schema,
                "JSON syntax error at line " + std::to_string(line) + ": " + e.what());
  }
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
}

void reject_unknown(const json& j, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      schema_error(path + "." + key, "unknown field");
    }
  }
}

const json& field(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) schema_error(path + "." + key, "missing required field");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

std::string string_field(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

std::pair<double, double> number_pair(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) schema_error(path, "expected an array of two numbers");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

void check_format(const json& doc) {
  const auto& f = field(doc, "$", "format");
  if (!f.is_string() || f.get<std::string>() != kFormatTag) {
    schema_error("$.format", "expected \"" + std::string(kFormatTag) + "\"");
  }
}

Interpretation parse_interpretation(const json& j, const std::string& path) {
  try {
    return Interpretation::parse(string_field(j, path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema) throw;
    schema_error(path, e.what());
  }
}

Rule parse_rule(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"evidence", "hypothesis", "strength"});
  auto evidence = string_field(field(j, path, "evidence"), path + ".evidence");
  auto hypothesis = string_field(field(j, path, "hypothesis"), path + ".hypothesis");
  const auto spath = path + ".strength";
  const auto& s = field(j, path, "strength");
  require_object(s, spath);

  const bool has_lambda = s.contains("lambda");
  const bool has_delta = s.contains("delta");
  const bool has_cond = s.contains("conditionals");
  if (has_lambda + has_delta + has_cond != 1) {
    schema_error(spath, "exactly one of lambda, delta, conditionals is required");
  }
  try {
    if (has_lambda) {
      reject_unknown(s, spath, {"lambda"});
      auto [a, b] = number_pair(s["lambda"], spath + ".lambda");
      return Rule::from_lambda(std::move(evidence), std::move(hypothesis), a, b);
    }
    if (has_delta) {
      reject_unknown(s, spath, {"delta", "interpretation"});
      auto [a, b] = number_pair(s["delta"], spath + ".delta");
      const auto interp =
          parse_interpretation(field(s, spath, "interpretation"), spath + ".interpretation");
      return Rule::from_delta(std::move(evidence), std::move(hypothesis), interp, a, b);
    }
    reject_unknown(s, spath, {"conditionals"});
    auto [a, b] = number_pair(s["conditionals"], spath + ".conditionals");
    return Rule::from_conditionals(std::move(evidence), std::move(hypothesis), a, b);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema) throw;
    schema_error(spath, e.what());
  }
}

json strength_to_json(const Rule& r) {
  const auto& d = r.declared();
  json s = json::object();
  switch (d.form) {
    case DeclaredStrength::Form::lambda:
      s["lambda"] = {d.first, d.second};
      break;
    case DeclaredStrength::Form::delta:
      s["delta"] = {d.first, d.second};
      s["interpretation"] = d.interpretation->name();
      break;
    case DeclaredStrength::Form::conditionals:
      s["conditionals"] = {d.first, d.second};
      break;
    case DeclaredStrength::Form::weight: {
      const double a = std::exp(r.w_present().value());
      const double b = std::exp(r.w_absent().value());
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorCode::schema, "rule " + r.id() + " has an infinite likelihood ratio; "
                                                          "write it as a delta strength");
      }
      s["lambda"] = {a, b};
      break;
    }
  }
  return s;
}

json rule_to_json(const Rule& r) {
  json j = json::object();
  j["evidence"] = r.evidence();
  j["hypothesis"] = r.hypothesis();
  j["strength"] = strength_to_json(r);
  return j;
}

}  // namespace

Network parse_network(std::string_view text) {
  const json doc = parse_json(text);
  require_object(doc, "$");
  reject_unknown(doc, "$", {"format", "nodes", "rules", "root_prior"});
  check_format(doc);

  Network net;
  const auto& nodes = field(doc, "$", "nodes");
  if (!nodes.is_array()) schema_error("$.nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto path = "$.nodes[" + std::to_string(i) + "]";
    const auto& n = nodes[i];
    require_object(n, path);
    for (const char* multi : {"values", "states"}) {
      if (n.contains(multi)) {
        schema_error(path + "." + multi,
                     "statements are binary; multi-valued hypothesis groups are not supported");
      }
    }
    reject_unknown(n, path, {"id", "description"});
    Node node{string_field(field(n, path, "id"), path + ".id"), ""};
    if (node.id == "format") schema_error(path + ".id", "\"format\" is a reserved id");
    if (n.contains("description")) {
      node.description = string_field(n["description"], path + ".description");
    }
    net.nodes.push_back(std::move(node));
  }

  if (doc.contains("rules")) {
    const auto& rules = doc["rules"];
    if (!rules.is_array()) schema_error("$.rules", "expected an array");
    for (std::size_t i = 0; i < rules.size(); ++i) {
      net.rules.push_back(parse_rule(rules[i], "$.rules[" + std::to_string(i) + "]"));
    }
  }

  if (doc.contains("root_prior")) {
    const double p = number(doc["root_prior"], "$.root_prior");
    if (!(p > 0.0 && p < 1.0)) schema_error("$.root_prior", "must lie strictly inside (0,1)");
    net.root_prior = Probability(p);
  }
  return net;
}

std::string serialize_network(const Network& net) {
  json doc = json::object();
  doc["format"] = kFormatTag;
  doc["nodes"] = json::array();
  for (const auto& n : net.nodes) {
    doc["nodes"].push_back({{"id", n.id}, {"description", n.description}});
  }
  doc["rules"] = json::array();
  for (const auto& r : net.rules) doc["rules"].push_back(rule_to_json(r));
  if (net.root_prior) doc["root_prior"] = net.root_prior->value();
  return doc.dump(2) + "\n";
}

std::string serialize_rule(const Rule& rule) { return rule_to_json(rule).dump(2) + "\n"; }

Findings parse_findings(std::string_view text) {
  const json doc = parse_json(text);
  require_object(doc, "$");
  check_format(doc);

  Findings out;
  for (const auto& [key, value] : doc.items()) {
    if (key == "format") continue;
    const auto path = "$." + key;
    require_object(value, path);
    try {
      if (value.contains("update")) {
        reject_unknown(value, path, {"update", "interpretation"});
        const double x = number(value["update"], path + ".update");
        if (!(x >= -1.0 && x <= 1.0)) schema_error(path + ".update", "must lie in [-1,1]");
        UpdateFinding f{x, std::nullopt};
        if (value.contains("interpretation")) {
          f.interpretation = parse_interpretation(value["interpretation"], path + ".interpretation");
        }
        out.emplace(key, f);
      } else {
        reject_unknown(value, path, {"prior", "posterior"});
        const double p = number(field(value, path, "prior"), path + ".prior");
        const double q = number(field(value, path, "posterior"), path + ".posterior");
        out.emplace(key, ProbabilityPairFinding{Probability(p), Probability(q)});
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::schema) throw;
      schema_error(path, e.what());
    }
  }
  return out;
}

std::string serialize_findings(const Findings& findings) {
  json doc = json::object();
  doc["format"] = kFormatTag;
  for (const auto& [id, f] : findings) {
    if (const auto* u = std::get_if<UpdateFinding>(&f)) {
      json e = json::object();
      e["update"] = u->value;
      if (u->interpretation) e["interpretation"] = u->interpretation->name();
      doc[id] = e;
    } else {
      const auto& p = std::get<ProbabilityPairFinding>(f);
      doc[id] = {{"prior", p.prior.value()}, {"posterior", p.posterior.value()}};
    }
  }
  return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Network load_network(const std::filesystem::path& path) {
  return parse_network(read_text_file(path));
}

Findings load_findings(const std::filesystem::path& path) {
  return parse_findings(read_text_file(path));
}

}  // namespace deltacf

#include "rulefile.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace gg {

using nlohmann::json;

RuleFile make_rulefile(const Rule<ext>& q, int d, int c, const KnotVector<ext>& kv, Precision p,
                       const ext& residual_norm, int digits) {
  RuleFile f;
  f.degree = d;
  f.continuity = c;
  f.elements = int(kv.x.size()) - 1;
  f.a = format_real(q.a, digits);
  f.b = format_real(q.b, digits);
  for (auto& x : kv.x) f.breakpoints.push_back(format_real(x, digits));
  f.multiplicities = kv.m;
  f.kind = q.kind == Kind::gauss ? "gauss" : "gauss-radau";
  f.pinned = q.pinned;
  f.precision = p == Precision::dbl ? "double" : "extended";
  f.residual_norm = format_real(residual_norm, 6);
  for (size_t i = 0; i < q.size(); ++i) {
    f.nodes.push_back(format_real(q.t[i], digits));
    f.weights.push_back(format_real(q.w[i], digits));
  }
  return f;
}

std::string to_json(const RuleFile& f) {
  json j;
  j["generator"] = f.generator;
  j["degree"] = f.degree;
  j["continuity"] = f.continuity;
  j["elements"] = f.elements;
  j["domain"] = {f.a, f.b};
  j["knots"] = {{"breakpoints", f.breakpoints}, {"multiplicities", f.multiplicities}};
  j["kind"] = f.kind;
  j["pinned"] = f.pinned >= 0 ? json(f.pinned) : json(nullptr);
  j["precision"] = f.precision;
  j["residual_norm"] = f.residual_norm;
  j["nodes"] = f.nodes;
  j["weights"] = f.weights;
  if (!f.asymptotic.empty()) j["asymptotic"] = f.asymptotic;
  return j.dump(2) + "\n";
}

namespace {

std::string as_decimal(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw domain_error("expected a number or decimal string");
}

std::vector<std::string> decimals(const json& a) {
  if (!a.is_array()) throw domain_error("expected an array of numbers");
  std::vector<std::string> o;
  for (auto& v : a) o.push_back(as_decimal(v));
  return o;
}

}  // namespace

RuleFile rulefile_from_json(const std::string& text) {
  RuleFile f;
  try {
    json j = json::parse(text);
    f.generator = j.value("generator", f.generator);
    f.degree = j.at("degree").get<int>();
    f.continuity = j.at("continuity").get<int>();
    f.elements = j.at("elements").get<int>();
    auto dom = decimals(j.at("domain"));
    if (dom.size() != 2) throw domain_error("domain needs two entries");
    f.a = dom[0];
    f.b = dom[1];
    f.breakpoints = decimals(j.at("knots").at("breakpoints"));
    f.multiplicities = j.at("knots").at("multiplicities").get<std::vector<int>>();
    f.kind = j.at("kind").get<std::string>();
    if (f.kind != "gauss" && f.kind != "gauss-radau") throw domain_error("unknown rule kind");
    f.pinned = j.contains("pinned") && !j["pinned"].is_null() ? j["pinned"].get<int>() : -1;
    f.precision = j.value("precision", std::string("double"));
    f.residual_norm = j.contains("residual_norm") ? as_decimal(j["residual_norm"]) : "";
    f.nodes = decimals(j.at("nodes"));
    f.weights = decimals(j.at("weights"));
    if (f.nodes.size() != f.weights.size()) throw domain_error("node and weight counts differ");
    if (j.contains("asymptotic"))
      for (auto& [k, v] : j["asymptotic"].items()) f.asymptotic[k] = as_decimal(v);
  } catch (const json::exception& e) {
    throw domain_error(std::string("malformed rule file: ") + e.what());
  }
  return f;
}

void save_rulefile(const RuleFile& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot write " + path);
  os << to_json(f);
  if (!os) throw io_error("write failed: " + path);
}

namespace {
std::string slurp(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error("cannot read " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}
}  // namespace

RuleFile load_rulefile(const std::string& path) { return rulefile_from_json(slurp(path)); }

std::string to_csv(const RuleFile& f) {
  std::string s = "node,weight\n";
  for (size_t i = 0; i < f.nodes.size(); ++i) s += f.nodes[i] + "," + f.weights[i] + "\n";
  return s;
}

void save_csv(const RuleFile& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot write " + path);
  os << to_csv(f);
}

Rule<ext> rule_of(const RuleFile& f) {
  Rule<ext> q;
  q.a = parse_real<ext>(f.a);
  q.b = parse_real<ext>(f.b);
  for (auto& s : f.nodes) q.t.push_back(parse_real<ext>(s));
  for (auto& s : f.weights) q.w.push_back(parse_real<ext>(s));
  q.kind = f.kind == "gauss" ? Kind::gauss : Kind::radau;
  q.pinned = f.pinned;
  return q;
}

KnotVector<ext> knots_of(const RuleFile& f) {
  KnotVector<ext> kv;
  for (auto& s : f.breakpoints) kv.x.push_back(parse_real<ext>(s));
  kv.m = f.multiplicities;
  kv.check();
  return kv;
}

KnotInput knot_input_from_json(const std::string& text) {
  KnotInput k;
  try {
    json j = json::parse(text);
    const json& b = j.is_array() ? j : j.at("breakpoints");
    k.breakpoints = decimals(b);
    if (j.is_object() && j.contains("multiplicities"))
      k.multiplicities = j["multiplicities"].get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw domain_error(std::string("malformed knot file: ") + e.what());
  }
  if (k.breakpoints.size() < 2) throw domain_error("knot file needs at least two breakpoints");
  if (!k.multiplicities.empty() && k.multiplicities.size() != k.breakpoints.size())
    throw domain_error("knot file: multiplicities do not match breakpoints");
  return k;
}

KnotInput load_knot_file(const std::string& path) { return knot_input_from_json(slurp(path)); }

}  // namespace gg

// gg: derive, verify and export optimal spline quadrature rules
#include "gg/gg.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { ok = 0, usage = 2, numeric = 3 };

struct Failure {
  int code;
  std::string msg;
};

int exit_for(gg_status s) {
  switch (s) {
    case GG_OK: return ok;
    case GG_ENUMERIC:
    case GG_EINTERNAL: return numeric;
    default: return usage;
  }
}

void check(gg_status s, const std::string& what) {
  if (s != GG_OK) throw Failure{exit_for(s), what + ": " + gg_last_error()};
}

struct Opts {
  int degree = -1, continuity = -1, elements = 0;
  std::string knots;
  std::vector<double> domain;
  int steps = 0;
  double epsilon = 0;
  std::string precision;
  bool asymptotic = false;
  std::string out, format = "table";
  double tol = 0;
  std::string file;
};

struct Space {
  gg_space* s = nullptr;
  ~Space() { gg_space_free(s); }
};
struct Rule {
  gg_rule* r = nullptr;
  ~Rule() { gg_rule_free(r); }
};
struct Asym {
  gg_asym* a = nullptr;
  ~Asym() { gg_asymptotic_free(a); }
};

gg_config make_config(const Opts& o) {
  gg_config c;
  gg_config_init(&c);
  if (o.steps > 0) c.steps = o.steps;
  if (o.epsilon > 0) c.epsilon = o.epsilon;
  if (o.precision == "extended") c.precision = GG_EXTENDED;
  if (o.precision == "double") c.precision = GG_DOUBLE;
  return c;
}

void need_pair(const Opts& o) {
  if (o.degree < 0 || o.continuity < 0)
    throw Failure{usage, "--degree and --continuity are required"};
}

// breakpoints as decimal strings so extended runs see every digit
std::vector<std::string> read_knots(const Opts& o, std::vector<int>& mult) {
  std::ifstream is(o.knots);
  if (!is) throw Failure{usage, "cannot read " + o.knots};
  nlohmann::json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw Failure{usage, "malformed knot file: " + std::string(e.what())};
  }
  const nlohmann::json& b = j.is_array() ? j : j.value("breakpoints", nlohmann::json());
  if (!b.is_array() || b.size() < 2) throw Failure{usage, "knot file needs a breakpoints array"};
  std::vector<std::string> x;
  for (auto& v : b) {
    if (v.is_string())
      x.push_back(v.get<std::string>());
    else if (v.is_number())
      x.push_back(v.dump());
    else
      throw Failure{usage, "breakpoints must be numbers or decimal strings"};
  }
  if (j.is_object() && j.contains("multiplicities")) {
    try {
      mult = j["multiplicities"].get<std::vector<int>>();
    } catch (const std::exception&) {
      throw Failure{usage, "multiplicities must be integers"};
    }
    if (mult.size() != x.size()) throw Failure{usage, "multiplicities do not match breakpoints"};
  }
  return x;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

void print_rule(const gg_rule* r, const std::string& format) {
  int digits = gg_rule_precision(r) == GG_EXTENDED ? 20 : 17;
  char tb[128], wb[128];
  if (format == "csv") std::cout << "node,weight\n";
  for (size_t i = 0; i < gg_rule_size(r); ++i) {
    check(gg_rule_node_str(r, i, digits, tb, sizeof tb), "format");
    check(gg_rule_weight_str(r, i, digits, wb, sizeof wb), "format");
    if (format == "csv")
      std::cout << tb << "," << wb << "\n";
    else
      std::cout << std::setw(4) << i + 1 << "  " << std::left << std::setw(28) << tb << wb
                << std::right << "\n";
  }
}

std::string csv_path(const std::string& out) {
  auto dot = out.rfind('.');
  auto slash = out.rfind('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return out.substr(0, dot) + ".csv";
  return out + ".csv";
}

// builds the target space and derives (or composes) the rule
void derive(const Opts& o, const gg_config& cfg, Space& S, Rule& R) {
  need_pair(o);
  const int d = o.degree, c = o.continuity;
  if (!o.knots.empty()) {
    if (o.elements > 0 || !o.domain.empty())
      throw Failure{usage, "--knots cannot be combined with --elements or --domain"};
    if (o.asymptotic) throw Failure{usage, "--asymptotic needs a uniform --elements layout"};
    std::vector<int> m;
    auto x = read_knots(o, m);
    std::vector<int> expect(x.size(), d - c);
    expect.front() = expect.back() = d + 1;
    if (!m.empty() && m != expect)
      throw Failure{usage, "only open knot vectors with interior multiplicity d-c are supported"};
    std::vector<const char*> xs;
    for (auto& s : x) xs.push_back(s.c_str());
    check(gg_space_new_str(d, xs.data(), expect.data(), xs.size(), &S.s), "knots");
    check(gg_derive_rule_str(d, c, xs.data(), xs.size(), &cfg, &R.r), "derivation");
    return;
  }
  if (o.elements < 1) throw Failure{usage, "give --elements or --knots"};
  double a = 0, b = o.elements;
  if (!o.domain.empty()) {
    a = o.domain[0];
    b = o.domain[1];
  }
  check(gg_space_uniform(d, c, o.elements, a, b, &S.s), "space");
  if (o.asymptotic) {
    Asym A;
    check(gg_asymptotic_new(d, c, cfg.precision, &A.a), "asymptotic rule");
    // boundary data from one moderate uniform derivation
    const int N0 = c == 1 ? 16 : 32;
    std::vector<double> x0;
    for (int i = 0; i <= N0; ++i) x0.push_back(i);
    Rule B;
    check(gg_derive_rule(d, c, x0.data(), x0.size(), &cfg, &B.r), "boundary rule");
    check(gg_compose_finite(A.a, B.r, o.elements, a, b, -1, &R.r), "composition");
    return;
  }
  std::vector<double> x;
  for (int i = 0; i <= o.elements; ++i) x.push_back(a + (b - a) * i / o.elements);
  x.back() = b;
  check(gg_derive_rule(d, c, x.data(), x.size(), &cfg, &R.r), "derivation");
}

int cmd_generate(const Opts& o) {
  gg_config cfg = make_config(o);
  Space S;
  Rule R;
  derive(o, cfg, S, R);
  gg_report rep;
  check(gg_rule_verify(R.r, S.s, 0, &rep), "verification");
  if (o.format == "csv" || o.out.empty()) print_rule(R.r, o.format);
  std::cout << "nodes " << rep.nodes << " (optimal " << rep.optimal_nodes << "), dim " << rep.dim
            << ", residual norm " << fmt(rep.norm) << ", max " << fmt(rep.max_abs) << "\n";
  if (!o.out.empty()) {
    check(gg_rule_save(R.r, o.degree, o.continuity, S.s, o.out.c_str()), "save");
    check(gg_rule_save_csv(R.r, csv_path(o.out).c_str()), "save");
    std::cout << "wrote " << o.out << " and " << csv_path(o.out) << "\n";
  }
  if (!rep.exact || !rep.positive || !rep.ordered) {
    std::cerr << "error: derived rule failed verification\n";
    return numeric;
  }
  return ok;
}

int cmd_verify(const Opts& o) {
  Rule R;
  Space S;
  int d = 0, c = 0;
  check(gg_rule_load(o.file.c_str(), &R.r, &S.s, &d, &c), "load");
  gg_report rep;
  check(gg_rule_verify(R.r, S.s, o.tol, &rep), "verification");
  auto pf = [](int v) { return v ? "PASS" : "FAIL"; };
  std::cout << "degree " << d << ", continuity " << c << ", dim " << rep.dim << "\n"
            << "max residual   " << fmt(rep.max_abs) << "\n"
            << "residual norm  " << fmt(rep.norm) << "\n"
            << "exact          " << pf(rep.exact) << "\n"
            << "optimal        " << pf(rep.optimal) << " (" << rep.nodes << " nodes, optimal "
            << rep.optimal_nodes << ")\n"
            << "positive       " << pf(rep.positive) << "\n"
            << "ordered        " << pf(rep.ordered) << "\n";
  bool pass = rep.exact && rep.optimal && rep.positive && rep.ordered;
  std::cout << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? ok : numeric;
}

int cmd_compare(const Opts& o) {
  need_pair(o);
  int N = o.elements > 0 ? o.elements : 64;
  gg_savings s;
  check(gg_compare(o.degree, o.continuity, N, &s), "compare");
  std::cout << "d=" << o.degree << " c=" << o.continuity << " N=" << N << "\n"
            << "optimal nodes          " << s.optimal_nodes << "\n"
            << "classical Gauss nodes  " << s.classical_nodes << "\n"
            << "1D ratio               " << fmt(s.ratio_1d) << "\n"
            << "nodes per element      " << fmt(s.asym_per_element) << " vs "
            << fmt(s.classical_per_element) << "\n"
            << "3D ratio               " << fmt(s.ratio_3d) << "\n";
  return ok;
}

int cmd_asymptotic(const Opts& o) {
  need_pair(o);
  gg_config cfg = make_config(o);
  Asym A;
  check(gg_asymptotic_new(o.degree, o.continuity, cfg.precision, &A.a), "asymptotic rule");
  int digits = cfg.precision == GG_EXTENDED ? 20 : 17;
  nlohmann::json j;
  j["degree"] = o.degree;
  j["continuity"] = o.continuity;
  j["precision"] = cfg.precision == GG_EXTENDED ? "extended" : "double";
  std::cout << "d=" << o.degree << " c=" << o.continuity << ", "
            << gg_asymptotic_nodes_per_element(A.a) << " nodes per element\n";
  for (const char* n : {"d1", "d2", "w1", "w2", "w3"}) {
    char buf[128];
    const char* f = nullptr;
    check(gg_asymptotic_value(A.a, n, digits, buf, sizeof buf), "value");
    check(gg_asymptotic_formula(A.a, n, &f), "formula");
    std::cout << std::left << std::setw(4) << n << std::setw(26) << buf << f << std::right
              << "\n";
    j["values"][n] = buf;
    j["formulas"][n] = f;
  }
  if (!o.out.empty()) {
    std::ofstream os(o.out);
    if (!os) throw Failure{usage, "cannot write " + o.out};
    os << j.dump(2) << "\n";
  }
  return ok;
}

int cmd_trace_log(const Opts& o) {
  gg_config cfg = make_config(o);
  std::string path = o.out.empty() ? "/dev/stdout" : o.out;
  cfg.trace_log = path.c_str();
  Space S;
  Rule R;
  derive(o, cfg, S, R);
  if (!o.out.empty()) std::cout << "wrote " << o.out << "\n";
  return ok;
}

void derive_flags(CLI::App* c, Opts& o) {
  c->add_option("--degree", o.degree, "spline degree d (even)");
  c->add_option("--continuity", o.continuity, "interior continuity c");
  c->add_option("--elements", o.elements, "uniform element count");
  c->add_option("--knots", o.knots, "JSON knot file with breakpoints and multiplicities");
  c->add_option("--domain", o.domain, "domain a b")->expected(2);
  c->add_option("--steps", o.steps, "homotopy steps per trace");
  c->add_option("--epsilon", o.epsilon, "trailing integral threshold for node removal");
  c->add_option("--precision", o.precision, "double or extended")
      ->check(CLI::IsMember({"double", "extended"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal quadrature for even-degree spline spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gg_version()));
  Opts o;

  auto* gen = app.add_subcommand("generate", "derive a rule and write it out");
  derive_flags(gen, o);
  gen->add_flag("--asymptotic", o.asymptotic, "boundary blocks plus the periodic pattern");
  gen->add_option("--out", o.out, "rule file (JSON); a .csv is written next to it");
  gen->add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"table", "csv"}));

  auto* ver = app.add_subcommand("verify", "check a rule file against its space");
  ver->add_option("file", o.file, "rule file")->required();
  ver->add_option("--tol", o.tol, "residual tolerance");

  auto* cmp = app.add_subcommand("compare", "node counts against classical Gauss");
  cmp->add_option("--degree", o.degree)->required();
  cmp->add_option("--continuity", o.continuity)->required();
  cmp->add_option("--elements", o.elements, "element count (default 64)");

  auto* asy = app.add_subcommand("asymptotic", "constants of the periodic rule");
  asy->add_option("--degree", o.degree)->required();
  asy->add_option("--continuity", o.continuity)->required();
  asy->add_option("--precision", o.precision)->check(CLI::IsMember({"double", "extended"}));
  asy->add_option("--out", o.out, "JSON file for the constants");

  auto* tl = app.add_subcommand("trace-log", "derive a rule and dump every homotopy step");
  derive_flags(tl, o);
  tl->add_option("--out", o.out, "JSON-lines log (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (*gen) return cmd_generate(o);
    if (*ver) return cmd_verify(o);
    if (*cmp) return cmd_compare(o);
    if (*asy) return cmd_asymptotic(o);
    if (*tl) return cmd_trace_log(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.msg << "\n";
    return f.code;
  }
  return usage;
}

#define GG_BUILDING
#include "gg/gg.h"

#include "asymptotic.hpp"
#include "blocks.hpp"
#include "homotopy.hpp"
#include "rulefile.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <string>

using gg::ext;

struct gg_space {
  int d;
  gg::KnotVector<ext> kv;
  gg::Space<ext> sx;
  gg::Space<double> sd;
};

struct gg_rule {
  gg::Rule<ext> q;
  gg::Precision prec = gg::Precision::dbl;
  std::optional<gg::RuleFile> file;  // set when loaded, so a resave is verbatim
  std::map<std::string, std::string> asym;
};

struct gg_asym {
  gg::Asymptotic<ext> A;
  gg::Precision prec;
};

namespace {

thread_local std::string last_error;

template <class F>
gg_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return GG_OK;
  } catch (const gg::unsupported_error& e) {
    last_error = e.what();
    return GG_EUNSUPPORTED;
  } catch (const gg::numeric_error& e) {
    last_error = e.what();
    return GG_ENUMERIC;
  } catch (const gg::io_error& e) {
    last_error = e.what();
    return GG_EIO;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return GG_EINVAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GG_EINTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return GG_EINTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw gg::domain_error(std::string("null ") + what);
}

gg::Precision prec_of(gg_precision p) {
  return p == GG_EXTENDED ? gg::Precision::extended : gg::Precision::dbl;
}

gg_space* make_space(int d, gg::KnotVector<ext> kv) {
  auto s = std::make_unique<gg_space>();
  s->d = d;
  s->sx = gg::Space<ext>(d, kv);
  s->sd = gg::Space<double>(d, gg::cast_knots<double>(kv));
  s->kv = std::move(kv);
  return s.release();
}

template <class R>
gg_rule* make_rule(const gg::Rule<R>& q, gg::Precision p) {
  auto r = std::make_unique<gg_rule>();
  r->q = gg::cast_rule<ext>(q);
  r->prec = p;
  return r.release();
}

gg::Config to_config(const gg_config* c, std::unique_ptr<std::ofstream>& log) {
  gg::Config cfg;
  if (!c) return cfg;
  if (c->steps < 1) throw gg::domain_error("steps must be >= 1");
  if (!(c->epsilon > 0)) throw gg::domain_error("epsilon must be positive");
  if (!(c->newton_tol > 0)) throw gg::domain_error("newton_tol must be positive");
  cfg.steps = c->steps;
  cfg.epsilon = c->epsilon;
  cfg.newton_tol = c->newton_tol;
  cfg.newton_max_iter = c->newton_max_iter;
  cfg.retries = c->retries;
  cfg.precision = prec_of(c->precision);
  if (c->trace_log && *c->trace_log) {
    log = std::make_unique<std::ofstream>(c->trace_log);
    if (!*log) throw gg::io_error(std::string("cannot write ") + c->trace_log);
    cfg.log = log.get();
  }
  return cfg;
}

void copy_str(const std::string& s, char* buf, size_t len) {
  need(buf, "buffer");
  if (s.size() + 1 > len) throw gg::domain_error("buffer too small");
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

template <class R>
gg::Verdict<R> verdict(const gg_rule* r, const gg_space* s, double tol) {
  gg::Rule<R> q = gg::cast_rule<R>(r->q);
  const gg::Space<R>* S;
  if constexpr (std::is_same_v<R, double>)
    S = &s->sd;
  else
    S = &s->sx;
  R t = tol > 0 ? R(tol) : gg::default_tolerance<R>();
  // a rule read back from decimals cannot beat its printed digits
  if (tol <= 0 && r->file && r->prec == gg::Precision::extended) {
    R span = q.b - q.a;
    R floor = gg::lit<R>("1e-19") * (span > 1 ? span : R(1));
    if (floor > t) t = floor;
  }
  return gg::verify(q, *S, t);
}

template <class R>
void fill_report(const gg::Verdict<R>& v, gg_report* rep) {
  rep->norm = gg::to_double(v.report.norm);
  rep->max_abs = gg::to_double(v.report.max_abs);
  rep->dim = v.report.dim;
  rep->nodes = v.nodes;
  rep->optimal_nodes = v.optimal_nodes;
  rep->exact = v.exact;
  rep->optimal = v.optimal;
  rep->positive = v.positive;
  rep->ordered = v.ordered;
}

gg_status derive(int d, int c, std::vector<ext> x, const gg_config* cfg, gg_rule** out) {
  return guard([&] {
    need(out, "output");
    std::unique_ptr<std::ofstream> log;
    gg::Config conf = to_config(cfg, log);
    if (conf.precision == gg::Precision::extended) {
      *out = make_rule(gg::derive_rule<ext>(d, c, x, conf), conf.precision);
    } else {
      std::vector<double> xd;
      for (auto& v : x) xd.push_back(gg::to_double(v));
      *out = make_rule(gg::derive_rule<double>(d, c, xd, conf), conf.precision);
    }
  });
}

}  // namespace

extern "C" {

void gg_config_init(gg_config* cfg) {
  if (!cfg) return;
  gg::Config d;
  cfg->steps = d.steps;
  cfg->epsilon = d.epsilon;
  cfg->newton_tol = d.newton_tol;
  cfg->newton_max_iter = d.newton_max_iter;
  cfg->retries = d.retries;
  cfg->precision = GG_DOUBLE;
  cfg->trace_log = nullptr;
  if (const char* e = std::getenv("GG_PRECISION")) {
    if (std::strcmp(e, "extended") == 0) cfg->precision = GG_EXTENDED;
  }
}

const char* gg_last_error(void) { return last_error.c_str(); }
const char* gg_version(void) { return gg::kVersion; }

gg_status gg_galerkin_target(int p, int k, int l, int* d, int* c) {
  return guard([&] {
    need(d, "d");
    need(c, "c");
    auto [dd, cc] = gg::galerkin_target({p, k, l});
    *d = dd;
    *c = cc;
  });
}

gg_status gg_space_new(int d, const double* x, const int* m, size_t n, gg_space** out) {
  return guard([&] {
    need(x, "breakpoints");
    need(m, "multiplicities");
    need(out, "output");
    gg::KnotVector<ext> kv;
    for (size_t i = 0; i < n; ++i) {
      kv.x.push_back(ext(x[i]));
      kv.m.push_back(m[i]);
    }
    *out = make_space(d, kv);
  });
}

gg_status gg_space_new_str(int d, const char* const* x, const int* m, size_t n, gg_space** out) {
  return guard([&] {
    need(x, "breakpoints");
    need(m, "multiplicities");
    need(out, "output");
    gg::KnotVector<ext> kv;
    for (size_t i = 0; i < n; ++i) {
      need(x[i], "breakpoint");
      kv.x.push_back(gg::parse_real<ext>(x[i]));
      kv.m.push_back(m[i]);
    }
    *out = make_space(d, kv);
  });
}

gg_status gg_space_uniform(int d, int c, int elements, double a, double b, gg_space** out) {
  return guard([&] {
    need(out, "output");
    if (c < -1 || c >= d) throw gg::domain_error("continuity must lie in [-1, d-1]");
    *out = make_space(d, gg::uniform_knots<ext>(d, c, elements, ext(a), ext(b)));
  });
}

void gg_space_free(gg_space* s) { delete s; }
int gg_space_degree(const gg_space* s) { return s ? s->d : -1; }
int gg_space_dimension(const gg_space* s) { return s ? s->sx.size() : -1; }

gg_status gg_space_optimal_nodes(const gg_space* s, int* m, gg_kind* kind) {
  return guard([&] {
    need(s, "space");
    auto n = gg::optimal_node_count(s->sx.size());
    if (m) *m = n.m;
    if (kind) *kind = n.kind == gg::Kind::gauss ? GG_GAUSS : GG_RADAU;
  });
}

gg_status gg_space_basis(const gg_space* s, int i, double t, double* value) {
  return guard([&] {
    need(s, "space");
    need(value, "output");
    *value = s->sd.basis(i, t);
  });
}

gg_status gg_space_integral(const gg_space* s, int i, double* value) {
  return guard([&] {
    need(s, "space");
    need(value, "output");
    if (i < 0 || i >= s->sx.size()) throw gg::domain_error("basis index out of range");
    *value = gg::to_double(s->sx.integrals()[i]);
  });
}

gg_status gg_space_merge(const gg_space* left, const gg_space* right, gg_space** out) {
  return guard([&] {
    need(left, "space");
    need(right, "space");
    need(out, "output");
    if (left->d != right->d) throw gg::domain_error("degrees differ");
    *out = make_space(left->d, gg::merge_c_minus_1(left->d, left->kv, right->kv));
  });
}

gg_status gg_derive_rule(int d, int c, const double* x, size_t n, const gg_config* cfg,
                         gg_rule** out) {
  if (!x) {
    last_error = "null breakpoints";
    return GG_EINVAL;
  }
  std::vector<ext> xv;
  for (size_t i = 0; i < n; ++i) xv.push_back(ext(x[i]));
  return derive(d, c, xv, cfg, out);
}

gg_status gg_derive_rule_str(int d, int c, const char* const* x, size_t n, const gg_config* cfg,
                             gg_rule** out) {
  std::vector<ext> xv;
  gg_status st = guard([&] {
    need(x, "breakpoints");
    for (size_t i = 0; i < n; ++i) {
      need(x[i], "breakpoint");
      xv.push_back(gg::parse_real<ext>(x[i]));
    }
  });
  if (st != GG_OK) return st;
  return derive(d, c, xv, cfg, out);
}

gg_status gg_block_gauss_6_1(gg_precision p, gg_rule** out) {
  return guard([&] {
    need(out, "output");
    if (p == GG_EXTENDED)
      *out = make_rule(gg::gauss_block_6_1<ext>(), prec_of(p));
    else
      *out = make_rule(gg::gauss_block_6_1<double>(), prec_of(p));
  });
}

gg_status gg_block_radau_4_0(gg_precision p, gg_rule** out, double* rho) {
  return guard([&] {
    need(out, "output");
    if (p == GG_EXTENDED) {
      auto b = gg::radau_block_4_0<ext>();
      *out = make_rule(b.full, prec_of(p));
      if (rho) *rho = gg::to_double(b.rho);
    } else {
      auto b = gg::radau_block_4_0<double>();
      *out = make_rule(b.full, prec_of(p));
      if (rho) *rho = b.rho;
    }
  });
}

gg_status gg_solve_block(int d, int c, int elements, gg_kind kind, gg_precision p,
                         gg_rule** out) {
  return guard([&] {
    need(out, "output");
    gg::BlockSpec spec{d, c, elements, kind == GG_GAUSS ? gg::Kind::gauss : gg::Kind::radau};
    if (p == GG_EXTENDED)
      *out = make_rule(gg::solve_block<ext>(spec), prec_of(p));
    else
      *out = make_rule(gg::solve_block<double>(spec), prec_of(p));
  });
}

void gg_rule_free(gg_rule* r) { delete r; }
size_t gg_rule_size(const gg_rule* r) { return r ? r->q.size() : 0; }
gg_kind gg_rule_kind(const gg_rule* r) {
  return r && r->q.kind == gg::Kind::radau ? GG_RADAU : GG_GAUSS;
}
int gg_rule_pinned(const gg_rule* r) { return r ? r->q.pinned : -1; }
gg_precision gg_rule_precision(const gg_rule* r) {
  return r && r->prec == gg::Precision::extended ? GG_EXTENDED : GG_DOUBLE;
}

void gg_rule_domain(const gg_rule* r, double* a, double* b) {
  if (!r) return;
  if (a) *a = gg::to_double(r->q.a);
  if (b) *b = gg::to_double(r->q.b);
}

gg_status gg_rule_nodes(const gg_rule* r, double* t, size_t n) {
  return guard([&] {
    need(r, "rule");
    need(t, "output");
    if (n < r->q.size()) throw gg::domain_error("buffer too small");
    for (size_t i = 0; i < r->q.size(); ++i) t[i] = gg::to_double(r->q.t[i]);
  });
}

gg_status gg_rule_weights(const gg_rule* r, double* w, size_t n) {
  return guard([&] {
    need(r, "rule");
    need(w, "output");
    if (n < r->q.size()) throw gg::domain_error("buffer too small");
    for (size_t i = 0; i < r->q.size(); ++i) w[i] = gg::to_double(r->q.w[i]);
  });
}

gg_status gg_rule_node_str(const gg_rule* r, size_t i, int digits, char* buf, size_t len) {
  return guard([&] {
    need(r, "rule");
    if (i >= r->q.size()) throw gg::domain_error("node index out of range");
    copy_str(gg::format_real(r->q.t[i], digits > 0 ? digits : gg::kDefaultDigits), buf, len);
  });
}

gg_status gg_rule_weight_str(const gg_rule* r, size_t i, int digits, char* buf, size_t len) {
  return guard([&] {
    need(r, "rule");
    if (i >= r->q.size()) throw gg::domain_error("weight index out of range");
    copy_str(gg::format_real(r->q.w[i], digits > 0 ? digits : gg::kDefaultDigits), buf, len);
  });
}

double gg_rule_apply(const gg_rule* r, double (*f)(double, void*), void* ctx) {
  if (!r || !f) return std::nan("");
  double s = 0;
  for (size_t i = 0; i < r->q.size(); ++i)
    s += gg::to_double(r->q.w[i]) * f(gg::to_double(r->q.t[i]), ctx);
  return s;
}

gg_status gg_rule_verify(const gg_rule* r, const gg_space* s, double tol, gg_report* rep) {
  return guard([&] {
    need(r, "rule");
    need(s, "space");
    need(rep, "output");
    if (r->prec == gg::Precision::extended)
      fill_report(verdict<ext>(r, s, tol), rep);
    else
      fill_report(verdict<double>(r, s, tol), rep);
  });
}

gg_status gg_rule_residuals(const gg_rule* r, const gg_space* s, double* res, size_t n) {
  return guard([&] {
    need(r, "rule");
    need(s, "space");
    need(res, "output");
    if (n < size_t(s->sx.size())) throw gg::domain_error("buffer too small");
    auto rep = gg::residuals(r->q, s->sx);
    for (size_t i = 0; i < rep.r.size(); ++i) res[i] = gg::to_double(rep.r[i]);
  });
}

gg_status gg_rule_reflect(const gg_rule* half, double mid, gg_rule** out) {
  return guard([&] {
    need(half, "rule");
    need(out, "output");
    *out = make_rule(gg::reflect_symmetric(half->q, ext(mid)), half->prec);
  });
}

gg_status gg_rule_affine(const gg_rule* r, double a, double b, gg_rule** out) {
  return guard([&] {
    need(r, "rule");
    need(out, "output");
    if (!(a < b)) throw gg::domain_error("empty domain");
    *out = make_rule(gg::affine_map(r->q, ext(a), ext(b)), r->prec);
  });
}

gg_status gg_asymptotic_new(int d, int c, gg_precision p, gg_asym** out) {
  return guard([&] {
    need(out, "output");
    auto A = std::make_unique<gg_asym>();
    A->prec = prec_of(p);
    if (p == GG_EXTENDED) {
      A->A = gg::solve_asymptotic<ext>(d, c);
    } else {
      auto Ad = gg::solve_asymptotic<double>(d, c);
      A->A.d = Ad.d;
      A->A.c = Ad.c;
      A->A.period = Ad.period;
      A->A.d1 = Ad.d1;
      A->A.d2 = Ad.d2;
      A->A.w1 = Ad.w1;
      A->A.w2 = Ad.w2;
      A->A.w3 = Ad.w3;
    }
    *out = A.release();
  });
}

void gg_asymptotic_free(gg_asym* A) { delete A; }

namespace {
const ext& asym_field(const gg_asym* A, const char* name) {
  std::string n = name ? name : "";
  if (n == "d1") return A->A.d1;
  if (n == "d2") return A->A.d2;
  if (n == "w1") return A->A.w1;
  if (n == "w2") return A->A.w2;
  if (n == "w3") return A->A.w3;
  throw gg::domain_error("unknown constant " + n);
}
}  // namespace

gg_status gg_asymptotic_value(const gg_asym* A, const char* name, int digits, char* buf,
                              size_t len) {
  return guard([&] {
    need(A, "asymptotic rule");
    int dg = digits > 0 ? digits : gg::kDefaultDigits;
    if (A->prec == gg::Precision::dbl) dg = std::min(dg, 17);
    copy_str(gg::format_real(asym_field(A, name), dg), buf, len);
  });
}

gg_status gg_asymptotic_formula(const gg_asym* A, const char* name, const char** formula) {
  return guard([&] {
    need(A, "asymptotic rule");
    need(formula, "output");
    asym_field(A, name);
    std::string n = name;
    static const std::map<std::string, const char*> f40 = {
        {"d1", "1/2 + sqrt(7)/10 - sqrt(2)/10"},
        {"d2", "1/2 - sqrt(7)/10 - sqrt(2)/10"},
        {"w1", "1/2 + sqrt(14)/84"},
        {"w2", "1/2 - sqrt(14)/84"},
        {"w3", "sqrt(2)/6"}};
    static const std::map<std::string, const char*> f61 = {
        {"d1", "67/98 - 3 sqrt(78)/98 - sqrt(95 - 10 sqrt(78))/98"},
        {"d2", "67/98 + 3 sqrt(78)/98 - sqrt(95 + 10 sqrt(78))/98"},
        {"w1", "1693/4160 + 3 sqrt(65)/4160 - 673 sqrt(30)/99840 + 2047 sqrt(78)/299520"},
        {"w2", "1693/4160 + 3 sqrt(65)/4160 + 673 sqrt(30)/99840 - 2047 sqrt(78)/299520"},
        {"w3", "387/1040 - 3 sqrt(65)/1040"}};
    *formula = (A->A.c == 0 ? f40 : f61).at(n);
  });
}

double gg_asymptotic_nodes_per_element(const gg_asym* A) {
  return A ? A->A.nodes_per_element() : 0.0;
}

// measured in the lower of the two precisions
static int measured_depth(const gg_rule* r, const gg_asym* A, double tol) {
  if (r->prec == gg::Precision::extended && A->prec == gg::Precision::extended) {
    ext t = tol > 0 ? ext(tol) : gg::default_depth_tolerance<ext>();
    return gg::boundary_depth(r->q, A->A, t);
  }
  auto q = gg::cast_rule<double>(r->q);
  gg::Asymptotic<double> Ad;
  Ad.d = A->A.d;
  Ad.c = A->A.c;
  Ad.period = A->A.period;
  Ad.d1 = gg::to_double(A->A.d1);
  Ad.d2 = gg::to_double(A->A.d2);
  Ad.w1 = gg::to_double(A->A.w1);
  Ad.w2 = gg::to_double(A->A.w2);
  Ad.w3 = gg::to_double(A->A.w3);
  return gg::boundary_depth(q, Ad, tol > 0 ? tol : gg::default_depth_tolerance<double>());
}

gg_status gg_boundary_depth(const gg_rule* r, const gg_asym* A, double tol, int* depth) {
  return guard([&] {
    need(r, "rule");
    need(A, "asymptotic rule");
    need(depth, "output");
    *depth = measured_depth(r, A, tol);
  });
}

gg_status gg_compose_finite(const gg_asym* A, const gg_rule* boundary, int elements, double a,
                            double b, int depth, gg_rule** out) {
  return guard([&] {
    need(A, "asymptotic rule");
    need(boundary, "rule");
    need(out, "output");
    if (depth < 0) depth = measured_depth(boundary, A, 0);
    auto q = gg::compose_finite(A->A, boundary->q, elements, ext(a), ext(b), depth);
    gg_rule* r = make_rule(q, boundary->prec);
    for (const char* n : {"d1", "d2", "w1", "w2", "w3"})
      r->asym[n] = gg::format_real(asym_field(A, n), gg::kDefaultDigits);
    *out = r;
  });
}

gg_status gg_rule_save(const gg_rule* r, int d, int c, const gg_space* s, const char* path) {
  return guard([&] {
    need(r, "rule");
    need(s, "space");
    need(path, "path");
    if (r->file) {
      gg::save_rulefile(*r->file, path);
      return;
    }
    ext norm;
    if (r->prec == gg::Precision::extended)
      norm = gg::residuals(r->q, s->sx).norm;
    else
      norm = gg::residuals(gg::cast_rule<double>(r->q), s->sd).norm;
    int digits = r->prec == gg::Precision::extended ? gg::kDefaultDigits : 17;
    auto f = gg::make_rulefile(r->q, d, c, s->kv, r->prec, norm, digits);
    f.asymptotic = r->asym;
    gg::save_rulefile(f, path);
  });
}

gg_status gg_rule_save_csv(const gg_rule* r, const char* path) {
  return guard([&] {
    need(r, "rule");
    need(path, "path");
    gg::RuleFile f;
    if (r->file) {
      f = *r->file;
    } else {
      int digits = r->prec == gg::Precision::extended ? gg::kDefaultDigits : 17;
      for (size_t i = 0; i < r->q.size(); ++i) {
        f.nodes.push_back(gg::format_real(r->q.t[i], digits));
        f.weights.push_back(gg::format_real(r->q.w[i], digits));
      }
    }
    gg::save_csv(f, path);
  });
}

gg_status gg_rule_load(const char* path, gg_rule** out, gg_space** space, int* d, int* c) {
  return guard([&] {
    need(path, "path");
    need(out, "output");
    auto f = gg::load_rulefile(path);
    auto r = std::make_unique<gg_rule>();
    r->q = gg::rule_of(f);
    r->prec = f.precision == "extended" ? gg::Precision::extended : gg::Precision::dbl;
    r->asym = f.asymptotic;
    if (space) *space = make_space(f.degree, gg::knots_of(f));
    if (d) *d = f.degree;
    if (c) *c = f.continuity;
    r->file = std::move(f);
    *out = r.release();
  });
}

gg_status gg_compare(int d, int c, int elements, gg_savings* out) {
  return guard([&] {
    need(out, "output");
    gg::check_supported(d, c);
    if (elements < 1) throw gg::domain_error("need at least one element");
    auto kv = gg::uniform_knots<double>(d, c, elements, 0.0, double(elements));
    const int per = (d + 2) / 2;  // ceil((d+1)/2)
    out->optimal_nodes = gg::optimal_node_count(d, kv).m;
    out->classical_nodes = elements * per;
    out->ratio_1d = double(out->optimal_nodes) / out->classical_nodes;
    out->asym_per_element = (d - c) / 2.0;
    out->classical_per_element = per;
    out->ratio_3d = std::pow(out->asym_per_element / per, 3);
  });
}

}  // extern "C"

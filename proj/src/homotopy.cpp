#include "homotopy.hpp"

#include "blocks.hpp"
#include "newton.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gg {

namespace {

constexpr double kKnotTol = 1e-12;

double lerp(double a, double b, double t) { return t >= 1 ? b : (1 - t) * a + t * b; }

bool uniform_pair(const std::vector<double>& x) {
  return std::abs(x[1] - 0.5 * (x[0] + x[2])) <= kKnotTol * (x[2] - x[0]);
}

Rule<double> shifted(const Rule<double>& r, double dx) {
  Rule<double> o = r;
  for (auto& t : o.t) t += dx;
  o.a += dx;
  o.b += dx;
  return o;
}

std::vector<double> reflect_x(const std::vector<double>& x) {
  std::vector<double> o;
  double s = x.front() + x.back();
  for (size_t i = x.size(); i-- > 0;) o.push_back(s - x[i]);
  o.front() = x.front();
  o.back() = x.back();
  return o;
}

}  // namespace

void check_supported(int d, int c) {
  if (d < 2 || d % 2 != 0) throw unsupported_error("only even degrees >= 2 are supported");
  if (c != 0 && c != 1)
    throw unsupported_error("only continuity 0 (Gauss-Radau) and 1 (Gauss) families are supported");
  if (c >= d) throw domain_error("continuity must be below the degree");
}

KnotVector<double> path_knots(const Path& p, double t) {
  std::vector<std::pair<double, int>> all = p.fixed;
  for (auto& mk : p.moving) all.push_back({lerp(mk.from, mk.to, t), mk.mult});
  std::sort(all.begin(), all.end());
  KnotVector<double> kv;
  double len = p.b - p.a;
  for (auto& [x, m] : all) {
    if (!kv.x.empty() && std::abs(x - kv.x.back()) <= kKnotTol * len) {
      kv.m.back() += m;
    } else {
      kv.x.push_back(x);
      kv.m.push_back(m);
    }
  }
  return kv;
}

Space<double> path_space(const Path& p, double t) {
  auto kv = path_knots(p, t);
  return Space<double>(p.d, kv.sequence(), p.a, p.b);
}

// uniform times; a step that would put a moving knot exactly on a fixed
// breakpoint is shifted by half a step (the system is singular there)
std::vector<double> schedule_times(const Path& p, int steps) {
  if (steps < 1) throw domain_error("steps must be >= 1");
  std::vector<double> ts;
  const double dt = 1.0 / steps;
  for (int s = 1; s <= steps; ++s) {
    double t = s * dt;
    if (s < steps) {
      for (auto& mk : p.moving) {
        double x = lerp(mk.from, mk.to, t);
        // a near miss is as bad as a hit: the gap squeezes a span to nothing
        double near = 0.25 * std::abs(mk.to - mk.from) * dt + 1e-9 * (p.b - p.a);
        for (auto& f : p.fixed)
          if (std::abs(x - f.first) < near) t = (s + 0.5) * dt;
      }
    } else {
      t = 1.0;
    }
    ts.push_back(t);
  }
  return ts;
}

std::vector<KnotSnapshot> knot_schedule(const Path& p, int steps) {
  std::vector<KnotSnapshot> out{{0.0, path_knots(p, 0.0)}};
  for (double t : schedule_times(p, steps)) out.push_back({t, path_knots(p, t)});
  return out;
}

namespace {

void log_step(std::ostream& os, double t, int phase, const KnotVector<double>& kv,
              const std::vector<double>& tau, const std::vector<double>& w, double res, int iters) {
  nlohmann::json j;
  j["t"] = t;
  j["phase"] = phase;
  j["breakpoints"] = kv.x;
  j["multiplicities"] = kv.m;
  j["nodes"] = tau;
  j["weights"] = w;
  j["residual"] = res;
  j["iterations"] = iters;
  os << j.dump() << '\n';
}

Rule<double> trace_once(const Path& p, const Rule<double>& source, const Config& cfg, int steps,
                        TraceInfo* info) {
  std::vector<double> tau = source.t, w = source.w;
  int phase = 0;
  bool have_prev = false;
  std::vector<double> ptau, pw;
  double tprev = 0, tcur = 0;
  NewtonOptions opt;
  opt.tol = cfg.newton_tol;
  opt.max_iter = cfg.newton_max_iter;
  TraceInfo ti;
  ti.steps = steps;
  auto times = schedule_times(p, steps);
  for (size_t s = 0; s < times.size(); ++s) {
    double t = times[s];
    Space<double> S = path_space(p, t);
    auto I = S.integrals();
    int n = S.size();
    if (phase == 0 && p.vanish != Vanish::none) {
      double scaled = I[n - 1] * S.paper_scale(n - 1);
      if (scaled < cfg.epsilon) {
        phase = 1;
        have_prev = false;
        ti.switch_step = int(s);
        ti.switch_time = t;
        if (p.vanish == Vanish::gauss) {
          tau.pop_back();
          w.pop_back();
        } else {
          tau.back() = p.b;
        }
        if (t < 1) {
          t = 1;
          S = path_space(p, t);
          I = S.integrals();
          n = S.size();
        }
      }
    }
    std::vector<int> eqs;
    int drop = phase == 0 ? 0 : (p.vanish == Vanish::gauss ? 2 : 1);
    for (int i = 0; i < n - drop; ++i) eqs.push_back(i);
    std::vector<char> fixed(tau.size(), 0);
    if (phase == 1 && p.vanish == Vanish::radau && !fixed.empty()) fixed.back() = 1;

    // secant predictor scaled by the step ratio
    std::vector<double> gt = tau, gw = w;
    if (have_prev && tcur > tprev) {
      double q = (t - tcur) / (tcur - tprev);
      for (size_t j = 0; j < tau.size(); ++j) {
        gt[j] = tau[j] + q * (tau[j] - ptau[j]);
        gw[j] = w[j] + q * (w[j] - pw[j]);
      }
      if (phase == 1 && p.vanish == Vanish::radau) gt.back() = p.b;
      bool ok = gt.front() >= p.a && gt.back() <= p.b;
      for (size_t j = 1; j < gt.size() && ok; ++j) ok = gt[j - 1] < gt[j];
      if (!ok) {
        gt = tau;
        gw = w;
      }
    }
    Exactness<double> sys(S, I, eqs);
    sys.pin(fixed);
    auto res = newton(sys, gt, gw, p.a, p.b, opt);
    if (!res.ok) {
      std::ostringstream os;
      os << "trace: Newton failed at step " << s + 1 << "/" << times.size() << " (t=" << t
         << "), residual " << res.residual;
      throw numeric_error(os.str());
    }
    ptau = tau;
    pw = w;
    tprev = tcur;
    have_prev = true;
    tau = gt;
    w = gw;
    tcur = t;
    ti.accepted++;
    ti.max_newton_iterations = std::max(ti.max_newton_iterations, res.iterations);
    ti.max_residual = std::max(ti.max_residual, res.residual);
    if (phase == 0) ti.trailing_weight.push_back(w.back());
    if (cfg.log) log_step(*cfg.log, t, phase, path_knots(p, t), tau, w, res.residual, res.iterations);
    if (t >= 1) break;
  }
  for (double v : w)
    if (!(v > 0)) throw numeric_error("trace: non-positive weight at t=1");
  if (info) *info = ti;
  Rule<double> out;
  out.a = p.a;
  out.b = p.b;
  out.t = tau;
  out.w = w;
  out.kind = p.vanish == Vanish::radau ? Kind::radau : source.kind;
  if (p.vanish == Vanish::radau) out.pinned = int(tau.size()) - 1;
  return out;
}

}  // namespace

Rule<double> trace(const Path& p, const Rule<double>& source, const Config& cfg, TraceInfo* info) {
  int steps = cfg.steps;
  for (int attempt = 0;; ++attempt) {
    try {
      return trace_once(p, source, cfg, steps, info);
    } catch (const numeric_error&) {
      if (attempt >= cfg.retries) throw;
      steps *= 2;
    }
  }
}

Deriver::Deriver(int d, int c, Config cfg) : d_(d), c_(c), cfg_(cfg) { check_supported(d, c); }

Rule<double> Deriver::canonical_block() {
  if (d_ == 6) return gauss_block_6_1<double>();
  return solve_block<double>({d_, 1, 2, Kind::gauss});
}

Rule<double> Deriver::run(const Source& s) {
  TraceInfo ti;
  auto r = trace(s.path, s.rule, cfg_, &ti);
  traces_.push_back(ti);
  return r;
}

Source Deriver::gauss_source(const std::vector<double>& x) {
  const int N = int(x.size()) - 1;
  const int mu = d_ - c_;
  Source s;
  s.path.d = d_;
  s.path.a = x.front();
  s.path.b = x.back();
  if (N == 2) {
    // a non-uniform pair: slide the middle knot of the mapped uniform block
    double mid = 0.5 * (x[0] + x[2]);
    s.rule = affine_map(canonical_block(), x[0], x[2]);
    s.knots = {{x[0], mid, x[2]}, {d_ + 1, mu, d_ + 1}};
    s.path.fixed = {{x[0], d_ + 1}, {x[2], d_ + 1}};
    s.path.moving = {{mid, x[1], mu}};
    s.path.vanish = Vanish::none;
    return s;
  }
  int A = N / 2;
  if (A % 2) ++A;
  if (N - A < 2) A = N - 2;
  std::vector<double> xl(x.begin(), x.begin() + A + 1), xr(x.begin() + A, x.end());
  auto l = gauss(xl), r = gauss(xr);
  s.rule = l;
  s.rule.b = r.b;
  s.rule.t.insert(s.rule.t.end(), r.t.begin(), r.t.end());
  s.rule.w.insert(s.rule.w.end(), r.w.begin(), r.w.end());
  s.knots.x = x;
  s.knots.m.assign(x.size(), mu);
  s.knots.m.front() = s.knots.m.back() = s.knots.m[A] = d_ + 1;
  s.path.fixed.push_back({x[0], d_ + 1});
  for (int k = 1; k <= N; ++k) s.path.fixed.push_back({x[k], mu});
  double h = x[N] - x[N - 1];
  s.path.moving = {{x[A], x[N], c_ + 1}, {x[N], x[N] + h, c_ + 1}};
  s.path.vanish = Vanish::gauss;
  return s;
}

Rule<double> Deriver::gauss(const std::vector<double>& x) {
  const int N = int(x.size()) - 1;
  if (N < 2 || N % 2) throw unsupported_error("Gauss family needs an even element count");
  std::vector<double> key;
  for (double v : x) key.push_back(v - x[0]);
  auto it = cache_.find({0, key});
  if (it != cache_.end()) return shifted(it->second, x[0]);
  Rule<double> r;
  if (N == 2 && uniform_pair(x)) {
    r = affine_map(canonical_block(), x[0], x[2]);
  } else {
    r = run(gauss_source(x));
    r.kind = Kind::gauss;
  }
  cache_[{0, key}] = shifted(r, -x[0]);
  return r;
}

Source Deriver::radau_source(const std::vector<double>& x) {
  const int n = int(x.size()) - 1;
  const int A = (n + 1) / 2;
  std::vector<double> xl(x.begin(), x.begin() + A + 1), xr(x.begin() + A, x.end());
  auto l = radau_half(xl);
  auto r = flip(radau_half(reflect_x(xr)));
  r.a = x[A];
  r.b = x[n];
  r.t.front() = x[A];
  Source s;
  s.rule = join(l, r);
  s.rule.kind = Kind::radau;
  s.knots.x = x;
  s.knots.m.assign(x.size(), d_);
  s.knots.m.front() = s.knots.m.back() = s.knots.m[A] = d_ + 1;
  s.path.d = d_;
  s.path.a = x.front();
  s.path.b = x.back();
  s.path.fixed.push_back({x[0], d_ + 1});
  for (int k = 1; k <= n; ++k) s.path.fixed.push_back({x[k], d_});
  double h = x[n] - x[n - 1];
  s.path.moving = {{x[A], x[n], 1}, {x[n], x[n] + h, 1}};
  s.path.vanish = Vanish::radau;
  return s;
}

Rule<double> Deriver::radau_half(const std::vector<double>& x) {
  const int n = int(x.size()) - 1;
  std::vector<double> key;
  for (double v : x) key.push_back(v - x[0]);
  auto it = cache_.find({1, key});
  if (it != cache_.end()) return shifted(it->second, x[0]);
  Rule<double> r;
  if (n == 1) {
    r = affine_map(solve_block<double>({d_, 0, 1, Kind::radau}), x[0], x[1]);
  } else if (n == 2 && d_ == 4 && uniform_pair(x)) {
    r = affine_map(radau_block_4_0<double>().half, x[0], x[2]);
  } else {
    r = run(radau_source(x));
  }
  r.kind = Kind::radau;
  r.pinned = int(r.size()) - 1;
  r.t.back() = x.back();
  cache_[{1, key}] = shifted(r, -x[0]);
  return r;
}

Rule<double> Deriver::radau(const std::vector<double>& x) {
  const int N = int(x.size()) - 1;
  if (N % 2) return radau_half(x);
  const int M = N / 2;
  std::vector<double> xl(x.begin(), x.begin() + M + 1), xr(x.begin() + M, x.end());
  auto l = radau_half(xl);
  auto r = flip(radau_half(reflect_x(xr)));
  r.a = x[M];
  r.b = x[N];
  r.t.front() = x[M];
  auto out = join(l, r);
  out.kind = Kind::radau;
  return out;
}

Rule<double> Deriver::rule(const std::vector<double>& x) {
  return c_ == 1 ? gauss(x) : radau(x);
}

PinnedSystem pin_radau(const Rule<double>& r, const KnotVector<double>& target, int d) {
  int dim = dimension(d, target);
  if (dim % 2 == 0) throw domain_error("pinning applies to odd-dimensional targets only");
  if (r.size() % 2 == 0) throw domain_error("pinning needs an odd node count");
  PinnedSystem ps;
  ps.pinned_index = int(r.size() - 1) / 2;
  ps.unknowns = 2 * int(r.size()) - 1;
  ps.equations = dim;
  return ps;
}

Source build_source(int d, int c, const std::vector<double>& x, const Config& cfg) {
  Deriver dv(d, c, cfg);
  if (c == 1) {
    if ((x.size() - 1) % 2 || x.size() < 5)
      throw unsupported_error("Gauss source needs an even element count >= 4");
    return dv.gauss_source(x);
  }
  if (x.size() < 3) throw unsupported_error("Radau source needs at least two elements");
  return dv.radau_source(x);
}

template <class R>
Rule<R> derive_rule(int d, int c, const std::vector<R>& x, const Config& cfg, DeriveInfo* info) {
  check_supported(d, c);
  const int N = int(x.size()) - 1;
  if (N < 1) throw domain_error("need at least one element");
  if (c == 1 && N % 2) throw unsupported_error("Gauss family needs an even element count");
  if (c == 0 && N < 1) throw domain_error("need at least one element");
  auto kv = open_knots<R>(d, c, x);
  Space<R> S(d, kv);

  // trace in coordinates where the mean element has unit length
  const R a = x.front(), b = x.back();
  std::vector<double> xn;
  for (auto& v : x) xn.push_back(to_double(R((v - a) * R(N) / (b - a))));
  xn.front() = 0;
  xn.back() = N;
  Deriver dv(d, c, cfg);
  Rule<double> rn = dv.rule(xn);

  Rule<R> q;
  q.a = a;
  q.b = b;
  q.kind = rn.kind;
  q.pinned = rn.pinned;
  const R s = (b - a) / R(N);
  for (size_t i = 0; i < rn.size(); ++i) {
    q.t.push_back(a + R(rn.t[i]) * s);
    q.w.push_back(R(rn.w[i]) * s);
  }
  if (q.pinned >= 0) {
    // pinned nodes sit exactly on a breakpoint
    auto it = std::min_element(x.begin(), x.end(), [&](const R& u, const R& v) {
      using std::abs;
      return abs(u - q.t[q.pinned]) < abs(v - q.t[q.pinned]);
    });
    q.t[q.pinned] = *it;
  }

  // polish on the target space in the working precision
  std::vector<int> eqs(S.size());
  for (int i = 0; i < S.size(); ++i) eqs[i] = i;
  std::vector<char> fixed(q.size(), 0);
  if (q.pinned >= 0) fixed[q.pinned] = 1;
  Exactness<R> sys(S, S.integrals(), eqs);
  sys.pin(fixed);
  NewtonOptions opt;
  opt.polish = true;
  opt.max_iter = 40;
  opt.tol = std::is_same_v<R, double> ? 1e-15 : 1e-45;
  newton(sys, q.t, q.w, a, b, opt);

  auto v = verify(q, S);
  if (!v.exact || !v.positive || !v.ordered || !v.optimal) {
    std::ostringstream os;
    os << "derived rule failed verification: max residual " << to_double(v.report.max_abs)
       << ", nodes " << v.nodes << " (optimal " << v.optimal_nodes << ")";
    throw numeric_error(os.str());
  }
  if (info) {
    info->traces = dv.traces();
    info->residual_norm = to_double(v.report.norm);
    info->max_residual = to_double(v.report.max_abs);
  }
  return q;
}

template Rule<double> derive_rule<double>(int, int, const std::vector<double>&, const Config&,
                                          DeriveInfo*);
template Rule<ext> derive_rule<ext>(int, int, const std::vector<ext>&, const Config&, DeriveInfo*);

}  // namespace gg

#include "blocks.hpp"

#include "newton.hpp"

#include <boost/math/tools/roots.hpp>
#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>

namespace gg {

namespace {

template <class R>
R binom(int n, int k) {
  R r = 1;
  for (int i = 1; i <= k; ++i) r = r * R(n - k + i) / R(i);
  return r;
}

// left-element shape functions of the sixtic block: five Bernstein-like
// pieces plus the left half of the C1 function straddling the middle knot
template <class R>
R shape61(int k, const R& t) {
  using std::pow;
  if (k < 5) return binom<R>(6, k) * pow(t, k) * pow(R(1) - t, 6 - k);
  return R(6) * pow(t, 5) - R(5) * pow(t, 6);
}

template <class R>
R poly_eval(const std::vector<R>& c, const R& x) {
  R s = 0;
  for (size_t i = c.size(); i-- > 0;) s = s * x + c[i];
  return s;
}

template <class R>
R polish_root(const std::vector<R>& c, double x0) {
  std::vector<R> dc;
  for (size_t i = 1; i < c.size(); ++i) dc.push_back(R(int(i)) * c[i]);
  auto f = [&](const R& x) { return std::make_pair(poly_eval(c, x), poly_eval(dc, x)); };
  std::uintmax_t it = 100;
  int digits = std::numeric_limits<R>::digits - 4;
  return boost::math::tools::newton_raphson_iterate(f, R(x0), R(x0 - 0.05), R(x0 + 0.05), digits, it);
}

std::vector<double> real_roots_in(const std::vector<double>& coeffs, double lo, double hi) {
  Eigen::VectorXd c(coeffs.size());
  for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(c);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i) {
    auto z = solver.roots()[i];
    if (std::abs(z.imag()) < 1e-9 && z.real() > lo && z.real() < hi) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Seeds for q nodes in one unit element
std::vector<std::vector<double>> element_seeds(int q) {
  std::vector<std::vector<double>> s;
  if (q <= 0) return {{}};
  std::vector<double> a, b, c;
  for (int k = 0; k < q; ++k) {
    a.push_back((k + 0.5) / q);
    b.push_back((k + 1.0) / (q + 1));
    c.push_back(0.5 - 0.5 * std::cos(M_PI * (k + 0.5) / q));
  }
  s = {a, b, c};
  return s;
}

template <class R>
bool valid_rule(const std::vector<R>& t, const std::vector<R>& w, const R& lo, const R& hi) {
  for (size_t i = 0; i < t.size(); ++i) {
    if (!(w[i] > 0) || t[i] < lo || t[i] > hi) return false;
    if (i > 0 && !(t[i - 1] < t[i])) return false;
  }
  return true;
}

}  // namespace

template <class R>
std::vector<R> block_6_1_system(const std::vector<R>& x) {
  std::vector<R> F(6);
  for (int k = 0; k < 6; ++k) {
    // the last shape is the left half of two straddling functions: 2/7
    R s = -R(k < 5 ? 1 : 2) / R(7);
    for (int j = 0; j < 3; ++j) s += x[3 + j] * shape61(k, x[j]);
    F[k] = s;
  }
  return F;
}

template <class R>
Rule<R> gauss_block_6_1(std::vector<RootCandidate<R>>* candidates) {
  using std::abs;
  const std::vector<double> eliminant{2, -54, 507, -2024, 3840, -3402, 1127};
  std::vector<R> cR(eliminant.begin(), eliminant.end());
  auto roots = real_roots_in(eliminant, 0.0, 1.0);

  // back-substitute each root: solve the full system with one node fixed
  struct Found {
    std::vector<double> x;
  };
  std::vector<Found> rules;
  std::vector<RootCandidate<R>> cand;
  for (double r : roots) {
    RootCandidate<R> rc;
    rc.root = polish_root(cR, r);
    rc.residual = 1;
    std::vector<double> grid{0.05, 0.15, 0.3, 0.45, 0.6, 0.75, 0.9};
    for (double s0 : grid) {
      for (double u0 : grid) {
        if (u0 <= s0 || std::abs(s0 - r) < 0.03 || std::abs(u0 - r) < 0.03) continue;
        Vec<double> z(5);
        z << s0, u0, 1.0 / 3, 1.0 / 3, 1.0 / 3;
        auto f = [&](const Vec<double>& v) {
          std::vector<double> x{r, v[0], v[1], v[2], v[3], v[4]};
          auto F = block_6_1_system(x);
          return Vec<double>(Eigen::Map<Vec<double>>(F.data(), 6));
        };
        auto res = newton_small<double>(f, z, 1e-13, 60);
        if (res.residual > 1e-10) continue;
        std::vector<std::pair<double, double>> nw{{r, z[2]}, {z[0], z[3]}, {z[1], z[4]}};
        std::sort(nw.begin(), nw.end());
        bool ok = true;
        for (int j = 0; j < 3; ++j) {
          if (!(nw[j].second > 0) || nw[j].first <= 0 || nw[j].first >= 1) ok = false;
          if (j > 0 && nw[j].first - nw[j - 1].first < 1e-8) ok = false;
        }
        if (!ok) continue;
        rc.accepted = true;
        rc.residual = R(res.residual);
        std::vector<double> x{nw[0].first, nw[1].first, nw[2].first,
                              nw[0].second, nw[1].second, nw[2].second};
        bool dup = false;
        for (auto& f0 : rules) {
          double d = 0;
          for (int k = 0; k < 6; ++k) d = std::max(d, std::abs(f0.x[k] - x[k]));
          if (d < 1e-8) dup = true;
        }
        if (!dup) rules.push_back({x});
        break;
      }
      if (rc.accepted) break;
    }
    cand.push_back(rc);
  }
  if (candidates) *candidates = cand;
  if (rules.size() != 1)
    throw numeric_error("sixtic block: expected one admissible rule after root filtering, got " +
                        std::to_string(rules.size()));

  // polish in the working precision; the smallest node is taken from the
  // eliminant root so it carries full precision from the start
  Vec<R> x(6);
  for (int k = 0; k < 6; ++k) x[k] = R(rules[0].x[k]);
  for (auto& rc : cand)
    if (rc.accepted && abs(rc.root - x[0]) < R(1e-8)) x[0] = rc.root;
  auto f = [](const Vec<R>& v) {
    std::vector<R> xv(v.data(), v.data() + 6);
    auto F = block_6_1_system(xv);
    Vec<R> out(6);
    for (int k = 0; k < 6; ++k) out[k] = F[k];
    return out;
  };
  R tol = std::numeric_limits<R>::epsilon() * R(16);
  newton_small<R>(f, x, tol, 60);

  Rule<R> half;
  half.a = 0;
  half.b = 1;
  for (int k = 0; k < 3; ++k) {
    half.t.push_back(x[k]);
    half.w.push_back(x[3 + k]);
  }
  Rule<R> q;
  q.a = 0;
  q.b = 2;
  q.kind = Kind::gauss;
  q.t = half.t;
  q.w = half.w;
  for (int k = 2; k >= 0; --k) {
    q.t.push_back(R(2) - half.t[k]);
    q.w.push_back(half.w[k]);
  }
  return q;
}

template <class R>
Radau40<R> radau_block_4_0() {
  using std::abs;
  using std::pow;
  using std::sqrt;
  const R s6 = sqrt(R(6)), s174 = sqrt(R(174));
  R t1 = R(2) / 5 - s6 / 10, t2 = R(2) / 5 + s6 / 10;
  R w1 = R(4) / 9 - s6 / 36, w2 = R(4) / 9 + s6 / 36;
  R rho = R(4) / 45;
  R t3 = R(34) / 25 - s174 / 50, t4 = R(34) / 25 + s174 / 50;
  R w3 = R(76) / 153 - R(7) * s174 / 1972, w4 = R(76) / 153 + R(7) * s174 / 1972;
  R w5 = R(4) / 17;

  // numeric cross-check: first element system, residue, then the coupled
  // second element system
  R tol = std::numeric_limits<R>::epsilon() * R(64);
  auto f1 = [](const Vec<R>& v) {
    Vec<R> F(4);
    for (int k = 0; k < 4; ++k) {
      F[k] = -R(1) / 5;
      for (int j = 0; j < 2; ++j)
        F[k] += v[2 + j] * binom<R>(4, k) * pow(v[j], k) * pow(R(1) - v[j], 4 - k);
    }
    return F;
  };
  Vec<R> x1(4);
  x1 << R(0.15), R(0.65), R(0.38), R(0.51);
  auto r1 = newton_small<R>(f1, x1, tol);
  R rho_n = x1[2] * pow(x1[0], 4) + x1[3] * pow(x1[1], 4);
  auto f2 = [&](const Vec<R>& v) {
    Vec<R> F(5);
    for (int k = 0; k < 5; ++k) {
      F[k] = k == 0 ? R(-(R(2) / 5 - rho_n)) : R(-R(1) / 5);  // straddling function: 2/5 in total
      for (int j = 0; j < 2; ++j) {
        R s = v[j] - R(1);
        F[k] += v[2 + j] * binom<R>(4, k) * pow(s, k) * pow(R(1) - s, 4 - k);
      }
    }
    F[4] += v[4] / 2;
    return F;
  };
  Vec<R> x2(5);
  x2 << R(1.1), R(1.62), R(0.45), R(0.54), R(0.24);
  auto r2 = newton_small<R>(f2, x2, tol);
  const R lim = lit<R>(std::is_same_v<R, double> ? "1e-14" : "1e-30");
  R err = 0;
  auto upd = [&](const R& a, const R& b) { err = std::max<R>(err, abs(a - b)); };
  upd(x1[0], t1), upd(x1[1], t2), upd(x1[2], w1), upd(x1[3], w2), upd(rho_n, rho);
  upd(x2[0], t3), upd(x2[1], t4), upd(x2[2], w3), upd(x2[3], w4), upd(x2[4], w5);
  if (!r1.ok || !r2.ok || err > lim)
    throw numeric_error("quartic block: closed form and numeric solution disagree");

  Radau40<R> out;
  out.rho = rho;
  out.half.a = 0;
  out.half.b = 2;
  out.half.kind = Kind::radau;
  out.half.t = {t1, t2, t3, t4, R(2)};
  out.half.w = {w1, w2, w3, w4, w5 / 2};
  out.half.pinned = 4;
  Rule<R> h2 = out.half;
  h2.w.back() = w5;
  out.full = reflect_symmetric(h2, R(2));
  out.full.kind = Kind::radau;
  return out;
}

template <class R>
Rule<R> solve_block(const BlockSpec& spec) {
  const int d = spec.d, c = spec.c, n = spec.n_elements;
  if (d < 1 || c < 0 || c >= d) throw domain_error("block needs 0 <= c < d");
  if (n < 1 || n > 4) throw domain_error("block element count must be 1..4");
  std::vector<R> x;
  for (int i = 0; i <= n; ++i) x.push_back(R(i));
  auto kv = open_knots<R>(d, c, x);
  // a four-element Radau block is two pinned halves joined C^-1 in the middle
  if (n == 4) kv.m[2] = d + 1;
  Space<R> S(d, kv);
  const int dim = S.size();
  if (dim > 24) throw unsupported_error("block dimension above 24");
  auto nc = optimal_node_count(dim);
  if (nc.kind != spec.kind && n != 4)
    throw domain_error("block kind does not match the parity of its dimension");
  auto I = S.integrals();

  // layout: symmetric (mirror about the middle) unless it is a pinned half
  bool right_pinned = spec.kind == Kind::radau && n <= 2;
  bool symmetric = !right_pinned;
  const R mid = R(n) / 2;
  int m = nc.m;
  if (n == 4) m = dim / 2;  // C^-1 middle: both halves pinned at the shared node
  std::vector<int> eqs;
  int free_left;  // free nodes to place in [0, mid)
  bool centre = false;
  if (symmetric) {
    for (int i = 0; i < dim / 2; ++i) eqs.push_back(i);
    centre = m % 2 == 1;
    free_left = m / 2;
  } else {
    for (int i = 0; i < dim; ++i) eqs.push_back(i);
    free_left = m - 1;
  }
  const int span_el = symmetric ? std::max(1, n / 2) : n;
  const R hi = symmetric ? mid : R(n);

  NewtonOptions opt;
  opt.tol = std::is_same_v<R, double> ? 1e-14 : 1e-40;
  opt.max_iter = 100;
  for (int variant = 0; variant < 3; ++variant) {
    // spread free nodes evenly over the elements of the solved part
    std::vector<R> t, w;
    for (int e = 0; e < span_el; ++e) {
      int q = free_left / span_el + (e < free_left % span_el ? 1 : 0);
      auto seeds = element_seeds(q);
      for (int k = 0; k < q; ++k) {
        t.push_back(R(e) + R(seeds[variant][k]));
        w.push_back(R(1) / R(q + (centre || right_pinned ? 0.5 : 0)));
      }
    }
    std::vector<char> fixed(t.size(), 0);
    if (centre || right_pinned) {
      t.push_back(hi);
      w.push_back(R(0.2));
      fixed.push_back(1);
    }
    Exactness<R> sys(S, I, eqs);
    sys.pin(fixed);
    if (symmetric) sys.mirror(mid);
    auto res = newton(sys, t, w, R(0), hi, opt);
    if (!res.ok || !valid_rule(t, w, R(0), hi)) continue;
    Rule<R> q;
    q.a = 0;
    q.b = hi;
    q.t = t;
    q.w = w;
    q.kind = spec.kind;
    if (right_pinned) {
      q.pinned = int(t.size()) - 1;
      return q;
    }
    if (centre) {
      // the mirrored system counts a centre node once: its weight is final
      Rule<R> full = reflect_symmetric(q, mid);
      full.kind = spec.kind;
      full.pinned = spec.kind == Kind::radau ? int(t.size()) - 1 : -1;
      return full;
    }
    Rule<R> full = reflect_symmetric(q, mid);
    full.kind = spec.kind;
    return full;
  }
  throw numeric_error("block solve: no seed converged");
}

template Rule<double> gauss_block_6_1<double>(std::vector<RootCandidate<double>>*);
template Rule<ext> gauss_block_6_1<ext>(std::vector<RootCandidate<ext>>*);
template std::vector<double> block_6_1_system<double>(const std::vector<double>&);
template std::vector<ext> block_6_1_system<ext>(const std::vector<ext>&);
template Radau40<double> radau_block_4_0<double>();
template Radau40<ext> radau_block_4_0<ext>();
template Rule<double> solve_block<double>(const BlockSpec&);
template Rule<ext> solve_block<ext>(const BlockSpec&);

}  // namespace gg

#pragma once

#include "spline.hpp"

#include <cmath>
#include <vector>

namespace gg {

template <class R>
struct Rule {
  std::vector<R> t, w;
  R a = 0, b = 1;
  Kind kind = Kind::gauss;
  int pinned = -1;  // index of a node whose position is prescribed

  size_t size() const { return t.size(); }
};

template <class R2, class R>
Rule<R2> cast_rule(const Rule<R>& r) {
  Rule<R2> o;
  for (auto& v : r.t) o.t.push_back(R2(v));
  for (auto& v : r.w) o.w.push_back(R2(v));
  o.a = R2(r.a);
  o.b = R2(r.b);
  o.kind = r.kind;
  o.pinned = r.pinned;
  return o;
}

template <class R, class F>
R apply(const Rule<R>& q, F&& f) {
  R s = 0;
  for (size_t i = 0; i < q.size(); ++i) s += q.w[i] * f(q.t[i]);
  return s;
}

template <class R>
struct ResidualReport {
  std::vector<R> r;
  R norm = 0;
  R max_abs = 0;
  int dim = 0;
};

// r_i = Q[B_i] - I[B_i] over the full basis; norm = |r|_2 / dim
template <class R>
ResidualReport<R> residuals(const Rule<R>& q, const Space<R>& S) {
  using std::abs;
  using std::sqrt;
  if (q.a != S.a() || q.b != S.b()) throw domain_error("rule and space domains differ");
  ResidualReport<R> rep;
  rep.dim = S.size();
  rep.r = S.integrals();
  for (auto& v : rep.r) v = -v;
  std::vector<typename Space<R>::Entry> e;
  for (size_t j = 0; j < q.size(); ++j) {
    if (q.t[j] < S.a() || q.t[j] > S.b()) throw domain_error("node outside the domain");
    S.eval(q.t[j], e);
    for (auto& x : e) rep.r[x.i] += q.w[j] * x.v;
  }
  R ss = 0;
  for (auto& v : rep.r) {
    ss += v * v;
    if (abs(v) > rep.max_abs) rep.max_abs = abs(v);
  }
  rep.norm = sqrt(ss) / R(rep.dim);
  return rep;
}

template <class R>
R default_tolerance() {
  if constexpr (std::is_same_v<R, double>)
    return 1e-13;
  else
    return R("1e-24");
}

template <class R>
struct Verdict {
  bool exact = false;
  bool optimal = false;
  bool positive = false;
  bool ordered = false;
  int nodes = 0;
  int optimal_nodes = 0;
  ResidualReport<R> report;
};

template <class R>
Verdict<R> verify(const Rule<R>& q, const Space<R>& S, R tol = default_tolerance<R>()) {
  Verdict<R> v;
  v.report = residuals(q, S);
  v.exact = v.report.max_abs <= tol;
  v.nodes = int(q.size());
  v.optimal_nodes = optimal_node_count(S.size()).m;
  v.optimal = v.nodes == v.optimal_nodes;
  v.positive = true;
  for (auto& w : q.w)
    if (!(w > 0)) v.positive = false;
  v.ordered = true;
  for (size_t i = 1; i < q.size(); ++i)
    if (!(q.t[i - 1] < q.t[i])) v.ordered = false;
  return v;
}

// mirror a rule on [a, mid] to [a, 2 mid - a]; a node at mid is kept once
template <class R>
Rule<R> reflect_symmetric(const Rule<R>& half, const R& mid) {
  using std::abs;
  if (half.b > mid && half.a + half.b == R(2) * mid) {
    // already a full rule about mid: leave it alone if it is symmetric
    size_t n = half.size();
    R scale = half.b - half.a;
    for (size_t i = 0; i < n; ++i) {
      if (abs(half.t[i] + half.t[n - 1 - i] - R(2) * mid) > R(1e-12) * scale ||
          abs(half.w[i] - half.w[n - 1 - i]) > R(1e-12) * scale)
        throw domain_error("node beyond the reflection point");
    }
    return half;
  }
  for (auto& t : half.t)
    if (t > mid) throw domain_error("node beyond the reflection point");
  Rule<R> o;
  o.a = half.a;
  o.b = R(2) * mid - half.a;
  o.kind = half.kind;
  size_t n = half.size();
  bool centre = n > 0 && half.t.back() == mid;
  o.t = half.t;
  o.w = half.w;
  size_t k = centre ? n - 1 : n;
  for (size_t i = k; i-- > 0;) {
    o.t.push_back(R(2) * mid - half.t[i]);
    o.w.push_back(half.w[i]);
  }
  if (centre) o.pinned = int(n - 1);
  return o;
}

// affine image on [a2,b2]
template <class R>
Rule<R> affine_map(const Rule<R>& q, const R& a2, const R& b2) {
  Rule<R> o = q;
  R s = (b2 - a2) / (q.b - q.a);
  for (size_t i = 0; i < q.size(); ++i) {
    o.t[i] = a2 + (q.t[i] - q.a) * s;
    o.w[i] = q.w[i] * s;
  }
  o.a = a2;
  o.b = b2;
  return o;
}

// union of two rules on touching domains; nodes at the junction are fused
template <class R>
Rule<R> join(const Rule<R>& l, const Rule<R>& r) {
  if (l.b != r.a) throw domain_error("rules do not touch");
  Rule<R> o;
  o.a = l.a;
  o.b = r.b;
  o.kind = l.kind;
  o.t = l.t;
  o.w = l.w;
  size_t start = 0;
  if (!o.t.empty() && !r.t.empty() && o.t.back() == r.t.front()) {
    o.w.back() += r.w.front();
    o.pinned = int(o.t.size()) - 1;
    start = 1;
  }
  o.t.insert(o.t.end(), r.t.begin() + start, r.t.end());
  o.w.insert(o.w.end(), r.w.begin() + start, r.w.end());
  return o;
}

// mirror image of a rule about the centre of its domain
template <class R>
Rule<R> flip(const Rule<R>& q) {
  Rule<R> o = q;
  size_t n = q.size();
  for (size_t i = 0; i < n; ++i) {
    o.t[i] = q.a + q.b - q.t[n - 1 - i];
    o.w[i] = q.w[n - 1 - i];
  }
  if (q.pinned >= 0) o.pinned = int(n) - 1 - q.pinned;
  return o;
}

}  // namespace gg

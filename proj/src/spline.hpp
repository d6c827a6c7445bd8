#pragma once

#include "real.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <utility>
#include <vector>

namespace gg {

struct Galerkin {
  int p = 0, k = 0, l = 0;
};

// (p,k,l) -> (d,c) of the smallest space holding products of the trial
// functions and their l-th derivatives
inline std::pair<int, int> galerkin_target(const Galerkin& g) {
  if (g.l > g.k) throw domain_error("derivative order exceeds continuity");
  if (g.p < 0 || g.k < 0 || g.l < 0 || g.k >= g.p)
    throw domain_error("need 0 <= l <= k < p");
  return {2 * g.p, g.k - g.l};
}

template <class R>
struct KnotVector {
  std::vector<R> x;
  std::vector<int> m;

  void check() const {
    if (x.size() < 2 || x.size() != m.size())
      throw domain_error("knot vector needs >= 2 breakpoints and matching multiplicities");
    for (size_t i = 0; i + 1 < x.size(); ++i)
      if (!(x[i] < x[i + 1])) throw domain_error("breakpoints must be strictly increasing");
    for (int mi : m)
      if (mi < 1) throw domain_error("multiplicities must be positive");
  }
  std::vector<R> sequence() const {
    std::vector<R> T;
    for (size_t i = 0; i < x.size(); ++i) T.insert(T.end(), m[i], x[i]);
    return T;
  }
  size_t elements() const { return x.size() - 1; }
};

// open knot vector with ends of multiplicity d+1 and interior multiplicity d-c
template <class R>
KnotVector<R> open_knots(int d, int c, const std::vector<R>& x) {
  KnotVector<R> kv;
  kv.x = x;
  kv.m.assign(x.size(), d - c);
  kv.m.front() = kv.m.back() = d + 1;
  kv.check();
  return kv;
}

template <class R>
KnotVector<R> uniform_knots(int d, int c, int N, const R& a, const R& b) {
  if (N < 1) throw domain_error("need at least one element");
  std::vector<R> x(N + 1);
  for (int i = 0; i <= N; ++i) x[i] = a + (b - a) * R(i) / R(N);
  x.back() = b;
  return open_knots(d, c, x);
}

// Spline basis over an arbitrary knot sequence restricted to [a,b]. Knots may
// lie beyond b while a homotopy pushes them out of the domain.
template <class R>
class Space {
 public:
  Space() = default;
  Space(int d, std::vector<R> T, R a, R b) : d_(d), T_(std::move(T)), a_(a), b_(b) {
    if (d_ < 0) throw domain_error("negative degree");
    if (int(T_.size()) < d_ + 2) throw domain_error("knot sequence too short");
    if (!std::is_sorted(T_.begin(), T_.end())) throw domain_error("knot sequence not sorted");
    if (!(a_ < b_)) throw domain_error("empty domain");
  }
  Space(int d, const KnotVector<R>& kv) : Space(d, kv.sequence(), kv.x.front(), kv.x.back()) {
    kv.check();
    for (size_t i = 1; i + 1 < kv.m.size(); ++i)
      if (kv.m[i] > d + 1) throw domain_error("interior multiplicity exceeds d+1");
    if (kv.m.front() != d + 1 || kv.m.back() != d + 1)
      throw domain_error("knot vector is not open");
    if (size() < d + 1) throw domain_error("dimension below d+1");
  }

  int degree() const { return d_; }
  const std::vector<R>& knots() const { return T_; }
  const R& a() const { return a_; }
  const R& b() const { return b_; }
  int size() const { return int(T_.size()) - d_ - 1; }

  // values and first derivatives of the d+1 functions alive on span mu
  void span_eval(int mu, const R& x, R* N, R* dN) const {
    const int d = d_;
    std::vector<R> left(d + 1), right(d + 1), cur(d + 1), nxt(d + 1), prev(d + 1);
    cur[0] = R(1);
    for (int j = 1; j <= d; ++j) {
      left[j] = x - T_[mu + 1 - j];
      right[j] = T_[mu + j] - x;
      R saved = 0;
      for (int r = 0; r < j; ++r) {
        R den = right[r + 1] + left[j - r];
        R tmp = den != 0 ? R(cur[r] / den) : R(0);
        nxt[r] = saved + right[r + 1] * tmp;
        saved = left[j - r] * tmp;
      }
      nxt[j] = saved;
      if (j == d) std::copy(cur.begin(), cur.begin() + d, prev.begin());
      std::swap(cur, nxt);
    }
    for (int r = 0; r <= d; ++r) N[r] = cur[r];
    if (!dN) return;
    for (int r = 0; r <= d; ++r) {
      int i = mu - d + r;
      R dv = 0;
      if (d > 0) {
        if (r >= 1) {
          R den = T_[i + d] - T_[i];
          if (den != 0) dv += R(d) * prev[r - 1] / den;
        }
        if (r <= d - 1) {
          R den = T_[i + d + 1] - T_[i + 1];
          if (den != 0) dv -= R(d) * prev[r] / den;
        }
      }
      dN[r] = dv;
    }
  }

  int find_span(const R& x, bool left_limit) const {
    auto it = left_limit ? std::lower_bound(T_.begin(), T_.end(), x)
                         : std::upper_bound(T_.begin(), T_.end(), x);
    int mu = int(it - T_.begin()) - 1;
    return std::clamp(mu, 0, int(T_.size()) - 2);
  }

  struct Entry {
    int i;
    R v, dv;
  };

  // Nonzero basis values at x. At b the left limit is used; at an interior
  // knot of full multiplicity the two one-sided limits are averaged.
  void eval(const R& x, std::vector<Entry>& out) const {
    out.clear();
    if (x >= b_) {
      push_span(find_span(b_, true), b_, R(1), out);
      return;
    }
    if (x > a_) {
      auto lo = std::lower_bound(T_.begin(), T_.end(), x);
      auto hi = std::upper_bound(T_.begin(), T_.end(), x);
      if (hi - lo >= d_ + 1) {
        push_span(find_span(x, true), x, R(0.5), out);
        push_span(find_span(x, false), x, R(0.5), out);
        return;
      }
    }
    push_span(find_span(x, false), x, R(1), out);
  }

  R basis(int i, const R& x) const {
    if (i < 0 || i >= size()) throw domain_error("basis index out of range");
    if (x < a_ || x > b_) throw domain_error("evaluation point outside the domain");
    std::vector<Entry> e;
    eval(x, e);
    R s = 0;
    for (auto& q : e)
      if (q.i == i) s += q.v;
    return s;
  }

  R basis_derivative(int i, const R& x) const {
    std::vector<Entry> e;
    eval(x, e);
    R s = 0;
    for (auto& q : e)
      if (q.i == i) s += q.dv;
    return s;
  }

  // exact integrals of all basis functions over [a,b]
  std::vector<R> integrals() const {
    if (d_ <= 18) return integrals_q<10>();
    if (d_ <= 38) return integrals_q<20>();
    throw unsupported_error("degree too high for exact span integration");
  }

  // factor turning the normalized basis into the divided-difference basis
  // whose integral over its full support is 1/(d+1)
  R paper_scale(int i) const {
    R w = T_[i + d_ + 1] - T_[i];
    return w != 0 ? R(R(1) / w) : R(0);
  }

  std::vector<R> breakpoints_in_domain() const {
    std::vector<R> br{a_};
    for (auto& t : T_)
      if (t > a_ && t < b_ && t != br.back()) br.push_back(t);
    br.push_back(b_);
    return br;
  }

 private:
  void push_span(int mu, const R& x, const R& scale, std::vector<Entry>& out) const {
    if (T_[mu] == T_[mu + 1]) return;
    std::vector<R> N(d_ + 1), dN(d_ + 1);
    span_eval(mu, x, N.data(), dN.data());
    for (int r = 0; r <= d_; ++r) {
      int i = mu - d_ + r;
      if (i < 0 || i >= size()) continue;
      out.push_back({i, scale * N[r], scale * dN[r]});
    }
  }

  template <unsigned Q>
  std::vector<R> integrals_q() const {
    using G = boost::math::quadrature::gauss<R, Q>;
    const auto& xg = G::abscissa();
    const auto& wg = G::weights();
    std::vector<R> I(size(), R(0));
    std::vector<R> N(d_ + 1);
    auto br = breakpoints_in_domain();
    for (size_t s = 0; s + 1 < br.size(); ++s) {
      R lo = br[s], hi = br[s + 1];
      R half = (hi - lo) / 2, mid = (hi + lo) / 2;
      int mu = find_span(mid, false);
      for (size_t q = 0; q < xg.size(); ++q) {
        for (int sgn : {-1, 1}) {
          if (sgn < 0 && xg[q] == 0) continue;
          R x = mid + R(sgn) * half * xg[q];
          span_eval(mu, x, N.data(), nullptr);
          for (int r = 0; r <= d_; ++r) {
            int i = mu - d_ + r;
            if (i >= 0 && i < size()) I[i] += half * wg[q] * N[r];
          }
        }
      }
    }
    return I;
  }

  int d_ = 0;
  std::vector<R> T_;
  R a_ = 0, b_ = 1;
};

template <class R>
int dimension(int d, const KnotVector<R>& kv) {
  int s = 0;
  for (int mi : kv.m) s += mi;
  return s - (d + 1);
}

enum class Kind { gauss, radau };

struct NodeCount {
  int m;
  Kind kind;
};

inline NodeCount optimal_node_count(int dim) {
  if (dim % 2 == 0) return {dim / 2, Kind::gauss};
  return {(dim + 1) / 2, Kind::radau};
}

template <class R>
NodeCount optimal_node_count(int d, const KnotVector<R>& kv) {
  return optimal_node_count(dimension(d, kv));
}

// C^-1 join: the shared breakpoint gets multiplicity d+1
template <class R>
KnotVector<R> merge_c_minus_1(int d, const KnotVector<R>& left, const KnotVector<R>& right) {
  left.check();
  right.check();
  if (left.x.back() != right.x.front()) throw domain_error("domains do not touch");
  KnotVector<R> out;
  out.x = left.x;
  out.m = left.m;
  out.m.back() = d + 1;
  out.x.insert(out.x.end(), right.x.begin() + 1, right.x.end());
  out.m.insert(out.m.end(), right.m.begin() + 1, right.m.end());
  return out;
}

template <class R2, class R>
KnotVector<R2> cast_knots(const KnotVector<R>& kv) {
  KnotVector<R2> o;
  o.m = kv.m;
  for (auto& v : kv.x) o.x.push_back(R2(v));
  return o;
}

}  // namespace gg

#pragma once

#include "quadrature.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace gg {

template <class R>
using Mat = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
template <class R>
using Vec = Eigen::Matrix<R, Eigen::Dynamic, 1>;

// Exactness equations sum_j w_j B_i(t_j) = I_i for i in eqs. Unknowns are
// the free nodes followed by all weights. With a mirror centre every node
// also acts at its reflection (a node sitting on the centre counts once).
template <class R>
class Exactness {
 public:
  Exactness(const Space<R>& S, std::vector<R> I, std::vector<int> eqs)
      : S_(S), I_(std::move(I)), eqs_(std::move(eqs)) {}

  void pin(std::vector<char> fixed) { fixed_ = std::move(fixed); }
  void mirror(const R& centre) {
    mirror_ = true;
    centre_ = centre;
  }

  const Space<R>& space() const { return S_; }
  size_t equations() const { return eqs_.size(); }
  bool is_fixed(size_t j) const { return j < fixed_.size() && fixed_[j]; }
  bool mirrored() const { return mirror_; }
  const R& centre() const { return centre_; }

  size_t unknowns(size_t m) const {
    size_t k = m;
    for (size_t j = 0; j < m; ++j)
      if (!is_fixed(j)) ++k;
    return k;
  }

  void eval(const std::vector<R>& t, const std::vector<R>& w, Vec<R>& F, Mat<R>* J) const {
    const size_t m = t.size(), ne = eqs_.size();
    std::vector<int> row(S_.size(), -1);
    for (size_t k = 0; k < ne; ++k) row[eqs_[k]] = int(k);
    F.resize(ne);
    for (size_t k = 0; k < ne; ++k) F[k] = -I_[eqs_[k]];
    if (J) J->setZero(ne, unknowns(m));
    std::vector<typename Space<R>::Entry> e;
    int col = 0;
    std::vector<int> tcol(m, -1);
    for (size_t j = 0; j < m; ++j)
      if (!is_fixed(j)) tcol[j] = col++;
    for (size_t j = 0; j < m; ++j) {
      const int wc = col + int(j);
      auto add = [&](const R& x, const R& sign) {
        S_.eval(x, e);
        for (auto& q : e) {
          int k = row[q.i];
          if (k < 0) continue;
          F[k] += w[j] * q.v;
          if (J) {
            (*J)(k, wc) += q.v;
            if (tcol[j] >= 0) (*J)(k, tcol[j]) += sign * w[j] * q.dv;
          }
        }
      };
      add(t[j], R(1));
      if (mirror_ && t[j] != centre_) add(R(2) * centre_ - t[j], R(-1));
    }
  }

 private:
  const Space<R>& S_;
  std::vector<R> I_;
  std::vector<int> eqs_;
  std::vector<char> fixed_;
  bool mirror_ = false;
  R centre_ = 0;
};

struct NewtonOptions {
  double tol = 1e-13;
  int max_iter = 60;
  double min_step = 1e-4;
  bool polish = false;  // keep iterating while the residual still drops
};

template <class R>
struct NewtonResult {
  bool ok = false;
  int iterations = 0;
  R residual = 0;
};

template <class R>
R max_abs(const Vec<R>& F) {
  using std::abs;
  R r = 0;
  for (Eigen::Index i = 0; i < F.size(); ++i)
    if (abs(F[i]) > r) r = abs(F[i]);
  return r;
}

template <class R>
Vec<R> solve_dense(const Mat<R>& J, const Vec<R>& rhs) {
  if (J.rows() == J.cols()) return J.partialPivLu().solve(rhs);
  return J.colPivHouseholderQr().solve(rhs);
}

template <class R>
bool finite_vec(const Vec<R>& v) {
  using std::isfinite;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if constexpr (std::is_same_v<R, double>) {
      if (!std::isfinite(v[i])) return false;
    } else {
      if (!boost::multiprecision::isfinite(v[i])) return false;
    }
  }
  return true;
}

// Damped Newton with backtracking. A step is accepted only when nodes stay
// strictly ordered inside [lo,hi] and the max residual drops.
template <class R>
NewtonResult<R> newton(const Exactness<R>& sys, std::vector<R>& t, std::vector<R>& w,
                       const R& lo, const R& hi, const NewtonOptions& opt) {
  NewtonResult<R> res;
  const R tol(opt.tol);
  Vec<R> F, F2;
  Mat<R> J, J2;
  sys.eval(t, w, F, &J);
  R r = max_abs(F);
  res.residual = r;
  if (r <= tol && !opt.polish) {
    res.ok = true;
    return res;
  }
  const size_t m = t.size();
  for (int it = 0; it < opt.max_iter; ++it) {
    Vec<R> dx = solve_dense<R>(J, Vec<R>(-F));
    if (!finite_vec(dx)) break;
    R lam = 1;
    bool accepted = false;
    std::vector<R> nt, nw;
    R r2 = 0;
    while (lam > R(opt.min_step)) {
      nt = t;
      nw = w;
      int c = 0;
      for (size_t j = 0; j < m; ++j)
        if (!sys.is_fixed(j)) nt[j] += lam * dx[c++];
      for (size_t j = 0; j < m; ++j) nw[j] += lam * dx[c++];
      bool ok = true;
      for (size_t j = 0; j < m && ok; ++j) {
        if (nt[j] < lo || nt[j] > hi) ok = false;
        if (j > 0 && !(nt[j - 1] < nt[j])) ok = false;
      }
      if (ok) {
        sys.eval(nt, nw, F2, &J2);
        r2 = max_abs(F2);
        if (r2 < r * (R(1) - R(1e-4) * lam) || (r2 <= tol && !opt.polish)) {
          accepted = true;
          break;
        }
      }
      lam /= 2;
    }
    if (!accepted) break;
    t.swap(nt);
    w.swap(nw);
    F.swap(F2);
    J.swap(J2);
    r = r2;
    res.iterations = it + 1;
    res.residual = r;
    if (r <= tol && !opt.polish) {
      res.ok = true;
      return res;
    }
  }
  res.ok = r <= tol;
  return res;
}

// Newton for small square systems given as callables; the Jacobian is a
// central difference, which is plenty for these polynomial systems.
template <class R>
NewtonResult<R> newton_small(const std::function<Vec<R>(const Vec<R>&)>& f, Vec<R>& x,
                             const R& tol, int max_iter = 100) {
  using std::abs;
  NewtonResult<R> res;
  const Eigen::Index n = x.size();
  R h = lit<R>(std::is_same_v<R, double> ? "1e-7" : "1e-22");
  Vec<R> F = f(x);
  R r = max_abs(F);
  // a few extra steps once under tol, kept only while they still help
  int extra = 0;
  for (int it = 0; it < max_iter && (r > tol || extra++ < 3); ++it) {
    Mat<R> J(F.size(), n);
    for (Eigen::Index k = 0; k < n; ++k) {
      Vec<R> xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      J.col(k) = (f(xp) - f(xm)) / (R(2) * h);
    }
    Vec<R> dx = solve_dense<R>(J, Vec<R>(-F));
    if (!finite_vec(dx)) break;
    R lam = 1;
    bool accepted = false;
    while (lam > R(1e-6)) {
      Vec<R> xn = x + lam * dx;
      Vec<R> Fn = f(xn);
      R rn = max_abs(Fn);
      if (finite_vec(Fn) && rn < r) {
        x = xn;
        F = Fn;
        r = rn;
        accepted = true;
        break;
      }
      lam /= 2;
    }
    res.iterations = it + 1;
    if (!accepted) break;
  }
  res.residual = r;
  res.ok = r <= tol;
  return res;
}

}  // namespace gg

#include "asymptotic.hpp"

#include "newton.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>

namespace gg {

template <class R>
Asymptotic<R> closed_form_4_0() {
  using std::sqrt;
  Asymptotic<R> A;
  A.d = 4;
  A.c = 0;
  A.period = 1;
  A.d1 = R(1) / 2 + sqrt(R(7)) / 10 - sqrt(R(2)) / 10;
  A.d2 = R(1) / 2 - sqrt(R(7)) / 10 - sqrt(R(2)) / 10;
  A.w1 = R(1) / 2 + sqrt(R(14)) / 84;
  A.w2 = R(1) / 2 - sqrt(R(14)) / 84;
  A.w3 = sqrt(R(2)) / 6;
  return A;
}

template <class R>
Asymptotic<R> closed_form_6_1() {
  using std::sqrt;
  const R s5 = sqrt(R(5)), s6 = sqrt(R(6)), s13 = sqrt(R(13)), s78 = sqrt(R(78));
  Asymptotic<R> A;
  A.d = 6;
  A.c = 1;
  A.period = 2;
  A.d1 = R(67) / 98 - R(3) * s78 / 98 - sqrt(R(95) - R(10) * s78) / 98;
  A.d2 = R(67) / 98 + R(3) * s78 / 98 - sqrt(R(95) + R(10) * s78) / 98;
  A.w1 = R(1693) / 4160 + R(3) * s5 * s13 / 4160 - R(673) * s5 * s6 / 99840 +
         R(2047) * s6 * s13 / 299520;
  A.w2 = R(1693) / 4160 + R(3) * s5 * s13 / 4160 + R(673) * s5 * s6 / 99840 -
         R(2047) * s6 * s13 / 299520;
  A.w3 = R(387) / 1040 - R(3) * s5 * s13 / 1040;
  return A;
}

// exactness on the four basis functions living on one element next to the
// middle knot: three single-element quartics and the C0 function spanning
// the element and its neighbour
template <class R>
std::array<R, 4> system_4_0(const R& d1, const R& d2, const R& w1, const R& w2) {
  using std::pow;
  auto f = [&](auto g) { return g(d1, w1) + g(d2, w2); };
  const R fifth = R(1) / 5;
  return {
      f([](const R& d, const R& w) { return R(4) * d * w * pow(R(1) - d, 3); }) - fifth,
      f([](const R& d, const R& w) { return R(6) * d * d * w * pow(R(1) - d, 2); }) - fifth,
      f([](const R& d, const R& w) { return R(4) * pow(d, 3) * w * (R(1) - d); }) - fifth,
      f([](const R& d, const R& w) { return w * pow(d, 4) + w * pow(R(1) - d, 4); }) -
          R(2) * fifth,
  };
}

template <class R>
std::array<R, 4> system_6_1(const R& d1, const R& d2, const R& w1, const R& w2) {
  using std::pow;
  auto f = [&](auto g) { return g(d1, w1) + g(d2, w2); };
  const R seventh = R(1) / 7;
  return {
      f([](const R& d, const R& w) { return R(15) * d * d * w * pow(R(1) - d, 4); }) - seventh,
      f([](const R& d, const R& w) { return R(20) * pow(d, 3) * w * pow(R(1) - d, 3); }) - seventh,
      f([](const R& d, const R& w) { return R(15) * pow(d, 4) * w * pow(R(1) - d, 2); }) - seventh,
      f([](const R& d, const R& w) { return R(6) * w * pow(d, 5) - R(5) * w * pow(d, 6); }) -
          R(2) * seventh,
  };
}

namespace {

template <class R>
void check_close(const Asymptotic<R>& A, const Asymptotic<R>& B, const char* what) {
  using std::abs;
  const R lim = lit<R>(std::is_same_v<R, double> ? "1e-14" : "1e-30");
  R e = std::max({abs(A.d1 - B.d1), abs(A.d2 - B.d2), abs(A.w1 - B.w1), abs(A.w2 - B.w2),
                  abs(A.w3 - B.w3)});
  if (e > lim) throw numeric_error(std::string(what) + ": closed form mismatch");
}

template <class R>
Vec<R> as_vec(const std::array<R, 4>& a) {
  Vec<R> v(4);
  for (int i = 0; i < 4; ++i) v[i] = a[i];
  return v;
}

template <class R>
R tight() {
  return std::numeric_limits<R>::epsilon() * R(64);
}

}  // namespace

template <class R>
Asymptotic<R> solve_asymptotic_4_0() {
  using std::pow;
  auto f = [](const Vec<R>& x) { return as_vec(system_4_0<R>(x[0], x[1], x[2], x[3])); };
  const double seeds[][4] = {{0.6, 0.1, 0.5, 0.5}, {0.7, 0.2, 0.5, 0.5}, {0.5, 0.05, 0.6, 0.4}};
  for (auto& s : seeds) {
    Vec<R> x(4);
    for (int i = 0; i < 4; ++i) x[i] = R(s[i]);
    auto res = newton_small<R>(f, x, tight<R>());
    if (!res.ok) continue;
    // left-element convention: d2 < d1 and d1 + d2 < 1
    if (!(x[1] > 0 && x[1] < x[0] && x[0] + x[1] < 1 && x[2] > 0 && x[3] > 0)) continue;
    Asymptotic<R> A;
    A.d = 4;
    A.c = 0;
    A.period = 1;
    A.d1 = x[0];
    A.d2 = x[1];
    A.w1 = x[2];
    A.w2 = x[3];
    // middle discontinuous function: half of it sits on each side
    A.w3 = R(2) * (R(1) / 5 - A.w1 * pow(A.d1, 4) - A.w2 * pow(A.d2, 4));
    check_close(A, closed_form_4_0<R>(), "quartic asymptotic rule");
    return A;
  }
  throw numeric_error("quartic asymptotic system: no admissible solution");
}

template <class R>
Asymptotic<R> solve_asymptotic_6_1() {
  using std::abs;
  // the eliminant quartic gives both offsets; pair its roots, recover the
  // weights from two rows and keep the pair satisfying all four
  Eigen::VectorXd c(5);
  c << 52, -364, 905, -938, 343;
  Eigen::PolynomialSolver<double, 4> ps(c);
  std::vector<double> rr;
  for (Eigen::Index i = 0; i < 4; ++i) {
    auto z = ps.roots()[i];
    if (std::abs(z.imag()) < 1e-9 && z.real() > 0 && z.real() < 1) rr.push_back(z.real());
  }
  std::sort(rr.begin(), rr.end());
  auto f = [](const Vec<R>& x) { return as_vec(system_6_1<R>(x[0], x[1], x[2], x[3])); };
  for (size_t i = 0; i < rr.size(); ++i) {
    for (size_t j = i + 1; j < rr.size(); ++j) {
      double a = rr[i], b = rr[j];
      Eigen::Matrix2d M;
      M << 15 * a * a * std::pow(1 - a, 4), 15 * b * b * std::pow(1 - b, 4),
          20 * std::pow(a, 3) * std::pow(1 - a, 3), 20 * std::pow(b, 3) * std::pow(1 - b, 3);
      Eigen::Vector2d w = M.partialPivLu().solve(Eigen::Vector2d(1.0 / 7, 1.0 / 7));
      auto F = system_6_1<double>(a, b, w[0], w[1]);
      double r = 0;
      for (double v : F) r = std::max(r, std::abs(v));
      if (r > 1e-10 || w[0] <= 0 || w[1] <= 0) continue;
      Vec<R> x(4);
      x << R(a), R(b), R(w[0]), R(w[1]);
      auto res = newton_small<R>(f, x, tight<R>());
      if (!res.ok) continue;
      Asymptotic<R> A;
      A.d = 6;
      A.c = 1;
      A.period = 2;
      A.d1 = x[0];
      A.d2 = x[1];
      A.w1 = x[2];
      A.w2 = x[3];
      A.w3 = R(2) - R(2) * A.w1 - R(2) * A.w2;  // constants over one period
      check_close(A, closed_form_6_1<R>(), "sixtic asymptotic rule");
      return A;
    }
  }
  throw numeric_error("sixtic asymptotic system: no admissible solution");
}

template <class R>
Asymptotic<R> solve_asymptotic(int d, int c) {
  if (d == 4 && c == 0) return solve_asymptotic_4_0<R>();
  if (d == 6 && c == 1) return solve_asymptotic_6_1<R>();
  throw unsupported_error("asymptotic rules exist for (4,0) and (6,1) only");
}

int elements_from_nodes(int c, size_t m) {
  if (m < 1) return 0;
  if (c == 0) return int(m - 1) / 2;
  return int(2 * (m - 1)) / 5;
}

template <class R>
Rule<R> asymptotic_pattern(const Asymptotic<R>& A, int N, const R& a, const R& b,
                           std::vector<int>* elem) {
  if (N < 2 || N % 2) throw domain_error("periodic pattern needs an even element count");
  const R h = (b - a) / R(N);
  std::vector<std::pair<R, R>> nw;  // unit coordinates
  if (A.c == 0) {
    const int M = N / 2;
    for (int e = 0; e < M; ++e) {
      nw.push_back({R(e) + A.d2, A.w2});
      nw.push_back({R(e) + A.d1, A.w1});
    }
    nw.push_back({R(M), A.w3});
    for (int e = M - 1; e >= 0; --e) {
      nw.push_back({R(N) - (R(e) + A.d1), A.w1});
      nw.push_back({R(N) - (R(e) + A.d2), A.w2});
    }
  } else {
    for (int i = 0; i < N / 2; ++i) {
      R o = R(2 * i);
      nw.push_back({o, A.w3});
      nw.push_back({o + A.d1, A.w1});
      nw.push_back({o + A.d2, A.w2});
      nw.push_back({o + R(2) - A.d2, A.w2});
      nw.push_back({o + R(2) - A.d1, A.w1});
    }
    nw.push_back({R(N), A.w3});
  }
  Rule<R> q;
  q.a = a;
  q.b = b;
  q.kind = A.c == 0 ? Kind::radau : Kind::gauss;
  if (elem) elem->clear();
  for (auto& [u, w] : nw) {
    q.t.push_back(a + u * h);
    q.w.push_back(w * h);
    if (elem) {
      int e = int(to_double(u)) + 1;
      elem->push_back(std::clamp(e, 1, N));
    }
  }
  q.t.front() = std::max(q.t.front(), a);
  q.t.back() = std::min(q.t.back(), b);
  if (A.c == 0) {
    q.pinned = N;
    q.t[N] = a + R(N / 2) * h;
  }
  return q;
}

template <class R>
int boundary_depth(const Rule<R>& q, const Asymptotic<R>& A, R tol) {
  using std::abs;
  const int N = elements_from_nodes(A.c, q.size());
  if (N < 2 || N % 2) return N;
  std::vector<int> elem;
  auto P = asymptotic_pattern(A, N, q.a, q.b, &elem);
  if (P.size() != q.size()) return N;
  const R h = (q.b - q.a) / R(N);
  int depth = 0;
  for (size_t i = 0; i < q.size(); ++i) {
    R st = tol * std::max<R>(abs(P.t[i] - q.a), h);
    R sw = tol * abs(P.w[i]);
    if (abs(q.t[i] - P.t[i]) > st || abs(q.w[i] - P.w[i]) > sw) {
      int e = elem[i];
      depth = std::max(depth, std::min(e, N + 1 - e));
    }
  }
  return depth >= N / 2 ? N : depth;
}

template <class R>
Rule<R> compose_finite(const Asymptotic<R>& A, const Rule<R>& boundary, int N, const R& a,
                       const R& b, int depth) {
  const int N0 = elements_from_nodes(A.c, boundary.size());
  if (depth < 0) depth = boundary_depth(boundary, A);
  if (depth >= N0 / 2) throw numeric_error("boundary rule never reaches the periodic pattern");
  if (N % 2 || N < 2 * depth + A.period)
    throw domain_error("too few elements to hold two boundary blocks and the periodic part");
  std::vector<int> elem;
  auto q = asymptotic_pattern(A, N, a, b, &elem);
  const size_t M = q.size(), M0 = boundary.size();
  const R h = (b - a) / R(N), h0 = (boundary.b - boundary.a) / R(N0);
  for (size_t i = 0; i < M; ++i) {
    if (elem[i] <= depth) {
      q.t[i] = a + (boundary.t[i] - boundary.a) / h0 * h;
      q.w[i] = boundary.w[i] / h0 * h;
    } else if (elem[i] > N - depth) {
      size_t j = M0 - (M - i);
      q.t[i] = b - (boundary.b - boundary.t[j]) / h0 * h;
      q.w[i] = boundary.w[j] / h0 * h;
    }
  }
  return q;
}

#define GG_INSTANTIATE(R)                                                                     \
  template Asymptotic<R> closed_form_4_0<R>();                                                 \
  template Asymptotic<R> closed_form_6_1<R>();                                                 \
  template std::array<R, 4> system_4_0<R>(const R&, const R&, const R&, const R&);             \
  template std::array<R, 4> system_6_1<R>(const R&, const R&, const R&, const R&);             \
  template Asymptotic<R> solve_asymptotic_4_0<R>();                                            \
  template Asymptotic<R> solve_asymptotic_6_1<R>();                                            \
  template Asymptotic<R> solve_asymptotic<R>(int, int);                                        \
  template Rule<R> asymptotic_pattern<R>(const Asymptotic<R>&, int, const R&, const R&,        \
                                         std::vector<int>*);                                   \
  template int boundary_depth<R>(const Rule<R>&, const Asymptotic<R>&, R);                     \
  template Rule<R> compose_finite<R>(const Asymptotic<R>&, const Rule<R>&, int, const R&,      \
                                     const R&, int);

GG_INSTANTIATE(double)
GG_INSTANTIATE(ext)

}  // namespace gg

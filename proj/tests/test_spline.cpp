#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "spline.hpp"

#include <Eigen/Dense>

#include <random>

using namespace gg;

namespace {

// random open knot vector: d in {2,4,6,8}, 1..6 elements, interior
// multiplicities in [1, d+1]
struct RandomSpace {
  int d;
  KnotVector<double> kv;
};

RandomSpace random_space(std::mt19937& g) {
  std::uniform_int_distribution<int> dd(1, 4), ne(1, 6);
  std::uniform_real_distribution<double> len(0.2, 2.0), a0(-3, 3);
  RandomSpace r;
  r.d = 2 * dd(g);
  int n = ne(g);
  double x = a0(g);
  std::uniform_int_distribution<int> mm(1, r.d + 1);
  r.kv.x.push_back(x);
  r.kv.m.push_back(r.d + 1);
  for (int i = 0; i < n; ++i) {
    x += len(g);
    r.kv.x.push_back(x);
    r.kv.m.push_back(i + 1 == n ? r.d + 1 : mm(g));
  }
  return r;
}

}  // namespace

TEST_CASE("galerkin target space") {
  CHECK(galerkin_target({3, 2, 1}) == std::pair{6, 1});
  CHECK(galerkin_target({2, 1, 1}) == std::pair{4, 0});
  CHECK(galerkin_target({1, 0, 0}) == std::pair{2, 0});
  CHECK_THROWS_AS(galerkin_target({3, 1, 2}), domain_error);
  CHECK_THROWS_AS(galerkin_target({2, 2, 0}), domain_error);
  CHECK_THROWS_AS(galerkin_target({2, -1, 0}), domain_error);
}

TEST_CASE("dimension of open spaces") {
  KnotVector<double> b61{{0, 1, 2}, {7, 5, 7}};
  CHECK(dimension(6, b61) == 12);
  CHECK(Space<double>(6, b61).size() == 12);
  KnotVector<double> b40{{0, 1, 2, 3, 4}, {5, 4, 5, 4, 5}};
  CHECK(dimension(4, b40) == 18);
  auto nu = open_knots<double>(6, 1, {0, 0.5, 1, 1.5, 2, 3, 4, 6, 8});
  CHECK(dimension(6, nu) == 42);
  CHECK(Space<double>(6, nu).size() == 42);
}

TEST_CASE("optimal node count") {
  auto k61 = uniform_knots<double>(6, 1, 16, 0, 16);
  CHECK(dimension(6, k61) == 82);
  auto n = optimal_node_count(6, k61);
  CHECK(n.m == 41);
  CHECK(n.kind == Kind::gauss);
  auto k40 = uniform_knots<double>(4, 0, 32, 0, 32);
  CHECK(dimension(4, k40) == 129);
  n = optimal_node_count(4, k40);
  CHECK(n.m == 65);
  CHECK(n.kind == Kind::radau);
  n = optimal_node_count(6, KnotVector<double>{{0, 1, 2}, {7, 5, 7}});
  CHECK(n.m == 6);
  CHECK(n.kind == Kind::gauss);
}

TEST_CASE("space construction rejects bad knot data") {
  CHECK_THROWS_AS(Space<double>(4, KnotVector<double>{{0, 1}, {5}}), domain_error);
  CHECK_THROWS_AS(Space<double>(4, KnotVector<double>{{0, 0, 1}, {5, 1, 5}}), domain_error);
  CHECK_THROWS_AS(Space<double>(4, KnotVector<double>{{0, 1, 2}, {5, 6, 5}}), domain_error);
  CHECK_THROWS_AS(Space<double>(4, KnotVector<double>{{0, 1, 2}, {4, 1, 5}}), domain_error);
  CHECK_THROWS_AS(Space<double>(4, KnotVector<double>{{0, 1}, {5, 0}}), domain_error);
  CHECK_THROWS_AS(uniform_knots<double>(4, 0, 0, 0, 1), domain_error);
}

TEST_CASE("basis evaluation") {
  Space<double> S(6, KnotVector<double>{{0, 1, 2}, {7, 5, 7}});
  CHECK(S.basis(0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(S.basis(11, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(S.basis(-1, 0.5), domain_error);
  CHECK_THROWS_AS(S.basis(12, 0.5), domain_error);
  CHECK_THROWS_AS(S.basis(0, -0.1), domain_error);
  CHECK_THROWS_AS(S.basis(0, 2.1), domain_error);

  // C0 at the middle knot: value at the knot equals the left limit
  Space<double> C0(4, KnotVector<double>{{0, 1, 2}, {5, 4, 5}});
  const double eps = 1e-9;
  for (int i = 0; i < C0.size(); ++i) {
    double left = C0.basis(i, 1.0 - eps), at = C0.basis(i, 1.0);
    CHECK(std::abs(left - at) < 1e-7);
  }
  CHECK(C0.basis(4, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("basis matches the recursive definition") {
  std::mt19937 g(7);
  for (int rep = 0; rep < 25; ++rep) {
    auto rs = random_space(g);
    Space<double> S(rs.d, rs.kv);
    auto T = rs.kv.sequence();
    std::uniform_real_distribution<double> u(rs.kv.x.front(), rs.kv.x.back());
    for (int k = 0; k < 30; ++k) {
      double x = u(g);
      for (int i = 0; i < S.size(); ++i)
        CHECK(std::abs(S.basis(i, x) - oracle::basis(T, i, rs.d, x, S.b())) < 1e-13);
    }
    for (double x : rs.kv.x)
      for (int i = 0; i < S.size(); ++i)
        CHECK(std::abs(S.basis(i, x) - oracle::basis(T, i, rs.d, x, S.b())) < 1e-13);
  }
}

TEST_CASE("partition of unity on random spaces") {
  std::mt19937 g(11);
  for (int rep = 0; rep < 30; ++rep) {
    auto rs = random_space(g);
    Space<double> S(rs.d, rs.kv);
    std::uniform_real_distribution<double> u(S.a(), S.b());
    std::vector<Space<double>::Entry> e;
    for (int k = 0; k < 100; ++k) {
      S.eval(u(g), e);
      double s = 0;
      for (auto& q : e) s += q.v;
      CHECK(std::abs(s - 1) <= 1e-14);
    }
  }
}

TEST_CASE("dimension equals the number of independent basis functions") {
  std::mt19937 g(3);
  for (int rep = 0; rep < 25; ++rep) {
    auto rs = random_space(g);
    Space<double> S(rs.d, rs.kv);
    // collocation at d+1 points per span has full column rank iff the
    // functions are independent
    std::vector<double> pts;
    for (size_t s = 0; s + 1 < rs.kv.x.size(); ++s)
      for (int k = 0; k <= rs.d; ++k)
        pts.push_back(rs.kv.x[s] + (rs.kv.x[s + 1] - rs.kv.x[s]) * (k + 0.5) / (rs.d + 1));
    Eigen::MatrixXd A(pts.size(), S.size());
    for (size_t p = 0; p < pts.size(); ++p)
      for (int i = 0; i < S.size(); ++i) A(p, i) = S.basis(i, pts[p]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-10);
    CHECK(lu.rank() == S.size());
    CHECK(S.size() == dimension(rs.d, rs.kv));
  }
}

TEST_CASE("integrals against composite quadrature") {
  std::mt19937 g(5);
  for (int rep = 0; rep < 25; ++rep) {
    auto rs = random_space(g);
    Space<double> S(rs.d, rs.kv);
    auto T = rs.kv.sequence();
    auto I = S.integrals();
    auto ref = oracle::integrals(T, rs.d, S.a(), S.b());
    double sum = 0;
    for (int i = 0; i < S.size(); ++i) {
      CHECK(std::abs(I[i] - ref[i]) <= 1e-13 * std::abs(ref[i]));
      // standard identity for the normalized basis of an open vector
      CHECK(std::abs(I[i] - (T[i + rs.d + 1] - T[i]) / (rs.d + 1)) <= 1e-13 * std::abs(ref[i]));
      sum += I[i];
    }
    CHECK(std::abs(sum - (S.b() - S.a())) <= 1e-13 * (S.b() - S.a()));
  }
}

TEST_CASE("divided-difference scaling on unit elements") {
  Space<double> S6(6, KnotVector<double>{{0, 1, 2, 3, 4}, {7, 5, 7, 5, 7}});
  auto I6 = S6.integrals();
  for (int i = 0; i < S6.size(); ++i)
    CHECK(I6[i] * S6.paper_scale(i) == doctest::Approx(1.0 / 7).epsilon(1e-14));
  Space<double> S4(4, KnotVector<double>{{0, 1, 2, 3, 4}, {5, 4, 5, 4, 5}});
  auto I4 = S4.integrals();
  for (int i = 0; i < S4.size(); ++i)
    CHECK(I4[i] * S4.paper_scale(i) == doctest::Approx(1.0 / 5).epsilon(1e-14));
}

TEST_CASE("continuity at interior knots") {
  // one-sided derivatives from exact interpolation of the span polynomials
  // in extended precision; orders up to d - m_k must agree
  std::mt19937 g(13);
  for (int rep = 0; rep < 12; ++rep) {
    auto rs = random_space(g);
    auto kx = cast_knots<ext>(rs.kv);
    Space<ext> S(rs.d, kx);
    const int d = rs.d;
    for (size_t k = 1; k + 1 < kx.x.size(); ++k) {
      int order = d - kx.m[k];
      if (order < 0) continue;
      ext xk = kx.x[k];
      auto derivs = [&](int i, const ext& lo, const ext& hi) {
        // Newton divided differences on d+1 Chebyshev points inside (lo,hi)
        int n = d + 1;
        std::vector<ext> xs(n), ys(n);
        for (int j = 0; j < n; ++j) {
          xs[j] = (lo + hi) / 2 + (hi - lo) / 2 * ext(std::cos(M_PI * (j + 0.5) / n)) * ext(0.9);
          ys[j] = S.basis(i, xs[j]);
        }
        std::vector<ext> c = ys;
        for (int l = 1; l < n; ++l)
          for (int j = n - 1; j >= l; --j) c[j] = (c[j] - c[j - 1]) / (xs[j] - xs[j - l]);
        // Taylor coefficients at xk via synthetic expansion of the Newton form
        std::vector<ext> p(n, ext(0));
        p[0] = c[n - 1];
        for (int j = n - 2; j >= 0; --j) {
          // p(x) = p(x)*(x - xs[j]) + c[j], in powers of (x - xk)
          ext shift = xk - xs[j];
          std::vector<ext> q(n, ext(0));
          for (int l = 0; l + 1 < n; ++l) q[l + 1] += p[l];
          for (int l = 0; l < n; ++l) q[l] += p[l] * shift;
          q[0] += c[j];
          p = q;
        }
        std::vector<ext> dv(order + 1);
        ext f = 1;
        for (int l = 0; l <= order; ++l) {
          if (l > 0) f *= l;
          dv[l] = p[l] * f;
        }
        return dv;
      };
      for (int i = 0; i < S.size(); ++i) {
        auto L = derivs(i, kx.x[k - 1], xk);
        auto R = derivs(i, xk, kx.x[k + 1]);
        for (int l = 0; l <= order; ++l) {
          double a = to_double(L[l]), b = to_double(R[l]);
          double scale = std::max({1.0, std::abs(a), std::abs(b)});
          CHECK(std::abs(a - b) <= 1e-10 * scale);
        }
      }
    }
  }
}

TEST_CASE("merge two blocks with a full-multiplicity knot") {
  KnotVector<double> L{{0, 1, 2}, {7, 5, 7}}, R{{2, 3, 4}, {7, 5, 7}};
  auto M = merge_c_minus_1(6, L, R);
  CHECK(M.x == std::vector<double>{0, 1, 2, 3, 4});
  CHECK(M.m == std::vector<int>{7, 5, 7, 5, 7});
  CHECK(dimension(6, M) == dimension(6, L) + dimension(6, R));
  KnotVector<double> L4{{0, 1, 2}, {5, 4, 5}}, R4{{2, 3, 4}, {5, 4, 5}};
  auto M4 = merge_c_minus_1(4, L4, R4);
  CHECK(M4.m == std::vector<int>{5, 4, 5, 4, 5});
  CHECK(dimension(4, M4) == 18);
  KnotVector<double> far{{3, 4}, {5, 5}};
  CHECK_THROWS_AS(merge_c_minus_1(4, L4, far), domain_error);
}

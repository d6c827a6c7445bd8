#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "asymptotic.hpp"
#include "homotopy.hpp"
#include "oracle.hpp"
#include "tables.hpp"

using namespace gg;

namespace {

Rule<ext> full_from(const std::vector<std::pair<const char*, const char*>>& tab, int N) {
  Rule<ext> h;
  h.a = 0;
  h.b = N / 2;
  for (auto& [t, w] : tab) {
    h.t.push_back(ext(t));
    h.w.push_back(ext(w));
  }
  return reflect_symmetric(h, ext(N / 2));
}

template <class R>
std::vector<ext> fields(const Asymptotic<R>& A) {
  return {ext(A.d1), ext(A.d2), ext(A.w1), ext(A.w2), ext(A.w3)};
}

}  // namespace

TEST_CASE("quartic periodic constants") {
  auto A = solve_asymptotic_4_0<double>();
  auto f = fields(A);
  for (int k = 0; k < 5; ++k) {
    CHECK(std::abs(to_double(f[k]) - std::stod(ref::asym40[k])) <= 1e-14);
    CHECK(std::abs(to_double(f[k]) - std::stod(frozen::asym40[k])) <= 1e-14);
  }
  CHECK(std::abs(A.w1 + A.w2 - 1) <= 1e-15);
  for (double r : system_4_0(A.d1, A.d2, A.w1, A.w2)) CHECK(std::abs(r) <= 1e-14);
  auto C = closed_form_4_0<double>();
  for (double r : system_4_0(C.d1, C.d2, C.w1, C.w2)) CHECK(std::abs(r) <= 1e-14);
  CHECK(A.nodes_per_element() == 2.0);

  auto E = solve_asymptotic_4_0<ext>();
  auto fe = fields(E);
  for (int k = 0; k < 5; ++k) CHECK(to_double(abs(fe[k] - ext(frozen::asym40[k]))) <= 1e-30);
  for (auto& r : system_4_0(E.d1, E.d2, E.w1, E.w2)) CHECK(to_double(abs(r)) <= 1e-40);
}

TEST_CASE("sixtic periodic constants") {
  auto A = solve_asymptotic_6_1<double>();
  auto f = fields(A);
  for (int k = 0; k < 5; ++k) {
    CHECK(std::abs(to_double(f[k]) - std::stod(ref::asym61[k])) <= 1e-14);
    CHECK(std::abs(to_double(f[k]) - std::stod(frozen::asym61[k])) <= 1e-14);
  }
  CHECK(std::abs(2 * A.w1 + 2 * A.w2 + A.w3 - 2) <= 1e-15);
  for (double r : system_6_1(A.d1, A.d2, A.w1, A.w2)) CHECK(std::abs(r) <= 1e-14);
  auto C = closed_form_6_1<double>();
  for (double r : system_6_1(C.d1, C.d2, C.w1, C.w2)) CHECK(std::abs(r) <= 1e-14);
  CHECK(A.nodes_per_element() == 2.5);

  auto E = solve_asymptotic_6_1<ext>();
  auto fe = fields(E);
  for (int k = 0; k < 5; ++k) CHECK(to_double(abs(fe[k] - ext(frozen::asym61[k]))) <= 1e-30);
}

TEST_CASE("unsupported periodic families") {
  CHECK_THROWS_AS(solve_asymptotic<double>(8, 2), unsupported_error);
  CHECK_THROWS_AS(solve_asymptotic<double>(6, 0), unsupported_error);
}

TEST_CASE("periodic pattern layout") {
  auto A = solve_asymptotic_6_1<double>();
  std::vector<int> elem;
  auto P = asymptotic_pattern(A, 8, 0.0, 8.0, &elem);
  REQUIRE(P.size() == 21);
  for (int i = 0; i < 4; ++i) {
    const double o = 2 * i;
    CHECK(P.t[5 * i] == doctest::Approx(o));
    CHECK(P.t[5 * i + 1] == doctest::Approx(o + A.d1));
    CHECK(P.t[5 * i + 2] == doctest::Approx(o + A.d2));
    CHECK(P.t[5 * i + 3] == doctest::Approx(o + 2 - A.d2));
    CHECK(P.t[5 * i + 4] == doctest::Approx(o + 2 - A.d1));
    CHECK(P.w[5 * i] == A.w3);
    CHECK(P.w[5 * i + 1] == A.w1);
    CHECK(P.w[5 * i + 2] == A.w2);
    CHECK(P.w[5 * i + 3] == A.w2);
    CHECK(P.w[5 * i + 4] == A.w1);
  }
  CHECK(elem.front() == 1);
  CHECK(elem.back() == 8);
  CHECK(boundary_depth(P, A) == 0);

  auto A4 = solve_asymptotic_4_0<double>();
  auto P4 = asymptotic_pattern(A4, 10, 0.0, 5.0);
  CHECK(P4.size() == 21);
  CHECK(P4.t[10] == 2.5);
  CHECK(boundary_depth(P4, A4) == 0);
  CHECK(elements_from_nodes(0, 65) == 32);
  CHECK(elements_from_nodes(1, 41) == 16);
}

TEST_CASE("boundary depth of the published rules") {
  auto A61 = solve_asymptotic_6_1<ext>();
  auto A40 = solve_asymptotic_4_0<ext>();
  auto t3 = full_from(ref::table_6_1_n16, 16);
  auto t2 = full_from(ref::table_4_0_n32, 32);
  CHECK(boundary_depth(t3, A61, ext("1e-15")) == 5);
  CHECK(boundary_depth(t2, A40, ext("1e-15")) == 10);
}

TEST_CASE("boundary depth of derived rules, extended") {
  Config cfg;
  cfg.precision = Precision::extended;
  std::vector<ext> x16, x32;
  for (int i = 0; i <= 16; ++i) x16.push_back(i);
  for (int i = 0; i <= 32; ++i) x32.push_back(i);
  auto q61 = derive_rule<ext>(6, 1, x16, cfg);
  auto q40 = derive_rule<ext>(4, 0, x32, cfg);
  CHECK(boundary_depth(q61, solve_asymptotic_6_1<ext>(), ext("1e-15")) == 5);
  CHECK(boundary_depth(q40, solve_asymptotic_4_0<ext>(), ext("1e-15")) == 10);
}

TEST_CASE("composed rules agree with derived ones") {
  Config cfg;
  std::vector<double> x16, x32;
  for (int i = 0; i <= 16; ++i) x16.push_back(i);
  for (int i = 0; i <= 32; ++i) x32.push_back(i);
  auto q61 = derive_rule<double>(6, 1, x16, cfg);
  auto q40 = derive_rule<double>(4, 0, x32, cfg);
  auto A61 = solve_asymptotic_6_1<double>();
  auto A40 = solve_asymptotic_4_0<double>();

  auto c61 = compose_finite(A61, q61, 16, 0.0, 16.0);
  REQUIRE(c61.size() == q61.size());
  for (size_t i = 0; i < q61.size(); ++i) {
    CHECK(std::abs(c61.t[i] - q61.t[i]) <= 1e-12);
    CHECK(std::abs(c61.w[i] - q61.w[i]) <= 1e-12);
  }
  auto c40 = compose_finite(A40, q40, 32, 0.0, 32.0);
  REQUIRE(c40.size() == q40.size());
  for (size_t i = 0; i < q40.size(); ++i) {
    CHECK(std::abs(c40.t[i] - q40.t[i]) <= 1e-12);
    CHECK(std::abs(c40.w[i] - q40.w[i]) <= 1e-12);
  }

  SUBCASE("larger domains stay exact") {
    for (auto [N, a, b] : {std::tuple{40, 0.0, 40.0}, {64, -1.0, 3.0}}) {
      auto c = compose_finite(A61, q61, N, a, b);
      Space<double> S(6, uniform_knots<double>(6, 1, N, a, b));
      auto v = verify(c, S, 1e-13 * std::max(1.0, (b - a) / N));
      CHECK(v.exact);
      CHECK(v.optimal);
      double sw = 0;
      for (double w : c.w) sw += w;
      CHECK(std::abs(sw - (b - a)) <= 1e-13 * (b - a));
    }
    auto c = compose_finite(A40, q40, 100, 0.0, 100.0);
    Space<double> S(4, uniform_knots<double>(4, 0, 100, 0.0, 100.0));
    auto v = verify(c, S);
    CHECK(v.exact);
    CHECK(v.optimal);
    CHECK(c.t[100] == 50.0);
  }
  SUBCASE("too few elements") {
    CHECK_THROWS_AS(compose_finite(A61, q61, 8, 0.0, 8.0), domain_error);
    CHECK_THROWS_AS(compose_finite(A61, q61, 41, 0.0, 41.0), domain_error);
  }
}

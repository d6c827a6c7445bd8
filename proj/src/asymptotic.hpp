#pragma once

#include "quadrature.hpp"

#include <array>
#include <vector>

namespace gg {

// Periodic rule on an infinite uniform knot vector, unit element size.
// (4,0): per element nodes at d2, d1 (left of the middle knot) with weights
//        w2, w1; the middle knot carries w3 (the middle weight).
// (6,1): per element pair [0,2] nodes 0 (w3), d1, d2, 2-d2, 2-d1.
template <class R>
struct Asymptotic {
  int d = 0, c = 0;
  int period = 1;
  R d1, d2, w1, w2, w3;
  double nodes_per_element() const { return c == 0 ? 2.0 : 2.5; }
};

template <class R>
Asymptotic<R> closed_form_4_0();
template <class R>
Asymptotic<R> closed_form_6_1();

// residuals of the four-equation periodic systems
template <class R>
std::array<R, 4> system_4_0(const R& d1, const R& d2, const R& w1, const R& w2);
template <class R>
std::array<R, 4> system_6_1(const R& d1, const R& d2, const R& w1, const R& w2);

template <class R>
Asymptotic<R> solve_asymptotic_4_0();
template <class R>
Asymptotic<R> solve_asymptotic_6_1();
template <class R>
Asymptotic<R> solve_asymptotic(int d, int c);

// the periodic rule restricted to N uniform elements on [a,b]; elem gets the
// 1-based element index of every node
template <class R>
Rule<R> asymptotic_pattern(const Asymptotic<R>& A, int N, const R& a, const R& b,
                           std::vector<int>* elem = nullptr);

template <class R>
R default_depth_tolerance() {
  if constexpr (std::is_same_v<R, double>)
    return 1e-13;
  else
    return R("1e-15");
}

// number of boundary elements (per side) whose nodes or weights differ from
// the periodic pattern by more than tol (relative)
template <class R>
int boundary_depth(const Rule<R>& q, const Asymptotic<R>& A, R tol = default_depth_tolerance<R>());

// boundary elements from a derived rule plus the periodic pattern inside
template <class R>
Rule<R> compose_finite(const Asymptotic<R>& A, const Rule<R>& boundary, int N, const R& a,
                       const R& b, int depth = -1);

int elements_from_nodes(int c, size_t m);

}  // namespace gg

#pragma once

#include "quadrature.hpp"

#include <vector>

namespace gg {

struct BlockSpec {
  int d = 6;
  int c = 1;
  int n_elements = 2;
  Kind kind = Kind::gauss;
};

// candidate node values of the sixtic block (roots in [0,1] of its
// univariate eliminant) and whether back-substitution accepted them
template <class R>
struct RootCandidate {
  R root;
  bool accepted = false;
  R residual = 0;
};

// Six-node rule on [0,2] for d=6 with knots (0,1,2), multiplicities (7,5,7)
template <class R>
Rule<R> gauss_block_6_1(std::vector<RootCandidate<R>>* candidates = nullptr);

// residual of the 6x6 sixtic block system at (t1,t2,t3,w1,w2,w3) on [0,1]
template <class R>
std::vector<R> block_6_1_system(const std::vector<R>& x);

template <class R>
struct Radau40 {
  Rule<R> half;  // on [0,2], last node pinned at 2
  Rule<R> full;  // on [0,4], middle node pinned at 2
  R rho;         // first-element residue feeding the second system
};

// Quartic C0 block on [0,4] with multiplicities (5,4,5,4,5)
template <class R>
Radau40<R> radau_block_4_0();

// Generic block solve by damped Newton from multi-start seeds on the unit
// element grid [0, n_elements]
template <class R>
Rule<R> solve_block(const BlockSpec& spec);

}  // namespace gg

#pragma once

// Reference implementations kept independent of the library: the textbook
// recursive B-spline definition and Gauss-Legendre points from Newton on
// the Legendre recurrence.

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

// B_{i,d}(x) on knot sequence T, half-open spans [T_j, T_{j+1}); at x == b
// the caller asks for the left limit by passing left = true.
template <class R>
R bspline(const std::vector<R>& T, int i, int d, const R& x, bool left = false) {
  if (d == 0) {
    if (left) return (T[i] < x && x <= T[i + 1]) ? R(1) : R(0);
    return (T[i] <= x && x < T[i + 1]) ? R(1) : R(0);
  }
  R v = 0;
  R d1 = T[i + d] - T[i], d2 = T[i + d + 1] - T[i + 1];
  if (d1 != 0) v += (x - T[i]) / d1 * bspline(T, i, d - 1, x, left);
  if (d2 != 0) v += (T[i + d + 1] - x) / d2 * bspline(T, i + 1, d - 1, x, left);
  return v;
}

struct GL {
  std::vector<long double> x, w;  // on [-1,1]
};

inline GL gauss_legendre(int n) {
  GL g;
  const long double pi = 3.141592653589793238462643383279502884L;
  for (int k = 0; k < n; ++k) {
    long double z = std::cos(pi * (k + 0.75L) / (n + 0.5L)), dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = z;
      for (int j = 2; j <= n; ++j) {
        long double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (z * p1 - p0) / (z * z - 1);
      long double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-19L) break;
    }
    long double p0 = 1, p1 = z;
    for (int j = 2; j <= n; ++j) {
      long double p2 = ((2 * j - 1) * z * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1);
    g.x.push_back(z);
    g.w.push_back(2 / ((1 - z * z) * dp * dp));
  }
  return g;
}

// integral of B_i over [a,b] by composite Gauss-Legendre on every knot span
inline std::vector<double> integrals(const std::vector<double>& T, int d, double a, double b) {
  int n = int(T.size()) - d - 1;
  std::vector<long double> I(n, 0);
  std::vector<long double> TL(T.begin(), T.end());
  GL g = gauss_legendre(d + 2);
  for (size_t s = 0; s + 1 < T.size(); ++s) {
    long double lo = std::max<long double>(TL[s], a), hi = std::min<long double>(TL[s + 1], b);
    if (!(hi > lo)) continue;
    long double h = (hi - lo) / 2, m = (hi + lo) / 2;
    for (size_t q = 0; q < g.x.size(); ++q) {
      long double x = m + h * g.x[q];
      for (int i = 0; i < n; ++i) I[i] += h * g.w[q] * bspline(TL, i, d, x);
    }
  }
  return std::vector<double>(I.begin(), I.end());
}

// normalized basis value with the library's evaluation conventions: left
// limit at b, average of both sides at a knot of multiplicity > d
inline double basis(const std::vector<double>& T, int i, int d, double x, double b) {
  std::vector<long double> TL(T.begin(), T.end());
  if (x >= b) return double(bspline<long double>(TL, i, d, b, true));
  int mult = 0;
  for (double t : T) mult += t == x;
  if (mult >= d + 1 && x > T.front())
    return double((bspline<long double>(TL, i, d, x, true) + bspline<long double>(TL, i, d, x)) / 2);
  return double(bspline<long double>(TL, i, d, x));
}

inline std::vector<double> open_sequence(int d, const std::vector<double>& x,
                                         const std::vector<int>& m) {
  std::vector<double> T;
  for (size_t i = 0; i < x.size(); ++i) T.insert(T.end(), m[i], x[i]);
  (void)d;
  return T;
}

}  // namespace oracle

// high-precision reference values computed offline with 40-digit arithmetic
namespace frozen {

// sixtic block on [0,1] half: t1 t2 t3 w1 w2 w3
inline const char* block61[6] = {
    "0.092425474436522440213456441977046", "0.42759570120004222829196349564175",
    "0.82792440129801198116593599329680",  "0.23004836288935413030251581753714",
    "0.40614522687566702979291087364113",  "0.36380641023497883990457330882173"};

// real roots of the eliminant in (0,1)
inline const char* eliminant_roots[5] = {
    "0.092425474436522440213456441977046", "0.10378054673493347136093447331399",
    "0.42759570120004222829196349564175",  "0.48147080409315742862202508673755",
    "0.82792440129801198116593599329680"};

// asymptotic constants d1 d2 w1 w2 w3
inline const char* asym40[5] = {
    "0.62315377486914955416999270294296", "0.094003512656231436069669552215104",
    "0.54454354031873739744742558014663", "0.45545645968126260255257441985337",
    "0.23570226039551584146694812070162"};
inline const char* asym61[5] = {
    "0.38693556354866909099909139200843", "0.81587550281258499772812058288333",
    "0.43622310273429582467253259884176", "0.38934746132575016040299617024041",
    "0.34885887187990802984894246183566"};

}  // namespace frozen

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "selfloop/error.hpp"
#include "selfloop/threshold.hpp"

namespace selfloop {

// Polynomials are templated on the scalar so tests can evaluate them exactly
// with a rational type. Every coefficient is written as a ratio of integers.
namespace poly {

template <class T>
T q(long a, long b = 1) {
  return T(a) / T(b);
}

/// Regular graph, degree k, uniform loop l.
template <class T>
T regular_num(T N, T k, T l) {
  return N * (k * k + q<T>(3) * k * l + q<T>(2) * l * l) - q<T>(2) * (k + l) * (k + l);
}

template <class T>
T regular_den(T N, T k, T l) {
  return N * (k * l + k + q<T>(2) * l * l) - q<T>(2) * (k + l) * (k + l);
}

/// Star with N vertices, leaf loop a, hub loop b.
template <class T>
T star_num(T N, T a, T b) {
  const T one = q<T>(1);
  const T inner =
      q<T>(-8, 3) + N * N * N * (q<T>(4, 3) + q<T>(11, 3) * a + a * a) + q<T>(14, 3) * b -
      q<T>(4, 3) * b * b + a * a * (q<T>(-2) + q<T>(8, 3) * b) +
      a * (q<T>(-6) + q<T>(10) * b - q<T>(8, 3) * b * b) +
      N * N * (q<T>(-16, 3) + q<T>(3) * b + a * a * (q<T>(-4) + q<T>(4, 3) * b) + a * (q<T>(-40, 3) + q<T>(7) * b)) +
      N * (q<T>(20, 3) + a * a * (q<T>(5) - q<T>(4) * b) - q<T>(23, 3) * b + q<T>(4, 3) * b * b +
           a * (q<T>(47, 3) - q<T>(17) * b + q<T>(8, 3) * b * b));
  return q<T>(3) * (one + a) * (N - one + b) * inner;
}

template <class T>
T star_den(T N, T a, T b) {
  const T N2 = N * N, N3 = N2 * N, N4 = N3 * N;
  const T b2 = b * b, b3 = b2 * b;
  const T t0 = b * (-N3 + N * (q<T>(-1) - b / q<T>(2)) + N2 * (q<T>(2) - b / q<T>(2)) + b);
  const T t3 = a * a * a *
               (q<T>(2) + N4 - q<T>(5) * b + q<T>(4) * b2 + N3 * (q<T>(-5) + q<T>(5, 2) * b) +
                N * (q<T>(-7) + q<T>(25, 2) * b - q<T>(6) * b2) + N2 * (q<T>(9) - q<T>(10) * b + q<T>(2) * b2));
  const T t1 = a * (q<T>(4) + N4 - q<T>(11) * b + q<T>(12) * b2 - q<T>(2) * b3 + N3 * (q<T>(-7) + q<T>(5, 2) * b) +
                    N2 * (q<T>(15) - q<T>(16) * b + q<T>(5) * b2) +
                    N * (q<T>(-13) + q<T>(49, 2) * b - q<T>(17) * b2 + q<T>(2) * b3));
  const T t2 = a * a *
               (q<T>(8) + q<T>(4) * N4 - q<T>(22) * b + q<T>(21) * b2 - q<T>(4) * b3 + N3 * (q<T>(-20) + q<T>(12) * b) +
                N2 * (q<T>(36) - q<T>(46) * b + q<T>(27, 2) * b2) +
                N * (q<T>(-28) + q<T>(56) * b - q<T>(69, 2) * b2 + q<T>(4) * b3));
  return q<T>(2) * (t0 + t3 + t1 + t2);
}

/// Two N-vertex stars joined hub to hub; leaf loop a, hub loop g.
template <class T>
T hubhub_num(T N, T a, T g) {
  const T a2 = a * a, a3 = a2 * a, g2 = g * g, g3 = g2 * g;
  const T N2 = N * N, N3 = N2 * N, N4 = N3 * N;
  const T inner =
      N4 * (a3 + q<T>(16, 3) * a2 + q<T>(25, 3) * a + q<T>(10, 3)) +
      N3 * (a3 * (q<T>(4, 3) * g - q<T>(2)) + a2 * (q<T>(10) * g - q<T>(25, 3)) + a * (q<T>(20) * g - q<T>(34, 3)) +
            q<T>(29, 3) * g - q<T>(13, 3)) +
      N2 * (a3 * (q<T>(-7, 3) * g + q<T>(1, 3)) + a2 * (q<T>(11, 3) * g2 - q<T>(38, 3) * g + q<T>(1)) +
            a * (q<T>(40, 3) * g2 - q<T>(64, 3) * g + q<T>(1)) + q<T>(26, 3) * g2 - q<T>(9) * g + q<T>(1, 3)) +
      N * (a3 * (q<T>(-1, 3) * g + q<T>(2, 3)) + a2 * (q<T>(-10, 3) * g2 - g + q<T>(2)) +
           a * (q<T>(8, 3) * g3 - q<T>(32, 3) * g2 - g + q<T>(2)) + q<T>(3) * g3 - q<T>(16, 3) * g2 -
           q<T>(1, 3) * g + q<T>(2, 3)) +
      g * (q<T>(4, 3) * a3 + q<T>(4) * a2 + a * (q<T>(-5, 3) * g2 + q<T>(4)) + q<T>(1, 3) * g3 - g2 + q<T>(4, 3));
  return q<T>(3) * (q<T>(1) + a) * (N + g) * inner;
}

template <class T>
T hubhub_den(T N, T a, T g) {
  const T a2 = a * a, a3 = a2 * a, a4 = a3 * a;
  const T g2 = g * g, g3 = g2 * g, g4 = g3 * g, g5 = g4 * g;
  const T N2 = N * N, N3 = N2 * N, N4 = N3 * N, N5 = N4 * N;
  const T s =
      N5 * (a4 + q<T>(11, 2) * a3 + q<T>(9) * a2 + q<T>(5) * a + q<T>(2)) +
      N4 * (a4 * (q<T>(5, 2) * g - q<T>(5, 2)) + a3 * (q<T>(33, 2) * g - q<T>(23, 2)) +
            a2 * (q<T>(61, 2) * g - q<T>(19)) + a * (q<T>(33, 2) * g - q<T>(25, 2)) + q<T>(6) * g - q<T>(4)) +
      N3 * (a4 * (q<T>(2) * g2 - q<T>(11, 2) * g + q<T>(2)) + a3 * (q<T>(37, 2) * g2 - q<T>(29) * g + q<T>(15, 2)) +
            a2 * (q<T>(44) * g2 - q<T>(107, 2) * g + q<T>(11)) + a * (q<T>(29) * g2 - q<T>(36) * g + q<T>(7)) +
            q<T>(21, 2) * g2 - q<T>(12) * g + q<T>(3, 2)) +
      N2 * (a4 * (q<T>(-7, 2) * g2 + q<T>(2) * g - q<T>(1, 2)) +
            a3 * g * (q<T>(11, 2) * g2 - q<T>(49, 2) * g + q<T>(15, 2)) +
            a2 * (q<T>(47, 2) * g3 - q<T>(111, 2) * g2 + q<T>(23, 2) * g + q<T>(7, 2)) +
            a * (q<T>(21) * g3 - q<T>(79, 2) * g2 + q<T>(7) * g + q<T>(5)) + q<T>(9) * g3 - q<T>(14) * g2 + g +
            q<T>(2)) +
      N * (a4 * (q<T>(-1, 2) * g2 + g - q<T>(1)) + a3 * (q<T>(-5) * g3 - q<T>(2) * g2 + q<T>(6) * g - q<T>(11, 2)) +
           a2 * (q<T>(4) * g4 - q<T>(41, 2) * g3 - q<T>(5, 2) * g2 + q<T>(13) * g - q<T>(21, 2)) +
           a * (q<T>(6) * g4 - q<T>(16) * g3 - q<T>(5, 2) * g2 + q<T>(12) * g - q<T>(17, 2)) + q<T>(7, 2) * g4 -
           q<T>(13, 2) * g3 - q<T>(3, 2) * g2 + q<T>(4) * g - q<T>(5, 2)) +
      a4 * (q<T>(2) * g2 + q<T>(1)) + a3 * (q<T>(8) * g2 - q<T>(3, 2) * g + q<T>(4)) +
      a2 * (q<T>(-5, 2) * g4 + q<T>(25, 2) * g2 - q<T>(9, 2) * g + q<T>(6)) +
      a * (q<T>(1, 2) * g5 - q<T>(2) * g4 - q<T>(1, 2) * g3 + q<T>(9) * g2 - q<T>(9, 2) * g + q<T>(4)) +
      q<T>(1, 2) * g5 - g4 - q<T>(1, 2) * g3 + q<T>(5, 2) * g2 - q<T>(3, 2) * g + q<T>(1);
  return q<T>(2) * s;
}

/// Ceiling fan on N (odd) vertices; leaf loop e, hub loop b.
template <class T>
T fan_num(T N, T e, T b) {
  const T inner = q<T>(78) + q<T>(4) * N * N * (q<T>(9) + q<T>(11) * e + q<T>(2) * e * e) +
                  e * e * (q<T>(17) - q<T>(22) * b) - q<T>(122) * b + q<T>(24) * b * b +
                  e * (q<T>(83) - q<T>(125) * b + q<T>(22) * b * b) +
                  N * (q<T>(-114) + q<T>(68) * b + q<T>(5) * e * e * (q<T>(-5) + q<T>(2) * b) +
                       e * (q<T>(-127) + q<T>(74) * b));
  return (q<T>(2) + e) * (N - q<T>(1) + b) * inner;
}

template <class T>
T fan_den(T N, T e, T b) {
  const T e2 = e * e, e3 = e2 * e, b2 = b * b, b3 = b2 * b;
  return q<T>(-57) + N * N * N * (q<T>(9) + q<T>(25) * e + q<T>(34) * e2 + q<T>(6) * e3) + q<T>(157) * b -
         q<T>(155) * b2 + q<T>(15) * b3 + e3 * (q<T>(-12) + q<T>(29) * b - q<T>(22) * b2) +
         e2 * (q<T>(-76) + q<T>(201) * b - q<T>(177) * b2 + q<T>(22) * b3) +
         e * (q<T>(-109) + q<T>(294) * b - q<T>(273) * b2 + q<T>(28) * b3) +
         N * N *
             (q<T>(25) * (q<T>(-3) + b) + q<T>(48) * e2 * (q<T>(-3) + q<T>(2) * b) +
              q<T>(2) * e3 * (q<T>(-12) + q<T>(7) * b) + q<T>(3) * e * (q<T>(-53) + q<T>(26) * b)) +
         N * (q<T>(123) - q<T>(182) * b + q<T>(47) * b2 + e3 * (q<T>(30) - q<T>(43) * b + q<T>(10) * b2) +
              q<T>(3) * e2 * (q<T>(62) - q<T>(99) * b + q<T>(32) * b2) +
              q<T>(3) * e * (q<T>(81) - q<T>(124) * b + q<T>(35) * b2));
}

/// Ceiling-fan exception cubics, coefficients from the constant term up.
inline constexpr std::array<double, 4> kFanCubicN3{-15.0, -17.0, 13.0, 3.0};
inline constexpr std::array<double, 4> kFanCubicN5{-6.0, 8.0, 47.0, 9.0};

template <class T, std::size_t M>
T horner(const std::array<double, M>& c, T x) {
  T acc = T(0);
  for (std::size_t i = M; i-- > 0;) acc = acc * x + T(c[i]);
  return acc;
}

}  // namespace poly

namespace detail {

inline void require_loops(std::initializer_list<double> values) {
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error(Errc::InvalidFamilyParams, "loop strengths must be finite and >= 0");
}

}  // namespace detail

inline ThresholdResult bc_regular(int N, int k, double ell) {
  if (N < 3 || k < 1 || k >= N)
    throw Error(Errc::InvalidFamilyParams, "regular needs N >= 3 and 1 <= k < N");
  detail::require_loops({ell});
  const double n = N, kk = k;
  return make_threshold(poly::regular_num(n, kk, ell), poly::regular_den(n, kk, ell));
}

/// Loop strength at which the regular-graph regime flips from spite to
/// cooperation: the positive root of 2(N-1)l^2 + k(N-4)l + k(N-2k) = 0.
inline double regular_spite_transition(int N, int k) {
  if (N < 3 || k < 1 || k >= N) throw Error(Errc::InvalidFamilyParams, "regular needs N >= 3 and 1 <= k < N");
  if (N >= 2 * k) throw Error(Errc::NotDenseRegime, "N=" + std::to_string(N) + " k=" + std::to_string(k));
  const double n = N, kk = k;
  const double a = 2.0 * (n - 1.0), b = kk * (n - 4.0), c = kk * (n - 2.0 * kk);
  const double disc = std::sqrt(b * b - 4.0 * a * c);
  return b >= 0.0 ? (2.0 * -c) / (b + disc) : (disc - b) / (2.0 * a);
}

inline ThresholdResult bc_star(int N, double alpha, double beta) {
  if (N < 3) throw Error(Errc::InvalidFamilyParams, "star needs N >= 3");
  detail::require_loops({alpha, beta});
  const double n = N;
  return make_threshold(poly::star_num(n, alpha, beta), poly::star_den(n, alpha, beta));
}

/// N -> infinity limit of the star threshold with a loop-free hub.
inline double star_limit_beta0(double alpha) {
  if (alpha == 0.0) throw Error(Errc::DivisionByZero, "alpha = 0");
  detail::require_loops({alpha});
  const double a = alpha;
  return (((3.0 * a + 14.0) * a + 15.0) * a + 4.0) / (((2.0 * a + 8.0) * a + 2.0) * a);
}

/// Smallest leaf loop that rescues cooperation on the 3-vertex star.
inline double star_exception_threshold_N3() { return std::sqrt(5.0) - 2.0; }

inline ThresholdResult bc_hubhub(int N, double alpha, double gamma) {
  if (N < 2) throw Error(Errc::InvalidFamilyParams, "hub-hub needs N >= 2");
  detail::require_loops({alpha, gamma});
  const double n = N;
  return make_threshold(poly::hubhub_num(n, alpha, gamma), poly::hubhub_den(n, alpha, gamma));
}

inline double hubhub_limit(double alpha) {
  detail::require_loops({alpha});
  const double a = alpha;
  return ((((3.0 * a + 19.0) * a + 41.0) * a + 35.0) * a + 10.0) /
         ((((2.0 * a + 11.0) * a + 18.0) * a + 10.0) * a + 4.0);
}

inline ThresholdResult bc_ceiling_fan(int N, double eps, double beta) {
  if (N < 3 || N % 2 == 0) throw Error(Errc::InvalidFamilyParams, "ceiling fan needs odd N >= 3");
  detail::require_loops({eps, beta});
  const double n = N;
  return make_threshold(poly::fan_num(n, eps, beta), poly::fan_den(n, eps, beta));
}

inline double cf_limit(double eps) {
  detail::require_loops({eps});
  const double e = eps;
  return (((8.0 * e + 60.0) * e + 124.0) * e + 72.0) / (((6.0 * e + 34.0) * e + 25.0) * e + 9.0);
}

/// Largest real root of a cubic c0 + c1 x + c2 x^2 + c3 x^3 (c3 > 0), by
/// bisection on the rightmost sign-change interval and one Newton polish.
inline double largest_cubic_root(const std::array<double, 4>& c) {
  auto f = [&](double x) { return poly::horner(c, x); };
  auto df = [&](double x) { return (3.0 * c[3] * x + 2.0 * c[2]) * x + c[1]; };
  double bound = 1.0;
  for (int i = 0; i < 3; ++i) bound = std::max(bound, 1.0 + std::abs(c[static_cast<std::size_t>(i)] / c[3]));

  // Critical points split the real line into monotone pieces.
  std::vector<double> cuts{-bound};
  const double qa = 3.0 * c[3], qb = 2.0 * c[2], qc = c[1];
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc > 0.0) {
    const double r = std::sqrt(disc);
    cuts.push_back((-qb - r) / (2.0 * qa));
    cuts.push_back((-qb + r) / (2.0 * qa));
  }
  cuts.push_back(bound);

  for (std::size_t s = cuts.size() - 1; s-- > 0;) {
    double lo = cuts[s], hi = cuts[s + 1];
    if ((f(lo) < 0.0) == (f(hi) < 0.0)) continue;
    const bool rising = f(hi) > f(lo);
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      ((f(mid) < 0.0) == rising ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    if (df(x) != 0.0) {
      const double polished = x - f(x) / df(x);
      if (std::abs(f(polished)) <= std::abs(f(x))) x = polished;
    }
    return x;
  }
  throw Error(Errc::UnsupportedN, "cubic has no sign change");
}

/// Leaf-loop strength beyond which the N = 3 or N = 5 ceiling fan admits
/// cooperation for every hub loop.
inline double cf_exception_epsilon(int N) {
  if (N == 3) return largest_cubic_root(poly::kFanCubicN3);
  if (N == 5) return largest_cubic_root(poly::kFanCubicN5);
  throw Error(Errc::UnsupportedN, "N=" + std::to_string(N));
}

}  // namespace selfloop

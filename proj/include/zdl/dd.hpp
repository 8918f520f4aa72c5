// Minimal double-double arithmetic for phase computations.  Phases like
// theta(t) - t log n reach ~10^7 while the final reduced angle must be good
// to ~1e-15, so the large quantities are carried as unevaluated hi+lo pairs
// until the final mod-2pi reduction.
#pragma once

#include <cmath>

namespace zdl::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

// Error-free transforms (Knuth / Dekker; two_prod needs fma).
inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD fast_two_sum(double a, double b) {  // requires |a| >= |b|
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return fast_two_sum(s.hi, s.lo);
}

inline DD dd_add(DD a, double b) {
  DD s = two_sum(a.hi, b);
  s.lo += a.lo;
  return fast_two_sum(s.hi, s.lo);
}

inline DD dd_sub(DD a, DD b) { return dd_add(a, DD{-b.hi, -b.lo}); }

// a * b where a is an exact double.
inline DD dd_mul_d(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo += a.lo * b;
  return fast_two_sum(p.hi, p.lo);
}

// Two-word representation of 2*pi (Cody-Waite style).
inline constexpr double kTwoPiHi = 6.283185307179586232e+00;
inline constexpr double kTwoPiLo = 2.449293598294706414e-16;

// Reduces a double-double angle into [-pi, pi] with absolute error ~1e-16
// even when the input magnitude is ~1e8.
inline double dd_mod_twopi(DD a) {
  const double k = std::nearbyint(a.hi / kTwoPiHi);
  const DD kp = two_prod(k, kTwoPiHi);
  // a.hi - kp.hi is exact (Sterbenz: the two agree to within ~2*pi).
  double r = (a.hi - kp.hi) - kp.lo;
  r -= k * kTwoPiLo;
  r += a.lo;
  return r;
}

}  // namespace zdl::detail

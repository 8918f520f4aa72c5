// Ordinary least squares in log-log coordinates, used to read empirical
// growth exponents off computed moment curves.
#pragma once

#include <cmath>
#include <span>

#include "zdl/common.hpp"

namespace zdl {

struct ExponentFit {
  double exponent = 0.0;   // slope of log(value) vs log(T)
  double intercept = 0.0;  // at log T = 0
  double rms = 0.0;        // RMS residual in log space
};

// OLS slope in plain linear coordinates, for mean-value laws like
// int_0^T E* ~ (3 pi/4) T where the interesting number is the coefficient.
inline double linear_slope(std::span<const double> T,
                           std::span<const double> value) {
  if (T.size() != value.size() || T.size() < 2)
    throw PreconditionError("linear_slope: need >= 2 (T, value) pairs");
  const std::size_t n = T.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += T[i];
    my += value[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (T[i] - mx) * (T[i] - mx);
    sxy += (T[i] - mx) * (value[i] - my);
  }
  if (!(sxx > 0.0))
    throw PreconditionError("linear_slope: T values must not be all equal");
  return sxy / sxx;
}

inline ExponentFit fit_exponent(std::span<const double> T,
                                std::span<const double> value) {
  if (T.size() != value.size() || T.size() < 3)
    throw PreconditionError("fit_exponent: need >= 3 (T, value) pairs");
  const std::size_t n = T.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!(T[i] > 0.0) || !(value[i] > 0.0))
      throw PreconditionError("fit_exponent: all inputs must be positive");

  // Centered form: exponent depends only on deviations from the means, which
  // makes it invariant (to round-off) under rescaling all values.
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(T[i]);
    my += std::log(value[i]);
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(T[i]) - mx;
    const double dy = std::log(value[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0))
    throw PreconditionError("fit_exponent: T values must not be all equal");

  ExponentFit f;
  f.exponent = sxy / sxx;
  f.intercept = my - f.exponent * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r =
        std::log(value[i]) - (f.intercept + f.exponent * std::log(T[i]));
    ss += r * r;
  }
  f.rms = std::sqrt(ss / double(n));
  return f;
}

}  // namespace zdl

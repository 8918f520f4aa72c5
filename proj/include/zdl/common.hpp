// Shared constants and error types for the zeta/divisor laboratory.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zdl {

// Euler-Mascheroni constant to 20 significant digits.  Double rounding keeps
// ~17 of them; the extra digits document the intended value.
inline constexpr double kEulerGamma = 0.57721566490153286061;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647693;

// Thrown when an operation needs divisor values beyond the sieved range.
class TableExhausted : public std::runtime_error {
 public:
  TableExhausted(std::uint64_t required, std::uint64_t have)
      : std::runtime_error("divisor table exhausted: need n_max >= " +
                           std::to_string(required) + ", have " +
                           std::to_string(have)),
        required_n_max(required) {}
  std::uint64_t required_n_max;
};

// Thrown when an argument violates a documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when a fixed-step rule fails its step-halving stability check.
class RefinementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace zdl

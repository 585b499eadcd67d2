#pragma once

// Small numerical helpers shared by the model and K-functional code.

#include <cmath>
#include <functional>
#include <limits>

namespace interkernel::numerics {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// log(exp(a) + exp(b)) without overflow.
inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

/// log of \int_lo^hi t^gamma dt/t; +inf when the integral diverges.
/// lo may be 0 and hi may be +inf.
double log_power_integral(double gamma, double lo, double hi);

/// \int_lo^hi t^gamma dt/t (may return +inf).
inline double power_integral(double gamma, double lo, double hi) {
  return std::exp(log_power_integral(gamma, lo, hi));
}

/// Adaptive Gauss-Kronrod integral of exp(log_f(u)) over (u_lo, u_hi); ends
/// may be infinite. The integrand is rescaled by its value at `u_ref` to keep
/// the quadrature in range; the result is returned as a logarithm.
double log_integrate_exp(const std::function<double(double)>& log_f, double u_lo, double u_hi,
                         double u_ref);

}  // namespace interkernel::numerics

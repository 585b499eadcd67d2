#include "numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace interkernel::numerics {

double log_power_integral(double gamma, double lo, double hi) {
  if (!(hi > lo)) return kNegInf;
  const bool at_zero = lo <= 0.0;
  const bool at_inf = std::isinf(hi);
  if (at_zero && gamma <= 0.0) return std::numeric_limits<double>::infinity();
  if (at_inf && gamma >= 0.0) return std::numeric_limits<double>::infinity();
  if (at_zero && at_inf) return std::numeric_limits<double>::infinity();
  if (at_zero) return gamma * std::log(hi) - std::log(gamma);
  if (at_inf) return gamma * std::log(lo) - std::log(-gamma);
  const double span = std::log(hi) - std::log(lo);
  if (gamma == 0.0) return std::log(span);
  // (hi^g - lo^g)/g = lo^g * expm1(g*span)/g, or the mirrored form for g<0.
  if (gamma > 0.0) return gamma * std::log(lo) + std::log(std::expm1(gamma * span) / gamma);
  return gamma * std::log(hi) + std::log(std::expm1(-gamma * span) / -gamma);
}

double log_integrate_exp(const std::function<double(double)>& log_f, double u_lo, double u_hi,
                         double u_ref) {
  if (!(u_hi > u_lo)) return kNegInf;
  double shift = log_f(u_ref);
  if (!std::isfinite(shift)) shift = 0.0;
  auto g = [&](double u) {
    const double v = log_f(u) - shift;
    return v == kNegInf ? 0.0 : std::exp(v);
  };
  double err = 0.0;
  if (std::isfinite(u_lo) && std::isfinite(u_hi)) {
    // Integrate over (0,1): the roundoff floor of the error estimate is not
    // scaled by the interval width, so short intervals never converge.
    const double width = u_hi - u_lo;
    auto unit = [&](double x) { return g(u_lo + width * x); };
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(unit, 0.0, 1.0, 15, 1e-13, &err);
    if (!(value > 0.0)) return kNegInf;
    return shift + std::log(value) + std::log(width);
  }
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, u_lo, u_hi, 15, 1e-13, &err);
  if (!(value > 0.0)) return kNegInf;
  return shift + std::log(value);
}

}  // namespace interkernel::numerics

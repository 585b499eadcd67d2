#pragma once

// I - H on power-weighted L^p couples, and the Laplace operator on a strip
// modelled through the K-profiles of its kernel.

#include <string>
#include <utility>
#include <vector>

#include "fredholm_classifier.hpp"

namespace interkernel {

/// Weights w0 = t^a0 | t^a_inf and w1 = t^b0 | t^b_inf, split at t = 1.
struct HardyModel {
  double p = 2.0;
  double a0 = 0.5;
  double a_inf = 0.25;
  double b0 = -0.5;
  double b_inf = -0.75;

  HardyModel() = default;
  HardyModel(double p, double a0, double a_inf, double b0, double b_inf);

  double theta_zero() const { return a0 / (a0 - b0); }
  double theta_inf() const { return a_inf / (a_inf - b_inf); }
  PowerWeight w0() const { return PowerWeight(a0, a_inf); }
  PowerWeight w1() const { return PowerWeight(b0, b_inf); }
  CoupleDescriptor couple() const { return make_weighted_lp(p, w0(), w1()); }

  /// Parses "a0=..,ainf=..,b0=..,binf=.." (any order, all four required).
  static HardyModel parse(const std::string& text, double p);
};

/// Hf(t) = (1/t) \int_0^t f(s) ds, exactly. Throws InputError when a term
/// is not integrable at 0 or integrates to a logarithm.
PiecewisePowerFunction hardy_apply(const PiecewisePowerFunction& f);

/// \int_t^inf f(s) ds/s.
PiecewisePowerFunction hardy_k0(const PiecewisePowerFunction& f);

/// \int_0^t f(s) ds/s.
PiecewisePowerFunction hardy_k1(const PiecewisePowerFunction& f);

enum class HardySide { X0, X1 };

/// ||(I - K0)(I - H) f - f|| / ||f|| in L^p(w0), or the mirror
/// ||(I + K1)(I - H) f - f|| / ||f|| in L^p(w1). 0 for f = 0.
double hardy_inverse_check(const HardyModel& model, const PiecewisePowerFunction& f, HardySide side);

/// f_*(t) = 1, the kernel of I - H in X0 + X1.
PiecewisePowerFunction hardy_kernel_element();

KProfile hardy_kernel_profile(const HardyModel& model, const DyadicGrid& grid = DyadicGrid::from_environment());

OperatorModel hardy_operator(const HardyModel& model);

std::vector<Classification> hardy_classify_sweep(const HardyModel& model, double q, const std::vector<double>& thetas);

/// I - H acting slotwise on the product of the given couples.
OperatorModel hardy_product_operator(const std::vector<HardyModel>& models);
Classification hardy_product_classify(const std::vector<HardyModel>& models, double theta, double q);

struct StripModel {
  double alpha = M_PI / 2;
  double beta0 = 1.0;
  double beta1 = 5.0;
  int order = 2;  ///< Sobolev order, metadata only

  StripModel() = default;
  StripModel(double alpha, double beta0, double beta1, int order = 2);

  /// Parses "alpha=..,beta0=..,beta1=..[,l=..]"; alpha accepts "pi/2" style.
  static StripModel parse(const std::string& text);
};

/// (k, theta_k) for every k != 0 with beta0 < k pi/alpha < beta1.
std::vector<std::pair<int, double>> strip_thetas(const StripModel& model);

/// Kernel functions exp(-k pi x/alpha) sin(k pi y/alpha), as text.
std::vector<std::string> strip_kernel_functions(const StripModel& model);

/// Kernel {f_k} with K(t, f_k) = t^{theta_k} exactly.
OperatorModel strip_operator(const StripModel& model, const DyadicGrid& grid = DyadicGrid::from_environment());
Classification strip_classify(const StripModel& model, double theta, double q = 2.0);

}  // namespace interkernel

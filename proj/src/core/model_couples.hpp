#pragma once

// Model Banach couples and their elements.
//
// Elements of weighted L^p((0,inf), dt/t) couples are stored exactly as
// piecewise sums of power terms, f(t) = sum_j c_j t^{e_j} on (lo, hi].
// Every integral against piecewise-power weights then has a closed form.

#include <span>
#include <variant>
#include <vector>

#include "profile.hpp"

namespace interkernel {

struct PowerTerm {
  double coeff = 0.0;
  double exponent = 0.0;
};

/// Half-open interval (lo, hi] carrying a short sum of powers.
/// lo == 0 and hi == +inf denote unbounded ends.
struct Segment {
  double lo = 0.0;
  double hi = kInf;
  std::vector<PowerTerm> terms;

  bool touches_zero() const { return lo <= 0.0; }
  bool touches_inf() const { return std::isinf(hi); }
  double operator()(double t) const;
};

class PiecewisePowerFunction {
public:
  PiecewisePowerFunction() = default;
  /// Segments must be ordered and disjoint; equal exponents are merged and
  /// zero coefficients dropped.
  explicit PiecewisePowerFunction(std::vector<Segment> segments);

  static PiecewisePowerFunction power(double coeff, double exponent, double lo = 0.0,
                                      double hi = kInf);
  static PiecewisePowerFunction constant(double value, double lo = 0.0, double hi = kInf) {
    return power(value, 0.0, lo, hi);
  }

  const std::vector<Segment>& segments() const { return segments_; }
  bool is_zero() const { return segments_.empty(); }
  double operator()(double t) const;

  /// All finite segment endpoints (excluding 0), ascending.
  std::vector<double> breakpoints() const;
  /// Same function with every segment split at the given points.
  PiecewisePowerFunction refined(std::span<const double> points) const;
  /// Interior points where a multi-term segment changes sign, ascending.
  std::vector<double> sign_changes() const;
  PiecewisePowerFunction scaled(double lambda) const;
  /// Pointwise product with c * t^e.
  PiecewisePowerFunction times_power(double c, double e) const;

private:
  std::vector<Segment> segments_;
};

/// f + g on the common refinement of both partitions.
PiecewisePowerFunction add_elements(const PiecewisePowerFunction& f, const PiecewisePowerFunction& g);

/// a_theta(t) = theta (1 - theta) t^theta on (0, inf).
PiecewisePowerFunction a_theta_element(double theta);

/// scale * t^a0 on (0,1], scale * t^a_inf on (1,inf).
struct PowerWeight {
  double a0 = 0.0;
  double a_inf = 0.0;
  double scale = 1.0;

  PowerWeight() = default;
  PowerWeight(double e0, double einf, double s = 1.0);
  double operator()(double t) const { return scale * std::pow(t, t <= 1.0 ? a0 : a_inf); }
  double exponent_on(const Segment& piece) const { return piece.hi <= 1.0 ? a0 : a_inf; }
};

/// ||f||_{L^p(w)} = (\int |f w|^p dt/t)^{1/p}; +inf when divergent.
double eval_lp_norm(const PiecewisePowerFunction& f, double p, const PowerWeight& w);

struct WeightedLp {
  double p = 2.0;
  PowerWeight w0;
  PowerWeight w1;
};

/// The couple (L^1(dt/t), L^1(t^{-1} dt/t)).
struct ReferenceL1 {
  static WeightedLp as_weighted() { return WeightedLp{1.0, PowerWeight(0, 0), PowerWeight(-1, -1)}; }
};

/// Abstract couple known only through the K-profile of a reference element x;
/// its elements are scalar multiples of x.
struct SequenceCouple {
  KProfile profile;
};

struct CoupleDescriptor {
  std::variant<WeightedLp, ReferenceL1, SequenceCouple> kind;

  bool is_sequence() const { return std::holds_alternative<SequenceCouple>(kind); }
  /// Weighted L^p view for the two function-space kinds.
  WeightedLp weighted() const;
  double p() const;
};

CoupleDescriptor make_weighted_lp(double p, PowerWeight w0, PowerWeight w1);

/// Value of an element in one component couple: a function for the L^p kinds,
/// a multiple of the reference element for a sequence couple.
using ComponentValue = std::variant<PiecewisePowerFunction, double>;

/// Finite product of component couples, normed by the l^p sum of components.
struct ProductCouple {
  std::vector<CoupleDescriptor> components;
  double p = 2.0;

  ProductCouple() = default;
  explicit ProductCouple(std::vector<CoupleDescriptor> comps);
  static ProductCouple single(CoupleDescriptor c) { return ProductCouple({std::move(c)}); }
  std::size_t size() const { return components.size(); }
};

/// An element of a product couple: one value per component.
using Element = std::vector<ComponentValue>;

Element zero_element(const ProductCouple& couple);
Element add(const Element& x, const Element& y);
Element scale(const Element& x, double lambda);
/// x + sum_i coeffs[i] * basis[i]
Element combine(const Element& x, std::span<const Element> basis, std::span<const double> coeffs);
bool is_zero(const Element& x);
void check_compatible(const ProductCouple& couple, const Element& x);

}  // namespace interkernel

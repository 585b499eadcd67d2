#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace interkernel {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Error raised for malformed inputs (domain violations, bad descriptors).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Dyadic sample points t_k = 2^k for k_min <= k <= k_max.
struct DyadicGrid {
  int k_min = -80;
  int k_max = 80;

  DyadicGrid() = default;
  DyadicGrid(int lo, int hi) : k_min(lo), k_max(hi) {
    if (!(lo < hi)) throw InputError("DyadicGrid: k_min must be < k_max");
  }

  std::size_t size() const { return static_cast<std::size_t>(k_max - k_min + 1); }
  double t(int k) const { return std::ldexp(1.0, k); }
  bool contains(int k) const { return k >= k_min && k <= k_max; }

  /// Default grid, overridable with INTERKERNEL_GRID="kmin:kmax".
  static DyadicGrid from_environment();
  static DyadicGrid parse(const std::string& text);
};

/// Interpolation parameters (theta, q); q = +inf is the sup-norm case.
struct ThetaQ {
  double theta = 0.5;
  double q = 2.0;

  ThetaQ() = default;
  ThetaQ(double th, double qq) : theta(th), q(qq) {
    if (!(th > 0.0 && th < 1.0)) throw InputError("theta must lie in (0,1)");
    if (!(qq >= 1.0)) throw InputError("q must be >= 1 (or inf)");
  }
  bool q_infinite() const { return std::isinf(q); }
};

/// Samples of t -> K(t, x) on a dyadic grid, with optional power tails.
///
/// `tail0` is the exponent g with K(t) ~ t^g as t -> 0, `tail_inf` the
/// exponent as t -> inf. Beyond the grid, values are extended with these
/// exponents. `equivalence_factor` bounds the distortion of the stored
/// values relative to the true K (1 when exact).
struct KProfile {
  DyadicGrid grid;
  std::vector<double> values;
  std::optional<double> tail0;
  std::optional<double> tail_inf;
  double equivalence_factor = 1.0;

  KProfile() = default;
  KProfile(DyadicGrid g, std::vector<double> v, std::optional<double> t0 = {},
           std::optional<double> tinf = {}, double eq = 1.0);

  /// K(t) ~ t^exponent on the whole line, exact.
  static KProfile power(const DyadicGrid& g, double exponent, double scale = 1.0);
  /// scale*t^e0 for t <= 1, scale*t^einf for t >= 1.
  static KProfile two_power(const DyadicGrid& g, double e0, double einf, double scale = 1.0);

  double at(int k) const { return values.at(static_cast<std::size_t>(k - grid.k_min)); }
  /// log2 K(2^k) for any integer k, using the tails outside the grid.
  /// Throws std::domain_error when k is off-grid on a side without a tail.
  double log2_at(int k) const;
  /// K(t) for arbitrary t > 0 by geometric interpolation between grid points.
  double value(double t) const;

  bool has_tails() const { return tail0.has_value() && tail_inf.has_value(); }

  /// Violations of: K nondecreasing, K/t nonincreasing, K(2t) <= 2K(t).
  /// Returns an empty string when all hold within the relative slack.
  std::string check_invariants(double rel_slack = 1e-12) const;
};

}  // namespace interkernel

#pragma once

// K- and J-functionals of model couples, (theta,q) norms, memberships and
// quotient K-functionals.
//
// For weighted L^p couples with p > 1 the value computed is the p-averaged
// functional
//   K_p(t,f) = ( \int |f|^p (w0^{-p'} + (t w1)^{-p'})^{1-p} ds/s )^{1/p},
// which satisfies K_p <= K <= 2^{1-1/p} K_p. For p = 1 it is the true K.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "model_couples.hpp"

namespace interkernel {

/// Raised when J is requested for an element outside X0 ∩ X1.
class NotInIntersectionError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

struct KEvaluation {
  double value = 0.0;      ///< +inf when x is not in X0 + X1
  std::string diagnostic;  ///< empty unless value is +inf
};

/// K(t, f) in one weighted couple.
KEvaluation k_functional(const CoupleDescriptor& couple, const PiecewisePowerFunction& f, double t);
/// K(t, x) in a product couple: the l^p sum of the component values.
KEvaluation k_functional(const ProductCouple& couple, const Element& x, double t);

/// Distortion bound of the computed K relative to the true K.
double equivalence_factor(const ProductCouple& couple);

enum class Endpoint { X0, X1 };

/// ||x||_{X_i}; +inf when x is not in X_i. Sequence components have no
/// endpoint norms and are rejected.
double endpoint_norm(const ProductCouple& couple, const Element& x, Endpoint side);

/// J(t, x) = max(||x||_0, t ||x||_1). Throws NotInIntersectionError when an
/// endpoint norm diverges.
double j_functional(const ProductCouple& couple, const Element& x, double t);

/// Tail exponents (g0, ginf) with K(t,x) ≍ t^{g0} as t -> 0 and t^{ginf}
/// as t -> inf, read off the power terms of x.
struct TailExponents {
  std::optional<double> zero;
  std::optional<double> inf;
};

/// Tails contributed by one monomial c s^e on a piece where the weights
/// are s^a (X0) and s^b (X1).
TailExponents monomial_tails(double e, double a, double b, bool touches_zero, bool touches_inf);
/// Whether the monomial lies in X0 + X1 on that piece.
bool monomial_in_sum(double e, double a, double b, bool touches_zero, bool touches_inf);

TailExponents analytic_tails(const ProductCouple& couple, const Element& x);

/// K-profile of x on a dyadic grid with analytic tails.
/// Throws InputError for x = 0 or x outside X0 + X1.
KProfile sample_profile(const ProductCouple& couple, const Element& x, const DyadicGrid& grid);

struct ThetaQNorm {
  double value = 0.0;
  bool lower_bound_only = false;  ///< a side without tail was truncated
};

/// Dyadic sum (sum_k (2^{-k theta} K(2^k))^q ln 2)^{1/q}, completed with
/// geometric tails; sup over grid and tails for q = inf.
ThetaQNorm theta_q_norm(const KProfile& profile, const ThetaQ& tq);

enum class Side { Zero, Inf };
enum class Membership { Member, NotMember, Boundary };

struct MembershipResult {
  Membership verdict = Membership::Boundary;
  bool boundary = false;  ///< theta sits on the tail exponent (or numeric near-tie)
  bool analytic = false;  ///< decided from a tail exponent
};

/// Ties closer than this are treated as exact equalities.
inline constexpr double kTieTolerance = 1e-12;

/// Whether \int over the half-line of (t^{-theta} K)^q dt/t is finite.
MembershipResult half_norm_membership(const KProfile& profile, const ThetaQ& tq, Side side);

/// The same verdict for K ≍ t^tail on that side.
MembershipResult membership_from_tail(double tail, const ThetaQ& tq, Side side);

struct QuotientOptions {
  int starts = 8;
  int max_sweeps = 200;
  std::uint64_t seed = 20240601;
};

struct QuotientK {
  double value = 0.0;
  std::vector<double> coefficients;  ///< minimizing shift along the kernel
  bool converged = false;
};

/// inf over v in span(kernel) of K(t, x + v), by coordinate descent with
/// multi-start; exploits convexity of K in the element.
QuotientK quotient_k(const ProductCouple& couple, const Element& x, std::span<const Element> kernel,
                     double t, const QuotientOptions& options = {});

struct C0Membership {
  bool member = false;
  bool boundary = false;
};

/// x in (X0,X1)_{theta,c0}: K(t,x)/t^theta -> 0 at both ends.
C0Membership theta_c0_membership(const KProfile& profile, double theta);

/// CSV with columns k,t,K (17 significant digits).
std::string profile_csv(const KProfile& profile);

/// %.17g formatting shared by all CSV writers.
std::string format_double(double v);

}  // namespace interkernel

#pragma once

// Fredholm classification of operators on real interpolation spaces from
// the kernel of the operator in X0 + X1.

#include <optional>
#include <string>
#include <vector>

#include "dilation_indices.hpp"

namespace interkernel {

/// Caller-asserted behaviour of A on the endpoint spaces.
enum class EndpointStatus { InvertibleOnEndpoints, SurjectiveFredholmOnEndpoints };
const char* to_string(EndpointStatus s);

struct OperatorModel {
  ProductCouple couple_x;
  EndpointStatus endpoint_status = EndpointStatus::InvertibleOnEndpoints;
  std::vector<Element> kernel_basis;  ///< ker A in X0 + X1
  std::string label;

  /// Set by reduce_to_surjective: dimensions of the complements padded in,
  /// and the status before padding.
  int complement_dim0 = 0;
  int complement_dim1 = 0;
  std::optional<EndpointStatus> reduced_from;

  /// Status that decides whether the necessity results apply.
  EndpointStatus effective_status() const { return reduced_from.value_or(endpoint_status); }
};

/// Throws InputError when the kernel basis is empty-incompatible with the
/// couple or linearly dependent.
void validate(const OperatorModel& model);

struct ElementMembership {
  MembershipResult zero_side;
  MembershipResult inf_side;
};

/// Coefficient subspaces (columns are coefficient vectors over kernel_basis)
/// together with realized basis elements.
struct KernelSplit {
  MonomialTable table;
  linalg::Matrix v0, v1, v01, vtilde;
  std::vector<Element> v0_basis, v1_basis, v01_basis, vtilde_basis;
  std::vector<ElementMembership> memberships;  ///< per kernel basis element
  bool exact = true;          ///< decided by the monomial algebra
  bool boundary = false;      ///< theta equals some tail exponent
  bool degenerate = false;    ///< a spanning decision could not be made
  std::string degenerate_reason;
};

struct SplitOptions {
  /// Greedy complement built from the basis in reverse order.
  bool reverse_complement = false;
};

KernelSplit split_kernel(const OperatorModel& model, const ThetaQ& tq, const SplitOptions& options = {});

enum class VerdictKind { Invertible, ClassF1, ClassF2, Fredholm, NotFredholm, Boundary };
const char* to_string(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Boundary;
  int n = 0;           ///< kernel dimension (ClassF1, Fredholm)
  int d = 0;           ///< codimension (ClassF2, Fredholm)
  std::string detail;  ///< failed condition (NotFredholm) or reason (Boundary)

  int index() const { return n - d; }
  std::string label() const;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// beta(lhs) < theta < alpha(rhs) for one pair of subspaces.
struct ConditionCheck {
  std::string name;
  std::string lower_label;
  double lower = 0.0;
  std::string upper_label;
  double upper = 1.0;
  double theta = 0.0;
  bool holds = false;
  bool determined = true;  ///< false when an index could not be computed
  bool tie = false;        ///< an endpoint equals theta exactly
  bool near_tie = false;   ///< within the numeric tolerance of a sampled index
  /// Neither holds nor fails clearly: near tie or undetermined index.
  bool inconclusive() const { return !holds && !clear_failure; }
  bool clear_failure = false;
};

struct NamedIndexSet {
  std::string name;
  IndexSet indices;
};

struct Classification {
  Verdict verdict;
  ThetaQ tq;
  bool necessity_applicable = false;
  std::vector<ConditionCheck> conditions;
  std::vector<NamedIndexSet> index_sets;
  KernelSplit split;
};

struct ClassifyOptions {
  SplitOptions split;
  double tol = 1e-6;  ///< Boundary band for sampled indices
  DyadicGrid grid;    ///< profiles for the sampled fallback
};

Classification classify(const OperatorModel& model, const ThetaQ& tq, const ClassifyOptions& options = {});

struct OmegaSet {
  bool empty = true;
  double lo = 0.0;
  double hi = 0.0;
  int samples = 0;
};

/// Intersection of [alpha(x), beta(x)] over sampled kernel directions.
OmegaSet omega_set(const OperatorModel& model);

/// One factor of A = A3 A2 A1.
struct FactorStage {
  std::string tag;              ///< "F1", "F2", "F3"
  linalg::Matrix kernel;        ///< kernel of this factor, coefficient columns
  linalg::Matrix modulo;        ///< subspace already divided out before it
  std::vector<Element> kernel_basis;
  IndexSet kernel_indices;      ///< exact indices in the quotient couple
  ConditionCheck condition;     ///< the class condition, exact
  /// The same condition re-checked on numeric quotient K-profiles of each
  /// basis element of the kernel.
  std::vector<KProfile> quotient_profiles;
  std::vector<IndexSet> quotient_indices;
  bool numeric_check = true;
};

struct FactorizationData {
  FactorStage a1, a2, a3;
  KernelSplit split;
};

struct FactorizeOptions {
  SplitOptions split;
  DyadicGrid grid{-40, 40};
  QuotientOptions quotient{2, 200, 20240601};
  double tol = 1e-3;  ///< slack for the numeric re-check
};

/// Requires q < inf.
FactorizationData factorize(const OperatorModel& model, const ThetaQ& tq, const FactorizeOptions& options = {});

/// Pads the endpoint spaces with complements of the given dimensions so that
/// the operator becomes surjective; the kernel is unchanged.
OperatorModel reduce_to_surjective(const OperatorModel& model, int dim0, int dim1);

}  // namespace interkernel

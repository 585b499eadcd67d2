#pragma once

// Dilation indices of elements and finite-dimensional subspaces.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kfunctional.hpp"
#include "linalg.hpp"

namespace interkernel {

enum class IndexSource {
  Analytic,   ///< from power tails of a single profile
  Numeric,    ///< extremal chord slopes on the grid
  Sampled,    ///< worst case over a sampled unit sphere
  Algebraic,  ///< exact, from the monomial structure of a subspace
  Empty,      ///< vacuous indices of {0}
};

const char* to_string(IndexSource s);

struct IndexEntry {
  double value = 0.0;
  /// Best constant gamma in the defining inequality at `value`, when it
  /// could be evaluated on the grid.
  std::optional<double> gamma;
  bool determined = true;
};

struct IndexSet {
  IndexEntry alpha, beta, alpha0, beta0, alpha_inf, beta_inf;
  double tolerance = 0.0;
  IndexSource source = IndexSource::Analytic;

  /// alpha-type 1, beta-type 0: every strict condition holds vacuously.
  static IndexSet empty();
  bool all_determined() const;
  /// Ordering laws 0 <= alpha <= alpha0 <= beta0 <= beta <= 1 (and the inf
  /// mirror); empty string when they hold within `tolerance`.
  std::string check_invariants() const;
};

/// Analytic indices when the profile has both tails, numeric otherwise.
IndexSet indices_of_profile(const KProfile& profile);

/// Chord-slope estimate ignoring any tails: sup/inf of slopes over pairs in
/// the outer half of each side of the grid. Fewer than 3 points on a side
/// leaves that side undetermined.
IndexSet numeric_indices_of_profile(const KProfile& profile);

struct SubspaceSample {
  ProductCouple couple;
  std::vector<Element> basis;
  std::vector<std::vector<double>> sphere_points;  ///< K(1, .)-normalized coefficients
  DyadicGrid grid;
  int density = 0;
};

/// Unit directions in R^d: 1 for d = 1, 721 angles on the half circle for
/// d = 2, `count` seeded Gaussian directions otherwise.
std::vector<std::vector<double>> sphere_directions(std::size_t d, std::uint64_t seed = 7, int count = 512);

/// 1 point for dim 1, 721 angles on the half circle for dim 2, `count`
/// seeded Gaussian directions otherwise.
SubspaceSample make_subspace_sample(const ProductCouple& couple, std::vector<Element> basis,
                                    const DyadicGrid& grid, std::uint64_t seed = 7, int count = 512);

/// Worst case over the sampled sphere. beta-type values are certified from
/// below, alpha-type from above.
IndexSet indices_of_subspace(const SubspaceSample& sample);

/// Coefficients of a basis in the monomials it uses. Row i is basis
/// element i; each column is one monomial c s^e on one piece of one
/// component (or one sequence component), with the tail exponents it
/// contributes.
struct MonomialTable {
  linalg::Matrix coeffs;
  std::vector<double> zero_exp;
  std::vector<double> inf_exp;
  std::vector<std::string> labels;
  bool exact = true;  ///< false when some column has no analytic tail
};

MonomialTable monomial_table(const ProductCouple& couple, std::span<const Element> basis);

/// Tail exponents of the element with coefficient vector c (length m).
TailExponents tails_of(const MonomialTable& table, const Eigen::VectorXd& c);

/// Exact indices of the image of span(omega) in the quotient by span(modulo);
/// both are m x k coefficient matrices. Returns the empty set when
/// span(omega) ⊆ span(modulo).
IndexSet algebraic_indices(const MonomialTable& table, const linalg::Matrix& omega,
                           const linalg::Matrix& modulo);

}  // namespace interkernel

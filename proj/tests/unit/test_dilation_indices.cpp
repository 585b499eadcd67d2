#include <doctest.h>

#include "dilation_indices.hpp"
#include "model_couples.hpp"

using namespace interkernel;

namespace {

void check_all(const IndexSet& s, double a0, double b0, double ai, double bi, double eps) {
  CHECK(s.alpha0.value == doctest::Approx(a0).epsilon(eps));
  CHECK(s.beta0.value == doctest::Approx(b0).epsilon(eps));
  CHECK(s.alpha_inf.value == doctest::Approx(ai).epsilon(eps));
  CHECK(s.beta_inf.value == doctest::Approx(bi).epsilon(eps));
  CHECK(s.alpha.value == doctest::Approx(std::min(a0, ai)).epsilon(eps));
  CHECK(s.beta.value == doctest::Approx(std::max(b0, bi)).epsilon(eps));
}

CoupleDescriptor hardy_couple(double p = 2.0, double scale = 1.0) {
  return make_weighted_lp(p, PowerWeight(0.5, 0.25, scale), PowerWeight(-0.5, -0.75, scale));
}

}  // namespace

TEST_CASE("indices of two-power profiles") {
  const DyadicGrid grid(-80, 80);
  const auto s = indices_of_profile(KProfile::two_power(grid, 0.3, 0.7));
  CHECK(s.source == IndexSource::Analytic);
  check_all(s, 0.3, 0.3, 0.7, 0.7, 1e-15);
  CHECK(s.check_invariants() == "");
  const auto flat = indices_of_profile(KProfile::power(grid, 0.0, 3.0));
  check_all(flat, 0.0, 0.0, 0.0, 0.0, 1e-15);
}

TEST_CASE("numeric chord slopes reproduce analytic indices") {
  const DyadicGrid grid(-80, 80);
  for (const auto& [e0, ei] : {std::pair{0.3, 0.7}, std::pair{0.8, 0.1}, std::pair{0.5, 0.5}}) {
    const auto n = numeric_indices_of_profile(KProfile::two_power(grid, e0, ei));
    CHECK(n.source == IndexSource::Numeric);
    check_all(n, e0, e0, ei, ei, 1e-3);
  }
  // Hardy kernel: curved profile, exact only asymptotically.
  const auto couple = ProductCouple::single(hardy_couple());
  const auto prof = sample_profile(couple, Element{PiecewisePowerFunction::constant(1.0)}, grid);
  const auto n = numeric_indices_of_profile(prof);
  CHECK(std::abs(n.alpha0.value - 0.5) <= 1e-3);
  CHECK(std::abs(n.beta0.value - 0.5) <= 1e-3);
  CHECK(std::abs(n.alpha_inf.value - 0.25) <= 1e-3);
  CHECK(std::abs(n.beta_inf.value - 0.25) <= 1e-3);
  CHECK(n.check_invariants() == "");
}

TEST_CASE("short grids leave indices undetermined") {
  const auto n = numeric_indices_of_profile(KProfile(DyadicGrid(-2, 2), {1, 1, 1, 1, 1}));
  CHECK_FALSE(n.all_determined());
}

TEST_CASE("empty index set convention") {
  const auto e = IndexSet::empty();
  CHECK(e.alpha.value == 1.0);
  CHECK(e.alpha0.value == 1.0);
  CHECK(e.alpha_inf.value == 1.0);
  CHECK(e.beta.value == 0.0);
  CHECK(e.beta0.value == 0.0);
  CHECK(e.beta_inf.value == 0.0);
  CHECK(e.source == IndexSource::Empty);
}

TEST_CASE("indices are invariant under scaling") {
  const DyadicGrid grid(-60, 60);
  const Element one{PiecewisePowerFunction::constant(1.0)};
  const auto base = indices_of_profile(sample_profile(ProductCouple::single(hardy_couple()), one, grid));
  const auto scaled_x = indices_of_profile(sample_profile(ProductCouple::single(hardy_couple()), scale(one, -7.5), grid));
  const auto scaled_w = indices_of_profile(sample_profile(ProductCouple::single(hardy_couple(2.0, 3.0)), one, grid));
  for (const auto* s : {&scaled_x, &scaled_w}) {
    CHECK(s->alpha.value == base.alpha.value);
    CHECK(s->beta.value == base.beta.value);
    CHECK(s->alpha0.value == base.alpha0.value);
    CHECK(s->beta0.value == base.beta0.value);
    CHECK(s->alpha_inf.value == base.alpha_inf.value);
    CHECK(s->beta_inf.value == base.beta_inf.value);
  }
}

TEST_CASE("subspace indices") {
  const DyadicGrid grid(-40, 40);
  const auto couple = ProductCouple({CoupleDescriptor{SequenceCouple{KProfile::power(grid, 0.2)}},
                                     CoupleDescriptor{SequenceCouple{KProfile::power(grid, 0.6)}}});
  const std::vector<Element> basis{Element{1.0, 0.0}, Element{0.0, 1.0}};
  SUBCASE("sampled sphere") {
    const auto sample = make_subspace_sample(couple, basis, grid);
    CHECK(sample.sphere_points.size() == 721);
    const auto s = indices_of_subspace(sample);
    CHECK(s.source == IndexSource::Sampled);
    CHECK(s.beta.value >= 0.6 - 1e-9);
    CHECK(s.alpha.value <= 0.2 + 1e-9);
  }
  SUBCASE("monomial algebra") {
    const auto table = monomial_table(couple, basis);
    CHECK(table.exact);
    CHECK(table.coeffs.rows() == 2);
    const auto all = algebraic_indices(table, linalg::Matrix::Identity(2, 2), linalg::empty(2));
    CHECK(all.source == IndexSource::Algebraic);
    CHECK(all.alpha.value == doctest::Approx(0.2));
    CHECK(all.beta.value == doctest::Approx(0.6));
    linalg::Matrix second(2, 1);
    second << 0.0, 1.0;
    linalg::Matrix first(2, 1);
    first << 1.0, 0.0;
    const auto quotient = algebraic_indices(table, linalg::Matrix::Identity(2, 2), first);
    CHECK(quotient.alpha.value == doctest::Approx(0.6));
    CHECK(quotient.beta.value == doctest::Approx(0.6));
    CHECK(algebraic_indices(table, second, second).source == IndexSource::Empty);
  }
  SUBCASE("one-dimensional span equals the element") {
    const auto one = ProductCouple::single(hardy_couple());
    const Element fstar{PiecewisePowerFunction::constant(1.0)};
    const auto s = indices_of_subspace(make_subspace_sample(one, {fstar}, grid));
    const auto e = indices_of_profile(sample_profile(one, fstar, grid));
    CHECK(s.alpha.value == doctest::Approx(e.alpha.value));
    CHECK(s.beta.value == doctest::Approx(e.beta.value));
  }
  SUBCASE("empty basis") { CHECK(indices_of_subspace(make_subspace_sample(couple, {}, grid)).source == IndexSource::Empty); }
}

TEST_CASE("sphere directions") {
  CHECK(sphere_directions(0).empty());
  CHECK(sphere_directions(1).size() == 1);
  const auto d3 = sphere_directions(3, 7, 64);
  CHECK(d3.size() == 64);
  for (const auto& v : d3) CHECK(std::hypot(v[0], v[1], v[2]) == doctest::Approx(1.0));
  CHECK(sphere_directions(3, 7, 64) == d3);
}

TEST_CASE("linear algebra helpers") {
  linalg::Matrix a(3, 2);
  a << 1, 0, 0, 1, 0, 0;
  linalg::Matrix b(3, 2);
  b << 0, 0, 1, 0, 0, 1;
  CHECK(linalg::rank(a) == 2);
  CHECK(linalg::rank(linalg::sum(a, b)) == 3);
  CHECK(linalg::intersection(a, b).cols() == 1);
  CHECK(linalg::null_space(a.transpose()).cols() == 1);
  CHECK(linalg::orth(a).cols() == 2);
}

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "worked_examples.hpp"

using namespace interkernel;

namespace {

// Compact support away from 0 keeps every Hardy-type integral finite.
PiecewisePowerFunction random_input(std::mt19937_64& rng) { return oracle::random_compact(rng, false); }

}  // namespace

TEST_CASE("Hardy operator in closed form") {
  const auto one = hardy_apply(PiecewisePowerFunction::constant(1.0));
  CHECK(one(0.3) == doctest::Approx(1.0));
  CHECK(one(50.0) == doctest::Approx(1.0));
  CHECK(add_elements(hardy_kernel_element(), hardy_apply(hardy_kernel_element()).scaled(-1.0)).is_zero());
  const auto p = hardy_apply(PiecewisePowerFunction::power(1.0, 0.7));
  CHECK(p(2.0) == doctest::Approx(std::pow(2.0, 0.7) / 1.7));
  const auto box = hardy_apply(PiecewisePowerFunction::constant(1.0, 1.0, 2.0));
  CHECK(box(4.0) == doctest::Approx(0.25));
  CHECK(box(100.0) == doctest::Approx(0.01));
  CHECK(box(0.5) == 0.0);
  CHECK_THROWS_AS(hardy_apply(PiecewisePowerFunction::power(1.0, -1.0, 0.0, 1.0)), InputError);
  CHECK_THROWS_AS(hardy_apply(PiecewisePowerFunction::power(1.0, -2.0, 0.0, 1.0)), InputError);
}

TEST_CASE("Hardy-type operators against quadrature") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> lt(-5.0, 5.0), coef(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const auto f = random_input(rng);
    const auto g = random_input(rng);
    const double a = coef(rng);
    const auto hf = hardy_apply(f);
    const auto k0 = hardy_k0(f);
    const auto k1 = hardy_k1(f);
    const auto lin = hardy_apply(add_elements(f.scaled(a), g));
    for (int j = 0; j < 3; ++j) {
      const double t = std::exp2(lt(rng));
      const double scale = 1.0 + std::abs(oracle::hardy(f, t));
      CHECK(std::abs(hf(t) - oracle::hardy(f, t)) <= 1e-10 * scale);
      CHECK(std::abs(k0(t) - oracle::k0(f, t)) <= 1e-10 * (1.0 + std::abs(oracle::k0(f, t))));
      CHECK(std::abs(k1(t) - oracle::k1(f, t)) <= 1e-10 * (1.0 + std::abs(oracle::k1(f, t))));
      CHECK(lin(t) == doctest::Approx(a * hf(t) + hardy_apply(g)(t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Hardy inverses on compactly supported inputs") {
  const HardyModel h;
  CHECK(hardy_inverse_check(h, PiecewisePowerFunction::constant(1.0, 1.0, 2.0), HardySide::X0) <= 1e-10);
  CHECK(hardy_inverse_check(h, PiecewisePowerFunction(), HardySide::X0) == 0.0);
  CHECK(hardy_inverse_check(h, PiecewisePowerFunction::power(1.0, 0.3, 1.0, 4.0), HardySide::X0) <= 1e-10);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    const auto f = random_input(rng);
    CHECK(hardy_inverse_check(h, f, HardySide::X0) <= 1e-10);
    CHECK(hardy_inverse_check(h, f, HardySide::X1) <= 1e-10);
  }
}

TEST_CASE("Hardy model parameters") {
  const HardyModel h;
  CHECK(h.theta_zero() == 0.5);
  CHECK(h.theta_inf() == 0.25);
  CHECK_THROWS_AS(HardyModel(2, 0.5, 0.25, 0.0, -0.75), InputError);
  CHECK_THROWS_AS(HardyModel(2, 1.5, 0.25, -0.5, -0.75), InputError);
  CHECK_THROWS_AS(HardyModel(0.5, 0.5, 0.25, -0.5, -0.75), InputError);
  const auto parsed = HardyModel::parse("binf=-0.75,b0=-0.5,ainf=0.25,a0=0.5", 2.0);
  CHECK(parsed.a_inf == 0.25);
  try {
    HardyModel::parse("a0=0.5,ainf=0.25,b0=-0.5", 2.0);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("binf") != std::string::npos);
  }
  CHECK_THROWS_AS(HardyModel::parse("a0=x,ainf=0.25,b0=-0.5,binf=-1", 2.0), InputError);
}

TEST_CASE("Hardy kernel profile") {
  const HardyModel h;
  const auto prof = hardy_kernel_profile(h, DyadicGrid(-80, 80));
  REQUIRE(prof.has_tails());
  CHECK(*prof.tail0 == 0.5);
  CHECK(*prof.tail_inf == 0.25);
  const double s0 = (prof.log2_at(-40) - prof.log2_at(-80)) / 40.0;
  const double si = (prof.log2_at(80) - prof.log2_at(40)) / 40.0;
  CHECK(std::abs(s0 - 0.5) <= 1e-3);
  CHECK(std::abs(si - 0.25) <= 1e-3);
}

TEST_CASE("strip example") {
  const StripModel s;
  const auto th = strip_thetas(s);
  REQUIRE(th.size() == 2);
  CHECK(th[0].first == 1);
  CHECK(th[0].second == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(th[1].first == 2);
  CHECK(th[1].second == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(strip_classify(s, 0.5).verdict.kind == VerdictKind::Invertible);
  CHECK(strip_classify(s, 0.25).verdict.kind == VerdictKind::NotFredholm);
  CHECK(strip_classify(s, 0.75).verdict.kind == VerdictKind::NotFredholm);
  CHECK(strip_kernel_functions(s).size() == 2);
  CHECK(strip_kernel_functions(s)[0].find("sin") != std::string::npos);
  const auto op = strip_operator(s, DyadicGrid(-20, 20));
  for (std::size_t k = 0; k < th.size(); ++k) {
    const auto& prof = std::get<SequenceCouple>(op.couple_x.components[k].kind).profile;
    CHECK(*prof.tail0 == th[k].second);
    CHECK(*prof.tail_inf == th[k].second);
    CHECK(prof.at(7) == doctest::Approx(std::exp2(7 * th[k].second)));
  }
  const StripModel none(M_PI / 2, 2.5, 3.5);
  CHECK(strip_thetas(none).empty());
  CHECK(strip_classify(none, 0.3).verdict.kind == VerdictKind::Invertible);
  CHECK_THROWS_AS(StripModel(M_PI / 2, 2.0, 5.0), InputError);
  CHECK(StripModel::parse("alpha=pi/2,beta0=1,beta1=5").alpha == doctest::Approx(M_PI / 2));
  CHECK_THROWS_AS(StripModel::parse("alpha=pi/2,beta0=1"), InputError);
}

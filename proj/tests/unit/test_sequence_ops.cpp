#include <doctest.h>

#include "seq_suites.hpp"
#include "sequence_ops.hpp"

using namespace interkernel;

namespace {

FiniteSeq window(int lo, int hi, double v = 1.0) {
  FiniteSeq s;
  for (int i = lo; i <= hi; ++i) s.set(i, v);
  return s;
}

}  // namespace

TEST_CASE("shift minus identity") {
  CHECK(shift_minus_identity(FiniteSeq::unit(0)) == FiniteSeq::unit(1) + (-1.0) * FiniteSeq::unit(0));
  CHECK(shift_minus_identity(window(0, 3)) == FiniteSeq::unit(4) + (-1.0) * FiniteSeq::unit(0));
  CHECK(shift_minus_identity(FiniteSeq()).empty());
}

TEST_CASE("T0 and T1 on unit vectors") {
  const auto t0 = t0_apply(FiniteSeq::unit(0));
  REQUIRE(t0.left);
  CHECK(t0.left->boundary == 0);
  CHECK(t0.left->value == 1.0);
  CHECK_FALSE(t0.right);
  CHECK(t0[-5] == 1.0);
  CHECK(t0[-1] == 1.0);
  CHECK(t0[0] == 0.0);
  const auto t1 = t1_apply(FiniteSeq::unit(0));
  REQUIRE(t1.right);
  CHECK(t1[0] == -1.0);
  CHECK(t1[7] == -1.0);
  CHECK(t1[-1] == 0.0);
  CHECK(t0_apply(FiniteSeq()).is_finite());
  CHECK(t1_apply(FiniteSeq()).body.empty());
}

TEST_CASE("T0 of e_n - e_0") {
  const int n = -4;
  const auto u = FiniteSeq::unit(n) + (-1.0) * FiniteSeq::unit(0);
  const auto t = t0_apply(u);
  CHECK(t.is_finite());
  CHECK(t.body == (-1.0) * window(n, -1));
  CHECK(shift_minus_identity(t) == u);
}

TEST_CASE("identities on random sequences") {
  CHECK(suite_s_minus_i_t0(1, 300).passed());
  CHECK(suite_t0_equals_t1(1, 300).passed());
  for (int i = 0; i < 200; ++i) {
    const auto u = random_integer_sequence(5, i, true);
    CHECK(u.sum() == 0.0);
    // T0 (S - I) = id on finite sequences.
    const auto back = t0_apply(shift_minus_identity(u));
    CHECK(back.is_finite());
    CHECK(back.body == u);
  }
  CHECK(random_integer_sequence(9, 3, false) == random_integer_sequence(9, 3, false));
}

TEST_CASE("discrete Calderon operator") {
  const auto v = calderon_discrete(FiniteSeq::unit(0), -3, 3);
  REQUIRE(v.size() == 7);
  for (int n = -3; n <= 3; ++n) CHECK(v[n + 3] == std::min(1.0, std::ldexp(1.0, n)));
  for (const double x : calderon_discrete(FiniteSeq(), -2, 2)) CHECK(x == 0.0);
  // Brute force on a random sequence.
  const auto c = random_integer_sequence(4, 0, false);
  const auto s = calderon_discrete(c, -50, 50);
  for (int n = -50; n <= 50; ++n) {
    double direct = 0.0;
    for (const auto& [k, ck] : c.entries()) direct += k <= n ? ck : std::ldexp(ck, n - k);
    CHECK(s[n + 50] == doctest::Approx(direct).epsilon(1e-14));
  }
}

TEST_CASE("Calderon bound constant and norms") {
  CHECK(calderon_bound(0.5) == doctest::Approx(1.0 / (1.0 - std::exp2(-0.5)) + std::exp2(-0.5) / (1.0 - std::exp2(-0.5))));
  const auto c = FiniteSeq::unit(2);
  CHECK(weighted_lq_norm(c, ThetaQ(0.5, 2.0)) == doctest::Approx(0.5));
  const auto r = suite_calderon_bound(2, 50, {0.1, 0.5, 0.9}, {1.0, 2.0, kInf});
  CHECK(r.passed());
  CHECK(r.cases == 450);
  CHECK(r.max_ratio <= 1.0 + 1e-12);
  // Norm of S_d e_0 on l^2(2^{-n theta}) summed by hand.
  const ThetaQ tq(0.3, 2.0);
  double sum = 0.0;
  for (int n = -3000; n <= 3000; ++n) sum += std::pow(std::exp2(-0.3 * n) * std::min(1.0, std::exp2(n)), 2.0);
  CHECK(calderon_weighted_norm(FiniteSeq::unit(0), tq) == doctest::Approx(std::sqrt(sum)).epsilon(1e-12));
}

TEST_CASE("sequence space norms") {
  const DyadicGrid grid(-40, 40);
  const SeqSpaceWeight w{KProfile::power(grid, 0.5), ThetaQ(0.5, 2.0)};
  CHECK(seq_norm(FiniteSeq::unit(6), w).value == doctest::Approx(1.0));
  const SeqSpaceWeight w2{KProfile::two_power(grid, 0.7, 0.2), ThetaQ(0.4, 2.0)};
  CHECK(seq_norm(FiniteSeq::unit(-3), w2).value == doctest::Approx(std::exp2(-3 * 0.7 + 3 * 0.4)));
  SUBCASE("left run at a matching exponent diverges") {
    const auto run = t0_apply(FiniteSeq::unit(0));
    CHECK(std::isinf(seq_norm(run, w).value));
  }
  SUBCASE("left run below the exponent is a geometric sum") {
    const auto run = t0_apply(FiniteSeq::unit(0));
    double sum = 0.0;
    for (int k = -1; k >= -4000; --k) sum += std::exp2(2.0 * (0.7 - 0.4) * k);
    CHECK(seq_norm(run, w2).value == doctest::Approx(std::sqrt(sum)).epsilon(1e-12));
  }
  SUBCASE("run on a side without tail") {
    const SeqSpaceWeight bare{KProfile(grid, KProfile::power(grid, 0.5).values), ThetaQ(0.4, 2.0)};
    CHECK(seq_norm(t0_apply(FiniteSeq::unit(0)), bare).undetermined);
  }
}

TEST_CASE("invertibility of S - I") {
  const auto prof = KProfile::power(DyadicGrid(-60, 60), 0.5);
  CHECK(s_minus_i_invertibility(prof, ThetaQ(0.3, 2.0)).verdict == Invertibility::InvertibleViaT0);
  const auto mid = s_minus_i_invertibility(prof, ThetaQ(0.5, 2.0));
  CHECK(mid.verdict == Invertibility::NotInvertible);
  CHECK(mid.boundary);
  CHECK(s_minus_i_invertibility(prof, ThetaQ(0.8, 2.0)).verdict == Invertibility::InvertibleViaT1);
}

TEST_CASE("truncated norm growth") {
  const DyadicGrid grid(-60, 60);
  SUBCASE("bounded below the index") {
    const auto g = truncated_norm_growth(PartialSumOp::T0, KProfile::power(grid, 0.5), ThetaQ(0.3, 2.0), 1 << 10);
    CHECK(g.verdict == Growth::Bounded);
    double sup = 0.0;
    for (const double l : g.log2_norms) sup = std::max(sup, std::exp2(l));
    const double bound = 1.0 / (1.0 - std::exp2(-(0.5 - 0.3)));
    CHECK(sup <= 2.0 * bound);
    CHECK(sup >= bound / 2.0);
  }
  SUBCASE("diverging at the index") {
    const auto g = truncated_norm_growth(PartialSumOp::T0, KProfile::power(grid, 0.5), ThetaQ(0.5, 2.0), 1 << 10);
    CHECK(g.verdict == Growth::Diverging);
  }
  SUBCASE("window one is the single-entry ratio") {
    const auto prof = KProfile::two_power(grid, 0.6, 0.3);
    const auto g = truncated_norm_growth(PartialSumOp::T0, prof, ThetaQ(0.4, 1.0), 1);
    REQUIRE(g.windows.size() == 1);
    // Support {-1, 0}: T0 e_0 restricted to the window is e_{-1}.
    const SeqSpaceWeight w{prof, ThetaQ(0.4, 1.0)};
    CHECK(std::exp2(g.log2_norms[0]) == doctest::Approx(w.weight(-1) / w.weight(0)));
  }
  SUBCASE("verdicts combine") {
    const auto prof = KProfile::power(grid, 0.5);
    const ThetaQ tq(0.8, 2.0);
    const auto g0 = truncated_norm_growth(PartialSumOp::T0, prof, tq, 1 << 10);
    const auto g1 = truncated_norm_growth(PartialSumOp::T1, prof, tq, 1 << 10);
    CHECK(invertibility_from_growth(g0, g1) == Invertibility::InvertibleViaT1);
    CHECK(g0.csv().rfind("N,", 0) == 0);
  }
}

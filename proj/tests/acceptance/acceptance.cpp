// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fredholm_classifier.hpp"
#include "kfunctional.hpp"
#include "oracles.hpp"
#include "seq_suites.hpp"
#include "sequence_ops.hpp"
#include "worked_examples.hpp"

using namespace interkernel;

namespace {

// Pinned tolerances.
constexpr double kReferenceRelTol = 1e-9;
constexpr double kReferenceSeconds = 1.0;
constexpr double kSlopeTol = 1e-3;
constexpr double kStripTol = 1e-12;
constexpr double kCalderonSlack = 1e-12;
constexpr double kGrowthFactor = 1.5;
constexpr double kInverseTol = 1e-10;
constexpr double kOracleRelTol = 1e-10;
constexpr double kBracketSlack = 1e-10;

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Breakpoint rule for I - H with one kernel element.
Verdict expected_single(double tz, double ti, double theta) {
  if (theta == tz || theta == ti) return Verdict{VerdictKind::NotFredholm};
  if (theta < std::min(tz, ti) || theta > std::max(tz, ti)) return Verdict{VerdictKind::Invertible};
  if (ti < tz) return Verdict{VerdictKind::ClassF1, 1, 0};
  return Verdict{VerdictKind::ClassF2, 0, 1};
}

void reference_identity() {
  const auto start = std::chrono::steady_clock::now();
  const CoupleDescriptor l1{ReferenceL1{}};
  double worst = 0.0;
  for (int j = 1; j <= 9; ++j) {
    const double theta = j / 10.0;
    const auto a = a_theta_element(theta);
    for (int k = -30; k <= 30; ++k) {
      const double t = std::ldexp(1.0, k);
      const double want = std::pow(t, theta);
      worst = std::max(worst, std::abs(k_functional(l1, a, t).value - want) / want);
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, worst <= kReferenceRelTol && secs < kReferenceSeconds,
         "K(t,a_theta) = t^theta: max rel err " + fmt(worst) + ", " + fmt(secs) + " s");
}

void hardy_slopes() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> a(0.05, 0.95), brk(0.1, 0.9);
  const DyadicGrid grid(-80, 80);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    // Draw the weight exponent and the breakpoint, then solve for b.
    const double a0 = a(rng), ai = a(rng), r0 = brk(rng), ri = brk(rng);
    const HardyModel h(2.0, a0, ai, a0 * (1.0 - 1.0 / r0), ai * (1.0 - 1.0 / ri));
    const auto couple = ProductCouple::single(h.couple());
    const auto prof = sample_profile(couple, Element{hardy_kernel_element()}, grid);
    const double s0 = (std::log2(prof.at(-40)) - std::log2(prof.at(-80))) / 40.0;
    const double si = (std::log2(prof.at(80)) - std::log2(prof.at(40))) / 40.0;
    worst = std::max({worst, std::abs(s0 - h.theta_zero()), std::abs(si - h.theta_inf())});
  }
  report(2, worst <= kSlopeTol, "Hardy kernel chord slopes: max deviation " + fmt(worst) + " over 10 draws");
}

void hardy_tables() {
  const HardyModel sets[] = {HardyModel(2, 0.25, 0.5, -0.75, -0.5), HardyModel(2, 0.5, 0.25, -0.5, -0.75),
                             HardyModel(2, 0.4, 0.2, -0.6, -0.3)};
  bool ok = sets[2].theta_zero() == sets[2].theta_inf();
  int rows = 0, mismatches = 0;
  for (const auto& base : sets) {
    std::vector<double> thetas;
    for (int j = 1; j <= 19; ++j) thetas.push_back(0.05 * j);
    thetas.push_back(base.theta_zero());
    thetas.push_back(base.theta_inf());
    std::vector<std::vector<Verdict>> tables;
    for (const double p : {1.0, 2.0}) {
      const HardyModel h(p, base.a0, base.a_inf, base.b0, base.b_inf);
      std::vector<Verdict> v;
      for (const auto& c : hardy_classify_sweep(h, p, thetas)) v.push_back(c.verdict);
      tables.push_back(v);
    }
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      ++rows;
      const auto want = expected_single(base.theta_zero(), base.theta_inf(), thetas[i]);
      const auto& got = tables[0][i];
      if (got.kind != want.kind || got.n != want.n || got.d != want.d || !(tables[1][i] == got)) ++mismatches;
    }
  }
  ok = ok && mismatches == 0;
  report(3, ok, "Hardy tables for the three breakpoint orders, p in {1,2}: " + std::to_string(mismatches) +
                    " mismatches in " + std::to_string(rows) + " rows");
}

void hardy_product() {
  const std::vector<HardyModel> ms{HardyModel(2, 0.5, 0.25, -0.5, -0.75), HardyModel(2, 0.3, 0.6, -0.7, -0.4),
                                   HardyModel(2, 0.7, 0.2, -0.3, -0.8)};
  const auto mid = hardy_product_classify(ms, 0.4, 2.0).verdict;
  bool ok = mid.kind == VerdictKind::Fredholm && mid.n == 2 && mid.d == 1;
  for (const double t : {0.05, 0.1, 0.15, 0.75, 0.8, 0.9, 0.95}) {
    ok = ok && hardy_product_classify(ms, t, 2.0).verdict.kind == VerdictKind::Invertible;
  }
  for (const auto& m : ms) {
    for (const double b : {m.theta_zero(), m.theta_inf()}) {
      ok = ok && hardy_product_classify(ms, b, 2.0).verdict.kind == VerdictKind::NotFredholm;
    }
  }
  report(4, ok, "product of three Hardy couples: theta=0.4 gives " + mid.label());
}

void strip() {
  const StripModel s(M_PI / 2, 1.0, 5.0);
  const auto th = strip_thetas(s);
  bool ok = th.size() == 2 && th[0].first == 1 && th[1].first == 2 && std::abs(th[0].second - 0.25) <= kStripTol &&
            std::abs(th[1].second - 0.75) <= kStripTol;
  int not_fredholm = 0, invertible = 0, other = 0;
  std::vector<double> sweep;
  for (int j = 1; j <= 21; ++j) sweep.push_back(j / 22.0);
  for (const auto& [k, t] : th) sweep.push_back(t);
  for (const double t : sweep) {
    const auto v = strip_classify(s, t).verdict.kind;
    const bool at_break = std::any_of(th.begin(), th.end(), [&](const auto& kt) { return kt.second == t; });
    if (at_break && v == VerdictKind::NotFredholm) {
      ++not_fredholm;
    } else if (!at_break && v == VerdictKind::Invertible) {
      ++invertible;
    } else {
      ++other;
    }
  }
  ok = ok && not_fredholm == 2 && invertible == 21 && other == 0;
  report(5, ok, "strip Laplacian: " + std::to_string(not_fredholm) + " NotFredholm at breakpoints, " +
                    std::to_string(invertible) + " Invertible elsewhere");
}

void sequence_identities() {
  const auto a = suite_s_minus_i_t0(1, 1000);
  const auto b = suite_t0_equals_t1(1, 1000);
  const std::vector<double> thetas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  const auto c = suite_calderon_bound(1, 1000, thetas, {1.0, 2.0, kInf});
  bool constant_ok = true;
  for (const double t : thetas) {
    const double want = 1.0 / (1.0 - std::exp2(-t)) + std::exp2(t - 1.0) / (1.0 - std::exp2(t - 1.0));
    constant_ok = constant_ok && std::abs(calderon_bound(t) - want) <= 1e-14 * want;
  }
  const bool ok = a.passed() && b.passed() && c.passed() && c.max_ratio <= 1.0 + kCalderonSlack && constant_ok &&
                  a.cases == 1000 && b.cases == 1000 && c.cases == 27000;
  report(6, ok, "sequence identities " + std::to_string(a.failures + b.failures) +
                    " failures in 2000 cases; discrete Calderon bound exceeded by at most " +
                    fmt(c.max_ratio - 1.0) + " (relative) over 27000 cases");
}

void growth_crosscheck() {
  const DyadicGrid grid(-80, 80);
  const std::pair<double, double> profiles[] = {{0.5, 0.5}, {0.3, 0.7}, {0.7, 0.3}, {0.15, 0.6}, {0.8, 0.4}};
  int cells = 0, disagreements = 0, slow = 0;
  double min_ratio = kInf;
  for (const auto& [e0, ei] : profiles) {
    const auto prof = KProfile::two_power(grid, e0, ei);
    for (int j = 1; j <= 9; ++j) {
      for (const double q : {1.0, 2.0, kInf}) {
        const ThetaQ tq(j / 10.0, q);
        const auto g0 = truncated_norm_growth(PartialSumOp::T0, prof, tq);
        const auto g1 = truncated_norm_growth(PartialSumOp::T1, prof, tq);
        ++cells;
        if (s_minus_i_invertibility(prof, tq).verdict != invertibility_from_growth(g0, g1)) ++disagreements;
        const bool inside = tq.theta >= std::min(e0, ei) - kTieTolerance && tq.theta <= std::max(e0, ei) + kTieTolerance;
        if (inside && q == 2.0) {
          for (const auto* g : {&g0, &g1}) {
            for (std::size_t i = 1; i < g->log2_norms.size(); ++i) {
              const double r = std::exp2(g->log2_norms[i] - g->log2_norms[i - 1]);
              min_ratio = std::min(min_ratio, r);
              if (!(r >= kGrowthFactor)) ++slow;
            }
          }
        }
      }
    }
  }
  report(7, disagreements == 0 && slow == 0,
         "criterion vs truncated growth: " + std::to_string(disagreements) + " disagreements in " +
             std::to_string(cells) + " cells; smallest growth per doubling inside " + fmt(min_ratio));
}

void hardy_inverse() {
  std::mt19937_64 rng(808);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto f = oracle::random_compact(rng, false);
    for (const double p : {1.0, 2.0}) {
      worst = std::max(worst, hardy_inverse_check(HardyModel(p, 0.5, 0.25, -0.5, -0.75), f, HardySide::X0));
    }
  }
  report(8, worst <= kInverseTol, "(I-K0)(I-H) residual: max " + fmt(worst) + " over 100 inputs, p in {1,2}");
}

void kp_oracle() {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> a(0.2, 1.0), b(-1.0, -0.2);
  std::uniform_int_distribution<int> kk(-30, 30);
  const double ps[] = {1.0, 1.5, 2.0, 3.0};
  double worst = 0.0;
  int bracket_violations = 0, bracket_checks = 0;
  for (int i = 0; i < 20; ++i) {
    const WeightedLp lp{ps[i % 4], PowerWeight(a(rng), a(rng)), PowerWeight(b(rng), b(rng))};
    const auto couple = make_weighted_lp(lp.p, lp.w0, lp.w1);
    const auto f = oracle::random_compact(rng, true);
    for (int j = 0; j < 20; ++j) {
      const double t = std::ldexp(1.0, kk(rng));
      const double lib = k_functional(couple, f, t).value;
      const double ref = oracle::kp(lp, f, t);
      worst = std::max(worst, std::abs(lib - ref) / ref);
      if (lp.p > 1.0) {
        ++bracket_checks;
        const double upper = oracle::split_upper_bound(lp, f, t);
        const double factor = std::pow(2.0, 1.0 - 1.0 / lp.p);
        if (!(lib <= upper * (1.0 + kBracketSlack) && upper <= factor * lib * (1.0 + kBracketSlack))) {
          ++bracket_violations;
        }
      }
    }
  }
  report(9, worst <= kOracleRelTol && bracket_violations == 0,
         "K_p vs pointwise-minimization oracle: max rel err " + fmt(worst) + "; bracketing violated " +
             std::to_string(bracket_violations) + " of " + std::to_string(bracket_checks));
}

void invariance() {
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> a(0.05, 0.95), b(-3.0, -0.05), th(0.02, 0.98), lam(0.05, 20.0);
  std::uniform_int_distribution<int> count(1, 3), dims(0, 3), qpick(0, 2);
  int changed = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<HardyModel> ms;
    const int n = count(rng);
    for (int j = 0; j < n; ++j) ms.push_back(HardyModel(2.0, a(rng), a(rng), b(rng), b(rng)));
    const auto model = hardy_product_operator(ms);
    const double theta = i % 5 == 0 ? (i % 10 == 0 ? ms[0].theta_zero() : ms[0].theta_inf()) : th(rng);
    const ThetaQ tq(theta, std::array{1.0, 2.0, kInf}[qpick(rng)]);
    const auto ref = classify(model, tq).verdict;

    auto scaled = model;
    for (auto& x : scaled.kernel_basis) x = scale(x, (i % 2 ? -1.0 : 1.0) * lam(rng));
    auto weights = model;
    const double c = lam(rng);
    for (auto& comp : weights.couple_x.components) {
      auto& lp = std::get<WeightedLp>(comp.kind);
      lp.w0.scale *= c;
      lp.w1.scale *= c;
    }
    const auto padded = reduce_to_surjective(model, dims(rng), dims(rng));
    ClassifyOptions reversed;
    reversed.split.reverse_complement = true;

    if (!(classify(scaled, tq).verdict == ref)) ++changed;
    if (!(classify(weights, tq).verdict == ref)) ++changed;
    if (!(classify(padded, tq).verdict == ref)) ++changed;
    if (!(classify(model, tq, reversed).verdict == ref)) ++changed;
  }
  report(10, changed == 0, "verdict invariance over 200 cases x 4 transformations: " + std::to_string(changed) +
                               " changed");
}

}  // namespace

int main() {
  reference_identity();
  hardy_slopes();
  hardy_tables();
  hardy_product();
  strip();
  sequence_identities();
  growth_crosscheck();
  hardy_inverse();
  kp_oracle();
  invariance();
  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

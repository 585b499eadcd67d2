#include <doctest.h>

#include <algorithm>
#include <random>

#include "fredholm_classifier.hpp"
#include "worked_examples.hpp"

using namespace interkernel;

namespace {

// Expected verdict for I - H with one kernel element, by the breakpoint rule.
Verdict expected_single(double tz, double ti, double theta) {
  if (theta == tz || theta == ti) return Verdict{VerdictKind::NotFredholm};
  if (theta < std::min(tz, ti) || theta > std::max(tz, ti)) return Verdict{VerdictKind::Invertible};
  if (ti < tz) return Verdict{VerdictKind::ClassF1, 1, 0};
  return Verdict{VerdictKind::ClassF2, 0, 1};
}

bool same_category(const Verdict& got, const Verdict& want) {
  return got.kind == want.kind && got.n == want.n && got.d == want.d;
}

HardyModel random_hardy(std::mt19937_64& rng, double p) {
  std::uniform_real_distribution<double> a(0.05, 0.95), b(-3.0, -0.05);
  return HardyModel(p, a(rng), a(rng), b(rng), b(rng));
}

std::vector<double> sweep_with(double tz, double ti) {
  std::vector<double> out;
  for (int j = 1; j < 50; ++j) out.push_back(j / 50.0);
  out.push_back(tz);
  out.push_back(ti);
  std::sort(out.begin(), out.end());
  return out;
}

OperatorModel scale_weights(OperatorModel m, double c) {
  for (auto& comp : m.couple_x.components) {
    auto& lp = std::get<WeightedLp>(comp.kind);
    lp.w0.scale *= c;
    lp.w1.scale *= c;
  }
  return m;
}

OperatorModel scale_kernel(OperatorModel m, double c) {
  for (auto& x : m.kernel_basis) x = scale(x, c);
  return m;
}

}  // namespace

TEST_CASE("Hardy operator with the default weights") {
  const HardyModel h;
  const auto model = hardy_operator(h);
  CHECK(classify(model, ThetaQ(0.4, 2.0)).verdict.label() == "ClassF1{dim_ker=1}");
  CHECK(classify(model, ThetaQ(0.1, 2.0)).verdict.kind == VerdictKind::Invertible);
  CHECK(classify(model, ThetaQ(0.25, 2.0)).verdict.kind == VerdictKind::NotFredholm);
  CHECK(classify(model, ThetaQ(0.5, 2.0)).verdict.kind == VerdictKind::NotFredholm);
  CHECK(classify(model, ThetaQ(0.7, 2.0)).verdict.kind == VerdictKind::Invertible);
  const auto c = classify(model, ThetaQ(0.4, 2.0));
  CHECK(c.necessity_applicable);
  CHECK(c.split.v01.cols() == 1);
  CHECK(std::all_of(c.conditions.begin(), c.conditions.end(), [](const auto& k) { return k.determined; }));
}

TEST_CASE("swapped tails give codimension one") {
  const HardyModel h(2.0, 0.25, 0.5, -0.75, -0.5);
  REQUIRE(h.theta_zero() == 0.25);
  REQUIRE(h.theta_inf() == 0.5);
  const auto model = hardy_operator(h);
  CHECK(classify(model, ThetaQ(0.4, 2.0)).verdict.label() == "ClassF2{codim=1}");
  CHECK(classify(model, ThetaQ(0.25, 2.0)).verdict.kind == VerdictKind::NotFredholm);
}

TEST_CASE("verdicts partition the theta axis for random weights") {
  std::mt19937_64 rng(2024);
  for (int draw = 0; draw < 50; ++draw) {
    const auto h = random_hardy(rng, 2.0);
    const auto model = hardy_operator(h);
    int changes = 0;
    std::string last;
    for (const double theta : sweep_with(h.theta_zero(), h.theta_inf())) {
      const auto got = classify(model, ThetaQ(theta, 2.0)).verdict;
      const auto want = expected_single(h.theta_zero(), h.theta_inf(), theta);
      INFO("draw " << draw << " theta " << theta << " got " << got.label());
      CHECK(same_category(got, want));
      if (!last.empty() && got.label() != last) ++changes;
      last = got.label();
    }
    CHECK(changes <= 4);
  }
}

TEST_CASE("tables do not depend on p") {
  std::mt19937_64 rng(77);
  for (int draw = 0; draw < 8; ++draw) {
    const auto base = random_hardy(rng, 2.0);
    const auto thetas = sweep_with(base.theta_zero(), base.theta_inf());
    const auto ref = hardy_classify_sweep(base, 2.0, thetas);
    for (const double p : {1.0, 4.0}) {
      const HardyModel h(p, base.a0, base.a_inf, base.b0, base.b_inf);
      const auto other = hardy_classify_sweep(h, p, thetas);
      for (std::size_t i = 0; i < thetas.size(); ++i) CHECK(other[i].verdict == ref[i].verdict);
    }
  }
}

TEST_CASE("products follow the kernel and codimension counts") {
  const std::vector<HardyModel> models{HardyModel(2, 0.5, 0.25, -0.5, -0.75), HardyModel(2, 0.3, 0.6, -0.7, -0.4),
                                       HardyModel(2, 0.7, 0.2, -0.3, -0.8)};
  REQUIRE(models[1].theta_zero() == doctest::Approx(0.3));
  const auto c = hardy_product_classify(models, 0.4, 2.0);
  CHECK(c.verdict.kind == VerdictKind::Fredholm);
  CHECK(c.verdict.n == 2);
  CHECK(c.verdict.d == 1);
  CHECK(c.verdict.index() == 1);
  CHECK(static_cast<int>(c.split.v01_basis.size()) == c.verdict.n);
  CHECK(static_cast<int>(c.split.vtilde_basis.size()) == c.verdict.d);
  CHECK(hardy_product_classify(models, 0.1, 2.0).verdict.kind == VerdictKind::Invertible);
  CHECK(hardy_product_classify(models, 0.9, 2.0).verdict.kind == VerdictKind::Invertible);
  CHECK(hardy_product_classify(models, 0.25, 2.0).verdict.kind == VerdictKind::NotFredholm);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0.02, 0.98);
  for (int draw = 0; draw < 15; ++draw) {
    std::vector<HardyModel> ms;
    for (int i = 0; i < 3; ++i) ms.push_back(random_hardy(rng, 2.0));
    for (int j = 0; j < 6; ++j) {
      const double theta = j == 0 ? ms[draw % 3].theta_inf() : th(rng);
      int k = 0, l = 0;
      bool hit = false;
      bool mixed = false;
      for (const auto& m : ms) {
        const auto e = expected_single(m.theta_zero(), m.theta_inf(), theta);
        hit = hit || e.kind == VerdictKind::NotFredholm;
        k += e.n;
        l += e.d;
        mixed = mixed || e.kind == VerdictKind::Invertible;
      }
      const auto got = hardy_product_classify(ms, theta, 2.0);
      INFO("draw " << draw << " theta " << theta << " got " << got.verdict.label());
      if (hit) {
        CHECK(got.verdict.kind == VerdictKind::NotFredholm);
      } else if (k == 0 && l == 0) {
        CHECK(got.verdict.kind == VerdictKind::Invertible);
      } else {
        CHECK(got.verdict.n == k);
        CHECK(got.verdict.d == l);
        if (got.verdict.kind == VerdictKind::Fredholm) {
          CHECK(static_cast<int>(got.split.v01_basis.size()) == got.verdict.n);
          CHECK(static_cast<int>(got.split.vtilde_basis.size()) == got.verdict.d);
        } else {
          CHECK_FALSE(mixed);
        }
      }
    }
  }
}

TEST_CASE("verdicts are invariant under scaling, padding and complement choice") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lam(0.1, 10.0), th(0.02, 0.98);
  std::uniform_int_distribution<int> dims(0, 3), count(1, 3);
  for (int i = 0; i < 30; ++i) {
    std::vector<HardyModel> ms;
    const int n = count(rng);
    for (int j = 0; j < n; ++j) ms.push_back(random_hardy(rng, 2.0));
    const auto model = hardy_product_operator(ms);
    const double theta = i % 5 == 0 ? ms[0].theta_zero() : th(rng);
    const ThetaQ tq(theta, 2.0);
    const auto ref = classify(model, tq).verdict;
    INFO("case " << i << " " << ref.label());
    CHECK(classify(scale_kernel(model, -lam(rng)), tq).verdict == ref);
    CHECK(classify(scale_weights(model, lam(rng)), tq).verdict == ref);
    CHECK(classify(reduce_to_surjective(model, dims(rng), dims(rng)), tq).verdict == ref);
    ClassifyOptions rev;
    rev.split.reverse_complement = true;
    CHECK(classify(model, tq, rev).verdict == ref);
  }
}

TEST_CASE("without necessity no NotFredholm is emitted") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    const auto h = random_hardy(rng, 2.0);
    auto model = hardy_operator(h);
    for (const double theta : {h.theta_zero(), h.theta_inf(), 0.5}) {
      const auto inf = classify(model, ThetaQ(theta, kInf));
      CHECK_FALSE(inf.necessity_applicable);
      CHECK(inf.verdict.kind != VerdictKind::NotFredholm);
    }
    model.endpoint_status = EndpointStatus::SurjectiveFredholmOnEndpoints;
    for (const double theta : {h.theta_zero(), h.theta_inf()}) {
      const auto c = classify(model, ThetaQ(theta, 2.0));
      CHECK_FALSE(c.necessity_applicable);
      CHECK(c.verdict.kind == VerdictKind::Boundary);
    }
  }
}

TEST_CASE("sampled fallback returns Boundary near a tie") {
  const DyadicGrid grid(-60, 60);
  const auto exact = KProfile::power(grid, 0.5);
  OperatorModel m;
  m.couple_x = ProductCouple::single(CoupleDescriptor{SequenceCouple{KProfile(grid, exact.values)}});
  m.kernel_basis = {Element{1.0}};
  const auto c = classify(m, ThetaQ(0.5, 2.0));
  CHECK(c.verdict.kind == VerdictKind::Boundary);
  CHECK(classify(m, ThetaQ(0.2, 2.0)).verdict.kind == VerdictKind::Invertible);
}

TEST_CASE("omega set") {
  const auto o = omega_set(hardy_operator(HardyModel()));
  CHECK_FALSE(o.empty);
  CHECK(o.lo == doctest::Approx(0.25));
  CHECK(o.hi == doctest::Approx(0.5));
  const auto disjoint = hardy_product_operator({HardyModel(2, 0.2, 0.3, -0.8, -0.7), HardyModel(2, 0.6, 0.7, -0.4, -0.3)});
  CHECK(omega_set(disjoint).empty);
  OperatorModel none;
  none.couple_x = ProductCouple::single(HardyModel().couple());
  CHECK(omega_set(none).empty);
  CHECK(classify(none, ThetaQ(0.3, 2.0)).verdict.kind == VerdictKind::Invertible);
}

TEST_CASE("factorization stages") {
  CHECK_THROWS_AS(factorize(hardy_operator(HardyModel()), ThetaQ(0.4, kInf)), InputError);
  const std::vector<HardyModel> models{HardyModel(2, 0.5, 0.25, -0.5, -0.75), HardyModel(2, 0.3, 0.6, -0.7, -0.4),
                                       HardyModel(2, 0.7, 0.2, -0.3, -0.8)};
  const auto f = factorize(hardy_product_operator(models), ThetaQ(0.4, 2.0));
  CHECK(f.a1.tag == "F1");
  CHECK(f.a1.kernel.cols() == 2);
  CHECK(f.a2.kernel.cols() == 1);
  for (const auto* s : {&f.a1, &f.a2, &f.a3}) {
    INFO(s->tag);
    CHECK(s->condition.holds);
    CHECK(s->numeric_check);
  }
  const auto single = factorize(hardy_operator(HardyModel()), ThetaQ(0.4, 2.0));
  CHECK(single.a1.kernel.cols() == 1);
  CHECK(single.a1.numeric_check);
  CHECK(single.a1.quotient_profiles.size() == 1);
}

TEST_CASE("reduction to surjective operators") {
  const auto model = hardy_operator(HardyModel());
  const auto same = reduce_to_surjective(model, 0, 0);
  CHECK_FALSE(same.reduced_from);
  CHECK(same.endpoint_status == model.endpoint_status);
  const auto r = reduce_to_surjective(model, 2, 3);
  CHECK(r.complement_dim0 == 2);
  CHECK(r.complement_dim1 == 3);
  CHECK(r.endpoint_status == EndpointStatus::SurjectiveFredholmOnEndpoints);
  CHECK(r.effective_status() == EndpointStatus::InvertibleOnEndpoints);
  const DyadicGrid grid(-30, 30);
  CHECK(sample_profile(r.couple_x, r.kernel_basis[0], grid).values ==
        sample_profile(model.couple_x, model.kernel_basis[0], grid).values);
  CHECK(classify(reduce_to_surjective(model, 1, 0), ThetaQ(0.25, 2.0)).verdict.kind == VerdictKind::NotFredholm);
  CHECK_THROWS_AS(reduce_to_surjective(model, -1, 0), InputError);
}

TEST_CASE("model validation") {
  auto model = hardy_operator(HardyModel());
  model.kernel_basis.push_back(scale(model.kernel_basis[0], 2.0));
  CHECK_THROWS_AS(validate(model), InputError);
  auto zero = hardy_operator(HardyModel());
  zero.kernel_basis = {Element{PiecewisePowerFunction()}};
  CHECK_THROWS_AS(validate(zero), InputError);
  auto wrong = hardy_operator(HardyModel());
  wrong.kernel_basis = {Element{1.0}};
  CHECK_THROWS_AS(validate(wrong), InputError);
}

TEST_CASE("verdict labels") {
  CHECK(Verdict{VerdictKind::Fredholm, 2, 1}.label() == "Fredholm{n=2,d=1,index=1}");
  CHECK(Verdict{VerdictKind::Invertible}.label() == "Invertible");
  CHECK(std::string(to_string(VerdictKind::NotFredholm)) == "NotFredholm");
}

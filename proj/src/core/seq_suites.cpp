#include "seq_suites.hpp"

#include <random>
#include <sstream>

namespace interkernel {

namespace {

std::mt19937_64 stream(std::uint64_t seed, int index) {
  std::seed_seq s{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                  static_cast<std::uint32_t>(index)};
  return std::mt19937_64(s);
}

std::string show(const FiniteSeq& u) {
  std::ostringstream out;
  out << "{";
  for (const auto& [k, v] : u.entries()) out << k << ":" << v << " ";
  out << "}";
  return out.str();
}

}  // namespace

FiniteSeq random_integer_sequence(std::uint64_t seed, int index, bool zero_sum) {
  auto rng = stream(seed, index);
  std::uniform_int_distribution<int> start(-40, 30);
  std::uniform_int_distribution<int> length(1, 10);
  std::uniform_int_distribution<int> value(-1000, 1000);
  FiniteSeq u;
  const int lo = start(rng);
  const int n = length(rng);
  double total = 0.0;
  for (int k = lo; k < lo + n; ++k) {
    const double v = value(rng);
    u.set(k, v);
    total += v;
  }
  if (zero_sum) u.set(lo + n, -total);
  return u;
}

SuiteResult suite_s_minus_i_t0(std::uint64_t seed, int count) {
  SuiteResult r;
  r.name = "(S-I)T0 = id";
  for (int i = 0; i < count; ++i) {
    const auto u = random_integer_sequence(seed, i, false);
    ++r.cases;
    if (!(shift_minus_identity(t0_apply(u)) == u)) {
      if (r.failures++ == 0) r.first_failure = show(u);
    }
  }
  return r;
}

SuiteResult suite_t0_equals_t1(std::uint64_t seed, int count) {
  SuiteResult r;
  r.name = "T0 = T1 on zero-sum sequences";
  for (int i = 0; i < count; ++i) {
    const auto u = random_integer_sequence(seed ^ 0x9e3779b97f4a7c15ULL, i, true);
    ++r.cases;
    if (!(t0_apply(u) == t1_apply(u))) {
      if (r.failures++ == 0) r.first_failure = show(u);
    }
  }
  return r;
}

SuiteResult suite_calderon_bound(std::uint64_t seed, int count, const std::vector<double>& thetas,
                                 const std::vector<double>& qs) {
  SuiteResult r;
  r.name = "S_d bound C(theta)";
  // Relative slack for rounding in the two norm evaluations.
  constexpr double kSlack = 1e-12;
  for (int i = 0; i < count; ++i) {
    auto rng = stream(seed + 1, i);
    std::uniform_int_distribution<int> start(-30, 20);
    std::uniform_int_distribution<int> length(1, 12);
    std::normal_distribution<double> value(0.0, 1.0);
    FiniteSeq c;
    const int lo = start(rng);
    const int n = length(rng);
    for (int k = lo; k < lo + n; ++k) c.set(k, value(rng));
    for (const double th : thetas) {
      const double bound = calderon_bound(th);
      for (const double q : qs) {
        const ThetaQ tq(th, q);
        const double ratio = calderon_weighted_norm(c, tq) / weighted_lq_norm(c, tq) / bound;
        ++r.cases;
        r.max_ratio = std::max(r.max_ratio, ratio);
        if (!(ratio <= 1.0 + kSlack)) {
          if (r.failures++ == 0) {
            std::ostringstream msg;
            msg << show(c) << " theta=" << th << " q=" << q << " ratio=" << ratio;
            r.first_failure = msg.str();
          }
        }
      }
    }
  }
  return r;
}

}  // namespace interkernel

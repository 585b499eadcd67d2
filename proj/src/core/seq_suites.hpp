#pragma once

// Seeded property suites over random finite sequences.

#include <cstdint>
#include <string>
#include <vector>

#include "sequence_ops.hpp"

namespace interkernel {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double max_ratio = 0.0;  ///< bound suites: largest observed norm / bound
  std::string first_failure;

  bool passed() const { return failures == 0; }
};

/// Integer-valued entries on a random support inside [-40, 40], so every
/// partial sum is exact.
FiniteSeq random_integer_sequence(std::uint64_t seed, int index, bool zero_sum);

/// (S - I) T0 u = u for `count` random sequences.
SuiteResult suite_s_minus_i_t0(std::uint64_t seed, int count);
/// T0 u = T1 u for `count` random sequences with zero sum.
SuiteResult suite_t0_equals_t1(std::uint64_t seed, int count);
/// ||S_d c|| <= C(theta) ||c|| on l^q(2^{-n theta}) for every theta, q.
SuiteResult suite_calderon_bound(std::uint64_t seed, int count, const std::vector<double>& thetas,
                                 const std::vector<double>& qs);

}  // namespace interkernel

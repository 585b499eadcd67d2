#pragma once

// Dyadic sequence machinery: the spaces l_{theta,q}(x), the shift S, the
// partial-sum operators T0/T1 and the discrete Calderón operator.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dilation_indices.hpp"

namespace interkernel {

/// Finitely supported real sequence; only nonzero entries are stored.
class FiniteSeq {
public:
  FiniteSeq() = default;
  static FiniteSeq unit(int i) { return FiniteSeq().set(i, 1.0); }

  FiniteSeq& set(int i, double v);
  double operator[](int i) const;
  const std::map<int, double>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  int lo() const { return entries_.begin()->first; }
  int hi() const { return entries_.rbegin()->first; }
  double sum() const;

  friend bool operator==(const FiniteSeq&, const FiniteSeq&) = default;

private:
  std::map<int, double> entries_;
};

FiniteSeq operator+(const FiniteSeq& a, const FiniteSeq& b);
FiniteSeq operator*(double c, const FiniteSeq& a);

/// Constant run to one side: entries k < boundary (left) or k > boundary (right).
struct TailMarker {
  int boundary = 0;
  double value = 0.0;
  friend bool operator==(const TailMarker&, const TailMarker&) = default;
};

/// Finite body plus optional constant infinite runs at either end.
struct TailSeq {
  FiniteSeq body;
  std::optional<TailMarker> left;
  std::optional<TailMarker> right;

  double operator[](int k) const;
  bool is_finite() const { return !left && !right; }
  friend bool operator==(const TailSeq&, const TailSeq&) = default;
};

/// (S - I)u with entries eta_{n-1} - eta_n.
FiniteSeq shift_minus_identity(const FiniteSeq& u);
FiniteSeq shift_minus_identity(const TailSeq& u);

/// T0(u)_k = sum_{i>k} eta_i; a left run carries the total when it is nonzero.
TailSeq t0_apply(const FiniteSeq& u);
/// T1(u)_k = -sum_{i<=k} eta_i; a right run carries -total when nonzero.
TailSeq t1_apply(const FiniteSeq& u);

/// S_d(c)(n) = sum_{k<=n} c_k + 2^n sum_{k>n} c_k 2^{-k} for n in [n_lo, n_hi].
std::vector<double> calderon_discrete(const FiniteSeq& c, int n_lo, int n_hi);

/// (sum_n |2^{-n theta} c_n|^q)^{1/q} (sup for q = inf).
double weighted_lq_norm(const FiniteSeq& c, const ThetaQ& tq);
/// Same norm of S_d(c) over all n, with the geometric tails summed exactly.
double calderon_weighted_norm(const FiniteSeq& c, const ThetaQ& tq);
/// Young bound for S_d on l^q(2^{-n theta}).
double calderon_bound(double theta);

/// l_{theta,q}(x): weights K(2^i, x) / 2^{theta i}.
struct SeqSpaceWeight {
  KProfile profile;
  ThetaQ tq;
  double log2_weight(int i) const { return profile.log2_at(i) - tq.theta * i; }
  double weight(int i) const { return std::exp2(log2_weight(i)); }
};

struct SeqNorm {
  double value = 0.0;
  bool undetermined = false;  ///< an infinite run met a side without tail
};

SeqNorm seq_norm(const FiniteSeq& u, const SeqSpaceWeight& w);
SeqNorm seq_norm(const TailSeq& u, const SeqSpaceWeight& w);

enum class Invertibility { InvertibleViaT0, InvertibleViaT1, NotInvertible, Undetermined };
const char* to_string(Invertibility v);

struct InvertibilityResult {
  Invertibility verdict = Invertibility::Undetermined;
  bool boundary = false;
  IndexSet indices;
};

/// S - I is invertible on l_{theta,q}(x) iff theta lies outside [alpha(x), beta(x)].
InvertibilityResult s_minus_i_invertibility(const KProfile& profile, const ThetaQ& tq, double tol = 1e-6);

enum class PartialSumOp { T0, T1 };
enum class Growth { Bounded, Diverging, Inconclusive };
const char* to_string(Growth g);

struct GrowthReport {
  PartialSumOp op = PartialSumOp::T0;
  std::vector<int> windows;        ///< N: supports in [-N, N-1]
  std::vector<double> log2_norms;  ///< log2 of the truncated operator norm
  std::vector<bool> lower_bound;   ///< q=2 norm replaced by its largest entry
  Growth verdict = Growth::Inconclusive;
  double last_ratio = 0.0;

  std::string csv() const;
};

/// Truncated operator norms for N = 1, 2, 4, ..., max_window.
GrowthReport truncated_norm_growth(PartialSumOp op, const KProfile& profile, const ThetaQ& tq,
                                   int max_window = 1 << 14);

/// Invertibility verdict implied by the two growth reports.
Invertibility invertibility_from_growth(const GrowthReport& t0, const GrowthReport& t1);

}  // namespace interkernel

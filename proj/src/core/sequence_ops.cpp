#include "sequence_ops.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "numerics.hpp"

namespace interkernel {

namespace {

using numerics::kNegInf;

double log2_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log2(1.0 + std::exp2(b - a));
}

// log2 of sum_{j>=0} r^j * first for r = 2^{-decay}; +inf when decay <= 0.
double log2_geometric(double log2_first, double decay) {
  if (!(decay > 0.0)) return kInf;
  return log2_first - std::log2(-std::expm1(-decay * std::log(2.0)));
}

}  // namespace

FiniteSeq& FiniteSeq::set(int i, double v) {
  if (v == 0.0) {
    entries_.erase(i);
  } else {
    entries_[i] = v;
  }
  return *this;
}

double FiniteSeq::operator[](int i) const {
  const auto it = entries_.find(i);
  return it == entries_.end() ? 0.0 : it->second;
}

double FiniteSeq::sum() const {
  double s = 0.0;
  for (const auto& [i, v] : entries_) s += v;
  return s;
}

FiniteSeq operator+(const FiniteSeq& a, const FiniteSeq& b) {
  FiniteSeq out = a;
  for (const auto& [i, v] : b.entries()) out.set(i, out[i] + v);
  return out;
}

FiniteSeq operator*(double c, const FiniteSeq& a) {
  FiniteSeq out;
  for (const auto& [i, v] : a.entries()) out.set(i, c * v);
  return out;
}

double TailSeq::operator[](int k) const {
  if (left && k < left->boundary) return left->value;
  if (right && k > right->boundary) return right->value;
  return body[k];
}

FiniteSeq shift_minus_identity(const FiniteSeq& u) {
  TailSeq t;
  t.body = u;
  return shift_minus_identity(t);
}

FiniteSeq shift_minus_identity(const TailSeq& u) {
  FiniteSeq out;
  if (u.is_finite() && u.body.empty()) return out;
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  if (u.left) lo = hi = u.left->boundary;
  if (u.right) {
    lo = std::min(lo, u.right->boundary + 1);
    hi = std::max(hi, u.right->boundary + 1);
  }
  if (!u.body.empty()) {
    lo = std::min(lo, u.body.lo());
    hi = std::max(hi, u.body.hi() + 1);
  }
  for (int n = lo; n <= hi; ++n) out.set(n, u[n - 1] - u[n]);
  return out;
}

TailSeq t0_apply(const FiniteSeq& u) {
  TailSeq out;
  if (u.empty()) return out;
  // Suffix sums from the right end keep integer inputs exact.
  double running = 0.0;
  for (int k = u.hi() - 1; k >= u.lo(); --k) {
    running += u[k + 1];
    out.body.set(k, running);
  }
  const double total = running + u[u.lo()];
  if (total != 0.0) out.left = TailMarker{u.lo(), total};
  return out;
}

TailSeq t1_apply(const FiniteSeq& u) {
  TailSeq out;
  if (u.empty()) return out;
  double running = 0.0;
  for (int k = u.lo(); k < u.hi(); ++k) {
    running += u[k];
    out.body.set(k, -running);
  }
  const double total = running + u[u.hi()];
  if (total != 0.0) out.right = TailMarker{u.hi() - 1, -total};
  return out;
}

std::vector<double> calderon_discrete(const FiniteSeq& c, int n_lo, int n_hi) {
  std::vector<double> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    double v = 0.0;
    for (const auto& [k, ck] : c.entries()) v += k <= n ? ck : ck * std::ldexp(1.0, n - k);
    out.push_back(v);
  }
  return out;
}

double weighted_lq_norm(const FiniteSeq& c, const ThetaQ& tq) {
  double acc = 0.0;
  for (const auto& [n, v] : c.entries()) {
    const double term = std::abs(v) * std::exp2(-n * tq.theta);
    acc = tq.q_infinite() ? std::max(acc, term) : acc + std::pow(term, tq.q);
  }
  return tq.q_infinite() ? acc : std::pow(acc, 1.0 / tq.q);
}

double calderon_weighted_norm(const FiniteSeq& c, const ThetaQ& tq) {
  if (c.empty()) return 0.0;
  const double theta = tq.theta;
  const int lo = c.lo();
  const int hi = c.hi();
  const auto body = calderon_discrete(c, lo, hi);
  // Below the support S_d c(n) = A 2^n, above it the constant B.
  double a = 0.0;
  for (const auto& [k, ck] : c.entries()) a += ck * std::exp2(-k);
  const double b = c.sum();
  const double left_first = std::abs(a) * std::exp2((lo - 1) * (1.0 - theta));
  const double right_first = std::abs(b) * std::exp2(-(hi + 1) * theta);
  if (tq.q_infinite()) {
    double m = std::max(left_first, right_first);
    for (int n = lo; n <= hi; ++n) m = std::max(m, std::abs(body[n - lo]) * std::exp2(-n * theta));
    return m;
  }
  const double q = tq.q;
  double acc = 0.0;
  for (int n = lo; n <= hi; ++n) acc += std::pow(std::abs(body[n - lo]) * std::exp2(-n * theta), q);
  acc += std::pow(left_first, q) / -std::expm1(-q * (1.0 - theta) * std::log(2.0));
  acc += std::pow(right_first, q) / -std::expm1(-q * theta * std::log(2.0));
  return std::pow(acc, 1.0 / q);
}

double calderon_bound(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw InputError("theta must lie in (0,1)");
  return 1.0 / (1.0 - std::exp2(-theta)) + std::exp2(theta - 1.0) / (1.0 - std::exp2(theta - 1.0));
}

SeqNorm seq_norm(const FiniteSeq& u, const SeqSpaceWeight& w) {
  TailSeq t;
  t.body = u;
  return seq_norm(t, w);
}

SeqNorm seq_norm(const TailSeq& u, const SeqSpaceWeight& w) {
  const bool q_inf = w.tq.q_infinite();
  const double q = q_inf ? 1.0 : w.tq.q;
  const double theta = w.tq.theta;
  const auto& prof = w.profile;
  double acc = kNegInf;  // log2 of the sum of |.|^q (or of the sup)
  auto add = [&](double log2_term) { acc = q_inf ? std::max(acc, log2_term) : log2_add(acc, log2_term); };
  SeqNorm out;

  for (const auto& [i, v] : u.body.entries()) {
    if (u.left && i < u.left->boundary) continue;
    if (u.right && i > u.right->boundary) continue;
    add(q * (std::log2(std::abs(v)) + w.log2_weight(i)));
  }

  // An infinite run: explicit terms on the grid, then a geometric tail.
  auto run = [&](const TailMarker& m, bool left_side) {
    if (m.value == 0.0) return true;
    const double lv = std::log2(std::abs(m.value));
    const auto tail = left_side ? prof.tail0 : prof.tail_inf;
    if (!tail) return false;
    const int step = left_side ? -1 : 1;
    int k = left_side ? m.boundary - 1 : m.boundary + 1;
    while (prof.grid.contains(k)) {
      add(q * (lv + w.log2_weight(k)));
      k += step;
    }
    const double slope = left_side ? *tail - theta : theta - *tail;  // decay per step outward
    if (std::abs(slope) <= kTieTolerance) {
      if (!q_inf) acc = kInf;
      else add(lv + w.log2_weight(k));
      return true;
    }
    if (slope < 0.0) {
      acc = kInf;
      return true;
    }
    const double first = q * (lv + w.log2_weight(k));
    if (q_inf) {
      add(first);
    } else {
      add(log2_geometric(first, q * slope));
    }
    return true;
  };
  if (u.left && !run(*u.left, true)) out.undetermined = true;
  if (acc != kInf && u.right && !run(*u.right, false)) out.undetermined = true;
  if (out.undetermined) {
    out.value = kInf;
    return out;
  }
  if (acc == kNegInf) return out;
  out.value = acc == kInf ? kInf : std::exp2(acc / q);
  return out;
}

const char* to_string(Invertibility v) {
  switch (v) {
    case Invertibility::InvertibleViaT0: return "InvertibleViaT0";
    case Invertibility::InvertibleViaT1: return "InvertibleViaT1";
    case Invertibility::NotInvertible: return "NotInvertible";
    case Invertibility::Undetermined: return "Undetermined";
  }
  return "unknown";
}

const char* to_string(Growth g) {
  switch (g) {
    case Growth::Bounded: return "bounded";
    case Growth::Diverging: return "diverging";
    case Growth::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

InvertibilityResult s_minus_i_invertibility(const KProfile& profile, const ThetaQ& tq, double tol) {
  InvertibilityResult out;
  out.indices = indices_of_profile(profile);
  const auto& a = out.indices.alpha;
  const auto& b = out.indices.beta;
  if (!a.determined || !b.determined) {
    out.boundary = true;
    return out;
  }
  const double theta = tq.theta;
  out.boundary = std::abs(theta - a.value) <= tol || std::abs(theta - b.value) <= tol;
  if (theta < a.value - tol) {
    out.verdict = Invertibility::InvertibleViaT0;
  } else if (theta > b.value + tol) {
    out.verdict = Invertibility::InvertibleViaT1;
  } else {
    out.verdict = Invertibility::NotInvertible;
  }
  return out;
}

std::string GrowthReport::csv() const {
  std::string out = "N,log2_norm,norm,lower_bound\n";
  for (std::size_t i = 0; i < windows.size(); ++i) {
    out += std::to_string(windows[i]) + "," + format_double(log2_norms[i]) + "," +
           format_double(std::exp2(log2_norms[i])) + "," + (lower_bound[i] ? "1" : "0") + "\n";
  }
  return out;
}

namespace {

constexpr double kPowerIterationCap = 300.0;  // log2 of the largest entry handled densely

// Matrix-free products with the truncated partial-sum matrix on normalized
// coordinates x_i = eta_i w_i; d[k] = L[k+1] - L[k] for log2 weights L.
struct Truncation {
  PartialSumOp op;
  std::vector<double> d;
  std::size_t n = 0;

  // T0: (Mx)_k = sum_{i>k} 2^{L_k - L_i} x_i. T1: (Mx)_k = -sum_{i<=k} 2^{L_k - L_i} x_i.
  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    if (op == PartialSumOp::T0) {
      double s = 0.0;
      for (std::size_t k = n - 1; k-- > 0;) {
        s = std::exp2(-d[k]) * (x[k + 1] + s);
        y[k] = s;
      }
    } else {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s = x[k] + (k > 0 ? std::exp2(d[k - 1]) * s : 0.0);
        y[k] = -s;
      }
    }
  }
  void apply_transpose(const std::vector<double>& y, std::vector<double>& x) const {
    x.assign(n, 0.0);
    if (op == PartialSumOp::T0) {
      double s = 0.0;
      for (std::size_t i = 1; i < n; ++i) {
        s = std::exp2(-d[i - 1]) * (y[i - 1] + s);
        x[i] = s;
      }
    } else {
      double s = 0.0;
      for (std::size_t i = n; i-- > 0;) {
        s = y[i] + (i + 1 < n ? std::exp2(d[i]) * s : 0.0);
        x[i] = -s;
      }
    }
  }
};

// Largest log2 entry: T0 uses pairs k < i (sum of -d over k..i-1), T1 pairs i <= k.
double log2_max_entry(const Truncation& t) {
  double best = t.op == PartialSumOp::T0 ? kNegInf : 0.0;
  double run = kNegInf;
  for (std::size_t j = 0; j + 1 < t.n; ++j) {
    const double step = t.op == PartialSumOp::T0 ? -t.d[j] : t.d[j];
    run = std::max(run, 0.0) + step;
    best = std::max(best, run);
  }
  return best;
}

// Exact q=1 (max column sum) and q=inf (max row sum) norms in log2.
double log2_norm_exact(const Truncation& t, bool columns) {
  const std::size_t n = t.n;
  double best = kNegInf;
  double acc = kNegInf;
  const bool t0 = t.op == PartialSumOp::T0;
  // Column sums of T0 and row sums of T1 run left to right, the others right to left.
  const bool forward = t0 == columns;
  if (forward) {
    for (std::size_t j = 0; j < n; ++j) {
      if (t0) {
        acc = j == 0 ? kNegInf : log2_add(acc, 0.0) - t.d[j - 1];
      } else {
        acc = j == 0 ? 0.0 : log2_add(acc + t.d[j - 1], 0.0);
      }
      best = std::max(best, acc);
    }
  } else {
    for (std::size_t j = n; j-- > 0;) {
      if (t0) {
        acc = j + 1 == n ? kNegInf : log2_add(acc, 0.0) - t.d[j];
      } else {
        acc = j + 1 == n ? 0.0 : log2_add(acc + t.d[j], 0.0);
      }
      best = std::max(best, acc);
    }
  }
  return best;
}

double log2_norm_power(const Truncation& t) {
  const std::size_t n = t.n;
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y;
  std::vector<double> z;
  double sigma = 0.0;
  for (int it = 0; it < 50; ++it) {
    t.apply(x, y);
    t.apply_transpose(y, z);
    // Scaled so that squaring entries near 2^600 stays finite.
    double big = 0.0;
    for (double v : z) big = std::max(big, std::abs(v));
    if (!(big > 0.0)) return kNegInf;
    double norm = 0.0;
    for (double v : z) norm += (v / big) * (v / big);
    norm = big * std::sqrt(norm);
    const double next = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / norm;
    const bool done = std::abs(next - sigma) <= 1e-10 * next;
    sigma = next;
    if (done) break;
  }
  return std::log2(sigma);
}

}  // namespace

GrowthReport truncated_norm_growth(PartialSumOp op, const KProfile& profile, const ThetaQ& tq,
                                   int max_window) {
  if (max_window < 1) throw InputError("max_window must be >= 1");
  GrowthReport report;
  report.op = op;
  SeqSpaceWeight w{profile, tq};
  for (int big_n = 1; big_n <= max_window; big_n *= 2) {
    Truncation t;
    t.op = op;
    t.n = static_cast<std::size_t>(2 * big_n);
    std::vector<double> logw(t.n);
    try {
      for (std::size_t j = 0; j < t.n; ++j) logw[j] = w.log2_weight(-big_n + static_cast<int>(j));
    } catch (const std::domain_error&) {
      break;  // no tail beyond the grid
    }
    t.d.resize(t.n - 1);
    for (std::size_t j = 0; j + 1 < t.n; ++j) t.d[j] = logw[j + 1] - logw[j];

    double value;
    bool lower = false;
    if (tq.q == 1.0) {
      value = log2_norm_exact(t, true);
    } else if (tq.q_infinite()) {
      value = log2_norm_exact(t, false);
    } else {
      const double top = log2_max_entry(t);
      if (top > kPowerIterationCap) {
        value = top;
        lower = true;
      } else {
        value = log2_norm_power(t);
      }
    }
    report.windows.push_back(big_n);
    report.log2_norms.push_back(value);
    report.lower_bound.push_back(lower);
  }
  const std::size_t m = report.log2_norms.size();
  if (m >= 2) {
    const double diff = report.log2_norms[m - 1] - report.log2_norms[m - 2];
    report.last_ratio = std::exp2(std::min(diff, 1000.0));
    if (report.last_ratio < 1.01) {
      report.verdict = Growth::Bounded;
    } else if (report.last_ratio >= 1.5) {
      report.verdict = Growth::Diverging;
    }
  }
  return report;
}

Invertibility invertibility_from_growth(const GrowthReport& t0, const GrowthReport& t1) {
  if (t0.verdict == Growth::Bounded) return Invertibility::InvertibleViaT0;
  if (t1.verdict == Growth::Bounded) return Invertibility::InvertibleViaT1;
  if (t0.verdict == Growth::Diverging && t1.verdict == Growth::Diverging) return Invertibility::NotInvertible;
  return Invertibility::Undetermined;
}

}  // namespace interkernel

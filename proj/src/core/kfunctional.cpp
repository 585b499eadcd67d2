#include "kfunctional.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/minima.hpp>

#include "numerics.hpp"

namespace interkernel {

namespace {

using numerics::kNegInf;
using numerics::log_add;

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

/// log(exp(a) - exp(b)) for a >= b.
double log_sub(double a, double b) {
  if (b == kNegInf) return a;
  if (b >= a) return kNegInf;
  return a + std::log(-std::expm1(b - a));
}

// log \int r^{lam-1} (1+r)^{-(lam+mu)} dr over v = log r in (v1, v2), by quadrature.
double log_beta_quadrature(double lam, double mu, double v1, double v2) {
  const double n = lam + mu;
  auto log_f = [=](double v) { return lam * v - n * softplus(v); };
  double ref;
  if (lam > 0.0 && mu > 0.0) {
    ref = std::clamp(std::log(lam / mu), v1, v2);
  } else if (std::isfinite(v1) && std::isfinite(v2)) {
    ref = log_f(v1) > log_f(v2) ? v1 : v2;
  } else {
    ref = std::isfinite(v1) ? v1 : (std::isfinite(v2) ? v2 : 0.0);
  }
  return numerics::log_integrate_exp(log_f, v1, v2, ref);
}

// log \int_0^R r^{lam-1} (1+r)^{-(lam+mu)} dr with v = log R; needs lam > 0.
double log_lower_beta(double lam, double mu, double v) {
  const double n = lam + mu;
  constexpr double kSeriesCut = -35.0;
  if (v <= kSeriesCut) {
    // (1+r)^{-n} = 1 - n r + O(r^2) on (0, R).
    return lam * v - std::log(lam) + std::log1p(-n * lam * std::exp(v) / (lam + 1.0));
  }
  if (v <= 0.0) {
    if (mu > 0.0) {
      try {
        const double x = 1.0 / (1.0 + std::exp(-v));
        const double b = boost::math::beta(lam, mu, x);
        if (b > 0.0 && std::isfinite(b)) return std::log(b);
      } catch (const std::exception&) {
      }
    }
    return log_add(log_lower_beta(lam, mu, kSeriesCut), log_beta_quadrature(lam, mu, kSeriesCut, v));
  }
  if (mu > 0.0) {
    const double log_full = std::lgamma(lam) + std::lgamma(mu) - std::lgamma(n);
    const double upper = log_lower_beta(mu, lam, -v);
    const double diff = log_sub(log_full, upper);
    if (std::isfinite(diff) && upper < log_full - 1e-3) return diff;
  }
  return log_add(log_lower_beta(lam, mu, 0.0), log_beta_quadrature(lam, mu, 0.0, v));
}

double log_beta_range(double lam, double mu, double v1, double v2) {
  if (v1 == kNegInf && !(lam > 0.0)) return kInf;
  if (v2 == kInf && !(mu > 0.0)) return kInf;
  if (v1 == kNegInf && v2 == kInf) return std::lgamma(lam) + std::lgamma(mu) - std::lgamma(lam + mu);
  if (v1 == kNegInf) return log_lower_beta(lam, mu, v2);
  if (v2 == kInf) return log_lower_beta(mu, lam, -v1);
  return log_beta_quadrature(lam, mu, v1, v2);
}

struct PieceWeights {
  double a = 0.0;  // X0 weight exponent
  double b = 0.0;  // X1 weight exponent
  double log_s0 = 0.0;
  double log_s1 = 0.0;
};

PieceWeights weights_on(const WeightedLp& lp, const Segment& seg) {
  return PieceWeights{lp.w0.exponent_on(seg), lp.w1.exponent_on(seg), std::log(lp.w0.scale),
                      std::log(lp.w1.scale)};
}

bool segment_in_sum(const Segment& seg, const PieceWeights& w) {
  const double e_min = seg.terms.front().exponent;
  const double e_max = seg.terms.back().exponent;
  return monomial_in_sum(e_min, w.a, w.b, seg.touches_zero(), false) &&
         monomial_in_sum(e_max, w.a, w.b, false, seg.touches_inf());
}

double log_lo(const Segment& seg) { return seg.touches_zero() ? kNegInf : std::log(seg.lo); }
double log_hi(const Segment& seg) { return seg.touches_inf() ? kInf : std::log(seg.hi); }

// Quadrature of exp(log_f) over (u1, u2), split where the weight crossover sits.
double log_integrate_split(const std::function<double(double)>& log_f, double u1, double u2,
                           double u_cross) {
  if (std::isfinite(u_cross) && u_cross > u1 && u_cross < u2) {
    return log_add(numerics::log_integrate_exp(log_f, u1, u_cross, u_cross),
                   numerics::log_integrate_exp(log_f, u_cross, u2, u_cross));
  }
  double ref = std::clamp(std::isfinite(u_cross) ? u_cross : 0.0, u1, u2);
  if (!std::isfinite(ref)) ref = std::isfinite(u1) ? u1 : u2;
  return numerics::log_integrate_exp(log_f, u1, u2, ref);
}

// log of \int_seg |f|^p (w0^{-p'} + (t w1)^{-p'})^{1-p} ds/s, p > 1.
double log_kp_segment(const Segment& seg, const PieceWeights& w, double p, double log_t) {
  const double pp = p / (p - 1.0);
  const double ell = log_t + w.log_s1 - w.log_s0;  // log(t s1/s0)
  const double kappa = pp * (w.a - w.b);
  const double big_l = -pp * ell;
  const double base = p * w.log_s0;

  if (seg.terms.size() == 1) {
    const auto& term = seg.terms.front();
    const double c_part = p * std::log(std::abs(term.coeff)) + base;
    if (kappa == 0.0) {
      return c_part - (p - 1.0) * softplus(big_l) +
             numerics::log_power_integral(p * (term.exponent + w.a), seg.lo, seg.hi);
    }
    const double lam = p * (term.exponent + w.a) / kappa;
    const double mu = p - 1.0 - lam;
    double v1 = big_l + kappa * log_lo(seg);
    double v2 = big_l + kappa * log_hi(seg);
    if (seg.touches_zero()) v1 = kappa > 0.0 ? kNegInf : kInf;
    if (seg.touches_inf()) v2 = kappa > 0.0 ? kInf : kNegInf;
    if (v1 > v2) std::swap(v1, v2);
    return c_part - lam * big_l - std::log(std::abs(kappa)) + log_beta_range(lam, mu, v1, v2);
  }

  auto log_f = [&](double u) {
    const double v = std::abs(seg(std::exp(u)));
    if (v == 0.0) return kNegInf;
    return p * (std::log(v) + w.a * u) + base - (p - 1.0) * softplus(big_l + kappa * u);
  };
  const double u_cross = kappa != 0.0 ? -big_l / kappa : kNegInf;
  return log_integrate_split(log_f, log_lo(seg), log_hi(seg), u_cross);
}

// log of \int_seg |f| min(w0, t w1) ds/s (exact K for p = 1).
double log_k1_segment(const Segment& seg, const PieceWeights& w, double log_t) {
  const double ell = log_t + w.log_s1 - w.log_s0;
  if (w.a == w.b) {
    const double log_sigma = std::min(w.log_s0, log_t + w.log_s1);
    double total = kNegInf;
    if (seg.terms.size() == 1) {
      const auto& term = seg.terms.front();
      return std::log(std::abs(term.coeff)) + log_sigma +
             numerics::log_power_integral(term.exponent + w.a, seg.lo, seg.hi);
    }
    auto log_f = [&](double u) {
      const double v = std::abs(seg(std::exp(u)));
      return v == 0.0 ? kNegInf : std::log(v) + w.a * u + log_sigma;
    };
    total = log_integrate_split(log_f, log_lo(seg), log_hi(seg), kNegInf);
    return total;
  }
  const double u_cross = ell / (w.a - w.b);
  const double s_cross = std::exp(u_cross);
  // Below the crossover the smaller weight is the one with the larger exponent.
  const bool x0_below = w.a > w.b;
  auto piece_log = [&](double lo, double hi, bool use_x0) {
    const double e_w = use_x0 ? w.a : w.b;
    const double log_sigma = use_x0 ? w.log_s0 : log_t + w.log_s1;
    if (seg.terms.size() == 1) {
      const auto& term = seg.terms.front();
      return std::log(std::abs(term.coeff)) + log_sigma +
             numerics::log_power_integral(term.exponent + e_w, lo, hi);
    }
    auto log_f = [&](double u) {
      const double v = std::abs(seg(std::exp(u)));
      return v == 0.0 ? kNegInf : std::log(v) + e_w * u + log_sigma;
    };
    const double u1 = lo <= 0.0 ? kNegInf : std::log(lo);
    const double u2 = std::isinf(hi) ? kInf : std::log(hi);
    return log_integrate_split(log_f, u1, u2, kNegInf);
  };
  if (!(s_cross > seg.lo)) return piece_log(seg.lo, seg.hi, !x0_below);
  if (!(s_cross < seg.hi)) return piece_log(seg.lo, seg.hi, x0_below);
  return log_add(piece_log(seg.lo, s_cross, x0_below), piece_log(s_cross, seg.hi, !x0_below));
}

std::string segment_label(const Segment& seg) {
  std::ostringstream out;
  out << "(" << seg.lo << ", " << (seg.touches_inf() ? std::string("inf") : std::to_string(seg.hi)) << "]";
  return out.str();
}

// log K(t, value) in one component; +inf outside X0 + X1.
double log_k_component(const CoupleDescriptor& couple, const ComponentValue& value, double t,
                       std::string* diagnostic) {
  if (const auto* lambda = std::get_if<double>(&value)) {
    if (*lambda == 0.0) return kNegInf;
    const auto& profile = std::get<SequenceCouple>(couple.kind).profile;
    return std::log(std::abs(*lambda)) + std::log(profile.value(t));
  }
  const auto& f = std::get<PiecewisePowerFunction>(value);
  if (f.is_zero()) return kNegInf;
  const WeightedLp lp = couple.weighted();
  auto cuts = f.sign_changes();
  cuts.push_back(1.0);
  const auto g = f.refined(cuts);
  const double log_t = std::log(t);
  double total = kNegInf;
  for (const auto& seg : g.segments()) {
    const auto w = weights_on(lp, seg);
    if (!segment_in_sum(seg, w)) {
      if (diagnostic) *diagnostic = "element not in X0+X1: divergent on segment " + segment_label(seg);
      return kInf;
    }
    const double piece = lp.p == 1.0 ? log_k1_segment(seg, w, log_t) : log_kp_segment(seg, w, lp.p, log_t);
    if (piece == kInf) {
      if (diagnostic) *diagnostic = "element not in X0+X1: divergent on segment " + segment_label(seg);
      return kInf;
    }
    total = log_add(total, piece);
  }
  return lp.p == 1.0 ? total : total / lp.p;
}

double log_k_product(const ProductCouple& couple, const Element& x, double t, std::string* diagnostic) {
  if (!(t > 0.0) || std::isinf(t)) throw InputError("K(t,x) requires 0 < t < inf");
  check_compatible(couple, x);
  double total = kNegInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lk = log_k_component(couple.components[i], x[i], t, diagnostic);
    if (lk == kInf) return kInf;
    if (lk == kNegInf) continue;
    total = log_add(total, couple.p * lk);
  }
  return total == kNegInf ? kNegInf : total / couple.p;
}

}  // namespace

KEvaluation k_functional(const CoupleDescriptor& couple, const PiecewisePowerFunction& f, double t) {
  if (couple.is_sequence()) throw InputError("sequence couples take scalar elements");
  return k_functional(ProductCouple::single(couple), Element{ComponentValue{f}}, t);
}

KEvaluation k_functional(const ProductCouple& couple, const Element& x, double t) {
  KEvaluation out;
  const double lk = log_k_product(couple, x, t, &out.diagnostic);
  out.value = lk == kInf ? kInf : std::exp(lk);
  return out;
}

double equivalence_factor(const ProductCouple& couple) {
  double factor = 1.0;
  for (const auto& c : couple.components) {
    if (const auto* seq = std::get_if<SequenceCouple>(&c.kind)) {
      factor = std::max(factor, seq->profile.equivalence_factor);
    } else {
      factor = std::max(factor, std::pow(2.0, 1.0 - 1.0 / c.p()));
    }
  }
  return factor;
}

double endpoint_norm(const ProductCouple& couple, const Element& x, Endpoint side) {
  check_compatible(couple, x);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (couple.components[i].is_sequence()) {
      throw InputError("endpoint norms are not available for sequence couples");
    }
    const auto lp = couple.components[i].weighted();
    const auto& f = std::get<PiecewisePowerFunction>(x[i]);
    const double n = eval_lp_norm(f, lp.p, side == Endpoint::X0 ? lp.w0 : lp.w1);
    if (std::isinf(n)) return kInf;
    total += std::pow(n, couple.p);
  }
  return std::pow(total, 1.0 / couple.p);
}

double j_functional(const ProductCouple& couple, const Element& x, double t) {
  if (!(t > 0.0)) throw InputError("J(t,x) requires t > 0");
  const double n0 = endpoint_norm(couple, x, Endpoint::X0);
  const double n1 = endpoint_norm(couple, x, Endpoint::X1);
  if (std::isinf(n0) || std::isinf(n1)) {
    throw NotInIntersectionError(std::string("element is not in X0 ∩ X1 (") +
                                 (std::isinf(n0) ? "X0" : "X1") + " norm diverges)");
  }
  return std::max(n0, t * n1);
}

bool monomial_in_sum(double e, double a, double b, bool touches_zero, bool touches_inf) {
  if (touches_zero && !(e + std::max(a, b) > 0.0)) return false;
  if (touches_inf && !(e + std::min(a, b) < 0.0)) return false;
  return true;
}

TailExponents monomial_tails(double e, double a, double b, bool touches_zero, bool touches_inf) {
  TailExponents out{1.0, 0.0};
  if (a == b) return out;
  const double rho = (e + a) / (a - b);
  const bool zero_active = a > b ? touches_zero : touches_inf;
  const bool inf_active = a > b ? touches_inf : touches_zero;
  if (zero_active) out.zero = std::min(1.0, rho);
  if (inf_active) out.inf = std::max(0.0, rho);
  return out;
}

TailExponents analytic_tails(const ProductCouple& couple, const Element& x) {
  check_compatible(couple, x);
  std::optional<double> zero;
  std::optional<double> inf;
  bool zero_known = true;
  bool inf_known = true;
  auto merge = [&](const TailExponents& t) {
    if (t.zero) {
      zero = zero ? std::min(*zero, *t.zero) : *t.zero;
    } else {
      zero_known = false;
    }
    if (t.inf) {
      inf = inf ? std::max(*inf, *t.inf) : *t.inf;
    } else {
      inf_known = false;
    }
  };
  const double one[] = {1.0};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (const auto* lambda = std::get_if<double>(&x[i])) {
      if (*lambda == 0.0) continue;
      const auto& prof = std::get<SequenceCouple>(couple.components[i].kind).profile;
      merge(TailExponents{prof.tail0, prof.tail_inf});
      continue;
    }
    const auto lp = couple.components[i].weighted();
    const auto g = std::get<PiecewisePowerFunction>(x[i]).refined(one);
    for (const auto& seg : g.segments()) {
      const double a = lp.w0.exponent_on(seg);
      const double b = lp.w1.exponent_on(seg);
      for (const auto& term : seg.terms) {
        merge(monomial_tails(term.exponent, a, b, seg.touches_zero(), seg.touches_inf()));
      }
    }
  }
  TailExponents out;
  if (zero_known) out.zero = zero;
  if (inf_known) out.inf = inf;
  return out;
}

KProfile sample_profile(const ProductCouple& couple, const Element& x, const DyadicGrid& grid) {
  if (is_zero(x)) throw InputError("the zero element has no K-profile");
  std::vector<double> values;
  values.reserve(grid.size());
  for (int k = grid.k_min; k <= grid.k_max; ++k) {
    const auto kv = k_functional(couple, x, grid.t(k));
    if (std::isinf(kv.value)) throw InputError(kv.diagnostic);
    values.push_back(kv.value);
  }
  const auto tails = analytic_tails(couple, x);
  return KProfile(grid, std::move(values), tails.zero, tails.inf, equivalence_factor(couple));
}

ThetaQNorm theta_q_norm(const KProfile& profile, const ThetaQ& tq) {
  const double ln2 = std::log(2.0);
  const double theta = tq.theta;
  const auto& g = profile.grid;
  auto log_weighted = [&](int k) { return std::log(profile.at(k)) - k * theta * ln2; };
  ThetaQNorm out;
  out.lower_bound_only = !profile.has_tails();

  if (tq.q_infinite()) {
    double best = kNegInf;
    for (int k = g.k_min; k <= g.k_max; ++k) best = std::max(best, log_weighted(k));
    if (profile.tail0 && *profile.tail0 < theta - kTieTolerance) best = kInf;
    if (profile.tail_inf && *profile.tail_inf > theta + kTieTolerance) best = kInf;
    out.value = std::exp(best);
    return out;
  }

  const double q = tq.q;
  double total = kNegInf;
  for (int k = g.k_min; k <= g.k_max; ++k) total = log_add(total, q * log_weighted(k));
  // Geometric completion: ratio r per dyadic step away from the grid.
  auto add_tail = [&](double decay, int edge) {
    if (!(decay > q * kTieTolerance * ln2)) {
      total = kInf;
      return;
    }
    total = log_add(total, q * log_weighted(edge) - decay - std::log(-std::expm1(-decay)));
  };
  if (profile.tail0) add_tail(q * (*profile.tail0 - theta) * ln2, g.k_min);
  if (total != kInf && profile.tail_inf) add_tail(q * (theta - *profile.tail_inf) * ln2, g.k_max);
  out.value = total == kInf ? kInf : std::exp((total + std::log(ln2)) / q);
  return out;
}

MembershipResult membership_from_tail(double tail, const ThetaQ& tq, Side side) {
  MembershipResult out;
  out.analytic = true;
  const double gap = side == Side::Zero ? tail - tq.theta : tq.theta - tail;
  if (std::abs(gap) <= kTieTolerance) {
    out.boundary = true;
    out.verdict = tq.q_infinite() ? Membership::Member : Membership::NotMember;
  } else {
    out.verdict = gap > 0.0 ? Membership::Member : Membership::NotMember;
  }
  return out;
}

MembershipResult half_norm_membership(const KProfile& profile, const ThetaQ& tq, Side side) {
  const double theta = tq.theta;
  const auto tail = side == Side::Zero ? profile.tail0 : profile.tail_inf;
  if (tail) return membership_from_tail(*tail, tq, side);
  MembershipResult out;

  // Growth test on the grid, outward from t = 1.
  constexpr int kBlock = 10;
  constexpr double kGrowth = 1e-3;
  constexpr double kFlat = 1e-6;
  std::vector<double> log_terms;
  const auto& g = profile.grid;
  const double ln2 = std::log(2.0);
  const double q = tq.q_infinite() ? 1.0 : tq.q;
  if (side == Side::Zero) {
    for (int k = std::min(0, g.k_max); k >= g.k_min; --k) {
      log_terms.push_back(q * (std::log(profile.at(k)) - k * theta * ln2));
    }
  } else {
    for (int k = std::max(0, g.k_min); k <= g.k_max; ++k) {
      log_terms.push_back(q * (std::log(profile.at(k)) - k * theta * ln2));
    }
  }
  const int n = static_cast<int>(log_terms.size());
  if (n < 3 * kBlock) {
    out.verdict = Membership::Boundary;
    out.boundary = true;
    return out;
  }
  const double trend = (log_terms[n - 1] - log_terms[n - 1 - kBlock]) / q;
  if (tq.q_infinite()) {
    if (trend > kFlat) {
      out.verdict = Membership::NotMember;
    } else {
      out.verdict = Membership::Member;
      out.boundary = trend >= -kFlat;
    }
    return out;
  }
  double inner = kNegInf;
  double all = kNegInf;
  for (int i = 0; i < n; ++i) {
    if (i < n - kBlock) inner = log_add(inner, log_terms[i]);
    all = log_add(all, log_terms[i]);
  }
  if (all - inner <= std::log1p(kGrowth)) {
    out.verdict = Membership::Member;
  } else if (trend >= -kFlat) {
    out.verdict = Membership::NotMember;
    out.boundary = trend <= kFlat;
  } else {
    out.verdict = Membership::Boundary;
    out.boundary = true;
  }
  return out;
}

C0Membership theta_c0_membership(const KProfile& profile, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw InputError("theta must lie in (0,1)");
  C0Membership out;
  if (profile.has_tails()) {
    const double g0 = *profile.tail0 - theta;
    const double ginf = theta - *profile.tail_inf;
    out.boundary = std::abs(g0) <= kTieTolerance || std::abs(ginf) <= kTieTolerance;
    out.member = !out.boundary && g0 > 0.0 && ginf > 0.0;
    return out;
  }
  // Grid-limit fallback: t^{-theta} K(t) must decay towards both grid edges.
  const auto& g = profile.grid;
  const double ln2 = std::log(2.0);
  auto lw = [&](int k) { return std::log(profile.at(k)) - k * theta * ln2; };
  double peak = kNegInf;
  for (int k = g.k_min; k <= g.k_max; ++k) peak = std::max(peak, lw(k));
  constexpr int kBlock = 10;
  if (static_cast<int>(g.size()) < 2 * kBlock + 1) {
    out.boundary = true;
    return out;
  }
  const double cut = peak + std::log(1e-3);
  const bool left = lw(g.k_min) < lw(g.k_min + kBlock) && lw(g.k_min) <= cut;
  const bool right = lw(g.k_max) < lw(g.k_max - kBlock) && lw(g.k_max) <= cut;
  out.member = left && right;
  return out;
}

QuotientK quotient_k(const ProductCouple& couple, const Element& x, std::span<const Element> kernel,
                     double t, const QuotientOptions& options) {
  if (!(t > 0.0)) throw InputError("quotient K requires t > 0");
  const std::size_t d = kernel.size();
  auto objective = [&](const std::vector<double>& c) {
    return k_functional(couple, combine(x, kernel, c), t).value;
  };
  QuotientK best;
  best.coefficients.assign(d, 0.0);
  best.value = objective(best.coefficients);
  best.converged = true;
  if (d == 0 || best.value == 0.0) return best;

  const double kx = best.value;
  std::vector<double> scale(d, 1.0);
  for (std::size_t i = 0; i < d; ++i) {
    const double kv = k_functional(couple, kernel[i], t).value;
    if (kv > 0.0 && std::isfinite(kv)) scale[i] = kx / kv;
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  constexpr int kBits = 46;
  best.converged = false;

  for (int start = 0; start < std::max(1, options.starts); ++start) {
    std::vector<double> c(d, 0.0);
    if (start > 0) {
      for (std::size_t i = 0; i < d; ++i) c[i] = 2.0 * scale[i] * normal(rng);
    }
    double fc = objective(c);
    bool converged = false;
    for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
      const double before = fc;
      for (std::size_t i = 0; i < d; ++i) {
        auto g = [&](double s) {
          auto trial = c;
          trial[i] = s;
          return objective(trial);
        };
        // Bracket the minimum of the convex section, then refine with Brent.
        const double h = scale[i];
        double lo = c[i] - h;
        double hi = c[i] + h;
        const double f_lo = g(lo);
        const double f_hi = g(hi);
        if (f_lo < fc || f_hi < fc) {
          const double dir = f_hi <= f_lo ? 1.0 : -1.0;
          double behind = c[i];
          double x_cur = c[i] + dir * h;
          double f_cur = std::min(f_lo, f_hi);
          double step = h;
          for (int k = 0; k < 200; ++k) {
            step *= 2.0;
            const double y = x_cur + dir * step;
            const double fy = g(y);
            if (fy >= f_cur) {
              lo = std::min(behind, y);
              hi = std::max(behind, y);
              break;
            }
            behind = x_cur;
            x_cur = y;
            f_cur = fy;
          }
        }
        auto [s_min, f_min] = boost::math::tools::brent_find_minima(g, lo, hi, kBits);
        // Brent stops near half precision; a kinked minimum needs golden
        // section on the convex section to go further.
        {
          const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
          const double delta = 1e-7 * std::max(std::abs(s_min), h);
          double a = s_min - delta, b = s_min + delta;
          double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
          double f1 = g(x1), f2 = g(x2);
          for (int it = 0; it < 80 && b - a > 1e-16 * std::max(std::abs(s_min), h); ++it) {
            if (f1 <= f2) {
              b = x2;
              x2 = x1;
              f2 = f1;
              x1 = b - gr * (b - a);
              f1 = g(x1);
            } else {
              a = x1;
              x1 = x2;
              f1 = f2;
              x2 = a + gr * (b - a);
              f2 = g(x2);
            }
          }
          if (std::min(f1, f2) < f_min) {
            s_min = f1 <= f2 ? x1 : x2;
            f_min = std::min(f1, f2);
          }
        }
        if (f_min < fc) {
          c[i] = s_min;
          fc = f_min;
        }
      }
      converged = fc == 0.0 || before - fc <= 1e-15 * before;
    }
    if (fc < best.value) {
      best.value = fc;
      best.coefficients = c;
    }
    best.converged = best.converged || converged;
  }
  return best;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string profile_csv(const KProfile& profile) {
  std::string out = "k,t,K\n";
  for (int k = profile.grid.k_min; k <= profile.grid.k_max; ++k) {
    out += std::to_string(k) + "," + format_double(profile.grid.t(k)) + "," + format_double(profile.at(k)) + "\n";
  }
  return out;
}

}  // namespace interkernel

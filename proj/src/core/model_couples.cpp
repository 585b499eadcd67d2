#include "model_couples.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "numerics.hpp"

namespace interkernel {

namespace {

constexpr double kExponentMergeTol = 1e-14;

bool same_exponent(double a, double b) {
  return std::abs(a - b) <= kExponentMergeTol * std::max(1.0, std::abs(a));
}

void normalize_terms(std::vector<PowerTerm>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const PowerTerm& x, const PowerTerm& y) { return x.exponent < y.exponent; });
  std::vector<PowerTerm> merged;
  for (const auto& term : terms) {
    if (!std::isfinite(term.coeff) || !std::isfinite(term.exponent)) {
      throw InputError("power term coefficients and exponents must be finite");
    }
    if (!merged.empty() && same_exponent(merged.back().exponent, term.exponent)) {
      merged.back().coeff += term.coeff;
    } else {
      merged.push_back(term);
    }
  }
  std::erase_if(merged, [](const PowerTerm& t) { return t.coeff == 0.0; });
  terms = std::move(merged);
}

bool same_terms(const std::vector<PowerTerm>& a, const std::vector<PowerTerm>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].coeff != b[i].coeff || a[i].exponent != b[i].exponent) return false;
  }
  return true;
}

}  // namespace

double Segment::operator()(double t) const {
  double sum = 0.0;
  for (const auto& term : terms) sum += term.coeff * std::pow(t, term.exponent);
  return sum;
}

PiecewisePowerFunction::PiecewisePowerFunction(std::vector<Segment> segments) {
  double previous_hi = 0.0;
  bool first = true;
  for (auto& seg : segments) {
    if (!(seg.lo >= 0.0) || !(seg.hi > seg.lo) || std::isinf(seg.lo)) {
      throw InputError("segment must satisfy 0 <= lo < hi");
    }
    if (!first && seg.lo < previous_hi) throw InputError("segments must be ordered and disjoint");
    first = false;
    previous_hi = seg.hi;
    normalize_terms(seg.terms);
    if (seg.terms.empty()) continue;
    if (!segments_.empty() && segments_.back().hi == seg.lo &&
        same_terms(segments_.back().terms, seg.terms)) {
      segments_.back().hi = seg.hi;
      continue;
    }
    segments_.push_back(std::move(seg));
  }
}

PiecewisePowerFunction PiecewisePowerFunction::power(double coeff, double exponent, double lo,
                                                     double hi) {
  return PiecewisePowerFunction({Segment{lo, hi, {PowerTerm{coeff, exponent}}}});
}

double PiecewisePowerFunction::operator()(double t) const {
  for (const auto& seg : segments_) {
    if (t > seg.lo && t <= seg.hi) return seg(t);
  }
  return 0.0;
}

std::vector<double> PiecewisePowerFunction::breakpoints() const {
  std::vector<double> pts;
  for (const auto& seg : segments_) {
    if (seg.lo > 0.0) pts.push_back(seg.lo);
    if (std::isfinite(seg.hi)) pts.push_back(seg.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

PiecewisePowerFunction PiecewisePowerFunction::refined(std::span<const double> points) const {
  std::vector<double> cuts(points.begin(), points.end());
  std::sort(cuts.begin(), cuts.end());
  PiecewisePowerFunction out;
  for (const auto& seg : segments_) {
    double lo = seg.lo;
    for (double c : cuts) {
      if (c > lo && c < seg.hi) {
        out.segments_.push_back(Segment{lo, c, seg.terms});
        lo = c;
      }
    }
    out.segments_.push_back(Segment{lo, seg.hi, seg.terms});
  }
  return out;
}

std::vector<double> PiecewisePowerFunction::sign_changes() const {
  std::vector<double> roots;
  for (const auto& seg : segments_) {
    if (seg.terms.size() < 2) continue;
    const double u_lo = seg.touches_zero() ? -200.0 : std::log(seg.lo);
    const double u_hi = seg.touches_inf() ? 200.0 : std::log(seg.hi);
    auto g = [&](double u) { return seg(std::exp(u)); };
    if (seg.terms.size() == 2) {
      const auto& [c1, e1] = seg.terms[0];
      const auto& [c2, e2] = seg.terms[1];
      if ((c1 > 0.0) == (c2 > 0.0)) continue;
      const double u = std::log(-c1 / c2) / (e2 - e1);
      if (u > u_lo && u < u_hi) roots.push_back(std::exp(u));
      continue;
    }
    // At most terms-1 sign changes; scan and bisect.
    constexpr int kSamples = 2000;
    double prev_u = u_lo;
    double prev = g(u_lo);
    for (int i = 1; i <= kSamples; ++i) {
      const double u = u_lo + (u_hi - u_lo) * i / kSamples;
      const double v = g(u);
      if ((prev < 0.0 && v > 0.0) || (prev > 0.0 && v < 0.0)) {
        auto [a, b] = boost::math::tools::bisect(
            g, prev_u, u, [](double x, double y) { return std::abs(y - x) <= 1e-15 * (1.0 + std::abs(x)); });
        const double r = std::exp(0.5 * (a + b));
        if (r > seg.lo && r < seg.hi) roots.push_back(r);
      }
      prev_u = u;
      prev = v;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

PiecewisePowerFunction PiecewisePowerFunction::scaled(double lambda) const {
  return times_power(lambda, 0.0);
}

PiecewisePowerFunction PiecewisePowerFunction::times_power(double c, double e) const {
  if (c == 0.0) return {};
  std::vector<Segment> segs = segments_;
  for (auto& seg : segs) {
    for (auto& term : seg.terms) {
      term.coeff *= c;
      term.exponent += e;
    }
  }
  return PiecewisePowerFunction(std::move(segs));
}

PiecewisePowerFunction add_elements(const PiecewisePowerFunction& f, const PiecewisePowerFunction& g) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  std::vector<double> cuts = f.breakpoints();
  const auto gb = g.breakpoints();
  cuts.insert(cuts.end(), gb.begin(), gb.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> edges;
  edges.push_back(0.0);
  edges.insert(edges.end(), cuts.begin(), cuts.end());
  edges.push_back(kInf);

  auto terms_on = [](const PiecewisePowerFunction& h, double lo, double hi) {
    for (const auto& seg : h.segments()) {
      if (seg.lo <= lo && seg.hi >= hi) return seg.terms;
    }
    return std::vector<PowerTerm>{};
  };

  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    auto terms = terms_on(f, lo, hi);
    const auto more = terms_on(g, lo, hi);
    terms.insert(terms.end(), more.begin(), more.end());
    if (!terms.empty()) out.push_back(Segment{lo, hi, std::move(terms)});
  }
  return PiecewisePowerFunction(std::move(out));
}

PiecewisePowerFunction a_theta_element(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw InputError("a_theta requires 0 < theta < 1");
  return PiecewisePowerFunction::power(theta * (1.0 - theta), theta);
}

PowerWeight::PowerWeight(double e0, double einf, double s) : a0(e0), a_inf(einf), scale(s) {
  if (!std::isfinite(e0) || !std::isfinite(einf)) throw InputError("weight exponents must be finite");
  if (!(s > 0.0) || std::isinf(s)) throw InputError("weight scale must be positive");
}

double eval_lp_norm(const PiecewisePowerFunction& f, double p, const PowerWeight& w) {
  if (!(p >= 1.0) || std::isinf(p)) throw InputError("eval_lp_norm requires 1 <= p < inf");
  auto cuts = f.sign_changes();
  cuts.push_back(1.0);
  const auto g = f.refined(cuts);
  double log_total = numerics::kNegInf;
  for (const auto& seg : g.segments()) {
    const double a = w.exponent_on(seg);
    const double log_scale = p * std::log(w.scale);
    if (seg.terms.size() == 1) {
      const auto& term = seg.terms.front();
      const double piece = p * std::log(std::abs(term.coeff)) + log_scale +
                           numerics::log_power_integral(p * (term.exponent + a), seg.lo, seg.hi);
      log_total = numerics::log_add(log_total, piece);
      continue;
    }
    // Several powers: divergence is decided by the dominant term at each
    // unbounded end, the value by quadrature in u = log t.
    const double e_min = seg.terms.front().exponent;
    const double e_max = seg.terms.back().exponent;
    if (seg.touches_zero() && p * (e_min + a) <= 0.0) return kInf;
    if (seg.touches_inf() && p * (e_max + a) >= 0.0) return kInf;
    auto log_integrand = [&](double u) {
      const double v = std::abs(seg(std::exp(u)));
      return v == 0.0 ? numerics::kNegInf : p * (std::log(v) + a * u);
    };
    const double u_lo = seg.touches_zero() ? -kInf : std::log(seg.lo);
    const double u_hi = seg.touches_inf() ? kInf : std::log(seg.hi);
    const double u_ref = std::isfinite(u_lo) ? (std::isfinite(u_hi) ? 0.5 * (u_lo + u_hi) : u_lo)
                                             : (std::isfinite(u_hi) ? u_hi : 0.0);
    log_total = numerics::log_add(log_total,
                                  log_scale + numerics::log_integrate_exp(log_integrand, u_lo, u_hi, u_ref));
  }
  if (log_total == numerics::kNegInf) return 0.0;
  return std::exp(log_total / p);
}

WeightedLp CoupleDescriptor::weighted() const {
  if (const auto* lp = std::get_if<WeightedLp>(&kind)) return *lp;
  if (std::holds_alternative<ReferenceL1>(kind)) return ReferenceL1::as_weighted();
  throw InputError("sequence couple has no weighted L^p representation");
}

double CoupleDescriptor::p() const {
  if (const auto* lp = std::get_if<WeightedLp>(&kind)) return lp->p;
  if (std::holds_alternative<ReferenceL1>(kind)) return 1.0;
  return 0.0;  // sequence couples adopt the product exponent
}

CoupleDescriptor make_weighted_lp(double p, PowerWeight w0, PowerWeight w1) {
  if (!(p >= 1.0) || std::isinf(p)) throw InputError("weighted L^p couple requires 1 <= p < inf");
  return CoupleDescriptor{WeightedLp{p, w0, w1}};
}

ProductCouple::ProductCouple(std::vector<CoupleDescriptor> comps) : components(std::move(comps)) {
  if (components.empty()) throw InputError("couple needs at least one component");
  double common = 0.0;
  for (const auto& c : components) {
    const double pc = c.p();
    if (pc == 0.0) continue;
    if (common == 0.0) {
      common = pc;
    } else if (pc != common) {
      throw InputError("all L^p components of a product couple must share p");
    }
  }
  p = common == 0.0 ? 2.0 : common;
}

Element zero_element(const ProductCouple& couple) {
  Element x;
  x.reserve(couple.size());
  for (const auto& c : couple.components) {
    if (c.is_sequence()) {
      x.emplace_back(0.0);
    } else {
      x.emplace_back(PiecewisePowerFunction{});
    }
  }
  return x;
}

void check_compatible(const ProductCouple& couple, const Element& x) {
  if (x.size() != couple.size()) throw InputError("element arity does not match couple");
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool scalar = std::holds_alternative<double>(x[i]);
    if (scalar != couple.components[i].is_sequence()) {
      throw InputError("element component " + std::to_string(i) + " has the wrong kind");
    }
  }
}

Element add(const Element& x, const Element& y) {
  if (x.size() != y.size()) throw InputError("cannot add elements of different arity");
  Element out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (const auto* a = std::get_if<double>(&x[i])) {
      out.emplace_back(*a + std::get<double>(y[i]));
    } else {
      out.emplace_back(add_elements(std::get<PiecewisePowerFunction>(x[i]),
                                    std::get<PiecewisePowerFunction>(y[i])));
    }
  }
  return out;
}

Element scale(const Element& x, double lambda) {
  Element out;
  out.reserve(x.size());
  for (const auto& v : x) {
    if (const auto* a = std::get_if<double>(&v)) {
      out.emplace_back(*a * lambda);
    } else {
      out.emplace_back(std::get<PiecewisePowerFunction>(v).scaled(lambda));
    }
  }
  return out;
}

Element combine(const Element& x, std::span<const Element> basis, std::span<const double> coeffs) {
  Element out = x;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (coeffs[i] != 0.0) out = add(out, scale(basis[i], coeffs[i]));
  }
  return out;
}

bool is_zero(const Element& x) {
  for (const auto& v : x) {
    if (const auto* a = std::get_if<double>(&v)) {
      if (*a != 0.0) return false;
    } else if (!std::get<PiecewisePowerFunction>(v).is_zero()) {
      return false;
    }
  }
  return true;
}

}  // namespace interkernel

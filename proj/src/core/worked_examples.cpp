#include "worked_examples.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace interkernel {

namespace {

std::map<std::string, std::string> parse_fields(const std::string& text, const char* what) {
  std::map<std::string, std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError(std::string(what) + ": expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InputError("field " + key + ": not a number: '" + text + "'");
  }
}

// Accepts plain numbers and "pi", "pi/N", "M*pi/N", "Mpi/N".
double parse_pi_expression(const std::string& key, const std::string& text) {
  const auto at = text.find("pi");
  if (at == std::string::npos) return parse_number(key, text);
  std::string head = text.substr(0, at);
  if (!head.empty() && head.back() == '*') head.pop_back();
  const double factor = head.empty() ? 1.0 : parse_number(key, head);
  const std::string tail = text.substr(at + 2);
  if (tail.empty()) return factor * M_PI;
  if (tail.front() != '/') throw InputError("field " + key + ": cannot parse '" + text + "'");
  return factor * M_PI / parse_number(key, tail.substr(1));
}

double required(const std::map<std::string, std::string>& fields, const std::string& key, const char* what) {
  const auto it = fields.find(key);
  if (it == fields.end()) throw InputError(std::string(what) + ": missing field " + key);
  return parse_number(key, it->second);
}

std::string segment_name(const Segment& s) {
  std::ostringstream out;
  out << "(" << s.lo << ", " << s.hi << "]";
  return out.str();
}

}  // namespace

HardyModel::HardyModel(double pp, double a0_, double ainf_, double b0_, double binf_)
    : p(pp), a0(a0_), a_inf(ainf_), b0(b0_), b_inf(binf_) {
  if (!(p >= 1.0) || std::isinf(p)) throw InputError("hardy model: p must satisfy 1 <= p < inf");
  if (!(a0 > 0.0 && a0 < 1.0)) throw InputError("hardy model: a0 must lie in (0,1)");
  if (!(a_inf > 0.0 && a_inf < 1.0)) throw InputError("hardy model: ainf must lie in (0,1)");
  if (!(b0 < 0.0)) throw InputError("hardy model: b0 must be negative");
  if (!(b_inf < 0.0)) throw InputError("hardy model: binf must be negative");
}

HardyModel HardyModel::parse(const std::string& text, double p) {
  const auto f = parse_fields(text, "hardy model");
  for (const auto& [k, v] : f) {
    if (k != "a0" && k != "ainf" && k != "b0" && k != "binf") throw InputError("hardy model: unknown field " + k);
  }
  return HardyModel(p, required(f, "a0", "hardy model"), required(f, "ainf", "hardy model"),
                    required(f, "b0", "hardy model"), required(f, "binf", "hardy model"));
}

PiecewisePowerFunction hardy_apply(const PiecewisePowerFunction& f) {
  std::vector<Segment> out;
  double mass = 0.0;  // \int_0^{prev} f
  double prev = 0.0;
  for (const auto& seg : f.segments()) {
    if (seg.lo > prev && mass != 0.0) out.push_back({prev, seg.lo, {{mass, -1.0}}});
    Segment image{seg.lo, seg.hi, {}};
    double boundary = mass;
    double gained = 0.0;
    for (const auto& term : seg.terms) {
      const double e1 = term.exponent + 1.0;
      if (term.exponent == -1.0) throw InputError("H: term s^-1 on " + segment_name(seg) + " integrates to a logarithm");
      if (seg.touches_zero() && !(e1 > 0.0)) throw InputError("H: f is not integrable at 0 on " + segment_name(seg));
      const double k = term.coeff / e1;
      image.terms.push_back({k, term.exponent});
      const double lo_pow = seg.touches_zero() ? 0.0 : std::pow(seg.lo, e1);
      boundary -= k * lo_pow;
      if (!seg.touches_inf()) gained += k * (std::pow(seg.hi, e1) - lo_pow);
    }
    if (boundary != 0.0) image.terms.push_back({boundary, -1.0});
    out.push_back(std::move(image));
    mass += gained;
    prev = seg.hi;
  }
  if (!std::isinf(prev) && mass != 0.0) out.push_back({prev, kInf, {{mass, -1.0}}});
  return PiecewisePowerFunction(std::move(out));
}

PiecewisePowerFunction hardy_k0(const PiecewisePowerFunction& f) {
  std::vector<Segment> out;
  double tail = 0.0;  // \int_{next}^inf f ds/s
  double next = kInf;
  const auto& segs = f.segments();
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    const auto& seg = *it;
    if (seg.hi < next && tail != 0.0) out.push_back({seg.hi, next, {{tail, 0.0}}});
    Segment image{seg.lo, seg.hi, {}};
    double constant = tail;
    double gained = 0.0;
    for (const auto& term : seg.terms) {
      const double e = term.exponent;
      if (e == 0.0) throw InputError("hardy_k0: constant term on " + segment_name(seg) + " integrates to a logarithm");
      if (seg.touches_inf() && !(e < 0.0)) throw InputError("hardy_k0: f is not integrable at inf on " + segment_name(seg));
      const double k = term.coeff / e;
      image.terms.push_back({-k, e});
      const double hi_pow = seg.touches_inf() ? 0.0 : std::pow(seg.hi, e);
      constant += k * hi_pow;
      if (!seg.touches_zero()) gained += k * (hi_pow - std::pow(seg.lo, e));
    }
    if (constant != 0.0) image.terms.push_back({constant, 0.0});
    out.push_back(std::move(image));
    tail += gained;
    next = seg.lo;
  }
  if (next > 0.0 && tail != 0.0) out.push_back({0.0, next, {{tail, 0.0}}});
  std::reverse(out.begin(), out.end());
  return PiecewisePowerFunction(std::move(out));
}

PiecewisePowerFunction hardy_k1(const PiecewisePowerFunction& f) {
  std::vector<Segment> out;
  double mass = 0.0;  // \int_0^{prev} f ds/s
  double prev = 0.0;
  for (const auto& seg : f.segments()) {
    if (seg.lo > prev && mass != 0.0) out.push_back({prev, seg.lo, {{mass, 0.0}}});
    Segment image{seg.lo, seg.hi, {}};
    double constant = mass;
    double gained = 0.0;
    for (const auto& term : seg.terms) {
      const double e = term.exponent;
      if (e == 0.0) throw InputError("hardy_k1: constant term on " + segment_name(seg) + " integrates to a logarithm");
      if (seg.touches_zero() && !(e > 0.0)) throw InputError("hardy_k1: f is not integrable at 0 on " + segment_name(seg));
      const double k = term.coeff / e;
      image.terms.push_back({k, e});
      const double lo_pow = seg.touches_zero() ? 0.0 : std::pow(seg.lo, e);
      constant -= k * lo_pow;
      if (!seg.touches_inf()) gained += k * (std::pow(seg.hi, e) - lo_pow);
    }
    if (constant != 0.0) image.terms.push_back({constant, 0.0});
    out.push_back(std::move(image));
    mass += gained;
    prev = seg.hi;
  }
  if (!std::isinf(prev) && mass != 0.0) out.push_back({prev, kInf, {{mass, 0.0}}});
  return PiecewisePowerFunction(std::move(out));
}

double hardy_inverse_check(const HardyModel& model, const PiecewisePowerFunction& f, HardySide side) {
  if (f.is_zero()) return 0.0;
  const auto g = add_elements(f, hardy_apply(f).scaled(-1.0));
  PiecewisePowerFunction back;
  PowerWeight w;
  if (side == HardySide::X0) {
    back = add_elements(g, hardy_k0(g).scaled(-1.0));
    w = model.w0();
  } else {
    back = add_elements(g, hardy_k1(g));
    w = model.w1();
  }
  const auto r = add_elements(back, f.scaled(-1.0));
  const double nf = eval_lp_norm(f, model.p, w);
  if (!(nf > 0.0) || std::isinf(nf)) throw InputError("hardy inverse check: f must have finite nonzero norm");
  return eval_lp_norm(r, model.p, w) / nf;
}

PiecewisePowerFunction hardy_kernel_element() { return PiecewisePowerFunction::constant(1.0); }

KProfile hardy_kernel_profile(const HardyModel& model, const DyadicGrid& grid) {
  const auto couple = ProductCouple::single(model.couple());
  KProfile k = sample_profile(couple, Element{hardy_kernel_element()}, grid);
  k.tail0 = model.theta_zero();
  k.tail_inf = model.theta_inf();
  return k;
}

OperatorModel hardy_operator(const HardyModel& model) {
  OperatorModel op;
  op.couple_x = ProductCouple::single(model.couple());
  op.endpoint_status = EndpointStatus::InvertibleOnEndpoints;
  op.kernel_basis = {Element{hardy_kernel_element()}};
  std::ostringstream label;
  label << "I-H, p=" << model.p << ", a0=" << model.a0 << ", ainf=" << model.a_inf << ", b0=" << model.b0
        << ", binf=" << model.b_inf;
  op.label = label.str();
  return op;
}

std::vector<Classification> hardy_classify_sweep(const HardyModel& model, double q, const std::vector<double>& thetas) {
  const auto op = hardy_operator(model);
  std::vector<Classification> out;
  out.reserve(thetas.size());
  for (const double th : thetas) out.push_back(classify(op, ThetaQ(th, q)));
  return out;
}

OperatorModel hardy_product_operator(const std::vector<HardyModel>& models) {
  if (models.empty()) throw InputError("hardy product: need at least one factor");
  std::vector<CoupleDescriptor> comps;
  for (const auto& m : models) {
    if (m.p != models.front().p) throw InputError("hardy product: all factors must share p");
    comps.push_back(m.couple());
  }
  OperatorModel op;
  op.couple_x = ProductCouple(std::move(comps));
  op.endpoint_status = EndpointStatus::InvertibleOnEndpoints;
  const Element zero = zero_element(op.couple_x);
  for (std::size_t i = 0; i < models.size(); ++i) {
    Element x = zero;
    x[i] = hardy_kernel_element();
    op.kernel_basis.push_back(std::move(x));
  }
  op.label = "I-H on a product of " + std::to_string(models.size()) + " couples";
  return op;
}

Classification hardy_product_classify(const std::vector<HardyModel>& models, double theta, double q) {
  return classify(hardy_product_operator(models), ThetaQ(theta, q));
}

StripModel::StripModel(double a, double b0, double b1, int l) : alpha(a), beta0(b0), beta1(b1), order(l) {
  if (!(alpha > 0.0 && alpha < M_PI)) throw InputError("strip model: alpha must lie in (0, pi)");
  if (!(beta0 < beta1)) throw InputError("strip model: beta0 must be < beta1");
  if (order < 0) throw InputError("strip model: l must be nonnegative");
  const double step = M_PI / alpha;
  for (const double b : {beta0, beta1}) {
    const double k = std::round(b / step);
    if (k != 0.0 && std::abs(b - k * step) <= 1e-12 * std::max(1.0, std::abs(b))) {
      std::ostringstream msg;
      msg << "strip model: beta = " << b << " equals k pi/alpha for k = " << k;
      throw InputError(msg.str());
    }
  }
}

StripModel StripModel::parse(const std::string& text) {
  const auto f = parse_fields(text, "strip model");
  for (const auto& [k, v] : f) {
    if (k != "alpha" && k != "beta0" && k != "beta1" && k != "l") throw InputError("strip model: unknown field " + k);
  }
  const auto a = f.find("alpha");
  if (a == f.end()) throw InputError("strip model: missing field alpha");
  const auto l = f.find("l");
  return StripModel(parse_pi_expression("alpha", a->second), required(f, "beta0", "strip model"),
                    required(f, "beta1", "strip model"),
                    l == f.end() ? 2 : static_cast<int>(parse_number("l", l->second)));
}

std::vector<std::pair<int, double>> strip_thetas(const StripModel& model) {
  const double step = M_PI / model.alpha;
  std::vector<std::pair<int, double>> out;
  const int lo = static_cast<int>(std::ceil(model.beta0 / step));
  const int hi = static_cast<int>(std::floor(model.beta1 / step));
  for (int k = lo; k <= hi; ++k) {
    const double b = k * step;
    if (k == 0 || !(b > model.beta0 && b < model.beta1)) continue;
    out.emplace_back(k, (b - model.beta0) / (model.beta1 - model.beta0));
  }
  return out;
}

std::vector<std::string> strip_kernel_functions(const StripModel& model) {
  std::vector<std::string> out;
  for (const auto& [k, th] : strip_thetas(model)) {
    std::ostringstream s;
    s << "exp(-" << k << "*pi*x/alpha)*sin(" << k << "*pi*y/alpha)";
    out.push_back(s.str());
  }
  return out;
}

OperatorModel strip_operator(const StripModel& model, const DyadicGrid& grid) {
  OperatorModel op;
  op.endpoint_status = EndpointStatus::InvertibleOnEndpoints;
  std::ostringstream label;
  label << "Laplace on strip, alpha=" << model.alpha << ", beta0=" << model.beta0 << ", beta1=" << model.beta1
        << ", l=" << model.order;
  op.label = label.str();
  const auto thetas = strip_thetas(model);
  if (thetas.empty()) return op;
  std::vector<CoupleDescriptor> comps;
  for (const auto& kt : thetas) comps.push_back(CoupleDescriptor{SequenceCouple{KProfile::power(grid, kt.second)}});
  op.couple_x = ProductCouple(std::move(comps));
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    Element x(thetas.size(), ComponentValue{0.0});
    x[i] = 1.0;
    op.kernel_basis.push_back(std::move(x));
  }
  return op;
}

Classification strip_classify(const StripModel& model, double theta, double q) {
  return classify(strip_operator(model), ThetaQ(theta, q));
}

}  // namespace interkernel

#include "profile.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace interkernel {

DyadicGrid DyadicGrid::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("grid must be given as kmin:kmax");
  try {
    const int lo = std::stoi(text.substr(0, colon));
    const int hi = std::stoi(text.substr(colon + 1));
    return DyadicGrid(lo, hi);
  } catch (const std::logic_error&) {
    throw InputError("grid must be given as kmin:kmax, got '" + text + "'");
  }
}

DyadicGrid DyadicGrid::from_environment() {
  if (const char* env = std::getenv("INTERKERNEL_GRID"); env != nullptr && *env != '\0') {
    return parse(env);
  }
  return DyadicGrid{};
}

KProfile::KProfile(DyadicGrid g, std::vector<double> v, std::optional<double> t0,
                   std::optional<double> tinf, double eq)
    : grid(g), values(std::move(v)), tail0(t0), tail_inf(tinf), equivalence_factor(eq) {
  if (values.size() != grid.size()) throw InputError("KProfile: value count does not match grid");
  for (double x : values) {
    if (!(x > 0.0) || std::isinf(x)) throw InputError("KProfile: values must be positive and finite");
  }
  if (!(eq >= 1.0)) throw InputError("KProfile: equivalence_factor must be >= 1");
}

KProfile KProfile::power(const DyadicGrid& g, double exponent, double scale) {
  return two_power(g, exponent, exponent, scale);
}

KProfile KProfile::two_power(const DyadicGrid& g, double e0, double einf, double scale) {
  std::vector<double> v;
  v.reserve(g.size());
  for (int k = g.k_min; k <= g.k_max; ++k) {
    v.push_back(scale * std::exp2((k <= 0 ? e0 : einf) * k));
  }
  return KProfile(g, std::move(v), e0, einf);
}

double KProfile::log2_at(int k) const {
  if (grid.contains(k)) return std::log2(at(k));
  if (k < grid.k_min) {
    if (!tail0) throw std::domain_error("profile has no tail exponent at 0");
    return std::log2(at(grid.k_min)) + *tail0 * (k - grid.k_min);
  }
  if (!tail_inf) throw std::domain_error("profile has no tail exponent at infinity");
  return std::log2(at(grid.k_max)) + *tail_inf * (k - grid.k_max);
}

double KProfile::value(double t) const {
  if (!(t > 0.0)) throw InputError("K(t) requires t > 0");
  const double lt = std::log2(t);
  const double kf = std::floor(lt);
  const int k = static_cast<int>(kf);
  const double frac = lt - kf;
  if (frac == 0.0) return std::exp2(log2_at(k));
  const double a = log2_at(k);
  const double b = log2_at(k + 1);
  return std::exp2(a + frac * (b - a));
}

std::string KProfile::check_invariants(double rel_slack) const {
  std::ostringstream out;
  for (int k = grid.k_min; k < grid.k_max; ++k) {
    const double lo = at(k);
    const double hi = at(k + 1);
    if (hi < lo * (1.0 - rel_slack)) out << "K decreases at k=" << k << "; ";
    if (hi / 2.0 > lo * (1.0 + rel_slack)) out << "K/t increases at k=" << k << "; ";
  }
  return out.str();
}

}  // namespace interkernel

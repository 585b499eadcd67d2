#include "dilation_indices.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace interkernel {

namespace {

constexpr double kSlopeSlack = 1e-6;
constexpr double kNumericTolerance = 1e-6;
constexpr double kMergeTol = 1e-14;

std::vector<double> log2_values(const KProfile& p, int lo, int hi) {
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) out.push_back(std::log2(p.at(k)));
  return out;
}

// Best gamma at index value v over pairs i <= j of [lo, hi]:
// beta-type needs s^{-v}K(s) >= gamma t^{-v}K(t), alpha-type <= gamma.
double gamma_witness(const KProfile& p, int lo, int hi, double v, bool beta_type) {
  double best = beta_type ? kInf : 0.0;
  double running = beta_type ? kInf : -kInf;
  for (int k = lo; k <= hi; ++k) {
    const double g = std::log2(p.at(k)) - v * k;
    running = beta_type ? std::min(running, g) : std::max(running, g);
    const double ratio = running - g;
    best = beta_type ? std::min(best, ratio) : std::max(best, ratio);
  }
  return std::exp2(best);
}

struct Window {
  int lo = 0;
  int hi = 0;
  bool ok = false;
};

Window zero_range(const DyadicGrid& g) {
  const int hi = std::min(0, g.k_max);
  return {g.k_min, hi, hi >= g.k_min};
}

Window inf_range(const DyadicGrid& g) {
  const int lo = std::max(0, g.k_min);
  return {lo, g.k_max, g.k_max >= lo};
}

void fill_gammas(IndexSet& s, const KProfile& p) {
  const auto& g = p.grid;
  const auto z = zero_range(g);
  const auto i = inf_range(g);
  auto set = [&](IndexEntry& e, int lo, int hi, bool beta_type, bool ok) {
    if (e.determined && ok && hi > lo) e.gamma = gamma_witness(p, lo, hi, e.value, beta_type);
  };
  set(s.beta, g.k_min, g.k_max, true, true);
  set(s.alpha, g.k_min, g.k_max, false, true);
  set(s.beta0, z.lo, z.hi, true, z.ok);
  set(s.alpha0, z.lo, z.hi, false, z.ok);
  set(s.beta_inf, i.lo, i.hi, true, i.ok);
  set(s.alpha_inf, i.lo, i.hi, false, i.ok);
}

void combine_global(IndexSet& s) {
  s.alpha.determined = s.alpha0.determined && s.alpha_inf.determined;
  s.beta.determined = s.beta0.determined && s.beta_inf.determined;
  s.alpha.value = s.alpha.determined ? std::min(s.alpha0.value, s.alpha_inf.value) : 0.0;
  s.beta.value = s.beta.determined ? std::max(s.beta0.value, s.beta_inf.value) : 1.0;
}

// Extremal chord slopes over all pairs in [lo, hi].
bool chord_extremes(const KProfile& p, int lo, int hi, double& min_slope, double& max_slope) {
  if (hi - lo + 1 < 3) return false;
  const auto l = log2_values(p, lo, hi);
  min_slope = kInf;
  max_slope = -kInf;
  const int n = static_cast<int>(l.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double s = (l[j] - l[i]) / (j - i);
      min_slope = std::min(min_slope, s);
      max_slope = std::max(max_slope, s);
    }
  }
  if (min_slope < -kSlopeSlack || max_slope > 1.0 + kSlopeSlack) {
    std::ostringstream msg;
    msg << "profile violates the K-functional laws: chord slope outside [0,1] on [2^" << lo << ", 2^" << hi
        << "]";
    throw InputError(msg.str());
  }
  min_slope = std::clamp(min_slope, 0.0, 1.0);
  max_slope = std::clamp(max_slope, 0.0, 1.0);
  return true;
}

bool same_exponent(double a, double b) { return std::abs(a - b) <= kMergeTol * std::max(1.0, std::abs(a)); }

}  // namespace

const char* to_string(IndexSource s) {
  switch (s) {
    case IndexSource::Analytic: return "analytic";
    case IndexSource::Numeric: return "numeric";
    case IndexSource::Sampled: return "sampled";
    case IndexSource::Algebraic: return "algebraic";
    case IndexSource::Empty: return "empty";
  }
  return "unknown";
}

IndexSet IndexSet::empty() {
  IndexSet s;
  for (auto* e : {&s.alpha, &s.alpha0, &s.alpha_inf}) e->value = 1.0;
  for (auto* e : {&s.beta, &s.beta0, &s.beta_inf}) e->value = 0.0;
  s.source = IndexSource::Empty;
  return s;
}

bool IndexSet::all_determined() const {
  return alpha.determined && beta.determined && alpha0.determined && beta0.determined &&
         alpha_inf.determined && beta_inf.determined;
}

std::string IndexSet::check_invariants() const {
  if (source == IndexSource::Empty) return {};
  std::ostringstream out;
  const double tol = tolerance + 1e-12;
  auto le = [&](const IndexEntry& a, const IndexEntry& b, const char* what) {
    if (a.determined && b.determined && a.value > b.value + tol) out << what << "; ";
  };
  const IndexEntry zero{0.0, {}, true};
  const IndexEntry one{1.0, {}, true};
  le(zero, alpha, "alpha < 0");
  le(alpha, alpha0, "alpha > alpha0");
  le(alpha0, beta0, "alpha0 > beta0");
  le(beta0, beta, "beta0 > beta");
  le(alpha, alpha_inf, "alpha > alpha_inf");
  le(alpha_inf, beta_inf, "alpha_inf > beta_inf");
  le(beta_inf, beta, "beta_inf > beta");
  le(beta, one, "beta > 1");
  return out.str();
}

IndexSet indices_of_profile(const KProfile& profile) {
  if (!profile.has_tails()) return numeric_indices_of_profile(profile);
  const double t0 = *profile.tail0;
  const double ti = *profile.tail_inf;
  for (double t : {t0, ti}) {
    if (t < -1e-12 || t > 1.0 + 1e-12) throw InputError("profile tail exponents must lie in [0,1]");
  }
  IndexSet s;
  s.source = IndexSource::Analytic;
  s.alpha0.value = s.beta0.value = std::clamp(t0, 0.0, 1.0);
  s.alpha_inf.value = s.beta_inf.value = std::clamp(ti, 0.0, 1.0);
  combine_global(s);
  fill_gammas(s, profile);
  return s;
}

IndexSet numeric_indices_of_profile(const KProfile& profile) {
  IndexSet s;
  s.source = IndexSource::Numeric;
  s.tolerance = kNumericTolerance;
  const auto& g = profile.grid;
  const auto z = zero_range(g);
  const auto i = inf_range(g);
  double lo_s = 0.0;
  double hi_s = 0.0;
  if (z.ok && chord_extremes(profile, z.lo, z.lo + (z.hi - z.lo) / 2, lo_s, hi_s)) {
    s.alpha0.value = lo_s;
    s.beta0.value = hi_s;
  } else {
    s.alpha0.determined = s.beta0.determined = false;
  }
  if (i.ok && chord_extremes(profile, i.hi - (i.hi - i.lo) / 2, i.hi, lo_s, hi_s)) {
    s.alpha_inf.value = lo_s;
    s.beta_inf.value = hi_s;
  } else {
    s.alpha_inf.determined = s.beta_inf.determined = false;
  }
  combine_global(s);
  fill_gammas(s, profile);
  return s;
}

std::vector<std::vector<double>> sphere_directions(std::size_t d, std::uint64_t seed, int count) {
  std::vector<std::vector<double>> dirs;
  if (d == 1) {
    dirs.push_back({1.0});
  } else if (d == 2) {
    constexpr int kAngles = 721;
    for (int j = 0; j < kAngles; ++j) {
      const double phi = M_PI * j / (kAngles - 1);
      dirs.push_back({std::cos(phi), std::sin(phi)});
    }
  } else if (d > 2) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int j = 0; j < count; ++j) {
      std::vector<double> v(d);
      double n = 0.0;
      for (auto& x : v) {
        x = normal(rng);
        n += x * x;
      }
      for (auto& x : v) x /= std::sqrt(n);
      dirs.push_back(std::move(v));
    }
  }
  return dirs;
}

SubspaceSample make_subspace_sample(const ProductCouple& couple, std::vector<Element> basis,
                                    const DyadicGrid& grid, std::uint64_t seed, int count) {
  SubspaceSample s;
  s.couple = couple;
  // Profiles without tail exponents cannot be read off their own grid.
  int k_min = grid.k_min, k_max = grid.k_max;
  for (const auto& c : couple.components) {
    if (const auto* seq = std::get_if<SequenceCouple>(&c.kind)) {
      if (!seq->profile.tail0) k_min = std::max(k_min, seq->profile.grid.k_min);
      if (!seq->profile.tail_inf) k_max = std::min(k_max, seq->profile.grid.k_max);
    }
  }
  if (k_max <= k_min) throw InputError("sampled profiles do not overlap the sampling grid");
  s.grid = DyadicGrid(k_min, k_max);
  const std::size_t d = basis.size();
  s.basis = std::move(basis);
  auto dirs = sphere_directions(d, seed, count);
  const Element zero = d > 0 ? zero_element(couple) : Element{};
  for (auto& v : dirs) {
    const Element x = combine(zero, s.basis, v);
    if (is_zero(x)) continue;
    const double k1 = k_functional(couple, x, 1.0).value;
    if (!(k1 > 0.0) || std::isinf(k1)) continue;
    for (auto& c : v) c /= k1;
    s.sphere_points.push_back(std::move(v));
  }
  s.density = static_cast<int>(s.sphere_points.size());
  if (d > 0 && s.sphere_points.empty()) throw InputError("subspace sample has no admissible points");
  return s;
}

IndexSet indices_of_subspace(const SubspaceSample& sample) {
  if (sample.basis.empty()) return IndexSet::empty();
  const Element zero = zero_element(sample.couple);
  IndexSet out;
  bool first = true;
  for (const auto& c : sample.sphere_points) {
    const Element x = combine(zero, sample.basis, c);
    const IndexSet s = indices_of_profile(sample_profile(sample.couple, x, sample.grid));
    if (first) {
      out = s;
      first = false;
      continue;
    }
    auto take_min = [](IndexEntry& acc, const IndexEntry& e) {
      acc.determined = acc.determined && e.determined;
      if (e.value < acc.value) acc = IndexEntry{e.value, e.gamma, acc.determined};
    };
    auto take_max = [](IndexEntry& acc, const IndexEntry& e) {
      acc.determined = acc.determined && e.determined;
      if (e.value > acc.value) acc = IndexEntry{e.value, e.gamma, acc.determined};
    };
    take_min(out.alpha, s.alpha);
    take_min(out.alpha0, s.alpha0);
    take_min(out.alpha_inf, s.alpha_inf);
    take_max(out.beta, s.beta);
    take_max(out.beta0, s.beta0);
    take_max(out.beta_inf, s.beta_inf);
    out.tolerance = std::max(out.tolerance, s.tolerance);
  }
  if (sample.basis.size() > 1) out.source = IndexSource::Sampled;
  return out;
}

MonomialTable monomial_table(const ProductCouple& couple, std::span<const Element> basis) {
  MonomialTable table;
  const std::size_t m = basis.size();
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };
  std::vector<Entry> entries;
  auto new_column = [&](double z, double i, std::string label) {
    table.zero_exp.push_back(z);
    table.inf_exp.push_back(i);
    table.labels.push_back(std::move(label));
    return table.zero_exp.size() - 1;
  };
  for (const auto& x : basis) check_compatible(couple, x);

  for (std::size_t comp = 0; comp < couple.size(); ++comp) {
    const auto& desc = couple.components[comp];
    if (const auto* seq = std::get_if<SequenceCouple>(&desc.kind)) {
      const bool known = seq->profile.has_tails();
      if (!known) table.exact = false;
      const double nan = std::numeric_limits<double>::quiet_NaN();
      const auto col = new_column(known ? *seq->profile.tail0 : nan, known ? *seq->profile.tail_inf : nan,
                                  "component " + std::to_string(comp) + " reference element");
      for (std::size_t r = 0; r < m; ++r) {
        const double v = std::get<double>(basis[r][comp]);
        if (v != 0.0) entries.push_back({r, col, v});
      }
      continue;
    }
    const auto lp = desc.weighted();
    std::vector<double> cuts{1.0};
    for (const auto& x : basis) {
      const auto b = std::get<PiecewisePowerFunction>(x[comp]).breakpoints();
      cuts.insert(cuts.end(), b.begin(), b.end());
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<double> edges{0.0};
    edges.insert(edges.end(), cuts.begin(), cuts.end());
    edges.push_back(kInf);

    for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
      const Segment piece{edges[j], edges[j + 1], {}};
      const double a = lp.w0.exponent_on(piece);
      const double b = lp.w1.exponent_on(piece);
      std::vector<std::pair<double, std::size_t>> cols;  // exponent -> column
      for (std::size_t r = 0; r < m; ++r) {
        const auto& f = std::get<PiecewisePowerFunction>(basis[r][comp]);
        for (const auto& seg : f.segments()) {
          if (!(seg.lo <= piece.lo && seg.hi >= piece.hi)) continue;
          for (const auto& term : seg.terms) {
            auto it = std::find_if(cols.begin(), cols.end(),
                                   [&](const auto& c) { return same_exponent(c.first, term.exponent); });
            std::size_t col;
            if (it == cols.end()) {
              const auto t = monomial_tails(term.exponent, a, b, piece.touches_zero(), piece.touches_inf());
              std::ostringstream label;
              label << "component " << comp << " s^" << term.exponent << " on (" << piece.lo << ", "
                    << (piece.touches_inf() ? std::string("inf") : std::to_string(piece.hi)) << "]";
              col = new_column(*t.zero, *t.inf, label.str());
              cols.emplace_back(term.exponent, col);
            } else {
              col = it->second;
            }
            entries.push_back({r, col, term.coeff});
          }
        }
      }
    }
  }
  table.coeffs = linalg::Matrix::Zero(static_cast<Eigen::Index>(m),
                                      static_cast<Eigen::Index>(table.zero_exp.size()));
  for (const auto& e : entries) {
    table.coeffs(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += e.value;
  }
  return table;
}

TailExponents tails_of(const MonomialTable& table, const Eigen::VectorXd& c) {
  const Eigen::VectorXd v = table.coeffs.transpose() * c;
  const double top = v.cwiseAbs().maxCoeff();
  TailExponents out;
  if (!(top > 0.0)) return out;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (std::abs(v(j)) <= linalg::kRankTolerance * top) continue;
    const double z = table.zero_exp[static_cast<std::size_t>(j)];
    const double i = table.inf_exp[static_cast<std::size_t>(j)];
    out.zero = out.zero ? std::min(*out.zero, z) : z;
    out.inf = out.inf ? std::max(*out.inf, i) : i;
  }
  return out;
}

IndexSet algebraic_indices(const MonomialTable& table, const linalg::Matrix& omega,
                           const linalg::Matrix& modulo) {
  using linalg::Matrix;
  const Eigen::Index m = table.coeffs.rows();
  const Matrix u = modulo.cols() > 0 ? linalg::orth(modulo) : linalg::empty(m);
  const Matrix w = linalg::sum(omega, u);
  const int dim_u = static_cast<int>(u.cols());
  const int dim_w = static_cast<int>(w.cols());
  if (dim_w == dim_u) return IndexSet::empty();

  IndexSet s;
  s.source = IndexSource::Algebraic;
  if (!table.exact) {
    for (auto* e : {&s.alpha, &s.beta, &s.alpha0, &s.beta0, &s.alpha_inf, &s.beta_inf}) e->determined = false;
    return s;
  }

  // Elements of W whose monomials in the selected columns vanish.
  auto restricted = [&](auto&& must_vanish) {
    std::vector<Eigen::Index> cols;
    for (Eigen::Index j = 0; j < table.coeffs.cols(); ++j) {
      if (must_vanish(static_cast<std::size_t>(j))) cols.push_back(j);
    }
    if (cols.empty()) return w;
    Matrix c(static_cast<Eigen::Index>(cols.size()), m);
    for (std::size_t r = 0; r < cols.size(); ++r) c.row(static_cast<Eigen::Index>(r)) = table.coeffs.col(cols[r]).transpose();
    const Matrix n = linalg::null_space(c * w);
    return n.cols() == 0 ? linalg::empty(m) : Matrix(w * n);
  };
  auto rank_with_u = [&](const Matrix& sub) { return linalg::rank(linalg::sum(sub, u)); };

  std::vector<double> zero_levels = table.zero_exp;
  std::sort(zero_levels.begin(), zero_levels.end());
  zero_levels.erase(std::unique(zero_levels.begin(), zero_levels.end()), zero_levels.end());
  std::vector<double> inf_levels = table.inf_exp;
  std::sort(inf_levels.begin(), inf_levels.end());
  inf_levels.erase(std::unique(inf_levels.begin(), inf_levels.end()), inf_levels.end());

  bool beta0_set = false;
  bool alpha0_set = false;
  for (auto it = zero_levels.rbegin(); it != zero_levels.rend(); ++it) {
    const double level = *it;
    const Matrix sl = restricted([&](std::size_t j) { return table.zero_exp[j] < level - kTieTolerance; });
    const int r = rank_with_u(sl);
    if (!beta0_set && r > dim_u) {
      s.beta0.value = level;
      beta0_set = true;
    }
    if (!alpha0_set && r == dim_w) {
      s.alpha0.value = level;
      alpha0_set = true;
    }
    if (beta0_set && alpha0_set) break;
  }
  bool beta_inf_set = false;
  bool alpha_inf_set = false;
  for (const double level : inf_levels) {
    const Matrix tl = restricted([&](std::size_t j) { return table.inf_exp[j] > level + kTieTolerance; });
    const int r = rank_with_u(tl);
    if (!alpha_inf_set && r > dim_u) {
      s.alpha_inf.value = level;
      alpha_inf_set = true;
    }
    if (!beta_inf_set && r == dim_w) {
      s.beta_inf.value = level;
      beta_inf_set = true;
    }
    if (alpha_inf_set && beta_inf_set) break;
  }
  combine_global(s);
  return s;
}

}  // namespace interkernel

#include "fredholm_classifier.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace interkernel {

using linalg::Matrix;

namespace {

Eigen::Index rows_of(const KernelSplit& s) { return s.table.coeffs.rows(); }

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<Element> realize(const OperatorModel& model, const Matrix& cols) {
  std::vector<Element> out;
  if (cols.cols() == 0) return out;
  const Element zero = zero_element(model.couple_x);
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    const auto c = to_std(cols.col(j));
    out.push_back(combine(zero, model.kernel_basis, c));
  }
  return out;
}

Matrix unit_columns(Eigen::Index m, const std::vector<Eigen::Index>& idx) {
  Matrix out = Matrix::Zero(m, static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out(idx[j], static_cast<Eigen::Index>(j)) = 1.0;
  return out;
}

// Coefficient vectors c with (coeffs^T c)_j = 0 for every flagged column.
Matrix vanishing_on(const MonomialTable& table, const std::vector<bool>& bad) {
  const Eigen::Index m = table.coeffs.rows();
  std::vector<Eigen::Index> cols;
  for (std::size_t j = 0; j < bad.size(); ++j) {
    if (bad[j]) cols.push_back(static_cast<Eigen::Index>(j));
  }
  if (cols.empty()) return Matrix::Identity(m, m);
  Matrix c(static_cast<Eigen::Index>(cols.size()), m);
  for (std::size_t r = 0; r < cols.size(); ++r) c.row(static_cast<Eigen::Index>(r)) = table.coeffs.col(cols[r]).transpose();
  const Matrix n = linalg::null_space(c);
  return n.cols() == 0 ? linalg::empty(m) : n;
}

// Greedy extension of `base` by unit vectors; returns the chosen units.
Matrix greedy_complement(const Matrix& base, Eigen::Index m, bool reverse) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  if (reverse) std::reverse(order.begin(), order.end());
  Matrix span = base;
  int r = linalg::rank(span);
  std::vector<Eigen::Index> chosen;
  for (const auto i : order) {
    const Matrix e = unit_columns(m, {i});
    const Matrix next = linalg::sum(span, e);
    const int rn = linalg::rank(next);
    if (rn > r) {
      chosen.push_back(i);
      span = next;
      r = rn;
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return unit_columns(m, chosen);
}

// Columns of `cols` that are independent modulo span(modulo).
Matrix independent_mod(const Matrix& cols, const Matrix& modulo) {
  const Eigen::Index m = cols.rows();
  Matrix span = modulo.cols() > 0 ? linalg::orth(modulo) : linalg::empty(m);
  int r = static_cast<int>(span.cols());
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    const Matrix next = linalg::sum(span, cols.col(j));
    const int rn = linalg::rank(next);
    if (rn > r) {
      keep.push_back(j);
      span = next;
      r = rn;
    }
  }
  Matrix out(m, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = cols.col(keep[j]);
  return out;
}

Membership combine_verdicts(Membership a, Membership b) {
  if (a == Membership::NotMember || b == Membership::NotMember) return Membership::NotMember;
  if (a == Membership::Boundary || b == Membership::Boundary) return Membership::Boundary;
  return Membership::Member;
}

// Membership of one table column on one side. Columns without a tail are
// sequence components; their reference profile decides numerically.
MembershipResult column_membership(const OperatorModel& model, const MonomialTable& table, std::size_t j,
                                   const ThetaQ& tq, Side side) {
  const double e = side == Side::Zero ? table.zero_exp[j] : table.inf_exp[j];
  if (!std::isnan(e)) return membership_from_tail(e, tq, side);
  // Sequence columns are appended in component order; find the matching one.
  std::size_t seen = 0;
  for (std::size_t jj = 0; jj < j; ++jj) seen += std::isnan(table.zero_exp[jj]) ? 1 : 0;
  for (const auto& c : model.couple_x.components) {
    if (const auto* seq = std::get_if<SequenceCouple>(&c.kind)) {
      if (seq->profile.has_tails()) continue;
      if (seen == 0) return half_norm_membership(seq->profile, tq, side);
      --seen;
    }
  }
  MembershipResult out;
  out.verdict = Membership::Boundary;
  out.boundary = true;
  return out;
}

struct Context {
  const OperatorModel& model;
  const KernelSplit& split;
  DyadicGrid grid;
};

IndexSet undetermined_set(IndexSource source) {
  IndexSet s;
  s.source = source;
  for (auto* e : {&s.alpha, &s.beta, &s.alpha0, &s.beta0, &s.alpha_inf, &s.beta_inf}) e->determined = false;
  return s;
}

// Indices of span(omega) in the quotient by span(modulo).
IndexSet subspace_indices(const Context& ctx, const Matrix& omega, const Matrix& modulo) {
  const Eigen::Index m = rows_of(ctx.split);
  const Matrix mod = modulo.cols() > 0 ? modulo : linalg::empty(m);
  if (ctx.split.table.exact) return algebraic_indices(ctx.split.table, omega, mod);
  if (linalg::rank(linalg::sum(omega, mod)) == linalg::rank(mod)) return IndexSet::empty();
  if (mod.cols() > 0) return undetermined_set(IndexSource::Sampled);
  const auto sample = make_subspace_sample(ctx.model.couple_x, realize(ctx.model, linalg::orth(omega)), ctx.grid);
  return indices_of_subspace(sample);
}

enum class SideCheck { Pass, Fail, Near, Unknown };

SideCheck check_side(const IndexEntry& e, double tolerance, double theta, bool below) {
  if (!e.determined) return SideCheck::Unknown;
  const double gap = below ? theta - e.value : e.value - theta;
  // Exact indices get a determinate tie; estimated ones only a band.
  if (tolerance > 0.0 && std::abs(gap) <= tolerance) return SideCheck::Near;
  if (std::abs(gap) <= kTieTolerance) return SideCheck::Fail;
  return gap > 0.0 ? SideCheck::Pass : SideCheck::Fail;
}

ConditionCheck make_condition(std::string name, std::string lower_label, const IndexEntry& lower,
                              double lower_tol, std::string upper_label, const IndexEntry& upper,
                              double upper_tol, double theta) {
  ConditionCheck c;
  c.name = std::move(name);
  c.lower_label = std::move(lower_label);
  c.upper_label = std::move(upper_label);
  c.lower = lower.value;
  c.upper = upper.value;
  c.theta = theta;
  const auto lo = check_side(lower, lower_tol, theta, true);
  const auto hi = check_side(upper, upper_tol, theta, false);
  c.determined = lo != SideCheck::Unknown && hi != SideCheck::Unknown;
  c.tie = (lower.determined && std::abs(lower.value - theta) <= kTieTolerance) ||
          (upper.determined && std::abs(upper.value - theta) <= kTieTolerance);
  c.near_tie = lo == SideCheck::Near || hi == SideCheck::Near;
  c.holds = lo == SideCheck::Pass && hi == SideCheck::Pass;
  c.clear_failure = lo == SideCheck::Fail || hi == SideCheck::Fail;
  return c;
}

Verdict boundary(std::string why) { return Verdict{VerdictKind::Boundary, 0, 0, std::move(why)}; }

}  // namespace

const char* to_string(EndpointStatus s) {
  switch (s) {
    case EndpointStatus::InvertibleOnEndpoints: return "InvertibleOnEndpoints";
    case EndpointStatus::SurjectiveFredholmOnEndpoints: return "SurjectiveFredholmOnEndpoints";
  }
  return "unknown";
}

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Invertible: return "Invertible";
    case VerdictKind::ClassF1: return "ClassF1";
    case VerdictKind::ClassF2: return "ClassF2";
    case VerdictKind::Fredholm: return "Fredholm";
    case VerdictKind::NotFredholm: return "NotFredholm";
    case VerdictKind::Boundary: return "Boundary";
  }
  return "unknown";
}

std::string Verdict::label() const {
  std::ostringstream out;
  out << to_string(kind);
  switch (kind) {
    case VerdictKind::ClassF1: out << "{dim_ker=" << n << "}"; break;
    case VerdictKind::ClassF2: out << "{codim=" << d << "}"; break;
    case VerdictKind::Fredholm: out << "{n=" << n << ",d=" << d << ",index=" << index() << "}"; break;
    case VerdictKind::NotFredholm:
    case VerdictKind::Boundary: out << "{" << detail << "}"; break;
    case VerdictKind::Invertible: break;
  }
  return out.str();
}

void validate(const OperatorModel& model) {
  if (model.couple_x.size() == 0 && !model.kernel_basis.empty()) {
    throw InputError("operator model: couple has no components");
  }
  for (std::size_t i = 0; i < model.kernel_basis.size(); ++i) {
    const auto& x = model.kernel_basis[i];
    check_compatible(model.couple_x, x);
    if (is_zero(x)) throw InputError("kernel basis element " + std::to_string(i) + " is zero");
    const auto k = k_functional(model.couple_x, x, 1.0);
    if (std::isinf(k.value)) {
      throw InputError("kernel basis element " + std::to_string(i) + " is not in X0+X1: " + k.diagnostic);
    }
  }
  if (model.kernel_basis.empty()) return;
  const auto table = monomial_table(model.couple_x, model.kernel_basis);
  if (linalg::rank(table.coeffs) != static_cast<int>(model.kernel_basis.size())) {
    throw InputError("kernel basis is linearly dependent");
  }
}

KernelSplit split_kernel(const OperatorModel& model, const ThetaQ& tq, const SplitOptions& options) {
  validate(model);
  KernelSplit s;
  const auto m = static_cast<Eigen::Index>(model.kernel_basis.size());
  s.table = monomial_table(model.couple_x, model.kernel_basis);
  s.exact = s.table.exact;
  const std::size_t n = s.table.zero_exp.size();

  std::vector<MembershipResult> col0(n), col1(n);
  std::vector<bool> bad0(n), bad1(n);
  for (std::size_t j = 0; j < n; ++j) {
    col0[j] = column_membership(model, s.table, j, tq, Side::Zero);
    col1[j] = column_membership(model, s.table, j, tq, Side::Inf);
    for (const auto* c : {&col0[j], &col1[j]}) {
      if (c->verdict == Membership::Boundary) {
        s.degenerate = true;
        if (s.degenerate_reason.empty()) s.degenerate_reason = "membership undecided for " + s.table.labels[j];
      }
      if (c->boundary) s.boundary = true;
    }
    bad0[j] = col0[j].verdict != Membership::Member;
    bad1[j] = col1[j].verdict != Membership::Member;
  }

  for (Eigen::Index i = 0; i < m; ++i) {
    ElementMembership em;
    em.zero_side.verdict = em.inf_side.verdict = Membership::Member;
    em.zero_side.analytic = em.inf_side.analytic = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (s.table.coeffs(i, static_cast<Eigen::Index>(j)) == 0.0) continue;
      em.zero_side.verdict = combine_verdicts(em.zero_side.verdict, col0[j].verdict);
      em.inf_side.verdict = combine_verdicts(em.inf_side.verdict, col1[j].verdict);
      em.zero_side.boundary = em.zero_side.boundary || col0[j].boundary;
      em.inf_side.boundary = em.inf_side.boundary || col1[j].boundary;
      em.zero_side.analytic = em.zero_side.analytic && col0[j].analytic;
      em.inf_side.analytic = em.inf_side.analytic && col1[j].analytic;
    }
    s.memberships.push_back(em);
  }

  if (m == 0) {
    s.v0 = s.v1 = s.v01 = s.vtilde = linalg::empty(0);
    return s;
  }
  s.v0 = vanishing_on(s.table, bad0);
  s.v1 = vanishing_on(s.table, bad1);
  std::vector<bool> bad01(n);
  for (std::size_t j = 0; j < n; ++j) bad01[j] = bad0[j] || bad1[j];
  s.v01 = vanishing_on(s.table, bad01);
  s.vtilde = greedy_complement(linalg::sum(s.v0, s.v1), m, options.reverse_complement);

  s.v0_basis = realize(model, s.v0);
  s.v1_basis = realize(model, s.v1);
  s.v01_basis = realize(model, s.v01);
  s.vtilde_basis = realize(model, s.vtilde);
  return s;
}

Classification classify(const OperatorModel& model, const ThetaQ& tq, const ClassifyOptions& options) {
  Classification out;
  out.tq = tq;
  out.split = split_kernel(model, tq, options.split);
  out.necessity_applicable =
      model.effective_status() == EndpointStatus::InvertibleOnEndpoints && !tq.q_infinite();
  const auto& s = out.split;
  const double theta = tq.theta;
  const auto m = static_cast<Eigen::Index>(model.kernel_basis.size());

  if (m == 0) {
    out.verdict = Verdict{VerdictKind::Invertible, 0, 0, {}};
    return out;
  }
  if (s.degenerate) {
    out.verdict = boundary(s.degenerate_reason);
    return out;
  }

  const Context ctx{model, s, options.grid};
  auto indices = [&](const std::string& name, const Matrix& omega, const Matrix& modulo) {
    IndexSet set = subspace_indices(ctx, omega, modulo);
    out.index_sets.push_back({name, set});
    return set;
  };
  auto tol_of = [&](const IndexSet& set) {
    return set.source == IndexSource::Algebraic || set.source == IndexSource::Analytic ||
                   set.source == IndexSource::Empty
               ? 0.0
                                                                                    : std::max(set.tolerance, options.tol);
  };
  auto record = [&](ConditionCheck c) {
    out.conditions.push_back(c);
    return c;
  };
  const int dim = static_cast<int>(m);
  const Matrix all = Matrix::Identity(m, m);
  const Matrix none = linalg::empty(m);

  const IndexSet ker = indices("kernel", all, none);
  const double tk = tol_of(ker);

  const auto surjective = record(make_condition("kernel_surjective", "beta_inf(kernel)", ker.beta_inf, tk,
                                                "alpha0(kernel)", ker.alpha0, tk, theta));
  if (surjective.holds) {
    out.verdict = Verdict{VerdictKind::ClassF1, dim, 0, {}};
    return out;
  }
  const auto injective = record(make_condition("kernel_injective", "beta0(kernel)", ker.beta0, tk,
                                               "alpha_inf(kernel)", ker.alpha_inf, tk, theta));
  if (injective.holds) {
    out.verdict = Verdict{VerdictKind::ClassF2, 0, dim, {}};
    return out;
  }

  const Matrix v01_vt = linalg::sum(s.v01, s.vtilde);
  const bool spans = linalg::rank(linalg::sum(s.v0, s.v1)) == dim;
  std::vector<ConditionCheck> pending;  // inconclusive sufficiency checks
  if (surjective.inconclusive()) pending.push_back(surjective);
  if (injective.inconclusive()) pending.push_back(injective);

  if (spans) {
    const IndexSet i0 = indices("v0", s.v0, none);
    const IndexSet i1 = indices("v1", s.v1, none);
    const auto split = record(make_condition("split_invertible", "beta(v1)", i1.beta, tol_of(i1), "alpha(v0)",
                                             i0.alpha, tol_of(i0), theta));
    if (split.holds) {
      out.verdict = Verdict{VerdictKind::Invertible, 0, 0, {}};
      return out;
    }
    if (split.inconclusive()) pending.push_back(split);
  }

  if (tq.q_infinite()) {
    out.verdict = boundary(pending.empty() ? "sufficient conditions fail and necessity is not established for q = inf"
                                           : pending.front().name + " undecided");
    return out;
  }

  // Factorization conditions: the intersection, the complement modulo the
  // intersection, and the remainder modulo both.
  const IndexSet i01 = indices("v01", s.v01, none);
  const IndexSet ivt = indices("vtilde_mod_v01", s.vtilde, s.v01);
  const IndexSet r0 = indices("v0_mod_v01_vtilde", s.v0, v01_vt);
  const IndexSet r1 = indices("v1_mod_v01_vtilde", s.v1, v01_vt);
  const std::vector<ConditionCheck> chain{
      record(make_condition("intersection_indices", "beta_inf(v01)", i01.beta_inf, tol_of(i01), "alpha0(v01)",
                            i01.alpha0, tol_of(i01), theta)),
      record(make_condition("complement_indices", "beta0(vtilde mod v01)", ivt.beta0, tol_of(ivt),
                            "alpha_inf(vtilde mod v01)", ivt.alpha_inf, tol_of(ivt), theta)),
      record(make_condition("remainder_indices", "beta(v1 mod v01+vtilde)", r1.beta, tol_of(r1),
                            "alpha(v0 mod v01+vtilde)", r0.alpha, tol_of(r0), theta)),
  };
  const bool all_hold = std::all_of(chain.begin(), chain.end(), [](const auto& c) { return c.holds; });
  if (all_hold) {
    const int n = static_cast<int>(s.v01.cols());
    const int d = static_cast<int>(s.vtilde.cols());
    out.verdict = n == 0 && d == 0 ? Verdict{VerdictKind::Invertible, 0, 0, {}} : Verdict{VerdictKind::Fredholm, n, d, {}};
    return out;
  }
  const auto unclear = std::find_if(chain.begin(), chain.end(), [](const auto& c) { return c.inconclusive(); });
  const auto failed = std::find_if(chain.begin(), chain.end(), [](const auto& c) { return c.clear_failure; });
  if (out.necessity_applicable && failed != chain.end()) {
    out.verdict = Verdict{VerdictKind::NotFredholm, 0, 0, failed->name};
    return out;
  }
  if (unclear != chain.end()) {
    out.verdict = boundary(unclear->name + " undecided");
    return out;
  }
  out.verdict = boundary(failed->name + " fails; necessity not established for these endpoint operators");
  return out;
}

OmegaSet omega_set(const OperatorModel& model) {
  OmegaSet out;
  if (model.kernel_basis.empty()) return out;
  validate(model);
  const auto table = monomial_table(model.couple_x, model.kernel_basis);
  const auto dirs = sphere_directions(model.kernel_basis.size());
  const Element zero = zero_element(model.couple_x);
  double lo = -kInf;
  double hi = kInf;
  const DyadicGrid grid = DyadicGrid::from_environment();
  for (const auto& d : dirs) {
    double a = 0.0;
    double b = 1.0;
    if (table.exact) {
      const auto t = tails_of(table, Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size())));
      if (!t.zero || !t.inf) continue;
      a = std::min(*t.zero, *t.inf);
      b = std::max(*t.zero, *t.inf);
    } else {
      const Element x = combine(zero, model.kernel_basis, d);
      if (is_zero(x)) continue;
      const auto s = indices_of_profile(sample_profile(model.couple_x, x, grid));
      if (!s.alpha.determined || !s.beta.determined) continue;
      a = s.alpha.value;
      b = s.beta.value;
    }
    lo = std::max(lo, a);
    hi = std::min(hi, b);
    ++out.samples;
  }
  if (out.samples == 0) return out;
  out.lo = lo;
  out.hi = hi;
  out.empty = lo > hi + kTieTolerance;
  return out;
}

namespace {

KProfile quotient_profile(const OperatorModel& model, const Element& x, const std::vector<Element>& modulo,
                          const FactorizeOptions& options) {
  if (modulo.empty()) {
    auto p = sample_profile(model.couple_x, x, options.grid);
    p.tail0.reset();
    p.tail_inf.reset();
    return p;
  }
  std::vector<double> values;
  for (int k = options.grid.k_min; k <= options.grid.k_max; ++k) {
    values.push_back(quotient_k(model.couple_x, x, modulo, options.grid.t(k), options.quotient).value);
  }
  return KProfile(options.grid, std::move(values), std::nullopt, std::nullopt,
                  equivalence_factor(model.couple_x));
}

// Re-checks one stage on numeric quotient profiles of representative
// elements: `lower_of` must sit below theta for the elements of `lower`,
// `upper_of` above theta for the elements of `upper`.
template <class Lower, class Upper>
void numeric_recheck(FactorStage& stage, const OperatorModel& model, const Matrix& lower, const Matrix& upper,
                     const Matrix& modulo, double theta, const FactorizeOptions& options, Lower lower_of,
                     Upper upper_of) {
  const auto mod_elems = realize(model, modulo.cols() > 0 ? linalg::orth(modulo) : modulo);
  auto run = [&](const Matrix& cols, bool check_lower, bool check_upper) {
    const Matrix reps = independent_mod(cols, modulo);
    for (const auto& x : realize(model, reps)) {
      stage.quotient_profiles.push_back(quotient_profile(model, x, mod_elems, options));
      const IndexSet s = numeric_indices_of_profile(stage.quotient_profiles.back());
      stage.quotient_indices.push_back(s);
      const IndexEntry& lo = lower_of(s);
      const IndexEntry& hi = upper_of(s);
      if (check_lower) stage.numeric_check = stage.numeric_check && lo.determined && lo.value < theta + options.tol;
      if (check_upper) stage.numeric_check = stage.numeric_check && hi.determined && hi.value > theta - options.tol;
    }
  };
  if (&lower == &upper) {
    run(lower, true, true);
  } else {
    run(lower, true, false);
    run(upper, false, true);
  }
}

}  // namespace

FactorizationData factorize(const OperatorModel& model, const ThetaQ& tq, const FactorizeOptions& options) {
  if (tq.q_infinite()) throw InputError("factorize requires 1 <= q < inf");
  FactorizationData f;
  f.split = split_kernel(model, tq, options.split);
  const auto& s = f.split;
  const Eigen::Index m = rows_of(s);
  const Matrix none = linalg::empty(m);
  const double theta = tq.theta;
  const Context ctx{model, s, options.grid};

  f.a1.tag = "F1";
  f.a1.kernel = s.v01;
  f.a1.modulo = none;
  f.a2.tag = "F2";
  f.a2.kernel = s.vtilde;
  f.a2.modulo = s.v01;
  f.a3.tag = "F3";
  f.a3.modulo = m > 0 ? linalg::sum(s.v01, s.vtilde) : none;
  f.a3.kernel = m > 0 ? independent_mod(linalg::sum(s.v0, s.v1), f.a3.modulo) : none;
  for (auto* st : {&f.a1, &f.a2, &f.a3}) st->kernel_basis = realize(model, st->kernel);
  if (m == 0 || s.degenerate) {
    for (auto* st : {&f.a1, &f.a2, &f.a3}) {
      st->kernel_indices = IndexSet::empty();
      st->condition.holds = !s.degenerate;
      st->condition.determined = !s.degenerate;
      st->numeric_check = !s.degenerate;
    }
    return f;
  }

  f.a1.kernel_indices = subspace_indices(ctx, s.v01, none);
  f.a1.condition = make_condition("intersection_indices", "beta_inf(v01)", f.a1.kernel_indices.beta_inf, 0.0,
                                  "alpha0(v01)", f.a1.kernel_indices.alpha0, 0.0, theta);
  numeric_recheck(f.a1, model, s.v01, s.v01, none, theta, options,
                  [](const IndexSet& x) -> const IndexEntry& { return x.beta_inf; },
                  [](const IndexSet& x) -> const IndexEntry& { return x.alpha0; });

  f.a2.kernel_indices = subspace_indices(ctx, s.vtilde, s.v01);
  f.a2.condition = make_condition("complement_indices", "beta0(vtilde mod v01)", f.a2.kernel_indices.beta0, 0.0,
                                  "alpha_inf(vtilde mod v01)", f.a2.kernel_indices.alpha_inf, 0.0, theta);
  numeric_recheck(f.a2, model, s.vtilde, s.vtilde, s.v01, theta, options,
                  [](const IndexSet& x) -> const IndexEntry& { return x.beta0; },
                  [](const IndexSet& x) -> const IndexEntry& { return x.alpha_inf; });

  const IndexSet r0 = subspace_indices(ctx, s.v0, f.a3.modulo);
  const IndexSet r1 = subspace_indices(ctx, s.v1, f.a3.modulo);
  f.a3.kernel_indices = subspace_indices(ctx, f.a3.kernel, f.a3.modulo);
  f.a3.condition = make_condition("remainder_indices", "beta(v1 mod v01+vtilde)", r1.beta, 0.0,
                                  "alpha(v0 mod v01+vtilde)", r0.alpha, 0.0, theta);
  numeric_recheck(f.a3, model, s.v1, s.v0, f.a3.modulo, theta, options,
                  [](const IndexSet& x) -> const IndexEntry& { return x.beta; },
                  [](const IndexSet& x) -> const IndexEntry& { return x.alpha; });
  return f;
}

OperatorModel reduce_to_surjective(const OperatorModel& model, int dim0, int dim1) {
  if (dim0 < 0 || dim1 < 0) throw InputError("complement dimensions must be nonnegative");
  OperatorModel out = model;
  if (dim0 == 0 && dim1 == 0) return out;
  out.complement_dim0 += dim0;
  out.complement_dim1 += dim1;
  if (!out.reduced_from) out.reduced_from = model.endpoint_status;
  out.endpoint_status = EndpointStatus::SurjectiveFredholmOnEndpoints;
  return out;
}

}  // namespace interkernel

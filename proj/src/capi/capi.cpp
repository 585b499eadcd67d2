#include "interkernel/interkernel.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <sstream>
#include <string>

#include "report.hpp"

using namespace interkernel;

struct ik_model {
  OperatorModel model;
};

struct ik_report {
  std::string json;
  std::string csv;
  bool has_csv = false;
  bool any_boundary = false;
  bool any_failure = false;
};

namespace {

thread_local std::string g_last_error;

template <class F>
ik_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return IK_OK;
  } catch (const InputError& e) {
    g_last_error = e.what();
    return IK_ERR_INPUT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return IK_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return IK_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return IK_ERR_INTERNAL;
  }
}

ik_status null_arg(const char* name) {
  g_last_error = std::string("argument '") + name + "' is NULL";
  return IK_ERR_NULL;
}

ik_options defaults() {
  ik_options o;
  const auto g = DyadicGrid::from_environment();
  o.grid_kmin = g.k_min;
  o.grid_kmax = g.k_max;
  o.tol = 1e-6;
  o.seed = 1;
  return o;
}

ik_options resolve(const ik_options* options) { return options ? *options : defaults(); }

DyadicGrid grid_of(const ik_options& o) { return DyadicGrid(o.grid_kmin, o.grid_kmax); }

ik_model* wrap(OperatorModel m) { return new ik_model{std::move(m)}; }

std::string profiles_csv(const OperatorModel& m, const DyadicGrid& grid) {
  std::ostringstream out;
  out << "element,k,t,K\n";
  for (std::size_t i = 0; i < m.kernel_basis.size(); ++i) {
    const auto p = sample_profile(m.couple_x, m.kernel_basis[i], grid);
    for (int k = grid.k_min; k <= grid.k_max; ++k) {
      out << i << ',' << k << ',' << format_double(grid.t(k)) << ',' << format_double(p.at(k)) << '\n';
    }
  }
  return out.str();
}

}  // namespace

extern "C" {

ik_status ik_options_init(ik_options* options) {
  if (!options) return null_arg("options");
  return guarded([&] { *options = defaults(); });
}

const char* ik_last_error(void) { return g_last_error.c_str(); }

const char* ik_version(void) { return "1.0.0"; }

ik_status ik_model_hardy(const char* spec, double p, ik_model** out) {
  if (!spec) return null_arg("spec");
  if (!out) return null_arg("out");
  return guarded([&] { *out = wrap(hardy_operator(HardyModel::parse(spec, p))); });
}

ik_status ik_model_hardy_product(const char* const* specs, size_t n, double p, ik_model** out) {
  if (!specs) return null_arg("specs");
  if (!out) return null_arg("out");
  return guarded([&] {
    std::vector<HardyModel> models;
    for (size_t i = 0; i < n; ++i) {
      if (!specs[i]) throw InputError("hardy product: factor " + std::to_string(i) + " is NULL");
      models.push_back(HardyModel::parse(specs[i], p));
    }
    *out = wrap(hardy_product_operator(models));
  });
}

ik_status ik_model_strip(const char* spec, ik_model** out) {
  if (!spec) return null_arg("spec");
  if (!out) return null_arg("out");
  return guarded([&] { *out = wrap(strip_operator(StripModel::parse(spec))); });
}

ik_status ik_model_a_theta(double theta, ik_model** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    if (!(theta > 0.0 && theta < 1.0)) throw InputError("theta must lie in (0,1)");
    OperatorModel m;
    m.couple_x = ProductCouple::single(CoupleDescriptor{ReferenceL1{}});
    m.kernel_basis = {Element{a_theta_element(theta)}};
    std::ostringstream label;
    label << "a_theta element, theta=" << theta;
    m.label = label.str();
    *out = wrap(std::move(m));
  });
}

ik_status ik_model_from_json(const char* json, const ik_options* options, ik_model** out) {
  if (!json) return null_arg("json");
  if (!out) return null_arg("out");
  return guarded([&] { *out = wrap(model_from_json_text(json, grid_of(resolve(options)))); });
}

ik_status ik_model_reduce(const ik_model* model, int dim0, int dim1, ik_model** out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] { *out = wrap(reduce_to_surjective(model->model, dim0, dim1)); });
}

ik_status ik_model_kernel_dim(const ik_model* model, size_t* out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  *out = model->model.kernel_basis.size();
  return IK_OK;
}

ik_status ik_model_critical_thetas(const ik_model* model, double* out, size_t capacity, size_t* count) {
  if (!model) return null_arg("model");
  if (!count) return null_arg("count");
  if (!out && capacity > 0) return null_arg("out");
  return guarded([&] {
    std::vector<double> found;
    const auto& m = model->model;
    if (!m.kernel_basis.empty()) {
      const auto table = monomial_table(m.couple_x, m.kernel_basis);
      for (const auto* exps : {&table.zero_exp, &table.inf_exp}) {
        for (const double e : *exps) {
          if (e > 0.0 && e < 1.0) found.push_back(e);
        }
      }
    }
    std::sort(found.begin(), found.end());
    std::vector<double> unique;
    for (const double e : found) {
      if (unique.empty() || e - unique.back() > kTieTolerance) unique.push_back(e);
    }
    *count = unique.size();
    for (size_t i = 0; i < unique.size() && i < capacity; ++i) out[i] = unique[i];
  });
}

void ik_model_free(ik_model* model) { delete model; }

ik_status ik_classify(const ik_model* model, const double* thetas, size_t n, double q, const ik_options* options,
                      ik_report** out) {
  if (!model) return null_arg("model");
  if (!thetas && n > 0) return null_arg("thetas");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto o = resolve(options);
    ClassifyOptions co;
    co.tol = o.tol;
    co.grid = grid_of(o);
    auto r = std::make_unique<ik_report>();
    std::vector<SweepRow> rows;
    Json results = Json::array();
    for (size_t i = 0; i < n; ++i) {
      const ThetaQ tq(thetas[i], q);
      rows.push_back({thetas[i], classify(model->model, tq, co)});
      results.push_back(classification_json(model->model, rows.back().classification));
      if (rows.back().classification.verdict.kind == VerdictKind::Boundary) r->any_boundary = true;
    }
    Json j;
    j["command"] = "classify";
    j["model"] = model->model.label;
    j["q"] = number(q);
    j["results"] = results;
    r->json = j.dump(2) + "\n";
    r->csv = sweep_csv(rows);
    r->has_csv = true;
    *out = r.release();
  });
}

ik_status ik_indices(const ik_model* model, const ik_options* options, ik_report** out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& m = model->model;
    const auto grid = grid_of(resolve(options));
    auto r = std::make_unique<ik_report>();
    Json elems = Json::array();
    for (std::size_t i = 0; i < m.kernel_basis.size(); ++i) {
      const auto p = sample_profile(m.couple_x, m.kernel_basis[i], grid);
      const auto s = indices_of_profile(p);
      Json e;
      e["element"] = i;
      e["indices"] = index_set_json(s);
      e["invariant_violations"] = s.check_invariants();
      e["profile_violations"] = p.check_invariants(1e-9);
      elems.push_back(e);
    }
    IndexSet kernel = IndexSet::empty();
    if (!m.kernel_basis.empty()) {
      const auto table = monomial_table(m.couple_x, m.kernel_basis);
      const auto dim = static_cast<Eigen::Index>(m.kernel_basis.size());
      if (table.exact) {
        kernel = algebraic_indices(table, linalg::Matrix::Identity(dim, dim), linalg::empty(dim));
      } else {
        kernel = indices_of_subspace(make_subspace_sample(m.couple_x, m.kernel_basis, grid));
      }
    }
    const auto omega = omega_set(m);
    Json j;
    j["command"] = "indices";
    j["model"] = m.label;
    j["elements"] = elems;
    j["kernel"] = index_set_json(kernel);
    j["omega"] = omega.empty ? Json(nullptr) : Json::array({number(omega.lo), number(omega.hi)});
    r->json = j.dump(2) + "\n";
    r->csv = profiles_csv(m, grid);
    r->has_csv = true;
    *out = r.release();
  });
}

ik_status ik_kfun(const ik_model* model, const ik_options* options, ik_report** out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto& m = model->model;
    const auto grid = grid_of(resolve(options));
    auto r = std::make_unique<ik_report>();
    Json elems = Json::array();
    for (std::size_t i = 0; i < m.kernel_basis.size(); ++i) {
      Json e;
      e["element"] = i;
      e["profile"] = profile_json(sample_profile(m.couple_x, m.kernel_basis[i], grid));
      elems.push_back(e);
    }
    Json j;
    j["command"] = "kfun";
    j["model"] = m.label;
    j["equivalence_factor"] = number(equivalence_factor(m.couple_x));
    j["elements"] = elems;
    r->json = j.dump(2) + "\n";
    r->csv = profiles_csv(m, grid);
    r->has_csv = true;
    *out = r.release();
  });
}

ik_status ik_factorize(const ik_model* model, double theta, double q, const ik_options* options, ik_report** out) {
  if (!model) return null_arg("model");
  if (!out) return null_arg("out");
  (void)options;
  return guarded([&] {
    FactorizeOptions fo;
    const auto f = factorize(model->model, ThetaQ(theta, q), fo);
    auto r = std::make_unique<ik_report>();
    Json j = factorization_json(model->model, f);
    j = Json{{"command", "factorize"}, {"theta", number(theta)}, {"q", number(q)}, {"result", j}};
    r->json = j.dump(2) + "\n";
    std::ostringstream csv;
    csv << "factor,tag,kernel_dim,modulo_dim,condition,holds,numeric_check\n";
    const FactorStage* stages[] = {&f.a1, &f.a2, &f.a3};
    for (int i = 0; i < 3; ++i) {
      const auto& s = *stages[i];
      csv << "A" << i + 1 << ',' << s.tag << ',' << s.kernel.cols() << ',' << s.modulo.cols() << ','
          << s.condition.name << ',' << (s.condition.holds ? 1 : 0) << ',' << (s.numeric_check ? 1 : 0) << '\n';
      if (!s.numeric_check) r->any_failure = true;
    }
    r->csv = csv.str();
    r->has_csv = true;
    r->any_boundary = f.split.degenerate;
    *out = r.release();
  });
}

ik_status ik_seqcheck(int count, double theta, double q, double e0, double einf, const ik_options* options,
                      ik_report** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    if (count < 1) throw InputError("count must be positive");
    const auto o = resolve(options);
    auto r = std::make_unique<ik_report>();
    const std::vector<double> thetas{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const std::vector<double> qs{1.0, 2.0, kInf};
    const SuiteResult suites[] = {suite_s_minus_i_t0(o.seed, count), suite_t0_equals_t1(o.seed, count),
                                  suite_calderon_bound(o.seed, count, thetas, qs)};
    Json js = Json::array();
    std::ostringstream csv;
    csv << "suite,cases,failures,max_ratio\n";
    for (const auto& s : suites) {
      js.push_back(suite_json(s));
      csv << '"' << s.name << "\"," << s.cases << ',' << s.failures << ',' << format_double(s.max_ratio) << '\n';
      if (!s.passed()) r->any_failure = true;
    }
    Json j;
    j["command"] = "seqcheck";
    j["seed"] = o.seed;
    j["suites"] = js;
    if (theta > 0.0) {
      const ThetaQ tq(theta, q);
      const auto profile = KProfile::two_power(grid_of(o), e0, einf);
      const auto criterion = s_minus_i_invertibility(profile, tq, o.tol);
      const auto g0 = truncated_norm_growth(PartialSumOp::T0, profile, tq);
      const auto g1 = truncated_norm_growth(PartialSumOp::T1, profile, tq);
      const auto from_growth = invertibility_from_growth(g0, g1);
      const bool agree = criterion.verdict == from_growth;
      if (!agree) r->any_failure = true;
      if (criterion.boundary) r->any_boundary = true;
      Json g;
      g["theta"] = number(theta);
      g["q"] = number(q);
      g["profile_exponents"] = {number(e0), number(einf)};
      g["criterion"] = to_string(criterion.verdict);
      g["criterion_boundary"] = criterion.boundary;
      g["indices"] = index_set_json(criterion.indices);
      g["growth_verdict"] = to_string(from_growth);
      g["agree"] = agree;
      g["T0"] = growth_json(g0);
      g["T1"] = growth_json(g1);
      j["growth"] = g;
    }
    r->json = j.dump(2) + "\n";
    r->csv = csv.str();
    r->has_csv = true;
    *out = r.release();
  });
}

const char* ik_report_text(const ik_report* report, ik_format format) {
  if (!report) return nullptr;
  if (format == IK_FORMAT_JSON) return report->json.c_str();
  if (format == IK_FORMAT_CSV && report->has_csv) return report->csv.c_str();
  return nullptr;
}

int ik_report_any_boundary(const ik_report* report) { return report && report->any_boundary ? 1 : 0; }

int ik_report_any_failure(const ik_report* report) { return report && report->any_failure ? 1 : 0; }

void ik_report_free(ik_report* report) { delete report; }

}  // extern "C"

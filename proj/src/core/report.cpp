#include "report.hpp"

#include <sstream>

namespace interkernel {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field ") + key);
  return *it;
}

double as_number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  fail(path, "expected a number");
}

double number_field(const Json& j, const char* key, const std::string& path) {
  return as_number(field(j, key, path), path + "." + key);
}

PowerWeight weight_from_json(const Json& j, const std::string& path) {
  const double scale = j.is_object() && j.contains("scale") ? number_field(j, "scale", path) : 1.0;
  try {
    return PowerWeight(number_field(j, "a0", path), number_field(j, "ainf", path), scale);
  } catch (const InputError& e) {
    if (std::string(e.what()).rfind(path, 0) == 0) throw;
    fail(path, e.what());
  }
}

KProfile profile_from_json(const Json& j, const std::string& path, const DyadicGrid& grid) {
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("power")) return KProfile::power(grid, number_field(j, "power", path));
  if (j.contains("two_power")) {
    const auto& e = j.at("two_power");
    if (!e.is_array() || e.size() != 2) fail(path + ".two_power", "expected [e0, einf]");
    return KProfile::two_power(grid, as_number(e[0], path + ".two_power[0]"), as_number(e[1], path + ".two_power[1]"));
  }
  const int kmin = static_cast<int>(number_field(j, "kmin", path));
  const auto& vals = field(j, "values", path);
  if (!vals.is_array() || vals.size() < 2) fail(path + ".values", "expected at least two values");
  std::vector<double> v;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    v.push_back(as_number(vals[i], path + ".values[" + std::to_string(i) + "]"));
  }
  std::optional<double> t0;
  std::optional<double> ti;
  if (j.contains("tail0")) t0 = number_field(j, "tail0", path);
  if (j.contains("tail_inf")) ti = number_field(j, "tail_inf", path);
  std::optional<KProfile> p;
  try {
    p.emplace(DyadicGrid(kmin, kmin + static_cast<int>(v.size()) - 1), std::move(v), t0, ti);
  } catch (const InputError& e) {
    fail(path, e.what());
  }
  if (const auto bad = p->check_invariants(1e-9); !bad.empty()) fail(path, bad);
  return *p;
}

CoupleDescriptor component_from_json(const Json& j, const std::string& path, const DyadicGrid& grid) {
  const auto& kind = field(j, "kind", path);
  if (!kind.is_string()) fail(path + ".kind", "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "reference_l1") return CoupleDescriptor{ReferenceL1{}};
  if (k == "sequence") return CoupleDescriptor{SequenceCouple{profile_from_json(field(j, "profile", path), path + ".profile", grid)}};
  if (k == "weighted_lp") {
    const double p = number_field(j, "p", path);
    if (!(p >= 1.0) || std::isinf(p)) fail(path + ".p", "must satisfy 1 <= p < inf");
    return make_weighted_lp(p, weight_from_json(field(j, "w0", path), path + ".w0"),
                            weight_from_json(field(j, "w1", path), path + ".w1"));
  }
  fail(path + ".kind", "unknown couple kind '" + k + "'");
}

PiecewisePowerFunction function_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of segments");
  std::vector<Segment> segs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string sp = path + "[" + std::to_string(i) + "]";
    Segment s;
    s.lo = number_field(j[i], "lo", sp);
    s.hi = number_field(j[i], "hi", sp);
    const auto& terms = field(j[i], "terms", sp);
    if (!terms.is_array()) fail(sp + ".terms", "expected an array");
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string tp = sp + ".terms[" + std::to_string(t) + "]";
      if (!terms[t].is_array() || terms[t].size() != 2) fail(tp, "expected [coeff, exponent]");
      s.terms.push_back({as_number(terms[t][0], tp + "[0]"), as_number(terms[t][1], tp + "[1]")});
    }
    segs.push_back(std::move(s));
  }
  try {
    return PiecewisePowerFunction(std::move(segs));
  } catch (const InputError& e) {
    fail(path, e.what());
  }
}

Json matrix_json(const linalg::Matrix& m) {
  Json cols = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Json col = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) col.push_back(number(m(r, c)));
    cols.push_back(col);
  }
  return cols;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "Member";
    case Membership::NotMember: return "NotMember";
    case Membership::Boundary: return "Boundary";
  }
  return "unknown";
}

Json entry_json(const IndexEntry& e) {
  Json j;
  j["value"] = number(e.value);
  j["gamma"] = e.gamma ? number(*e.gamma) : Json(nullptr);
  j["determined"] = e.determined;
  return j;
}

Json condition_json(const ConditionCheck& c) {
  Json j;
  j["name"] = c.name;
  j["inequality"] = c.lower_label + " < theta < " + c.upper_label;
  j["lower"] = number(c.lower);
  j["theta"] = number(c.theta);
  j["upper"] = number(c.upper);
  j["holds"] = c.holds;
  j["determined"] = c.determined;
  j["tie"] = c.tie;
  j["near_tie"] = c.near_tie;
  return j;
}

Json split_json(const KernelSplit& s) {
  Json j;
  j["exact"] = s.exact;
  j["boundary"] = s.boundary;
  j["degenerate"] = s.degenerate;
  if (s.degenerate) j["degenerate_reason"] = s.degenerate_reason;
  j["dims"] = {{"kernel", s.table.coeffs.rows()}, {"v0", s.v0.cols()},         {"v1", s.v1.cols()},
               {"v01", s.v01.cols()},            {"vtilde", s.vtilde.cols()}};
  Json cols = Json::array();
  for (std::size_t i = 0; i < s.table.labels.size(); ++i) {
    cols.push_back({{"monomial", s.table.labels[i]},
                    {"zero_exponent", number(s.table.zero_exp[i])},
                    {"inf_exponent", number(s.table.inf_exp[i])}});
  }
  j["monomials"] = cols;
  Json mem = Json::array();
  for (std::size_t i = 0; i < s.memberships.size(); ++i) {
    const auto& m = s.memberships[i];
    mem.push_back({{"element", i},
                   {"zero_side", to_string(m.zero_side.verdict)},
                   {"inf_side", to_string(m.inf_side.verdict)},
                   {"boundary", m.zero_side.boundary || m.inf_side.boundary},
                   {"analytic", m.zero_side.analytic && m.inf_side.analytic}});
  }
  j["memberships"] = mem;
  j["v0"] = matrix_json(s.v0);
  j["v1"] = matrix_json(s.v1);
  j["v01"] = matrix_json(s.v01);
  j["vtilde"] = matrix_json(s.vtilde);
  return j;
}

Json stage_json(const FactorStage& st) {
  Json j;
  j["tag"] = st.tag;
  j["kernel_dim"] = st.kernel.cols();
  j["modulo_dim"] = st.modulo.cols();
  j["kernel"] = matrix_json(st.kernel);
  j["kernel_indices"] = index_set_json(st.kernel_indices);
  j["condition"] = condition_json(st.condition);
  j["numeric_check"] = st.numeric_check;
  Json q = Json::array();
  for (std::size_t i = 0; i < st.quotient_profiles.size(); ++i) {
    q.push_back({{"indices", index_set_json(st.quotient_indices[i])}, {"profile", profile_json(st.quotient_profiles[i])}});
  }
  j["quotient_elements"] = q;
  return j;
}

}  // namespace

Json number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

OperatorModel model_from_json(const Json& j, const DyadicGrid& grid) {
  const std::string root = "model";
  if (!j.is_object()) fail(root, "expected an object");
  OperatorModel m;
  if (j.contains("label")) {
    if (!j["label"].is_string()) fail(root + ".label", "expected a string");
    m.label = j["label"].get<std::string>();
  }
  if (j.contains("endpoint_status")) {
    const auto& s = j["endpoint_status"];
    const std::string v = s.is_string() ? s.get<std::string>() : "";
    if (v == "InvertibleOnEndpoints") {
      m.endpoint_status = EndpointStatus::InvertibleOnEndpoints;
    } else if (v == "SurjectiveFredholmOnEndpoints") {
      m.endpoint_status = EndpointStatus::SurjectiveFredholmOnEndpoints;
    } else {
      fail(root + ".endpoint_status", "expected InvertibleOnEndpoints or SurjectiveFredholmOnEndpoints");
    }
  }
  const auto& couple = field(j, "couple", root);
  if (!couple.is_array() || couple.empty()) fail(root + ".couple", "expected a nonempty array of components");
  std::vector<CoupleDescriptor> comps;
  for (std::size_t i = 0; i < couple.size(); ++i) {
    comps.push_back(component_from_json(couple[i], root + ".couple[" + std::to_string(i) + "]", grid));
  }
  try {
    m.couple_x = ProductCouple(std::move(comps));
  } catch (const InputError& e) {
    fail(root + ".couple", e.what());
  }
  const auto& kernel = field(j, "kernel", root);
  if (!kernel.is_array()) fail(root + ".kernel", "expected an array");
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const std::string kp = root + ".kernel[" + std::to_string(i) + "]";
    const auto& x = kernel[i];
    if (!x.is_array() || x.size() != m.couple_x.size()) fail(kp, "expected one value per couple component");
    Element e;
    for (std::size_t c = 0; c < x.size(); ++c) {
      const std::string cp = kp + "[" + std::to_string(c) + "]";
      if (m.couple_x.components[c].is_sequence()) {
        e.emplace_back(as_number(x[c], cp));
      } else {
        e.emplace_back(function_from_json(x[c], cp));
      }
    }
    m.kernel_basis.push_back(std::move(e));
  }
  try {
    validate(m);
  } catch (const InputError& e) {
    fail(root + ".kernel", e.what());
  }
  return m;
}

OperatorModel model_from_json_text(const std::string& text, const DyadicGrid& grid) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("model: malformed JSON: ") + e.what());
  }
  return model_from_json(j, grid);
}

Json index_set_json(const IndexSet& s) {
  Json j;
  j["source"] = to_string(s.source);
  j["tolerance"] = number(s.tolerance);
  j["alpha"] = entry_json(s.alpha);
  j["beta"] = entry_json(s.beta);
  j["alpha0"] = entry_json(s.alpha0);
  j["beta0"] = entry_json(s.beta0);
  j["alpha_inf"] = entry_json(s.alpha_inf);
  j["beta_inf"] = entry_json(s.beta_inf);
  return j;
}

Json profile_json(const KProfile& p) {
  Json j;
  j["kmin"] = p.grid.k_min;
  j["kmax"] = p.grid.k_max;
  j["tail0"] = p.tail0 ? number(*p.tail0) : Json(nullptr);
  j["tail_inf"] = p.tail_inf ? number(*p.tail_inf) : Json(nullptr);
  j["equivalence_factor"] = number(p.equivalence_factor);
  Json v = Json::array();
  for (const double x : p.values) v.push_back(number(x));
  j["values"] = v;
  return j;
}

Json verdict_json(const Verdict& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["label"] = v.label();
  j["n"] = v.n;
  j["d"] = v.d;
  j["index"] = v.index();
  j["detail"] = v.detail;
  return j;
}

Json classification_json(const OperatorModel& model, const Classification& c) {
  Json j;
  j["model"] = model.label;
  j["endpoint_status"] = to_string(model.endpoint_status);
  j["effective_endpoint_status"] = to_string(model.effective_status());
  j["complement_dims"] = {model.complement_dim0, model.complement_dim1};
  j["theta"] = number(c.tq.theta);
  j["q"] = number(c.tq.q);
  j["verdict"] = verdict_json(c.verdict);
  j["necessity_applicable"] = c.necessity_applicable;
  Json conds = Json::array();
  for (const auto& cc : c.conditions) conds.push_back(condition_json(cc));
  j["conditions"] = conds;
  Json sets = Json::array();
  for (const auto& s : c.index_sets) {
    Json e = index_set_json(s.indices);
    e["name"] = s.name;
    sets.push_back(e);
  }
  j["index_sets"] = sets;
  j["split"] = split_json(c.split);
  return j;
}

Json factorization_json(const OperatorModel& model, const FactorizationData& f) {
  Json j;
  j["model"] = model.label;
  j["split"] = split_json(f.split);
  j["A1"] = stage_json(f.a1);
  j["A2"] = stage_json(f.a2);
  j["A3"] = stage_json(f.a3);
  return j;
}

Json growth_json(const GrowthReport& g) {
  Json j;
  j["operator"] = g.op == PartialSumOp::T0 ? "T0" : "T1";
  j["verdict"] = to_string(g.verdict);
  j["last_ratio"] = number(g.last_ratio);
  Json rows = Json::array();
  for (std::size_t i = 0; i < g.windows.size(); ++i) {
    rows.push_back({{"N", g.windows[i]}, {"log2_norm", number(g.log2_norms[i])}, {"lower_bound", static_cast<bool>(g.lower_bound[i])}});
  }
  j["windows"] = rows;
  return j;
}

Json suite_json(const SuiteResult& s) {
  Json j;
  j["suite"] = s.name;
  j["cases"] = s.cases;
  j["failures"] = s.failures;
  j["passed"] = s.passed();
  if (s.max_ratio > 0.0) j["max_ratio"] = number(s.max_ratio);
  if (!s.first_failure.empty()) j["first_failure"] = s.first_failure;
  return j;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "theta,verdict,n,d,index,detail\n";
  for (const auto& r : rows) {
    const auto& v = r.classification.verdict;
    out << format_double(r.theta) << ',' << to_string(v.kind) << ',' << v.n << ',' << v.d << ',' << v.index() << ",\""
        << v.detail << "\"\n";
  }
  return out.str();
}

}  // namespace interkernel

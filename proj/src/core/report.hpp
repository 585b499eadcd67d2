#pragma once

// JSON operator descriptors and JSON/CSV reports.

#include <string>
#include <vector>

#include <json.hpp>

#include "fredholm_classifier.hpp"
#include "seq_suites.hpp"
#include "sequence_ops.hpp"
#include "worked_examples.hpp"

namespace interkernel {

using Json = nlohmann::ordered_json;

/// Finite numbers as numbers, infinities as "inf"/"-inf", NaN as null.
Json number(double v);

/// Operator descriptor:
///   {"label": "...", "endpoint_status": "InvertibleOnEndpoints",
///    "couple": [component, ...], "kernel": [[value per component], ...]}
/// component: {"kind": "weighted_lp", "p": 2, "w0": {"a0":..,"ainf":..},
///             "w1": {...}} | {"kind": "reference_l1"} |
///            {"kind": "sequence", "profile": {"power": e} |
///             {"two_power": [e0, einf]} | {"kmin": k, "values": [...]}}
/// value: a number for sequence components, otherwise a function
///        [{"lo": 0, "hi": "inf", "terms": [[coeff, exponent], ...]}, ...].
/// Errors name the offending field path.
OperatorModel model_from_json(const Json& j, const DyadicGrid& grid = DyadicGrid::from_environment());
OperatorModel model_from_json_text(const std::string& text, const DyadicGrid& grid = DyadicGrid::from_environment());

Json index_set_json(const IndexSet& s);
Json profile_json(const KProfile& p);
Json verdict_json(const Verdict& v);
Json classification_json(const OperatorModel& model, const Classification& c);
Json factorization_json(const OperatorModel& model, const FactorizationData& f);
Json growth_json(const GrowthReport& g);
Json suite_json(const SuiteResult& s);

struct SweepRow {
  double theta = 0.0;
  Classification classification;
};

/// theta,verdict,n,d,index,detail
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace interkernel

#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "infogeo/divergence.hpp"
#include "infogeo/fisher.hpp"
#include "infogeo/geometry.hpp"
#include "infogeo/quadrature.hpp"

namespace infogeo {

using Json = nlohmann::ordered_json;

inline Json to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const QuadratureSpec& spec) {
  return Json{{"scheme", to_string(spec.scheme)},
              {"nodes", spec.nodes_per_axis},
              {"radius", spec.truncation_radius},
              {"center", spec.center},
              {"scale", spec.envelope_scale}};
}

inline QuadratureSpec quadrature_spec_from_json(const Json& j) {
  QuadratureSpec spec;
  spec.scheme = quad_scheme_from_string(j.at("scheme").get<std::string>());
  spec.nodes_per_axis = j.at("nodes").get<int>();
  spec.truncation_radius = j.at("radius").get<double>();
  if (j.contains("center")) {
    spec.center = j.at("center").get<std::vector<double>>();
  }
  if (j.contains("scale")) spec.envelope_scale = j.at("scale").get<double>();
  if (spec.nodes_per_axis < 2) {
    throw std::invalid_argument("QuadratureSpec: nodes must be >= 2");
  }
  if (!(spec.truncation_radius > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: radius must be > 0");
  }
  if (!(spec.envelope_scale > 0.0)) {
    throw std::invalid_argument("QuadratureSpec: scale must be > 0");
  }
  return spec;
}

inline Json to_json(const IntegralResult& r) {
  return Json{{"value_re", r.value.real()},
              {"value_im", r.value.imag()},
              {"node_count", r.node_count},
              {"scheme", to_string(r.scheme_used)},
              {"estimated_error", r.estimated_error}};
}

inline Json to_json(const MetricTensor& g) {
  return Json{{"entries", to_json(g.entries)},
              {"backend", to_string(g.backend)},
              {"rescale_factor", g.rescale_factor},
              {"max_imag_discarded", g.max_imag_discarded},
              {"max_asym_discarded", g.max_asym_discarded}};
}

inline Json to_json(const MonteCarloEstimate& est) {
  Json j = to_json(est.metric);
  j["sample_count"] = est.sample_count;
  j["standard_errors"] = to_json(est.standard_errors);
  j["seed"] = est.seed;
  return j;
}

inline Json to_json(const SignatureReport& rep) {
  return Json{{"n_negative", rep.n_negative},
              {"n_zero", rep.n_zero},
              {"n_positive", rep.n_positive},
              {"eigenvalues", rep.eigenvalues},
              {"zero_tolerance", rep.zero_tolerance}};
}

inline Json to_json(const IntervalResult& r) {
  return Json{{"s_squared", r.s_squared},
              {"classification", to_string(r.classification)},
              {"magnitude", r.magnitude}};
}

inline Json to_json(const LorentzianReport& rep) {
  Json constraints = Json::array();
  for (const auto& c : rep.constraints) {
    constraints.push_back(Json{{"row", c.row},
                               {"col", c.col},
                               {"target", c.target},
                               {"value", c.value},
                               {"residual", c.residual}});
  }
  return Json{{"satisfied", rep.satisfied},
              {"tolerance", rep.tolerance},
              {"constraints", std::move(constraints)}};
}

inline Json to_json(const DivergenceValue& v) {
  return Json{{"value", v.is_infinite ? Json(nullptr) : Json(v.value)},
              {"is_infinite", v.is_infinite}};
}

inline Json to_json(const ExpansionReport& rep) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
    rows.push_back(Json{{"epsilon", rep.epsilons[i]},
                        {"lhs", rep.lhs[i]},
                        {"prediction", rep.quadratic_prediction[i]},
                        {"residual", rep.residuals[i]}});
  }
  return Json{{"rows", std::move(rows)}, {"fitted_order", rep.fitted_order}};
}

inline Json to_json(const AxiomProbeReport& rep) {
  return Json{{"triples", rep.triples},
              {"positivity_violations", rep.positivity_violations},
              {"symmetry_violations", rep.symmetry_violations},
              {"triangle_violations", rep.triangle_violations},
              {"max_symmetry_gap", rep.max_symmetry_gap},
              {"max_triangle_excess", rep.max_triangle_excess}};
}

}  // namespace infogeo

#pragma once

// JSON renderings of polyhedra, fans, jet systems, deformations and family
// reports. Keys are emitted in sorted order, so output is byte-stable.

#include <json.hpp>

#include "nashtor/families.hpp"
#include "nashtor/jets.hpp"
#include "nashtor/newton.hpp"

namespace nashtor::io {

using nlohmann::json;

inline json integer(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline json vec(const LatticeVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer(x));
  return a;
}

inline json vecs(const std::vector<LatticeVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec(v));
  return a;
}

inline json polyhedron_json(const NewtonPolyhedron& P) {
  json facets = json::array();
  for (const auto& f : P.facets()) facets.push_back({{"normal", vec(f.normal)}, {"offset", integer(f.offset)}});
  return {{"vertices", vecs(P.vertices())}, {"facets", facets}};
}

inline json fan_json(const Fan& F) {
  json cones = json::array();
  for (std::size_t i = 0; i < F.size(); ++i)
    cones.push_back({{"label", F.labels()[i]}, {"rays", vecs(F.maximal_cones()[i].rays())}});
  return {{"rank", F.ambient_rank()}, {"rays", vecs(F.rays())}, {"cones", cones}};
}

inline json jet_system_json(const JetSystem& js) {
  json eqs = json::array();
  for (const auto& e : js.equations) eqs.push_back(to_string(e, js.names));
  json vars = json::array();
  for (std::size_t i = 0; i < js.names.size(); ++i) vars.push_back(js.names[i]);
  return {{"n_vars", js.n_vars}, {"m", js.m}, {"parameters", js.parameters}, {"variables", vars}, {"equations", eqs}};
}

inline JetSystem jet_system_from_json(const json& j) {
  try {
    JetSystem js;
    js.n_vars = j.at("n_vars").get<std::size_t>();
    js.m = j.at("m").get<long>();
    if (js.m < 0) throw InputError("negative jet order");
    js.parameters = j.value("parameters", std::vector<std::string>{});
    js.names = jet_names(js.n_vars, js.m, js.parameters);
    if (j.contains("variables")) {
      const auto v = j.at("variables").get<std::vector<std::string>>();
      if (v.size() != js.names.size()) throw InputError("variable list does not match n_vars and m");
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != js.names[i]) throw InputError("unexpected variable name " + v[i]);
    }
    for (const auto& e : j.at("equations")) js.equations.push_back(parse_polynomial(e.get<std::string>(), js.names));
    if (js.equations.size() != static_cast<std::size_t>(js.m + 1)) throw InputError("expected m+1 equations");
    return js;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed jet system: ") + e.what());
  }
}

inline json series_json(const RationalSeries& s) {
  json a = json::array();
  for (long k = 0; k <= s.truncation(); ++k) a.push_back(s.coeff(k).get_str());
  return a;
}

inline json order_json(const Order& o) {
  if (o.is_infinite()) return "inf";
  return o.value();
}

inline json hypothesis_json(const HypothesisReport& h) {
  json nu_g = json::array();
  for (const auto& x : h.nu_g) nu_g.push_back(x.str());
  json terms = json::array();
  for (const auto& t : h.term_orders) terms.push_back(order_json(t));
  return {{"ok", h.ok},           {"failing", h.failing}, {"min_order_ok", h.min_order_ok},
          {"dominated", h.dominated}, {"v", h.v},         {"nu_f", h.nu_f.str()},
          {"nu_g", nu_g},         {"term_orders", terms}};
}

inline json deformation_json(const JetDeformation& d) {
  json psi = json::array();
  for (const auto& row : d.psi) {
    json r = json::array();
    for (const auto& s : row) r.push_back(series_json(s));
    psi.push_back(r);
  }
  json phi = json::array();
  for (const auto& s : d.phi) phi.push_back(series_json(s));
  json stages = json::array();
  for (const auto& st : d.stages)
    stages.push_back({{"j", st.j},
                      {"pivot", st.pivot + 1},
                      {"remainder", series_json(st.remainder)},
                      {"pivot_order", order_json(st.pivot_order)},
                      {"correction_order", order_json(st.correction_order)},
                      {"order_bound_ok", st.order_bound_ok}});
  return {{"m", d.m},           {"D", d.D},         {"phi", phi},
          {"psi", psi},         {"stages", stages}, {"residual_zero", d.residual_zero},
          {"order_invariant", d.order_invariant}};
}

inline json report_json(const VerificationReport& r) {
  json charts = json::array();
  for (const auto& c : r.chart_maps) {
    json sv = json::array();
    for (const auto& v : c.support_values) sv.push_back(integer(v));
    charts.push_back({{"label", c.label},
                      {"rays", vecs(c.rays)},
                      {"regular", c.regular},
                      {"map", c.map},
                      {"strict_transform", c.strict_transform},
                      {"exceptional_exponent", c.exceptional_exponent},
                      {"support_values", sv}});
  }
  json comps = json::array();
  for (const auto& c : r.components)
    comps.push_back({{"label", c.label},
                     {"ray", vec(c.ray)},
                     {"kind", c.kind},
                     {"witness_chart", c.witness_chart},
                     {"essentiality", c.essentiality}});
  json edges = json::array();
  for (const auto& [a, b] : r.edges) edges.push_back({a, b});
  json nodes = json::array();
  for (const auto& c : r.components) nodes.push_back(c.label);
  json out = {{"report_version", 1},
              {"family", static_cast<int>(r.spec.family)},
              {"q", r.spec.q},
              {"polynomial", r.polynomial},
              {"newton_fan_rays", vecs(r.newton_fan_rays)},
              {"interior_rays", vecs(r.interior_rays)},
              {"fan_ok", r.fan_ok},
              {"g_subdivision_ok", r.g_subdivision_ok},
              {"star_ok", r.star_ok},
              {"exceptional_ok", r.exceptional_ok},
              {"transforms_ok", r.transforms_ok},
              {"orbit_hypothesis_ok", r.orbit_hypothesis_ok},
              {"isolated_singularity", r.isolated_singularity},
              {"nondegeneracy_probe", r.probe_verdict},
              {"chart_maps", charts},
              {"components", comps},
              {"component_count", r.component_count},
              {"expected_count", r.expected_count},
              {"edge_count", r.edge_count},
              {"expected_edge_count", r.expected_edge_count},
              {"dual_graph", {{"nodes", nodes}, {"edges", edges}, {"shape_ok", r.dual_graph_ok}}},
              {"discrepancies", r.discrepancies},
              {"ok", r.ok()}};
  if (r.spec.family == Family::One) out["p"] = r.spec.p;
  if (r.sigma_equals_sigma2) out["sigma_equals_sigma2"] = *r.sigma_equals_sigma2;
  return out;
}

}  // namespace nashtor::io

#pragma once

// The two A^4 hypersurface families
//   (1) f = h_q(x1,x2) + hk_{pq}(x3,x4),      p >= 2, q >= 2
//   (2) f = h_q(x1,x2) + hk_q(x3,x4^2),       q >= 3
// with their explicit regular fans, and an end-to-end verification that
// builds the fan, checks it against the Newton fan, resolves every chart and
// compares the dual graph with the closed forms.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nashtor/fan.hpp"
#include "nashtor/newton.hpp"
#include "nashtor/poly.hpp"
#include "nashtor/resolution.hpp"

namespace nashtor {

enum class Family { One = 1, Two = 2 };

struct FamilySpec {
  Family family = Family::One;
  long p = 2;  // family 1 only
  long q = 2;
  // Homogeneous binary forms given as factor lists; empty means Fermat type.
  std::vector<SparsePolynomial> h_factors;
  std::vector<SparsePolynomial> hk_factors;

  long hk_degree() const { return family == Family::One ? p * q : q; }
  bool is_fermat() const { return h_factors.empty() && hk_factors.empty(); }
};

inline SparsePolynomial fermat_form(long d) {
  SparsePolynomial f(2);
  f.add_term({static_cast<unsigned>(d), 0}, 1);
  f.add_term({0, static_cast<unsigned>(d)}, 1);
  return f;
}

namespace detail {

inline SparsePolynomial product(const std::vector<SparsePolynomial>& fs, long fermat_degree) {
  if (fs.empty()) return fermat_form(fermat_degree);
  SparsePolynomial r = SparsePolynomial::constant(2, 1);
  for (const auto& f : fs) {
    if (f.n_vars() != 2) throw InputError("factor must be a binary form");
    r = r * f;
  }
  return r;
}

// Squarefree binary form of degree d not divisible by either variable.
inline void check_binary_form(const SparsePolynomial& h, long d, const std::string& name) {
  if (!h.is_homogeneous() || h.total_degree() != d)
    throw InputError(name + " must be homogeneous of degree " + std::to_string(d));
  const auto D = static_cast<unsigned>(d);
  if (h.coeff({D, 0}) == 0 || h.coeff({0, D}) == 0) throw InputError(name + " is divisible by a variable");
  const auto u = h.set_variable(1, 1);
  if (distinct_root_count(u) != d) throw InputError(name + " is not squarefree");
}

}  // namespace detail

inline void validate(const FamilySpec& s) {
  if (s.family == Family::One && (s.p < 2 || s.q < 2)) throw InputError("family 1 needs p >= 2 and q >= 2");
  if (s.family == Family::Two && s.q < 3) throw InputError("family 2 needs q >= 3");
  if (s.q > 64 || s.p > 64) throw InputError("parameters too large");
  detail::check_binary_form(detail::product(s.h_factors, s.q), s.q, "h");
  detail::check_binary_form(detail::product(s.hk_factors, s.hk_degree()), s.hk_degree(), "hk");
}

inline SparsePolynomial family_h(const FamilySpec& s) { return detail::product(s.h_factors, s.q); }
inline SparsePolynomial family_hk(const FamilySpec& s) { return detail::product(s.hk_factors, s.hk_degree()); }

inline SparsePolynomial build_polynomial(const FamilySpec& s) {
  validate(s);
  const auto h = family_h(s).remap(4, {0, 1});
  auto hk = family_hk(s).remap(4, {2, 3});
  if (s.family == Family::Two) hk = hk.substitute(3, SparsePolynomial::monomial({0, 0, 0, 2}));
  return h + hk;
}

// rho_j = (p-j, p-j, 1, 1), j = 0..p-1.
inline LatticeVector family1_ray(long p, long j) { return {p - j, p - j, 1, 1}; }

inline Fan family1_fan(long p) {
  if (p < 2) throw InputError("family 1 needs p >= 2");
  const auto e = [](std::size_t i) { return LatticeVector::unit(4, i); };
  std::vector<Cone> cones;
  std::vector<std::string> labels;
  const auto P = std::to_string(p - 1);
  for (int i = 1; i <= 2; ++i) {
    const LatticeVector apex = i == 1 ? e(1) : e(0);
    for (long j = 1; j <= p - 1; ++j)
      for (int k = 1; k <= 2; ++k) {
        cones.emplace_back(4, std::vector<LatticeVector>{apex, family1_ray(p, j - 1), family1_ray(p, j), e(k + 1)});
        labels.push_back("sigma_{" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "}");
      }
    cones.emplace_back(4, std::vector<LatticeVector>{apex, e(2), e(3), family1_ray(p, p - 1)});
    labels.push_back("sigma_{" + std::to_string(i) + "," + P + "}");
  }
  cones.emplace_back(4, std::vector<LatticeVector>{family1_ray(p, 0), e(0), e(1), e(3)});
  labels.push_back("sigma_3");
  cones.emplace_back(4, std::vector<LatticeVector>{family1_ray(p, 0), e(0), e(1), e(2)});
  labels.push_back("sigma_4");
  return Fan(4, std::move(cones), std::move(labels));
}

inline const LatticeVector& family2_rho0() {
  static const LatticeVector r{2, 2, 2, 1};
  return r;
}
inline const LatticeVector& family2_rho1() {
  static const LatticeVector r{1, 1, 1, 1};
  return r;
}

inline Fan family2_fan() {
  const auto e = [](std::size_t i) { return LatticeVector::unit(4, i); };
  std::vector<Cone> cones;
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<LatticeVector> rays{family2_rho0()};
    for (std::size_t i = 0; i < 3; ++i)
      if (i != j) rays.push_back(e(i));
    rays.push_back(family2_rho1());
    cones.emplace_back(4, rays);
    labels.push_back("sigma_{" + std::to_string(j + 1) + ",1}");
  }
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<LatticeVector> rays{family2_rho1()};
    for (std::size_t i = 0; i < 4; ++i)
      if (i != j) rays.push_back(e(i));
    cones.emplace_back(4, rays);
    labels.push_back("sigma_{" + std::to_string(j + 1) + ",2}");
  }
  cones.emplace_back(4, std::vector<LatticeVector>{family2_rho0(), e(0), e(1), e(2)});
  labels.push_back("sigma_4");
  return Fan(4, std::move(cones), std::move(labels));
}

// Two stellar subdivisions of the standard cone: first at rho1, then at rho0.
inline Fan family2_stellar_fan() {
  return stellar_subdivision(stellar_subdivision(standard_fan(4), family2_rho1()), family2_rho0());
}

inline Fan family_fan(const FamilySpec& s) { return s.family == Family::One ? family1_fan(s.p) : family2_fan(); }

inline ComponentLabeler family_labeler(const FamilySpec& s) {
  if (s.family == Family::One) {
    const long p = s.p;
    return [p](const ComponentKey& k) {
      const long j = p - k.ray[0].get_si();
      if (k.whole) return "E_" + std::to_string(j);
      return "E_{" + std::to_string(k.root_index) + "," + std::to_string(j) + "}";
    };
  }
  return [](const ComponentKey& k) {
    if (k.ray == family2_rho1() && k.whole) return std::string("E_1");
    if (k.ray == family2_rho0() && k.whole) return std::string("E_2");
    return default_component_label(k);
  };
}

// No torus orbit of positive dimension lies in V(f): for every nonempty set
// S of coordinates some monomial of f uses only variables in S.
inline bool orbit_hypothesis(const SparsePolynomial& f) {
  const std::size_t n = f.n_vars();
  bool ok = true;
  for (std::size_t k = 1; k <= n && ok; ++k)
    linalg::for_each_subset(n, k, [&](const detail::IndexSet& S) {
      const std::set<std::size_t> in(S.begin(), S.end());
      bool hit = false;
      for (const auto& [e, c] : f.terms()) {
        bool inside = true;
        for (std::size_t i = 0; i < n && inside; ++i) inside = e[i] == 0 || in.count(i);
        hit = hit || inside;
      }
      if (!hit) ok = false;
      return !ok;
    });
  return ok;
}

// Every partial derivative is a single pure power: the gradient vanishes only
// at the origin.
inline bool isolated_singularity_by_gradient(const SparsePolynomial& f) {
  for (std::size_t i = 0; i < f.n_vars(); ++i) {
    const auto d = f.partial(i);
    if (d.num_terms() != 1) return false;
    const auto& e = d.terms().begin()->first;
    for (std::size_t k = 0; k < e.size(); ++k)
      if (k != i && e[k] != 0) return false;
  }
  return true;
}

// Exponents lying in the Newton polyhedron but off its compact boundary.
inline bool above_newton_boundary(const SparsePolynomial& f, const LatticeVector& e) {
  const auto P = newton_polyhedron(f);
  return P.contains(e) && !on_newton_boundary(P, e);
}

struct ChartRecord {
  std::string label;
  std::vector<LatticeVector> rays;
  bool regular = false;
  std::vector<std::string> map;
  std::string strict_transform;
  Exponent exceptional_exponent;
  std::vector<Integer> support_values;
};

struct ComponentRecord {
  std::string label;
  LatticeVector ray;
  std::string kind;  // "whole" or "root i of <poly>"
  std::string witness_chart;
  std::string essentiality;
};

struct VerificationReport {
  FamilySpec spec;
  std::string polynomial;
  std::vector<LatticeVector> newton_fan_rays;
  std::vector<LatticeVector> interior_rays;
  bool fan_ok = false;
  bool g_subdivision_ok = false;
  bool star_ok = false;
  std::optional<bool> sigma_equals_sigma2;
  bool exceptional_ok = false;
  bool transforms_ok = false;
  bool orbit_hypothesis_ok = false;
  std::string isolated_singularity;  // "verified" or "assumed"
  std::string probe_verdict;
  std::vector<ChartRecord> chart_maps;
  std::vector<ComponentRecord> components;
  std::vector<std::pair<std::string, std::string>> edges;
  long component_count = 0;
  long expected_count = 0;
  long edge_count = 0;
  long expected_edge_count = 0;
  bool dual_graph_ok = false;
  std::string dual_graph_dot;
  std::vector<std::string> discrepancies;

  bool ok() const { return discrepancies.empty(); }
};

namespace detail {

// A tree whose center has `arms` neighbours and every arm is a path of
// `length` nodes.
inline bool is_spider(const DualGraph& g, std::size_t center, long arms, long length) {
  const std::size_t n = g.nodes.size();
  if (static_cast<long>(n) != arms * length + 1 || static_cast<long>(g.edges.size()) != arms * length) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  if (static_cast<long>(adj[center].size()) != arms) return false;
  for (std::size_t v = 0; v < n; ++v)
    if (v != center && adj[v].size() > 2) return false;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{center};
  seen[center] = true;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace detail

inline VerificationReport verify(const FamilySpec& spec, std::uint64_t seed = 0) {
  VerificationReport r;
  r.spec = spec;
  const SparsePolynomial f = build_polynomial(spec);
  const auto x = VarNames::indexed("x", 4);
  const auto y = VarNames::indexed("y", 4);
  r.polynomial = to_string(f, x);
  auto note = [&r](bool ok, const std::string& what) {
    if (!ok) r.discrepancies.push_back(what);
    return ok;
  };

  const Fan N = newton_fan(f);
  const Fan S = family_fan(spec);
  r.newton_fan_rays = N.rays();
  const LatticeVector expected_ray = spec.family == Family::One ? family1_ray(spec.p, 0) : family2_rho0();
  std::vector<LatticeVector> nonstd;
  for (const auto& v : N.rays())
    if (!is_standard_basis_vector(v)) nonstd.push_back(v);
  note(nonstd == std::vector<LatticeVector>{expected_ray}, "Newton fan interior rays differ from " + expected_ray.str());

  for (const auto& v : S.rays())
    if (!is_standard_basis_vector(v)) r.interior_rays.push_back(v);
  std::set<LatticeVector> expected_interior;
  if (spec.family == Family::One)
    for (long j = 0; j < spec.p; ++j) expected_interior.insert(family1_ray(spec.p, j));
  else
    expected_interior = {family2_rho0(), family2_rho1()};
  note(std::set<LatticeVector>(r.interior_rays.begin(), r.interior_rays.end()) == expected_interior,
       "fan interior rays differ from the closed form");

  const bool valid = is_valid_fan(S);
  const bool sub = valid && is_subdivision(S, N);
  r.fan_ok = note(valid && sub, "fan is not a valid subdivision of the Newton fan");
  if (sub) {
    const auto g = g_subdivision_check(S, N, f);
    r.g_subdivision_ok = g.g_regular;
    r.star_ok = g.admissible.value_or(false);
    for (const auto& fl : g.failures) r.discrepancies.push_back(fl.cone + ": " + fl.reason);
    note(g.g_regular, "fan is not a G-regular subdivision");
  }
  if (spec.family == Family::Two) {
    r.sigma_equals_sigma2 = family2_stellar_fan() == S;
    note(*r.sigma_equals_sigma2, "stellar fan differs from the explicit fan");
  }

  const auto P = newton_polyhedron(f);
  r.orbit_hypothesis_ok = note(orbit_hypothesis(f), "V(f) contains a torus orbit of positive dimension");
  r.isolated_singularity = spec.is_fermat() && isolated_singularity_by_gradient(f) ? "verified" : "assumed";
  const auto probe = nondegeneracy_probe(f, seed == 0 ? 1 : seed);
  r.probe_verdict = to_string(probe.verdict);
  note(probe.verdict != ProbeVerdict::Fail, "non-degeneracy probe found a degenerate face");

  if (!r.fan_ok || !is_regular_fan(S)) {
    note(false, "fan is not regular; charts skipped");
    return r;
  }
  const auto charts = charts_of(S);
  const auto h = family_h(spec), hk = family_hk(spec);
  r.exceptional_ok = true;
  r.transforms_ok = true;
  ResolutionData res;
  try {
    res = assemble_dual_graph(f, charts, family_labeler(spec));
  } catch (const Error& e) {
    note(false, e.what());
    return r;
  }
  for (const auto& ca : res.charts) {
    const auto& st = ca.transform;
    ChartRecord cr;
    cr.label = st.chart.label;
    cr.rays = st.chart.cone.rays();
    cr.regular = is_regular_cone(st.chart.cone);
    cr.map = st.chart.map_text();
    cr.strict_transform = to_string(st.equation, y);
    cr.exceptional_exponent = st.exceptional_exponent;
    for (std::size_t i = 0; i < 4; ++i) {
      cr.support_values.push_back(P.support(st.chart.ray(i)));
      if (cr.support_values.back() != st.exceptional_exponent[i]) r.exceptional_ok = false;
    }
    r.chart_maps.push_back(std::move(cr));
  }
  note(r.exceptional_ok, "exceptional exponents differ from the support function");

  // closed forms of selected strict transforms
  auto expect = [&](const std::string& label, const SparsePolynomial& g) {
    for (const auto& ca : res.charts)
      if (ca.transform.chart.label == label && !(ca.transform.equation == g)) {
        r.transforms_ok = false;
        r.discrepancies.push_back("strict transform in " + label + " is " + to_string(ca.transform.equation, y) +
                                  ", expected " + to_string(g, y));
      }
  };
  if (spec.family == Family::One) {
    const auto h1 = h.substitute(1, SparsePolynomial::constant(2, 1)).remap(4, {0, 1});
    const auto k1 = hk.substitute(0, SparsePolynomial::constant(2, 1)).remap(4, {2, 3});
    for (long j = 1; j <= spec.p - 1; ++j) {
      const auto qq = static_cast<unsigned>(spec.q);
      const auto mono = SparsePolynomial::monomial({0, qq * static_cast<unsigned>(j - 1), qq * static_cast<unsigned>(j), 0});
      expect("sigma_{2," + std::to_string(j) + ",2}", h1 + mono * k1);
    }
  } else {
    const auto h1 = h.substitute(0, SparsePolynomial::constant(2, 1)).remap(4, {0, 1});
    expect("sigma_{1,1}", h1 + hk.remap(4, {2, 3}));
  }

  const auto& G = res.graph;
  for (const auto& n : G.nodes) {
    ComponentRecord c;
    c.label = n.label;
    c.ray = n.key.ray;
    if (n.key.whole) {
      c.kind = "whole";
    } else {
      SparsePolynomial u(1);
      for (std::size_t k = 0; k < n.key.polynomial.size(); ++k)
        u.add_term({static_cast<unsigned>(k)}, n.key.polynomial[k]);
      c.kind = "root " + std::to_string(n.key.root_index) + " of " + to_string(u, VarNames({"u"}));
    }
    c.witness_chart = n.witness_chart;
    c.essentiality = "essential (per theorem)";
    r.components.push_back(std::move(c));
  }
  for (const auto& [a, b] : G.edges) {
    auto la = G.nodes[a].label, lb = G.nodes[b].label;
    if (lb < la) std::swap(la, lb);
    r.edges.emplace_back(la, lb);
  }
  std::sort(r.edges.begin(), r.edges.end());
  r.dual_graph_dot = dual_graph_to_dot(G);
  r.component_count = static_cast<long>(G.nodes.size());
  r.edge_count = static_cast<long>(G.edges.size());
  if (spec.family == Family::One) {
    r.expected_count = (spec.p - 1) * spec.q + 1;
    r.expected_edge_count = spec.q * (spec.p - 1);
    std::optional<std::size_t> center;
    for (std::size_t i = 0; i < G.nodes.size(); ++i)
      if (G.nodes[i].key.whole && G.nodes[i].key.ray == family1_ray(spec.p, 0)) center = i;
    r.dual_graph_ok = center && detail::is_spider(G, *center, spec.q, spec.p - 1);
    // every edge joins consecutive rays
    for (const auto& [a, b] : G.edges) {
      const auto d = G.nodes[a].key.ray[0] - G.nodes[b].key.ray[0];
      if (d != 1 && d != -1) r.dual_graph_ok = false;
    }
  } else {
    r.expected_count = 2;
    r.expected_edge_count = 1;
    r.dual_graph_ok = G.nodes.size() == 2 && G.edges.size() == 1;
  }
  note(r.component_count == r.expected_count, "component count " + std::to_string(r.component_count) +
                                                  " differs from expected " + std::to_string(r.expected_count));
  note(r.edge_count == r.expected_edge_count, "edge count " + std::to_string(r.edge_count) +
                                                  " differs from expected " + std::to_string(r.expected_edge_count));
  note(r.dual_graph_ok, "dual graph has the wrong shape");
  return r;
}

}  // namespace nashtor

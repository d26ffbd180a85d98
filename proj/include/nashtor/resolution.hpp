#pragma once

// Toric charts of regular cones, pullbacks and strict transforms, the
// components of the strict transform along exceptional divisors, and the
// dual graph glued across charts.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nashtor/fan.hpp"
#include "nashtor/lattice.hpp"
#include "nashtor/parallel.hpp"
#include "nashtor/poly.hpp"

namespace nashtor {

struct ToricChart {
  std::string label;
  Cone cone;                         // regular, full-dimensional, ordered rays
  IntMatrix map_matrix;              // (k,i) = (rho_i)_k
  std::vector<LatticeVector> dual;   // m_i with <m_i, rho_j> = delta_ij

  std::size_t rank() const { return cone.ambient_rank(); }
  const LatticeVector& ray(std::size_t i) const { return cone.rays().at(i); }

  // x_k as a monomial in the chart coordinates.
  SparsePolynomial coordinate(std::size_t k) const {
    Exponent e(rank());
    for (std::size_t i = 0; i < rank(); ++i) e[i] = static_cast<unsigned>(map_matrix[k][i].get_ui());
    return SparsePolynomial::monomial(e);
  }

  std::vector<std::string> map_text() const {
    std::vector<std::string> out;
    const auto names = VarNames::indexed("y", rank());
    for (std::size_t k = 0; k < rank(); ++k) out.push_back(to_string(coordinate(k), names));
    return out;
  }
};

inline bool is_standard_basis_vector(const LatticeVector& v) {
  int ones = 0;
  for (const auto& x : v) {
    if (x == 1)
      ++ones;
    else if (x != 0)
      return false;
  }
  return ones == 1;
}

inline ToricChart chart(const Cone& c, std::string label = "") {
  if (!c.is_full_dimensional()) throw InputError("chart of a cone that is not full-dimensional: " + c.str());
  if (!is_regular_cone(c)) throw InputError("chart of a non-regular cone: " + c.str());
  for (const auto& r : c.rays())
    if (!r.is_nonnegative()) throw InputError("chart cone must lie in the standard cone: " + c.str());
  ToricChart ch;
  ch.label = std::move(label);
  ch.cone = c;
  const std::size_t n = c.ambient_rank();
  ch.map_matrix.assign(n, std::vector<Integer>(n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) ch.map_matrix[k][i] = c.rays()[i][k];
  ch.dual = dual_basis(c);
  return ch;
}

inline SparsePolynomial pullback(const SparsePolynomial& f, const ToricChart& ch) {
  if (f.n_vars() != ch.rank()) throw InputError("polynomial and chart have different rank");
  SparsePolynomial r(ch.rank());
  for (const auto& [e, c] : f.terms()) {
    Exponent y(ch.rank());
    for (std::size_t i = 0; i < ch.rank(); ++i) y[i] = static_cast<unsigned>(dot(to_lattice(e), ch.ray(i)).get_ui());
    r.add_term(y, c);
  }
  return r;
}

struct StrictTransform {
  ToricChart chart;
  Exponent exceptional_exponent;
  SparsePolynomial equation;
};

inline StrictTransform strict_transform(const SparsePolynomial& f, const ToricChart& ch) {
  if (f.is_zero()) throw InputError("strict transform of the zero polynomial");
  const auto pb = pullback(f, ch);
  const auto a = pb.monomial_content();
  return {ch, a, pb.divide_by_monomial(a)};
}

inline LatticeVector arc_pushforward_orders(const ToricChart& ch, const std::vector<long>& r) {
  if (r.size() != ch.rank()) throw InputError("order vector has wrong length");
  LatticeVector mu(ch.rank());
  for (std::size_t i = 0; i < ch.rank(); ++i) {
    if (r[i] < 0) throw InputError("orders must be nonnegative");
    mu = mu + Integer(r[i]) * ch.ray(i);
  }
  return mu;
}

namespace detail {

// Split f as sum_k y_b^k * coeff_k.
inline std::map<unsigned, SparsePolynomial> split_by_variable(const SparsePolynomial& f, std::size_t b) {
  std::map<unsigned, SparsePolynomial> parts;
  for (const auto& [e, c] : f.terms()) {
    Exponent d = e;
    const unsigned k = d[b];
    d[b] = 0;
    parts.try_emplace(k, SparsePolynomial(f.n_vars())).first->second.add_term(d, c);
  }
  return parts;
}

inline bool disjoint_variables(const SparsePolynomial& a, const SparsePolynomial& b) {
  for (auto v : a.variables())
    if (b.variables().count(v)) return false;
  return true;
}

inline bool has_simple_root(const SparsePolynomial& u) {
  const auto s = squarefree_part(u).part;
  const std::size_t var = univariate_var(u);
  const UPoly up = UPoly::from_sparse(u, var), sp = UPoly::from_sparse(s, var);
  const UPoly rest = up.divmod(sp).first;
  return gcd(sp, rest).degree() < sp.degree();
}

// Degree 1 in some variable y_b with coefficients A (of y_b) and B such that
// A is a nonzero constant, or A and B are nonzero in disjoint variables.
inline bool linear_irreducible(const SparsePolynomial& p) {
  for (auto b : p.variables()) {
    if (p.degree_in(b) != 1) continue;
    auto parts = split_by_variable(p, b);
    const auto& A = parts.at(1);
    if (A.is_constant()) return true;
    auto it = parts.find(0);
    if (it != parts.end() && disjoint_variables(A, it->second)) return true;
  }
  return false;
}

struct BinaryForm {
  std::size_t a, c;
  UPoly dehomogenized;  // g(y_a, 1)
  long degree, mult_c;  // multiplicity of y_c as a factor
};

inline std::optional<BinaryForm> as_binary_form(const SparsePolynomial& g) {
  const auto vars = g.variables();
  if (vars.size() != 2 || !g.is_homogeneous()) return std::nullopt;
  const std::size_t a = *vars.begin(), c = *vars.rbegin();
  const UPoly u = UPoly::from_sparse(g.set_variable(c, 1), a);
  const long d = g.total_degree();
  return BinaryForm{a, c, u, d, d - u.degree()};
}

// g has an irreducible factor of multiplicity one that is recognised exactly.
inline bool has_simple_prime_factor(const SparsePolynomial& g) {
  const auto vars = g.variables();
  if (vars.empty()) return false;
  if (vars.size() == 1) return has_simple_root(g);
  if (auto bf = as_binary_form(g)) {
    if (bf->mult_c == 1) return true;
    if (bf->dehomogenized.degree() >= 1 &&
        has_simple_root(bf->dehomogenized.to_sparse(g.n_vars(), bf->a)))
      return true;
  }
  return linear_irreducible(g);
}

// P = c * y_b^k + G with c nonzero in variables disjoint from y_b and G, and
// G with a simple prime factor (Eisenstein in y_b).
inline bool eisenstein_shape(const SparsePolynomial& p) {
  for (auto b : p.variables()) {
    auto parts = split_by_variable(p, b);
    if (parts.size() != 2 || !parts.count(0)) continue;
    const auto& G = parts.at(0);
    const auto& c = parts.rbegin()->second;
    if (!disjoint_variables(c, G)) continue;
    if (has_simple_prime_factor(G)) return true;
  }
  return false;
}

// P = H(y_a, y_c) + B with H a squarefree binary form, B nonzero and free of
// y_a, y_c. Over the closure of the field of B the curve H + B is smooth with
// distinct points at infinity, hence irreducible.
inline bool smooth_affine_binary(const SparsePolynomial& p) {
  const auto vars = p.variables();
  for (auto a : vars)
    for (auto c : vars) {
      if (c <= a) continue;
      SparsePolynomial H(p.n_vars()), B(p.n_vars());
      for (const auto& [e, k] : p.terms()) {
        bool in_ac = false, outside = false;
        for (std::size_t i = 0; i < e.size(); ++i) {
          if (!e[i]) continue;
          (i == a || i == c ? in_ac : outside) = true;
        }
        if (in_ac && outside) {
          H = SparsePolynomial(p.n_vars());
          break;
        }
        (in_ac ? H : B).add_term(e, k);
      }
      if (B.is_zero() || H.is_zero()) continue;
      if (H.variables().size() != 2 || !disjoint_variables(H, B)) continue;
      auto bf = as_binary_form(H);
      if (!bf || bf->mult_c > 1) continue;
      if (bf->dehomogenized.degree() < 1 ||
          squarefree_part(bf->dehomogenized.to_sparse(p.n_vars(), bf->a)).is_squarefree)
        return true;
    }
  return false;
}

}  // namespace detail

// Irreducibility by the structural criteria above; false means "not decided".
inline bool structurally_irreducible(const SparsePolynomial& p) {
  if (p.is_constant()) return false;
  if (detail::linear_irreducible(p) || detail::eisenstein_shape(p) || detail::smooth_affine_binary(p)) return true;
  const auto top = p.top_form();
  if (top != p) return structurally_irreducible(top);
  return false;
}

// Identity of an irreducible component of the strict transform along the
// divisor of `ray`. Root-type components carry the character whose level
// sets they are, the canonical monic polynomial, and a symbolic root index.
struct ComponentKey {
  LatticeVector ray;
  bool whole = true;
  LatticeVector character;
  std::vector<Rational> polynomial;  // ascending, monic
  long root_index = 0;               // 1-based for root-type components

  friend bool operator<(const ComponentKey& a, const ComponentKey& b) {
    if (a.ray != b.ray) return a.ray < b.ray;
    if (a.whole != b.whole) return a.whole > b.whole;
    if (a.character != b.character) return a.character < b.character;
    if (a.polynomial != b.polynomial) return a.polynomial < b.polynomial;
    return a.root_index < b.root_index;
  }
  friend bool operator==(const ComponentKey& a, const ComponentKey& b) {
    return !(a < b) && !(b < a);
  }
};

struct LocalComponent {
  ComponentKey key;
  std::size_t chart_var = 0;
  std::optional<std::size_t> root_var;  // y_k carrying the root
  UPoly local_poly;                     // squarefree, in y_k, chart orientation
};

struct DivisorComponents {
  bool supported = true;
  std::string reason;
  std::vector<LocalComponent> components;
};

inline DivisorComponents divisor_components(const StrictTransform& st, std::size_t chart_var) {
  const auto& ch = st.chart;
  if (chart_var >= ch.rank()) throw InputError("chart variable out of range");
  const LatticeVector& ray = ch.ray(chart_var);
  if (is_standard_basis_vector(ray)) throw InputError("chart variable belongs to a non-exceptional ray");
  const auto R = st.equation.set_variable(chart_var, 0);
  if (R.is_zero()) throw Error("strict transform vanishes on the divisor of " + ray.str() + " in chart " + ch.label);
  DivisorComponents out;
  if (R.is_constant()) return out;
  const auto mono = R.monomial_content();
  if (std::any_of(mono.begin(), mono.end(), [](unsigned x) { return x != 0; })) {
    out.supported = false;
    out.reason = "restriction has a monomial factor";
    return out;
  }
  const auto vars = R.variables();
  if (vars.size() == 1) {
    const std::size_t k = *vars.begin();
    const UPoly u = UPoly::from_sparse(squarefree_part(R).part, k);
    LatticeVector m = ch.dual[k];
    UPoly canon = u;
    std::size_t lead = 0;
    while (lead < m.size() && m[lead] == 0) ++lead;
    if (m[lead] < 0) {
      m = -m;
      canon = u.reversed();
    }
    canon = canon.monic();
    for (long i = 1; i <= u.degree(); ++i) {
      LocalComponent lc;
      lc.key = {ray, false, m, canon.coeffs(), i};
      lc.chart_var = chart_var;
      lc.root_var = k;
      lc.local_poly = u;
      out.components.push_back(std::move(lc));
    }
    return out;
  }
  if (structurally_irreducible(R)) {
    LocalComponent lc;
    lc.key.ray = ray;
    lc.chart_var = chart_var;
    out.components.push_back(std::move(lc));
    return out;
  }
  out.supported = false;
  out.reason = "irreducibility of " + to_string(R, VarNames::indexed("y", ch.rank())) + " not decided";
  return out;
}

struct DualNode {
  ComponentKey key;
  std::string label;
  std::string witness_chart;
};

struct DualGraph {
  std::vector<DualNode> nodes;                           // sorted by key
  std::set<std::pair<std::size_t, std::size_t>> edges;   // node indices, first < second

  std::size_t find(const ComponentKey& k) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].key == k) return i;
    throw Error("unknown component");
  }
};

struct ChartAnalysis {
  StrictTransform transform;
  std::vector<LocalComponent> components;
  std::vector<std::pair<ComponentKey, ComponentKey>> edges;
  std::vector<std::string> unsupported;
};

namespace detail {

// Whether local components on y_a = 0 and y_b = 0 meet inside the chart.
// Returns nullopt when the structural criteria cannot decide.
inline std::optional<bool> components_meet(const LocalComponent& A, const LocalComponent& B,
                                           const SparsePolynomial& Rab) {
  const std::size_t a = A.chart_var, b = B.chart_var;
  if (A.key.whole && B.key.whole) return !Rab.is_constant();
  if (A.key.whole != B.key.whole) {
    const LocalComponent& root = A.key.whole ? B : A;
    const std::size_t other = A.key.whole ? a : b;
    if (*root.root_var != other) return true;
    if (root.local_poly.coeffs().at(0) != 0) return false;
    return std::nullopt;
  }
  const std::size_t ka = *A.root_var, kb = *B.root_var;
  if (ka == b || kb == a) {
    const UPoly& u = ka == b ? A.local_poly : B.local_poly;
    if (u.coeffs().at(0) != 0) return false;
    return std::nullopt;
  }
  if (ka != kb) return true;
  if (A.local_poly == B.local_poly) return A.key.root_index == B.key.root_index;
  if (gcd(A.local_poly, B.local_poly).degree() == 0) return false;
  return std::nullopt;
}

}  // namespace detail

inline ChartAnalysis analyze_chart(const SparsePolynomial& f, const ToricChart& ch) {
  ChartAnalysis out{strict_transform(f, ch), {}, {}, {}};
  const auto& eq = out.transform.equation;
  std::map<std::size_t, std::vector<LocalComponent>> by_var;
  for (std::size_t i = 0; i < ch.rank(); ++i) {
    if (is_standard_basis_vector(ch.ray(i))) continue;
    auto dc = divisor_components(out.transform, i);
    if (!dc.supported) {
      out.unsupported.push_back("ray " + ch.ray(i).str() + ": " + dc.reason);
      continue;
    }
    by_var[i] = dc.components;
    for (auto& c : dc.components) out.components.push_back(c);
  }
  for (auto ia = by_var.begin(); ia != by_var.end(); ++ia)
    for (auto ib = std::next(ia); ib != by_var.end(); ++ib) {
      if (ia->second.empty() || ib->second.empty()) continue;
      const auto Rab = eq.set_variable(ia->first, 0).set_variable(ib->first, 0);
      if (Rab.is_zero()) {
        out.unsupported.push_back("strict transform contains the intersection of divisors " +
                                  ch.ray(ia->first).str() + " and " + ch.ray(ib->first).str());
        continue;
      }
      if (Rab.is_constant()) continue;
      for (const auto& A : ia->second)
        for (const auto& B : ib->second) {
          auto meet = detail::components_meet(A, B, Rab);
          if (!meet) {
            out.unsupported.push_back("intersection of components on " + ch.ray(A.chart_var).str() + " and " +
                                      ch.ray(B.chart_var).str() + " not decided");
            continue;
          }
          if (*meet) out.edges.emplace_back(A.key, B.key);
        }
    }
  return out;
}

using ComponentLabeler = std::function<std::string(const ComponentKey&)>;

inline std::string default_component_label(const ComponentKey& k) {
  std::string s = "E" + k.ray.str();
  if (!k.whole) s += "#" + std::to_string(k.root_index);
  return s;
}

struct ResolutionData {
  std::vector<ChartAnalysis> charts;
  DualGraph graph;
};

// Processes every chart (in parallel when NASHTOR_THREADS > 1) and glues the
// components by key.
inline ResolutionData assemble_dual_graph(const SparsePolynomial& f, const std::vector<ToricChart>& charts,
                                          const ComponentLabeler& labeler = default_component_label) {
  ResolutionData out;
  out.charts = parallel_map<ChartAnalysis>(charts.size(), [&](std::size_t i) { return analyze_chart(f, charts[i]); });
  std::string errors;
  for (const auto& ca : out.charts)
    for (const auto& u : ca.unsupported) errors += "\n  chart " + ca.transform.chart.label + ": " + u;
  if (!errors.empty()) throw Error("unsupported component structure:" + errors);

  std::map<ComponentKey, std::string> witness;
  std::map<LatticeVector, bool> kind;
  for (const auto& ca : out.charts)
    for (const auto& c : ca.components) {
      auto [it, inserted] = kind.emplace(c.key.ray, c.key.whole);
      if (!inserted && it->second != c.key.whole)
        throw Error("divisor of " + c.key.ray.str() + " decomposes differently in different charts");
      auto w = witness.find(c.key);
      const std::string& lbl = ca.transform.chart.label;
      if (w == witness.end())
        witness.emplace(c.key, lbl);
      else if (lbl < w->second)
        w->second = lbl;
    }
  for (const auto& [k, w] : witness) out.graph.nodes.push_back({k, labeler(k), w});
  for (const auto& ca : out.charts)
    for (const auto& [a, b] : ca.edges) {
      auto i = out.graph.find(a), j = out.graph.find(b);
      if (i == j) continue;
      out.graph.edges.insert({std::min(i, j), std::max(i, j)});
    }
  return out;
}

inline std::vector<ToricChart> charts_of(const Fan& F) {
  std::vector<ToricChart> out;
  for (std::size_t i = 0; i < F.size(); ++i) out.push_back(chart(F.maximal_cones()[i], F.labels()[i]));
  return out;
}

inline std::string dual_graph_to_dot(const DualGraph& g) {
  std::vector<std::string> nodes;
  for (const auto& n : g.nodes) nodes.push_back(n.label);
  std::sort(nodes.begin(), nodes.end());
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [i, j] : g.edges) {
    auto a = g.nodes[i].label, b = g.nodes[j].label;
    if (b < a) std::swap(a, b);
    edges.emplace_back(a, b);
  }
  std::sort(edges.begin(), edges.end());
  std::string s = "graph dual {\n";
  for (const auto& n : nodes) s += "  \"" + n + "\";\n";
  for (const auto& [a, b] : edges) s += "  \"" + a + "\" -- \"" + b + "\";\n";
  return s + "}\n";
}

}  // namespace nashtor

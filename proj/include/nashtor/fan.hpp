#pragma once

// Fans stored by their maximal cones: validity, subdivision relations,
// regularity, property (*) admissibility, G-subdivision checks, stellar
// subdivision, and the Newton fan of a polynomial.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nashtor/lattice.hpp"
#include "nashtor/newton.hpp"
#include "nashtor/poly.hpp"

namespace nashtor {

class Fan {
 public:
  Fan() = default;
  Fan(std::size_t rank, std::vector<Cone> cones, std::vector<std::string> labels = {})
      : rank_(rank), cones_(std::move(cones)), labels_(std::move(labels)) {
    labels_.resize(cones_.size());
    for (const auto& c : cones_)
      if (c.ambient_rank() != rank_) throw InputError("cone " + c.str() + " has wrong ambient rank");
    std::set<std::vector<LatticeVector>> seen;
    for (const auto& c : cones_)
      if (!seen.insert(c.sorted_rays()).second) throw InputError("duplicate cone " + c.str());
  }

  std::size_t ambient_rank() const { return rank_; }
  const std::vector<Cone>& maximal_cones() const { return cones_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return cones_.size(); }

  const Cone& cone(const std::string& label) const {
    for (std::size_t i = 0; i < cones_.size(); ++i)
      if (labels_[i] == label) return cones_[i];
    throw InputError("no cone labelled " + label);
  }

  std::vector<LatticeVector> rays() const {
    std::set<LatticeVector> r;
    for (const auto& c : cones_) r.insert(c.rays().begin(), c.rays().end());
    return {r.begin(), r.end()};
  }

  bool contains(const LatticeVector& p) const {
    return std::any_of(cones_.begin(), cones_.end(), [&](const Cone& c) { return c.contains(p); });
  }

  // The cone spanned by these rays is a cone of the fan.
  bool has_cone(const std::vector<LatticeVector>& rays) const {
    return std::any_of(cones_.begin(), cones_.end(), [&](const Cone& c) { return c.is_face(rays); });
  }

  bool is_pure_full_dimensional() const {
    return std::all_of(cones_.begin(), cones_.end(), [](const Cone& c) { return c.is_full_dimensional(); });
  }

  // Canonical description: sorted list of sorted ray lists.
  std::vector<std::vector<LatticeVector>> canonical() const {
    std::vector<std::vector<LatticeVector>> out;
    for (const auto& c : cones_) out.push_back(c.sorted_rays());
    std::sort(out.begin(), out.end());
    return out;
  }

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.rank_ == b.rank_ && a.canonical() == b.canonical();
  }

 private:
  std::size_t rank_ = 0;
  std::vector<Cone> cones_;
  std::vector<std::string> labels_;
};

inline Cone standard_cone(std::size_t n) {
  std::vector<LatticeVector> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(LatticeVector::unit(n, i));
  return Cone(n, e);
}

inline Fan standard_fan(std::size_t n) { return Fan(n, {standard_cone(n)}, {"Delta"}); }

struct FanIssue {
  std::string cone;
  std::string reason;
};

// Pairs of maximal cones that do not meet in a common face.
inline std::vector<FanIssue> fan_validity_issues(const Fan& F) {
  std::vector<FanIssue> out;
  const auto& cs = F.maximal_cones();
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j)
      if (!meet_in_common_face(cs[i], cs[j]))
        out.push_back({cs[i].str(), "meets " + cs[j].str() + " outside a common face"});
  return out;
}

inline bool is_valid_fan(const Fan& F) { return fan_validity_issues(F).empty(); }

inline bool is_regular_fan(const Fan& F) {
  const auto& cs = F.maximal_cones();
  return std::all_of(cs.begin(), cs.end(), [](const Cone& c) { return is_regular_cone(c); });
}

namespace detail {

// Volume of the slice {x in cone : l(x) <= 1}, up to the factor 1/n!.
inline Rational sliced_volume(const Cone& c, const LatticeVector& l) {
  Rational v = 0;
  for (const auto& piece : c.triangulation()) {
    linalg::QMatrix m;
    Rational denom = 1;
    for (auto i : piece) {
      m.push_back(c.rays()[i].to_rational());
      denom *= Rational(dot(l, c.rays()[i]));
    }
    Rational d = linalg::determinant(m);
    if (d < 0) d = -d;
    v += d / denom;
  }
  return v;
}

inline LatticeVector interior_functional(const Cone& c) {
  LatticeVector l(c.ambient_rank());
  for (const auto& f : c.facets()) l = l + f.normal;
  return l;
}

}  // namespace detail

// Equal supports and every cone of `fine` inside a cone of `coarse`.
// Supports are compared exactly through sliced volumes, which requires both
// fans to be valid and pure full-dimensional.
inline bool is_subdivision(const Fan& fine, const Fan& coarse) {
  if (fine.ambient_rank() != coarse.ambient_rank()) throw InputError("fans of different ambient rank");
  if (!fine.is_pure_full_dimensional() || !coarse.is_pure_full_dimensional())
    throw InputError("subdivision test needs pure full-dimensional fans");
  std::vector<Rational> covered(coarse.size(), 0);
  std::vector<LatticeVector> funcs;
  for (const auto& c : coarse.maximal_cones()) funcs.push_back(detail::interior_functional(c));
  for (const auto& t : fine.maximal_cones()) {
    bool inside = false;
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      if (!coarse.maximal_cones()[k].contains(t)) continue;
      covered[k] += detail::sliced_volume(t, funcs[k]);
      inside = true;
      break;
    }
    if (!inside) return false;
  }
  for (std::size_t k = 0; k < coarse.size(); ++k)
    if (covered[k] != detail::sliced_volume(coarse.maximal_cones()[k], funcs[k])) return false;
  return true;
}

struct StarReport {
  bool ok = true;
  std::vector<std::vector<std::size_t>> violations;  // coordinate subsets J (0-based)
};

// Property (*): whenever the support function vanishes somewhere in the
// relative interior of the coordinate face sigma_J, its closure is a cone of
// the candidate. h vanishes there iff some exponent avoids J.
inline StarReport property_star_check(const Fan& candidate, const SparsePolynomial& f) {
  const std::size_t n = f.n_vars();
  if (candidate.ambient_rank() != n) throw InputError("fan and polynomial have different rank");
  if (f.is_zero()) throw InputError("property (*) of the zero polynomial");
  StarReport r;
  const auto exps = exponent_set(f);
  for (std::size_t k = 1; k <= n; ++k) {
    linalg::for_each_subset(n, k, [&](const detail::IndexSet& J) {
      const bool vanishes = std::any_of(exps.begin(), exps.end(), [&](const LatticeVector& e) {
        return std::all_of(J.begin(), J.end(), [&](std::size_t i) { return e[i] == 0; });
      });
      if (!vanishes) return false;
      std::vector<LatticeVector> face;
      for (auto i : J) face.push_back(LatticeVector::unit(n, i));
      if (!candidate.has_cone(face)) {
        r.ok = false;
        r.violations.push_back(J);
      }
      return false;
    });
  }
  return r;
}

struct SubdivisionReport {
  bool refines = false;
  bool regular = false;
  std::optional<bool> admissible;  // set when a polynomial is supplied
  bool g_regular = false;
  std::vector<FanIssue> failures;
};

inline SubdivisionReport g_subdivision_check(const Fan& fine, const Fan& coarse,
                                             const std::optional<SparsePolynomial>& f = std::nullopt) {
  if (!is_subdivision(fine, coarse)) throw InputError("fan is not a subdivision of the coarse fan");
  SubdivisionReport r;
  r.refines = true;
  r.regular = true;
  for (const auto& c : fine.maximal_cones())
    if (!is_regular_cone(c)) {
      r.regular = false;
      r.failures.push_back({c.str(), "not regular (multiplicity " + multiplicity(c).get_str() + ")"});
    }
  const auto fine_rays = fine.rays();
  bool rays_match = true;
  for (const auto& s : coarse.maximal_cones()) {
    std::set<LatticeVector> inside;
    for (const auto& v : fine_rays)
      if (s.contains(v)) inside.insert(v);
    const auto hb = hilbert_basis(s);
    const std::set<LatticeVector> hbs(hb.begin(), hb.end());
    for (const auto& v : inside)
      if (!hbs.count(v)) {
        rays_match = false;
        r.failures.push_back({s.str(), "ray " + v.str() + " is not an irreducible element"});
      }
    for (const auto& v : hbs)
      if (!inside.count(v)) {
        rays_match = false;
        r.failures.push_back({s.str(), "irreducible element " + v.str() + " is not a ray"});
      }
  }
  r.g_regular = r.regular && rays_match;
  if (f) {
    const auto star = property_star_check(fine, *f);
    r.admissible = star.ok;
    for (const auto& J : star.violations) {
      std::string s = "{";
      for (std::size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i] + 1);
      r.failures.push_back({"sigma_J " + s + "}", "coordinate face is not a cone of the fan"});
    }
  }
  return r;
}

inline Fan stellar_subdivision(const Fan& F, const LatticeVector& u) {
  if (u.size() != F.ambient_rank()) throw InputError("subdivision vector has wrong rank");
  if (u.is_zero()) throw InputError("cannot subdivide at the zero vector");
  if (!u.is_primitive()) throw InputError("subdivision vector must be primitive");
  if (!F.contains(u)) throw InputError("vector " + u.str() + " is outside the support of the fan");
  for (const auto& c : F.maximal_cones())
    if (c.has_ray(u)) return F;

  std::vector<Cone> out;
  std::vector<std::string> labels;
  std::set<std::vector<LatticeVector>> seen;
  auto push = [&](Cone c, std::string label) {
    if (seen.insert(c.sorted_rays()).second) {
      out.push_back(std::move(c));
      labels.push_back(std::move(label));
    }
  };
  for (std::size_t k = 0; k < F.size(); ++k) {
    const Cone& c = F.maximal_cones()[k];
    const std::string& base = F.labels()[k];
    if (!c.contains(u)) {
      push(c, base);
      continue;
    }
    if (c.is_simplicial()) {
      auto lam = linalg::solve_left(to_rational(c.rays()), u.to_rational());
      for (std::size_t i = 0; i < c.rays().size(); ++i) {
        if ((*lam)[i] <= 0) continue;
        auto rays = c.rays();
        rays[i] = u;
        push(Cone(c.ambient_rank(), rays), base + "." + std::to_string(i + 1));
      }
      continue;
    }
    std::size_t idx = 0;
    for (const auto& f : c.facets()) {
      std::vector<LatticeVector> rays;
      for (auto i : f.rays) rays.push_back(c.rays()[i]);
      if (Cone(c.ambient_rank(), rays).contains(u)) continue;
      rays.push_back(u);
      push(Cone(c.ambient_rank(), rays), base + "." + std::to_string(++idx));
    }
  }
  return Fan(F.ambient_rank(), std::move(out), std::move(labels));
}

// Maximal cones are the normal cones of the vertices of the Newton polyhedron.
inline Fan newton_fan(const SparsePolynomial& f) {
  const auto P = newton_polyhedron(f);
  std::vector<Cone> cones;
  std::vector<std::string> labels;
  for (const auto& v : P.vertices()) {
    cones.push_back(normal_cone(P, v));
    labels.push_back("N" + v.str());
  }
  return Fan(f.n_vars(), std::move(cones), std::move(labels));
}

// Edges between rays that span a two-dimensional cone of the fan.
inline std::vector<std::pair<LatticeVector, LatticeVector>> ray_adjacency(const Fan& F) {
  std::set<std::pair<LatticeVector, LatticeVector>> edges;
  for (const auto& c : F.maximal_cones())
    for (const auto& face : c.faces()) {
      if (face.size() != 2) continue;
      auto a = c.rays()[face[0]], b = c.rays()[face[1]];
      if (b < a) std::swap(a, b);
      edges.insert({a, b});
    }
  return {edges.begin(), edges.end()};
}

inline std::string fan_to_dot(const Fan& F) {
  std::string s = "graph fan {\n";
  for (const auto& r : F.rays()) s += "  \"" + r.str() + "\";\n";
  for (const auto& [a, b] : ray_adjacency(F)) s += "  \"" + a.str() + "\" -- \"" + b.str() + "\";\n";
  return s + "}\n";
}

}  // namespace nashtor

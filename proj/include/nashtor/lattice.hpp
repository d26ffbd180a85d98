#pragma once

// Integer lattice vectors, Smith normal form, and rational polyhedral cones.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nashtor/arith.hpp"
#include "nashtor/linalg.hpp"

namespace nashtor {

class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t n) : c_(n, 0) {}
  LatticeVector(std::initializer_list<long> xs) {
    for (long x : xs) c_.emplace_back(x);
  }
  explicit LatticeVector(std::vector<Integer> xs) : c_(std::move(xs)) {}

  static LatticeVector unit(std::size_t n, std::size_t i) {
    LatticeVector e(n);
    e.c_.at(i) = 1;
    return e;
  }

  std::size_t size() const { return c_.size(); }
  const Integer& operator[](std::size_t i) const { return c_[i]; }
  Integer& operator[](std::size_t i) { return c_[i]; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }
  const std::vector<Integer>& coords() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Integer& x) { return x == 0; });
  }
  bool is_nonnegative() const {
    return std::all_of(c_.begin(), c_.end(), [](const Integer& x) { return x >= 0; });
  }
  bool is_positive() const {
    return std::all_of(c_.begin(), c_.end(), [](const Integer& x) { return x > 0; });
  }
  Integer content() const {
    Integer g = 0;
    for (const auto& x : c_) g = nashtor::gcd(g, x);
    return g;
  }
  bool is_primitive() const { return content() == 1; }

  linalg::QVector to_rational() const { return {c_.begin(), c_.end()}; }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LatticeVector& a, const LatticeVector& b) { return !(a == b); }
  friend bool operator<(const LatticeVector& a, const LatticeVector& b) { return a.c_ < b.c_; }

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
  }
  friend LatticeVector operator-(LatticeVector a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend LatticeVector operator*(const Integer& k, LatticeVector a) {
    for (auto& x : a.c_) x *= k;
    return a;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ",";
      s += c_[i].get_str();
    }
    return s + ")";
  }

 private:
  static void check_same(const LatticeVector& a, const LatticeVector& b) {
    if (a.size() != b.size()) throw Error("lattice vectors of different rank");
  }
  std::vector<Integer> c_;
};

inline std::ostream& operator<<(std::ostream& os, const LatticeVector& v) { return os << v.str(); }

inline Integer dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw Error("dot product of vectors of different rank");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline LatticeVector primitive(const LatticeVector& v) {
  const Integer g = v.content();
  if (g == 0) throw InputError("primitive() of the zero vector");
  std::vector<Integer> c;
  for (const auto& x : v) c.push_back(x / g);
  return LatticeVector(std::move(c));
}

// Primitive integer vector on the ray spanned by a nonzero rational vector.
inline LatticeVector primitive(const linalg::QVector& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  std::vector<Integer> c;
  for (const auto& x : v) c.push_back(Integer(x * den));
  return primitive(LatticeVector(std::move(c)));
}

using IntMatrix = std::vector<std::vector<Integer>>;

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix to_matrix(const std::vector<LatticeVector>& rows) {
  IntMatrix m;
  for (const auto& r : rows) m.push_back(r.coords());
  return m;
}

inline linalg::QMatrix to_rational(const IntMatrix& m) {
  linalg::QMatrix q;
  for (const auto& r : m) q.emplace_back(r.begin(), r.end());
  return q;
}

inline linalg::QMatrix to_rational(const std::vector<LatticeVector>& rows) {
  linalg::QMatrix q;
  for (const auto& r : rows) q.push_back(r.to_rational());
  return q;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, std::vector<Integer>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline IntMatrix integer_inverse(const IntMatrix& a) {
  auto inv = linalg::inverse(to_rational(a));
  if (!inv) throw Error("matrix is singular");
  IntMatrix out(a.size(), std::vector<Integer>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if ((*inv)[i][j].get_den() != 1) throw Error("matrix is not unimodular");
      out[i][j] = (*inv)[i][j].get_num();
    }
  return out;
}

struct SnfResult {
  IntMatrix D;  // diagonal, D = U * A * V
  IntMatrix U;
  IntMatrix V;
  std::vector<Integer> diagonal;  // nonzero invariant factors, each dividing the next
  std::size_t rank = 0;
};

inline SnfResult smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  for (const auto& row : a)
    if (row.size() != n) throw InputError("ragged matrix");
  SnfResult r{a, identity_matrix(m), identity_matrix(n), {}, 0};
  auto& D = r.D;
  auto& U = r.U;
  auto& V = r.V;
  auto row_addmul = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < n; ++j) D[dst][j] += q * D[src][j];
    for (std::size_t j = 0; j < m; ++j) U[dst][j] += q * U[src][j];
  };
  auto col_addmul = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < m; ++i) D[i][dst] += q * D[i][src];
    for (std::size_t i = 0; i < n; ++i) V[i][dst] += q * V[i][src];
  };
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(D[i], D[j]);
    std::swap(U[i], U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : D) std::swap(row[i], row[j]);
    for (auto& row : V) std::swap(row[i], row[j]);
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    bool found_any = true;
    while (true) {
      std::size_t pi = m, pj = n;
      Integer best = 0;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (D[i][j] == 0) continue;
          Integer av = abs(D[i][j]);
          if (pi == m || av < best) {
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (pi == m) {
        found_any = false;
        break;
      }
      if (pi != t) swap_rows(pi, t);
      if (pj != t) swap_cols(pj, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D[i][t] == 0) continue;
        row_addmul(i, t, -floor_div(D[i][t], D[t][t]));
        if (D[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D[t][j] == 0) continue;
        col_addmul(j, t, -floor_div(D[t][j], D[t][t]));
        if (D[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D[i][j] % D[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_addmul(t, bad, 1);
    }
    if (!found_any) break;
    if (D[t][t] < 0) {
      for (std::size_t j = 0; j < n; ++j) D[t][j] = -D[t][j];
      for (std::size_t j = 0; j < m; ++j) U[t][j] = -U[t][j];
    }
    r.diagonal.push_back(D[t][t]);
    ++r.rank;
  }
  return r;
}

// Basis of span(rows) intersected with Z^n, plus the matrix V whose first
// `rank` columns give coordinates in that basis (coords = x * V).
struct SpanLattice {
  std::vector<LatticeVector> basis;
  IntMatrix V;
  std::size_t ambient = 0;

  LatticeVector coordinates(const LatticeVector& x) const {
    std::vector<Integer> c(basis.size(), 0);
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (std::size_t i = 0; i < ambient; ++i) c[k] += x[i] * V[i][k];
    return LatticeVector(std::move(c));
  }
  LatticeVector embed(const LatticeVector& c) const {
    LatticeVector x(ambient);
    for (std::size_t k = 0; k < basis.size(); ++k)
      for (std::size_t i = 0; i < ambient; ++i) x[i] += c[k] * basis[k][i];
    return x;
  }
};

inline SpanLattice span_lattice(const std::vector<LatticeVector>& rows, std::size_t ambient) {
  SpanLattice s;
  s.ambient = ambient;
  if (rows.empty()) {
    s.V = identity_matrix(ambient);
    return s;
  }
  const auto snf = smith_normal_form(to_matrix(rows));
  s.V = snf.V;
  const auto vinv = integer_inverse(snf.V);
  for (std::size_t k = 0; k < snf.rank; ++k) s.basis.emplace_back(vinv[k]);
  return s;
}

namespace detail {

using IndexSet = std::vector<std::size_t>;

inline linalg::QMatrix rows_of(const std::vector<LatticeVector>& rays, const IndexSet& idx) {
  linalg::QMatrix m;
  for (auto i : idx) m.push_back(rays[i].to_rational());
  return m;
}

inline std::size_t rank_of(const std::vector<LatticeVector>& rays, const IndexSet& idx) {
  return idx.empty() ? 0 : linalg::rank(rows_of(rays, idx));
}

inline bool nonnegative_solution(const linalg::QMatrix& rows, const linalg::QVector& v) {
  auto lam = linalg::solve_left(rows, v);
  if (!lam) return false;
  return std::all_of(lam->begin(), lam->end(), [](const Rational& x) { return x >= 0; });
}

// Membership of v in cone(gens) by Caratheodory: some linearly independent
// subset of maximal size must contain v. Works for non-pointed generator sets.
inline bool in_generated_cone(const std::vector<LatticeVector>& gens, const LatticeVector& v) {
  if (v.is_zero()) return true;
  if (gens.empty()) return false;
  IndexSet all(gens.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const std::size_t r = rank_of(gens, all);
  const auto vq = v.to_rational();
  return linalg::for_each_subset(gens.size(), r, [&](const IndexSet& s) {
    auto m = rows_of(gens, s);
    if (linalg::rank(m) != r) return false;
    return nonnegative_solution(m, vq);
  });
}

struct FacetData {
  LatticeVector normal;  // nonnegative on the cone, zero exactly on the facet rays
  IndexSet rays;          // indices into the parent ray list
};

// Facets of cone(rays[idx]) assuming the listed rays are its extremal rays.
inline std::vector<FacetData> facets_of(const std::vector<LatticeVector>& rays, const IndexSet& idx,
                                        std::size_t ambient) {
  std::vector<FacetData> out;
  const std::size_t d = rank_of(rays, idx);
  if (d == 0) return out;
  if (d == 1) {
    out.push_back({primitive(rays[idx[0]]), {}});
    return out;
  }
  std::set<IndexSet> seen;
  linalg::for_each_subset(idx.size(), d - 1, [&](const IndexSet& sub) {
    IndexSet s;
    for (auto k : sub) s.push_back(idx[k]);
    auto m = rows_of(rays, s);
    if (linalg::rank(m) != d - 1) return false;
    for (const auto& b : linalg::nullspace(m, ambient)) {
      std::vector<Rational> vals;
      bool any_nonzero = false;
      for (auto i : idx) {
        Rational x = 0;
        for (std::size_t j = 0; j < ambient; ++j) x += b[j] * rays[i][j];
        any_nonzero = any_nonzero || x != 0;
        vals.push_back(x);
      }
      if (!any_nonzero) continue;
      bool pos = false, neg = false;
      for (const auto& x : vals) {
        pos = pos || x > 0;
        neg = neg || x < 0;
      }
      if (pos && neg) break;
      IndexSet tight;
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (vals[k] == 0) tight.push_back(idx[k]);
      if (seen.insert(tight).second) {
        auto nrm = primitive(b);
        if (neg) nrm = -nrm;
        out.push_back({nrm, tight});
      }
      break;
    }
    return false;
  });
  std::sort(out.begin(), out.end(), [](const FacetData& a, const FacetData& b) { return a.rays < b.rays; });
  return out;
}

// Pulling triangulation of cone(rays[idx]) into simplicial cones.
inline std::vector<IndexSet> triangulate(const std::vector<LatticeVector>& rays, const IndexSet& idx,
                                         std::size_t ambient) {
  const std::size_t d = rank_of(rays, idx);
  if (idx.size() == d) return {idx};
  std::vector<IndexSet> out;
  const std::size_t apex = idx[0];
  for (const auto& f : facets_of(rays, idx, ambient)) {
    if (std::find(f.rays.begin(), f.rays.end(), apex) != f.rays.end()) continue;
    for (auto t : triangulate(rays, f.rays, ambient)) {
      t.push_back(apex);
      std::sort(t.begin(), t.end());
      out.push_back(std::move(t));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Rational polyhedral cone given by its primitive extremal rays. Construction
// validates that the input is strongly convex and that every ray is extremal.
// Ray order is preserved; it fixes chart variable order.
class Cone {
 public:
  Cone() = default;
  Cone(std::size_t ambient, std::vector<LatticeVector> rays) : ambient_(ambient), rays_(std::move(rays)) {
    validate();
    detail::IndexSet all(rays_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    dim_ = detail::rank_of(rays_, all);
    pieces_ = rays_.empty() ? std::vector<detail::IndexSet>{} : detail::triangulate(rays_, all, ambient_);
  }
  explicit Cone(const std::vector<LatticeVector>& rays) : Cone(rays.empty() ? 0 : rays[0].size(), rays) {}

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t dimension() const { return dim_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  bool is_simplicial() const { return rays_.size() == dim_; }
  bool is_full_dimensional() const { return dim_ == ambient_; }

  std::vector<LatticeVector> sorted_rays() const {
    auto r = rays_;
    std::sort(r.begin(), r.end());
    return r;
  }

  bool has_ray(const LatticeVector& v) const {
    return std::find(rays_.begin(), rays_.end(), v) != rays_.end();
  }

  const std::vector<detail::IndexSet>& triangulation() const { return pieces_; }

  std::vector<detail::FacetData> facets() const {
    detail::IndexSet all(rays_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return detail::facets_of(rays_, all, ambient_);
  }

  bool contains(const LatticeVector& v) const {
    if (v.size() != ambient_) throw InputError("point of wrong rank for cone membership");
    if (v.is_zero()) return true;
    const auto vq = v.to_rational();
    for (const auto& p : pieces_)
      if (detail::nonnegative_solution(detail::rows_of(rays_, p), vq)) return true;
    return false;
  }

  bool contains(const Cone& other) const {
    return std::all_of(other.rays_.begin(), other.rays_.end(), [&](const LatticeVector& r) { return contains(r); });
  }

  // Every face as a sorted index set into rays(), including {} and the cone itself.
  std::vector<detail::IndexSet> faces() const {
    detail::IndexSet all(rays_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::set<detail::IndexSet> out{all};
    const auto fs = facets();
    std::vector<detail::IndexSet> frontier{all};
    while (!frontier.empty()) {
      std::vector<detail::IndexSet> next;
      for (const auto& g : frontier)
        for (const auto& f : fs) {
          detail::IndexSet x;
          std::set_intersection(g.begin(), g.end(), f.rays.begin(), f.rays.end(), std::back_inserter(x));
          if (out.insert(x).second) next.push_back(x);
        }
      frontier = std::move(next);
    }
    if (dim_ > 0) out.insert(detail::IndexSet{});
    return {out.begin(), out.end()};
  }

  // Smallest face containing the given rays (sorted index set).
  detail::IndexSet face_closure(const detail::IndexSet& s) const {
    detail::IndexSet all(rays_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    detail::IndexSet closure = all;
    for (const auto& f : facets()) {
      if (!std::includes(f.rays.begin(), f.rays.end(), s.begin(), s.end())) continue;
      detail::IndexSet x;
      std::set_intersection(closure.begin(), closure.end(), f.rays.begin(), f.rays.end(), std::back_inserter(x));
      closure = std::move(x);
    }
    return closure;
  }

  // Whether the given vectors are exactly the rays of one face.
  bool is_face(const std::vector<LatticeVector>& face_rays) const {
    detail::IndexSet s;
    for (const auto& v : face_rays) {
      auto it = std::find(rays_.begin(), rays_.end(), v);
      if (it == rays_.end()) return false;
      s.push_back(static_cast<std::size_t>(it - rays_.begin()));
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) return true;
    return face_closure(s) == s;
  }

  // Inequalities a.x >= 0 cutting out the cone (facet normals plus the
  // annihilator of the span with both signs).
  std::vector<LatticeVector> inequalities() const {
    std::vector<LatticeVector> out;
    if (dim_ > 0)
      for (const auto& f : facets()) out.push_back(f.normal);
    for (const auto& b : linalg::nullspace(to_rational(rays_), ambient_)) {
      auto v = primitive(b);
      out.push_back(v);
      out.push_back(-v);
    }
    return out;
  }

  std::string str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      if (i) s += ", ";
      s += rays_[i].str();
    }
    return s + ">";
  }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.ambient_ == b.ambient_ && a.sorted_rays() == b.sorted_rays();
  }

 private:
  void validate() const {
    std::set<LatticeVector> seen;
    for (const auto& r : rays_) {
      if (r.size() != ambient_) throw InputError("ray " + r.str() + " has wrong rank");
      if (r.is_zero()) throw InputError("zero ray");
      if (!r.is_primitive()) throw InputError("ray " + r.str() + " is not primitive");
      if (!seen.insert(r).second) throw InputError("duplicate ray " + r.str());
      if (detail::in_generated_cone(rays_, -r)) throw InputError("cone generated by " + str() + " is not strongly convex");
    }
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      auto others = rays_;
      others.erase(others.begin() + static_cast<long>(i));
      if (detail::in_generated_cone(others, rays_[i]))
        throw InputError("ray " + rays_[i].str() + " is not extremal in " + str());
    }
  }

  std::size_t ambient_ = 0;
  std::vector<LatticeVector> rays_;
  std::size_t dim_ = 0;
  std::vector<detail::IndexSet> pieces_;
};

// Primitive extremal rays of cone(generators); zero generators are ignored.
inline std::vector<LatticeVector> extremal_rays(const std::vector<LatticeVector>& generators) {
  std::vector<LatticeVector> g;
  for (const auto& v : generators) {
    if (v.is_zero()) continue;
    auto p = primitive(v);
    if (std::find(g.begin(), g.end(), p) == g.end()) g.push_back(p);
  }
  for (const auto& v : g)
    if (detail::in_generated_cone(g, -v)) throw InputError("generators do not span a strongly convex cone");
  for (std::size_t i = 0; i < g.size();) {
    auto others = g;
    others.erase(others.begin() + static_cast<long>(i));
    if (detail::in_generated_cone(others, g[i]))
      g = std::move(others);
    else
      ++i;
  }
  return g;
}

inline Cone cone_from_generators(std::size_t ambient, const std::vector<LatticeVector>& generators) {
  return Cone(ambient, extremal_rays(generators));
}

// Regular: the rays extend to a basis of Z^n.
inline bool is_regular_cone(const Cone& c) {
  if (c.rays().empty()) return true;
  if (!c.is_simplicial()) return false;
  const auto snf = smith_normal_form(to_matrix(c.rays()));
  return std::all_of(snf.diagonal.begin(), snf.diagonal.end(), [](const Integer& d) { return d == 1; });
}

// Index of the lattice generated by the rays inside its saturation.
inline Integer multiplicity(const Cone& c) {
  if (!c.is_simplicial()) throw InputError("multiplicity of a non-simplicial cone");
  Integer m = 1;
  if (c.rays().empty()) return m;
  for (const auto& d : smith_normal_form(to_matrix(c.rays())).diagonal) m *= d;
  return m;
}

inline std::vector<LatticeVector> dual_basis(const Cone& c) {
  if (!c.is_full_dimensional() || !c.is_simplicial()) throw InputError("dual basis needs a full-dimensional simplicial cone");
  // rows m_i with <m_i, rho_j> = delta_ij: M = (R^T)^{-1}, R rows = rays
  auto inv = linalg::inverse(linalg::transpose(to_rational(c.rays())));
  if (!inv) throw Error("singular ray matrix");
  std::vector<LatticeVector> out;
  for (const auto& row : *inv) {
    std::vector<Integer> z;
    for (const auto& x : row) {
      if (x.get_den() != 1) throw InputError("cone " + c.str() + " is not regular");
      z.push_back(x.get_num());
    }
    out.emplace_back(std::move(z));
  }
  return out;
}

namespace detail {

// Lattice points sum frac(lambda_i) rho_i of the half-open fundamental
// parallelepiped of a full-dimensional simplicial cone (rows of R).
inline std::vector<LatticeVector> parallelepiped_points(const std::vector<LatticeVector>& R) {
  const std::size_t n = R.size();
  const auto snf = smith_normal_form(to_matrix(R));
  const auto vinv = integer_inverse(snf.V);
  const auto rinv = linalg::inverse(to_rational(R));
  if (!rinv) throw Error("singular simplicial cone");
  std::vector<LatticeVector> out;
  std::vector<Integer> y(n, 0);
  while (true) {
    LatticeVector x(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) x[j] += y[k] * vinv[k][j];
    LatticeVector p = x;
    for (std::size_t i = 0; i < n; ++i) {
      Rational lam = 0;
      for (std::size_t j = 0; j < n; ++j) lam += Rational(x[j]) * (*rinv)[j][i];
      const Integer fl = floor(lam);
      if (fl != 0) p = p - fl * R[i];
    }
    out.push_back(p);
    std::size_t k = 0;
    while (k < n) {
      if (++y[k] < snf.diagonal[k]) break;
      y[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  return out;
}

}  // namespace detail

// Minimal generating set of the semigroup cone ∩ Z^n.
inline std::vector<LatticeVector> hilbert_basis(const Cone& c) {
  if (c.rays().empty()) return {};
  const std::size_t n = c.ambient_rank();
  const auto span = span_lattice(c.rays(), n);
  std::vector<LatticeVector> local_rays;
  for (const auto& r : c.rays()) local_rays.push_back(span.coordinates(r));
  const Cone local(span.basis.size(), local_rays);

  std::set<LatticeVector> cand(local_rays.begin(), local_rays.end());
  for (const auto& piece : local.triangulation()) {
    std::vector<LatticeVector> R;
    for (auto i : piece) R.push_back(local_rays[i]);
    for (auto& p : detail::parallelepiped_points(R))
      if (!p.is_zero()) cand.insert(p);
  }
  std::vector<LatticeVector> basis;
  for (const auto& v : cand) {
    bool reducible = false;
    for (const auto& h : cand) {
      if (h == v) continue;
      if (local.contains(v - h)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(span.embed(v));
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

// Intersection of two cones of the same ambient rank.
inline Cone intersect(const Cone& a, const Cone& b) {
  const std::size_t n = a.ambient_rank();
  if (b.ambient_rank() != n) throw InputError("cones of different ambient rank");
  auto ineq = a.inequalities();
  for (auto& v : b.inequalities()) ineq.push_back(v);
  std::sort(ineq.begin(), ineq.end());
  ineq.erase(std::unique(ineq.begin(), ineq.end()), ineq.end());
  std::set<LatticeVector> found;
  if (n == 1) {
    for (long s : {1L, -1L}) {
      LatticeVector v{s};
      if (a.contains(v) && b.contains(v)) found.insert(v);
    }
  } else {
    linalg::for_each_subset(ineq.size(), n - 1, [&](const detail::IndexSet& sub) {
      auto m = detail::rows_of(ineq, sub);
      if (linalg::rank(m) != n - 1) return false;
      auto ns = linalg::nullspace(m, n);
      auto v = primitive(ns.at(0));
      for (const auto& cand : {v, -v}) {
        bool ok = std::all_of(ineq.begin(), ineq.end(), [&](const LatticeVector& w) { return dot(w, cand) >= 0; });
        if (ok) found.insert(cand);
      }
      return false;
    });
  }
  return Cone(n, extremal_rays({found.begin(), found.end()}));
}

// A ∩ B is a face of both A and B.
inline bool meet_in_common_face(const Cone& a, const Cone& b) {
  const Cone m = intersect(a, b);
  auto face_of = [&m](const Cone& c, const Cone& other) {
    for (const auto& r : m.rays())
      if (!c.has_ray(r)) return false;
    if (m.rays().empty()) return true;
    detail::IndexSet s;
    for (std::size_t i = 0; i < c.rays().size(); ++i)
      if (m.has_ray(c.rays()[i])) s.push_back(i);
    for (auto i : c.face_closure(s))
      if (!other.contains(c.rays()[i])) return false;
    return true;
  };
  return face_of(a, b) && face_of(b, a);
}

}  // namespace nashtor

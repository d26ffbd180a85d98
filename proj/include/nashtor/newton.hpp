#pragma once

// Newton polyhedron of a polynomial, its compact faces, the support
// function, face polynomials, and a modular non-degeneracy probe.

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nashtor/lattice.hpp"
#include "nashtor/poly.hpp"

namespace nashtor {

inline LatticeVector to_lattice(const Exponent& e) {
  std::vector<Integer> c;
  for (auto x : e) c.emplace_back(static_cast<unsigned long>(x));
  return LatticeVector(std::move(c));
}

inline std::vector<LatticeVector> exponent_set(const SparsePolynomial& f) {
  std::vector<LatticeVector> out;
  for (const auto& [e, c] : f.terms()) out.push_back(to_lattice(e));
  return out;
}

struct NewtonFacet {
  LatticeVector normal;  // primitive, nonnegative
  Integer offset;

  friend bool operator<(const NewtonFacet& a, const NewtonFacet& b) {
    return a.normal < b.normal || (a.normal == b.normal && a.offset < b.offset);
  }
  friend bool operator==(const NewtonFacet& a, const NewtonFacet& b) {
    return a.normal == b.normal && a.offset == b.offset;
  }
};

class NewtonPolyhedron {
 public:
  NewtonPolyhedron(std::size_t n, std::vector<LatticeVector> vertices, std::vector<NewtonFacet> facets)
      : n_(n), vertices_(std::move(vertices)), facets_(std::move(facets)) {}

  std::size_t dimension() const { return n_; }
  const std::vector<LatticeVector>& vertices() const { return vertices_; }
  const std::vector<NewtonFacet>& facets() const { return facets_; }

  // h(p) = min over the polyhedron of <r,p>, for p with nonnegative entries.
  Integer support(const LatticeVector& p) const {
    if (p.size() != n_) throw InputError("support function argument has wrong length");
    if (!p.is_nonnegative()) throw InputError("support function is -infinity outside the standard cone");
    Integer best = dot(vertices_.at(0), p);
    for (const auto& v : vertices_) best = std::min(best, Integer(dot(v, p)));
    return best;
  }

  bool contains(const LatticeVector& r) const {
    if (!r.is_nonnegative()) return false;
    return std::all_of(facets_.begin(), facets_.end(),
                       [&](const NewtonFacet& f) { return dot(f.normal, r) >= f.offset; });
  }

  // Facets with <normal, v> = offset.
  std::vector<NewtonFacet> tight_facets(const LatticeVector& v) const {
    std::vector<NewtonFacet> out;
    for (const auto& f : facets_)
      if (dot(f.normal, v) == f.offset) out.push_back(f);
    return out;
  }

  // argmin of <p, .> over the vertices
  std::vector<LatticeVector> face_exposed_by(const LatticeVector& p) const {
    const Integer h = support(p);
    std::vector<LatticeVector> out;
    for (const auto& v : vertices_)
      if (dot(v, p) == h) out.push_back(v);
    return out;
  }

 private:
  std::size_t n_;
  std::vector<LatticeVector> vertices_;
  std::vector<NewtonFacet> facets_;
};

inline NewtonPolyhedron newton_polyhedron(const SparsePolynomial& f) {
  if (f.is_zero()) throw InputError("Newton polyhedron of the zero polynomial");
  const std::size_t n = f.n_vars();
  const auto all = exponent_set(f);

  std::vector<LatticeVector> pts;
  for (const auto& e : all) {
    bool dominated = false;
    for (const auto& o : all) {
      if (o == e) continue;
      bool le = true;
      for (std::size_t i = 0; i < n && le; ++i) le = o[i] <= e[i];
      if (le) {
        dominated = true;
        break;
      }
    }
    if (!dominated) pts.push_back(e);
  }

  std::set<NewtonFacet> facets;
  for (std::size_t k = 1; k <= std::min(n, pts.size()); ++k) {
    linalg::for_each_subset(pts.size(), k, [&](const detail::IndexSet& ps) {
      linalg::for_each_subset(n, n - k, [&](const detail::IndexSet& dirs) {
        linalg::QMatrix m;
        for (std::size_t j = 1; j < k; ++j) m.push_back((pts[ps[j]] - pts[ps[0]]).to_rational());
        for (auto d : dirs) m.push_back(LatticeVector::unit(n, d).to_rational());
        if (n > 1 && linalg::rank(m) != n - 1) return false;
        auto ns = linalg::nullspace(m, n);
        if (ns.size() != 1) return false;
        // the candidate is a facet only if every exponent lies on the inner side
        LatticeVector nrm = primitive(ns[0]);
        if (!nrm.is_nonnegative()) nrm = -nrm;
        if (!nrm.is_nonnegative()) return false;
        const Integer b = dot(nrm, pts[ps[0]]);
        for (const auto& e : pts)
          if (dot(nrm, e) < b) return false;
        facets.insert({nrm, b});
        return false;
      });
      return false;
    });
  }

  std::vector<NewtonFacet> fl(facets.begin(), facets.end());
  std::vector<LatticeVector> vertices;
  for (const auto& v : pts) {
    linalg::QMatrix m;
    for (const auto& fc : fl)
      if (dot(fc.normal, v) == fc.offset) m.push_back(fc.normal.to_rational());
    if (!m.empty() && linalg::rank(m) == n) vertices.push_back(v);
  }
  std::sort(vertices.begin(), vertices.end());
  return NewtonPolyhedron(n, std::move(vertices), std::move(fl));
}

inline Integer support_function(const NewtonPolyhedron& P, const LatticeVector& p) { return P.support(p); }

// Normal cone of a vertex: generated by the normals of the facets through it.
inline Cone normal_cone(const NewtonPolyhedron& P, const LatticeVector& v) {
  std::vector<LatticeVector> rays;
  for (const auto& f : P.tight_facets(v)) rays.push_back(f.normal);
  std::sort(rays.begin(), rays.end());
  return Cone(P.dimension(), extremal_rays(rays));
}

struct CompactFace {
  std::vector<LatticeVector> vertices;  // sorted
  std::size_t dimension = 0;
  LatticeVector normal;  // strictly positive vector exposing the face

  friend bool operator==(const CompactFace& a, const CompactFace& b) { return a.vertices == b.vertices; }
};

inline std::size_t affine_dimension(const std::vector<LatticeVector>& pts) {
  if (pts.size() <= 1) return 0;
  linalg::QMatrix m;
  for (std::size_t i = 1; i < pts.size(); ++i) m.push_back((pts[i] - pts[0]).to_rational());
  return linalg::rank(m);
}

inline std::vector<CompactFace> compact_faces(const NewtonPolyhedron& P) {
  std::map<std::vector<LatticeVector>, CompactFace> found;
  for (const auto& v : P.vertices()) {
    const Cone nc = normal_cone(P, v);
    for (const auto& face : nc.faces()) {
      if (face.empty()) continue;
      LatticeVector p(P.dimension());
      for (auto i : face) p = p + nc.rays()[i];
      if (!p.is_positive()) continue;
      auto w = P.face_exposed_by(p);
      if (found.count(w)) continue;
      found.emplace(w, CompactFace{w, affine_dimension(w), primitive(p)});
    }
  }
  std::vector<CompactFace> out;
  for (auto& [k, f] : found) out.push_back(std::move(f));
  std::sort(out.begin(), out.end(), [](const CompactFace& a, const CompactFace& b) {
    return a.dimension != b.dimension ? a.dimension > b.dimension : a.vertices < b.vertices;
  });
  return out;
}

// Union of the compact faces contains e.
inline bool on_newton_boundary(const NewtonPolyhedron& P, const LatticeVector& e) {
  if (!P.contains(e)) return false;
  for (const auto& g : compact_faces(P))
    if (dot(g.normal, e) == P.support(g.normal)) return true;
  return false;
}

inline SparsePolynomial face_polynomial(const SparsePolynomial& f, const CompactFace& g) {
  const auto P = newton_polyhedron(f);
  if (P.face_exposed_by(g.normal) != g.vertices) throw InputError("not a face of the Newton polyhedron");
  const Integer h = P.support(g.normal);
  SparsePolynomial r(f.n_vars());
  for (const auto& [e, c] : f.terms())
    if (dot(to_lattice(e), g.normal) == h) r.add_term(e, c);
  return r;
}

enum class ProbeVerdict { Pass, Fail, Inconclusive };

inline std::string to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::Pass: return "PASS";
    case ProbeVerdict::Fail: return "FAIL";
    default: return "INCONCLUSIVE";
  }
}

struct ProbeResult {
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  std::vector<std::uint64_t> witness;  // torus point mod `modulus` when FAIL
  std::uint64_t modulus = 0;
  std::vector<LatticeVector> face;  // face carrying the witness
  bool exhaustive = false;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1u) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1u;
  }
  return r;
}

struct ModPoly {
  std::vector<std::pair<Exponent, std::uint64_t>> terms;
  std::uint64_t eval(const std::vector<std::uint64_t>& x, std::uint64_t p) const {
    std::uint64_t s = 0;
    for (const auto& [e, c] : terms) {
      std::uint64_t t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) t = mulmod(t, powmod(x[i], e[i], p), p);
      s = (s + t) % p;
    }
    return s;
  }
};

inline ModPoly reduce_mod(const SparsePolynomial& f, std::uint64_t p) {
  ModPoly r;
  const Integer P(static_cast<unsigned long>(p));
  for (const auto& [e, c] : f.terms()) {
    Integer num = c.get_num() % P;
    if (num < 0) num += P;
    Integer den = c.get_den() % P;
    if (den == 0) throw InputError("modulus divides a coefficient denominator");
    Integer inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
    Integer v = (num * inv) % P;
    if (v != 0) r.terms.emplace_back(e, v.get_ui());
  }
  return r;
}

}  // namespace detail

// Searches for a torus point where some face polynomial and all its partials
// vanish mod a prime. Exhaustive when (modulus-1)^n <= budget.
inline ProbeResult nondegeneracy_probe(const SparsePolynomial& f, long trials, std::uint64_t modulus,
                                       std::uint64_t seed = 1, std::uint64_t budget = 1000000) {
  if (trials < 1) throw InputError("trials must be positive");
  if (modulus < 2) throw InputError("modulus must be a prime");
  const std::size_t n = f.n_vars();
  const auto P = newton_polyhedron(f);
  const auto faces = compact_faces(P);

  std::uint64_t space = 1;
  bool exhaustive = true;
  for (std::size_t i = 0; i < n && exhaustive; ++i) {
    exhaustive = space <= budget / (modulus - 1);
    space *= modulus - 1;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> dist(1, modulus - 1);
  for (const auto& g : faces) {
    const auto fg = face_polynomial(f, g);
    std::vector<detail::ModPoly> system{detail::reduce_mod(fg, modulus)};
    for (std::size_t i = 0; i < n; ++i) system.push_back(detail::reduce_mod(fg.partial(i), modulus));
    auto vanishes = [&](const std::vector<std::uint64_t>& x) {
      return std::all_of(system.begin(), system.end(),
                         [&](const detail::ModPoly& q) { return q.eval(x, modulus) == 0; });
    };
    std::vector<std::uint64_t> x(n, 1);
    if (exhaustive) {
      while (true) {
        if (vanishes(x)) return {ProbeVerdict::Fail, x, modulus, g.vertices, true};
        std::size_t k = 0;
        while (k < n) {
          if (++x[k] < modulus) break;
          x[k] = 1;
          ++k;
        }
        if (k == n) break;
      }
    } else {
      for (long t = 0; t < trials; ++t) {
        for (auto& xi : x) xi = dist(rng);
        if (vanishes(x)) return {ProbeVerdict::Fail, x, modulus, g.vertices, false};
      }
    }
  }
  ProbeResult r;
  r.verdict = exhaustive ? ProbeVerdict::Pass : ProbeVerdict::Inconclusive;
  r.modulus = modulus;
  r.exhaustive = exhaustive;
  return r;
}

// Default probe: 200 samples per face over three primes.
inline ProbeResult nondegeneracy_probe(const SparsePolynomial& f, std::uint64_t seed = 1) {
  ProbeResult last;
  bool all_pass = true;
  for (std::uint64_t p : {10007ULL, 10009ULL, 10037ULL}) {
    auto r = nondegeneracy_probe(f, 200, p, seed);
    if (r.verdict == ProbeVerdict::Fail) return r;
    all_pass = all_pass && r.verdict == ProbeVerdict::Pass;
    last = r;
  }
  last.verdict = all_pass ? ProbeVerdict::Pass : ProbeVerdict::Inconclusive;
  return last;
}

}  // namespace nashtor

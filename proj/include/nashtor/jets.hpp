#pragma once

// m-jet equations of hypersurfaces and their one-parameter deformations,
// the affine origin fiber test, the p*m <= n-p criterion, and the
// constructive lifting of an m-jet to a deformation F = f + sum s^j g_j.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "nashtor/poly.hpp"
#include "nashtor/series.hpp"

namespace nashtor {

struct JetSystem {
  std::size_t n_vars = 0;               // variables of the hypersurface
  long m = 0;
  std::vector<std::string> parameters;  // pass-through variables such as s
  VarNames names;                       // x{i}_{k} then the parameters
  std::vector<SparsePolynomial> equations;  // F_0 .. F_m

  std::size_t ring_size() const { return n_vars * static_cast<std::size_t>(m + 1) + parameters.size(); }
};

// Index of x_i^(k) (both 0-based) in a jet ring of order m.
inline std::size_t jet_variable(std::size_t i, long k, long m) {
  return i * static_cast<std::size_t>(m + 1) + static_cast<std::size_t>(k);
}

inline VarNames jet_names(std::size_t n, long m, const std::vector<std::string>& params = {}) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i)
    for (long k = 0; k <= m; ++k) v.push_back("x" + std::to_string(i + 1) + "_" + std::to_string(k));
  for (const auto& p : params) v.push_back(p);
  return VarNames(std::move(v));
}

// F has n_x hypersurface variables followed by params.size() parameters;
// only the former are replaced by jet series.
inline JetSystem relative_jet_equations(const SparsePolynomial& F, std::size_t n_x,
                                        const std::vector<std::string>& params, long m) {
  if (m < 0) throw InputError("jet order must be nonnegative");
  if (F.n_vars() != n_x + params.size()) throw InputError("polynomial does not match the declared variables");
  JetSystem js;
  js.n_vars = n_x;
  js.m = m;
  js.parameters = params;
  js.names = jet_names(n_x, m, params);
  const std::size_t N = js.ring_size();
  const SparsePolynomial zero(N);
  std::vector<PolySeries> args;
  for (std::size_t i = 0; i < n_x; ++i) {
    std::vector<SparsePolynomial> c;
    for (long k = 0; k <= m; ++k) c.push_back(SparsePolynomial::variable(N, jet_variable(i, k, m)));
    args.emplace_back(m, std::move(c), zero);
  }
  for (std::size_t j = 0; j < params.size(); ++j)
    args.push_back(PolySeries::constant(m, SparsePolynomial::variable(N, n_x * static_cast<std::size_t>(m + 1) + j)));
  const auto s = substitute_series(F, args);
  js.equations = s.coeffs();
  return js;
}

inline JetSystem jet_equations(const SparsePolynomial& f, long m) {
  return relative_jet_equations(f, f.n_vars(), {}, m);
}

struct AffineFiber {
  bool affine = false;
  std::optional<long> dimension;
};

// All jet equations vanish once the order-0 variables are set to zero: the
// fiber over the origin is the whole affine space of higher coefficients.
inline AffineFiber origin_fiber_is_affine(const SparsePolynomial& f, long m) {
  const auto js = jet_equations(f, m);
  for (auto eq : js.equations) {
    for (std::size_t i = 0; i < f.n_vars(); ++i) eq = eq.set_variable(jet_variable(i, 0, m), 0);
    if (!eq.is_zero()) return {false, std::nullopt};
  }
  return {true, static_cast<long>(f.n_vars()) * m};
}

// Dimension of the m-jets of a smooth codimension-p locus in A^n.
inline long smooth_jet_dimension(long n, long p, long m) {
  if (p < 0 || p > n || m < 0) throw InputError("parameters out of range");
  return (n - p) * (m + 1);
}

inline bool lic_criterion(long n, long p, long m) {
  if (!(0 < p && p < n) || m < 0) throw InputError("lic_criterion needs 0 < p < n and m >= 0");
  return p * m <= n - p;
}

namespace detail {

inline std::vector<RationalSeries> check_jet(const std::vector<RationalSeries>& phi, std::size_t n) {
  if (phi.size() != n) throw InputError("jet has the wrong number of coordinates");
  for (const auto& s : phi)
    if (s.truncation() != phi[0].truncation()) throw InputError("jet coordinates have different truncation");
  return phi;
}

}  // namespace detail

struct HypothesisReport {
  bool ok = false;
  bool min_order_ok = false;     // nu_v^m f = min_i ord(phi^*(x_i d_i f))
  std::vector<bool> dominated;   // nu_v^m f <= nu_v^m g_j, per j
  std::vector<long> v;           // ord_t(phi_i)
  RationalOrder nu_f;
  std::vector<Order> term_orders;  // ord_t^m of phi_i * (d_i f)(phi)
  std::vector<RationalOrder> nu_g;
  std::string failing;           // name of the first failing condition
};

inline HypothesisReport check_deform_hypotheses(const SparsePolynomial& f, const std::vector<SparsePolynomial>& gs,
                                                const std::vector<RationalSeries>& phi, long m) {
  const std::size_t n = f.n_vars();
  detail::check_jet(phi, n);
  if (phi[0].truncation() != m) throw InputError("jet truncation does not match m");
  for (const auto& g : gs)
    if (g.n_vars() != n) throw InputError("deformation term has the wrong number of variables");
  if (!substitute_series(f, phi).is_zero()) throw InputError("phi is not an m-jet of f");

  HypothesisReport r;
  std::vector<Rational> w;
  for (const auto& s : phi) {
    const Order o = ord_t_m(s);
    if (o.is_infinite()) throw InputError("jet coordinate vanishes mod t^(m+1)");
    if (o.value() == 0) throw InputError("jet is not centered at the origin");
    r.v.push_back(o.value());
    w.emplace_back(o.value());
  }
  const WeightVector v(w);
  r.nu_f = f.is_zero() ? RationalOrder::infinity() : nu_v_m(f, v, m);
  Order mn = Order::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = ord_t_m(phi[i] * substitute_series(f.partial(i), phi));
    r.term_orders.push_back(t);
    mn = min(mn, t);
  }
  const RationalOrder mn_q = mn.is_infinite() ? RationalOrder::infinity() : RationalOrder(Rational(mn.value()));
  r.min_order_ok = r.nu_f == mn_q;
  r.ok = r.min_order_ok;
  if (!r.ok) r.failing = "min_order";
  for (std::size_t j = 0; j < gs.size(); ++j) {
    const auto nu = gs[j].is_zero() ? RationalOrder::infinity() : nu_v_m(gs[j], v, m);
    r.nu_g.push_back(nu);
    const bool d = r.nu_f <= nu;
    r.dominated.push_back(d);
    if (!d && r.ok) r.failing = "domination_g" + std::to_string(j + 1);
    r.ok = r.ok && d;
  }
  return r;
}

enum class Applicability { Applicable, NotPhamBrieskorn, Undecided };

inline std::string to_string(Applicability a) {
  switch (a) {
    case Applicability::Applicable: return "APPLICABLE";
    case Applicability::NotPhamBrieskorn: return "NOT_PHAM_BRIESKORN";
    default: return "UNDECIDED";
  }
}

// Pure-power exponents a_i when f = sum c_i x_i^{a_i} with every a_i >= 2.
inline std::optional<std::vector<unsigned>> pham_brieskorn_exponents(const SparsePolynomial& f) {
  const std::size_t n = f.n_vars();
  std::vector<unsigned> a(n, 0);
  for (const auto& [e, c] : f.terms()) {
    std::size_t nz = 0, var = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (e[i]) {
        ++nz;
        var = i;
      }
    if (nz != 1 || a[var] != 0 || e[var] < 2) return std::nullopt;
    a[var] = e[var];
  }
  if (std::any_of(a.begin(), a.end(), [](unsigned x) { return x == 0; })) return std::nullopt;
  return a;
}

// Membership of every g in the monomial ideal (x_1^{a_1}, ..., x_n^{a_n}).
// Other cases would need the integral closure and are left undecided.
inline Applicability pham_brieskorn_applicability(const SparsePolynomial& f, const std::vector<SparsePolynomial>& gs) {
  const auto a = pham_brieskorn_exponents(f);
  if (!a) return Applicability::NotPhamBrieskorn;
  for (const auto& g : gs)
    for (const auto& [e, c] : g.terms()) {
      bool in = false;
      for (std::size_t i = 0; i < e.size() && !in; ++i) in = e[i] >= (*a)[i];
      if (!in) return Applicability::Undecided;
    }
  return Applicability::Applicable;
}

// Coefficients are polynomials in the single variable s, truncated at s^D.
struct SSeriesRing {
  long m, D;

  SparsePolynomial s_trunc(const SparsePolynomial& p) const {
    SparsePolynomial r(1);
    for (const auto& [e, c] : p.terms())
      if (static_cast<long>(e[0]) <= D) r.add_term(e, c);
    return r;
  }
  PolySeries reduce(PolySeries x) const {
    return x.map_coeffs([this](const SparsePolynomial& p) { return s_trunc(p); });
  }
  PolySeries lift(const RationalSeries& a, unsigned s_power = 0) const {
    std::vector<SparsePolynomial> c;
    for (long k = 0; k <= m; ++k) c.push_back(SparsePolynomial::monomial({s_power}, a.coeff(k)));
    return reduce(PolySeries(m, std::move(c), SparsePolynomial(1)));
  }
  RationalSeries s_coefficient(const PolySeries& x, unsigned j) const {
    std::vector<Rational> c;
    for (long k = 0; k <= m; ++k) c.push_back(x.coeff(k).coeff({j}));
    return RationalSeries(m, std::move(c));
  }
};

// F(Phi, s) with F = f + sum_j s^j g_j, in (Q[s]/(s^{D+1}))[t]/(t^{m+1}).
inline PolySeries evaluate_deformation(const SparsePolynomial& f, const std::vector<SparsePolynomial>& gs,
                                       const std::vector<PolySeries>& Phi, const SSeriesRing& R) {
  std::function<PolySeries(PolySeries)> red = [&R](PolySeries x) { return R.reduce(std::move(x)); };
  PolySeries out = substitute_series(f, Phi, red);
  for (std::size_t j = 0; j < gs.size(); ++j) {
    if (static_cast<long>(j + 1) > R.D || gs[j].is_zero()) continue;
    const auto sj = SparsePolynomial::monomial({static_cast<unsigned>(j + 1)});
    out += R.reduce(substitute_series(gs[j], Phi, red).scaled(sj));
  }
  return out;
}

struct DeformationStage {
  long j = 0;
  std::size_t pivot = 0;          // i_0
  RationalSeries remainder{0, {}};  // T_j
  Order pivot_order;              // ord_t^m phi_{i_0}
  Order correction_order;         // ord_t^m psi_{j,i_0}
  bool order_bound_ok = false;
};

struct JetDeformation {
  std::vector<RationalSeries> phi;
  std::vector<std::vector<RationalSeries>> psi;  // psi[j-1][i]
  long D = 0;
  long m = 0;
  std::vector<DeformationStage> stages;
  bool residual_zero = false;
  bool order_invariant = false;  // ord phi_i <= ord psi_{j,i} for all j, i

  std::vector<PolySeries> Phi(const SSeriesRing& R) const {
    std::vector<PolySeries> out;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      PolySeries x = R.lift(phi[i]);
      for (std::size_t j = 0; j < psi.size(); ++j) x += R.lift(psi[j][i], static_cast<unsigned>(j + 1));
      out.push_back(std::move(x));
    }
    return out;
  }
};

// T_j: the s^j coefficient of F(phi + sum_{l<j} s^l psi_l, s).
inline RationalSeries stage_remainder(const SparsePolynomial& f, const std::vector<SparsePolynomial>& gs,
                                      const std::vector<RationalSeries>& phi,
                                      const std::vector<std::vector<RationalSeries>>& psi, long j) {
  const long m = phi.at(0).truncation();
  const SSeriesRing R{m, j};
  std::vector<PolySeries> Phi;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    PolySeries x = R.lift(phi[i]);
    for (long l = 1; l < j; ++l) x += R.lift(psi.at(static_cast<std::size_t>(l - 1))[i], static_cast<unsigned>(l));
    Phi.push_back(std::move(x));
  }
  return R.s_coefficient(evaluate_deformation(f, gs, Phi, R), static_cast<unsigned>(j));
}

// w with p * w = r mod t^{m+1} and ord w = ord r - ord p; nullopt if ord r < ord p.
inline std::optional<RationalSeries> divide_series(const RationalSeries& r, const RationalSeries& p) {
  const long m = r.truncation();
  const Order op = ord_t_m(p), orr = ord_t_m(r);
  if (orr.is_infinite()) return RationalSeries::zero(m, 0);
  if (op.is_infinite() || orr < op) return std::nullopt;
  const long a = op.value();
  std::vector<Rational> w(static_cast<std::size_t>(m + 1), 0);
  // solve sum_{i<=k} p_{a+i} w_{k-i} = r_{a+k} for k = 0..m-a
  for (long k = 0; k <= m - a; ++k) {
    Rational acc = r.coeff(a + k);
    for (long i = 1; i <= k; ++i) acc -= p.coeff(a + i) * w[static_cast<std::size_t>(k - i)];
    w[static_cast<std::size_t>(k)] = acc / p.coeff(a);
  }
  return RationalSeries(m, std::move(w));
}

namespace detail {

// F(Phi) by plain bivariate polynomial arithmetic in (t, s), truncated at
// t^m and s^D after every product.
inline bool residual_vanishes(const SparsePolynomial& f, const std::vector<SparsePolynomial>& gs,
                              const JetDeformation& d) {
  const long m = d.m, D = d.D;
  auto trunc = [&](const SparsePolynomial& p) {
    SparsePolynomial r(2);
    for (const auto& [e, c] : p.terms())
      if (static_cast<long>(e[0]) <= m && static_cast<long>(e[1]) <= D) r.add_term(e, c);
    return r;
  };
  std::vector<SparsePolynomial> X;
  for (std::size_t i = 0; i < d.phi.size(); ++i) {
    SparsePolynomial x(2);
    for (long k = 0; k <= m; ++k) {
      x.add_term({static_cast<unsigned>(k), 0}, d.phi[i].coeff(k));
      for (std::size_t j = 0; j < d.psi.size(); ++j)
        x.add_term({static_cast<unsigned>(k), static_cast<unsigned>(j + 1)}, d.psi[j][i].coeff(k));
    }
    X.push_back(trunc(x));
  }
  auto eval = [&](const SparsePolynomial& g) {
    SparsePolynomial acc(2);
    for (const auto& [e, c] : g.terms()) {
      SparsePolynomial t = SparsePolynomial::constant(2, c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) t = trunc(t * X[i]);
      acc += t;
    }
    return acc;
  };
  SparsePolynomial total = eval(f);
  for (std::size_t j = 0; j < gs.size(); ++j) {
    if (static_cast<long>(j + 1) > D) continue;
    total += trunc(eval(gs[j]) * SparsePolynomial::monomial({0, static_cast<unsigned>(j + 1)}));
  }
  return total.is_zero();
}

}  // namespace detail

inline JetDeformation deform_jet(const SparsePolynomial& f, const std::vector<SparsePolynomial>& gs,
                                 const std::vector<RationalSeries>& phi, long m, long D) {
  if (D < 1) throw InputError("deformation degree D must be at least 1");
  const auto hyp = check_deform_hypotheses(f, gs, phi, m);
  if (!hyp.ok) throw InputError("deformation hypothesis fails: " + hyp.failing);
  const std::size_t n = f.n_vars();

  std::size_t pivot = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (hyp.term_orders[i] < hyp.term_orders[pivot]) pivot = i;
  const RationalSeries dfp = substitute_series(f.partial(pivot), phi);

  JetDeformation d;
  d.phi = phi;
  d.D = D;
  d.m = m;
  d.order_invariant = true;
  for (long j = 1; j <= D; ++j) {
    DeformationStage st;
    st.j = j;
    st.pivot = pivot;
    st.remainder = stage_remainder(f, gs, phi, d.psi, j);
    auto w = divide_series(-st.remainder, dfp);
    if (!w) throw Error("series division infeasible at stage " + std::to_string(j));
    if (!(dfp * *w + st.remainder).is_zero()) throw Error("series division check failed at stage " + std::to_string(j));
    std::vector<RationalSeries> row(n, RationalSeries::zero(m, 0));
    row[pivot] = *w;
    st.pivot_order = ord_t_m(phi[pivot]);
    st.correction_order = ord_t_m(*w);
    st.order_bound_ok = st.pivot_order <= st.correction_order;
    for (std::size_t i = 0; i < n; ++i)
      d.order_invariant = d.order_invariant && ord_t_m(phi[i]) <= ord_t_m(row[i]);
    d.psi.push_back(std::move(row));
    d.stages.push_back(std::move(st));
  }
  d.residual_zero = detail::residual_vanishes(f, gs, d);
  return d;
}

}  // namespace nashtor

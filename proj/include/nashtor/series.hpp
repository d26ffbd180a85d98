#pragma once

// Truncated power series K[t]/(t^{m+1}) over a coefficient ring: rationals or
// polynomials in auxiliary variables.

#include <cstddef>
#include <functional>
#include <vector>

#include "nashtor/arith.hpp"
#include "nashtor/poly.hpp"

namespace nashtor {

template <class C>
struct CoeffRing;

template <>
struct CoeffRing<Rational> {
  static Rational zero_like(const Rational&) { return 0; }
  static Rational one_like(const Rational&) { return 1; }
  static bool is_zero(const Rational& c) { return c == 0; }
  static std::string str(const Rational& c) { return c.get_str(); }
};

template <>
struct CoeffRing<SparsePolynomial> {
  static SparsePolynomial zero_like(const SparsePolynomial& p) { return SparsePolynomial(p.n_vars()); }
  static SparsePolynomial one_like(const SparsePolynomial& p) { return SparsePolynomial::constant(p.n_vars(), 1); }
  static bool is_zero(const SparsePolynomial& c) { return c.is_zero(); }
  static std::string str(const SparsePolynomial& c) { return to_string(c); }
};

template <class C>
class TruncatedSeries {
 public:
  using Ring = CoeffRing<C>;

  // coeffs shorter than m+1 are padded with zeros; longer ones are truncated.
  TruncatedSeries(long m, std::vector<C> coeffs, const C& zero) : m_(m), zero_(Ring::zero_like(zero)) {
    if (m < 0) throw InputError("truncation order must be nonnegative");
    coeffs.resize(static_cast<std::size_t>(m + 1), zero_);
    c_ = std::move(coeffs);
  }
  TruncatedSeries(long m, std::vector<C> coeffs) requires std::is_same_v<C, Rational>
      : TruncatedSeries(m, std::move(coeffs), Rational(0)) {}

  static TruncatedSeries zero(long m, const C& proto) { return TruncatedSeries(m, {}, proto); }
  static TruncatedSeries constant(long m, const C& c) { return TruncatedSeries(m, {c}, c); }
  // c * t^k
  static TruncatedSeries monomial(long m, long k, const C& c) {
    TruncatedSeries s = zero(m, c);
    if (k <= m) s.c_[static_cast<std::size_t>(k)] = c;
    return s;
  }

  long truncation() const { return m_; }
  const C& coeff(long k) const { return c_.at(static_cast<std::size_t>(k)); }
  C& coeff(long k) { return c_.at(static_cast<std::size_t>(k)); }
  const std::vector<C>& coeffs() const { return c_; }
  const C& zero_coeff() const { return zero_; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!Ring::is_zero(c)) return false;
    return true;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    check(o);
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a) {
    for (auto& c : a.c_) c = c * Rational(-1);
    return a;
  }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& k) {
    for (auto& c : a.c_) c = c * k;
    return a;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check(b);
    TruncatedSeries r = zero(a.m_, a.zero_);
    const std::size_t n = a.c_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (Ring::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        if (Ring::is_zero(b.c_[j])) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  // Multiplies every coefficient by a ring element.
  TruncatedSeries scaled(const C& k) const {
    TruncatedSeries r = *this;
    for (auto& c : r.c_) c = c * k;
    return r;
  }
  TruncatedSeries truncated(long m) const {
    if (m > m_) throw InputError("cannot raise the truncation order");
    return TruncatedSeries(m, {c_.begin(), c_.begin() + m + 1}, zero_);
  }
  template <class Fn>
  TruncatedSeries map_coeffs(Fn&& fn) const {
    TruncatedSeries r = *this;
    for (auto& c : r.c_) c = fn(c);
    return r;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.m_ == b.m_ && a.c_ == b.c_;
  }

 private:
  void check(const TruncatedSeries& o) const {
    if (o.m_ != m_) throw InputError("truncation mismatch between series");
  }

  long m_;
  C zero_;
  std::vector<C> c_;
};

using RationalSeries = TruncatedSeries<Rational>;
using PolySeries = TruncatedSeries<SparsePolynomial>;

template <class C>
Order ord_t_m(const TruncatedSeries<C>& s) {
  for (long k = 0; k <= s.truncation(); ++k)
    if (!CoeffRing<C>::is_zero(s.coeff(k))) return Order(k);
  return Order::infinity();
}

// f(args) in R[t]/(t^{m+1}). `reduce` is applied to every intermediate
// product (used to truncate auxiliary variables).
template <class C>
TruncatedSeries<C> substitute_series(
    const SparsePolynomial& f, const std::vector<TruncatedSeries<C>>& args,
    const std::function<TruncatedSeries<C>(TruncatedSeries<C>)>& reduce = nullptr) {
  if (args.size() != f.n_vars()) throw InputError("substitute_series: wrong number of arguments");
  if (args.empty()) throw InputError("substitute_series needs at least one argument");
  const long m = args[0].truncation();
  for (const auto& a : args)
    if (a.truncation() != m) throw InputError("substitute_series: truncation mismatch");
  const C& proto = args[0].zero_coeff();
  auto red = [&](TruncatedSeries<C> s) { return reduce ? reduce(std::move(s)) : s; };

  std::vector<std::vector<TruncatedSeries<C>>> powers(args.size());
  for (std::size_t i = 0; i < args.size(); ++i)
    powers[i].push_back(TruncatedSeries<C>::constant(m, CoeffRing<C>::one_like(proto)));
  auto power = [&](std::size_t i, unsigned k) -> const TruncatedSeries<C>& {
    while (powers[i].size() <= k) powers[i].push_back(red(powers[i].back() * args[i]));
    return powers[i][k];
  };

  TruncatedSeries<C> out = TruncatedSeries<C>::zero(m, proto);
  for (const auto& [e, c] : f.terms()) {
    TruncatedSeries<C> t = TruncatedSeries<C>::constant(m, CoeffRing<C>::one_like(proto)) * c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t = red(t * power(i, e[i]));
    out += t;
  }
  return out;
}

}  // namespace nashtor

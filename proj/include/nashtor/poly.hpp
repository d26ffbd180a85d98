#pragma once

// Sparse multivariate polynomials with rational coefficients, the text
// format, weighted orders, and univariate squarefree analysis.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nashtor/arith.hpp"

namespace nashtor {

using Exponent = std::vector<unsigned>;

class SparsePolynomial {
 public:
  using TermMap = std::map<Exponent, Rational>;

  explicit SparsePolynomial(std::size_t n_vars = 0) : n_(n_vars) {}

  static SparsePolynomial constant(std::size_t n, const Rational& c) {
    SparsePolynomial p(n);
    p.add_term(Exponent(n, 0), c);
    return p;
  }
  static SparsePolynomial variable(std::size_t n, std::size_t i) {
    if (i >= n) throw InputError("variable index out of range");
    Exponent e(n, 0);
    e[i] = 1;
    SparsePolynomial p(n);
    p.add_term(e, 1);
    return p;
  }
  static SparsePolynomial monomial(const Exponent& e, const Rational& c = 1) {
    SparsePolynomial p(e.size());
    p.add_term(e, c);
    return p;
  }

  std::size_t n_vars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && is_const_exp(terms_.begin()->first));
  }
  Rational constant_term() const { return coeff(Exponent(n_, 0)); }
  Rational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != n_) throw InputError("exponent length does not match n_vars");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SparsePolynomial& operator+=(const SparsePolynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  SparsePolynomial& operator-=(const SparsePolynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  SparsePolynomial& operator*=(const Rational& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }
  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
  friend SparsePolynomial operator-(SparsePolynomial a) { return a *= Rational(-1); }
  friend SparsePolynomial operator*(SparsePolynomial a, const Rational& k) { return a *= k; }
  friend SparsePolynomial operator*(const Rational& k, SparsePolynomial a) { return a *= k; }
  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
    a.check(b);
    SparsePolynomial r(a.n_);
    Exponent e(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  SparsePolynomial& operator*=(const SparsePolynomial& o) { return *this = *this * o; }

  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const SparsePolynomial& a, const SparsePolynomial& b) { return !(a == b); }

  SparsePolynomial pow(unsigned k) const {
    SparsePolynomial r = constant(n_, 1), base = *this;
    while (k) {
      if (k & 1u) r *= base;
      k >>= 1u;
      if (k) base *= base;
    }
    return r;
  }

  SparsePolynomial partial(std::size_t i) const {
    if (i >= n_) throw InputError("derivative variable index out of range");
    SparsePolynomial r(n_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent d = e;
      --d[i];
      r.add_term(d, c * e[i]);
    }
    return r;
  }

  long total_degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(degree_of(e)));
    return d;
  }
  long degree_in(std::size_t i) const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e.at(i)));
    return d;
  }
  std::set<std::size_t> variables() const {
    std::set<std::size_t> v;
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < n_; ++i)
        if (e[i]) v.insert(i);
    return v;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = degree_of(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return degree_of(t.first) == d; });
  }
  SparsePolynomial homogeneous_part(unsigned d) const {
    SparsePolynomial r(n_);
    for (const auto& [e, c] : terms_)
      if (degree_of(e) == d) r.add_term(e, c);
    return r;
  }
  SparsePolynomial top_form() const {
    return is_zero() ? *this : homogeneous_part(static_cast<unsigned>(total_degree()));
  }

  // Componentwise minimum exponent (the largest monomial dividing *this).
  Exponent monomial_content() const {
    if (terms_.empty()) return Exponent(n_, 0);
    Exponent m = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < n_; ++i) m[i] = std::min(m[i], e[i]);
    return m;
  }
  SparsePolynomial divide_by_monomial(const Exponent& m) const {
    SparsePolynomial r(n_);
    for (const auto& [e, c] : terms_) {
      Exponent d = e;
      for (std::size_t i = 0; i < n_; ++i) {
        if (d[i] < m[i]) throw Error("monomial does not divide polynomial");
        d[i] -= m[i];
      }
      r.terms_.emplace(std::move(d), c);
    }
    return r;
  }

  // Sets variable i to the constant a (the variable stays in the ring).
  SparsePolynomial set_variable(std::size_t i, const Rational& a) const {
    SparsePolynomial r(n_);
    for (const auto& [e, c] : terms_) {
      Exponent d = e;
      unsigned k = d.at(i);
      d[i] = 0;
      Rational f = c;
      if (k) {
        Rational ak;
        mpz_pow_ui(ak.get_num_mpz_t(), a.get_num_mpz_t(), k);
        mpz_pow_ui(ak.get_den_mpz_t(), a.get_den_mpz_t(), k);
        ak.canonicalize();
        f *= ak;
      }
      r.add_term(d, f);
    }
    return r;
  }

  // Replaces variable i by g (same ring).
  SparsePolynomial substitute(std::size_t i, const SparsePolynomial& g) const {
    check(g);
    SparsePolynomial r(n_);
    std::vector<SparsePolynomial> powers{constant(n_, 1)};
    for (const auto& [e, c] : terms_) {
      while (powers.size() <= e.at(i)) powers.push_back(powers.back() * g);
      Exponent d = e;
      d[i] = 0;
      r += monomial(d, c) * powers[e[i]];
    }
    return r;
  }

  Rational evaluate(const std::vector<Rational>& x) const {
    if (x.size() != n_) throw InputError("evaluation point has wrong length");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < n_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
      s += t;
    }
    return s;
  }

  // Embeds into a ring with n_new variables; variable i goes to index map[i].
  SparsePolynomial remap(std::size_t n_new, const std::vector<std::size_t>& map) const {
    if (map.size() != n_) throw InputError("variable map has wrong length");
    SparsePolynomial r(n_new);
    for (const auto& [e, c] : terms_) {
      Exponent d(n_new, 0);
      for (std::size_t i = 0; i < n_; ++i) d.at(map[i]) += e[i];
      r.add_term(d, c);
    }
    return r;
  }

  static unsigned degree_of(const Exponent& e) {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }

 private:
  static bool is_const_exp(const Exponent& e) {
    return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
  }
  void check(const SparsePolynomial& o) const {
    if (o.n_ != n_) throw InputError("polynomials with different numbers of variables");
  }

  std::size_t n_;
  TermMap terms_;
};

// Variable names for printing and parsing.
class VarNames {
 public:
  VarNames() = default;
  explicit VarNames(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (!index_.emplace(names_[i], i).second) throw InputError("duplicate variable name " + names_[i]);
  }
  static VarNames indexed(const std::string& prefix, std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 1; i <= n; ++i) v.push_back(prefix + std::to_string(i));
    return VarNames(std::move(v));
  }
  std::size_t size() const { return names_.size(); }
  const std::string& operator[](std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(const std::string& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Canonical text: terms in descending lexicographic exponent order.
inline std::string to_string(const SparsePolynomial& f, const VarNames& names) {
  if (names.size() < f.n_vars()) throw InputError("not enough variable names");
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    const bool neg = c < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    const Rational a = neg ? Rational(-c) : c;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + "*" + mono;
  }
  return out;
}

inline std::string to_string(const SparsePolynomial& f) {
  return to_string(f, VarNames::indexed("x", f.n_vars()));
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const VarNames& names) : s_(text), names_(names) {}

  SparsePolynomial parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty polynomial", pos_);
    auto p = expr();
    skip();
    if (pos_ < s_.size()) throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  }

  SparsePolynomial expr() {
    SparsePolynomial acc(names_.size());
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      first = false;
      auto t = term();
      if (sign < 0) t = -t;
      acc += t;
    }
    return acc;
  }

  SparsePolynomial term() {
    auto acc = power();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc *= power();
      } else if (starts_factor()) {
        acc *= power();
      } else {
        break;
      }
    }
    return acc;
  }

  SparsePolynomial power() {
    auto base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      const std::size_t at = pos_;
      const Integer e = integer();
      if (e > 100000) throw ParseError("exponent too large", at);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  SparsePolynomial atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto p = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational q(integer());
      if (peek('/')) {
        ++pos_;
        skip();
        const std::size_t at = pos_;
        const Integer d = integer();
        if (d == 0) throw ParseError("zero denominator", at);
        q /= Rational(d);
      }
      return SparsePolynomial::constant(names_.size(), q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      auto idx = names_.find(name);
      if (!idx) throw ParseError("unknown variable '" + name + "'", start);
      return SparsePolynomial::variable(names_.size(), *idx);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view s_;
  const VarNames& names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline SparsePolynomial parse_polynomial(std::string_view text, const VarNames& names) {
  return detail::PolyParser(text, names).parse();
}

// Parses with variables x1..xn. When n_vars is 0 it is inferred from the
// largest index that occurs.
inline SparsePolynomial parse_polynomial(std::string_view text, std::size_t n_vars = 0) {
  std::size_t inferred = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x' || (i > 0 && (std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_')))
      continue;
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i + 1 && j - i < 8) inferred = std::max<std::size_t>(inferred, std::stoul(std::string(text.substr(i + 1, j - i - 1))));
  }
  if (n_vars == 0) n_vars = std::max<std::size_t>(inferred, 1);
  return parse_polynomial(text, VarNames::indexed("x", n_vars));
}

// Positive rational weights, one per variable.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<Rational> w) : w_(std::move(w)) {
    for (const auto& x : w_)
      if (x <= 0) throw InputError("weights must be positive");
  }
  WeightVector(std::initializer_list<long> w) {
    for (long x : w) w_.emplace_back(x);
    for (const auto& x : w_)
      if (x <= 0) throw InputError("weights must be positive");
  }
  std::size_t size() const { return w_.size(); }
  const Rational& operator[](std::size_t i) const { return w_[i]; }

 private:
  std::vector<Rational> w_;
};

inline Rational weighted_degree(const Exponent& e, const WeightVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) s += v[i] * e[i];
  return s;
}

inline Rational nu_v(const SparsePolynomial& f, const WeightVector& v) {
  if (f.is_zero()) throw InputError("weighted order of the zero polynomial");
  if (v.size() != f.n_vars()) throw InputError("weight vector has wrong length");
  std::optional<Rational> best;
  for (const auto& [e, c] : f.terms()) {
    Rational d = weighted_degree(e, v);
    if (!best || d < *best) best = d;
  }
  return *best;
}

inline RationalOrder nu_v_m(const SparsePolynomial& f, const WeightVector& v, long m) {
  Rational nu = nu_v(f, v);
  if (nu > m) return RationalOrder::infinity();
  return nu;
}

// Terms of lowest weighted degree.
inline SparsePolynomial initial_form(const SparsePolynomial& f, const WeightVector& v) {
  const Rational nu = nu_v(f, v);
  SparsePolynomial r(f.n_vars());
  for (const auto& [e, c] : f.terms())
    if (weighted_degree(e, v) == nu) r.add_term(e, c);
  return r;
}

// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  static UPoly from_sparse(const SparsePolynomial& f, std::size_t var) {
    std::vector<Rational> c;
    for (const auto& [e, a] : f.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i)
        if (i != var && e[i] != 0) throw InputError("polynomial is not univariate");
      if (c.size() <= e[var]) c.resize(e[var] + 1, 0);
      c[e[var]] += a;
    }
    return UPoly(std::move(c));
  }
  SparsePolynomial to_sparse(std::size_t n, std::size_t var) const {
    SparsePolynomial f(n);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      Exponent e(n, 0);
      e.at(var) = static_cast<unsigned>(k);
      f.add_term(e, c_[k]);
    }
    return f;
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lead() const { return c_.back(); }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly r = *this;
    const Rational l = lead();
    for (auto& x : r.c_) x /= l;
    return r;
  }
  UPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<unsigned long>(k));
    return UPoly(std::move(d));
  }
  UPoly reversed() const { return UPoly({c_.rbegin(), c_.rend()}); }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  // (quotient, remainder)
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw Error("division by the zero polynomial");
    std::vector<Rational> r = c_;
    std::vector<Rational> q;
    if (degree() >= d.degree()) q.assign(static_cast<std::size_t>(degree() - d.degree() + 1), 0);
    for (long k = degree() - d.degree(); k >= 0; --k) {
      const auto top = static_cast<std::size_t>(k + d.degree());
      if (r[top] == 0) continue;
      const Rational f = r[top] / d.lead();
      q[static_cast<std::size_t>(k)] = f;
      for (std::size_t i = 0; i < d.c_.size(); ++i) r[static_cast<std::size_t>(k) + i] -= f * d.c_[i];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace detail {

// The single variable occurring in f (0 for a constant).
inline std::size_t univariate_var(const SparsePolynomial& f) {
  const auto v = f.variables();
  if (v.size() > 1) throw InputError("polynomial is not univariate");
  return v.empty() ? 0 : *v.begin();
}

}  // namespace detail

struct SquarefreeResult {
  SparsePolynomial part;  // monic
  bool is_squarefree;
};

inline SquarefreeResult squarefree_part(const SparsePolynomial& u) {
  if (u.is_zero()) throw InputError("squarefree part of the zero polynomial");
  const std::size_t var = detail::univariate_var(u);
  const UPoly p = UPoly::from_sparse(u, var);
  const UPoly g = gcd(p, p.derivative());
  const UPoly s = g.is_zero() ? p.monic() : p.divmod(g).first.monic();
  return {s.to_sparse(u.n_vars(), var), s.degree() == p.degree()};
}

inline long distinct_root_count(const SparsePolynomial& u) {
  if (u.is_zero()) throw InputError("root count of the zero polynomial");
  if (u.is_constant()) return 0;
  return squarefree_part(u).part.total_degree();
}

// Monic gcd of two univariate polynomials in the same variable.
inline SparsePolynomial univariate_gcd(const SparsePolynomial& a, const SparsePolynomial& b) {
  if (a.n_vars() != b.n_vars()) throw InputError("polynomials with different numbers of variables");
  std::set<std::size_t> vars = a.variables();
  for (auto v : b.variables()) vars.insert(v);
  if (vars.size() > 1) throw InputError("gcd of polynomials in different variables");
  const std::size_t var = vars.empty() ? 0 : *vars.begin();
  return gcd(UPoly::from_sparse(a, var), UPoly::from_sparse(b, var)).to_sparse(a.n_vars(), var);
}

}  // namespace nashtor

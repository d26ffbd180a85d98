#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace nashtor {

using Integer = mpz_class;
using Rational = mpq_class;

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input (text, JSON, parameters). The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : InputError(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// floor(a / b) for b > 0
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer floor(const Rational& r) {
  return floor_div(r.get_num(), r.get_den());
}

inline Rational canonical(Rational r) {
  r.canonicalize();
  return r;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

// A value of T extended by +infinity. Infinity is its own state, never a
// sentinel value of T.
template <class T>
class Extended {
 public:
  Extended() : value_(std::nullopt) {}  // infinity
  Extended(T v) : value_(std::move(v)) {}  // NOLINT
  static Extended infinity() { return Extended(); }

  bool is_infinite() const { return !value_.has_value(); }
  bool is_finite() const { return value_.has_value(); }
  const T& value() const {
    if (!value_) throw Error("value() of an infinite order");
    return *value_;
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() == b.is_infinite();
    return *a.value_ == *b.value_;
  }
  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.is_infinite()) return false;
    if (b.is_infinite()) return true;
    return *a.value_ < *b.value_;
  }
  friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
  friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }
  friend bool operator>=(const Extended& a, const Extended& b) { return !(a < b); }

  friend Extended operator+(const Extended& a, const Extended& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Extended(T(*a.value_ + *b.value_));
  }

  std::string str() const {
    if (is_infinite()) return "inf";
    if constexpr (std::is_same_v<T, Rational> || std::is_same_v<T, Integer>) {
      return value_->get_str();
    } else {
      return std::to_string(*value_);
    }
  }

 private:
  std::optional<T> value_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Extended<T>& e) {
  return os << e.str();
}

template <class T>
Extended<T> min(const Extended<T>& a, const Extended<T>& b) {
  return b < a ? b : a;
}

using Order = Extended<long>;
using RationalOrder = Extended<Rational>;

}  // namespace nashtor

#pragma once

#include <gmpxx.h>

#include <string>

#include "hopftwist/error.hpp"

namespace hopftwist {

using Integer = mpz_class;

// Arbitrary-precision rational, always in canonical form: gcd(num, den) = 1
// and den > 0.  Backed by GMP's mpq_class, which maintains exactly this
// canonical form under arithmetic.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(const Integer& n) : v_(n) {}
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw invalid_input("rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  // Parses "p", "-p", or "p/q" with arbitrary-precision decimal parts.
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(Integer(s));
      return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw invalid_input("rational: cannot parse \"" + s + "\"");
    }
  }

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }
  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw invalid_input("rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational abs() const { return v_ < 0 ? -*this : *this; }

  // Reduction of the value modulo 1 into [0, 1); the natural normal form for
  // cochain values in Q/Z.
  Rational mod1() const {
    Integer q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return Rational(r, den());
  }

  std::string str() const { return v_.get_str(); }

 private:
  mpq_class v_;
};

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace hopftwist

#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "hopftwist/rational.hpp"

namespace hopftwist {

namespace poly {

// Dense univariate polynomials over Q, coefficient 0 first.  Trailing zeros
// are trimmed so that degree = size - 1 for nonzero polynomials.

using Poly = std::vector<Rational>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Euclidean division a = q*b + r with deg r < deg b; b must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  if (b.empty()) throw invalid_input("poly: division by zero polynomial");
  Poly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  const Rational& lead = b.back();
  while (a.size() >= b.size()) {
    Rational f = a.back() / lead;
    size_t shift = a.size() - b.size();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
    if (a.empty()) break;
    if (a.size() >= b.size() && a.back().is_zero()) trim(a);
  }
  trim(q);
  return {q, a};
}

inline Poly rem(const Poly& a, const Poly& b) { return divmod(a, b).second; }

// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
inline std::tuple<Poly, Poly, Poly> ext_gcd(Poly a, Poly b) {
  Poly u0{Rational(1)}, v0, u1, v1{Rational(1)};
  while (!b.empty()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    Poly u2 = u0, v2 = v0;
    Poly qu = mul(q, u1), qv = mul(q, v1);
    u2.resize(std::max(u2.size(), qu.size()), Rational(0));
    v2.resize(std::max(v2.size(), qv.size()), Rational(0));
    for (size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
    for (size_t i = 0; i < qv.size(); ++i) v2[i] -= qv[i];
    trim(u2);
    trim(v2);
    u0 = std::move(u1);
    v0 = std::move(v1);
    u1 = std::move(u2);
    v1 = std::move(v2);
  }
  if (!a.empty() && !(a.back() == Rational(1))) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
    for (auto& c : u0) c /= lead;
    for (auto& c : v0) c /= lead;
  }
  return {a, u0, v0};
}

inline Poly derivative(const Poly& p) {
  Poly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  trim(d);
  return d;
}

}  // namespace poly

inline unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Cyclotomic polynomial cache: Phi_N as monic polynomial over Q.
inline const poly::Poly& cyclotomic_polynomial(unsigned long n) {
  static std::map<unsigned long, poly::Poly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
  poly::Poly xn(n + 1, Rational(0));
  xn[0] = Rational(-1);
  xn[n] = Rational(1);
  poly::Poly acc{Rational(1)};
  for (unsigned long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto sub = cache.find(d);
    if (sub == cache.end()) {
      // Compute recursively without re-locking: inline the same recurrence.
      poly::Poly xd(d + 1, Rational(0));
      xd[0] = Rational(-1);
      xd[d] = Rational(1);
      poly::Poly acc2{Rational(1)};
      for (unsigned long e = 1; e < d; ++e)
        if (d % e == 0) acc2 = poly::mul(acc2, cache.at(e));
      cache[d] = poly::divmod(xd, acc2).first;
      sub = cache.find(d);
    }
    acc = poly::mul(acc, sub->second);
  }
  cache[n] = poly::divmod(xn, acc).first;
  return cache.at(n);
}

// Element of a cyclotomic field Q(zeta_N), stored on the power basis
// 1, zeta, ..., zeta^{phi(N)-1} of Q[x]/Phi_N(x), always fully reduced.
// Arithmetic between different conductors promotes to the lcm; conductors are
// never shrunk afterwards, except that the zero element normalizes to
// conductor 1.
class Cyclotomic {
 public:
  static constexpr unsigned long kMaxConductor = 3600;

  Cyclotomic() : n_(1), c_{Rational(0)} {}
  Cyclotomic(const Rational& r) : n_(1), c_{r} {}
  Cyclotomic(int v) : n_(1), c_{Rational(v)} {}
  Cyclotomic(long v) : n_(1), c_{Rational(v)} {}

  // zeta_N^k.
  static Cyclotomic zeta(unsigned long n, long k = 1) {
    if (n == 0) throw invalid_input("cyclotomic: conductor must be positive");
    check_conductor(n);
    long e = k % static_cast<long>(n);
    if (e < 0) e += n;
    poly::Poly p(static_cast<size_t>(e) + 1, Rational(0));
    p[static_cast<size_t>(e)] = Rational(1);
    return Cyclotomic(n, reduce(p, n));
  }

  // e^{2 pi i t} for t in Q, i.e. zeta_den^num.
  static Cyclotomic root_of_unity(const Rational& t) {
    Rational m = t.mod1();
    unsigned long den = m.den().get_ui();
    long num = m.num().get_si();
    return zeta(den == 0 ? 1 : den, num);
  }

  unsigned long conductor() const { return n_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }
  // Requires is_rational().
  Rational rational_part() const {
    if (!is_rational()) throw invalid_input("cyclotomic: not a rational value");
    return c_[0];
  }

  Cyclotomic promoted(unsigned long m) const { return Cyclotomic(m, coeffs_at(*this, m)); }

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned long m = common(a, b);
    poly::Poly x = coeffs_at(a, m), y = coeffs_at(b, m);
    for (size_t i = 0; i < y.size(); ++i) x[i] += y[i];
    return Cyclotomic(m, std::move(x));
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned long m = common(a, b);
    poly::Poly x = coeffs_at(a, m), y = coeffs_at(b, m);
    for (size_t i = 0; i < y.size(); ++i) x[i] -= y[i];
    return Cyclotomic(m, std::move(x));
  }
  Cyclotomic operator-() const {
    Cyclotomic x = *this;
    for (auto& c : x.c_) c = -c;
    return x;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    // Rational fast path.
    if (a.n_ == 1) {
      if (a.c_[0].is_zero()) return Cyclotomic();
      Cyclotomic x = b;
      for (auto& c : x.c_) c *= a.c_[0];
      x.normalize();
      return x;
    }
    if (b.n_ == 1) return b * a;
    unsigned long m = common(a, b);
    poly::Poly p = poly::mul(coeffs_at(a, m), coeffs_at(b, m));
    return Cyclotomic(m, reduce(p, m));
  }
  Cyclotomic inverse() const {
    if (is_zero()) throw invalid_input("cyclotomic: division by zero");
    if (n_ == 1) return Cyclotomic(Rational(1) / c_[0]);
    poly::Poly p = c_;
    poly::trim(p);
    auto [g, u, v] = poly::ext_gcd(p, cyclotomic_polynomial(n_));
    (void)v;
    if (poly::degree(g) != 0)
      throw invalid_input("cyclotomic: non-invertible element");  // unreachable: Phi_N irreducible
    Rational lead = g[0];
    for (auto& c : u) c /= lead;
    return Cyclotomic(n_, reduce(u, n_));
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

  // Complex conjugation, i.e. the field automorphism zeta -> zeta^{-1}.
  Cyclotomic conjugate() const {
    if (n_ <= 2) return *this;
    poly::Poly p(n_, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) p[(n_ - i) % n_] += c_[i];
    return Cyclotomic(n_, reduce(p, n_));
  }

  // The Galois automorphism zeta -> zeta^k for gcd(k, N) = 1.
  Cyclotomic galois(long k) const {
    unsigned long kk = ((k % static_cast<long>(n_)) + n_) % n_;
    if (std::gcd(kk, n_) != 1) throw invalid_input("cyclotomic: galois exponent not coprime");
    poly::Poly p(n_ == 1 ? 1 : n_, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) p[(i * kk) % n_] += c_[i];
    return Cyclotomic(n_, reduce(p, n_));
  }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ == b.n_) return a.c_ == b.c_;
    unsigned long m = common(a, b);
    return coeffs_at(a, m) == coeffs_at(b, m);
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  // Deterministic total order (by conductor-promoted coefficient vectors);
  // used only for canonical sorting, no numeric meaning.
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned long m = common(a, b);
    poly::Poly x = coeffs_at(a, m), y = coeffs_at(b, m);
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] < y[i]) return true;
      if (y[i] < x[i]) return false;
    }
    return false;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      std::string term = c_[i].str();
      if (i > 0) {
        term += "*z" + std::to_string(n_);
        if (i > 1) term += "^" + std::to_string(i);
      }
      if (!out.empty()) out += " + ";
      out += term;
    }
    return out;
  }

 private:
  Cyclotomic(unsigned long n, std::vector<Rational> c) : n_(n), c_(std::move(c)) { normalize(); }

  static void check_conductor(unsigned long n) {
    if (n > kMaxConductor) throw resource_limit("cyclotomic: conductor overflow");
  }

  static unsigned long common(const Cyclotomic& a, const Cyclotomic& b) {
    unsigned long m = std::lcm(a.n_, b.n_);
    check_conductor(m);
    return m;
  }

  // Coefficients of v on the power basis of Q(zeta_m), m a multiple of the
  // conductor of v; always sized phi(m), never renormalized (in particular
  // the zero element yields the all-zero vector of full length).
  static poly::Poly coeffs_at(const Cyclotomic& v, unsigned long m) {
    if (m == v.n_) return v.c_;
    if (m % v.n_ != 0) throw invalid_input("cyclotomic: promotion target not a multiple");
    check_conductor(m);
    unsigned long step = m / v.n_;
    poly::Poly p;
    p.resize((v.c_.size() - 1) * step + 1, Rational(0));
    for (size_t i = 0; i < v.c_.size(); ++i) p[i * step] = v.c_[i];
    return reduce(p, m);
  }

  static std::vector<Rational> reduce(poly::Poly p, unsigned long n) {
    if (n == 1) {
      // Reduction mod Phi_1 = x - 1 is evaluation at 1.
      Rational s(0);
      for (const auto& c : p) s += c;
      return {s};
    }
    size_t phi = euler_phi(n);
    poly::trim(p);
    if (p.size() > phi) p = poly::rem(p, cyclotomic_polynomial(n));
    p.resize(phi, Rational(0));
    return p;
  }

  void normalize() {
    if (n_ != 1 && is_zero()) {
      n_ = 1;
      c_.assign(1, Rational(0));
    }
  }

  unsigned long n_;
  std::vector<Rational> c_;
};

using Scalar = Cyclotomic;

}  // namespace hopftwist

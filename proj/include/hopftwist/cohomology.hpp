#pragma once

#include <optional>
#include <vector>

#include "hopftwist/group.hpp"
#include "hopftwist/intmat.hpp"

namespace hopftwist {

// Group cochain with values in Q/Z (written additively): a function
// Lambda^degree -> Q/Z stored on the full tuple grid, values reduced to
// [0, 1).  Degrees 1..3 are supported.  The group identity must sit at
// index 0 (true for FiniteAbelianGroup indexing and for cyclic tables);
// cochains are normalized at construction: any tuple containing the
// identity is forced to value 0.
class Cochain {
 public:
  Cochain(size_t group_order, int degree, std::vector<Rational> values)
      : n_(group_order), degree_(degree), values_(std::move(values)) {
    if (degree_ < 1 || degree_ > 3) throw invalid_input("cochain: degree must be 1, 2 or 3");
    size_t expect = 1;
    for (int i = 0; i < degree_; ++i) expect *= n_;
    if (values_.size() != expect) throw invalid_input("cochain: value grid size mismatch");
    for (size_t idx = 0; idx < values_.size(); ++idx) {
      if (tuple_has_identity(idx))
        values_[idx] = Rational(0);
      else
        values_[idx] = values_[idx].mod1();
    }
  }

  static Cochain zero(size_t group_order, int degree) {
    size_t sz = 1;
    for (int i = 0; i < degree; ++i) sz *= group_order;
    return Cochain(group_order, degree, std::vector<Rational>(sz, Rational(0)));
  }

  size_t group_order() const { return n_; }
  int degree() const { return degree_; }
  size_t grid_size() const { return values_.size(); }
  const std::vector<Rational>& values() const { return values_; }

  size_t tuple_index(const std::vector<int>& t) const {
    size_t idx = 0;
    for (int x : t) idx = idx * n_ + static_cast<size_t>(x);
    return idx;
  }
  const Rational& at(const std::vector<int>& t) const { return values_[tuple_index(t)]; }
  const Rational& at1(int g) const { return values_[static_cast<size_t>(g)]; }
  const Rational& at2(int g, int h) const { return values_[static_cast<size_t>(g) * n_ + h]; }
  const Rational& at3(int g, int h, int k) const {
    return values_[(static_cast<size_t>(g) * n_ + h) * n_ + k];
  }
  void set(const std::vector<int>& t, const Rational& v) {
    size_t idx = tuple_index(t);
    values_[idx] = tuple_has_identity(idx) ? Rational(0) : v.mod1();
  }

  bool is_zero() const {
    for (const auto& v : values_)
      if (!v.is_zero()) return false;
    return true;
  }

  Cochain operator+(const Cochain& o) const {
    require_compatible(o);
    std::vector<Rational> v(values_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = (values_[i] + o.values_[i]).mod1();
    return Cochain(n_, degree_, std::move(v));
  }
  Cochain operator-(const Cochain& o) const {
    require_compatible(o);
    std::vector<Rational> v(values_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = (values_[i] - o.values_[i]).mod1();
    return Cochain(n_, degree_, std::move(v));
  }
  bool operator==(const Cochain& o) const {
    return n_ == o.n_ && degree_ == o.degree_ && values_ == o.values_;
  }

  // Lcm of the denominators of all values (1 for the zero cochain).
  Integer denominator_lcm() const {
    Integer l(1);
    for (const auto& v : values_) l = lcm(l, v.den());
    return l;
  }

  bool tuple_has_identity(size_t idx) const {
    for (int i = 0; i < degree_; ++i) {
      if (idx % n_ == 0) return true;
      idx /= n_;
    }
    return false;
  }

 private:
  void require_compatible(const Cochain& o) const {
    if (n_ != o.n_ || degree_ != o.degree_) throw invalid_input("cochain: shape mismatch");
  }

  size_t n_;
  int degree_;
  std::vector<Rational> values_;
};

// Bar-resolution coboundary with trivial coefficients:
//   (df)(g1,...,g_{d+1}) = f(g2,...) - f(g1 g2, g3,...) + ... +- f(g1,...,g_d).
// Input degree 1 or 2 (output degree at most 3).
inline void require_identity_at_zero(const FiniteGroup& grp) {
  if (grp.identity() != 0)
    throw invalid_input("cochain operations require the group identity at index 0");
}

inline Cochain coboundary(const FiniteGroup& grp, const Cochain& f) {
  size_t n = grp.order();
  require_identity_at_zero(grp);
  if (f.group_order() != n) throw invalid_input("coboundary: group order mismatch");
  if (f.degree() == 1) {
    std::vector<Rational> v(n * n);
    for (size_t g = 0; g < n; ++g)
      for (size_t h = 0; h < n; ++h)
        v[g * n + h] =
            (f.at1(static_cast<int>(h)) - f.at1(grp.mul(static_cast<int>(g), static_cast<int>(h))) +
             f.at1(static_cast<int>(g)))
                .mod1();
    return Cochain(n, 2, std::move(v));
  }
  if (f.degree() == 2) {
    std::vector<Rational> v(n * n * n);
    for (size_t g = 0; g < n; ++g)
      for (size_t h = 0; h < n; ++h)
        for (size_t k = 0; k < n; ++k) {
          int gi = static_cast<int>(g), hi = static_cast<int>(h), ki = static_cast<int>(k);
          v[(g * n + h) * n + k] = (f.at2(hi, ki) - f.at2(grp.mul(gi, hi), ki) +
                                    f.at2(gi, grp.mul(hi, ki)) - f.at2(gi, hi))
                                       .mod1();
        }
    return Cochain(n, 3, std::move(v));
  }
  throw invalid_input("coboundary: only degrees 1 and 2 supported as input");
}

// Cocycle condition.  Degree 1: f(gh) = f(g) + f(h).  Degree 2 and 3: the bar
// differential of f vanishes.
inline bool is_cocycle(const FiniteGroup& grp, const Cochain& f) {
  size_t n = grp.order();
  require_identity_at_zero(grp);
  if (f.group_order() != n) throw invalid_input("is_cocycle: group order mismatch");
  if (f.degree() <= 2) return coboundary(grp, f).is_zero();
  for (size_t g = 0; g < n; ++g)
    for (size_t h = 0; h < n; ++h)
      for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
          int gi = static_cast<int>(g), hi = static_cast<int>(h), ki = static_cast<int>(k),
              li = static_cast<int>(l);
          Rational s = (f.at3(hi, ki, li) - f.at3(grp.mul(gi, hi), ki, li) +
                        f.at3(gi, grp.mul(hi, ki), li) - f.at3(gi, hi, grp.mul(ki, li)) +
                        f.at3(gi, hi, ki))
                           .mod1();
          if (!s.is_zero()) return false;
        }
  return true;
}

// Decides whether c = df for some cochain f of one lower degree, and returns
// such an f if so.  A witness with denominators dividing M = L * |Lambda|
// (L = lcm of the denominators of c) always exists when c is a coboundary, so
// the search solves an integer linear system mod M and the found witness is
// re-verified exactly.
inline std::optional<Cochain> is_coboundary(const FiniteGroup& grp, const Cochain& c) {
  size_t n = grp.order();
  require_identity_at_zero(grp);
  if (c.group_order() != n) throw invalid_input("is_coboundary: group order mismatch");
  if (c.degree() == 1)
    throw invalid_input("is_coboundary: degree must be 2 or 3 (degree-1 coboundaries vanish)");
  if (!is_cocycle(grp, c)) throw invalid_input("is_coboundary: input is not a cocycle");
  Integer M = c.denominator_lcm() * Integer(static_cast<long>(n));
  int d = c.degree();
  size_t cols = 1;
  for (int i = 0; i < d - 1; ++i) cols *= n;
  // A normalized witness exists whenever any witness does, so normalization
  // constraints (unknowns on tuples containing the identity are zero) are
  // appended without affecting solvability.
  std::vector<size_t> normalized_cols;
  {
    Cochain probe = Cochain::zero(n, d - 1);
    for (size_t j = 0; j < cols; ++j)
      if (probe.tuple_has_identity(j)) normalized_cols.push_back(j);
  }
  size_t rows = c.grid_size() + normalized_cols.size();

  ZMat A(rows, cols);
  std::vector<Integer> b(rows);
  for (size_t i = 0; i < normalized_cols.size(); ++i)
    A.at(c.grid_size() + i, normalized_cols[i]) = Integer(1);
  auto add_entry = [&](size_t row, size_t col, long coeff) {
    A.at(row, col) += Integer(coeff);
  };
  if (d == 2) {
    for (size_t g = 0; g < n; ++g)
      for (size_t h = 0; h < n; ++h) {
        size_t row = g * n + h;
        add_entry(row, h, 1);
        add_entry(row, static_cast<size_t>(grp.mul(static_cast<int>(g), static_cast<int>(h))), -1);
        add_entry(row, g, 1);
        Rational rv = c.at2(static_cast<int>(g), static_cast<int>(h)) * Rational(M);
        if (!rv.is_integer()) throw check_failure("is_coboundary: internal modulus error");
        b[row] = rv.num();
      }
  } else {
    for (size_t g = 0; g < n; ++g)
      for (size_t h = 0; h < n; ++h)
        for (size_t k = 0; k < n; ++k) {
          size_t row = (g * n + h) * n + k;
          int gi = static_cast<int>(g), hi = static_cast<int>(h), ki = static_cast<int>(k);
          add_entry(row, h * n + k, 1);
          add_entry(row, static_cast<size_t>(grp.mul(gi, hi)) * n + k, -1);
          add_entry(row, g * n + static_cast<size_t>(grp.mul(hi, ki)), 1);
          add_entry(row, g * n + h, -1);
          Rational rv = c.at3(gi, hi, ki) * Rational(M);
          if (!rv.is_integer()) throw check_failure("is_coboundary: internal modulus error");
          b[row] = rv.num();
        }
  }
  auto sol = solve_mod(A, b, M);
  if (!sol) return std::nullopt;
  std::vector<Rational> fv(cols);
  for (size_t i = 0; i < cols; ++i) fv[i] = Rational((*sol)[i], M).mod1();
  Cochain f(n, d - 1, std::move(fv));
  if (!(coboundary(grp, f) == c)) throw check_failure("is_coboundary: witness verification failed");
  return f;
}

// Alternating sum of a 3-cochain over all permutations of the arguments,
// signed by the permutation parity, as an element of Q/Z.  It vanishes on
// coboundaries of symmetric-enough cochains and detects the nontrivial class
// of wedge-type cocycles on elementary abelian groups.
inline Rational alt3_pairing(const Cochain& c, int g, int h, int k) {
  if (c.degree() != 3) throw invalid_input("alt3_pairing: degree-3 cochain required");
  Rational s = c.at3(g, h, k) - c.at3(g, k, h) - c.at3(h, g, k) + c.at3(h, k, g) +
               c.at3(k, g, h) - c.at3(k, h, g);
  return s.mod1();
}

inline bool alt3_vanishes(const Cochain& c) {
  size_t n = c.group_order();
  for (size_t g = 0; g < n; ++g)
    for (size_t h = 0; h < n; ++h)
      for (size_t k = 0; k < n; ++k)
        if (!alt3_pairing(c, static_cast<int>(g), static_cast<int>(h), static_cast<int>(k))
                 .is_zero())
          return false;
  return true;
}

}  // namespace hopftwist

#pragma once

#include <sstream>

#include "hopftwist/group.hpp"

namespace hopftwist {

// Quaternion with rational coordinates a + b i + c j + d k.
struct Quat {
  Rational a, b, c, d;
  friend bool operator==(const Quat& x, const Quat& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator<(const Quat& x, const Quat& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    if (x.c != y.c) return x.c < y.c;
    return x.d < y.d;
  }
};

inline Quat qmul(const Quat& x, const Quat& y) {
  return Quat{x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
              x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
              x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
              x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
}

inline std::string quat_name(const Quat& q) {
  std::ostringstream out;
  bool first = true;
  auto term = [&](const Rational& v, const char* unit) {
    if (v.is_zero()) return;
    std::string s = v.abs().str();
    if (!first)
      out << (v > Rational(0) ? "+" : "-");
    else if (v < Rational(0))
      out << "-";
    if (s != "1" || unit[0] == '\0')
      out << s;
    out << unit;
    first = false;
  };
  term(q.a, "");
  term(q.b, "i");
  term(q.c, "j");
  term(q.d, "k");
  if (first) out << "0";
  return out.str();
}

// A finite group of unit quaternions together with its coordinate model,
// closed under multiplication starting from the given generators.
struct QuaternionGroup {
  FiniteGroup group;
  std::vector<Quat> elements;  // index-aligned with group elements

  int index_of(const Quat& q) const {
    for (size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == q) return static_cast<int>(i);
    throw invalid_input("quaternion group: element not found");
  }

  // Conjugation x -> u x u^{-1} by a group element, as a permutation action
  // of the cyclic group generated by it.
  std::vector<int> conjugation_permutation(const Quat& u) const {
    Quat norm{u.a * u.a + u.b * u.b + u.c * u.c + u.d * u.d, Rational(0), Rational(0),
              Rational(0)};
    if (!(norm.a == Rational(1))) throw invalid_input("quaternion group: non-unit conjugator");
    Quat uinv{u.a, -u.b, -u.c, -u.d};
    std::vector<int> perm(elements.size());
    for (size_t i = 0; i < elements.size(); ++i)
      perm[i] = index_of(qmul(qmul(u, elements[i]), uinv));
    return perm;
  }
};

namespace detail {
inline QuaternionGroup quaternion_group_from(std::vector<Quat> seed,
                                             const std::vector<Quat>& gens) {
  for (size_t head = 0; head < seed.size(); ++head)
    for (const auto& g : gens) {
      Quat p = qmul(seed[head], g);
      if (std::find(seed.begin(), seed.end(), p) == seed.end()) seed.push_back(p);
      if (seed.size() > 256) throw resource_limit("quaternion group: closure too large");
    }
  // Canonical order: identity first, then lexicographic by coordinates.
  Quat one{Rational(1), Rational(0), Rational(0), Rational(0)};
  std::sort(seed.begin(), seed.end());
  auto it = std::find(seed.begin(), seed.end(), one);
  std::rotate(seed.begin(), it, it + 1);
  size_t n = seed.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> names(n);
  for (size_t i = 0; i < n; ++i) {
    names[i] = quat_name(seed[i]);
    for (size_t j = 0; j < n; ++j) {
      Quat p = qmul(seed[i], seed[j]);
      auto pos = std::find(seed.begin(), seed.end(), p);
      if (pos == seed.end()) throw invalid_input("quaternion group: not closed");
      table[i][j] = static_cast<int>(pos - seed.begin());
    }
  }
  return QuaternionGroup{FiniteGroup(std::move(table), std::move(names)), std::move(seed)};
}
}  // namespace detail

// The quaternion group {+-1, +-i, +-j, +-k} of order 8.
inline QuaternionGroup quaternion_group_q8() {
  Quat i{Rational(0), Rational(1), Rational(0), Rational(0)};
  Quat j{Rational(0), Rational(0), Rational(1), Rational(0)};
  return detail::quaternion_group_from(
      {Quat{Rational(1), Rational(0), Rational(0), Rational(0)}, i, j}, {i, j});
}

// The binary tetrahedral group of order 24: unit quaternions generated by i
// and (-1 - i - j - k)/2.
inline QuaternionGroup binary_tetrahedral_group() {
  Quat i{Rational(0), Rational(1), Rational(0), Rational(0)};
  Quat w{Rational(-1, 2), Rational(-1, 2), Rational(-1, 2), Rational(-1, 2)};
  return detail::quaternion_group_from(
      {Quat{Rational(1), Rational(0), Rational(0), Rational(0)}, i, w}, {i, w});
}

// Symmetric group on three letters, from its permutation representation.
inline FiniteGroup symmetric_group_s3() {
  FiniteGroup g = FiniteGroup::from_permutations(3, {{1, 2, 0}, {1, 0, 2}});
  return g;
}

}  // namespace hopftwist

#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "hopftwist/hopf.hpp"
#include "hopftwist/intmat.hpp"

namespace hopftwist {

// Convolution of linear functionals: (w * u)(a) = w(a_(1)) u(a_(2)).
inline Vec convolve(const FinHopf& h, const Vec& w, const Vec& u) {
  if (w.size() != h.dim || u.size() != h.dim)
    throw invalid_input("convolve: functional size mismatch");
  Vec out(h.dim, Scalar(0));
  for (size_t i = 0; i < h.dim; ++i)
    for (const auto& [jk, c] : h.comult[i]) out[i] += c * w[jk.first] * u[jk.second];
  return out;
}

// Is w an algebra character: multiplicative on all basis pairs with w(1) = 1?
inline bool is_character(const FinHopf& h, const Vec& w) {
  if (w.size() != h.dim) throw invalid_input("character: functional size mismatch");
  Scalar one(0);
  for (const auto& [i, c] : h.unit) one += c * w[i];
  if (one != Scalar(1)) return false;
  for (size_t i = 0; i < h.dim; ++i)
    for (size_t j = 0; j < h.dim; ++j) {
      Scalar lhs(0);
      for (const auto& [k, c] : h.mult[i][j]) lhs += c * w[k];
      if (lhs != w[i] * w[j]) return false;
    }
  return true;
}

// Is the character lazy (strongly central): w(a_(1)) a_(2) = a_(1) w(a_(2))?
inline bool is_lazy(const FinHopf& h, const Vec& w) {
  if (w.size() != h.dim) throw invalid_input("lazy: functional size mismatch");
  for (size_t i = 0; i < h.dim; ++i) {
    Vec left(h.dim, Scalar(0)), right(h.dim, Scalar(0));
    for (const auto& [jk, c] : h.comult[i]) {
      left[jk.second] += c * w[jk.first];
      right[jk.first] += c * w[jk.second];
    }
    if (left != right) return false;
  }
  return true;
}

// All algebra characters of H together with their convolution group.
struct CharacterGroup {
  std::vector<Vec> characters;
  FiniteGroup group;  // group.mul(i, j) = index of characters[i] * characters[j]
};

namespace detail {

// ---- Exact polynomial root-finding over cyclotomic scalars ----------------

using ScalarPoly = std::vector<Scalar>;  // coefficient of t^k at position k

inline void spoly_trim(ScalarPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Scalar spoly_eval(const ScalarPoly& p, const Scalar& x) {
  Scalar acc(0);
  for (size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

// Divides p by (t - root); the remainder must vanish.
inline ScalarPoly spoly_deflate(const ScalarPoly& p, const Scalar& root) {
  ScalarPoly q(p.size() - 1, Scalar(0));
  Scalar carry(0);
  for (size_t k = p.size(); k-- > 1;) {
    carry = p[k] + carry * root;
    q[k - 1] = carry;
  }
  if (!(p[0] + carry * root).is_zero())
    throw check_failure("root deflation: nonzero remainder");
  return q;
}

// Square root of a rational number inside a cyclotomic field:
// sqrt(p/q) = sqrt(p q)/q, with sqrt of a positive integer assembled from
// sqrt(2) = zeta_8 + zeta_8^{-1} and the quadratic Gauss sum
// sum_a (a|d) zeta_d^a, which equals sqrt(d) for d = 1 (mod 4) and
// i sqrt(d) for d = 3 (mod 4); a negative radicand contributes zeta_4.
inline Scalar sqrt_rational(const Rational& r) {
  if (r.is_zero()) return Scalar(0);
  Integer num = r.abs().num() * r.abs().den();
  // Split num = s^2 * d with d squarefree by trial division.
  Integer s(1), d(1), rest = num;
  for (Integer f(2); f * f <= rest; ++f) {
    if (f > 1000000) throw resource_limit("sqrt: radicand too large to factor");
    while (rest % (f * f) == 0) {
      s *= f;
      rest /= f * f;
    }
    if (rest % f == 0) {
      d *= f;
      rest /= f;
    }
  }
  d *= rest;
  Scalar root = Scalar(Rational(s, r.abs().den()));
  if (d % 2 == 0) {
    root = root * (Scalar::zeta(8) + Scalar::zeta(8, 7));
    d /= 2;
  }
  if (d > 1) {
    unsigned long dl = mpz_get_ui(d.get_mpz_t());
    Scalar gauss(0);
    for (unsigned long a = 1; a < dl; ++a) {
      int j = mpz_ui_kronecker(a, d.get_mpz_t());
      if (j == 1)
        gauss += Scalar::zeta(dl, static_cast<long>(a));
      else if (j == -1)
        gauss -= Scalar::zeta(dl, static_cast<long>(a));
    }
    if (d % 4 == 3) gauss = gauss * Scalar::zeta(4, 3);  // remove the factor i
    root = root * gauss;
  }
  if (r.sign() < 0) root = root * Scalar::zeta(4);
  return root;
}

// Square root of a scalar when it is rational or of the monomial form
// r * zeta^k; nullopt otherwise.
inline std::optional<Scalar> sqrt_scalar(const Scalar& v) {
  if (v.is_zero()) return Scalar(0);
  if (v.is_rational()) return sqrt_rational(v.rational_part());
  unsigned long n = v.conductor();
  for (unsigned long k = 1; k < n; ++k) {
    Scalar u = v * Scalar::zeta(n, -static_cast<long>(k));
    if (u.is_rational())
      return sqrt_rational(u.rational_part()) *
             Scalar::root_of_unity(Rational(Integer(k), Integer(2 * n)));
  }
  return std::nullopt;
}

// Rational root candidates of a monic-or-not integer polynomial given as
// exact rationals: all p/q with p | constant and q | leading.
inline std::vector<Rational> rational_root_candidates(const std::vector<Rational>& poly) {
  Integer lcm_den(1);
  for (const auto& c : poly) lcm_den = lcm(lcm_den, c.den());
  std::vector<Integer> ip;
  for (const auto& c : poly) ip.push_back(c.num() * (lcm_den / c.den()));
  while (!ip.empty() && ip.back() == 0) ip.pop_back();
  if (ip.empty() || ip.front() == 0)
    throw invalid_input("root candidates: zero constant term");
  auto divisors = [](Integer v) {
    v = abs(v);
    std::vector<Integer> out;
    for (Integer f(1); f * f <= v; ++f) {
      if (f > 1000000) throw resource_limit("root candidates: constant too large to factor");
      if (v % f == 0) {
        out.push_back(f);
        out.push_back(v / f);
      }
    }
    return out;
  };
  std::vector<Integer> ps = divisors(ip.front()), qs = divisors(ip.back());
  std::vector<Rational> cands;
  for (const auto& p : ps)
    for (const auto& q : qs) {
      cands.emplace_back(p, q);
      cands.emplace_back(-p, q);
    }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  if (cands.size() > 20000) throw resource_limit("root candidates: too many divisors");
  return cands;
}

// All roots of p lying in a cyclotomic field, found by exact peeling:
// linear polynomials directly; roots of the form r * zeta^k (r rational, k
// within the coefficient conductor) by sweeping k and applying the rational
// root theorem to a coordinate polynomial; a final quadratic factor by the
// quadratic formula with exact square roots.  A remaining factor of degree
// >= 3 with no such roots raises resource_limit.
inline std::vector<Scalar> roots_in_field(ScalarPoly p) {
  spoly_trim(p);
  if (p.empty()) throw invalid_input("roots: zero polynomial");
  std::vector<Scalar> roots;
  auto push_root = [&](const Scalar& r) {
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  };

  while (p.size() > 1) {
    // Roots at zero.
    if (p[0].is_zero()) {
      push_root(Scalar(0));
      p.erase(p.begin());
      continue;
    }
    if (p.size() == 2) {  // linear: a1 t + a0
      push_root(Scalar(0) - p[0] * p[1].inverse());
      break;
    }

    // Monomial-form roots r * zeta_N^k.
    unsigned long n = 1;
    for (const auto& c : p) n = std::lcm(n, c.conductor());
    bool found = false;
    for (unsigned long k = 0; k < n && !found; ++k) {
      // q(t) = p(zeta^k t); a rational root r of q gives the root r zeta^k.
      ScalarPoly q(p.size());
      for (size_t deg = 0; deg < p.size(); ++deg)
        q[deg] = p[deg] * Scalar::zeta(n, static_cast<long>(k * deg % n));
      // Coordinate polynomial with nonzero constant term on the power basis
      // of the joint conductor.
      unsigned long nc = 1;
      for (const auto& c : q) nc = std::lcm(nc, c.conductor());
      size_t width = 0;
      std::vector<std::vector<Rational>> coords(p.size());
      for (size_t deg = 0; deg < q.size(); ++deg) {
        coords[deg] = q[deg].promoted(nc).coeffs();
        width = std::max(width, coords[deg].size());
      }
      for (size_t b = 0; b < width; ++b) {
        std::vector<Rational> cp(q.size(), Rational(0));
        for (size_t deg = 0; deg < q.size(); ++deg)
          if (b < coords[deg].size()) cp[deg] = coords[deg][b];
        if (cp[0].is_zero()) continue;  // need a nonzero constant for candidates
        bool nonzero = false;
        for (const auto& c : cp) nonzero = nonzero || !c.is_zero();
        if (!nonzero) continue;
        for (const auto& r : rational_root_candidates(cp)) {
          Scalar cand = Scalar(r) * Scalar::zeta(n, static_cast<long>(k));
          if (spoly_eval(p, cand).is_zero()) {
            push_root(cand);
            p = spoly_deflate(p, cand);
            found = true;
            break;
          }
        }
        break;  // one valid coordinate polynomial bounds all rational roots
      }
    }
    if (found) continue;

    if (p.size() == 3) {  // quadratic: a2 t^2 + a1 t + a0
      Scalar disc = p[1] * p[1] - Scalar(4) * p[2] * p[0];
      std::optional<Scalar> sq = sqrt_scalar(disc);
      if (!sq) throw resource_limit("roots: quadratic discriminant is not a monomial");
      Scalar inv2a = (Scalar(2) * p[2]).inverse();
      Scalar r1 = (Scalar(0) - p[1] + *sq) * inv2a;
      Scalar r2 = (Scalar(0) - p[1] - *sq) * inv2a;
      if (!spoly_eval(p, r1).is_zero() || !spoly_eval(p, r2).is_zero())
        throw check_failure("roots: quadratic formula verification failed");
      push_root(r1);
      push_root(r2);
      break;
    }
    throw resource_limit("roots: cannot split polynomial of degree " +
                         std::to_string(p.size() - 1) + " exactly");
  }
  return roots;
}

// ---- Dense algebra quotients for the general character solver -------------

struct DenseAlg {
  size_t dim = 0;
  std::vector<std::vector<Vec>> mult;  // mult[i][j] = c_i c_j, dense
  Vec unit;
};

inline DenseAlg dense_from_hopf(const FinHopf& h) {
  DenseAlg a;
  a.dim = h.dim;
  a.mult.assign(h.dim, std::vector<Vec>(h.dim, Vec(h.dim, Scalar(0))));
  for (size_t i = 0; i < h.dim; ++i)
    for (size_t j = 0; j < h.dim; ++j)
      for (const auto& [k, c] : h.mult[i][j]) a.mult[i][j][k] = c;
  a.unit = to_dense(h, h.unit);
  return a;
}

inline Vec alg_product(const DenseAlg& a, const Vec& x, const Vec& y) {
  Vec out(a.dim, Scalar(0));
  for (size_t i = 0; i < a.dim; ++i) {
    if (x[i].is_zero()) continue;
    for (size_t j = 0; j < a.dim; ++j) {
      if (y[j].is_zero()) continue;
      Scalar c = x[i] * y[j];
      for (size_t k = 0; k < a.dim; ++k) out[k] += c * a.mult[i][j][k];
    }
  }
  return out;
}

// Row-space closure of the span of `rows` under left and right
// multiplication by all basis elements: the two-sided ideal it generates.
inline Mat ideal_closure(const DenseAlg& a, const std::vector<Vec>& rows) {
  Mat basis = row_space(mat_from_rows(rows, a.dim));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Vec> next;
    for (size_t r = 0; r < basis.rows(); ++r) {
      Vec v(a.dim);
      for (size_t j = 0; j < a.dim; ++j) v[j] = basis.at(r, j);
      next.push_back(v);
      for (size_t k = 0; k < a.dim; ++k) {
        Vec e(a.dim, Scalar(0));
        e[k] = Scalar(1);
        next.push_back(alg_product(a, e, v));
        next.push_back(alg_product(a, v, e));
      }
    }
    Mat bigger = row_space(mat_from_rows(next, a.dim));
    if (bigger.rows() > basis.rows()) {
      basis = bigger;
      grew = true;
    }
  }
  return basis;
}

// Quotient of a by the two-sided ideal spanned by the (echelonized) rows.
// Returns the quotient algebra and the projection matrix (quotient dim x
// parent dim) in the coordinates of the surviving basis vectors.
inline std::pair<DenseAlg, Mat> quotient_by(const DenseAlg& a, const Mat& ideal) {
  size_t n = a.dim;
  Mat rr = ideal;
  std::vector<size_t> pivots = rref(rr);
  std::vector<bool> is_pivot(n, false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<size_t> reps;
  for (size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) reps.push_back(j);
  size_t m = reps.size();

  Mat proj(m, n);
  for (size_t q = 0; q < m; ++q) proj.at(q, reps[q]) = Scalar(1);
  for (size_t r = 0; r < pivots.size(); ++r)
    for (size_t q = 0; q < m; ++q) proj.at(q, pivots[r]) = Scalar(0) - rr.at(r, reps[q]);

  auto project = [&](const Vec& x) {
    Vec out(m, Scalar(0));
    for (size_t q = 0; q < m; ++q)
      for (size_t j = 0; j < n; ++j)
        if (!x[j].is_zero()) out[q] += proj.at(q, j) * x[j];
    return out;
  };

  DenseAlg b;
  b.dim = m;
  b.mult.assign(m, std::vector<Vec>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      Vec ei(n, Scalar(0)), ej(n, Scalar(0));
      ei[reps[i]] = Scalar(1);
      ej[reps[j]] = Scalar(1);
      b.mult[i][j] = project(alg_product(a, ei, ej));
    }
  b.unit = project(a.unit);
  return {std::move(b), std::move(proj)};
}

// Matrix of left multiplication by x on a.
inline Mat left_mult_matrix(const DenseAlg& a, const Vec& x) {
  Mat mx(a.dim, a.dim);
  for (size_t j = 0; j < a.dim; ++j) {
    Vec ej(a.dim, Scalar(0));
    ej[j] = Scalar(1);
    Vec img = alg_product(a, x, ej);
    for (size_t r = 0; r < a.dim; ++r) mx.at(r, j) = img[r];
  }
  return mx;
}

// Minimal polynomial of a square matrix by incremental Krylov dependency.
inline ScalarPoly min_poly(const Mat& mx) {
  size_t n = mx.rows();
  std::vector<Mat> powers{Mat::identity(n)};
  for (size_t d = 1; d <= n; ++d) powers.push_back(powers.back() * mx);
  for (size_t d = 1; d <= n; ++d) {
    // Solve powers[d] = sum_{k<d} c_k powers[k] coefficientwise.
    Mat sys(n * n, d);
    Vec rhs(n * n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        for (size_t k = 0; k < d; ++k) sys.at(i * n + j, k) = powers[k].at(i, j);
        rhs[i * n + j] = powers[d].at(i, j);
      }
    LinearSolution sol = solve_linear(sys, rhs);
    if (sol.consistent) {
      ScalarPoly p(d + 1, Scalar(0));
      for (size_t k = 0; k < d; ++k) p[k] = Scalar(0) - sol.particular[k];
      p[d] = Scalar(1);
      return p;
    }
  }
  throw check_failure("min_poly: no dependency up to full dimension");
}

}  // namespace detail

namespace detail {

// Structured route: basis of orthogonal idempotents (function algebras on a
// finite set); characters are exactly the coordinate functionals.
inline std::optional<std::vector<Vec>> characters_diagonal(const FinHopf& h) {
  for (size_t i = 0; i < h.dim; ++i)
    for (size_t j = 0; j < h.dim; ++j) {
      const SparseVec& p = h.mult[i][j];
      if (i == j) {
        if (p.size() != 1 || p.begin()->first != i || p.begin()->second != Scalar(1))
          return std::nullopt;
      } else if (!p.empty()) {
        return std::nullopt;
      }
    }
  std::vector<Vec> chars;
  for (size_t i = 0; i < h.dim; ++i) {
    Vec e(h.dim, Scalar(0));
    e[i] = Scalar(1);
    chars.push_back(std::move(e));
  }
  return chars;
}

// Structured route: group-like basis (group algebras).  Characters are the
// degree-one characters of the basis group: additive maps to Z/E, found as
// the kernel of the homomorphism constraints mod the group exponent.
inline std::optional<std::vector<Vec>> characters_grouplike(const FinHopf& h) {
  size_t n = h.dim;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (size_t i = 0; i < n; ++i) {
    if (h.comult[i].size() != 1) return std::nullopt;
    auto& [jk, c] = *h.comult[i].begin();
    if (jk.first != i || jk.second != i || c != Scalar(1)) return std::nullopt;
    if (h.counit[i] != Scalar(1)) return std::nullopt;
    for (size_t j = 0; j < n; ++j) {
      const SparseVec& p = h.mult[i][j];
      if (p.size() != 1 || p.begin()->second != Scalar(1)) return std::nullopt;
      table[i][j] = static_cast<int>(p.begin()->first);
    }
  }
  FiniteGroup grp(table);
  long e = grp.exponent();
  Integer me(e);
  // Unknowns t(x); constraints t(x) + t(y) - t(xy) = 0 (mod E).
  ZMat sys(n * n, n);
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      size_t row = x * n + y;
      sys.at(row, x) += 1;
      sys.at(row, y) += 1;
      sys.at(row, static_cast<size_t>(table[x][y])) -= 1;
    }
  ModKernel ker = kernel_mod(sys, me);
  std::vector<Vec> chars;
  for (const auto& t : ker.enumerate(me)) {
    Vec w(n);
    for (size_t x = 0; x < n; ++x)
      w[x] = Scalar::root_of_unity(Rational(t[x], me));
    chars.push_back(std::move(w));
  }
  return chars;
}

// General route: quotient by the commutator ideal and the trace-form
// radical, then a complete backtracking search with per-coordinate
// candidates given by exact minimal-polynomial roots.
inline std::vector<Vec> characters_general(const FinHopf& h, size_t max_dim) {
  if (h.dim > max_dim)
    throw resource_limit("character solver: dimension " + std::to_string(h.dim) +
                         " exceeds the configured bound " + std::to_string(max_dim));
  DenseAlg a0 = dense_from_hopf(h);

  // Characters kill commutators and nilpotents, so they factor through the
  // semisimple commutative quotient.
  std::vector<Vec> comm;
  for (size_t i = 0; i < a0.dim; ++i)
    for (size_t j = i + 1; j < a0.dim; ++j) {
      Vec ei(a0.dim, Scalar(0)), ej(a0.dim, Scalar(0));
      ei[i] = Scalar(1);
      ej[j] = Scalar(1);
      Vec xy = alg_product(a0, ei, ej);
      Vec yx = alg_product(a0, ej, ei);
      for (size_t k = 0; k < a0.dim; ++k) xy[k] -= yx[k];
      comm.push_back(std::move(xy));
    }
  auto [a1, proj1] = quotient_by(a0, comm.empty() ? Mat(0, a0.dim)
                                                  : ideal_closure(a0, comm));

  std::vector<Scalar> traces(a1.dim);
  for (size_t k = 0; k < a1.dim; ++k) {
    Vec ek(a1.dim, Scalar(0));
    ek[k] = Scalar(1);
    Mat lk = left_mult_matrix(a1, ek);
    Scalar tr(0);
    for (size_t t = 0; t < a1.dim; ++t) tr += lk.at(t, t);
    traces[k] = tr;
  }
  Mat trace_form(a1.dim, a1.dim);
  for (size_t i = 0; i < a1.dim; ++i)
    for (size_t j = 0; j < a1.dim; ++j) {
      Scalar v(0);
      for (size_t k = 0; k < a1.dim; ++k) v += a1.mult[i][j][k] * traces[k];
      trace_form.at(i, j) = v;
    }
  Mat radv = kernel(trace_form);  // columns span the radical
  std::vector<Vec> rad_rows;
  for (size_t c = 0; c < radv.cols(); ++c) {
    Vec v(a1.dim);
    for (size_t r = 0; r < a1.dim; ++r) v[r] = radv.at(r, c);
    rad_rows.push_back(std::move(v));
  }
  auto [a2, proj2] = quotient_by(a1, rad_rows.empty() ? Mat(0, a1.dim)
                                                      : ideal_closure(a1, rad_rows));
  Mat proj_full = proj2 * proj1;

  size_t m = a2.dim;
  // Per-coordinate candidate values: roots of each basis element's minimal
  // polynomial (exactness makes the search complete).
  std::vector<std::vector<Scalar>> cand(m);
  for (size_t i = 0; i < m; ++i) {
    Vec ei(m, Scalar(0));
    ei[i] = Scalar(1);
    cand[i] = roots_in_field(min_poly(left_mult_matrix(a2, ei)));
    if (cand[i].empty()) return {};
  }

  // Constraint (i, j) can be checked once coordinates 0..d are assigned,
  // where d = max(i, j, support of c_i c_j).
  std::vector<std::vector<std::pair<size_t, size_t>>> checks(m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      size_t d = std::max(i, j);
      for (size_t k = 0; k < m; ++k)
        if (!a2.mult[i][j][k].is_zero()) d = std::max(d, k);
      checks[d].push_back({i, j});
    }

  std::vector<Vec> found;
  Vec w(m, Scalar(0));
  size_t nodes = 0;
  auto dfs = [&](auto&& self, size_t depth) -> void {
    if (++nodes > 1000000) throw resource_limit("character solver: search space too large");
    if (depth == m) {
      Scalar unit_val(0);
      for (size_t k = 0; k < m; ++k) unit_val += a2.unit[k] * w[k];
      if (unit_val == Scalar(1)) found.push_back(w);
      return;
    }
    for (const Scalar& v : cand[depth]) {
      w[depth] = v;
      bool ok = true;
      for (const auto& [i, j] : checks[depth]) {
        Scalar rhs(0);
        for (size_t k = 0; k < m; ++k)
          if (!a2.mult[i][j][k].is_zero()) rhs += a2.mult[i][j][k] * w[k];
        if (w[i] * w[j] != rhs) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, depth + 1);
    }
    w[depth] = Scalar(0);
  };
  dfs(dfs, 0);

  // Pull back along the quotient projections.
  std::vector<Vec> chars;
  for (const auto& wq : found) {
    Vec full(h.dim, Scalar(0));
    for (size_t i = 0; i < h.dim; ++i)
      for (size_t q = 0; q < m; ++q) full[i] += wq[q] * proj_full.at(q, i);
    chars.push_back(std::move(full));
  }
  return chars;
}

inline size_t character_dim_bound() {
  if (const char* env = std::getenv("HOPFTWIST_MAX_DIM")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
    throw invalid_input("HOPFTWIST_MAX_DIM: not a positive integer");
  }
  return 16;
}

}  // namespace detail

// Computes all algebra characters and their convolution group.  Structured
// inputs (orthogonal-idempotent bases, group-like bases) are solved in
// closed form; the general path quotients to a semisimple commutative
// algebra and backtracks over exact minimal-polynomial roots, and is gated
// by max_dim (default: HOPFTWIST_MAX_DIM environment variable, or 16).
inline CharacterGroup character_group(const FinHopf& h,
                                      std::optional<size_t> max_dim = std::nullopt) {
  detail::check_hopf_shape(h);
  std::vector<Vec> chars;
  if (auto diag = detail::characters_diagonal(h)) {
    chars = std::move(*diag);
  } else if (auto gl = detail::characters_grouplike(h)) {
    chars = std::move(*gl);
  } else {
    chars = detail::characters_general(h, max_dim ? *max_dim : detail::character_dim_bound());
  }
  for (const auto& w : chars)
    if (!is_character(h, w)) throw check_failure("character solver: non-character produced");

  size_t n = chars.size();
  if (n == 0) throw check_failure("character solver: found no characters (counit missing?)");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Vec prod = convolve(h, chars[i], chars[j]);
      auto it = std::find(chars.begin(), chars.end(), prod);
      if (it == chars.end())
        throw check_failure("character solver: convolution left the computed set");
      table[i][j] = static_cast<int>(it - chars.begin());
    }
  FiniteGroup grp(std::move(table));
  return CharacterGroup{std::move(chars), std::move(grp)};
}

// Exposed for dual-route testing: force the general solver.
inline std::vector<Vec> character_solve_general(const FinHopf& h, size_t max_dim) {
  return detail::characters_general(h, max_dim);
}

}  // namespace hopftwist

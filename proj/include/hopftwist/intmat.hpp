#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "hopftwist/rational.hpp"

namespace hopftwist {

// Dense integer matrix, row-major.
class ZMat {
 public:
  ZMat() : rows_(0), cols_(0) {}
  ZMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), d_(rows * cols, Integer(0)) {}

  static ZMat identity(size_t n) {
    ZMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Integer& at(size_t i, size_t j) { return d_[i * cols_ + j]; }
  const Integer& at(size_t i, size_t j) const { return d_[i * cols_ + j]; }

  void swap_rows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
  }
  void swap_cols(size_t a, size_t b) {
    if (a == b) return;
    for (size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
  }

 private:
  size_t rows_, cols_;
  std::vector<Integer> d_;
};

// Smith normal form U*A*V = D with U, V unimodular and the diagonal of D a
// nonnegative divisibility chain d_1 | d_2 | ...
struct SmithForm {
  ZMat d, u, v;
  std::vector<Integer> diag;  // min(rows, cols) entries, zeros included
};

inline SmithForm smith_normal_form(ZMat a) {
  size_t r = a.rows(), c = a.cols();
  ZMat u = ZMat::identity(r), v = ZMat::identity(c);

  // (row i1, row i2) <- (x*row i1 + y*row i2, z*row i1 + w*row i2), and the
  // same for columns; x*w - y*z = 1 in every call below.
  auto row_combine = [&](size_t i1, size_t i2, const Integer& x, const Integer& y,
                         const Integer& z, const Integer& w) {
    for (size_t j = 0; j < c; ++j) {
      Integer p = x * a.at(i1, j) + y * a.at(i2, j);
      Integer q = z * a.at(i1, j) + w * a.at(i2, j);
      a.at(i1, j) = p;
      a.at(i2, j) = q;
    }
    for (size_t j = 0; j < r; ++j) {
      Integer p = x * u.at(i1, j) + y * u.at(i2, j);
      Integer q = z * u.at(i1, j) + w * u.at(i2, j);
      u.at(i1, j) = p;
      u.at(i2, j) = q;
    }
  };
  auto col_combine = [&](size_t j1, size_t j2, const Integer& x, const Integer& y,
                         const Integer& z, const Integer& w) {
    for (size_t i = 0; i < r; ++i) {
      Integer p = x * a.at(i, j1) + y * a.at(i, j2);
      Integer q = z * a.at(i, j1) + w * a.at(i, j2);
      a.at(i, j1) = p;
      a.at(i, j2) = q;
    }
    for (size_t i = 0; i < c; ++i) {
      Integer p = x * v.at(i, j1) + y * v.at(i, j2);
      Integer q = z * v.at(i, j1) + w * v.at(i, j2);
      v.at(i, j1) = p;
      v.at(i, j2) = q;
    }
  };

  size_t n = std::min(r, c);
  auto diagonalize = [&]() {
    for (size_t t = 0; t < n; ++t) {
      size_t pi = t, pj = t;
      Integer best(0);
      for (size_t i = t; i < r; ++i)
        for (size_t j = t; j < c; ++j) {
          Integer m = abs(a.at(i, j));
          if (m != 0 && (best == 0 || m < best)) {
            best = m;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) break;
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);
      bool dirty = true;
      while (dirty) {
        dirty = false;
        for (size_t i = t + 1; i < r; ++i) {
          if (a.at(i, t) == 0) continue;
          if (a.at(i, t) % a.at(t, t) == 0) {
            // Plain transvection keeps row t intact, so it cannot re-dirty
            // the column phase.
            row_combine(t, i, Integer(1), Integer(0), -(a.at(i, t) / a.at(t, t)), Integer(1));
          } else {
            // gcd combine strictly shrinks |a(t,t)|, so this branch is taken
            // finitely often.
            Integer g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.at(t, t).get_mpz_t(),
                       a.at(i, t).get_mpz_t());
            row_combine(t, i, x, y, -(a.at(i, t) / g), a.at(t, t) / g);
            dirty = true;
          }
        }
        for (size_t j = t + 1; j < c; ++j) {
          if (a.at(t, j) == 0) continue;
          if (a.at(t, j) % a.at(t, t) == 0) {
            col_combine(t, j, Integer(1), Integer(0), -(a.at(t, j) / a.at(t, t)), Integer(1));
          } else {
            Integer g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.at(t, t).get_mpz_t(),
                       a.at(t, j).get_mpz_t());
            col_combine(t, j, x, y, -(a.at(t, j) / g), a.at(t, t) / g);
            dirty = true;
          }
        }
      }
      if (a.at(t, t) < 0) {
        for (size_t j = 0; j < c; ++j) a.at(t, j) = -a.at(t, j);
        for (size_t j = 0; j < r; ++j) u.at(t, j) = -u.at(t, j);
      }
    }
  };

  diagonalize();
  // Enforce the divisibility chain.  A broken pair diag(x, y) is replaced in
  // place by diag(gcd(x, y), lcm(x, y)): always fixing the first broken pair
  // strictly shrinks d_t while leaving d_0..d_{t-1} untouched, so the scan
  // terminates.
  bool chain_ok = false;
  while (!chain_ok) {
    chain_ok = true;
    for (size_t t = 0; t + 1 < n; ++t) {
      const Integer x = a.at(t, t);
      const Integer y = a.at(t + 1, t + 1);
      // x == 0 with y != 0 cannot occur: the pivot search saturates rank
      // before leaving a zero on the diagonal.
      if (x != 0 && y != 0 && y % x != 0) {
        // Merge y into row t, then a unimodular column mix puts the gcd at
        // (t, t) and the (signed) lcm at (t+1, t+1).
        row_combine(t, t + 1, Integer(1), Integer(1), Integer(0), Integer(1));
        Integer g, p, q;
        mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        col_combine(t, t + 1, p, q, -(y / g), x / g);
        // The block is now [[g, 0], [q*y, x*y/g]] and g divides q*y.
        row_combine(t, t + 1, Integer(1), Integer(0), -(a.at(t + 1, t) / g), Integer(1));
        chain_ok = false;
        break;
      }
    }
  }

  SmithForm out;
  out.diag.reserve(n);
  for (size_t t = 0; t < n; ++t) out.diag.push_back(a.at(t, t));
  out.d = std::move(a);
  out.u = std::move(u);
  out.v = std::move(v);
  return out;
}

// Generating set for the solution set of A x = 0 (mod M): pairs (v, o) such
// that every solution is uniquely sum_i c_i v_i (mod M) with 0 <= c_i < o_i.
struct ModKernel {
  size_t cols = 0;
  std::vector<std::vector<Integer>> generators;
  std::vector<Integer> orders;  // parallel to generators

  // Total number of solutions (product of the orders).
  Integer count() const {
    Integer c(1);
    for (const auto& o : orders) c *= o;
    return c;
  }

  // Enumerates all solutions; requires count() to be modest.
  std::vector<std::vector<Integer>> enumerate(const Integer& m) const {
    std::vector<std::vector<Integer>> out;
    std::vector<Integer> coeff(orders.size(), Integer(0));
    while (true) {
      std::vector<Integer> x(cols, Integer(0));
      for (size_t i = 0; i < generators.size(); ++i)
        for (size_t j = 0; j < cols; ++j) x[j] = (x[j] + coeff[i] * generators[i][j]) % m;
      out.push_back(std::move(x));
      size_t k = 0;
      while (k < coeff.size()) {
        coeff[k] += 1;
        if (coeff[k] < orders[k]) break;
        coeff[k] = 0;
        ++k;
      }
      if (k == coeff.size()) break;
    }
    return out;
  }
};

namespace detail {

// Shared elimination core for the mod-M solvers: brings a into diagonal form
// with unimodular row/column transforms (mod m), carrying the rhs b (when
// present) through row operations and tracking column operations in v.
struct ModElim {
  ZMat a;
  std::vector<Integer> b;  // empty when no rhs is carried
  ZMat v;
  Integer m;
  size_t n;  // diagonal length min(rows, cols)

  ModElim(const ZMat& a0, std::vector<Integer> b0, const Integer& mod)
      : a(a0), b(std::move(b0)), v(ZMat::identity(a0.cols())), m(mod),
        n(std::min(a0.rows(), a0.cols())) {
    for (size_t i = 0; i < a.rows(); ++i)
      for (size_t j = 0; j < a.cols(); ++j) red(a.at(i, j));
    for (auto& x : b) red(x);
    run();
  }

  void red(Integer& x) const {
    x %= m;
    if (x < 0) x += m;
  }

  void row_combine(size_t i1, size_t i2, const Integer& x, const Integer& y, const Integer& z,
                   const Integer& w) {
    for (size_t j = 0; j < a.cols(); ++j) {
      Integer p = x * a.at(i1, j) + y * a.at(i2, j);
      Integer q = z * a.at(i1, j) + w * a.at(i2, j);
      red(p);
      red(q);
      a.at(i1, j) = p;
      a.at(i2, j) = q;
    }
    if (!b.empty()) {
      Integer p = x * b[i1] + y * b[i2];
      Integer q = z * b[i1] + w * b[i2];
      red(p);
      red(q);
      b[i1] = p;
      b[i2] = q;
    }
  }

  void col_combine(size_t j1, size_t j2, const Integer& x, const Integer& y, const Integer& z,
                   const Integer& w) {
    for (size_t i = 0; i < a.rows(); ++i) {
      Integer p = x * a.at(i, j1) + y * a.at(i, j2);
      Integer q = z * a.at(i, j1) + w * a.at(i, j2);
      red(p);
      red(q);
      a.at(i, j1) = p;
      a.at(i, j2) = q;
    }
    for (size_t i = 0; i < a.cols(); ++i) {
      Integer p = x * v.at(i, j1) + y * v.at(i, j2);
      Integer q = z * v.at(i, j1) + w * v.at(i, j2);
      red(p);
      red(q);
      v.at(i, j1) = p;
      v.at(i, j2) = q;
    }
  }

  void run() {
    size_t r = a.rows(), c = a.cols();
    for (size_t t = 0; t < n; ++t) {
      size_t pi = t, pj = t;
      Integer best(0);
      for (size_t i = t; i < r; ++i)
        for (size_t j = t; j < c; ++j) {
          if (a.at(i, j) == 0) continue;
          Integer g = gcd(a.at(i, j), m);
          if (best == 0 || g < best) {
            best = g;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) break;
      a.swap_rows(t, pi);
      if (!b.empty()) std::swap(b[t], b[pi]);
      a.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool dirty = true;
      while (dirty) {
        dirty = false;
        for (size_t i = t + 1; i < r; ++i) {
          if (a.at(i, t) == 0) continue;
          if (a.at(i, t) % a.at(t, t) == 0) {
            row_combine(t, i, Integer(1), Integer(0), -(a.at(i, t) / a.at(t, t)), Integer(1));
          } else {
            Integer g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.at(t, t).get_mpz_t(),
                       a.at(i, t).get_mpz_t());
            row_combine(t, i, x, y, -(a.at(i, t) / g), a.at(t, t) / g);
            dirty = true;
          }
        }
        for (size_t j = t + 1; j < c; ++j) {
          if (a.at(t, j) == 0) continue;
          if (a.at(t, j) % a.at(t, t) == 0) {
            col_combine(t, j, Integer(1), Integer(0), -(a.at(t, j) / a.at(t, t)), Integer(1));
          } else {
            Integer g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.at(t, t).get_mpz_t(),
                       a.at(t, j).get_mpz_t());
            col_combine(t, j, x, y, -(a.at(t, j) / g), a.at(t, t) / g);
            dirty = true;
          }
        }
      }
    }
  }
};

}  // namespace detail

// Solves A x = b (mod M) for M >= 1.  Returns a witness in [0, M)^cols or
// nullopt if no solution exists.  Elimination mod M with unimodular
// row/column transforms; column transforms are tracked to recover the witness.
inline std::optional<std::vector<Integer>> solve_mod(const ZMat& a0, const std::vector<Integer>& b0,
                                                     const Integer& m) {
  if (m <= 0) throw invalid_input("solve_mod: modulus must be positive");
  size_t r = a0.rows(), c = a0.cols();
  if (b0.size() != r) throw invalid_input("solve_mod: rhs size mismatch");
  if (m == 1) return std::vector<Integer>(c, Integer(0));

  detail::ModElim e(a0, b0, m);
  const ZMat& a = e.a;
  const std::vector<Integer>& b = e.b;
  const ZMat& v = e.v;
  size_t n = e.n;

  std::vector<Integer> y(c, Integer(0));
  for (size_t i = 0; i < r; ++i) {
    Integer d = (i < n) ? a.at(i, i) : Integer(0);
    if (d == 0) {
      if (b[i] % m != 0) return std::nullopt;
      continue;
    }
    Integer g = gcd(d, m);
    if (b[i] % g != 0) return std::nullopt;
    Integer m2 = m / g;
    if (m2 == 1) continue;  // y_i = 0 works: d*0 = 0 = b_i (mod g = m... b_i % g == 0 and m | ...)
    Integer dd = (d / g) % m2;
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), dd.get_mpz_t(), m2.get_mpz_t()) == 0)
      return std::nullopt;  // unreachable: dd is coprime to m2
    Integer yi = ((b[i] / g) % m2) * inv % m2;
    if (yi < 0) yi += m2;
    y[i] = yi;
  }
  std::vector<Integer> x(c, Integer(0));
  for (size_t i = 0; i < c; ++i) {
    Integer s(0);
    for (size_t j = 0; j < c; ++j)
      if (y[j] != 0) s += v.at(i, j) * y[j];
    s %= m;
    if (s < 0) s += m;
    x[i] = s;
  }
  return x;
}

// Structured description of {x : A x = 0 (mod M)}.  In diagonal form
// d_t y_t = 0 (mod M) the free coordinate y_t ranges over multiples of
// M/gcd(d_t, M), so column t of the tracked transform, scaled by that step,
// generates a cyclic factor of order gcd(d_t, M); untouched columns are free
// of order M.  Uniqueness of coefficients follows from V being invertible
// mod M.
inline ModKernel kernel_mod(const ZMat& a0, const Integer& m) {
  if (m <= 0) throw invalid_input("kernel_mod: modulus must be positive");
  size_t c = a0.cols();
  ModKernel out;
  out.cols = c;
  if (m == 1) return out;  // only the zero solution, no generators needed

  detail::ModElim e(a0, {}, m);
  for (size_t t = 0; t < c; ++t) {
    Integer d = (t < e.n) ? e.a.at(t, t) : Integer(0);
    Integer g = gcd(d, m);  // gcd(0, m) = m: free coordinate
    if (g == 1) continue;   // coordinate forced to zero
    Integer step = m / g;
    std::vector<Integer> gen(c);
    for (size_t i = 0; i < c; ++i) {
      Integer s = (e.v.at(i, t) * step) % m;
      if (s < 0) s += m;
      gen[i] = s;
    }
    out.generators.push_back(std::move(gen));
    out.orders.push_back(g);
  }
  return out;
}

}  // namespace hopftwist

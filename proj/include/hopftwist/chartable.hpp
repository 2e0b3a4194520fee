#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "hopftwist/cyclotomic.hpp"
#include "hopftwist/group.hpp"

namespace hopftwist {

// Conjugacy classes of a finite group: the class of the identity comes
// first, the rest follow in order of their smallest member.
struct ConjugacyClasses {
  std::vector<std::vector<int>> classes;  // sorted member lists
  std::vector<int> class_of;              // element -> class index
  std::vector<int> reps;                  // class -> smallest member

  size_t count() const { return classes.size(); }
  long size_of(size_t k) const { return static_cast<long>(classes[k].size()); }
};

inline ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
  size_t n = g.order();
  ConjugacyClasses out;
  out.class_of.assign(n, -1);
  auto add_class = [&](int seed) {
    std::vector<int> members;
    for (size_t u = 0; u < n; ++u) {
      int x = g.conjugate(static_cast<int>(u), seed);
      if (out.class_of[x] == -1) {
        out.class_of[x] = static_cast<int>(out.classes.size());
        members.push_back(x);
      }
    }
    std::sort(members.begin(), members.end());
    out.reps.push_back(members.front());
    out.classes.push_back(std::move(members));
  };
  add_class(g.identity());
  for (size_t x = 0; x < n; ++x)
    if (out.class_of[x] == -1) add_class(static_cast<int>(x));
  return out;
}

// Exact irreducible character table over cyclotomic numbers.  Rows are
// irreducible characters sorted by (degree, value list); columns follow the
// ConjugacyClasses order, so chi[i][0] is the degree.
struct CharacterTable {
  ConjugacyClasses cls;
  std::vector<std::vector<Scalar>> chi;  // chi[irrep][class]
  std::vector<long> degrees;             // chi[i][0] as an integer

  size_t irrep_count() const { return chi.size(); }
};

namespace detail {

// ---- Arithmetic mod a word-sized prime ------------------------------------

inline long fp_mul(long a, long b, long p) {
  return static_cast<long>(static_cast<unsigned long long>(a) * static_cast<unsigned long long>(b) %
                           static_cast<unsigned long long>(p));
}
inline long fp_pow(long a, long e, long p) {
  long r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = fp_mul(r, a, p);
    a = fp_mul(a, a, p);
    e >>= 1;
  }
  return r;
}
inline long fp_inv(long a, long p) { return fp_pow(((a % p) + p) % p, p - 2, p); }

// Smallest prime p = 1 (mod e) with p > bound.
inline long fp_find_prime(long e, long bound) {
  for (long p = ((bound / e) + 1) * e + 1;; p += e) {
    bool prime = p > 1;
    for (long d = 2; d * d <= p && prime; ++d)
      if (p % d == 0) prime = false;
    if (prime) return p;
  }
}

// A fixed primitive e-th root of unity in F_p (requires e | p - 1).
inline long fp_root_of_unity(long e, long p) {
  std::vector<long> qs;
  long m = p - 1;
  for (long d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      qs.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) qs.push_back(m);
  for (long g = 2; g < p; ++g) {
    bool primitive = true;
    for (long q : qs)
      if (fp_pow(g, (p - 1) / q, p) == 1) {
        primitive = false;
        break;
      }
    if (primitive) return fp_pow(g, (p - 1) / e, p);
  }
  throw check_failure("character table: no primitive root mod p");
}

using FpMat = std::vector<std::vector<long>>;  // row-major

// Solve C * T = B for T, where C has full column rank; entries mod p.
inline FpMat fp_solve_columns(const FpMat& c, const FpMat& b, long p) {
  size_t rows = c.size(), d = c.empty() ? 0 : c[0].size(), w = b.empty() ? 0 : b[0].size();
  FpMat aug(rows, std::vector<long>(d + w));
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < d; ++j) aug[i][j] = c[i][j];
    for (size_t j = 0; j < w; ++j) aug[i][d + j] = b[i][j];
  }
  size_t row = 0;
  std::vector<size_t> pivot_row(d);
  for (size_t col = 0; col < d; ++col) {
    size_t piv = row;
    while (piv < rows && aug[piv][col] == 0) ++piv;
    if (piv == rows) throw check_failure("character table: singular block basis");
    std::swap(aug[piv], aug[row]);
    long inv = fp_inv(aug[row][col], p);
    for (size_t j = col; j < d + w; ++j) aug[row][j] = fp_mul(aug[row][j], inv, p);
    for (size_t i = 0; i < rows; ++i) {
      if (i == row || aug[i][col] == 0) continue;
      long f = aug[i][col];
      for (size_t j = col; j < d + w; ++j)
        aug[i][j] = ((aug[i][j] - fp_mul(f, aug[row][j], p)) % p + p) % p;
    }
    pivot_row[col] = row++;
  }
  for (size_t i = row; i < rows; ++i)
    for (size_t j = d; j < d + w; ++j)
      if (aug[i][j] != 0) throw check_failure("character table: inconsistent restriction");
  FpMat t(d, std::vector<long>(w));
  for (size_t col = 0; col < d; ++col)
    for (size_t j = 0; j < w; ++j) t[col][j] = aug[pivot_row[col]][d + j];
  return t;
}

// Basis of ker(T - lambda I) mod p, as columns.
inline FpMat fp_eigen_kernel(FpMat t, long lambda, long p) {
  size_t d = t.size();
  for (size_t i = 0; i < d; ++i) t[i][i] = ((t[i][i] - lambda) % p + p) % p;
  // Row reduce.
  size_t row = 0;
  std::vector<long> pivot_col(d, -1);
  for (size_t col = 0; col < d && row < d; ++col) {
    size_t piv = row;
    while (piv < d && t[piv][col] == 0) ++piv;
    if (piv == d) continue;
    std::swap(t[piv], t[row]);
    long inv = fp_inv(t[row][col], p);
    for (size_t j = col; j < d; ++j) t[row][j] = fp_mul(t[row][j], inv, p);
    for (size_t i = 0; i < d; ++i) {
      if (i == row || t[i][col] == 0) continue;
      long f = t[i][col];
      for (size_t j = col; j < d; ++j) t[i][j] = ((t[i][j] - fp_mul(f, t[row][j], p)) % p + p) % p;
    }
    pivot_col[row++] = static_cast<long>(col);
  }
  std::vector<bool> is_pivot(d, false);
  for (size_t i = 0; i < row; ++i) is_pivot[pivot_col[i]] = true;
  FpMat kernel(d);
  for (size_t free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    std::vector<long> v(d, 0);
    v[free] = 1;
    for (size_t i = 0; i < row; ++i)
      v[pivot_col[i]] = (p - t[i][free]) % p;
    for (size_t i = 0; i < d; ++i) kernel[i].push_back(v[i]);
  }
  return kernel[0].empty() ? FpMat() : kernel;
}

inline FpMat fp_mat_mul(const FpMat& a, const FpMat& b, long p) {
  size_t rows = a.size(), inner = b.size(), w = b.empty() ? 0 : b[0].size();
  FpMat out(rows, std::vector<long>(w, 0));
  for (size_t i = 0; i < rows; ++i)
    for (size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < w; ++j)
        out[i][j] = (out[i][j] + fp_mul(a[i][k], b[k][j], p)) % p;
    }
  return out;
}

}  // namespace detail

// Character table by the class-algebra eigenvector method: the vectors
// w_chi = (|C_k| chi(g_k) / chi(1))_k are the common eigenvectors of the
// class matrices (A_i)_{jk} = #{(x,y) in C_i x C_j : xy = g_k}, so they are
// found by simultaneous eigenspace splitting over a prime field F_p with
// p = 1 (mod exponent) and p > 2|G|, and the integer eigenvalue multiplicities
// of each rho(g) are recovered from the discrete Fourier transform of
// t -> chi(g^t) in F_p.  The assembled cyclotomic table is then verified
// exactly against the orthogonality relations, so no mod-p artifact can
// survive into the result.
inline CharacterTable character_table(const FiniteGroup& g) {
  const size_t n = g.order();
  ConjugacyClasses cls = conjugacy_classes(g);
  const size_t r = cls.count();
  const long e = g.exponent();
  const long p = detail::fp_find_prime(e, 2 * static_cast<long>(n));
  const long omega = detail::fp_root_of_unity(e, p);

  // Class matrices A_i, rows j, columns k.
  std::vector<detail::FpMat> class_mat(r, detail::FpMat(r, std::vector<long>(r, 0)));
  for (size_t i = 0; i < r; ++i) {
    std::vector<std::vector<long>> count(r, std::vector<long>(r, 0));
    for (int x : cls.classes[i])
      for (size_t y = 0; y < n; ++y) count[cls.class_of[y]][cls.class_of[g.mul(x, static_cast<int>(y))]]++;
    for (size_t j = 0; j < r; ++j)
      for (size_t k = 0; k < r; ++k) {
        if (count[j][k] % cls.size_of(k) != 0)
          throw check_failure("character table: class constant not divisible");
        class_mat[i][j][k] = (count[j][k] / cls.size_of(k)) % p;
      }
  }

  // Simultaneous eigenspace splitting; blocks are column bases.
  std::vector<detail::FpMat> blocks;
  {
    detail::FpMat full(r, std::vector<long>(r, 0));
    for (size_t i = 0; i < r; ++i) full[i][i] = 1;
    blocks.push_back(std::move(full));
  }
  for (size_t i = 1; i < r; ++i) {
    std::vector<detail::FpMat> next;
    for (auto& block : blocks) {
      size_t d = block[0].size();
      if (d == 1) {
        next.push_back(std::move(block));
        continue;
      }
      detail::FpMat image = detail::fp_mat_mul(class_mat[i], block, p);
      detail::FpMat t = detail::fp_solve_columns(block, image, p);
      size_t found = 0;
      for (long lambda = 0; lambda < p && found < d; ++lambda) {
        detail::FpMat k = detail::fp_eigen_kernel(t, lambda, p);
        if (k.empty()) continue;
        found += k[0].size();
        next.push_back(detail::fp_mat_mul(block, k, p));
      }
      if (found != d) throw check_failure("character table: class matrix not diagonalizable");
    }
    blocks = std::move(next);
  }
  if (blocks.size() != r) throw check_failure("character table: eigenspace count mismatch");

  // Integer square root of the degree from the second orthogonality sum.
  std::vector<int> inv_class(r);
  for (size_t k = 0; k < r; ++k) inv_class[k] = cls.class_of[g.inverse(cls.reps[k])];

  CharacterTable out;
  out.cls = cls;
  for (const auto& block : blocks) {
    std::vector<long> w(r);
    for (size_t k = 0; k < r; ++k) w[k] = block[k][0];
    if (w[0] == 0) throw check_failure("character table: eigenvector vanishes at the identity");
    long scale = detail::fp_inv(w[0], p);
    for (auto& v : w) v = detail::fp_mul(v, scale, p);

    long s = 0;
    for (size_t k = 0; k < r; ++k)
      s = (s + detail::fp_mul(detail::fp_mul(w[k], w[inv_class[k]], p),
                              detail::fp_inv(cls.size_of(k) % p, p), p)) %
          p;
    long dsq = detail::fp_mul(static_cast<long>(n) % p, detail::fp_inv(s, p), p);
    long deg = 0;
    while (deg * deg < dsq) ++deg;
    if (deg * deg != dsq || deg == 0)
      throw check_failure("character table: degree is not a perfect square");

    // chi(g_k) mod p, then the exact lift chi(g) = sum_j m_j zeta_e^j.
    std::vector<long> chi_p(r);
    for (size_t k = 0; k < r; ++k)
      chi_p[k] = detail::fp_mul(detail::fp_mul(deg % p, w[k], p),
                                detail::fp_inv(cls.size_of(k) % p, p), p);
    std::vector<Scalar> row(r);
    const long e_inv = detail::fp_inv(e % p, p);
    for (size_t k = 0; k < r; ++k) {
      std::vector<int> power_class(e);
      int x = g.identity();
      for (long t = 0; t < e; ++t) {
        power_class[t] = cls.class_of[x];
        x = g.mul(x, cls.reps[k]);
      }
      Scalar value(0);
      long total = 0;
      for (long j = 0; j < e; ++j) {
        long m = 0;
        for (long t = 0; t < e; ++t)
          m = (m + detail::fp_mul(chi_p[power_class[t]],
                                  detail::fp_pow(omega, ((-j * t) % (p - 1) + (p - 1)) % (p - 1), p),
                                  p)) %
              p;
        m = detail::fp_mul(m, e_inv, p);
        if (m > deg) throw check_failure("character table: eigenvalue multiplicity out of range");
        total += m;
        if (m > 0) value += Scalar(Rational(m)) * Cyclotomic::zeta(e, j);
      }
      if (total != deg) throw check_failure("character table: multiplicities do not sum to the degree");
      row[k] = value;
    }
    out.degrees.push_back(deg);
    out.chi.push_back(std::move(row));
  }

  // Canonical order and exact verification.
  std::vector<size_t> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (out.degrees[a] != out.degrees[b]) return out.degrees[a] < out.degrees[b];
    return std::lexicographical_compare(out.chi[a].begin(), out.chi[a].end(), out.chi[b].begin(),
                                        out.chi[b].end());
  });
  CharacterTable sorted;
  sorted.cls = std::move(out.cls);
  for (size_t i : order) {
    sorted.degrees.push_back(out.degrees[i]);
    sorted.chi.push_back(std::move(out.chi[i]));
  }

  long degree_square_sum = 0;
  for (long d : sorted.degrees) degree_square_sum += d * d;
  if (degree_square_sum != static_cast<long>(n))
    throw check_failure("character table: degrees do not fill the group order");
  for (size_t a = 0; a < r; ++a)
    for (size_t b = a; b < r; ++b) {
      Scalar sum(0);
      for (size_t k = 0; k < r; ++k)
        sum += Scalar(Rational(sorted.cls.size_of(k))) * sorted.chi[a][k] *
               sorted.chi[b][k].conjugate();
      if (sum != Scalar(Rational(a == b ? static_cast<long>(n) : 0)))
        throw check_failure("character table: orthogonality verification failed");
    }
  return sorted;
}

}  // namespace hopftwist

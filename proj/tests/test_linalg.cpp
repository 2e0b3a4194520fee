#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hopftwist/intmat.hpp"
#include "hopftwist/linalg.hpp"

using namespace hopftwist;

namespace {

Mat random_mat(std::mt19937& rng, size_t r, size_t c, bool with_roots = false) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 2);
  std::uniform_int_distribution<int> zk(0, 3);
  Mat m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) {
      Scalar v{Rational(num(rng), den(rng))};
      if (with_roots && num(rng) > 1) v *= Cyclotomic::zeta(4, zk(rng));
      m.at(i, j) = v;
    }
  return m;
}

Vec random_vec(std::mt19937& rng, size_t n) {
  std::uniform_int_distribution<int> num(-3, 3);
  Vec v(n);
  for (auto& x : v) x = Scalar(Rational(num(rng)));
  return v;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

ZMat random_zmat(std::mt19937& rng, size_t r, size_t c, int lo = -6, int hi = 6) {
  std::uniform_int_distribution<int> d(lo, hi);
  ZMat m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m.at(i, j) = Integer(d(rng));
  return m;
}

Integer det(const ZMat& a) {
  // Fraction-free Gaussian elimination (Bareiss) for exact determinants.
  size_t n = a.rows();
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = a.at(i, j);
  Integer sign(1), prev(1);
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return Integer(0);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace

TEST_CASE("rref produces reduced echelon form") {
  std::mt19937 rng(101);
  for (int rep = 0; rep < 20; ++rep) {
    Mat m = random_mat(rng, 4, 6, true);
    Mat r = m;
    auto pivots = rref(r);
    // Pivot entries are 1 and are alone in their column.
    for (size_t i = 0; i < pivots.size(); ++i) {
      CHECK(r.at(i, pivots[i]) == Scalar(Rational(1)));
      for (size_t k = 0; k < r.rows(); ++k)
        if (k != i) CHECK(r.at(k, pivots[i]).is_zero());
      if (i > 0) CHECK(pivots[i - 1] < pivots[i]);
    }
    // Rows below the pivot count vanish.
    for (size_t i = pivots.size(); i < r.rows(); ++i)
      for (size_t j = 0; j < r.cols(); ++j) CHECK(r.at(i, j).is_zero());
    // Row space is preserved.
    CHECK(same_row_space(m, r));
  }
}

TEST_CASE("solve_linear returns verified solutions with kernel") {
  std::mt19937 rng(103);
  for (int rep = 0; rep < 30; ++rep) {
    Mat a = random_mat(rng, 4, 5, true);
    Vec x0 = random_vec(rng, 5);
    Vec b = a.apply(x0);  // guaranteed consistent
    auto sol = solve_linear(a, b);
    REQUIRE(sol.consistent);
    // Substitution oracle.
    Vec check = a.apply(sol.particular);
    for (size_t i = 0; i < b.size(); ++i) CHECK(check[i] == b[i]);
    // Every kernel column maps to zero and they are linearly independent.
    for (size_t k = 0; k < sol.kernel.cols(); ++k) {
      Vec col(5);
      for (size_t j = 0; j < 5; ++j) col[j] = sol.kernel.at(j, k);
      CHECK(is_zero_vec(a.apply(col)));
    }
    CHECK(rank(sol.kernel) == sol.kernel.cols());
    CHECK(rank(a) + sol.kernel.cols() == 5);
  }
}

TEST_CASE("solve_linear detects inconsistency") {
  // x + y = 1 and x + y = 2 cannot both hold.
  Mat a(2, 2);
  a.at(0, 0) = a.at(0, 1) = a.at(1, 0) = a.at(1, 1) = Scalar(Rational(1));
  Vec b{Scalar(Rational(1)), Scalar(Rational(2))};
  CHECK(!solve_linear(a, b).consistent);
}

TEST_CASE("matrix inverse and kron behave") {
  std::mt19937 rng(107);
  for (int rep = 0; rep < 10; ++rep) {
    Mat a = random_mat(rng, 3, 3, true);
    if (rank(a) < 3) continue;
    Mat ai = inverse(a);
    CHECK(a * ai == Mat::identity(3));
    CHECK(ai * a == Mat::identity(3));
  }
  Mat s(1, 2), t(2, 1);
  s.at(0, 0) = Scalar(Rational(2));
  s.at(0, 1) = Scalar(Rational(3));
  t.at(0, 0) = Scalar(Rational(5));
  t.at(1, 0) = Scalar(Rational(7));
  Mat k = Mat::kron(s, t);
  REQUIRE(k.rows() == 2);
  REQUIRE(k.cols() == 2);
  CHECK(k.at(0, 0) == Scalar(Rational(10)));
  CHECK(k.at(1, 1) == Scalar(Rational(21)));
  // kron is multiplicative: (A (x) B)(C (x) D) = AC (x) BD.
  std::mt19937 rng2(109);
  Mat a = random_mat(rng2, 2, 2), b = random_mat(rng2, 2, 2), c = random_mat(rng2, 2, 2),
      d = random_mat(rng2, 2, 2);
  CHECK(Mat::kron(a, b) * Mat::kron(c, d) == Mat::kron(a * c, b * d));
}

TEST_CASE("row space membership") {
  std::mt19937 rng(113);
  Mat a = random_mat(rng, 3, 5);
  Mat basis = row_space(a);
  // Random combinations of rows lie in the row space.
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int rep = 0; rep < 10; ++rep) {
    Vec v(5, Scalar(Rational(0)));
    for (size_t i = 0; i < 3; ++i) {
      Scalar c{Rational(coeff(rng))};
      for (size_t j = 0; j < 5; ++j) v[j] += c * a.at(i, j);
    }
    CHECK(in_row_space(basis, v));
  }
}

TEST_CASE("smith normal form: transforms are unimodular and diagonal divides") {
  std::mt19937 rng(127);
  for (int rep = 0; rep < 40; ++rep) {
    std::uniform_int_distribution<size_t> dim(1, 5);
    size_t r = dim(rng), c = dim(rng);
    ZMat a = random_zmat(rng, r, c);
    SmithForm s = smith_normal_form(a);
    // U * A * V == D.
    auto matmul = [](const ZMat& x, const ZMat& y) {
      ZMat z(x.rows(), y.cols());
      for (size_t i = 0; i < x.rows(); ++i)
        for (size_t k = 0; k < x.cols(); ++k)
          for (size_t j = 0; j < y.cols(); ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
      return z;
    };
    ZMat uav = matmul(matmul(s.u, a), s.v);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) {
        if (i == j)
          CHECK(uav.at(i, j) == s.diag[i]);
        else
          CHECK(uav.at(i, j) == 0);
      }
    CHECK(abs(det(s.u)) == 1);
    CHECK(abs(det(s.v)) == 1);
    // Nonneg diagonal with divisibility chain, zeros trailing.
    for (size_t i = 0; i < s.diag.size(); ++i) {
      CHECK(s.diag[i] >= 0);
      if (i + 1 < s.diag.size()) {
        if (s.diag[i] == 0) CHECK(s.diag[i + 1] == 0);
        if (s.diag[i] != 0 && s.diag[i + 1] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
      }
    }
  }
}

TEST_CASE("smith normal form on known matrices") {
  // diag(2,6) has invariant factors 2, 6; the off-diagonal variant
  // [[2,4],[4,2]] has factors 2, 6 as well (det = -12, gcd = 2).
  ZMat a(2, 2);
  a.at(0, 0) = 2;
  a.at(1, 1) = 6;
  auto s = smith_normal_form(a);
  CHECK(s.diag == std::vector<Integer>{Integer(2), Integer(6)});
  ZMat b(2, 2);
  b.at(0, 0) = 2;
  b.at(0, 1) = 4;
  b.at(1, 0) = 4;
  b.at(1, 1) = 2;
  s = smith_normal_form(b);
  CHECK(s.diag == std::vector<Integer>{Integer(2), Integer(6)});
}

TEST_CASE("smith normal form repairs broken divisibility chains") {
  // Each of these diagonalizes to a non-chain (e.g. (2,4,78) or (4,6)) and
  // forces the gcd/lcm merge step; the naive elimination alone cannot
  // produce the invariant factors here.
  ZMat a(3, 3);
  a.at(0, 0) = 2;  a.at(0, 1) = 4; a.at(0, 2) = 4;
  a.at(1, 0) = -6; a.at(1, 1) = 6; a.at(1, 2) = 12;
  a.at(2, 0) = 10; a.at(2, 1) = 4; a.at(2, 2) = 16;
  CHECK(smith_normal_form(a).diag ==
        std::vector<Integer>{Integer(2), Integer(2), Integer(156)});

  ZMat d46(2, 2);
  d46.at(0, 0) = 4;
  d46.at(1, 1) = 6;
  CHECK(smith_normal_form(d46).diag == std::vector<Integer>{Integer(2), Integer(12)});

  ZMat d64(2, 2);
  d64.at(0, 0) = 6;
  d64.at(1, 1) = 4;
  CHECK(smith_normal_form(d64).diag == std::vector<Integer>{Integer(2), Integer(12)});

  ZMat d23(2, 2);
  d23.at(0, 0) = 2;
  d23.at(1, 1) = 3;
  CHECK(smith_normal_form(d23).diag == std::vector<Integer>{Integer(1), Integer(6)});

  ZMat d3(3, 3);
  d3.at(0, 0) = 6;
  d3.at(1, 1) = 10;
  d3.at(2, 2) = 15;
  // gcds of 1x1 / 2x2 / 3x3 minors: 1, 30, 900.
  CHECK(smith_normal_form(d3).diag ==
        std::vector<Integer>{Integer(1), Integer(30), Integer(30)});

  // Scaled random matrices share a factor, so their invariant factors are
  // nontrivial and chain repair is exercised; validate the full contract.
  std::mt19937 rng(137);
  auto matmul = [](const ZMat& x, const ZMat& y) {
    ZMat z(x.rows(), y.cols());
    for (size_t i = 0; i < x.rows(); ++i)
      for (size_t k = 0; k < x.cols(); ++k)
        for (size_t j = 0; j < y.cols(); ++j) z.at(i, j) += x.at(i, k) * y.at(k, j);
    return z;
  };
  for (int rep = 0; rep < 30; ++rep) {
    std::uniform_int_distribution<size_t> dim(2, 4);
    std::uniform_int_distribution<long> scale(1, 6);
    size_t r = dim(rng), c = dim(rng);
    ZMat m = random_zmat(rng, r, c);
    for (size_t i = 0; i < r; ++i) {
      Integer s(scale(rng));
      for (size_t j = 0; j < c; ++j) m.at(i, j) *= s * Integer(scale(rng));
    }
    SmithForm s = smith_normal_form(m);
    ZMat uav = matmul(matmul(s.u, m), s.v);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j)
        CHECK(uav.at(i, j) == (i == j && i < s.diag.size() ? s.diag[i] : Integer(0)));
    CHECK(abs(det(s.u)) == 1);
    CHECK(abs(det(s.v)) == 1);
    for (size_t i = 0; i + 1 < s.diag.size(); ++i) {
      CHECK(s.diag[i] >= 0);
      if (s.diag[i] == 0) CHECK(s.diag[i + 1] == 0);
      if (s.diag[i] != 0 && s.diag[i + 1] != 0) CHECK(s.diag[i + 1] % s.diag[i] == 0);
    }
  }
}

TEST_CASE("solve_mod finds witnesses exactly when solvable") {
  std::mt19937 rng(131);
  for (Integer M : {Integer(2), Integer(6), Integer(12), Integer(8)}) {
    for (int rep = 0; rep < 25; ++rep) {
      std::uniform_int_distribution<size_t> dim(1, 4);
      size_t r = dim(rng), c = dim(rng);
      ZMat a = random_zmat(rng, r, c, -4, 4);
      // Build a solvable instance from a random planted solution.
      std::uniform_int_distribution<long> xv(0, 20);
      std::vector<Integer> x(c);
      for (auto& v : x) v = Integer(xv(rng));
      std::vector<Integer> b(r, Integer(0));
      for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < c; ++j) b[i] += a.at(i, j) * x[j];
        mpz_mod(b[i].get_mpz_t(), b[i].get_mpz_t(), M.get_mpz_t());
      }
      auto sol = solve_mod(a, b, M);
      REQUIRE(sol.has_value());
      for (size_t i = 0; i < r; ++i) {
        Integer acc(0);
        for (size_t j = 0; j < c; ++j) acc += a.at(i, j) * (*sol)[j];
        Integer diff = acc - b[i];
        CHECK(diff % M == 0);
      }
    }
  }
}

TEST_CASE("solve_mod rejects unsolvable systems") {
  // 2x = 1 mod 4 has no solution.
  ZMat a(1, 1);
  a.at(0, 0) = 2;
  CHECK(!solve_mod(a, {Integer(1)}, Integer(4)).has_value());
  // x + x = 1 mod 2 unsolvable.
  ZMat b(1, 2);
  b.at(0, 0) = 1;
  b.at(0, 1) = 1;
  auto sol = solve_mod(b, {Integer(1)}, Integer(2));
  REQUIRE(sol.has_value());  // x=1, y=0 works here; check a truly unsolvable one
  // 0x = 1 mod 3.
  ZMat z(1, 1);
  CHECK(!solve_mod(z, {Integer(1)}, Integer(3)).has_value());
  // Incompatible pair: x = 0 and x = 1 mod 5.
  ZMat p(2, 1);
  p.at(0, 0) = 1;
  p.at(1, 0) = 1;
  CHECK(!solve_mod(p, {Integer(0), Integer(1)}, Integer(5)).has_value());
}

TEST_CASE("kernel_mod enumerates solution sets exactly") {
  // 2x = 0 mod 4: solutions {0, 2}.
  ZMat a(1, 1);
  a.at(0, 0) = 2;
  ModKernel k = kernel_mod(a, Integer(4));
  CHECK(k.count() == 2);
  auto sols = k.enumerate(Integer(4));
  REQUIRE(sols.size() == 2);
  std::sort(sols.begin(), sols.end());
  CHECK(sols[0] == std::vector<Integer>{Integer(0)});
  CHECK(sols[1] == std::vector<Integer>{Integer(2)});

  // Zero map: everything is a solution.
  ZMat z(1, 1);
  CHECK(kernel_mod(z, Integer(6)).count() == 6);

  // Modulus 1: only the zero solution, reported with the right width.
  ZMat w(2, 3);
  ModKernel k1 = kernel_mod(w, Integer(1));
  CHECK(k1.count() == 1);
  auto one = k1.enumerate(Integer(1));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == std::vector<Integer>(3, Integer(0)));

  // Random small systems against brute force over all tuples.
  std::mt19937 rng(139);
  for (Integer M : {Integer(2), Integer(4), Integer(6)}) {
    for (int rep = 0; rep < 20; ++rep) {
      std::uniform_int_distribution<size_t> dim(1, 3);
      size_t r = dim(rng), c = dim(rng);
      ZMat m = random_zmat(rng, r, c, -5, 5);
      ModKernel kk = kernel_mod(m, M);
      auto enumerated = kernel_mod(m, M).enumerate(M);
      std::sort(enumerated.begin(), enumerated.end());
      CHECK(std::adjacent_find(enumerated.begin(), enumerated.end()) == enumerated.end());
      // Every enumerated vector solves the system.
      for (const auto& x : enumerated)
        for (size_t i = 0; i < r; ++i) {
          Integer acc(0);
          for (size_t j = 0; j < c; ++j) acc += m.at(i, j) * x[j];
          CHECK(acc % M == 0);
        }
      // Brute-force count matches.
      long mm = M.get_si();
      long total = 1;
      for (size_t j = 0; j < c; ++j) total *= mm;
      long brute = 0;
      for (long code = 0; code < total; ++code) {
        long rem = code;
        std::vector<Integer> x(c);
        for (size_t j = 0; j < c; ++j) {
          x[j] = Integer(rem % mm);
          rem /= mm;
        }
        bool ok = true;
        for (size_t i = 0; i < r && ok; ++i) {
          Integer acc(0);
          for (size_t j = 0; j < c; ++j) acc += m.at(i, j) * x[j];
          ok = acc % M == 0;
        }
        if (ok) ++brute;
      }
      CHECK(Integer(brute) == kk.count());
    }
  }
}

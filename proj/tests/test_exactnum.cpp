#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "hopftwist/cyclotomic.hpp"

using namespace hopftwist;

namespace {

// Independent numeric model: evaluate a cyclotomic element at
// zeta_N = exp(2 pi i / N) in double precision.
std::complex<double> numeric(const Cyclotomic& a) {
  std::complex<double> z = std::polar(1.0, 2.0 * M_PI / static_cast<double>(a.conductor()));
  std::complex<double> acc{0.0, 0.0};
  std::complex<double> p{1.0, 0.0};
  for (const auto& c : a.coeffs()) {
    acc += (c.num().get_d() / c.den().get_d()) * p;
    p *= z;
  }
  return acc;
}

// Independent exact model: an element of Q[x]/(x^N - 1) as a coefficient
// vector on exponents 0..N-1, with multiplication by cyclic convolution.
// Mapping exponent k to zeta_N^k is a ring homomorphism onto Q(zeta_N),
// so arithmetic done here must agree with Cyclotomic arithmetic after the
// mapping.
using ExpVec = std::vector<Rational>;

ExpVec conv(const ExpVec& a, const ExpVec& b) {
  size_t n = a.size();
  ExpVec r(n, Rational(0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r[(i + j) % n] += a[i] * b[j];
  return r;
}

Cyclotomic embed(const ExpVec& a, unsigned long n) {
  Cyclotomic acc;
  for (size_t k = 0; k < a.size(); ++k)
    acc += Cyclotomic(a[k]) * Cyclotomic::zeta(n, static_cast<long>(k));
  return acc;
}

ExpVec random_expvec(std::mt19937& rng, unsigned long n) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  ExpVec v(n);
  for (auto& x : v) x = Rational(num(rng), den(rng));
  return v;
}

}  // namespace

TEST_CASE("rational canonical form and parsing") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(2, -4).den() == Integer(2));
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("0/5").is_zero());
  CHECK_THROWS_AS(Rational(1, 0), invalid_input);
  CHECK_THROWS_AS(Rational(1) / Rational(0), invalid_input);
}

TEST_CASE("rational field axioms on random samples") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 12);
  for (int i = 0; i < 200; ++i) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!a.is_zero()) CHECK(a * (Rational(1) / a) == Rational(1));
  }
}

TEST_CASE("rational mod1 lands in [0,1) and differs by an integer") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 9);
  for (int i = 0; i < 200; ++i) {
    Rational a(num(rng), den(rng));
    Rational m = a.mod1();
    CHECK(m >= Rational(0));
    CHECK(m < Rational(1));
    CHECK((a - m).is_integer());
  }
  CHECK(Rational(-1, 2).mod1() == Rational(1, 2));
  CHECK(Rational(7, 3).mod1() == Rational(1, 3));
  CHECK(Rational(-3).mod1().is_zero());
}

TEST_CASE("cyclotomic polynomials multiply to x^N - 1") {
  for (unsigned long n = 1; n <= 36; ++n) {
    poly::Poly prod{Rational(1)};
    for (unsigned long d = 1; d <= n; ++d)
      if (n % d == 0) prod = poly::mul(prod, cyclotomic_polynomial(d));
    poly::Poly expect(n + 1, Rational(0));
    expect[0] = Rational(-1);
    expect[n] = Rational(1);
    CHECK(prod == expect);
    CHECK(poly::degree(cyclotomic_polynomial(n)) == static_cast<int>(euler_phi(n)));
    for (const auto& c : cyclotomic_polynomial(n)) CHECK(c.is_integer());
  }
}

TEST_CASE("euler phi agrees with direct gcd count") {
  for (unsigned long n = 1; n <= 100; ++n) {
    unsigned long count = 0;
    for (unsigned long k = 1; k <= n; ++k)
      if (std::gcd(k, n) == 1) ++count;
    CHECK(euler_phi(n) == count);
  }
}

TEST_CASE("roots of unity satisfy their defining relations") {
  for (unsigned long n : {1ul, 2ul, 3ul, 4ul, 5ul, 6ul, 8ul, 9ul, 12ul, 15ul}) {
    Cyclotomic z = Cyclotomic::zeta(n);
    Cyclotomic p(Rational(1));
    for (unsigned long k = 0; k < n; ++k) p *= z;
    CHECK(p == Cyclotomic(Rational(1)));
    if (n > 1) {
      Cyclotomic sum;
      for (unsigned long k = 0; k < n; ++k) sum += Cyclotomic::zeta(n, static_cast<long>(k));
      CHECK(sum.is_zero());
    }
  }
}

TEST_CASE("arithmetic matches the cyclic convolution model") {
  std::mt19937 rng(23);
  for (unsigned long n : {2ul, 3ul, 4ul, 5ul, 6ul, 8ul, 9ul, 12ul}) {
    for (int rep = 0; rep < 10; ++rep) {
      ExpVec a = random_expvec(rng, n), b = random_expvec(rng, n);
      Cyclotomic ca = embed(a, n), cb = embed(b, n);
      CHECK(ca * cb == embed(conv(a, b), n));
      ExpVec s(n);
      for (size_t i = 0; i < n; ++i) s[i] = a[i] + b[i];
      CHECK(ca + cb == embed(s, n));
    }
  }
}

TEST_CASE("cross-conductor products promote correctly") {
  // zeta_3 * zeta_4 = zeta_12^{4+3}.
  CHECK(Cyclotomic::zeta(3) * Cyclotomic::zeta(4) == Cyclotomic::zeta(12, 7));
  // zeta_2 = -1: equal to the rational -1 across conductors (conductors are
  // never shrunk except for zero, so it keeps conductor 2).
  CHECK(Cyclotomic::zeta(2) == Cyclotomic(Rational(-1)));
  CHECK(Cyclotomic::zeta(2).is_rational());
  CHECK(Cyclotomic::zeta(2).rational_part() == Rational(-1));
  std::mt19937 rng(31);
  for (auto [p, q] : std::vector<std::pair<unsigned long, unsigned long>>{
           {3, 4}, {4, 6}, {5, 6}, {8, 12}, {9, 6}}) {
    ExpVec a = random_expvec(rng, p), b = random_expvec(rng, q);
    unsigned long m = std::lcm(p, q);
    // Re-express both in exponents of zeta_m and convolve there.
    ExpVec am(m, Rational(0)), bm(m, Rational(0));
    for (size_t i = 0; i < p; ++i) am[i * (m / p)] += a[i];
    for (size_t i = 0; i < q; ++i) bm[i * (m / q)] += b[i];
    CHECK(embed(a, p) * embed(b, q) == embed(conv(am, bm), m));
  }
}

TEST_CASE("numeric evaluation agrees with exact arithmetic") {
  std::mt19937 rng(41);
  for (unsigned long n : {5ul, 7ul, 8ul, 12ul}) {
    for (int rep = 0; rep < 6; ++rep) {
      ExpVec a = random_expvec(rng, n), b = random_expvec(rng, n);
      Cyclotomic ca = embed(a, n), cb = embed(b, n);
      auto prod = numeric(ca * cb);
      auto expect = numeric(ca) * numeric(cb);
      CHECK(std::abs(prod - expect) < 1e-9);
    }
  }
}

TEST_CASE("inverse is a two-sided inverse") {
  std::mt19937 rng(43);
  for (unsigned long n : {1ul, 3ul, 4ul, 5ul, 8ul, 12ul}) {
    for (int rep = 0; rep < 8; ++rep) {
      Cyclotomic a = embed(random_expvec(rng, n), n);
      if (a.is_zero()) continue;
      CHECK(a * a.inverse() == Cyclotomic(Rational(1)));
      CHECK(a.inverse() * a == Cyclotomic(Rational(1)));
    }
  }
  CHECK_THROWS_AS(Cyclotomic().inverse(), invalid_input);
}

TEST_CASE("conjugation negates exponents and commutes with products") {
  for (unsigned long n : {3ul, 4ul, 5ul, 8ul, 12ul}) {
    for (long k = 0; k < static_cast<long>(n); ++k) {
      CHECK(Cyclotomic::zeta(n, k).conjugate() == Cyclotomic::zeta(n, -k));
      // zeta^k * conj(zeta^k) = 1.
      CHECK(Cyclotomic::zeta(n, k) * Cyclotomic::zeta(n, k).conjugate() ==
            Cyclotomic(Rational(1)));
    }
  }
  std::mt19937 rng(47);
  for (int rep = 0; rep < 10; ++rep) {
    Cyclotomic a = embed(random_expvec(rng, 12), 12);
    Cyclotomic b = embed(random_expvec(rng, 12), 12);
    CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
    CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
    CHECK(a.conjugate().conjugate() == a);
    auto na = numeric(a), nca = numeric(a.conjugate());
    CHECK(std::abs(std::conj(na) - nca) < 1e-9);
  }
}

TEST_CASE("galois maps are ring homomorphisms") {
  std::mt19937 rng(53);
  for (long k : {1L, 5L, 7L, 11L}) {
    for (int rep = 0; rep < 5; ++rep) {
      Cyclotomic a = embed(random_expvec(rng, 12), 12);
      Cyclotomic b = embed(random_expvec(rng, 12), 12);
      CHECK((a * b).galois(k) == a.galois(k) * b.galois(k));
      CHECK((a + b).galois(k) == a.galois(k) + b.galois(k));
    }
  }
  CHECK_THROWS_AS(Cyclotomic::zeta(12).galois(2), invalid_input);
}

TEST_CASE("root_of_unity is additive in the exponent") {
  std::mt19937 rng(59);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 12);
  for (int rep = 0; rep < 40; ++rep) {
    Rational s(num(rng), den(rng)), t(num(rng), den(rng));
    CHECK(Cyclotomic::root_of_unity(s) * Cyclotomic::root_of_unity(t) ==
          Cyclotomic::root_of_unity(s + t));
  }
  CHECK(Cyclotomic::root_of_unity(Rational(1, 2)) == Cyclotomic(Rational(-1)));
  CHECK(Cyclotomic::root_of_unity(Rational(0)) == Cyclotomic(Rational(1)));
  CHECK(Cyclotomic::root_of_unity(Rational(1, 4)) == Cyclotomic::zeta(4));
}

TEST_CASE("rational detection and zero normalization") {
  Cyclotomic z = Cyclotomic::zeta(5);
  Cyclotomic sum;
  for (long k = 0; k < 5; ++k) sum += Cyclotomic::zeta(5, k);
  CHECK(sum.is_zero());
  CHECK(sum.conductor() == 1);
  // zeta_5 + zeta_5^4 + zeta_5^2 + zeta_5^3 = -1: rational despite conductor 5.
  Cyclotomic s2 = Cyclotomic::zeta(5, 1) + Cyclotomic::zeta(5, 2) + Cyclotomic::zeta(5, 3) +
                  Cyclotomic::zeta(5, 4);
  CHECK(s2.is_rational());
  CHECK(s2.rational_part() == Rational(-1));
  CHECK(z.is_rational() == false);
  CHECK_THROWS_AS(z.rational_part(), invalid_input);
}

TEST_CASE("conductor bound is enforced") {
  CHECK_THROWS_AS(Cyclotomic::zeta(3601), resource_limit);
  // lcm blowup beyond the bound is also caught.
  CHECK_THROWS_AS(Cyclotomic::zeta(1024) * Cyclotomic::zeta(57), resource_limit);
}

TEST_CASE("deterministic order is a strict total order on samples") {
  std::mt19937 rng(61);
  std::vector<Cyclotomic> xs;
  for (int i = 0; i < 12; ++i) xs.push_back(embed(random_expvec(rng, 8), 8));
  for (const auto& a : xs)
    for (const auto& b : xs) {
      int rel = (a < b ? 1 : 0) + (b < a ? 1 : 0) + (a == b ? 1 : 0);
      CHECK(rel == 1);
    }
}

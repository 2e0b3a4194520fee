// Fusion rings, universal gradings (chain groups), twisted fusion rings and
// graded associators, plus the exact character-table machinery they rest on.
#include <catch2/catch_amalgamated.hpp>

#include "hopftwist/cohomology.hpp"
#include "hopftwist/fusion.hpp"
#include "hopftwist/named_groups.hpp"

using namespace hopftwist;

namespace {

Scalar cyc(unsigned long n, long k) { return Cyclotomic::zeta(n, k); }

Quat minus_one() { return Quat{Rational(-1), Rational(0), Rational(0), Rational(0)}; }

// Index of the conjugacy class a given group element belongs to.
int class_index(const ConjugacyClasses& cls, int element) { return cls.class_of[element]; }

// The scalar by which a central group element acts in an irreducible
// character row: chi(z) / chi(e).
Scalar central_scalar(const CharacterTable& ct, size_t irrep, int central) {
  return ct.chi[irrep][class_index(ct.cls, central)] / Scalar(Rational(ct.degrees[irrep]));
}

}  // namespace

TEST_CASE("group ring of a cyclic group is graded by the group itself") {
  FiniteGroup z6 = FiniteAbelianGroup({6}).as_finite_group();
  FusionRing r = pointed_fusion_ring(z6);
  REQUIRE(r.rank() == 6);
  REQUIRE_NOTHROW(validate_fusion_ring(r));
  REQUIRE(fusion_commutative(r));

  ChainGroupResult cg = chain_group(r);
  REQUIRE(cg.group.factors() == std::vector<long>{6});
  REQUIRE_FALSE(cg.abelianized);
  // The degree map is an isomorphism onto the chain group.
  std::vector<bool> seen(6, false);
  for (size_t d : cg.degree) {
    REQUIRE_FALSE(seen[d]);
    seen[d] = true;
  }
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      REQUIRE(cg.degree[z6.mul(a, b)] ==
              static_cast<size_t>(cg.group.add(static_cast<int>(cg.degree[a]),
                                               static_cast<int>(cg.degree[b]))));

  FusionRing one = pointed_fusion_ring(FiniteAbelianGroup::trivial().as_finite_group());
  ChainGroupResult cg1 = chain_group(one);
  REQUIRE(cg1.group.order() == 1);
  REQUIRE(cg1.degree == std::vector<size_t>{0});
}

TEST_CASE("group ring of a nonabelian group flags the abelianized chain group") {
  FiniteGroup s3 = symmetric_group_s3();
  FusionRing r = pointed_fusion_ring(s3);
  REQUIRE_FALSE(fusion_commutative(r));

  ChainGroupResult cg = chain_group(r);
  REQUIRE(cg.abelianized);
  // The abelianization of S3 is the sign group: transpositions in degree 1,
  // three-cycles and the identity in degree 0.
  REQUIRE(cg.group.factors() == std::vector<long>{2});
  for (size_t x = 0; x < 6; ++x)
    REQUIRE(cg.degree[x] == (s3.element_order(static_cast<int>(x)) == 2 ? 1u : 0u));
}

TEST_CASE("exact character table of the symmetric group on three letters") {
  FiniteGroup s3 = symmetric_group_s3();
  CharacterTable ct = character_table(s3);
  REQUIRE(ct.irrep_count() == 3);
  REQUIRE(ct.cls.count() == 3);

  // Identify classes by the order of a representative: sizes 1, 3, 2.
  int cls_e = -1, cls_t = -1, cls_c = -1;
  for (size_t k = 0; k < 3; ++k) {
    int o = s3.element_order(ct.cls.reps[k]);
    if (o == 1) cls_e = static_cast<int>(k);
    if (o == 2) cls_t = static_cast<int>(k);
    if (o == 3) cls_c = static_cast<int>(k);
  }
  REQUIRE(ct.cls.size_of(cls_e) == 1);
  REQUIRE(ct.cls.size_of(cls_t) == 3);
  REQUIRE(ct.cls.size_of(cls_c) == 2);

  // Frozen table: trivial, sign, and the two-dimensional standard character.
  REQUIRE(ct.degrees == std::vector<long>{1, 1, 2});
  size_t triv = ct.chi[0][cls_t] == Scalar(1) ? 0 : 1, sgn = 1 - triv;
  for (int k : {cls_e, cls_t, cls_c}) REQUIRE(ct.chi[triv][k] == Scalar(1));
  REQUIRE(ct.chi[sgn][cls_e] == Scalar(1));
  REQUIRE(ct.chi[sgn][cls_t] == Scalar(-1));
  REQUIRE(ct.chi[sgn][cls_c] == Scalar(1));
  REQUIRE(ct.chi[2][cls_e] == Scalar(2));
  REQUIRE(ct.chi[2][cls_t] == Scalar(0));
  REQUIRE(ct.chi[2][cls_c] == Scalar(-1));
}

TEST_CASE("representation ring of the symmetric group on three letters") {
  CharacterTable ct = character_table(symmetric_group_s3());
  FusionRing r = rep_fusion_ring(ct);
  REQUIRE_NOTHROW(validate_fusion_ring(r));
  REQUIRE(fusion_commutative(r));
  REQUIRE(r.unit < 2);  // one of the two one-dimensional classes
  REQUIRE(r.dual == std::vector<size_t>{0, 1, 2});

  // Frozen fusion rules: sgn x sgn = 1, sgn x V = V, V x V = 1 + sgn + V.
  size_t sgn = 1 - r.unit;
  REQUIRE(r.tensor[sgn][sgn] == std::map<size_t, long>{{r.unit, 1}});
  REQUIRE(r.tensor[sgn][2] == std::map<size_t, long>{{2, 1}});
  REQUIRE(r.tensor[2][2] == std::map<size_t, long>{{r.unit, 1}, {sgn, 1}, {2, 1}});

  // The relation set contains x_V + x_V - x_V (V appears in V x V) and
  // x_V + x_V - x_sgn, which force x_V = 0 and then x_sgn = 0: the chain
  // group is trivial, matching the dual of the (trivial) center.
  REQUIRE(r.coeff(2, 2, 2) == 1);
  REQUIRE(r.coeff(2, 2, 1) == 1);
  ChainGroupResult cg = chain_group(r);
  REQUIRE(cg.group.order() == 1);
  REQUIRE_FALSE(cg.abelianized);
}

TEST_CASE("exact character tables of the quaternion groups") {
  QuaternionGroup q8 = quaternion_group_q8();
  CharacterTable ct = character_table(q8.group);
  REQUIRE(ct.irrep_count() == 5);
  REQUIRE(ct.degrees == std::vector<long>{1, 1, 1, 1, 2});

  std::vector<long> sizes;
  for (size_t k = 0; k < ct.cls.count(); ++k) sizes.push_back(ct.cls.size_of(k));
  std::sort(sizes.begin(), sizes.end());
  REQUIRE(sizes == std::vector<long>{1, 1, 2, 2, 2});

  // The two-dimensional character: 2 at the identity, -2 at the central
  // involution, 0 on the three classes of order-4 elements.
  int m1 = q8.index_of(minus_one());
  for (size_t k = 0; k < 5; ++k) {
    Scalar expect(0);
    if (static_cast<int>(k) == class_index(ct.cls, q8.group.identity())) expect = Scalar(2);
    if (static_cast<int>(k) == class_index(ct.cls, m1)) expect = Scalar(-2);
    REQUIRE(ct.chi[4][k] == expect);
  }

  // Representation ring: chain group Z/2, the two-dimensional class in the
  // nontrivial degree (the dual of the center).
  FusionRing r = rep_fusion_ring(ct);
  ChainGroupResult cg = chain_group(r);
  REQUIRE(cg.group.factors() == std::vector<long>{2});
  REQUIRE(cg.degree == std::vector<size_t>{0, 0, 0, 0, 1});
  // V x V is the sum of all four one-dimensionals.
  REQUIRE(r.tensor[4][4] == std::map<size_t, long>{{0, 1}, {1, 1}, {2, 1}, {3, 1}});
}

TEST_CASE("exact character table of the binary tetrahedral group") {
  QuaternionGroup tt = binary_tetrahedral_group();
  CharacterTable ct = character_table(tt.group);
  REQUIRE(ct.irrep_count() == 7);
  REQUIRE(ct.degrees == std::vector<long>{1, 1, 1, 2, 2, 2, 3});

  std::vector<long> sizes;
  for (size_t k = 0; k < 7; ++k) sizes.push_back(ct.cls.size_of(k));
  std::sort(sizes.begin(), sizes.end());
  REQUIRE(sizes == std::vector<long>{1, 1, 4, 4, 4, 4, 6});

  int m1 = tt.index_of(minus_one());
  // The central involution acts by +1 in the one- and three-dimensional
  // rows and by -1 in the two-dimensional rows.
  for (size_t i = 0; i < 7; ++i)
    REQUIRE(central_scalar(ct, i, m1) == (ct.degrees[i] == 2 ? Scalar(-1) : Scalar(1)));

  // On a class of order-3 elements the one-dimensional characters take the
  // three cube roots of unity.
  int cls3 = -1;
  for (size_t k = 0; k < 7; ++k)
    if (tt.group.element_order(ct.cls.reps[k]) == 3) cls3 = static_cast<int>(k);
  REQUIRE(cls3 >= 0);
  // Multiset equality via exact comparison (the canonical sort order depends
  // on the stored conductor, so sorting both sides is not reliable here).
  std::vector<Scalar> ones = {ct.chi[0][cls3], ct.chi[1][cls3], ct.chi[2][cls3]};
  for (const Scalar& want : {Scalar(1), cyc(3, 1), cyc(3, 2)}) {
    auto it = std::find(ones.begin(), ones.end(), want);
    REQUIRE(it != ones.end());
    ones.erase(it);
  }
  REQUIRE(ones.empty());
}

TEST_CASE("representation ring of the binary tetrahedral group") {
  QuaternionGroup tt = binary_tetrahedral_group();
  CharacterTable ct = character_table(tt.group);
  FusionRing r = rep_fusion_ring(ct);
  REQUIRE_NOTHROW(validate_fusion_ring(r));
  REQUIRE(fusion_commutative(r));

  // Chain group Z/2 = dual of the center {1, -1}; the degree of an
  // irreducible class is the parity of its central scalar.
  ChainGroupResult cg = chain_group(r);
  REQUIRE(cg.group.factors() == std::vector<long>{2});
  int m1 = tt.index_of(minus_one());
  for (size_t i = 0; i < 7; ++i)
    REQUIRE(cg.degree[i] == (central_scalar(ct, i, m1) == Scalar(-1) ? 1u : 0u));
}

TEST_CASE("truncated spin fusion rules") {
  FusionRing r = truncated_spin_fusion_ring(6);
  REQUIRE(r.rank() == 7);
  REQUIRE_NOTHROW(validate_fusion_ring(r));
  REQUIRE(fusion_commutative(r));

  // Hand values of the composition rule (labels are twice the spin).
  REQUIRE(r.tensor[1][1] == std::map<size_t, long>{{0, 1}, {2, 1}});
  REQUIRE(r.coeff(2, 4, 2) == 1);
  REQUIRE(r.coeff(3, 3, 6) == 1);
  REQUIRE(r.coeff(3, 3, 5) == 0);
  // A pair over the cutoff keeps only its stored components.
  REQUIRE(r.tensor[5][3] == std::map<size_t, long>{{2, 1}, {4, 1}, {6, 1}});

  // Universal grading: the parity of the label, a group of order two.
  ChainGroupResult cg = chain_group(r);
  REQUIRE(cg.group.factors() == std::vector<long>{2});
  for (size_t a = 0; a < 7; ++a) REQUIRE(cg.degree[a] == a % 2);

  // Truncated rings cannot be twisted.
  FiniteGroup z2 = FiniteAbelianGroup({2}).as_finite_group();
  std::vector<size_t> grade = {0, 1, 0, 1, 0, 1, 0};
  std::vector<std::vector<size_t>> act(2, std::vector<size_t>{0, 1, 2, 3, 4, 5, 6});
  REQUIRE_THROWS_AS(twisted_fusion(r, z2, grade, act), invalid_input);
}

TEST_CASE("twisting by the trivial action returns the same ring") {
  CharacterTable ct = character_table(binary_tetrahedral_group().group);
  FusionRing r = rep_fusion_ring(ct);
  FiniteGroup one = FiniteAbelianGroup::trivial().as_finite_group();
  std::vector<size_t> grade(r.rank(), 0);
  std::vector<std::vector<size_t>> act(1);
  for (size_t i = 0; i < r.rank(); ++i) act[0].push_back(i);
  FusionRing tw = twisted_fusion(r, one, grade, act);
  REQUIRE(tw.tensor == r.tensor);
  REQUIRE(tw.dual == r.dual);
  REQUIRE(tw.unit == r.unit);
}

TEST_CASE("inversion twist of the cyclic group ring of order four") {
  FiniteGroup z4 = FiniteAbelianGroup({4}).as_finite_group();
  FiniteGroup z2 = FiniteAbelianGroup({2}).as_finite_group();
  FusionRing r = pointed_fusion_ring(z4);
  std::vector<size_t> grade = {0, 1, 0, 1};
  std::vector<std::vector<size_t>> act = {{0, 1, 2, 3}, {0, 3, 2, 1}};
  FusionRing tw = twisted_fusion(r, z2, grade, act);

  // Oracle: the coinvariant subring of the full crossed ring.  The crossed
  // ring has basis (x, g) for x in Z4, g in Z2, with the single-component
  // product (x,g)(y,h) = (x + (-1)^g y, g+h); the coinvariants are spanned
  // by v_x = (x, x mod 2), and their products are read off directly.
  auto crossed = [](int x, int g, int y, int h) {
    int z = ((x + (g == 0 ? y : -y)) % 4 + 4) % 4;
    return std::pair<int, int>(z, (g + h) % 2);
  };
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      auto [z, gz] = crossed(x, x % 2, y, y % 2);
      REQUIRE(gz == z % 2);  // the product of coinvariants is coinvariant
      REQUIRE(tw.tensor[x][y] == std::map<size_t, long>{{static_cast<size_t>(z), 1}});
    }

  // The twisted ring is the group ring of the Klein four group: x maps to
  // (x mod 2, [x >= 2]) as an isomorphism onto Z2 x Z2.
  FiniteAbelianGroup klein({2, 2});
  FusionRing kl = pointed_fusion_ring(klein.as_finite_group());
  auto embed = [&](size_t x) { return klein.index({static_cast<long>(x % 2), x >= 2 ? 1 : 0}); };
  for (size_t x = 0; x < 4; ++x) {
    REQUIRE(tw.dual[x] == x);  // every element of the twisted group is an involution
    for (size_t y = 0; y < 4; ++y)
      for (size_t z = 0; z < 4; ++z)
        REQUIRE(tw.coeff(x, y, z) == kl.coeff(embed(x), embed(y), embed(z)));
  }

  // The twisted ring differs from the original: the original has elements
  // of order four (1 * 1 = 2 there, not 0).
  REQUIRE(r.coeff(1, 1, 2) == 1);
  REQUIRE(tw.coeff(1, 1, 0) == 1);
}

TEST_CASE("twisting the binary tetrahedral representation ring by an inner symmetry") {
  QuaternionGroup tt = binary_tetrahedral_group();
  CharacterTable ct = character_table(tt.group);
  FusionRing r = rep_fusion_ring(ct);
  ChainGroupResult cg = chain_group(r);

  // Conjugation by i permutes the conjugacy classes trivially on characters:
  // the induced permutation of irreducible classes is the identity.
  Quat qi{Rational(0), Rational(1), Rational(0), Rational(0)};
  int gi = tt.index_of(qi);
  std::vector<int> class_perm(ct.cls.count());
  for (size_t k = 0; k < ct.cls.count(); ++k)
    class_perm[k] = ct.cls.class_of[tt.group.conjugate(gi, ct.cls.reps[k])];
  std::vector<size_t> irrep_perm(ct.irrep_count(), ct.irrep_count());
  for (size_t i = 0; i < ct.irrep_count(); ++i)
    for (size_t j = 0; j < ct.irrep_count(); ++j) {
      bool match = true;
      for (size_t k = 0; k < ct.cls.count() && match; ++k)
        match = ct.chi[j][k] == ct.chi[i][class_perm[k]];
      if (match) irrep_perm[i] = j;
    }
  for (size_t i = 0; i < ct.irrep_count(); ++i) REQUIRE(irrep_perm[i] == i);

  // Grading by the central parity; the twisted table coincides with the
  // original one under the relabeling x -> (x, deg x).
  FiniteGroup z2 = FiniteAbelianGroup({2}).as_finite_group();
  std::vector<size_t> grade = cg.degree;
  std::vector<std::vector<size_t>> act = {irrep_perm, irrep_perm};
  FusionRing tw = twisted_fusion(r, z2, grade, act);
  REQUIRE(tw.tensor == r.tensor);
  REQUIRE(tw.dual == r.dual);
}

TEST_CASE("twisted fusion rejects incompatible gradings and actions") {
  FiniteGroup z2 = FiniteAbelianGroup({2}).as_finite_group();

  // Grading that is not multiplicative.
  FiniteGroup z4 = FiniteAbelianGroup({4}).as_finite_group();
  FusionRing r4 = pointed_fusion_ring(z4);
  std::vector<std::vector<size_t>> id4 = {{0, 1, 2, 3}, {0, 1, 2, 3}};
  REQUIRE_THROWS_AS(twisted_fusion(r4, z2, {0, 1, 1, 1}, id4), invalid_input);

  // Permutation that preserves unit, duals and the (trivial) grading but is
  // not a ring automorphism: swapping two involutions of Z2 x Z4.
  FiniteAbelianGroup z2z4({2, 4});
  FusionRing r8 = pointed_fusion_ring(z2z4.as_finite_group());
  std::vector<size_t> swap_inv(8);
  for (size_t i = 0; i < 8; ++i) swap_inv[i] = i;
  std::swap(swap_inv[z2z4.index({1, 0})], swap_inv[z2z4.index({0, 2})]);
  REQUIRE_THROWS_AS(
      twisted_fusion(r8, z2, std::vector<size_t>(8, 0), {swap_inv, swap_inv, swap_inv}),
      invalid_input);  // wrong action size is also rejected
  std::vector<size_t> id8(8);
  for (size_t i = 0; i < 8; ++i) id8[i] = i;
  REQUIRE_THROWS_AS(twisted_fusion(r8, z2, std::vector<size_t>(8, 0), {id8, swap_inv}),
                    invalid_input);

  // Automorphism that does not commute with the grading: coordinate swap on
  // the Klein group graded by its first coordinate.
  FiniteAbelianGroup klein({2, 2});
  FusionRing rk = pointed_fusion_ring(klein.as_finite_group());
  std::vector<size_t> swap_coord(4), grade_k(4), idk = {0, 1, 2, 3};
  for (size_t i = 0; i < 4; ++i) {
    auto t = klein.tuple(i);
    swap_coord[i] = klein.index({t[1], t[0]});
    grade_k[i] = static_cast<size_t>(t[0]);
  }
  REQUIRE_THROWS_AS(twisted_fusion(rk, z2, grade_k, {idk, swap_coord}), invalid_input);
  // The same data with the trivial grading is accepted.
  REQUIRE_NOTHROW(twisted_fusion(rk, z2, {0, 0, 0, 0}, {idk, swap_coord}));

  // Family of automorphisms that is not a group homomorphism; the grading
  // sends x to twice its parity inside the order-four group, which the
  // inversion action does preserve.
  FiniteGroup gz4 = FiniteAbelianGroup({4}).as_finite_group();
  std::vector<size_t> inv4 = {0, 3, 2, 1}, idv = {0, 1, 2, 3};
  REQUIRE_NOTHROW(twisted_fusion(r4, gz4, {0, 2, 0, 2}, {idv, inv4, idv, inv4}));
  REQUIRE_THROWS_AS(twisted_fusion(r4, gz4, {0, 2, 0, 2}, {idv, inv4, inv4, inv4}),
                    invalid_input);
}

TEST_CASE("graded associator from the defect of a pseudo-cocycle") {
  QuaternionGroup tt = binary_tetrahedral_group();
  CharacterTable ct = character_table(tt.group);
  FusionRing r = rep_fusion_ring(ct);
  ChainGroupResult cg = chain_group(r);
  FiniteGroup z2 = FiniteAbelianGroup({2}).as_finite_group();
  int m1 = tt.index_of(minus_one());

  // Trivial defect: the associator is identically one.
  std::vector<std::vector<std::vector<Scalar>>> triv(
      2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(r.rank(), Scalar(1))));
  GradedAssociator a0 = associator_from_mu(r, cg, z2, {0, 1}, triv);
  for (size_t g = 0; g < 2; ++g)
    for (size_t h = 0; h < 2; ++h)
      for (size_t k = 0; k < 2; ++k) REQUIRE(a0.c[g][h][k] == Scalar(1));
  REQUIRE(pentagon_check(a0));

  // Defect mu(1,1) = evaluation at the central involution: each simple is
  // scaled by its central parity, and the associator is the nontrivial
  // 3-cocycle c(a,b,c) = (-1)^{abc} on the chain group of order two.
  auto mu = triv;
  for (size_t x = 0; x < r.rank(); ++x)
    mu[1][1][x] = ct.chi[x][class_index(ct.cls, m1)] / Scalar(Rational(ct.degrees[x]));
  GradedAssociator a1 = associator_from_mu(r, cg, z2, {0, 1}, mu);
  for (size_t g = 0; g < 2; ++g)
    for (size_t h = 0; h < 2; ++h)
      for (size_t k = 0; k < 2; ++k)
        REQUIRE(a1.c[g][h][k] == (g == 1 && h == 1 && k == 1 ? Scalar(-1) : Scalar(1)));
  REQUIRE(pentagon_check(a1));

  // The same cocycle on the truncated spin ring: the sign acts on the odd
  // labels, matching the associator that scales a triple of odd-label
  // simples by -1 and fixes all other homogeneous triples.
  FusionRing spin = truncated_spin_fusion_ring(6);
  ChainGroupResult cgs = chain_group(spin);
  auto mus = std::vector<std::vector<std::vector<Scalar>>>(
      2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(spin.rank(), Scalar(1))));
  for (size_t a = 0; a < spin.rank(); ++a) mus[1][1][a] = Scalar(a % 2 == 1 ? -1 : 1);
  GradedAssociator a2 = associator_from_mu(spin, cgs, z2, {0, 1}, mus);
  REQUIRE(a2.c == a1.c);
  REQUIRE(pentagon_check(a2));
}

TEST_CASE("graded associator rejects inconsistent defect data") {
  QuaternionGroup tt = binary_tetrahedral_group();
  CharacterTable ct = character_table(tt.group);
  FusionRing r = rep_fusion_ring(ct);
  ChainGroupResult cg = chain_group(r);
  FiniteGroup z2 = FiniteAbelianGroup({2}).as_finite_group();
  int m1 = tt.index_of(minus_one());

  std::vector<std::vector<std::vector<Scalar>>> base(
      2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(r.rank(), Scalar(1))));
  for (size_t x = 0; x < r.rank(); ++x)
    base[1][1][x] = ct.chi[x][class_index(ct.cls, m1)] / Scalar(Rational(ct.degrees[x]));

  // A value that differs between two simples of the same degree is a hard
  // error, not a silent choice of representative.
  auto dep = base;
  dep[1][1][0] = Scalar(-1);  // the trivial class sits in degree zero with others
  REQUIRE_THROWS_AS(associator_from_mu(r, cg, z2, {0, 1}, dep), check_failure);

  // Values constant on fibers but not multiplicative in the degree.
  auto nonchar = base;
  for (size_t x = 0; x < r.rank(); ++x)
    nonchar[1][1][x] = cg.degree[x] == 1 ? cyc(3, 1) : Scalar(1);
  REQUIRE_THROWS_AS(associator_from_mu(r, cg, z2, {0, 1}, nonchar), invalid_input);

  // A zero scalar can never be the action of a convolution-invertible
  // functional.
  auto zero = base;
  zero[0][1][2] = Scalar(0);
  REQUIRE_THROWS_AS(associator_from_mu(r, cg, z2, {0, 1}, zero), invalid_input);

  // q must be a homomorphism from the chain group.
  FiniteGroup z4 = FiniteAbelianGroup({4}).as_finite_group();
  std::vector<std::vector<std::vector<Scalar>>> big(
      4, std::vector<std::vector<Scalar>>(4, std::vector<Scalar>(r.rank(), Scalar(1))));
  REQUIRE_THROWS_AS(associator_from_mu(r, cg, z4, {0, 1}, big), invalid_input);

  // A defect family violating the two-cocycle law (not normalized).
  auto nonlazy = base;
  for (size_t x = 0; x < r.rank(); ++x)
    nonlazy[0][1][x] = Scalar(cg.degree[x] == 1 ? -1 : 1);
  REQUIRE_THROWS_AS(associator_from_mu(r, cg, z2, {0, 1}, nonlazy), invalid_input);
}

TEST_CASE("associator of the order-four chain group and coboundary perturbation") {
  // Pointed ring of Z4: the chain group is Z4 itself; q is the identity.
  FiniteGroup z4 = FiniteAbelianGroup({4}).as_finite_group();
  FusionRing r = pointed_fusion_ring(z4);
  ChainGroupResult cg = chain_group(r);
  REQUIRE(cg.group.factors() == std::vector<long>{4});
  FiniteGroup gamma = cg.group.as_finite_group();
  std::vector<size_t> q = {0, 1, 2, 3};

  // Carry cocycle: mu(s,t) = chi^{[s+t >= 4]} with chi the order-four
  // character k -> i^k of the chain group (all in chain-group coordinates).
  auto chi_pow = [&](size_t k, long e) {
    return cyc(4, static_cast<long>(cg.group.tuple(k)[0]) * e);
  };
  auto carry = [&](size_t s, size_t t) {
    return (cg.group.tuple(s)[0] + cg.group.tuple(t)[0]) >= 4 ? 1L : 0L;
  };
  std::vector<std::vector<std::vector<Scalar>>> mu(
      4, std::vector<std::vector<Scalar>>(4, std::vector<Scalar>(r.rank())));
  for (size_t s = 0; s < 4; ++s)
    for (size_t t = 0; t < 4; ++t)
      for (size_t x = 0; x < r.rank(); ++x) mu[s][t][x] = chi_pow(cg.degree[x], carry(s, t));
  GradedAssociator a = associator_from_mu(r, cg, gamma, q, mu);
  REQUIRE(pentagon_check(a));
  for (size_t g = 0; g < 4; ++g)
    for (size_t h = 0; h < 4; ++h)
      for (size_t k = 0; k < 4; ++k) REQUIRE(a.c[g][h][k] == chi_pow(k, carry(g, h)));
  // The cube is genuinely of order four somewhere.
  REQUIRE(a.c[1][3][1] == cyc(4, 1));

  // Perturb mu by the coboundary of a family of characters nu_s = chi^{n(s)};
  // the associator changes by an exact 3-coboundary.
  std::vector<long> nexp = {0, 1, 0, 2};
  auto mu2 = mu;
  for (size_t s = 0; s < 4; ++s)
    for (size_t t = 0; t < 4; ++t) {
      size_t st = static_cast<size_t>(gamma.mul(static_cast<int>(s), static_cast<int>(t)));
      for (size_t x = 0; x < r.rank(); ++x)
        mu2[s][t][x] = mu[s][t][x] * chi_pow(cg.degree[x], nexp[s] + nexp[t] - nexp[st]);
    }
  GradedAssociator a2 = associator_from_mu(r, cg, gamma, q, mu2);
  REQUIRE(pentagon_check(a2));

  // Convert the ratio cube to exponent form and certify it is a coboundary.
  auto log4 = [&](const Scalar& v) {
    for (long k = 0; k < 4; ++k)
      if (v == cyc(4, k)) return Rational(k, 4);
    throw check_failure("test: not a fourth root of unity");
  };
  std::vector<Rational> ratio(64);
  bool nontrivial = false;
  for (size_t g = 0; g < 4; ++g)
    for (size_t h = 0; h < 4; ++h)
      for (size_t k = 0; k < 4; ++k) {
        ratio[(g * 4 + h) * 4 + k] = (log4(a2.c[g][h][k]) - log4(a.c[g][h][k])).mod1();
        nontrivial = nontrivial || a2.c[g][h][k] != a.c[g][h][k];
      }
  REQUIRE(nontrivial);
  Cochain diff(4, 3, ratio);
  REQUIRE(is_cocycle(gamma, diff));
  auto witness = is_coboundary(gamma, diff);
  REQUIRE(witness.has_value());
  REQUIRE(coboundary(gamma, *witness) == diff);
}

TEST_CASE("pentagon check flags a corrupted associator") {
  QuaternionGroup tt = binary_tetrahedral_group();
  CharacterTable ct = character_table(tt.group);
  FusionRing r = rep_fusion_ring(ct);
  ChainGroupResult cg = chain_group(r);
  FiniteGroup z2 = FiniteAbelianGroup({2}).as_finite_group();
  int m1 = tt.index_of(minus_one());

  std::vector<std::vector<std::vector<Scalar>>> mu(
      2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(r.rank(), Scalar(1))));
  for (size_t x = 0; x < r.rank(); ++x)
    mu[1][1][x] = ct.chi[x][class_index(ct.cls, m1)] / Scalar(Rational(ct.degrees[x]));
  GradedAssociator a = associator_from_mu(r, cg, z2, {0, 1}, mu);
  REQUIRE(pentagon_check(a));

  a.c[1][1][1] = cyc(4, 1);
  REQUIRE_FALSE(pentagon_check(a));

  a.c[1][1].pop_back();
  REQUIRE_THROWS_AS(pentagon_check(a), invalid_input);
}

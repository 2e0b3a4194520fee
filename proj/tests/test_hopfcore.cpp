#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include <hopftwist/characters.hpp>
#include <hopftwist/hopf.hpp>
#include <hopftwist/named_groups.hpp>

using namespace hopftwist;

namespace {

Quat quat_minus_one() {
  return Quat{Rational(-1), Rational(0), Rational(0), Rational(0)};
}

// Independent oracle for the grading of a function algebra by a central
// embedding of dual characters: the component at g is the solution space of
// the defining linear conditions f(i(psi) x) = psi(g) f(x), set up directly
// on coefficient vectors with no reference to the cocentral map.
Mat function_grading_oracle(const FiniteGroup& g, const FiniteAbelianGroup& gamma,
                            const std::vector<size_t>& embed, int grade) {
  size_t n = g.order(), m = gamma.order();
  Mat cond(n * m, n);
  for (size_t psi = 0; psi < m; ++psi) {
    DualCharacter chi(gamma, psi);
    Scalar val = chi.value(gamma, grade);
    for (size_t x = 0; x < n; ++x) {
      size_t row = psi * n + x;
      size_t tx = static_cast<size_t>(g.mul(static_cast<int>(embed[psi]), static_cast<int>(x)));
      cond.at(row, tx) += Scalar(1);
      cond.at(row, x) -= val;
    }
  }
  return row_space(kernel(cond).transpose());
}

std::vector<Vec> sorted_chars(std::vector<Vec> chars) {
  std::sort(chars.begin(), chars.end(), [](const Vec& a, const Vec& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return chars;
}

bool same_group_table(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return false;
  for (size_t i = 0; i < a.order(); ++i)
    for (size_t j = 0; j < a.order(); ++j)
      if (a.mul(static_cast<int>(i), static_cast<int>(j)) !=
          b.mul(static_cast<int>(i), static_cast<int>(j)))
        return false;
  return true;
}

}  // namespace

TEST_CASE("group algebras satisfy every Hopf *-algebra axiom") {
  for (const FiniteGroup& g :
       {FiniteGroup::cyclic(4), symmetric_group_s3(), quaternion_group_q8().group,
        binary_tetrahedral_group().group}) {
    FinHopf h = group_algebra(g);
    CHECK(verify_hopf(h).empty());
  }
}

TEST_CASE("function algebras satisfy every Hopf *-algebra axiom") {
  for (const FiniteGroup& g :
       {FiniteGroup::cyclic(2), symmetric_group_s3(), quaternion_group_q8().group,
        binary_tetrahedral_group().group}) {
    FinHopf h = function_algebra(g);
    CHECK(verify_hopf(h).empty());
  }
}

TEST_CASE("axiom checker pinpoints corrupted structure") {
  SECTION("corrupted antipode is reported as an antipode failure") {
    // On functions on Z/3 the identity map is not an antipode (only the
    // inversion is), so exactly the antipode axioms must fire.
    FinHopf h = function_algebra(FiniteGroup::cyclic(3));
    h.antipode = Mat::identity(3);
    h.star = Mat::identity(3);
    auto failures = verify_hopf(h);
    REQUIRE(!failures.empty());
    for (const auto& f : failures) CHECK(f.axiom.substr(0, 8) == "antipode");
  }

  SECTION("corrupted counit is reported") {
    FinHopf h = group_algebra(FiniteGroup::cyclic(4));
    h.counit[2] = Scalar(0);
    auto failures = verify_hopf(h);
    REQUIRE(!failures.empty());
    bool counit_named = std::any_of(failures.begin(), failures.end(), [](const AxiomFailure& f) {
      return f.axiom.find("counit") != std::string::npos;
    });
    CHECK(counit_named);
  }

  SECTION("corrupted product is reported with witnesses") {
    FinHopf h = group_algebra(FiniteGroup::cyclic(4));
    h.mult[1][1] = {{3, Scalar(1)}};  // g * g := g^3
    auto failures = verify_hopf(h);
    REQUIRE(!failures.empty());
    for (const auto& f : failures) CHECK(!f.axiom.empty());
  }

  SECTION("corrupted coproduct coefficient is reported") {
    FinHopf h = function_algebra(symmetric_group_s3());
    h.comult[2].begin()->second = Scalar(Rational(1, 2));
    CHECK(!verify_hopf(h).empty());
  }

  SECTION("corrupted star is reported as a star failure") {
    FinHopf h = group_algebra(quaternion_group_q8().group);
    Mat st = Mat::identity(8);  // identity is not the star map on K[Q8]
    h.star = st;
    auto failures = verify_hopf(h);
    REQUIRE(!failures.empty());
    for (const auto& f : failures) CHECK(f.axiom.substr(0, 4) == "star");
  }

  SECTION("early stop returns exactly one failure") {
    FinHopf h = group_algebra(FiniteGroup::cyclic(4));
    h.counit[1] = Scalar(5);
    CHECK(verify_hopf(h, true).size() == 1);
  }

  SECTION("malformed shapes are rejected as invalid input") {
    FinHopf h = group_algebra(FiniteGroup::cyclic(3));
    h.counit.pop_back();
    CHECK_THROWS_AS(verify_hopf(h), invalid_input);
  }
}

TEST_CASE("group algebra gradings attached to quotient homomorphisms") {
  SECTION("identity quotient grades K[Z6] by single group elements") {
    FiniteGroup z6 = FiniteGroup::cyclic(6);
    FinHopf h = group_algebra(z6);
    CocentralMap p{z6, Mat::identity(6)};
    REQUIRE(validate_cocentral(h, p).empty());
    Grading gr = grading_from_cocentral(h, p);
    for (size_t g = 0; g < 6; ++g) {
      REQUIRE(gr.components[g].rows() == 1);
      // The component at g is the line through the basis vector g.
      Vec e(6, Scalar(0));
      e[g] = Scalar(1);
      CHECK(in_row_space(gr.components[g], e));
    }
    CocentralMap back = cocentral_from_grading(h, gr);
    CHECK(back.map == p.map);
    CHECK(same_group_table(back.target, p.target));
  }

  SECTION("mod-2 quotient grades K[Z4] into even and odd spans") {
    FiniteGroup z4 = FiniteGroup::cyclic(4);
    FinHopf h = group_algebra(z4);
    Mat pm(4, 2);
    for (size_t i = 0; i < 4; ++i) pm.at(i, i % 2) = Scalar(1);
    CocentralMap p{FiniteGroup::cyclic(2), pm};
    REQUIRE(validate_cocentral(h, p).empty());
    Grading gr = grading_from_cocentral(h, p);
    REQUIRE(gr.components[0].rows() == 2);
    REQUIRE(gr.components[1].rows() == 2);
    for (size_t x : {0u, 2u}) {
      Vec e(4, Scalar(0));
      e[x] = Scalar(1);
      CHECK(in_row_space(gr.components[0], e));
    }
    for (size_t x : {1u, 3u}) {
      Vec e(4, Scalar(0));
      e[x] = Scalar(1);
      CHECK(in_row_space(gr.components[1], e));
    }
    CocentralMap back = cocentral_from_grading(h, gr);
    CHECK(back.map == p.map);
  }

  SECTION("trivial quotient puts everything in the identity component") {
    FiniteGroup z4 = FiniteGroup::cyclic(4);
    FinHopf h = group_algebra(z4);
    Mat pm(4, 1);
    for (size_t i = 0; i < 4; ++i) pm.at(i, 0) = Scalar(1);
    CocentralMap p{FiniteGroup::cyclic(1), pm};
    Grading gr = grading_from_cocentral(h, p);
    CHECK(gr.components[0].rows() == 4);
  }
}

TEST_CASE("function algebra gradings by central dual embeddings") {
  auto check_fixture = [](const QuaternionGroup& qg) {
    const FiniteGroup& g = qg.group;
    FinHopf h = function_algebra(g);
    FiniteAbelianGroup z2({2});
    std::vector<size_t> embed{static_cast<size_t>(g.identity()),
                              static_cast<size_t>(qg.index_of(quat_minus_one()))};
    CocentralMap p = central_dual_cocentral(g, z2, embed);
    REQUIRE(validate_cocentral(h, p).empty());
    Grading gr = grading_from_cocentral(h, p);
    FiniteGroup z2f = z2.as_finite_group();
    for (int grade = 0; grade < 2; ++grade) {
      Mat oracle = function_grading_oracle(g, z2, embed, grade);
      CHECK(gr.components[static_cast<size_t>(grade)] == oracle);
    }
    // Even and odd functions each make up half the space.
    CHECK(gr.components[0].rows() == g.order() / 2);
    CHECK(gr.components[1].rows() == g.order() / 2);
    // Round trip recovers the cocentral map exactly.
    CocentralMap back = cocentral_from_grading(h, gr);
    CHECK(back.map == p.map);
    CHECK(same_group_table(back.target, z2f));
    return gr;
  };

  SECTION("quaternion group of order 8") {
    QuaternionGroup qg = quaternion_group_q8();
    Grading gr = check_fixture(qg);
    // Spot oracle: delta_1 + delta_{-1} is even, delta_1 - delta_{-1} is odd.
    size_t m1 = static_cast<size_t>(qg.index_of(quat_minus_one()));
    Vec even(8, Scalar(0)), odd(8, Scalar(0));
    even[static_cast<size_t>(qg.group.identity())] = Scalar(1);
    even[m1] += Scalar(1);
    odd[static_cast<size_t>(qg.group.identity())] = Scalar(1);
    odd[m1] -= Scalar(1);
    CHECK(in_row_space(gr.components[0], even));
    CHECK(in_row_space(gr.components[1], odd));
    CHECK(!in_row_space(gr.components[0], odd));
  }

  SECTION("binary tetrahedral group of order 24") {
    check_fixture(binary_tetrahedral_group());
  }
}

TEST_CASE("cocentral validation distinguishes Hopf maps from cocentral ones") {
  // Restriction of functions on S3 to the two-element subgroup generated by
  // a transposition is a Hopf algebra map onto K[Z2] (identified via the
  // Fourier basis), but it is not cocentral because the subgroup is not
  // normal.  Every axiom except cocentrality must hold.
  FiniteGroup s3 = symmetric_group_s3();
  FinHopf h = function_algebra(s3);
  int t = -1;
  for (size_t x = 0; x < 6; ++x)
    if (s3.element_order(static_cast<int>(x)) == 2) {
      t = static_cast<int>(x);
      break;
    }
  REQUIRE(t >= 0);
  Mat pm(6, 2);
  Rational half(1, 2);
  // delta_e -> (e + u)/2, delta_t -> (e - u)/2, everything else -> 0.
  pm.at(static_cast<size_t>(s3.identity()), 0) = Scalar(half);
  pm.at(static_cast<size_t>(s3.identity()), 1) = Scalar(half);
  pm.at(static_cast<size_t>(t), 0) = Scalar(half);
  pm.at(static_cast<size_t>(t), 1) = Scalar(0) - Scalar(half);
  CocentralMap p{FiniteGroup::cyclic(2), pm};

  auto bad = validate_cocentral(h, p);
  REQUIRE(bad.size() == 1);
  CHECK(bad.front().find("cocentrality") != std::string::npos);
  CHECK_THROWS_AS(grading_from_cocentral(h, p), invalid_input);
}

TEST_CASE("cocentral validation flags corrupted maps") {
  FiniteGroup z6 = FiniteGroup::cyclic(6);
  FinHopf h = group_algebra(z6);

  SECTION("shape mismatch is invalid input") {
    CocentralMap p{FiniteGroup::cyclic(2), Mat::identity(6)};
    CHECK_THROWS_AS(validate_cocentral(h, p), invalid_input);
  }

  SECTION("scaled entry violates the counit condition") {
    Mat pm = Mat::identity(6);
    pm.at(3, 3) = Scalar(2);
    CHECK(!validate_cocentral(h, CocentralMap{z6, pm}).empty());
  }

  SECTION("permuted rows violate the algebra-map condition") {
    Mat pm(6, 6);
    for (size_t i = 0; i < 6; ++i) pm.at(i, (i + 1) % 6) = Scalar(1);
    CHECK(!validate_cocentral(h, CocentralMap{z6, pm}).empty());
  }
}

TEST_CASE("grading verification rejects non-gradings") {
  FiniteGroup z4 = FiniteGroup::cyclic(4);
  FinHopf h = group_algebra(z4);
  FiniteGroup z2 = FiniteGroup::cyclic(2);

  SECTION("a decomposition that mixes parity fails multiplicativity") {
    // span{e, g} and span{g^2, g^3} decompose the space but g * g = g^2
    // lands in the wrong summand.
    Mat c0(2, 4), c1(2, 4);
    c0.at(0, 0) = Scalar(1);
    c0.at(1, 1) = Scalar(1);
    c1.at(0, 2) = Scalar(1);
    c1.at(1, 3) = Scalar(1);
    Grading gr{z2, {c0, c1}};
    CHECK(!verify_grading(h, gr).empty());
  }

  SECTION("overlapping components are not a direct sum") {
    Mat c0(2, 4), c1(2, 4);
    c0.at(0, 0) = Scalar(1);
    c0.at(1, 1) = Scalar(1);
    c1.at(0, 0) = Scalar(1);
    c1.at(1, 1) = Scalar(1);
    Grading gr{z2, {c0, c1}};
    auto bad = verify_grading(h, gr);
    REQUIRE(!bad.empty());
    CHECK(bad.front().find("direct sum") != std::string::npos);
  }
}

TEST_CASE("central dual embeddings reject invalid data") {
  FiniteAbelianGroup z2({2});

  SECTION("non-central image") {
    FiniteGroup s3 = symmetric_group_s3();
    int t = -1;
    for (size_t x = 0; x < 6; ++x)
      if (s3.element_order(static_cast<int>(x)) == 2) t = static_cast<int>(x);
    CHECK_THROWS_AS(
        central_dual_cocentral(s3, z2, {static_cast<size_t>(s3.identity()),
                                        static_cast<size_t>(t)}),
        invalid_input);
  }

  SECTION("non-homomorphism") {
    QuaternionGroup qg = quaternion_group_q8();
    size_t m1 = static_cast<size_t>(qg.index_of(quat_minus_one()));
    // -1 has order 2 so {e, -1} works, but {-1, e} sends the trivial
    // character to a non-identity element.
    CHECK_THROWS_AS(central_dual_cocentral(qg.group, z2,
                                           {m1, static_cast<size_t>(qg.group.identity())}),
                    invalid_input);
  }

  SECTION("non-injective embedding") {
    QuaternionGroup qg = quaternion_group_q8();
    size_t e = static_cast<size_t>(qg.group.identity());
    CHECK_THROWS_AS(central_dual_cocentral(qg.group, z2, {e, e}), invalid_input);
  }
}

TEST_CASE("characters of function algebras form the underlying group") {
  SECTION("functions on S3") {
    FiniteGroup s3 = symmetric_group_s3();
    CharacterGroup cg = character_group(function_algebra(s3));
    REQUIRE(cg.characters.size() == 6);
    // Point evaluations convolve exactly like group elements.
    CHECK(same_group_table(cg.group, s3));
  }
  SECTION("functions on Q8") {
    FiniteGroup q8 = quaternion_group_q8().group;
    CharacterGroup cg = character_group(function_algebra(q8));
    REQUIRE(cg.characters.size() == 8);
    CHECK(same_group_table(cg.group, q8));
  }
  SECTION("functions on the binary tetrahedral group") {
    FiniteGroup g = binary_tetrahedral_group().group;
    CharacterGroup cg = character_group(function_algebra(g));
    REQUIRE(cg.characters.size() == 24);
    CHECK(same_group_table(cg.group, g));
  }
}

TEST_CASE("characters of group algebras form the dual of the abelianization") {
  SECTION("K[Z4] has four characters forming a cyclic group of order 4") {
    CharacterGroup cg = character_group(group_algebra(FiniteGroup::cyclic(4)));
    REQUIRE(cg.characters.size() == 4);
    CHECK(cg.group.is_abelian());
    CHECK(cg.group.exponent() == 4);
  }
  SECTION("K[Q8] has four characters of exponent two") {
    CharacterGroup cg = character_group(group_algebra(quaternion_group_q8().group));
    REQUIRE(cg.characters.size() == 4);
    CHECK(cg.group.is_abelian());
    CHECK(cg.group.exponent() == 2);
  }
  SECTION("K[S3] has two characters") {
    CharacterGroup cg = character_group(group_algebra(symmetric_group_s3()));
    CHECK(cg.characters.size() == 2);
  }
  SECTION("the binary tetrahedral group algebra has three characters") {
    CharacterGroup cg = character_group(group_algebra(binary_tetrahedral_group().group));
    REQUIRE(cg.characters.size() == 3);
    CHECK(cg.group.exponent() == 3);
  }
}

TEST_CASE("general character solver agrees with the structured routes") {
  SECTION("functions on S3") {
    FinHopf h = function_algebra(symmetric_group_s3());
    auto structured = character_group(h).characters;
    auto general = character_solve_general(h, 16);
    CHECK(sorted_chars(structured) == sorted_chars(general));
  }
  SECTION("K[Z4] (exercises quartic root splitting over Q(i))") {
    FinHopf h = group_algebra(FiniteGroup::cyclic(4));
    auto structured = character_group(h).characters;
    auto general = character_solve_general(h, 16);
    CHECK(sorted_chars(structured) == sorted_chars(general));
  }
  SECTION("K[Q8] (kills a four-dimensional matrix block)") {
    FinHopf h = group_algebra(quaternion_group_q8().group);
    auto structured = character_group(h).characters;
    auto general = character_solve_general(h, 16);
    CHECK(sorted_chars(structured) == sorted_chars(general));
  }
  SECTION("dimension bound throws a resource error") {
    FinHopf h = function_algebra(binary_tetrahedral_group().group);
    CHECK_THROWS_AS(character_solve_general(h, 16), resource_limit);
    CHECK(character_solve_general(h, 24).size() == 24);
  }
}

TEST_CASE("lazy characters are exactly the central point evaluations") {
  SECTION("on function algebras laziness picks out the center") {
    for (const FiniteGroup& g : {symmetric_group_s3(), quaternion_group_q8().group,
                                 binary_tetrahedral_group().group}) {
      FinHopf h = function_algebra(g);
      CharacterGroup cg = character_group(h);
      std::vector<int> center = g.center();
      std::vector<size_t> lazy;
      for (size_t i = 0; i < cg.characters.size(); ++i)
        if (is_lazy(h, cg.characters[i])) lazy.push_back(i);
      REQUIRE(lazy.size() == center.size());
      for (size_t i : lazy)
        CHECK(std::find(center.begin(), center.end(), static_cast<int>(i)) != center.end());
      // The lazy characters are closed under convolution and inversion.
      for (size_t i : lazy)
        for (size_t j : lazy) {
          int prod = cg.group.mul(static_cast<int>(i), static_cast<int>(j));
          CHECK(std::find(lazy.begin(), lazy.end(), static_cast<size_t>(prod)) != lazy.end());
        }
    }
  }
  SECTION("on a commutative group algebra every character is lazy") {
    FinHopf h = group_algebra(FiniteGroup::cyclic(4));
    CharacterGroup cg = character_group(h);
    for (const auto& w : cg.characters) CHECK(is_lazy(h, w));
  }
  SECTION("the counit is always a lazy character") {
    for (const FiniteGroup& g : {symmetric_group_s3(), quaternion_group_q8().group}) {
      for (FinHopf h : {group_algebra(g), function_algebra(g)}) {
        CHECK(is_character(h, h.counit));
        CHECK(is_lazy(h, h.counit));
      }
    }
  }
}

TEST_CASE("character and convolution basics") {
  FinHopf h = function_algebra(symmetric_group_s3());
  SECTION("the counit is the convolution identity") {
    CharacterGroup cg = character_group(h);
    size_t e = static_cast<size_t>(cg.group.identity());
    CHECK(cg.characters[e] == h.counit);
    for (const auto& w : cg.characters) {
      CHECK(convolve(h, h.counit, w) == w);
      CHECK(convolve(h, w, h.counit) == w);
    }
  }
  SECTION("scaling breaks the character property") {
    Vec w = h.counit;
    for (auto& c : w) c = c * Scalar(2);
    CHECK(!is_character(h, w));
  }
}

#pragma once

// Twisted function algebras on finite groups.
//
// Input data: a finite group G, a finite abelian group Gamma, an injective
// homomorphism i from the dual of Gamma into the center of G, and an action
// alpha of Gamma on G by automorphisms fixing the embedded central subgroup
// pointwise.  From this the header builds the twisted function algebra
// O(G)^{t,alpha} -- the graded twist of O(G) along the cocentral map dual to
// i -- and certifies independently that it equals the fixed-point subalgebra
// of the crossed product O(G) x| Gamma under the combined
// translation / dual action of the dual of Gamma.
//
// On top of the construction it classifies the irreducible
// *-representations of the twisted algebra by orbits of the
// Gamma x dual(Gamma) action on G, and matches Hopf *-ideals with
// noncommutative quotient against invariant subgroups that contain the
// embedded dual and a point with trivial stabilizer.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hopftwist/error.hpp"
#include "hopftwist/group.hpp"
#include "hopftwist/hopf.hpp"
#include "hopftwist/linalg.hpp"
#include "hopftwist/twist.hpp"

namespace hopftwist {

namespace detail {

// Addition in a finite abelian group by element index, without the int casts.
inline size_t gadd(const FiniteAbelianGroup& gamma, size_t a, size_t b) {
  return static_cast<size_t>(gamma.add(static_cast<int>(a), static_cast<int>(b)));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Input data
// ---------------------------------------------------------------------------

// A finite group G with a central embedding of the dual of Gamma and an
// invariant action of Gamma.  embed[psi] is the G-element the dual character
// psi maps to; action is the Gamma-action on the element set of G.
struct CQGInput {
  FiniteGroup group;
  FiniteAbelianGroup gamma;
  std::vector<size_t> embed;
  GroupAction action;
};

// Validates and assembles the input:
//   - embed is an injective homomorphism from the dual of Gamma into the
//     center of G,
//   - action is a Gamma-action by group automorphisms of G,
//   - every automorphism fixes the embedded central subgroup pointwise.
inline CQGInput make_cqg_input(FiniteGroup group, FiniteAbelianGroup gamma,
                               std::vector<size_t> embed, std::vector<std::vector<int>> perms) {
  const size_t n = group.order(), m = gamma.order();
  if (embed.size() != m) throw invalid_input("cqg input: one embedded element per dual character");
  for (size_t p = 0; p < m; ++p) {
    if (embed[p] >= n) throw invalid_input("cqg input: embedded element out of range");
    for (size_t q = 0; q < p; ++q)
      if (embed[p] == embed[q]) throw invalid_input("cqg input: embedding not injective");
  }
  if (embed[0] != static_cast<size_t>(group.identity()))
    throw invalid_input("cqg input: embedding must send the trivial character to the identity");
  for (size_t p = 0; p < m; ++p) {
    for (size_t q = 0; q < m; ++q)
      if (group.mul(static_cast<int>(embed[p]), static_cast<int>(embed[q])) !=
          static_cast<int>(embed[detail::gadd(gamma, p, q)]))
        throw invalid_input("cqg input: embedding is not a homomorphism");
    for (size_t x = 0; x < n; ++x)
      if (group.mul(static_cast<int>(embed[p]), static_cast<int>(x)) !=
          group.mul(static_cast<int>(x), static_cast<int>(embed[p])))
        throw invalid_input("cqg input: embedded subgroup is not central");
  }

  GroupAction action(gamma.as_finite_group(), std::move(perms), n);
  for (size_t t = 0; t < m; ++t) {
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y)
        if (action.apply(static_cast<int>(t),
                         group.mul(static_cast<int>(x), static_cast<int>(y))) !=
            group.mul(action.apply(static_cast<int>(t), static_cast<int>(x)),
                      action.apply(static_cast<int>(t), static_cast<int>(y))))
          throw invalid_input("cqg input: action is not by group automorphisms");
    for (size_t p = 0; p < m; ++p)
      if (action.apply(static_cast<int>(t), static_cast<int>(embed[p])) !=
          static_cast<int>(embed[p]))
        throw invalid_input("cqg input: action must fix the embedded subgroup pointwise");
  }

  return CQGInput{std::move(group), std::move(gamma), std::move(embed), std::move(action)};
}

// ---------------------------------------------------------------------------
// Orbit analysis
// ---------------------------------------------------------------------------

// Partition of G under the combined action (t, psi).x = alpha_t(i(psi) x)
// of Gamma x dual(Gamma), with the per-element classification:
//   regular[x]  -- the stabilizer of x is trivial (free point),
//   one_dim[x]  -- alpha_t(x) lies in i(dual) x for every t; then
//                  shifts[x][t] is the unique dual element psi with
//                  alpha_t(x) = i(psi) x, and t -> shifts[x][t] is a
//                  homomorphism,
//   fixed[x]    -- alpha_t(x) = x for every t.
struct OrbitAnalysis {
  std::vector<std::vector<int>> orbits;  // sorted members, ordered by least member
  std::vector<size_t> orbit_of;
  std::vector<bool> regular, one_dim, fixed;
  std::vector<std::vector<size_t>> shifts;
  bool one_dim_covers = false;  // G = free points u centrally shifted points
  bool fixed_covers = false;    // G = free points u fixed points
};

inline OrbitAnalysis orbit_analysis(const CQGInput& in) {
  const FiniteGroup& g = in.group;
  const size_t n = g.order(), m = in.gamma.order();
  OrbitAnalysis oa;
  oa.orbit_of.assign(n, 0);
  oa.regular.assign(n, false);
  oa.one_dim.assign(n, false);
  oa.fixed.assign(n, false);
  oa.shifts.assign(n, {});

  // trans[psi][x] = i(psi) x.
  std::vector<std::vector<int>> trans(m, std::vector<int>(n));
  for (size_t p = 0; p < m; ++p)
    for (size_t x = 0; x < n; ++x)
      trans[p][x] = g.mul(static_cast<int>(in.embed[p]), static_cast<int>(x));

  std::vector<bool> seen(n, false);
  for (size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<int> orbit, queue{static_cast<int>(start)};
    seen[start] = true;
    while (!queue.empty()) {
      int y = queue.back();
      queue.pop_back();
      orbit.push_back(y);
      for (size_t t = 0; t < m; ++t)
        for (size_t p = 0; p < m; ++p) {
          int z = in.action.apply(static_cast<int>(t), trans[p][y]);
          if (!seen[z]) {
            seen[z] = true;
            queue.push_back(z);
          }
        }
    }
    std::sort(orbit.begin(), orbit.end());
    for (int y : orbit) oa.orbit_of[y] = oa.orbits.size();
    oa.orbits.push_back(std::move(orbit));
  }

  for (size_t x = 0; x < n; ++x) {
    size_t stab = 0;
    for (size_t t = 0; t < m; ++t)
      for (size_t p = 0; p < m; ++p)
        if (in.action.apply(static_cast<int>(t), trans[p][x]) == static_cast<int>(x)) ++stab;
    oa.regular[x] = (stab == 1);

    bool still = true;
    for (size_t t = 0; t < m; ++t)
      if (in.action.apply(static_cast<int>(t), static_cast<int>(x)) != static_cast<int>(x))
        still = false;
    oa.fixed[x] = still;

    bool shifted = true;
    std::vector<size_t> sh(m, 0);
    for (size_t t = 0; t < m && shifted; ++t) {
      int ax = in.action.apply(static_cast<int>(t), static_cast<int>(x));
      bool found = false;
      for (size_t p = 0; p < m; ++p)
        if (trans[p][x] == ax) {
          sh[t] = p;
          found = true;
          break;
        }
      if (!found) shifted = false;
    }
    oa.one_dim[x] = shifted;
    if (shifted) {
      for (size_t t = 0; t < m; ++t)
        for (size_t s = 0; s < m; ++s)
          if (sh[detail::gadd(in.gamma, t, s)] != detail::gadd(in.gamma, sh[t], sh[s]))
            throw check_failure("orbit analysis: central shift is not a homomorphism");
      oa.shifts[x] = std::move(sh);
    }
    if (still && !shifted)
      throw check_failure("orbit analysis: fixed point without central shifts");
  }

  for (const auto& orbit : oa.orbits)
    for (int y : orbit)
      if (oa.regular[y] != oa.regular[orbit[0]] || oa.one_dim[y] != oa.one_dim[orbit[0]])
        throw check_failure("orbit analysis: classification not constant on an orbit");

  oa.one_dim_covers = true;
  oa.fixed_covers = true;
  for (size_t x = 0; x < n; ++x) {
    if (!oa.regular[x] && !oa.one_dim[x]) oa.one_dim_covers = false;
    if (!oa.regular[x] && !oa.fixed[x]) oa.fixed_covers = false;
  }
  return oa;
}

// ---------------------------------------------------------------------------
// Correspondence hypotheses
// ---------------------------------------------------------------------------

// The subgroup correspondence below is guaranteed when Gamma has prime
// order, or when Gamma is cyclic and every point is free or centrally
// shifted, or when every point is free or fixed.
struct HypothesisStatus {
  bool prime_order = false;
  bool cyclic = false;
  bool one_dim_covers = false;
  bool fixed_covers = false;
  bool holds = false;
  std::string note;
};

inline HypothesisStatus hypothesis_status(const CQGInput& in, const OrbitAnalysis& oa) {
  HypothesisStatus hs;
  const size_t m = in.gamma.order();
  if (m >= 2) {
    hs.prime_order = true;
    for (size_t d = 2; d * d <= m; ++d)
      if (m % d == 0) hs.prime_order = false;
  }
  hs.cyclic = in.gamma.rank() <= 1;
  hs.one_dim_covers = oa.one_dim_covers;
  hs.fixed_covers = oa.fixed_covers;
  if (hs.prime_order && !hs.one_dim_covers)
    throw check_failure(
        "hypothesis check: a prime-order acting group must leave only free or centrally "
        "shifted points");
  hs.holds = hs.prime_order || (hs.cyclic && hs.one_dim_covers) || hs.fixed_covers;
  if (!hs.holds) hs.note = "hypotheses unmet - informational only";
  return hs;
}

// ---------------------------------------------------------------------------
// Character averaging
// ---------------------------------------------------------------------------

// Homogeneous component of degree t of a function f on G:
//   f_t(x) = (1/|Gamma|) sum_psi conj(psi(t)) f(i(psi) x).
// The components recover the grading induced by the cocentral map dual to
// the embedding.
inline Vec averaged_component(const CQGInput& in, size_t t, const Vec& f) {
  const FiniteGroup& g = in.group;
  const size_t n = g.order(), m = in.gamma.order();
  if (f.size() != n) throw invalid_input("averaged component: vector size mismatch");
  if (t >= m) throw invalid_input("averaged component: degree out of range");
  Vec out(n, Scalar(0));
  const Scalar inv_m{Rational(1, static_cast<long>(m))};
  for (size_t p = 0; p < m; ++p) {
    Scalar c = DualCharacter(in.gamma, p).value(in.gamma, static_cast<int>(t)).conjugate() * inv_m;
    for (size_t x = 0; x < n; ++x) {
      const Scalar& v = f[g.mul(static_cast<int>(in.embed[p]), static_cast<int>(x))];
      if (!v.is_zero()) out[x] += c * v;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The twisted function algebra
// ---------------------------------------------------------------------------

struct TwistedFunctionAlgebra {
  CQGInput input;
  InvariantCocentralAction base;  // (O(G), cocentral map, action on functions)
  GradedTwist twist;              // the twisted function algebra
  OrbitAnalysis orbits;
  HypothesisStatus hypothesis;
};

// Builds the twisted function algebra O(G)^{t,alpha} as a graded twist of
// O(G) and certifies it against the independent description: inside the
// crossed product O(G) x| Gamma, the dual of Gamma acts by the *-algebra
// automorphisms
//   T_psi(delta_x lambda_t) = conj(psi(t)) delta_{i(psi)^{-1} x} lambda_t,
// and the twisted algebra is exactly the fixed-point subalgebra, with every
// piece of structure (product, coproduct, counit, antipode, star) inherited
// from the crossed product.  Throws check_failure if any part of the
// identification fails.  Unmet correspondence hypotheses only set the
// warning note; the construction itself does not depend on them.
inline TwistedFunctionAlgebra build_twisted_function_algebra(const CQGInput& in) {
  const FiniteGroup& g = in.group;
  const size_t n = g.order(), m = in.gamma.order();

  OrbitAnalysis oa = orbit_analysis(in);
  HypothesisStatus hs = hypothesis_status(in, oa);

  FinHopf a = function_algebra(g);
  CocentralMap p = central_dual_cocentral(g, in.gamma, in.embed);
  std::vector<Mat> alphas;
  alphas.reserve(m);
  for (size_t t = 0; t < m; ++t) {
    Mat mt(n, n);
    for (size_t x = 0; x < n; ++x)
      mt.at(static_cast<size_t>(in.action.apply(static_cast<int>(t), static_cast<int>(x))), x) =
          Scalar(1);
    alphas.push_back(std::move(mt));
  }
  InvariantCocentralAction act = make_action(std::move(a), std::move(p), std::move(alphas));
  GradedTwist tw = build_graded_twist(act);
  if (tw.hopf.dim != n)
    throw check_failure("twisted function algebra: dimension differs from |G|");

  // The grading of O(G) agrees with character averaging on every basis
  // function, exactly.
  for (size_t y = 0; y < n; ++y) {
    Vec delta(n, Scalar(0));
    delta[y] = Scalar(1);
    Vec total(n, Scalar(0));
    for (size_t t = 0; t < m; ++t) {
      Vec comp = averaged_component(in, t, delta);
      bool zero = true;
      for (size_t x = 0; x < n; ++x) {
        total[x] += comp[x];
        if (!comp[x].is_zero()) zero = false;
      }
      if (!zero && !in_row_space(act.grading.components[t], comp))
        throw check_failure(
            "twisted function algebra: averaged component leaves the grading component");
    }
    if (!(total == delta))
      throw check_failure("twisted function algebra: averaged components do not sum back");
  }

  // Combined translation / dual action on the crossed product, stored as a
  // basis permutation with phases: T_psi maps basis (x, t) to
  // conj(psi(t)) (i(psi)^{-1} x, t).
  CrossedProduct cp = build_crossed_product(act);
  const size_t nm = n * m;
  std::vector<std::vector<size_t>> tperm(m, std::vector<size_t>(nm));
  std::vector<std::vector<Scalar>> tphase(m, std::vector<Scalar>(nm, Scalar(0)));
  for (size_t p_ = 0; p_ < m; ++p_) {
    DualCharacter psi(in.gamma, p_);
    int inv = g.inverse(static_cast<int>(in.embed[p_]));
    for (size_t x = 0; x < n; ++x)
      for (size_t t = 0; t < m; ++t) {
        tperm[p_][cp.index(x, t)] =
            cp.index(static_cast<size_t>(g.mul(inv, static_cast<int>(x))), t);
        tphase[p_][cp.index(x, t)] = psi.value(in.gamma, static_cast<int>(t)).conjugate();
      }
  }
  // Group law of the action: T_psi T_phi = T_{psi + phi}.
  for (size_t p_ = 0; p_ < m; ++p_)
    for (size_t q = 0; q < m; ++q) {
      size_t pq = detail::gadd(in.gamma, p_, q);
      for (size_t c = 0; c < nm; ++c)
        if (tperm[p_][tperm[q][c]] != tperm[pq][c] ||
            !(tphase[p_][tperm[q][c]] * tphase[q][c] == tphase[pq][c]))
          throw check_failure("twisted function algebra: dual action is not a group action");
    }
  // Each T_psi is a *-algebra automorphism of the crossed product.
  for (size_t p_ = 0; p_ < m; ++p_) {
    for (size_t c = 0; c < nm; ++c) {
      for (size_t d = 0; d < nm; ++d) {
        SparseVec lhs;  // T(a b)
        for (const auto& [k, v] : cp.hopf.mult[c][d]) sv_add(lhs, tperm[p_][k], v * tphase[p_][k]);
        SparseVec rhs;  // T(a) T(b)
        const Scalar both = tphase[p_][c] * tphase[p_][d];
        for (const auto& [k, v] : cp.hopf.mult[tperm[p_][c]][tperm[p_][d]])
          sv_add(rhs, k, v * both);
        if (!(lhs == rhs))
          throw check_failure("twisted function algebra: dual action is not multiplicative");
      }
      SparseVec lhs;  // T(a^*)
      for (size_t r = 0; r < nm; ++r) {
        const Scalar& s = cp.hopf.star->at(r, c);
        if (!s.is_zero()) sv_add(lhs, tperm[p_][r], s * tphase[p_][r]);
      }
      SparseVec rhs;  // T(a)^*
      const Scalar conj_phase = tphase[p_][c].conjugate();
      for (size_t r = 0; r < nm; ++r) {
        const Scalar& s = cp.hopf.star->at(r, tperm[p_][c]);
        if (!s.is_zero()) sv_add(rhs, r, s * conj_phase);
      }
      if (!(lhs == rhs))
        throw check_failure("twisted function algebra: dual action does not respect the star");
    }
  }

  // Fixed points of all T_psi: stack (T_psi - id) and take the kernel.
  Mat cond(m * nm, nm);
  for (size_t p_ = 0; p_ < m; ++p_)
    for (size_t c = 0; c < nm; ++c) {
      cond.at(p_ * nm + tperm[p_][c], c) += tphase[p_][c];
      cond.at(p_ * nm + c, c) -= Scalar(1);
    }
  Mat fixed = kernel(cond);
  if (fixed.cols() != n)
    throw check_failure("twisted function algebra: fixed-point dimension differs from |G|");

  // Embedding of the twist basis into the crossed product:
  //   t_r -> sum_x b_r(x) (x, grade_r).
  Mat emb(n, nm);
  for (size_t r = 0; r < n; ++r)
    for (size_t x = 0; x < n; ++x)
      emb.at(r, cp.index(x, tw.basis_grade[r])) = tw.homog_basis.at(r, x);
  if (!same_row_space(fixed.transpose(), emb))
    throw check_failure(
        "twisted function algebra: fixed points of the combined translation / dual action "
        "differ from the graded twist");

  // Structure transport: the abstract twist operations coincide with the
  // crossed-product operations on the embedded basis.
  std::vector<SparseVec> erows(n);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < nm; ++c)
      if (!emb.at(r, c).is_zero()) erows[r].emplace(c, emb.at(r, c));
  for (size_t r = 0; r < n; ++r) {
    for (size_t s = 0; s < n; ++s) {
      SparseVec lhs = hv_product(cp.hopf, erows[r], erows[s]);
      SparseVec rhs;
      for (const auto& [k, v] : tw.hopf.mult[r][s])
        for (const auto& [c, w] : erows[k]) sv_add(rhs, c, v * w);
      if (!(lhs == rhs))
        throw check_failure("twisted function algebra: product transport mismatch");
    }
    SparseTens lhs_c = hv_comult(cp.hopf, erows[r]);
    SparseTens rhs_c;
    for (const auto& [uv, v] : tw.hopf.comult[r])
      for (const auto& [c1, w1] : erows[uv.first])
        for (const auto& [c2, w2] : erows[uv.second]) st_add(rhs_c, c1, c2, v * w1 * w2);
    if (!(lhs_c == rhs_c))
      throw check_failure("twisted function algebra: coproduct transport mismatch");
    if (!(hv_counit(cp.hopf, erows[r]) == tw.hopf.counit[r]))
      throw check_failure("twisted function algebra: counit transport mismatch");
    SparseVec lhs_s = hv_antipode(cp.hopf, erows[r]);
    SparseVec rhs_s;
    for (size_t k = 0; k < n; ++k) {
      const Scalar& v = tw.hopf.antipode.at(k, r);
      if (v.is_zero()) continue;
      for (const auto& [c, w] : erows[k]) sv_add(rhs_s, c, v * w);
    }
    if (!(lhs_s == rhs_s))
      throw check_failure("twisted function algebra: antipode transport mismatch");
    SparseVec lhs_t = hv_star(cp.hopf, erows[r]);
    SparseVec rhs_t;
    for (size_t k = 0; k < n; ++k) {
      const Scalar& v = tw.hopf.star->at(k, r);
      if (v.is_zero()) continue;
      for (const auto& [c, w] : erows[k]) sv_add(rhs_t, c, v * w);
    }
    if (!(lhs_t == rhs_t))
      throw check_failure("twisted function algebra: star transport mismatch");
  }

  return TwistedFunctionAlgebra{in, std::move(act), std::move(tw), std::move(oa), std::move(hs)};
}

// ---------------------------------------------------------------------------
// Induced representations
// ---------------------------------------------------------------------------

// Representation of the crossed product O(G) x| Gamma on functions over the
// Gamma-orbit of a base point x:
//   rho(delta_z lambda_t) delta_y = [alpha_t(y) = z] delta_{alpha_t(y)}.
// crossed[z * |Gamma| + t] is the matrix of delta_z lambda_t on the basis
// {delta_y : y in points}.
struct InducedRep {
  int base = 0;
  std::vector<int> points;  // Gamma-orbit of base, ascending
  std::vector<Mat> crossed;
};

inline InducedRep induced_rep(const CQGInput& in, int x) {
  const FiniteGroup& g = in.group;
  const size_t n = g.order(), m = in.gamma.order();
  if (x < 0 || static_cast<size_t>(x) >= n) throw invalid_input("induced rep: base out of range");
  InducedRep rep;
  rep.base = x;
  std::set<int> pts;
  for (size_t t = 0; t < m; ++t) pts.insert(in.action.apply(static_cast<int>(t), x));
  rep.points.assign(pts.begin(), pts.end());
  const size_t d = rep.points.size();
  auto pos = [&](int y) {
    return static_cast<size_t>(
        std::lower_bound(rep.points.begin(), rep.points.end(), y) - rep.points.begin());
  };

  rep.crossed.assign(n * m, Mat(d, d));
  for (size_t t = 0; t < m; ++t)
    for (size_t yi = 0; yi < d; ++yi) {
      int z = in.action.apply(static_cast<int>(t), rep.points[yi]);
      rep.crossed[static_cast<size_t>(z) * m + t].at(pos(z), yi) = Scalar(1);
    }

  // Certify the crossed-product relations:
  //   (delta_z lambda_t)(delta_y lambda_s) = [z = alpha_t(y)] delta_z lambda_{ts}.
  const Mat zero(d, d);
  for (size_t z = 0; z < n; ++z)
    for (size_t t = 0; t < m; ++t)
      for (size_t y = 0; y < n; ++y)
        for (size_t s = 0; s < m; ++s) {
          Mat prod = rep.crossed[z * m + t] * rep.crossed[y * m + s];
          const Mat& expect =
              in.action.apply(static_cast<int>(t), static_cast<int>(y)) == static_cast<int>(z)
                  ? rep.crossed[z * m + detail::gadd(in.gamma, t, s)]
                  : zero;
          if (!(prod == expect)) throw check_failure("induced rep: product formula violated");
        }
  // Star: (delta_z lambda_t)^* = delta_{alpha_{t^{-1}}(z)} lambda_{t^{-1}}.
  for (size_t z = 0; z < n; ++z)
    for (size_t t = 0; t < m; ++t) {
      size_t ti = static_cast<size_t>(in.gamma.neg(static_cast<int>(t)));
      size_t zi = static_cast<size_t>(in.action.apply(static_cast<int>(ti), static_cast<int>(z)));
      if (!(rep.crossed[z * m + t].conjugated().transpose() == rep.crossed[zi * m + ti]))
        throw check_failure("induced rep: star formula violated");
    }
  // Unit: sum_z delta_z lambda_e = 1.
  Mat unit(d, d);
  for (size_t z = 0; z < n; ++z) unit = unit + rep.crossed[z * m + 0];
  if (!(unit == Mat::identity(d))) throw check_failure("induced rep: unit formula violated");
  return rep;
}

// Matrices of the twist basis under an induced representation (restriction
// of the crossed-product representation to the twisted function algebra).
inline std::vector<Mat> restrict_induced(const TwistedFunctionAlgebra& tfa, const InducedRep& rep) {
  const size_t n = tfa.twist.hopf.dim, m = tfa.input.gamma.order();
  const size_t d = rep.points.size();
  std::vector<Mat> out(n, Mat(d, d));
  for (size_t r = 0; r < n; ++r)
    for (int z : rep.points) {
      const Scalar& c = tfa.twist.homog_basis.at(r, static_cast<size_t>(z));
      if (c.is_zero()) continue;
      out[r] = out[r] + c * rep.crossed[static_cast<size_t>(z) * m + tfa.twist.basis_grade[r]];
    }
  return out;
}

// ---------------------------------------------------------------------------
// Representation utilities
// ---------------------------------------------------------------------------

// First violated condition for "matrices[r] is the image of basis r under a
// unital *-representation", if any.
inline std::optional<std::string> rep_defect(const FinHopf& h, const std::vector<Mat>& mats) {
  if (mats.size() != h.dim) return "one matrix per basis element required";
  const size_t d = mats.empty() ? 0 : mats[0].rows();
  Mat unit(d, d);
  for (const auto& [i, c] : h.unit) unit = unit + c * mats[i];
  if (!(unit == Mat::identity(d))) return "unit not mapped to the identity";
  for (size_t r = 0; r < h.dim; ++r)
    for (size_t s = 0; s < h.dim; ++s) {
      Mat rhs(d, d);
      for (const auto& [k, c] : h.mult[r][s]) rhs = rhs + c * mats[k];
      if (!(mats[r] * mats[s] == rhs))
        return "not multiplicative at pair (" + std::to_string(r) + ", " + std::to_string(s) + ")";
    }
  if (h.star) {
    for (size_t r = 0; r < h.dim; ++r) {
      Mat rhs(d, d);
      for (size_t k = 0; k < h.dim; ++k) {
        const Scalar& c = h.star->at(k, r);
        if (!c.is_zero()) rhs = rhs + c * mats[k];
      }
      if (!(rhs == mats[r].conjugated().transpose()))
        return "star not respected at basis " + std::to_string(r);
    }
  }
  return std::nullopt;
}

// Trace vector of a representation; characters of inequivalent irreducible
// representations are linearly independent, so the trace vector identifies
// a class uniquely.
inline Vec rep_character(const std::vector<Mat>& mats) {
  Vec out(mats.size(), Scalar(0));
  for (size_t r = 0; r < mats.size(); ++r)
    for (size_t i = 0; i < mats[r].rows(); ++i) out[r] += mats[r].at(i, i);
  return out;
}

// Tensor product representation through the coproduct.
inline std::vector<Mat> rep_tensor(const FinHopf& h, const std::vector<Mat>& a,
                                   const std::vector<Mat>& b) {
  const size_t da = a.empty() ? 0 : a[0].rows(), db = b.empty() ? 0 : b[0].rows();
  std::vector<Mat> out(h.dim, Mat(da * db, da * db));
  for (size_t r = 0; r < h.dim; ++r)
    for (const auto& [uv, c] : h.comult[r])
      out[r] = out[r] + c * Mat::kron(a[uv.first], b[uv.second]);
  return out;
}

// Contragredient representation x -> rep(S(x))^t.  (The transpose repairs
// the antipode's antimultiplicativity, so this is again a representation.)
inline std::vector<Mat> rep_dual(const FinHopf& h, const std::vector<Mat>& a) {
  std::vector<Mat> out;
  out.reserve(h.dim);
  const size_t d = a.empty() ? 0 : a[0].rows();
  for (size_t r = 0; r < h.dim; ++r) {
    Mat s(d, d);
    for (size_t k = 0; k < h.dim; ++k) {
      const Scalar& c = h.antipode.at(k, r);
      if (!c.is_zero()) s = s + c * a[k];
    }
    out.push_back(s.transpose());
  }
  return out;
}

// Basis of the space of intertwiners T with a[r] T = T b[r] for all r, as
// columns of row-major vectorized matrices (T maps the carrier of b into
// the carrier of a).
inline Mat intertwiner_basis(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  const size_t da = a.empty() ? 0 : a[0].rows(), db = b.empty() ? 0 : b[0].rows();
  const size_t nb = a.size();
  Mat sys(nb * da * db, da * db);
  for (size_t r = 0; r < nb; ++r)
    for (size_t i = 0; i < da; ++i)
      for (size_t j = 0; j < db; ++j) {
        size_t row = (r * da + i) * db + j;
        for (size_t k = 0; k < da; ++k)
          if (!a[r].at(i, k).is_zero()) sys.at(row, k * db + j) += a[r].at(i, k);
        for (size_t l = 0; l < db; ++l)
          if (!b[r].at(l, j).is_zero()) sys.at(row, i * db + l) -= b[r].at(l, j);
      }
  return kernel(sys);
}

inline size_t intertwiner_dimension(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  return intertwiner_basis(a, b).cols();
}

// ---------------------------------------------------------------------------
// Irreducible representations
// ---------------------------------------------------------------------------

// One equivalence class of irreducible *-representations of the twisted
// function algebra.  tag is "regular" for classes attached to free orbits
// (dimension |Gamma|) and "central" for the one-dimensional classes
// attached to centrally shifted orbits.
struct IrrepClass {
  std::string tag;
  size_t dim = 0;
  int orbit_rep = 0;  // least element of the underlying orbit in G
  size_t family = 0;  // orbit index in the orbit analysis
  std::vector<Mat> matrices;
};

struct IrrepTable {
  std::vector<IrrepClass> classes;
  std::vector<std::vector<size_t>> gamma_action;  // [t][c]: class of rho o alpha_t^{-1}
  std::vector<std::vector<size_t>> dual_action;   // [psi][c]: class of the psi-translate
  size_t trivial_class = 0;                       // class of the counit
  bool complete = false;                          // every orbit classified
  size_t sum_of_squares = 0;
  std::string flag;  // reasons for an intentionally partial table
};

namespace detail {

// Additive phase tables for the one-dimensional representations attached to
// a centrally shifted orbit.  The twisted product on the orbit reads
//   u_t u_s = omega(t, s) u_{t+s},  omega(t, s) = conj(<shift_t, s>),
// and a one-dimensional representation is a phase function mu with
//   mu(t) mu(s) = omega(t, s) mu(t+s).
// Solves for one phase exponent function in normal form over the invariant
// factors and verifies every instance of the defect equation; all solutions
// then differ by characters of Gamma.  Returns std::nullopt when the
// verification fails (the twisted product on the orbit is noncommutative
// and carries no one-dimensional representations).
inline std::optional<std::vector<std::vector<Rational>>> central_orbit_phases(
    const FiniteAbelianGroup& gamma, const std::vector<size_t>& shifts) {
  const size_t m = gamma.order();
  const size_t k = gamma.rank();
  auto w = [&](size_t t, size_t s) {  // additive exponent of omega(t, s)
    return (-DualCharacter(gamma, shifts[t]).value_additive(gamma, static_cast<int>(s))).mod1();
  };

  std::vector<Rational> base(m, Rational(0));
  std::vector<size_t> gen(k);
  for (size_t i = 0; i < k; ++i) {
    std::vector<long> e(k, 0);
    e[i] = 1;
    gen[i] = gamma.index(e);
  }
  // Pure powers of one generator: choose z_i = (1/d_i) sum_l w(l e_i, e_i)
  // so the telescoped exponents close up around the cycle, then
  //   base(a e_i) = a z_i - sum_{l=1}^{a-1} w(l e_i, e_i).
  for (size_t i = 0; i < k; ++i) {
    const long di = gamma.factors()[i];
    Rational wsum(0);
    size_t pw = 0;
    for (long l = 1; l < di; ++l) {
      pw = gadd(gamma, pw, gen[i]);
      wsum += w(pw, gen[i]);
    }
    const Rational zi = wsum / Rational(di);
    Rational partial(0);
    size_t cur = 0;
    for (long aa = 1; aa < di; ++aa) {
      cur = gadd(gamma, cur, gen[i]);
      base[cur] = (Rational(aa) * zi - partial).mod1();
      partial += w(cur, gen[i]);
    }
  }
  // Mixed tuples, ascending by index: split off the leading digit, whose
  // remainder has a strictly smaller index.
  for (size_t t = 1; t < m; ++t) {
    std::vector<long> tt = gamma.tuple(t);
    size_t lead = 0;
    while (lead < k && tt[lead] == 0) ++lead;
    std::vector<long> rest = tt;
    rest[lead] = 0;
    const size_t rest_idx = gamma.index(rest);
    if (rest_idx == 0) continue;  // pure power, already set
    std::vector<long> head(k, 0);
    head[lead] = tt[lead];
    const size_t head_idx = gamma.index(head);
    base[t] = (base[head_idx] + base[rest_idx] - w(head_idx, rest_idx)).mod1();
  }
  // Verify the defect equation everywhere.
  for (size_t t = 0; t < m; ++t)
    for (size_t s = 0; s < m; ++s)
      if (!((base[t] + base[s] - base[gadd(gamma, t, s)] - w(t, s)).mod1() == Rational(0)))
        return std::nullopt;

  std::vector<std::vector<Rational>> out(m, std::vector<Rational>(m));
  for (size_t c = 0; c < m; ++c) {
    DualCharacter chi(gamma, c);
    for (size_t t = 0; t < m; ++t)
      out[c][t] = (base[t] + chi.value_additive(gamma, static_cast<int>(t))).mod1();
  }
  return out;
}

}  // namespace detail

// Classifies the irreducible *-representations of the twisted function
// algebra by orbits:
//   - each free orbit contributes one class of dimension |Gamma|, the
//     induced representation at its least point;
//   - each centrally shifted orbit contributes |Gamma| one-dimensional
//     classes, obtained by solving the twisted phase equation on the orbit.
// Every class is certified to be a unital *-representation with
// one-dimensional commutant, and all classes are certified pairwise
// inequivalent.  When every orbit is classified, sum of dim^2 = |G| is
// enforced; otherwise the table reports itself as partial (flag lists the
// skipped orbits) and no completeness is claimed.
inline IrrepTable classify_irreps(const TwistedFunctionAlgebra& tfa) {
  const CQGInput& in = tfa.input;
  const FiniteGroup& g = in.group;
  const size_t n = g.order(), m = in.gamma.order();
  const FinHopf& h = tfa.twist.hopf;
  const OrbitAnalysis& oa = tfa.orbits;
  IrrepTable table;

  for (size_t o = 0; o < oa.orbits.size(); ++o) {
    const int base = oa.orbits[o][0];
    if (oa.regular[base]) {
      InducedRep rep = induced_rep(in, base);
      if (rep.points.size() != m)
        throw check_failure("irrep classification: free orbit with short carrier");
      IrrepClass cls;
      cls.tag = "regular";
      cls.dim = rep.points.size();
      cls.orbit_rep = base;
      cls.family = o;
      cls.matrices = restrict_induced(tfa, rep);
      table.classes.push_back(std::move(cls));
    } else if (oa.one_dim[base]) {
      if (oa.orbits[o].size() != m)
        throw check_failure("irrep classification: centrally shifted orbit of wrong size");
      auto phases = detail::central_orbit_phases(in.gamma, oa.shifts[base]);
      if (!phases) {
        if (!table.flag.empty()) table.flag += "; ";
        table.flag += "orbit of " + g.name(static_cast<size_t>(base)) +
                      " admits no one-dimensional classification (noncommutative twisted "
                      "product on the orbit)";
        continue;
      }
      for (size_t c = 0; c < m; ++c) {
        IrrepClass cls;
        cls.tag = "central";
        cls.dim = 1;
        cls.orbit_rep = base;
        cls.family = o;
        cls.matrices.assign(n, Mat(1, 1));
        for (size_t r = 0; r < n; ++r)
          cls.matrices[r].at(0, 0) = tfa.twist.homog_basis.at(r, static_cast<size_t>(base)) *
                                     Scalar::root_of_unity((*phases)[c][tfa.twist.basis_grade[r]]);
        table.classes.push_back(std::move(cls));
      }
    } else {
      if (!table.flag.empty()) table.flag += "; ";
      table.flag += "orbit of " + g.name(static_cast<size_t>(base)) +
                    " is neither free nor centrally shifted";
    }
  }
  table.complete = table.flag.empty();

  // Certification: unital *-representations, irreducible, pairwise
  // inequivalent; dimension count when complete.
  for (size_t c = 0; c < table.classes.size(); ++c) {
    if (auto defect = rep_defect(h, table.classes[c].matrices))
      throw check_failure("irrep classification: class " + std::to_string(c) + ": " + *defect);
    if (intertwiner_dimension(table.classes[c].matrices, table.classes[c].matrices) != 1)
      throw check_failure("irrep classification: class " + std::to_string(c) +
                          " has a commutant of dimension > 1");
    table.sum_of_squares += table.classes[c].dim * table.classes[c].dim;
  }
  for (size_t c = 0; c < table.classes.size(); ++c)
    for (size_t d = c + 1; d < table.classes.size(); ++d) {
      if (table.classes[c].dim != table.classes[d].dim) continue;
      if (intertwiner_dimension(table.classes[c].matrices, table.classes[d].matrices) != 0)
        throw check_failure("irrep classification: classes " + std::to_string(c) + " and " +
                            std::to_string(d) + " are equivalent");
    }
  if (table.complete && table.sum_of_squares != n)
    throw check_failure("irrep classification: sum of squared dimensions is " +
                        std::to_string(table.sum_of_squares) + ", expected " + std::to_string(n));

  // Locate the counit class.
  {
    bool found = false;
    for (size_t c = 0; c < table.classes.size() && !found; ++c) {
      if (table.classes[c].dim != 1) continue;
      bool eq = true;
      for (size_t r = 0; r < n && eq; ++r)
        if (!(table.classes[c].matrices[r].at(0, 0) == h.counit[r])) eq = false;
      if (eq) {
        table.trivial_class = c;
        found = true;
      }
    }
    if (!found) throw check_failure("irrep classification: counit class missing");
  }

  // Class actions: both the acting group and its dual permute the classes;
  // targets are located by exact trace-vector match.
  std::vector<Vec> chars(table.classes.size());
  for (size_t c = 0; c < table.classes.size(); ++c)
    chars[c] = rep_character(table.classes[c].matrices);
  auto match_class = [&](const Vec& ch) {
    std::optional<size_t> hit;
    for (size_t c = 0; c < table.classes.size(); ++c)
      if (chars[c] == ch) {
        if (hit) throw check_failure("irrep classification: ambiguous class match");
        hit = c;
      }
    if (!hit) throw check_failure("irrep classification: transformed class left the table");
    return *hit;
  };
  auto require_equivalence = [&](const std::vector<Mat>& a, const std::vector<Mat>& b, size_t d,
                                 const std::string& what) {
    Mat iw = intertwiner_basis(a, b);
    if (iw.cols() != 1)
      throw check_failure("irrep classification: missing intertwiner for " + what);
    Mat tmat(d, d);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) tmat.at(i, j) = iw.at(i * d + j, 0);
    if (rank(tmat) != d)
      throw check_failure("irrep classification: singular intertwiner for " + what);
  };

  table.gamma_action.assign(m, std::vector<size_t>(table.classes.size()));
  table.dual_action.assign(m, std::vector<size_t>(table.classes.size()));
  for (size_t t = 0; t < m; ++t) {
    const size_t ti = static_cast<size_t>(in.gamma.neg(static_cast<int>(t)));
    const Mat& am = tfa.twist.alpha_tilde[ti];
    for (size_t c = 0; c < table.classes.size(); ++c) {
      const auto& mats = table.classes[c].matrices;
      const size_t d = table.classes[c].dim;
      std::vector<Mat> moved(n, Mat(d, d));
      for (size_t r = 0; r < n; ++r)
        for (size_t s = 0; s < n; ++s) {
          const Scalar& cf = am.at(s, r);
          if (!cf.is_zero()) moved[r] = moved[r] + cf * mats[s];
        }
      table.gamma_action[t][c] = match_class(rep_character(moved));
      if (table.classes[c].tag == "regular") {
        if (table.gamma_action[t][c] != c)
          throw check_failure("irrep classification: free-orbit class moved by the group action");
        require_equivalence(moved, mats, d, "the group action on a free-orbit class");
      }
    }
  }
  for (size_t p = 0; p < m; ++p) {
    DualCharacter psi(in.gamma, p);
    for (size_t c = 0; c < table.classes.size(); ++c) {
      const auto& mats = table.classes[c].matrices;
      const size_t d = table.classes[c].dim;
      std::vector<Mat> moved(n, Mat(d, d));
      for (size_t r = 0; r < n; ++r)
        moved[r] =
            psi.value(in.gamma, static_cast<int>(tfa.twist.basis_grade[r])).conjugate() * mats[r];
      table.dual_action[p][c] = match_class(rep_character(moved));
      if (table.classes[c].tag == "regular") {
        if (table.dual_action[p][c] != c)
          throw check_failure("irrep classification: free-orbit class moved by the dual action");
        require_equivalence(moved, mats, d, "the dual action on a free-orbit class");
      }
    }
  }

  // Central families: the dual action is transitive on the |Gamma| classes
  // of each centrally shifted orbit, and the group action preserves each
  // family.
  std::map<size_t, std::vector<size_t>> families;
  for (size_t c = 0; c < table.classes.size(); ++c)
    if (table.classes[c].tag == "central") families[table.classes[c].family].push_back(c);
  for (const auto& [fam, members] : families) {
    std::set<size_t> reached;
    for (size_t p = 0; p < m; ++p) reached.insert(table.dual_action[p][members[0]]);
    if (reached != std::set<size_t>(members.begin(), members.end()))
      throw check_failure("irrep classification: dual action not transitive on a central family");
    for (size_t t = 0; t < m; ++t)
      for (size_t c : members)
        if (table.classes[table.gamma_action[t][c]].family != fam)
          throw check_failure("irrep classification: group action left a central family");
  }

  return table;
}

inline IrrepTable classify_irreps(const CQGInput& in) {
  return classify_irreps(build_twisted_function_algebra(in));
}

// ---------------------------------------------------------------------------
// Subgroups and restriction
// ---------------------------------------------------------------------------

// Induced data on an invariant subgroup containing the embedded dual: the
// subgroup with its restricted multiplication, the same Gamma, the embedded
// elements re-indexed, and the restricted action.
inline CQGInput subgroup_input(const CQGInput& in, std::vector<int> elements) {
  const FiniteGroup& g = in.group;
  const size_t m = in.gamma.order();
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  const size_t k = elements.size();
  std::map<int, size_t> pos;
  for (size_t i = 0; i < k; ++i) {
    if (elements[i] < 0 || static_cast<size_t>(elements[i]) >= g.order())
      throw invalid_input("subgroup input: element out of range");
    pos[elements[i]] = i;
  }
  std::vector<std::vector<int>> table(k, std::vector<int>(k));
  std::vector<std::string> names(k);
  for (size_t i = 0; i < k; ++i) {
    names[i] = g.name(static_cast<size_t>(elements[i]));
    for (size_t j = 0; j < k; ++j) {
      auto it = pos.find(g.mul(elements[i], elements[j]));
      if (it == pos.end()) throw invalid_input("subgroup input: set is not closed");
      table[i][j] = static_cast<int>(it->second);
    }
  }
  std::vector<size_t> embed(m);
  for (size_t p = 0; p < m; ++p) {
    auto it = pos.find(static_cast<int>(in.embed[p]));
    if (it == pos.end()) throw invalid_input("subgroup input: subgroup misses an embedded element");
    embed[p] = it->second;
  }
  std::vector<std::vector<int>> perms(m, std::vector<int>(k));
  for (size_t t = 0; t < m; ++t)
    for (size_t i = 0; i < k; ++i) {
      auto it = pos.find(in.action.apply(static_cast<int>(t), elements[i]));
      if (it == pos.end()) throw invalid_input("subgroup input: subgroup is not invariant");
      perms[t][i] = static_cast<int>(it->second);
    }
  return make_cqg_input(FiniteGroup(std::move(table), std::move(names)), in.gamma,
                        std::move(embed), std::move(perms));
}

// Restriction of functions from G to an invariant subgroup, as a surjective
// Hopf *-algebra map between the twisted function algebras.
struct RestrictionMap {
  TwistedFunctionAlgebra sub;
  Mat map;  // sub-twist coordinates x big-twist coordinates
};

inline RestrictionMap restriction_map(const TwistedFunctionAlgebra& tfa,
                                      const std::vector<int>& elements) {
  TwistedFunctionAlgebra sub = build_twisted_function_algebra(subgroup_input(tfa.input, elements));
  std::vector<int> sorted = elements;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const size_t k = sorted.size(), n = tfa.twist.hopf.dim;
  Mat map(k, n);
  for (size_t r = 0; r < n; ++r) {
    Vec restricted(k, Scalar(0));
    for (size_t i = 0; i < k; ++i)
      restricted[i] = tfa.twist.homog_basis.at(r, static_cast<size_t>(sorted[i]));
    Vec coords = sub.twist.j_map.apply(restricted);
    for (size_t i = 0; i < k; ++i) map.at(i, r) = coords[i];
  }
  if (auto defect = detail::hopf_map_defect(tfa.twist.hopf, sub.twist.hopf, map))
    throw check_failure("restriction map: " + *defect);
  if (rank(map) != k) throw check_failure("restriction map: not surjective");
  return RestrictionMap{std::move(sub), std::move(map)};
}

// ---------------------------------------------------------------------------
// Subgroup correspondence
// ---------------------------------------------------------------------------

// Matching between Hopf *-ideals of the twisted function algebra with
// noncommutative quotient and invariant subgroups containing the embedded
// dual and a free point.
//
// The ideal side is enumerated exhaustively from the irreducible classes:
// by semisimplicity every Hopf *-ideal is the joint kernel of a set of
// classes that contains the counit class and is closed under duals and
// under the constituents of tensor products; each such candidate is then
// certified directly (two-sided ideal, coideal, antipode- and star-stable,
// counit-annihilated).  The quotient is noncommutative exactly when a
// surviving class has dimension > 1.
//
// For a trivial acting group the twisted algebra is O(G) itself and every
// quotient algebra is commutative; the matching then degenerates to the
// classical duality, pairing quotients with noncommutative convolution
// (non-cocommutative quotients) with nonabelian subgroups.
//
// When the correspondence hypotheses hold, any mismatch raises check_failure
// with a witness; otherwise the result is informational and mismatches are
// recorded in the note.
struct SubgroupCorrespondence {
  std::vector<std::vector<size_t>> ideal_survivors;  // surviving class sets, one per ideal
  std::vector<Mat> ideal_bases;                      // row-space basis of each ideal
  std::vector<std::vector<int>> subgroups;           // qualifying subgroups
  std::vector<size_t> subgroup_to_ideal;
  bool informational_only = false;
  bool bijective = false;
  std::string note;
};

inline SubgroupCorrespondence subgroup_correspondence(const TwistedFunctionAlgebra& tfa,
                                                      const IrrepTable& table) {
  const CQGInput& in = tfa.input;
  const FiniteGroup& g = in.group;
  const FinHopf& h = tfa.twist.hopf;
  const size_t n = g.order(), m = in.gamma.order();
  SubgroupCorrespondence out;
  out.informational_only = !tfa.hypothesis.holds;
  out.note = tfa.hypothesis.note;
  if (m == 1) {
    if (!out.note.empty()) out.note += "; ";
    out.note +=
        "trivial acting group: matching non-cocommutative quotients against nonabelian "
        "subgroups";
  }

  // Right side: invariant subgroups containing the embedded dual; for a
  // nontrivial acting group they must contain a free point (equivalently,
  // their twisted algebra is noncommutative); for the trivial group the
  // classical condition is nonabelianness.
  std::vector<size_t> embedset(in.embed);
  std::sort(embedset.begin(), embedset.end());
  for (const auto& sub : g.all_subgroups()) {
    bool ok = true;
    for (size_t e : embedset)
      if (!std::binary_search(sub.begin(), sub.end(), static_cast<int>(e))) ok = false;
    for (size_t t = 0; t < m && ok; ++t)
      for (int x : sub)
        if (!std::binary_search(sub.begin(), sub.end(), in.action.apply(static_cast<int>(t), x))) {
          ok = false;
          break;
        }
    if (!ok) continue;
    if (m > 1) {
      bool has_free = false;
      for (int x : sub)
        if (tfa.orbits.regular[x]) has_free = true;
      if (!has_free) continue;
    } else {
      bool abelian = true;
      for (int x : sub)
        for (int y : sub)
          if (g.mul(x, y) != g.mul(y, x)) abelian = false;
      if (abelian) continue;
    }
    out.subgroups.push_back(sub);
  }

  // Left side requires the complete table.
  if (!table.complete) {
    if (!out.note.empty()) out.note += "; ";
    out.note += "irrep table incomplete - ideal enumeration skipped";
    out.informational_only = true;
    return out;
  }
  const size_t k = table.classes.size();
  if (k > 20) throw resource_limit("subgroup correspondence: too many irreducible classes");

  std::vector<Vec> chars(k);
  for (size_t c = 0; c < k; ++c) chars[c] = rep_character(table.classes[c].matrices);
  Mat charmat(n, k);
  for (size_t c = 0; c < k; ++c)
    for (size_t r = 0; r < n; ++r) charmat.at(r, c) = chars[c][r];

  // Constituent sets by character decomposition.
  auto decompose = [&](const Vec& ch, size_t total_dim) {
    LinearSolution sol = solve_linear(charmat, ch);
    if (!sol.consistent || sol.kernel.cols() != 0)
      throw check_failure("subgroup correspondence: character decomposition failed");
    uint32_t mask = 0;
    Rational dim(0);
    for (size_t c = 0; c < k; ++c) {
      const Scalar& mc = sol.particular[c];
      if (mc.is_zero()) continue;
      if (!mc.is_rational() || !mc.rational_part().is_integer() || mc.rational_part() < Rational(0))
        throw check_failure("subgroup correspondence: non-integral tensor multiplicity");
      mask |= (1u << c);
      dim += mc.rational_part() * Rational(static_cast<long>(table.classes[c].dim));
    }
    if (!(dim == Rational(static_cast<long>(total_dim))))
      throw check_failure("subgroup correspondence: tensor decomposition dimension mismatch");
    return mask;
  };

  std::vector<std::vector<uint32_t>> constituents(k, std::vector<uint32_t>(k));
  for (size_t a = 0; a < k; ++a)
    for (size_t b = 0; b < k; ++b) {
      Vec ch(n, Scalar(0));
      for (size_t r = 0; r < n; ++r)
        for (const auto& [uv, cf] : h.comult[r])
          ch[r] += cf * chars[a][uv.first] * chars[b][uv.second];
      constituents[a][b] = decompose(ch, table.classes[a].dim * table.classes[b].dim);
    }
  std::vector<size_t> dual_of(k);
  for (size_t c = 0; c < k; ++c) {
    Vec ch(n, Scalar(0));
    for (size_t r = 0; r < n; ++r)
      for (size_t s = 0; s < n; ++s) {
        const Scalar& cf = h.antipode.at(s, r);
        if (!cf.is_zero()) ch[r] += cf * chars[c][s];
      }
    std::optional<size_t> hit;
    for (size_t d = 0; d < k; ++d)
      if (chars[d] == ch) hit = d;
    if (!hit) throw check_failure("subgroup correspondence: dual class missing from the table");
    dual_of[c] = *hit;
  }

  // Enumerate admissible surviving sets and certify each candidate ideal.
  for (uint32_t mask = 1; mask < (1u << k); ++mask) {
    if (!(mask & (1u << table.trivial_class))) continue;
    bool closed = true;
    for (size_t c = 0; c < k && closed; ++c) {
      if (!(mask & (1u << c))) continue;
      if (!(mask & (1u << dual_of[c]))) closed = false;
      for (size_t d = 0; d < k && closed; ++d) {
        if (!(mask & (1u << d))) continue;
        if ((constituents[c][d] & ~mask) != 0) closed = false;
      }
    }
    if (!closed) continue;

    // Noncommutative quotient?
    bool keep = false;
    if (m > 1) {
      for (size_t c = 0; c < k; ++c)
        if ((mask & (1u << c)) && table.classes[c].dim > 1) keep = true;
    } else {
      // Non-cocommutative quotient: some surviving pair separates the
      // coproduct from its opposite.  (All classes are one-dimensional
      // here: a trivial acting group leaves every point free with a
      // singleton orbit.)
      for (size_t a = 0; a < k && !keep; ++a) {
        if (!(mask & (1u << a))) continue;
        for (size_t b = 0; b < k && !keep; ++b) {
          if (!(mask & (1u << b))) continue;
          for (size_t r = 0; r < n && !keep; ++r) {
            Scalar straight(0), opposite(0);
            for (const auto& [uv, cf] : h.comult[r]) {
              straight += cf * table.classes[a].matrices[uv.first].at(0, 0) *
                          table.classes[b].matrices[uv.second].at(0, 0);
              opposite += cf * table.classes[a].matrices[uv.second].at(0, 0) *
                          table.classes[b].matrices[uv.first].at(0, 0);
            }
            if (!(straight == opposite)) keep = true;
          }
        }
      }
    }
    if (!keep) continue;

    // Joint kernel of the surviving classes, certified as a Hopf *-ideal.
    size_t rows = 0;
    for (size_t c = 0; c < k; ++c)
      if (mask & (1u << c)) rows += table.classes[c].dim * table.classes[c].dim;
    Mat phi(rows, n);
    size_t cursor = 0;
    for (size_t c = 0; c < k; ++c) {
      if (!(mask & (1u << c))) continue;
      const size_t d = table.classes[c].dim;
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
          for (size_t r = 0; r < n; ++r) phi.at(cursor, r) = table.classes[c].matrices[r].at(i, j);
          ++cursor;
        }
    }
    Mat jker = kernel(phi);
    auto in_ideal = [&](const Vec& v) {
      for (const Scalar& s : phi.apply(v))
        if (!s.is_zero()) return false;
      return true;
    };
    for (size_t col = 0; col < jker.cols(); ++col) {
      Vec v(n, Scalar(0));
      for (size_t r = 0; r < n; ++r) v[r] = jker.at(r, col);
      Scalar eps(0);
      for (size_t r = 0; r < n; ++r) eps += v[r] * h.counit[r];
      if (!eps.is_zero())
        throw check_failure("subgroup correspondence: candidate ideal not counit-annihilated");
      if (!in_ideal(h.antipode.apply(v)))
        throw check_failure("subgroup correspondence: candidate ideal not antipode-stable");
      Vec vconj(n, Scalar(0));
      for (size_t r = 0; r < n; ++r) vconj[r] = v[r].conjugate();
      if (!in_ideal(h.star->apply(vconj)))
        throw check_failure("subgroup correspondence: candidate ideal not star-stable");
      for (size_t r = 0; r < n; ++r) {
        Vec left(n, Scalar(0)), right(n, Scalar(0));
        for (size_t s = 0; s < n; ++s) {
          if (v[s].is_zero()) continue;
          for (const auto& [kk, cf] : h.mult[r][s]) left[kk] += cf * v[s];
          for (const auto& [kk, cf] : h.mult[s][r]) right[kk] += cf * v[s];
        }
        if (!in_ideal(left) || !in_ideal(right))
          throw check_failure("subgroup correspondence: candidate is not a two-sided ideal");
      }
      // Coideal: (rho_a x rho_b)(Delta v) = 0 for surviving a, b.
      for (size_t acls = 0; acls < k; ++acls) {
        if (!(mask & (1u << acls))) continue;
        for (size_t bcls = 0; bcls < k; ++bcls) {
          if (!(mask & (1u << bcls))) continue;
          const size_t da = table.classes[acls].dim, db = table.classes[bcls].dim;
          Mat acc(da * db, da * db);
          for (size_t r = 0; r < n; ++r) {
            if (v[r].is_zero()) continue;
            for (const auto& [uv, cf] : h.comult[r])
              acc = acc + (cf * v[r]) * Mat::kron(table.classes[acls].matrices[uv.first],
                                                  table.classes[bcls].matrices[uv.second]);
          }
          if (!(acc == Mat(da * db, da * db)))
            throw check_failure("subgroup correspondence: candidate is not a coideal");
        }
      }
    }

    std::vector<size_t> survivors;
    for (size_t c = 0; c < k; ++c)
      if (mask & (1u << c)) survivors.push_back(c);
    out.ideal_survivors.push_back(std::move(survivors));
    out.ideal_bases.push_back(row_space(jker.transpose()));
  }

  // Match subgroups to ideals through the kernels of restriction maps.
  out.subgroup_to_ideal.assign(out.subgroups.size(), 0);
  std::vector<bool> hit(out.ideal_survivors.size(), false);
  bool ok = true;
  std::string witness;
  for (size_t si = 0; si < out.subgroups.size() && ok; ++si) {
    RestrictionMap rm = restriction_map(tfa, out.subgroups[si]);
    Mat ker_rows = row_space(kernel(rm.map).transpose());
    std::optional<size_t> found;
    for (size_t ii = 0; ii < out.ideal_bases.size(); ++ii)
      if (ker_rows.rows() == out.ideal_bases[ii].rows() &&
          same_row_space(ker_rows, out.ideal_bases[ii])) {
        found = ii;
        break;
      }
    if (!found) {
      ok = false;
      witness = "the subgroup of order " + std::to_string(out.subgroups[si].size()) +
                " through " + g.name(static_cast<size_t>(out.subgroups[si].back())) +
                " induces an ideal outside the enumeration";
    } else if (hit[*found]) {
      ok = false;
      witness = "two subgroups induce the same ideal";
    } else {
      hit[*found] = true;
      out.subgroup_to_ideal[si] = *found;
    }
  }
  if (ok)
    for (size_t ii = 0; ii < hit.size(); ++ii)
      if (!hit[ii]) {
        ok = false;
        witness = "the ideal with surviving classes {";
        for (size_t c : out.ideal_survivors[ii]) witness += " " + std::to_string(c);
        witness += " } is induced by no subgroup";
      }
  out.bijective = ok;
  if (!ok) {
    if (out.informational_only) {
      out.note += "; correspondence failed: " + witness;
    } else {
      throw check_failure("subgroup correspondence: " + witness);
    }
  }
  return out;
}

inline SubgroupCorrespondence subgroup_correspondence(const CQGInput& in) {
  TwistedFunctionAlgebra tfa = build_twisted_function_algebra(in);
  IrrepTable table = classify_irreps(tfa);
  return subgroup_correspondence(tfa, table);
}

// ---------------------------------------------------------------------------
// Dual pairing check
// ---------------------------------------------------------------------------

// For a free base point x and a dual element psi, decides whether the
// one-dimensional representation attached to i(psi) embeds into
// rho_x tensor rho_x^vee (contragredient through the antipode and a
// transpose).  The ideal correspondence rests on this containment holding
// for every free point and every psi.
inline bool dual_pairing_check(const TwistedFunctionAlgebra& tfa, int x, size_t psi) {
  const CQGInput& in = tfa.input;
  if (x < 0 || static_cast<size_t>(x) >= in.group.order())
    throw invalid_input("dual pairing check: base point out of range");
  if (!tfa.orbits.regular[x]) throw invalid_input("dual pairing check: base point must be free");
  if (psi >= in.gamma.order()) throw invalid_input("dual pairing check: dual index out of range");

  std::vector<Mat> rho = restrict_induced(tfa, induced_rep(in, x));
  std::vector<Mat> tensor = rep_tensor(tfa.twist.hopf, rho, rep_dual(tfa.twist.hopf, rho));
  std::vector<Mat> central =
      restrict_induced(tfa, induced_rep(in, static_cast<int>(in.embed[psi])));
  if (central.empty() || central[0].rows() != 1)
    throw check_failure("dual pairing check: central point carries a non-scalar representation");
  return intertwiner_dimension(tensor, central) > 0;
}

}  // namespace hopftwist

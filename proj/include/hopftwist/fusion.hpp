#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopftwist/chartable.hpp"
#include "hopftwist/intmat.hpp"

namespace hopftwist {

// Fusion ring on a finite basis of simple classes: structure constants
// N^k_{ij} are nonnegative integers, `unit` is a two-sided identity and
// `dual` an involution with N^unit_{ij} = [j = dual(i)].
//
// Rings with infinitely many simples (spin-type fusion rules) are carried in
// truncated form: `level` assigns a nonnegative height to every stored
// simple, products are recorded completely for pairs whose level sum stays
// within `cutoff` (components above the cutoff are omitted), and every check
// quantifies only over triples that remain inside the stored range.
struct FusionRing {
  std::vector<std::string> labels;
  size_t unit = 0;
  std::vector<size_t> dual;
  std::vector<std::vector<std::map<size_t, long>>> tensor;  // tensor[i][j][k] = N^k_{ij}
  std::optional<std::vector<long>> level;
  long cutoff = 0;

  size_t rank() const { return labels.size(); }
  long coeff(size_t i, size_t j, size_t k) const {
    auto it = tensor[i][j].find(k);
    return it == tensor[i][j].end() ? 0 : it->second;
  }
};

namespace detail {

// A pair product is stored completely when every component the untruncated
// ring could produce lies within the cutoff.
inline bool pair_complete(const FusionRing& r, size_t i, size_t j) {
  return !r.level || (*r.level)[i] + (*r.level)[j] <= r.cutoff;
}

}  // namespace detail

inline void validate_fusion_ring(const FusionRing& r) {
  const size_t n = r.rank();
  if (n == 0) throw invalid_input("fusion ring: empty basis");
  if (r.dual.size() != n || r.tensor.size() != n)
    throw invalid_input("fusion ring: table shape mismatch");
  for (const auto& row : r.tensor)
    if (row.size() != n) throw invalid_input("fusion ring: table shape mismatch");
  if (r.unit >= n) throw invalid_input("fusion ring: unit index out of range");
  if (r.level) {
    if (r.level->size() != n) throw invalid_input("fusion ring: level list size mismatch");
    for (long l : *r.level)
      if (l < 0) throw invalid_input("fusion ring: negative level");
    if ((*r.level)[r.unit] != 0) throw invalid_input("fusion ring: unit must sit at level 0");
  }

  for (size_t i = 0; i < n; ++i) {
    if (r.dual[i] >= n || r.dual[r.dual[i]] != i)
      throw invalid_input("fusion ring: duality is not an involution");
    if (r.level && (*r.level)[r.dual[i]] != (*r.level)[i])
      throw invalid_input("fusion ring: duality must preserve levels");
    for (size_t j = 0; j < n; ++j)
      for (const auto& [k, m] : r.tensor[i][j]) {
        if (k >= n) throw invalid_input("fusion ring: component index out of range");
        if (m <= 0) throw invalid_input("fusion ring: structure constants must be positive");
        if (r.level && (*r.level)[k] > (*r.level)[i] + (*r.level)[j])
          throw invalid_input("fusion ring: component above the level of its factors");
      }
  }

  // Unit is a two-sided identity.
  for (size_t j = 0; j < n; ++j) {
    if (r.tensor[r.unit][j] != std::map<size_t, long>{{j, 1}} ||
        r.tensor[j][r.unit] != std::map<size_t, long>{{j, 1}})
      throw invalid_input("fusion ring: unit is not a two-sided identity");
  }

  // The unit appears in i (x) j exactly when j is the dual of i.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!detail::pair_complete(r, i, j)) continue;
      long want = (j == r.dual[i]) ? 1 : 0;
      if (r.coeff(i, j, r.unit) != want)
        throw invalid_input("fusion ring: unit multiplicity breaks Frobenius duality");
    }

  // Associativity over all completely stored triples.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        if (r.level && (*r.level)[i] + (*r.level)[j] + (*r.level)[k] > r.cutoff) continue;
        for (size_t l = 0; l < n; ++l) {
          long lhs = 0, rhs = 0;
          for (const auto& [m, c] : r.tensor[i][j]) lhs += c * r.coeff(m, k, l);
          for (const auto& [m, c] : r.tensor[j][k]) rhs += c * r.coeff(i, m, l);
          if (lhs != rhs) throw invalid_input("fusion ring: product is not associative");
        }
      }
}

inline bool fusion_commutative(const FusionRing& r) {
  for (size_t i = 0; i < r.rank(); ++i)
    for (size_t j = 0; j < i; ++j)
      if (r.tensor[i][j] != r.tensor[j][i]) return false;
  return true;
}

// ---- Builders --------------------------------------------------------------

// Group ring of a finite group: basis the group elements, product the group
// law, duals the inverses.
inline FusionRing pointed_fusion_ring(const FiniteGroup& g) {
  const size_t n = g.order();
  FusionRing r;
  r.unit = static_cast<size_t>(g.identity());
  for (size_t i = 0; i < n; ++i) {
    r.labels.push_back(g.name(i));
    r.dual.push_back(static_cast<size_t>(g.inverse(static_cast<int>(i))));
  }
  r.tensor.assign(n, std::vector<std::map<size_t, long>>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      r.tensor[i][j][static_cast<size_t>(g.mul(static_cast<int>(i), static_cast<int>(j)))] = 1;
  validate_fusion_ring(r);
  return r;
}

// Spin-type fusion rules X_a (x) X_b = sum of X_c for |a-b| <= c <= a+b with
// c = a+b (mod 2), truncated at label `max_label` (labels are twice the spin).
inline FusionRing truncated_spin_fusion_ring(long max_label) {
  if (max_label < 0) throw invalid_input("spin fusion ring: negative cutoff");
  const size_t n = static_cast<size_t>(max_label) + 1;
  FusionRing r;
  r.unit = 0;
  r.level = std::vector<long>();
  r.cutoff = max_label;
  for (size_t a = 0; a < n; ++a) {
    r.labels.push_back(std::to_string(a));
    r.dual.push_back(a);
    r.level->push_back(static_cast<long>(a));
  }
  r.tensor.assign(n, std::vector<std::map<size_t, long>>(n));
  for (long a = 0; a <= max_label; ++a)
    for (long b = 0; b <= max_label; ++b)
      for (long c = std::abs(a - b); c <= std::min(a + b, max_label); c += 2)
        r.tensor[a][b][static_cast<size_t>(c)] = 1;
  validate_fusion_ring(r);
  return r;
}

// Representation ring of a finite group from its character table:
// N^k_{ij} = (1/|G|) sum_C |C| chi_i chi_j conj(chi_k), which the
// orthogonality relations force to be a nonnegative integer.
inline FusionRing rep_fusion_ring(const CharacterTable& ct) {
  const size_t r = ct.irrep_count();
  const long n = [&] {
    long s = 0;
    for (size_t k = 0; k < ct.cls.count(); ++k) s += ct.cls.size_of(k);
    return s;
  }();
  FusionRing out;
  out.tensor.assign(r, std::vector<std::map<size_t, long>>(r));
  out.dual.assign(r, r);
  for (size_t i = 0; i < r; ++i) {
    out.labels.push_back("X" + std::to_string(i) + "(dim " + std::to_string(ct.degrees[i]) + ")");
    if (ct.chi[i][0] == Scalar(1)) {
      bool trivial = true;
      for (const auto& v : ct.chi[i]) trivial = trivial && v == Scalar(1);
      if (trivial) out.unit = i;
    }
    for (size_t j = 0; j < r; ++j) {
      bool conj_row = true;
      for (size_t k = 0; k < ct.cls.count() && conj_row; ++k)
        conj_row = ct.chi[j][k] == ct.chi[i][k].conjugate();
      if (conj_row) out.dual[i] = j;
    }
    if (out.dual[i] == r) throw invalid_input("representation ring: missing conjugate character");
  }
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < r; ++j)
      for (size_t k = 0; k < r; ++k) {
        Scalar sum(0);
        for (size_t c = 0; c < ct.cls.count(); ++c)
          sum += Scalar(Rational(ct.cls.size_of(c))) * ct.chi[i][c] * ct.chi[j][c] *
                 ct.chi[k][c].conjugate();
        Scalar mult = sum / Scalar(Rational(n));
        if (!mult.is_rational() || !mult.rational_part().is_integer() ||
            mult.rational_part() < Rational(0))
          throw check_failure("representation ring: multiplicity is not a nonnegative integer");
        long m = static_cast<long>(mult.rational_part().num().get_si());
        if (m > 0) out.tensor[i][j][k] = m;
      }
  validate_fusion_ring(out);
  return out;
}

// ---- Universal grading (chain group) ---------------------------------------

// The group of degrees of a fusion ring: one generator per simple class,
// one relation deg(i) + deg(j) = deg(k) per nonzero N^k_{ij}.  The integer
// normal form of the relation matrix yields the invariant factors and the
// degree of every simple.  The presentation is imposed in abelianized form;
// when the ring is noncommutative nothing forces the genuine degree group to
// be abelian, and `abelianized` records that only its abelianization was
// computed.
struct ChainGroupResult {
  FiniteAbelianGroup group;
  std::vector<size_t> degree;  // simple -> element index in `group`
  bool abelianized = false;
};

inline ChainGroupResult chain_group(const FusionRing& r) {
  const size_t n = r.rank();
  std::vector<std::array<size_t, 3>> relations;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (const auto& [k, m] : r.tensor[i][j])
        if (m > 0) relations.push_back({i, j, k});
  if (relations.empty()) throw invalid_input("chain group: ring has no products");

  // Columns of M are the relations e_i + e_j - e_k; the degree group is the
  // cokernel of M, read off from U M V = D as x -> (U x mod diag).
  ZMat m(n, relations.size());
  for (size_t c = 0; c < relations.size(); ++c) {
    m.at(relations[c][0], c) += 1;
    m.at(relations[c][1], c) += 1;
    m.at(relations[c][2], c) -= 1;
  }
  SmithForm sf = smith_normal_form(m);

  std::vector<long> factors;
  std::vector<size_t> coord_rows;
  for (size_t i = 0; i < n; ++i) {
    Integer d = i < sf.diag.size() ? sf.diag[i] : Integer(0);
    if (d == 0) throw check_failure("chain group: presentation has an infinite factor");
    if (d > 1) {
      factors.push_back(static_cast<long>(d.get_si()));
      coord_rows.push_back(i);
    }
  }
  ChainGroupResult out{FiniteAbelianGroup(factors), {}, !fusion_commutative(r)};

  for (size_t j = 0; j < n; ++j) {
    std::vector<long> t(coord_rows.size());
    for (size_t a = 0; a < coord_rows.size(); ++a) {
      Integer f(factors[a]);
      Integer v = ((sf.u.at(coord_rows[a], j) % f) + f) % f;
      t[a] = static_cast<long>(v.get_si());
    }
    out.degree.push_back(out.group.index(t));
  }

  // The degrees must realize the relations and reach every group element.
  if (out.degree[r.unit] != 0) throw check_failure("chain group: unit degree is nonzero");
  std::vector<bool> hit(out.group.order(), false);
  for (size_t i = 0; i < n; ++i) {
    hit[out.degree[i]] = true;
    if (out.degree[r.dual[i]] !=
        static_cast<size_t>(out.group.neg(static_cast<int>(out.degree[i]))))
      throw check_failure("chain group: dual degree is not the inverse");
  }
  for (bool h : hit)
    if (!h) throw check_failure("chain group: degree map is not surjective");
  for (const auto& rel : relations)
    if (out.group.add(static_cast<int>(out.degree[rel[0]]), static_cast<int>(out.degree[rel[1]])) !=
        static_cast<int>(out.degree[rel[2]]))
      throw check_failure("chain group: degree map breaks a fusion relation");
  return out;
}

// ---- Twisted fusion ring ---------------------------------------------------

// Fusion ring of a graded twist: for a grading deg: simples -> Gamma
// compatible with the product and an action of Gamma by fusion-ring
// automorphisms commuting with the grading, the twisted ring keeps the basis
// x -> (x, deg x) and multiplies by (x,g)(y,h) = sum_z N^z_{x, alpha_g(y)}
// (z, gh) -- the coinvariant subring of the crossed product ring.
inline FusionRing twisted_fusion(const FusionRing& r, const FiniteGroup& gamma,
                                 const std::vector<size_t>& grade,
                                 const std::vector<std::vector<size_t>>& action) {
  validate_fusion_ring(r);
  if (r.level) throw invalid_input("twisted fusion: truncated rings cannot be twisted");
  const size_t n = r.rank();
  if (grade.size() != n) throw invalid_input("twisted fusion: grading size mismatch");
  for (size_t x : grade)
    if (x >= gamma.order()) throw invalid_input("twisted fusion: grade out of range");
  if (grade[r.unit] != static_cast<size_t>(gamma.identity()))
    throw invalid_input("twisted fusion: unit grade is not the identity");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (const auto& [k, m] : r.tensor[i][j])
        if (grade[k] != static_cast<size_t>(gamma.mul(static_cast<int>(grade[i]),
                                                      static_cast<int>(grade[j]))))
          throw invalid_input("twisted fusion: grading is not multiplicative");

  if (action.size() != gamma.order()) throw invalid_input("twisted fusion: action size mismatch");
  for (size_t g = 0; g < gamma.order(); ++g) {
    const auto& a = action[g];
    if (a.size() != n) throw invalid_input("twisted fusion: action permutation size mismatch");
    std::vector<bool> seen(n, false);
    for (size_t x : a) {
      if (x >= n || seen[x]) throw invalid_input("twisted fusion: action is not a permutation");
      seen[x] = true;
    }
    if (a[r.unit] != r.unit) throw invalid_input("twisted fusion: action moves the unit");
    for (size_t i = 0; i < n; ++i) {
      if (a[r.dual[i]] != r.dual[a[i]])
        throw invalid_input("twisted fusion: action breaks duality");
      if (grade[a[i]] != grade[i])
        throw invalid_input("twisted fusion: action does not commute with the grading");
      for (size_t j = 0; j < n; ++j)
        for (const auto& [k, m] : r.tensor[i][j])
          if (r.coeff(a[i], a[j], a[k]) != m)
            throw invalid_input("twisted fusion: action is not a ring automorphism");
    }
  }
  const auto& id = action[gamma.identity()];
  for (size_t i = 0; i < n; ++i)
    if (id[i] != i) throw invalid_input("twisted fusion: identity must act trivially");
  for (size_t g = 0; g < gamma.order(); ++g)
    for (size_t h = 0; h < gamma.order(); ++h) {
      int gh = gamma.mul(static_cast<int>(g), static_cast<int>(h));
      for (size_t i = 0; i < n; ++i)
        if (action[g][action[h][i]] != action[gh][i])
          throw invalid_input("twisted fusion: action is not a group homomorphism");
    }

  FusionRing out;
  out.unit = r.unit;
  out.tensor.assign(n, std::vector<std::map<size_t, long>>(n));
  for (size_t x = 0; x < n; ++x) {
    out.labels.push_back(r.labels[x] + "@" + gamma.name(grade[x]));
    out.dual.push_back(action[gamma.inverse(static_cast<int>(grade[x]))][r.dual[x]]);
    for (size_t y = 0; y < n; ++y) out.tensor[x][y] = r.tensor[x][action[grade[x]][y]];
  }
  try {
    validate_fusion_ring(out);
  } catch (const invalid_input& e) {
    throw check_failure(std::string("twisted fusion: result failed validation: ") + e.what());
  }
  return out;
}

// ---- Graded associator -----------------------------------------------------

// Associator of a fusion ring twisted along a pseudo-2-cocycle: the defect
// 2-cochain mu of the cocycle acts on every simple by a scalar, those scalars
// are constant on degree fibers and multiplicative in the degree, and the
// resulting 3-cochain c(g,h,k) = mu^{q(g),q(h)}(k) on the chain group is the
// associator of the twisted category.
struct GradedAssociator {
  FiniteAbelianGroup ch;
  std::vector<std::vector<std::vector<Scalar>>> c;  // c[g][h][k] over chain-group indices
};

// Multiplicative 3-cocycle identity, exhaustively over Ch^4:
// c(h,k,l) c(g,hk,l) c(g,h,k) = c(gh,k,l) c(g,h,kl).
inline bool pentagon_check(const GradedAssociator& a) {
  const size_t n = a.ch.order();
  if (a.c.size() != n) throw invalid_input("pentagon check: cochain grid size mismatch");
  for (const auto& plane : a.c) {
    if (plane.size() != n) throw invalid_input("pentagon check: cochain grid size mismatch");
    for (const auto& line : plane)
      if (line.size() != n) throw invalid_input("pentagon check: cochain grid size mismatch");
  }
  for (size_t g = 0; g < n; ++g)
    for (size_t h = 0; h < n; ++h) {
      int gh = a.ch.add(static_cast<int>(g), static_cast<int>(h));
      for (size_t k = 0; k < n; ++k) {
        int hk = a.ch.add(static_cast<int>(h), static_cast<int>(k));
        for (size_t l = 0; l < n; ++l) {
          int kl = a.ch.add(static_cast<int>(k), static_cast<int>(l));
          Scalar lhs = a.c[h][k][l] * a.c[g][hk][l] * a.c[g][h][k];
          Scalar rhs = a.c[gh][k][l] * a.c[g][h][kl];
          if (lhs != rhs) return false;
        }
      }
    }
  return true;
}

// mu_on_simples[s][t][x] is the scalar by which the defect functional mu(s,t)
// acts on the simple class x (s, t indices into gamma).  q maps chain-group
// element indices to gamma indices.  Hard errors: a value that depends on the
// representative simple of a degree fiber (check_failure), or inputs that are
// not characters / not a cocycle family (invalid_input).
inline GradedAssociator associator_from_mu(
    const FusionRing& r, const ChainGroupResult& ch, const FiniteGroup& gamma,
    const std::vector<size_t>& q,
    const std::vector<std::vector<std::vector<Scalar>>>& mu_on_simples) {
  const size_t n = r.rank();
  const size_t order = ch.group.order();
  const size_t gn = gamma.order();
  if (ch.degree.size() != n) throw invalid_input("associator: chain group does not match the ring");
  if (q.size() != order) throw invalid_input("associator: q size mismatch");
  for (size_t x : q)
    if (x >= gn) throw invalid_input("associator: q value out of range");
  if (q[0] != static_cast<size_t>(gamma.identity()))
    throw invalid_input("associator: q does not preserve the identity");
  for (size_t a = 0; a < order; ++a)
    for (size_t b = 0; b < order; ++b)
      if (q[ch.group.add(static_cast<int>(a), static_cast<int>(b))] !=
          static_cast<size_t>(gamma.mul(static_cast<int>(q[a]), static_cast<int>(q[b]))))
        throw invalid_input("associator: q is not a group homomorphism");
  if (mu_on_simples.size() != gn) throw invalid_input("associator: mu table size mismatch");
  for (const auto& row : mu_on_simples) {
    if (row.size() != gn) throw invalid_input("associator: mu table size mismatch");
    for (const auto& vals : row)
      if (vals.size() != n) throw invalid_input("associator: mu value list size mismatch");
  }

  // Collapse each mu(s,t) to a function on degrees; the value must not
  // depend on the representative simple.
  std::vector<std::vector<std::vector<Scalar>>> on_degree(
      gn, std::vector<std::vector<Scalar>>(gn, std::vector<Scalar>(order)));
  for (size_t s = 0; s < gn; ++s)
    for (size_t t = 0; t < gn; ++t) {
      std::vector<bool> assigned(order, false);
      for (size_t x = 0; x < n; ++x) {
        const Scalar& v = mu_on_simples[s][t][x];
        if (v.is_zero()) throw invalid_input("associator: mu acts by zero on a simple");
        size_t d = ch.degree[x];
        if (!assigned[d]) {
          on_degree[s][t][d] = v;
          assigned[d] = true;
        } else if (on_degree[s][t][d] != v) {
          throw check_failure("associator: mu value depends on the representative simple");
        }
      }
      for (bool a : assigned)
        if (!a) throw check_failure("associator: degree fiber without a simple");
      // Each mu(s,t) must restrict to a character of the chain group.
      if (on_degree[s][t][0] != Scalar(1))
        throw invalid_input("associator: mu is not 1 on degree zero");
      for (size_t a = 0; a < order; ++a)
        for (size_t b = 0; b < order; ++b)
          if (on_degree[s][t][a] * on_degree[s][t][b] !=
              on_degree[s][t][ch.group.add(static_cast<int>(a), static_cast<int>(b))])
            throw invalid_input("associator: mu is not a character of the chain group");
    }

  // mu must satisfy the 2-cocycle law mu(h,k) mu(g,hk) = mu(g,h) mu(gh,k)
  // as characters; this is exactly what makes c a 3-cocycle below.
  for (size_t g = 0; g < gn; ++g)
    for (size_t h = 0; h < gn; ++h)
      for (size_t k = 0; k < gn; ++k) {
        size_t gh = static_cast<size_t>(gamma.mul(static_cast<int>(g), static_cast<int>(h)));
        size_t hk = static_cast<size_t>(gamma.mul(static_cast<int>(h), static_cast<int>(k)));
        for (size_t d = 0; d < order; ++d)
          if (on_degree[h][k][d] * on_degree[g][hk][d] !=
              on_degree[g][h][d] * on_degree[gh][k][d])
            throw invalid_input("associator: mu is not a two-cocycle family");
      }

  GradedAssociator out{ch.group, std::vector<std::vector<std::vector<Scalar>>>(
                                     order, std::vector<std::vector<Scalar>>(
                                                order, std::vector<Scalar>(order)))};
  for (size_t g = 0; g < order; ++g)
    for (size_t h = 0; h < order; ++h)
      for (size_t k = 0; k < order; ++k) out.c[g][h][k] = on_degree[q[g]][q[h]][k];
  if (!pentagon_check(out))
    throw check_failure("associator: constructed 3-cochain is not a cocycle");
  return out;
}

}  // namespace hopftwist

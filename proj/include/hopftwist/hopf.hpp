#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopftwist/group.hpp"
#include "hopftwist/linalg.hpp"

namespace hopftwist {

// Sparse element of a finite-dimensional algebra: basis index -> coefficient.
// Kept free of explicit zeros so equality is map equality.
using SparseVec = std::map<size_t, Scalar>;
// Sparse element of the tensor square: (index, index) -> coefficient.
using SparseTens = std::map<std::pair<size_t, size_t>, Scalar>;

inline void sv_add(SparseVec& dst, size_t idx, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = dst.find(idx);
  if (it == dst.end()) {
    dst.emplace(idx, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) dst.erase(it);
  }
}

inline void st_add(SparseTens& dst, size_t j, size_t k, const Scalar& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(j, k);
  auto it = dst.find(key);
  if (it == dst.end()) {
    dst.emplace(key, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) dst.erase(it);
  }
}

// Finite-dimensional Hopf (*-)algebra by exact structure constants on a
// fixed basis a_0, ..., a_{n-1}:
//   mult[i][j]  = a_i a_j,
//   comult[i]   = Delta(a_i)  as an element of the tensor square,
//   counit[i]   = eps(a_i),
//   antipode    = matrix with S(a_i) = sum_j antipode(j, i) a_j,
//   star        = optional matrix with (a_i)^* = sum_j star(j, i) a_j,
//                 extended antilinearly (coefficients conjugated).
// Values are immutable once built; all operations below are pure.
struct FinHopf {
  size_t dim = 0;
  std::vector<std::string> names;
  std::vector<std::vector<SparseVec>> mult;
  SparseVec unit;
  std::vector<SparseTens> comult;
  std::vector<Scalar> counit;
  Mat antipode;
  std::optional<Mat> star;
};

inline Vec to_dense(const FinHopf& h, const SparseVec& v) {
  Vec d(h.dim, Scalar(0));
  for (const auto& [i, c] : v) d[i] = c;
  return d;
}

inline SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace(i, v[i]);
  return s;
}

inline SparseVec hv_product(const FinHopf& h, const SparseVec& x, const SparseVec& y) {
  SparseVec out;
  for (const auto& [i, ci] : x)
    for (const auto& [j, cj] : y) {
      Scalar c = ci * cj;
      for (const auto& [k, m] : h.mult[i][j]) sv_add(out, k, c * m);
    }
  return out;
}

inline SparseTens hv_comult(const FinHopf& h, const SparseVec& x) {
  SparseTens out;
  for (const auto& [i, ci] : x)
    for (const auto& [jk, c] : h.comult[i]) st_add(out, jk.first, jk.second, ci * c);
  return out;
}

inline Scalar hv_counit(const FinHopf& h, const SparseVec& x) {
  Scalar s(0);
  for (const auto& [i, ci] : x) s += ci * h.counit[i];
  return s;
}

inline SparseVec hv_antipode(const FinHopf& h, const SparseVec& x) {
  SparseVec out;
  for (const auto& [i, ci] : x)
    for (size_t j = 0; j < h.dim; ++j)
      if (!h.antipode.at(j, i).is_zero()) sv_add(out, j, ci * h.antipode.at(j, i));
  return out;
}

// Antilinear: coefficients are conjugated before applying the star matrix.
inline SparseVec hv_star(const FinHopf& h, const SparseVec& x) {
  if (!h.star) throw invalid_input("hopf: algebra carries no star structure");
  SparseVec out;
  for (const auto& [i, ci] : x) {
    Scalar c = ci.conjugate();
    for (size_t j = 0; j < h.dim; ++j)
      if (!h.star->at(j, i).is_zero()) sv_add(out, j, c * h.star->at(j, i));
  }
  return out;
}

// One failed axiom: its name and the basis indices witnessing the failure.
struct AxiomFailure {
  std::string axiom;
  std::vector<size_t> witness;
};

namespace detail {

inline SparseVec basis_vec(size_t i) { return SparseVec{{i, Scalar(1)}}; }

inline void check_hopf_shape(const FinHopf& h) {
  size_t n = h.dim;
  if (h.names.size() != n) throw invalid_input("hopf: name count mismatch");
  if (h.mult.size() != n) throw invalid_input("hopf: mult tensor row count mismatch");
  for (const auto& row : h.mult) {
    if (row.size() != n) throw invalid_input("hopf: mult tensor column count mismatch");
    for (const auto& sv : row)
      for (const auto& [k, c] : sv)
        if (k >= n) throw invalid_input("hopf: mult tensor index out of range");
  }
  if (h.comult.size() != n) throw invalid_input("hopf: comult tensor size mismatch");
  for (const auto& st : h.comult)
    for (const auto& [jk, c] : st)
      if (jk.first >= n || jk.second >= n)
        throw invalid_input("hopf: comult tensor index out of range");
  if (h.counit.size() != n) throw invalid_input("hopf: counit size mismatch");
  if (h.antipode.rows() != n || h.antipode.cols() != n)
    throw invalid_input("hopf: antipode shape mismatch");
  if (h.star && (h.star->rows() != n || h.star->cols() != n))
    throw invalid_input("hopf: star shape mismatch");
  for (const auto& [i, c] : h.unit)
    if (i >= n) throw invalid_input("hopf: unit index out of range");
}

}  // namespace detail

// Checks every Hopf (*-)algebra axiom exactly on all basis tuples and
// reports each failure with witness indices.  With early_stop, returns at
// the first failed axiom (the cheap checks run first).
inline std::vector<AxiomFailure> verify_hopf(const FinHopf& h, bool early_stop = false) {
  detail::check_hopf_shape(h);
  size_t n = h.dim;
  std::vector<AxiomFailure> failures;
  constexpr size_t kMaxFailures = 100;  // keep reports readable on badly broken input
  auto done = [&]() {
    return (early_stop && !failures.empty()) || failures.size() >= kMaxFailures;
  };
  auto fail = [&](const std::string& axiom, std::vector<size_t> w) {
    if (!done()) failures.push_back({axiom, std::move(w)});
  };

  // counit of unit.
  if (hv_counit(h, h.unit) != Scalar(1)) fail("counit-unital", {});
  if (done()) return failures;

  // Unit axioms.
  for (size_t i = 0; i < n; ++i) {
    SparseVec e = detail::basis_vec(i);
    if (hv_product(h, h.unit, e) != e) fail("unit-left", {i});
    if (hv_product(h, e, h.unit) != e) fail("unit-right", {i});
    if (done()) return failures;
  }

  // Counit axioms: (eps x id) Delta = id = (id x eps) Delta.
  for (size_t i = 0; i < n; ++i) {
    SparseVec left, right;
    for (const auto& [jk, c] : h.comult[i]) {
      sv_add(left, jk.second, c * h.counit[jk.first]);
      sv_add(right, jk.first, c * h.counit[jk.second]);
    }
    SparseVec e = detail::basis_vec(i);
    if (left != e) fail("counit-left", {i});
    if (right != e) fail("counit-right", {i});
    if (done()) return failures;
  }

  // Counit is an algebra map.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (hv_counit(h, h.mult[i][j]) != h.counit[i] * h.counit[j]) {
        fail("counit-multiplicative", {i, j});
        if (done()) return failures;
      }
    }
  }

  // Antipode axioms: m(S x id)Delta = unit*eps = m(id x S)Delta.
  for (size_t i = 0; i < n; ++i) {
    SparseVec left, right;
    for (const auto& [jk, c] : h.comult[i]) {
      SparseVec sj = hv_antipode(h, detail::basis_vec(jk.first));
      for (const auto& [l, cl] : hv_product(h, sj, detail::basis_vec(jk.second)))
        sv_add(left, l, c * cl);
      SparseVec sk = hv_antipode(h, detail::basis_vec(jk.second));
      for (const auto& [l, cl] : hv_product(h, detail::basis_vec(jk.first), sk))
        sv_add(right, l, c * cl);
    }
    SparseVec target;
    for (const auto& [l, cl] : h.unit) sv_add(target, l, cl * h.counit[i]);
    if (left != target) fail("antipode-left", {i});
    if (right != target) fail("antipode-right", {i});
    if (done()) return failures;
  }

  // Coassociativity.
  for (size_t i = 0; i < n; ++i) {
    std::map<std::array<size_t, 3>, Scalar> lhs, rhs;
    auto add3 = [](std::map<std::array<size_t, 3>, Scalar>& m, size_t a, size_t b, size_t c,
                   const Scalar& v) {
      if (v.is_zero()) return;
      std::array<size_t, 3> key{a, b, c};
      auto it = m.find(key);
      if (it == m.end()) {
        m.emplace(key, v);
      } else {
        it->second += v;
        if (it->second.is_zero()) m.erase(it);
      }
    };
    for (const auto& [jk, c] : h.comult[i]) {
      for (const auto& [pq, d] : h.comult[jk.first]) add3(lhs, pq.first, pq.second, jk.second, c * d);
      for (const auto& [pq, d] : h.comult[jk.second]) add3(rhs, jk.first, pq.first, pq.second, c * d);
    }
    if (lhs != rhs) {
      fail("coassociativity", {i});
      if (done()) return failures;
    }
  }

  // Associativity.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      for (size_t k = 0; k < n; ++k) {
        SparseVec lhs, rhs;
        for (const auto& [l, c] : h.mult[i][j])
          for (const auto& [t, d] : h.mult[l][k]) sv_add(lhs, t, c * d);
        for (const auto& [l, c] : h.mult[j][k])
          for (const auto& [t, d] : h.mult[i][l]) sv_add(rhs, t, c * d);
        if (lhs != rhs) {
          fail("associativity", {i, j, k});
          if (done()) return failures;
        }
      }
    }
  }

  // Comultiplication respects the unit.
  {
    SparseTens lhs = hv_comult(h, h.unit);
    SparseTens rhs;
    for (const auto& [i, ci] : h.unit)
      for (const auto& [j, cj] : h.unit) st_add(rhs, i, j, ci * cj);
    if (lhs != rhs) fail("comult-unital", {});
    if (done()) return failures;
  }

  // Comultiplication is an algebra map: Delta(ab) = Delta(a)Delta(b).
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      SparseTens lhs = hv_comult(h, h.mult[i][j]);
      SparseTens rhs;
      for (const auto& [pq, c] : h.comult[i])
        for (const auto& [rs, d] : h.comult[j]) {
          Scalar cd = c * d;
          for (const auto& [u, cu] : h.mult[pq.first][rs.first])
            for (const auto& [w, cw] : h.mult[pq.second][rs.second])
              st_add(rhs, u, w, cd * cu * cw);
        }
      if (lhs != rhs) {
        fail("comult-multiplicative", {i, j});
        if (done()) return failures;
      }
    }
  }

  // Star axioms (antilinear involution compatible with the structure).
  if (h.star) {
    for (size_t i = 0; i < n; ++i) {
      SparseVec e = detail::basis_vec(i);
      if (hv_star(h, hv_star(h, e)) != e) fail("star-involution", {i});
      Scalar eps_star = hv_counit(h, hv_star(h, e));
      if (eps_star != h.counit[i].conjugate()) fail("star-counit", {i});
      // Delta(a*) = (* x *) Delta(a).
      SparseTens lhs = hv_comult(h, hv_star(h, e));
      SparseTens rhs;
      for (const auto& [jk, c] : h.comult[i]) {
        SparseVec sj = hv_star(h, detail::basis_vec(jk.first));
        SparseVec sk = hv_star(h, detail::basis_vec(jk.second));
        Scalar cc = c.conjugate();
        for (const auto& [u, cu] : sj)
          for (const auto& [w, cw] : sk) st_add(rhs, u, w, cc * cu * cw);
      }
      if (lhs != rhs) fail("star-comultiplicative", {i});
      if (done()) return failures;
    }
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        SparseVec lhs = hv_star(h, h.mult[i][j]);
        SparseVec rhs = hv_product(h, hv_star(h, detail::basis_vec(j)),
                                   hv_star(h, detail::basis_vec(i)));
        if (lhs != rhs) {
          fail("star-antimultiplicative", {i, j});
          if (done()) return failures;
        }
      }
    }
  }

  return failures;
}

// Group algebra K[G]: basis {g}, Delta(g) = g x g, eps(g) = 1, S(g) = g^{-1},
// g^* = g^{-1}.
inline FinHopf group_algebra(const FiniteGroup& g, bool with_star = true) {
  size_t n = g.order();
  FinHopf h;
  h.dim = n;
  h.names.resize(n);
  for (size_t x = 0; x < n; ++x) h.names[x] = g.name(x);
  h.mult.assign(n, std::vector<SparseVec>(n));
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) h.mult[x][y] = {{g.mul(x, y), Scalar(1)}};
  h.unit = {{g.identity(), Scalar(1)}};
  h.comult.resize(n);
  for (size_t x = 0; x < n; ++x) h.comult[x] = {{{x, x}, Scalar(1)}};
  h.counit.assign(n, Scalar(1));
  h.antipode = Mat(n, n);
  for (size_t x = 0; x < n; ++x) h.antipode.at(g.inverse(x), x) = Scalar(1);
  if (with_star) {
    Mat st(n, n);
    for (size_t x = 0; x < n; ++x) st.at(g.inverse(x), x) = Scalar(1);
    h.star = st;
  }
  return h;
}

// Function algebra O(G) = K^G: basis of point evaluations {delta_x},
// Delta(delta_x) = sum_{yz=x} delta_y x delta_z, eps(delta_x) = [x = e],
// S(delta_x) = delta_{x^{-1}}, delta_x^* = delta_x.
inline FinHopf function_algebra(const FiniteGroup& g, bool with_star = true) {
  size_t n = g.order();
  FinHopf h;
  h.dim = n;
  h.names.resize(n);
  for (size_t x = 0; x < n; ++x) h.names[x] = "d[" + g.name(x) + "]";
  h.mult.assign(n, std::vector<SparseVec>(n));
  for (size_t x = 0; x < n; ++x) h.mult[x][x] = {{x, Scalar(1)}};
  for (size_t x = 0; x < n; ++x) h.unit.emplace(x, Scalar(1));
  h.comult.resize(n);
  for (size_t y = 0; y < n; ++y)
    for (size_t z = 0; z < n; ++z) h.comult[g.mul(y, z)].emplace(std::make_pair(y, z), Scalar(1));
  h.counit.assign(n, Scalar(0));
  h.counit[g.identity()] = Scalar(1);
  h.antipode = Mat(n, n);
  for (size_t x = 0; x < n; ++x) h.antipode.at(g.inverse(x), x) = Scalar(1);
  if (with_star) {
    h.star = Mat::identity(n);
  }
  return h;
}

// Hopf algebra map p: A -> K[Gamma] recorded by its matrix: row i holds the
// coefficients of p(a_i) on the group basis.
struct CocentralMap {
  FiniteGroup target;
  Mat map;  // dim x |Gamma|
};

// Checks that p is a cocentral Hopf algebra homomorphism onto K[target]:
// coalgebra map, algebra map, antipode-compatible, and cocentral
// (p(a_(1)) x a_(2) = p(a_(2)) x a_(1)).  Returns human-readable violations.
inline std::vector<std::string> validate_cocentral(const FinHopf& h, const CocentralMap& p) {
  detail::check_hopf_shape(h);
  size_t n = h.dim, m = p.target.order();
  if (p.map.rows() != n || p.map.cols() != m)
    throw invalid_input("cocentral: matrix shape mismatch");
  std::vector<std::string> bad;

  // Counit compatibility: eps_KG(p(a)) = eps_A(a).
  for (size_t i = 0; i < n; ++i) {
    Scalar s(0);
    for (size_t g = 0; g < m; ++g) s += p.map.at(i, g);
    if (s != h.counit[i]) {
      bad.push_back("counit compatibility fails at basis " + std::to_string(i));
      break;
    }
  }

  // Coalgebra map: Delta_KG(p(a)) = (p x p)(Delta_A(a)); group-likes give
  // Delta_KG(g) = g x g.
  for (size_t i = 0; i < n; ++i) {
    Mat lhs(m, m), rhs(m, m);
    for (size_t g = 0; g < m; ++g) lhs.at(g, g) = p.map.at(i, g);
    for (const auto& [jk, c] : h.comult[i])
      for (size_t g = 0; g < m; ++g) {
        if (p.map.at(jk.first, g).is_zero()) continue;
        for (size_t u = 0; u < m; ++u)
          rhs.at(g, u) += c * p.map.at(jk.first, g) * p.map.at(jk.second, u);
      }
    if (!(lhs == rhs)) {
      bad.push_back("coalgebra-map condition fails at basis " + std::to_string(i));
      break;
    }
  }

  // Algebra map: p(ab) = p(a)p(b) with convolution in K[Gamma]; p(1) = e.
  {
    Vec unit_img(m, Scalar(0));
    for (const auto& [i, c] : h.unit)
      for (size_t g = 0; g < m; ++g) unit_img[g] += c * p.map.at(i, g);
    for (size_t g = 0; g < m; ++g)
      if (unit_img[g] != (g == p.target.identity() ? Scalar(1) : Scalar(0))) {
        bad.push_back("unit is not mapped to the group identity");
        break;
      }
  }
  for (size_t i = 0; i < n && bad.size() < 8; ++i)
    for (size_t j = 0; j < n; ++j) {
      Vec lhs(m, Scalar(0)), rhs(m, Scalar(0));
      for (const auto& [k, c] : h.mult[i][j])
        for (size_t g = 0; g < m; ++g) lhs[g] += c * p.map.at(k, g);
      for (size_t g = 0; g < m; ++g) {
        if (p.map.at(i, g).is_zero()) continue;
        for (size_t u = 0; u < m; ++u)
          rhs[p.target.mul(g, u)] += p.map.at(i, g) * p.map.at(j, u);
      }
      if (lhs != rhs) {
        bad.push_back("algebra-map condition fails at basis pair (" + std::to_string(i) + ", " +
                      std::to_string(j) + ")");
        i = n;
        break;
      }
    }

  // Antipode compatibility: p(S(a)) = S_KG(p(a)) (inversion on the basis).
  for (size_t i = 0; i < n; ++i) {
    Vec lhs(m, Scalar(0)), rhs(m, Scalar(0));
    for (size_t j = 0; j < n; ++j)
      if (!h.antipode.at(j, i).is_zero())
        for (size_t g = 0; g < m; ++g) lhs[g] += h.antipode.at(j, i) * p.map.at(j, g);
    for (size_t g = 0; g < m; ++g) rhs[p.target.inverse(g)] += p.map.at(i, g);
    if (lhs != rhs) {
      bad.push_back("antipode compatibility fails at basis " + std::to_string(i));
      break;
    }
  }

  // Cocentrality: p(a_(1)) x a_(2) = p(a_(2)) x a_(1).
  for (size_t i = 0; i < n; ++i) {
    Mat lhs(m, n), rhs(m, n);
    for (const auto& [jk, c] : h.comult[i]) {
      for (size_t g = 0; g < m; ++g) {
        lhs.at(g, jk.second) += c * p.map.at(jk.first, g);
        rhs.at(g, jk.first) += c * p.map.at(jk.second, g);
      }
    }
    if (!(lhs == rhs)) {
      bad.push_back("cocentrality fails at basis " + std::to_string(i));
      break;
    }
  }

  return bad;
}

// Group grading of a Hopf algebra: for each group element, a reduced
// echelon-form basis (rows) of the homogeneous component.
struct Grading {
  FiniteGroup group;
  std::vector<Mat> components;  // component[g]: rows span A_g
};

// Checks the grading axioms: direct-sum decomposition spanning A,
// Delta(A_g) in A_g x A_g, A_g A_h in A_{gh}, S(A_g) = A_{g^{-1}}, 1 in A_e.
inline std::vector<std::string> verify_grading(const FinHopf& h, const Grading& gr) {
  detail::check_hopf_shape(h);
  size_t n = h.dim, m = gr.group.order();
  if (gr.components.size() != m) throw invalid_input("grading: component count mismatch");
  std::vector<std::string> bad;

  size_t total = 0;
  std::vector<Vec> all_rows;
  for (size_t g = 0; g < m; ++g) {
    const Mat& comp = gr.components[g];
    if (comp.rows() > 0 && comp.cols() != n) throw invalid_input("grading: component width mismatch");
    total += comp.rows();
    for (size_t r = 0; r < comp.rows(); ++r) {
      Vec row(n);
      for (size_t j = 0; j < n; ++j) row[j] = comp.at(r, j);
      all_rows.push_back(std::move(row));
    }
  }
  Mat stacked = mat_from_rows(all_rows, n);
  if (total != n || rank(stacked) != n) {
    bad.push_back("components do not decompose the algebra as a direct sum");
    return bad;  // everything else depends on the decomposition
  }

  if (!in_row_space(gr.components[gr.group.identity()], to_dense(h, h.unit)))
    bad.push_back("unit is not in the identity component");

  // Multiplicativity A_g A_h in A_{gh}.
  for (size_t g = 0; g < m; ++g)
    for (size_t hh = 0; hh < m; ++hh) {
      const Mat& cg = gr.components[g];
      const Mat& ch = gr.components[hh];
      const Mat& target = gr.components[gr.group.mul(g, hh)];
      for (size_t r = 0; r < cg.rows(); ++r)
        for (size_t s = 0; s < ch.rows(); ++s) {
          SparseVec x, y;
          for (size_t j = 0; j < n; ++j) {
            if (!cg.at(r, j).is_zero()) x.emplace(j, cg.at(r, j));
            if (!ch.at(s, j).is_zero()) y.emplace(j, ch.at(s, j));
          }
          Vec prod = to_dense(h, hv_product(h, x, y));
          bool zero = std::all_of(prod.begin(), prod.end(),
                                  [](const Scalar& c) { return c.is_zero(); });
          if (!zero && !in_row_space(target, prod)) {
            bad.push_back("product of components " + std::to_string(g) + ", " +
                          std::to_string(hh) + " leaves the target component");
            goto mult_done;
          }
        }
    }
mult_done:

  // Comultiplicativity Delta(A_g) in A_g x A_g: row and column spaces of the
  // coefficient matrix of Delta(u) must lie in A_g.
  for (size_t g = 0; g < m; ++g) {
    const Mat& cg = gr.components[g];
    for (size_t r = 0; r < cg.rows(); ++r) {
      SparseVec x;
      for (size_t j = 0; j < n; ++j)
        if (!cg.at(r, j).is_zero()) x.emplace(j, cg.at(r, j));
      SparseTens d = hv_comult(h, x);
      Mat coeff(n, n);
      for (const auto& [jk, c] : d) coeff.at(jk.first, jk.second) = c;
      bool ok = true;
      for (size_t i = 0; i < n && ok; ++i) {
        Vec row(n), col(n);
        for (size_t j = 0; j < n; ++j) {
          row[j] = coeff.at(i, j);
          col[j] = coeff.at(j, i);
        }
        auto nonzero = [](const Vec& v) {
          return std::any_of(v.begin(), v.end(), [](const Scalar& c) { return !c.is_zero(); });
        };
        if (nonzero(row) && !in_row_space(cg, row)) ok = false;
        if (nonzero(col) && !in_row_space(cg, col)) ok = false;
      }
      if (!ok) {
        bad.push_back("comultiplication leaves component " + std::to_string(g));
        break;
      }
    }
  }

  // Antipode: S(A_g) = A_{g^{-1}} (dimensions match, so containment suffices).
  for (size_t g = 0; g < m; ++g) {
    const Mat& cg = gr.components[g];
    const Mat& ci = gr.components[gr.group.inverse(g)];
    if (cg.rows() != ci.rows()) {
      bad.push_back("antipode cannot match components of different dimension at " +
                    std::to_string(g));
      continue;
    }
    for (size_t r = 0; r < cg.rows(); ++r) {
      SparseVec x;
      for (size_t j = 0; j < n; ++j)
        if (!cg.at(r, j).is_zero()) x.emplace(j, cg.at(r, j));
      Vec img = to_dense(h, hv_antipode(h, x));
      if (!in_row_space(ci, img)) {
        bad.push_back("antipode maps component " + std::to_string(g) +
                      " outside the inverse component");
        break;
      }
    }
  }

  return bad;
}

// The grading attached to a cocentral Hopf algebra map:
// A_g = {a : a_(1) x p(a_(2)) = a x g}.  Components are computed as joint
// kernels and returned echelonized; the grading axioms are re-verified.
inline Grading grading_from_cocentral(const FinHopf& h, const CocentralMap& p) {
  {
    std::vector<std::string> bad = validate_cocentral(h, p);
    if (!bad.empty()) throw invalid_input("grading_from_cocentral: " + bad.front());
  }
  size_t n = h.dim, m = p.target.order();

  // M_g[j][i] = coefficient of a_j x g in (id x p) Delta(a_i).
  std::vector<Mat> mg(m, Mat(n, n));
  for (size_t i = 0; i < n; ++i)
    for (const auto& [jk, c] : h.comult[i])
      for (size_t g = 0; g < m; ++g) {
        Scalar v = c * p.map.at(jk.second, g);
        if (!v.is_zero()) mg[g].at(jk.first, i) += v;
      }

  Grading gr{p.target, {}};
  gr.components.reserve(m);
  size_t total = 0;
  for (size_t g = 0; g < m; ++g) {
    // x in A_g iff (M_h - [h = g] I) x = 0 for every h.
    Mat stacked(n * m, n);
    for (size_t hh = 0; hh < m; ++hh)
      for (size_t r = 0; r < n; ++r)
        for (size_t cidx = 0; cidx < n; ++cidx) {
          Scalar v = mg[hh].at(r, cidx);
          if (hh == g && r == cidx) v -= Scalar(1);
          stacked.at(hh * n + r, cidx) = v;
        }
    Mat ker = kernel(stacked);  // columns
    gr.components.push_back(row_space(ker.transpose()));
    total += gr.components.back().rows();
  }
  if (total != n)
    throw check_failure("grading_from_cocentral: components do not span the algebra");
  std::vector<std::string> bad = verify_grading(h, gr);
  if (!bad.empty()) throw check_failure("grading_from_cocentral: " + bad.front());
  return gr;
}

// The cocentral map attached to a grading: p(a) = eps(a) g on A_g.
inline CocentralMap cocentral_from_grading(const FinHopf& h, const Grading& gr) {
  {
    std::vector<std::string> bad = verify_grading(h, gr);
    if (!bad.empty()) throw invalid_input("cocentral_from_grading: " + bad.front());
  }
  size_t n = h.dim, m = gr.group.order();

  // Stack all component rows into a basis of A and decompose each a_i.
  std::vector<Vec> rows;
  std::vector<size_t> row_component;
  for (size_t g = 0; g < m; ++g) {
    const Mat& comp = gr.components[g];
    for (size_t r = 0; r < comp.rows(); ++r) {
      Vec row(n);
      for (size_t j = 0; j < n; ++j) row[j] = comp.at(r, j);
      rows.push_back(std::move(row));
      row_component.push_back(g);
    }
  }
  Mat basis_t = mat_from_rows(rows, n).transpose();

  Mat pm(n, m);
  for (size_t i = 0; i < n; ++i) {
    Vec e(n, Scalar(0));
    e[i] = Scalar(1);
    LinearSolution sol = solve_linear(basis_t, e);
    if (!sol.consistent) throw check_failure("cocentral_from_grading: decomposition failed");
    for (size_t r = 0; r < rows.size(); ++r) {
      if (sol.particular[r].is_zero()) continue;
      Scalar eps(0);
      for (size_t j = 0; j < n; ++j) eps += rows[r][j] * h.counit[j];
      pm.at(i, row_component[r]) += sol.particular[r] * eps;
    }
  }
  return CocentralMap{gr.group, pm};
}

// Cocentral map on O(G) dual to an embedding of the dual of Gamma into the
// center of G: p(delta_x) vanishes off the image, and on x = i(psi) equals
// (1/|Gamma|) sum_g conj(psi(g)) g.  embed[psi_index] is the G-element that
// the dual character psi maps to.
inline CocentralMap central_dual_cocentral(const FiniteGroup& g, const FiniteAbelianGroup& gamma,
                                           const std::vector<size_t>& embed) {
  size_t m = gamma.order();
  if (embed.size() != m) throw invalid_input("central embedding: size mismatch");
  // Injective homomorphism from the dual group into Z(G).
  std::vector<int> center = g.center();
  for (size_t psi = 0; psi < m; ++psi) {
    if (embed[psi] >= g.order()) throw invalid_input("central embedding: element out of range");
    if (std::find(center.begin(), center.end(), static_cast<int>(embed[psi])) == center.end())
      throw invalid_input("central embedding: image not central");
    for (size_t phi = 0; phi < m; ++phi)
      if (g.mul(embed[psi], embed[phi]) !=
          embed[static_cast<size_t>(gamma.add(static_cast<int>(psi), static_cast<int>(phi)))])
        throw invalid_input("central embedding: not a homomorphism");
  }
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b)
      if (embed[a] == embed[b]) throw invalid_input("central embedding: not injective");

  Mat pm(g.order(), m);
  Rational inv(1, static_cast<long>(m));
  for (size_t psi = 0; psi < m; ++psi) {
    DualCharacter chi(gamma, psi);
    for (size_t ge = 0; ge < m; ++ge)
      pm.at(embed[psi], ge) =
          Scalar(inv) * chi.value(gamma, static_cast<int>(ge)).conjugate();
  }
  return CocentralMap{gamma.as_finite_group(), pm};
}

}  // namespace hopftwist

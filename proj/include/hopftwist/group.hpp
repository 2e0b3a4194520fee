#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "hopftwist/cyclotomic.hpp"

namespace hopftwist {

// Finite group given by a verified multiplication table.  Elements are the
// indices 0..order-1.
class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> names = {})
      : mul_(std::move(table)), names_(std::move(names)) {
    size_t n = mul_.size();
    if (n == 0) throw invalid_input("group: empty table");
    for (const auto& row : mul_) {
      if (row.size() != n) throw invalid_input("group: table not square");
      for (int x : row)
        if (x < 0 || static_cast<size_t>(x) >= n)
          throw invalid_input("group: table entry out of range");
    }
    // Identity.
    e_ = -1;
    for (size_t i = 0; i < n && e_ < 0; ++i) {
      bool ok = true;
      for (size_t j = 0; j < n; ++j)
        if (mul_[i][j] != static_cast<int>(j) || mul_[j][i] != static_cast<int>(j)) {
          ok = false;
          break;
        }
      if (ok) e_ = static_cast<int>(i);
    }
    if (e_ < 0) throw invalid_input("group: no identity element");
    // Inverses.
    inv_.assign(n, -1);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j)
        if (mul_[i][j] == e_ && mul_[j][i] == e_) {
          inv_[i] = static_cast<int>(j);
          break;
        }
      if (inv_[i] < 0)
        throw invalid_input("group: element " + std::to_string(i) + " has no inverse");
    }
    // Associativity.
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        for (size_t c = 0; c < n; ++c)
          if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
            throw invalid_input("group: associativity fails at (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) + ")");
    if (names_.empty()) {
      names_.resize(n);
      for (size_t i = 0; i < n; ++i) names_[i] = "g" + std::to_string(i);
    } else if (names_.size() != n) {
      throw invalid_input("group: name list size mismatch");
    }
  }

  static FiniteGroup cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
    return FiniteGroup(std::move(t));
  }

  // Group generated by permutations of {0..degree-1}.
  static FiniteGroup from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                                       size_t max_order = 4096) {
    std::vector<std::vector<int>> elems;
    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::map<std::vector<int>, int> index;
    elems.push_back(id);
    index[id] = 0;
    for (size_t head = 0; head < elems.size(); ++head) {
      for (const auto& g : gens) {
        if (g.size() != static_cast<size_t>(degree))
          throw invalid_input("group: generator degree mismatch");
        std::vector<int> prod(degree);
        for (int i = 0; i < degree; ++i) prod[i] = g[elems[head][i]];
        if (!index.count(prod)) {
          if (elems.size() >= max_order) throw resource_limit("group: closure exceeds bound");
          index[prod] = static_cast<int>(elems.size());
          elems.push_back(prod);
        }
      }
    }
    size_t n = elems.size();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) {
        std::vector<int> prod(degree);
        for (int i = 0; i < degree; ++i) prod[i] = elems[a][elems[b][i]];
        t[a][b] = index.at(prod);
      }
    return FiniteGroup(std::move(t));
  }

  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    size_t n = g.order() * h.order();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    auto idx = [&](int a, int b) { return a * static_cast<int>(h.order()) + b; };
    std::vector<std::string> names(n);
    for (size_t a1 = 0; a1 < g.order(); ++a1)
      for (size_t b1 = 0; b1 < h.order(); ++b1) {
        names[idx(a1, b1)] = "(" + g.name(a1) + "," + h.name(b1) + ")";
        for (size_t a2 = 0; a2 < g.order(); ++a2)
          for (size_t b2 = 0; b2 < h.order(); ++b2)
            t[idx(a1, b1)][idx(a2, b2)] = idx(g.mul(a1, a2), h.mul(b1, b2));
      }
    return FiniteGroup(std::move(t), std::move(names));
  }

  size_t order() const { return mul_.size(); }
  int mul(int a, int b) const { return mul_[a][b]; }
  int identity() const { return e_; }
  int inverse(int a) const { return inv_[a]; }
  int conjugate(int g, int x) const { return mul(mul(g, x), inv_[g]); }
  const std::string& name(size_t i) const { return names_[i]; }
  void set_names(std::vector<std::string> names) {
    if (names.size() != order()) throw invalid_input("group: name list size mismatch");
    names_ = std::move(names);
  }

  int element_order(int a) const {
    int k = 1, x = a;
    while (x != e_) {
      x = mul(x, a);
      ++k;
    }
    return k;
  }

  int exponent() const {
    long e = 1;
    for (size_t i = 0; i < order(); ++i) e = std::lcm(e, static_cast<long>(element_order(i)));
    return static_cast<int>(e);
  }

  bool is_abelian() const {
    for (size_t a = 0; a < order(); ++a)
      for (size_t b = a + 1; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<int> center() const {
    std::vector<int> z;
    for (size_t a = 0; a < order(); ++a) {
      bool central = true;
      for (size_t b = 0; b < order() && central; ++b)
        if (mul(a, b) != mul(b, a)) central = false;
      if (central) z.push_back(static_cast<int>(a));
    }
    return z;
  }

  // Closure of a subset under multiplication (subgroup generated by it).
  std::vector<int> closure(std::vector<int> gens) const {
    std::set<int> seen(gens.begin(), gens.end());
    seen.insert(e_);
    std::vector<int> queue(seen.begin(), seen.end());
    for (size_t head = 0; head < queue.size(); ++head)
      for (int g : std::vector<int>(seen.begin(), seen.end())) {
        int p = mul(queue[head], g);
        if (seen.insert(p).second) queue.push_back(p);
        int q = mul(g, queue[head]);
        if (seen.insert(q).second) queue.push_back(q);
      }
    return std::vector<int>(seen.begin(), seen.end());
  }

  // All subgroups, each as a sorted element list, ordered by (order, lex).
  std::vector<std::vector<int>> all_subgroups(size_t order_bound = 64) const {
    if (order() > order_bound) throw resource_limit("group: subgroup enumeration bound exceeded");
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> queue;
    std::vector<int> triv{e_};
    found.insert(triv);
    queue.push_back(triv);
    for (size_t head = 0; head < queue.size(); ++head) {
      std::vector<int> h = queue[head];
      for (size_t x = 0; x < order(); ++x) {
        if (std::binary_search(h.begin(), h.end(), static_cast<int>(x))) continue;
        std::vector<int> gens = h;
        gens.push_back(static_cast<int>(x));
        std::vector<int> k = closure(gens);
        if (found.insert(k).second) queue.push_back(k);
      }
    }
    std::vector<std::vector<int>> out(found.begin(), found.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    return out;
  }

  // Conjugacy classes, each sorted, ordered by least element; the class of
  // the identity comes first.
  std::vector<std::vector<int>> conjugacy_classes() const {
    std::vector<int> cls(order(), -1);
    std::vector<std::vector<int>> classes;
    for (size_t x = 0; x < order(); ++x) {
      if (cls[x] >= 0) continue;
      std::vector<int> c;
      for (size_t g = 0; g < order(); ++g) {
        int y = conjugate(static_cast<int>(g), static_cast<int>(x));
        if (cls[y] < 0) {
          cls[y] = static_cast<int>(classes.size());
          c.push_back(y);
        }
      }
      std::sort(c.begin(), c.end());
      classes.push_back(std::move(c));
    }
    return classes;
  }

 private:
  std::vector<std::vector<int>> mul_;
  std::vector<std::string> names_;
  int e_ = 0;
  std::vector<int> inv_;
};

// Finite abelian group in invariant-factor form: Z_{d_1} x ... x Z_{d_k} with
// 2 <= d_1 | d_2 | ... | d_k.  Elements are mixed-radix indices over the
// factor tuple.
class FiniteAbelianGroup {
 public:
  explicit FiniteAbelianGroup(std::vector<long> factors) : factors_(std::move(factors)) {
    for (size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] < 2) throw invalid_input("abelian group: invariant factor < 2");
      if (i > 0 && factors_[i] % factors_[i - 1] != 0)
        throw invalid_input("abelian group: invariant factors must form a divisibility chain");
    }
    order_ = 1;
    for (long d : factors_) order_ *= static_cast<size_t>(d);
  }

  static FiniteAbelianGroup trivial() { return FiniteAbelianGroup(std::vector<long>{}); }

  const std::vector<long>& factors() const { return factors_; }
  size_t order() const { return order_; }
  size_t rank() const { return factors_.size(); }

  long exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  std::vector<long> tuple(size_t index) const {
    std::vector<long> t(factors_.size());
    for (size_t i = factors_.size(); i-- > 0;) {
      t[i] = static_cast<long>(index % factors_[i]);
      index /= factors_[i];
    }
    return t;
  }
  size_t index(const std::vector<long>& t) const {
    if (t.size() != factors_.size()) throw invalid_input("abelian group: tuple size mismatch");
    size_t idx = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
      long v = ((t[i] % factors_[i]) + factors_[i]) % factors_[i];
      idx = idx * factors_[i] + static_cast<size_t>(v);
    }
    return idx;
  }

  int zero() const { return 0; }
  int add(int a, int b) const {
    std::vector<long> x = tuple(a), y = tuple(b);
    for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
    return static_cast<int>(index(x));
  }
  int neg(int a) const {
    std::vector<long> x = tuple(a);
    for (auto& v : x) v = -v;
    return static_cast<int>(index(x));
  }
  int sub(int a, int b) const { return add(a, neg(b)); }

  FiniteGroup as_finite_group() const {
    size_t n = order();
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    std::vector<std::string> names(n);
    for (size_t a = 0; a < n; ++a) {
      auto ta = tuple(a);
      std::string nm = "(";
      for (size_t i = 0; i < ta.size(); ++i) nm += (i ? "," : "") + std::to_string(ta[i]);
      names[a] = nm + ")";
      for (size_t b = 0; b < n; ++b) t[a][b] = add(static_cast<int>(a), static_cast<int>(b));
    }
    return FiniteGroup(std::move(t), std::move(names));
  }

 private:
  std::vector<long> factors_;
  size_t order_ = 1;
};

// Character of a finite abelian group, indexed like a dual-group element: the
// character with tuple c sends g to exp(2 pi i * sum_i c_i g_i / d_i).
class DualCharacter {
 public:
  DualCharacter(const FiniteAbelianGroup& grp, size_t dual_index)
      : factors_(grp.factors()), c_(grp.tuple(dual_index)) {}

  // Additive value in Q/Z.
  Rational value_additive(const std::vector<long>& g) const {
    Rational s(0);
    for (size_t i = 0; i < factors_.size(); ++i)
      s += Rational(Integer(c_[i] * g[i]), Integer(factors_[i]));
    return s.mod1();
  }
  Rational value_additive(const FiniteAbelianGroup& grp, int g) const {
    return value_additive(grp.tuple(g));
  }

  Scalar value(const FiniteAbelianGroup& grp, int g) const {
    return Scalar::root_of_unity(value_additive(grp, g));
  }

  const std::vector<long>& tuple() const { return c_; }

 private:
  std::vector<long> factors_;
  std::vector<long> c_;
};

// Action of a finite group on a finite set, stored as one permutation per
// group element and verified to be a homomorphism.
class GroupAction {
 public:
  GroupAction(const FiniteGroup& grp, std::vector<std::vector<int>> perms, size_t set_size)
      : perms_(std::move(perms)), set_size_(set_size) {
    if (perms_.size() != grp.order()) throw invalid_input("action: one permutation per element required");
    for (const auto& p : perms_) {
      if (p.size() != set_size_) throw invalid_input("action: permutation size mismatch");
      std::vector<bool> seen(set_size_, false);
      for (int x : p) {
        if (x < 0 || static_cast<size_t>(x) >= set_size_ || seen[x])
          throw invalid_input("action: not a permutation");
        seen[x] = true;
      }
    }
    for (size_t x = 0; x < set_size_; ++x)
      if (perms_[grp.identity()][x] != static_cast<int>(x))
        throw invalid_input("action: identity does not act trivially");
    for (size_t g = 0; g < grp.order(); ++g)
      for (size_t h = 0; h < grp.order(); ++h) {
        int gh = grp.mul(static_cast<int>(g), static_cast<int>(h));
        for (size_t x = 0; x < set_size_; ++x)
          if (perms_[g][perms_[h][x]] != perms_[gh][x])
            throw invalid_input("action: not a homomorphism");
      }
  }

  size_t set_size() const { return set_size_; }
  int apply(int g, int x) const { return perms_[g][x]; }
  const std::vector<int>& perm(int g) const { return perms_[g]; }

  std::vector<std::vector<int>> orbits() const {
    std::vector<bool> seen(set_size_, false);
    std::vector<std::vector<int>> out;
    for (size_t x = 0; x < set_size_; ++x) {
      if (seen[x]) continue;
      std::vector<int> orbit;
      std::vector<int> queue{static_cast<int>(x)};
      seen[x] = true;
      while (!queue.empty()) {
        int y = queue.back();
        queue.pop_back();
        orbit.push_back(y);
        for (const auto& p : perms_)
          if (!seen[p[y]]) {
            seen[p[y]] = true;
            queue.push_back(p[y]);
          }
      }
      std::sort(orbit.begin(), orbit.end());
      out.push_back(std::move(orbit));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::vector<int>> perms_;
  size_t set_size_;
};

}  // namespace hopftwist

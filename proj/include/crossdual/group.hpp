#pragma once

// Finite groups as validated multiplication tables, subgroups, cosets, and a
// few standard table constructions.

#include <algorithm>
#include <map>
#include <queue>
#include <string>
#include <vector>

#include "crossdual/matrix.hpp"

namespace crossdual {

struct FiniteGroup {
  int order = 0;
  std::vector<std::vector<int>> table;  // table[s][t] = s*t
  int identity = 0;
  std::vector<int> inverse;
  std::vector<std::string> names;  // optional labels, may be empty

  int mul(int s, int t) const { return table[std::size_t(s)][std::size_t(t)]; }
  int inv(int s) const { return inverse[std::size_t(s)]; }
  /// s^{-1} t s
  int conj(int s, int t) const { return mul(mul(inv(s), t), s); }
  std::string name_of(int s) const {
    return names.empty() ? std::to_string(s) : names[std::size_t(s)];
  }
};

/// Validates a multiplication table and assembles the group. Axioms are
/// checked in a fixed order and the error message names the first violation.
inline FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                              std::vector<std::string> names = {}) {
  const int n = int(table.size());
  require(n > 0, ErrorKind::NotAGroup, "empty multiplication table");
  for (const auto& row : table) {
    require(int(row.size()) == n, ErrorKind::NotAGroup,
            "multiplication table is not square");
    for (int v : row)
      require(0 <= v && v < n, ErrorKind::NotAGroup,
              "table entry out of range");
  }
  require(names.empty() || int(names.size()) == n, ErrorKind::NotAGroup,
          "name list length does not match order");

  // Cancellation: every row and column is a permutation.
  for (int s = 0; s < n; ++s) {
    std::vector<bool> seen_row(std::size_t(n), false), seen_col(std::size_t(n), false);
    for (int t = 0; t < n; ++t) {
      int r = table[std::size_t(s)][std::size_t(t)];
      int c = table[std::size_t(t)][std::size_t(s)];
      require(!seen_row[std::size_t(r)], ErrorKind::NotAGroup,
              "row " + std::to_string(s) + " repeats an element");
      require(!seen_col[std::size_t(c)], ErrorKind::NotAGroup,
              "column " + std::to_string(s) + " repeats an element");
      seen_row[std::size_t(r)] = seen_col[std::size_t(c)] = true;
    }
  }

  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int s = 0; s < n && ok; ++s)
      ok = table[std::size_t(e)][std::size_t(s)] == s &&
           table[std::size_t(s)][std::size_t(e)] == s;
    if (ok) identity = e;
  }
  require(identity >= 0, ErrorKind::NotAGroup, "no identity element");

  std::vector<int> inverse(std::size_t(n), -1);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t)
      if (table[std::size_t(s)][std::size_t(t)] == identity &&
          table[std::size_t(t)][std::size_t(s)] == identity) {
        inverse[std::size_t(s)] = t;
        break;
      }
    require(inverse[std::size_t(s)] >= 0, ErrorKind::NotAGroup,
            "element " + std::to_string(s) + " has no two-sided inverse");
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        require(table[std::size_t(table[std::size_t(a)][std::size_t(b)])][std::size_t(c)] ==
                    table[std::size_t(a)][std::size_t(table[std::size_t(b)][std::size_t(c)])],
                ErrorKind::NotAGroup,
                "associativity fails at (" + std::to_string(a) + "," +
                    std::to_string(b) + "," + std::to_string(c) + ")");

  FiniteGroup g;
  g.order = n;
  g.table = table;
  g.identity = identity;
  g.inverse = std::move(inverse);
  g.names = std::move(names);
  return g;
}

struct Subgroup {
  std::vector<int> elements;  // sorted ascending
  int order() const { return int(elements.size()); }
  bool contains(int s) const {
    return std::binary_search(elements.begin(), elements.end(), s);
  }
  /// Position of s in the sorted element list; -1 if absent.
  int index_of(int s) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), s);
    return (it != elements.end() && *it == s) ? int(it - elements.begin()) : -1;
  }
};

inline Subgroup subgroup_generated(const FiniteGroup& g,
                                   const std::vector<int>& gens) {
  std::vector<bool> in(std::size_t(g.order), false);
  in[std::size_t(g.identity)] = true;
  std::queue<int> work;
  work.push(g.identity);
  for (int s : gens) {
    require(0 <= s && s < g.order, ErrorKind::ShapeMismatch,
            "generator index out of range");
    if (!in[std::size_t(s)]) { in[std::size_t(s)] = true; work.push(s); }
  }
  while (!work.empty()) {
    int s = work.front();
    work.pop();
    for (int t = 0; t < g.order; ++t) {
      if (!in[std::size_t(t)]) continue;
      for (int p : {g.mul(s, t), g.mul(t, s)})
        if (!in[std::size_t(p)]) { in[std::size_t(p)] = true; work.push(p); }
    }
  }
  Subgroup h;
  for (int s = 0; s < g.order; ++s)
    if (in[std::size_t(s)]) h.elements.push_back(s);
  return h;
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) {
  return Subgroup{{g.identity}};
}

inline Subgroup full_subgroup(const FiniteGroup& g) {
  Subgroup h;
  h.elements.resize(std::size_t(g.order));
  for (int s = 0; s < g.order; ++s) h.elements[std::size_t(s)] = s;
  return h;
}

inline bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
  if (h.elements.empty() || !h.contains(g.identity)) return false;
  for (int a : h.elements)
    for (int b : h.elements)
      if (!h.contains(g.mul(a, b))) return false;
  for (int a : h.elements)
    if (!h.contains(g.inv(a))) return false;
  return true;
}

struct Coset {
  int representative;
  std::vector<int> elements;  // sorted ascending
};

/// Right cosets H r of h inside the subset `ambient` (which must be a union
/// of cosets; pass all of G for the usual case). The coset containing the
/// identity is listed first with the identity as representative; the others
/// are represented by their smallest element and sorted by it.
inline std::vector<Coset> right_cosets_within(const FiniteGroup& g,
                                              const Subgroup& h,
                                              const std::vector<int>& ambient) {
  std::vector<Coset> cosets;
  std::vector<bool> used(std::size_t(g.order), false);
  for (int r : ambient) {
    if (used[std::size_t(r)]) continue;
    Coset c;
    for (int x : ambient)
      if (h.contains(g.mul(x, g.inv(r))))  // x in H r  <=>  x r^{-1} in H
        c.elements.push_back(x);
    std::sort(c.elements.begin(), c.elements.end());
    for (int x : c.elements) used[std::size_t(x)] = true;
    const bool has_identity =
        std::binary_search(c.elements.begin(), c.elements.end(), g.identity);
    c.representative = has_identity ? g.identity : c.elements.front();
    cosets.push_back(std::move(c));
  }
  std::sort(cosets.begin(), cosets.end(), [&](const Coset& a, const Coset& b) {
    const bool ia = a.representative == g.identity && a.elements.size() > 0 &&
                    std::binary_search(a.elements.begin(), a.elements.end(), g.identity);
    const bool ib = b.representative == g.identity &&
                    std::binary_search(b.elements.begin(), b.elements.end(), g.identity);
    if (ia != ib) return ia;
    return a.representative < b.representative;
  });
  return cosets;
}

inline std::vector<Coset> right_cosets(const FiniteGroup& g, const Subgroup& h) {
  std::vector<int> all(std::size_t(g.order));
  for (int s = 0; s < g.order; ++s) all[std::size_t(s)] = s;
  return right_cosets_within(g, h, all);
}

/// s^{-1} H s.
inline Subgroup conjugate_subgroup(const FiniteGroup& g, int s,
                                   const Subgroup& h) {
  Subgroup out;
  out.elements.reserve(h.elements.size());
  for (int t : h.elements) out.elements.push_back(g.conj(s, t));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

// ---- standard table constructions ----

inline std::vector<std::vector<int>> cyclic_table(int n) {
  auto t = std::vector<std::vector<int>>(std::size_t(n), std::vector<int>(std::size_t(n), 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[std::size_t(a)][std::size_t(b)] = (a + b) % n;
  return t;
}

inline std::vector<std::vector<int>> direct_product_table(
    const std::vector<std::vector<int>>& t1,
    const std::vector<std::vector<int>>& t2) {
  const int n1 = int(t1.size()), n2 = int(t2.size());
  auto t = std::vector<std::vector<int>>(std::size_t(n1 * n2),
                                         std::vector<int>(std::size_t(n1 * n2), 0));
  auto id = [n2](int a, int b) { return a * n2 + b; };
  for (int a1 = 0; a1 < n1; ++a1)
    for (int a2 = 0; a2 < n2; ++a2)
      for (int b1 = 0; b1 < n1; ++b1)
        for (int b2 = 0; b2 < n2; ++b2)
          t[std::size_t(id(a1, a2))][std::size_t(id(b1, b2))] =
              id(t1[std::size_t(a1)][std::size_t(b1)],
                 t2[std::size_t(a2)][std::size_t(b2)]);
  return t;
}

/// Dihedral group of order 2n; element k*n + r is (rotation r, optional flip k).
inline std::vector<std::vector<int>> dihedral_table(int n) {
  const int o = 2 * n;
  auto t = std::vector<std::vector<int>>(std::size_t(o), std::vector<int>(std::size_t(o), 0));
  auto enc = [n](int flip, int rot) { return flip * n + ((rot % n) + n) % n; };
  for (int f1 = 0; f1 < 2; ++f1)
    for (int r1 = 0; r1 < n; ++r1)
      for (int f2 = 0; f2 < 2; ++f2)
        for (int r2 = 0; r2 < n; ++r2) {
          // sigma^f1 rho^r1 * sigma^f2 rho^r2 = sigma^(f1+f2) rho^(r2 +- r1)
          // via rho^r sigma = sigma rho^(-r).
          const int rot = (f2 == 1) ? (r2 - r1) : (r1 + r2);
          t[std::size_t(enc(f1, r1))][std::size_t(enc(f2, r2))] =
              enc((f1 + f2) % 2, rot);
        }
  return t;
}

/// Quaternion group {1, -1, i, -i, j, -j, k, -k} in that order.
inline std::vector<std::vector<int>> quaternion_table() {
  // Encode q = sign * unit with units 1,i,j,k; index = unit*2 + (sign<0).
  auto mul = [](int a, int b) {
    static const int unit_tab[4][4] = {
        {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign_tab[4][4] = {
        {+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
    int ua = a / 2, sa = a % 2 ? -1 : 1;
    int ub = b / 2, sb = b % 2 ? -1 : 1;
    int u = unit_tab[ua][ub];
    int s = sa * sb * sign_tab[ua][ub];
    return u * 2 + (s < 0 ? 1 : 0);
  };
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) t[std::size_t(a)][std::size_t(b)] = mul(a, b);
  return t;
}

/// Expands a permutation group from generators acting on {0..degree-1} by
/// breadth-first closure; the identity gets index 0 and the element order is
/// the (deterministic) discovery order. Product convention: (p*q)(x) = p(q(x)).
inline std::vector<std::vector<int>> permutation_group_table(
    int degree, const std::vector<std::vector<int>>& generators,
    int max_order = 4096) {
  require(degree > 0, ErrorKind::ParseError, "permutation degree");
  using Perm = std::vector<int>;
  for (const auto& p : generators) {
    require(int(p.size()) == degree, ErrorKind::ParseError,
            "permutation length does not match degree");
    std::vector<bool> seen(std::size_t(degree), false);
    for (int v : p) {
      require(0 <= v && v < degree && !seen[std::size_t(v)],
              ErrorKind::ParseError, "not a permutation");
      seen[std::size_t(v)] = true;
    }
  }
  Perm id(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) id[std::size_t(i)] = i;
  auto compose = [degree](const Perm& p, const Perm& q) {
    Perm out(static_cast<std::size_t>(degree));
    for (int x = 0; x < degree; ++x)
      out[std::size_t(x)] = p[std::size_t(q[std::size_t(x)])];
    return out;
  };

  std::vector<Perm> elems{id};
  std::map<Perm, int> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : generators) {
      Perm next = compose(elems[head], gen);
      if (index.emplace(next, int(elems.size())).second) {
        elems.push_back(next);
        require(int(elems.size()) <= max_order, ErrorKind::ParseError,
                "permutation group exceeds the supported order");
      }
    }
  }

  const int n = int(elems.size());
  auto t = std::vector<std::vector<int>>(std::size_t(n), std::vector<int>(std::size_t(n), 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      t[std::size_t(a)][std::size_t(b)] = index.at(compose(elems[std::size_t(a)], elems[std::size_t(b)]));
  return t;
}

inline std::vector<std::vector<int>> symmetric_table(int degree) {
  std::vector<std::vector<int>> gens;
  if (degree >= 2) {
    std::vector<int> swap01(static_cast<std::size_t>(degree), 0);
    std::vector<int> cycle(static_cast<std::size_t>(degree), 0);
    for (int i = 0; i < degree; ++i) {
      swap01[std::size_t(i)] = i;
      cycle[std::size_t(i)] = (i + 1) % degree;
    }
    std::swap(swap01[0], swap01[1]);
    gens.push_back(swap01);
    gens.push_back(cycle);
  }
  return permutation_group_table(degree, gens);
}

}  // namespace crossdual

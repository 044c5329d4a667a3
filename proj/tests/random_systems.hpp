#pragma once

// Deterministic generator of random dynamical systems used by property
// tests: a menu of groups of order <= 12, block layouts with squared
// dimension budget <= 10, and actions assembled from coset permutations and
// honest inner representations, then conjugated by seeded random unitaries.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "helpers.hpp"

namespace th {

struct GroupChoice {
  std::vector<std::vector<int>> table;
  std::string label;
  bool cyclic = false;  // element i is g^i
  bool quaternion = false;
};

inline GroupChoice group_menu(int pick) {
  switch (((pick % 12) + 12) % 12) {
    case 0: return {cyclic_table(1), "Z1", true, false};
    case 1: return {cyclic_table(2), "Z2", true, false};
    case 2: return {cyclic_table(3), "Z3", true, false};
    case 3: return {cyclic_table(4), "Z4", true, false};
    case 4: return {cyclic_table(6), "Z6", true, false};
    case 5: return {cyclic_table(12), "Z12", true, false};
    case 6:
      return {direct_product_table(cyclic_table(2), cyclic_table(2)), "Z2xZ2",
              false, false};
    case 7: return {symmetric_table(3), "S3", false, false};
    case 8: return {dihedral_table(4), "D4", false, false};
    case 9: return {dihedral_table(6), "D6", false, false};
    case 10: return {quaternion_table(), "Q8", false, true};
    default:
      return {permutation_group_table(4, {{1, 2, 0, 3}, {1, 0, 3, 2}}), "A4",
              false, false};
  }
}

/// A deduplicated sample of subgroups: trivial, full, all cyclic ones, and a
/// few two-generator ones.
inline std::vector<Subgroup> candidate_subgroups(const FiniteGroup& g,
                                                 Rng& rng) {
  std::vector<Subgroup> subs;
  auto push = [&subs](const Subgroup& h) {
    for (const auto& x : subs)
      if (x.elements == h.elements) return;
    subs.push_back(h);
  };
  push(trivial_subgroup(g));
  push(full_subgroup(g));
  for (int s = 0; s < g.order; ++s) push(subgroup_generated(g, {s}));
  for (int k = 0; k < 6; ++k)
    push(subgroup_generated(g, {ri(rng, g.order), ri(rng, g.order)}));
  return subs;
}

/// The two-dimensional unitary representation of the quaternion group in the
/// element order produced by quaternion_table().
inline std::vector<CMat> quaternion_two_dim_rep() {
  const Complex i(0.0, 1.0);
  const CMat units[4] = {CMat::Identity(2, 2), mat2(i, 0, 0, -i),
                         mat2(0, 1, -1, 0), mat2(0, i, i, 0)};
  std::vector<CMat> rep(8);
  for (int u = 0; u < 4; ++u) {
    rep[std::size_t(2 * u)] = units[u];
    rep[std::size_t(2 * u + 1)] = -units[u];
  }
  return rep;
}

/// Permutation matrices of the right-coset action of h: element s moves the
/// coset of r to the coset of r s^{-1}. Composition matches the group law.
struct CosetAction {
  std::vector<std::vector<int>> tau;  // tau[s][j] = target coset of source j
  int count = 0;
};

inline CosetAction coset_action(const FiniteGroup& g, const Subgroup& h) {
  const std::vector<Coset> cosets = right_cosets(g, h);
  std::vector<int> coset_of(std::size_t(g.order), -1);
  for (std::size_t j = 0; j < cosets.size(); ++j)
    for (int x : cosets[j].elements) coset_of[std::size_t(x)] = int(j);
  CosetAction act;
  act.count = int(cosets.size());
  act.tau.assign(std::size_t(g.order), std::vector<int>(cosets.size(), 0));
  for (int s = 0; s < g.order; ++s)
    for (std::size_t j = 0; j < cosets.size(); ++j)
      act.tau[std::size_t(s)][j] =
          coset_of[std::size_t(g.mul(cosets[j].representative, g.inv(s)))];
  return act;
}

inline std::vector<CMat> coset_perm_rep(const FiniteGroup& g,
                                        const Subgroup& h) {
  const CosetAction act = coset_action(g, h);
  std::vector<CMat> rep(std::size_t(g.order));
  for (int s = 0; s < g.order; ++s) {
    CMat p = CMat::Zero(act.count, act.count);
    for (int j = 0; j < act.count; ++j)
      p(act.tau[std::size_t(s)][std::size_t(j)], j) = 1.0;
    rep[std::size_t(s)] = p;
  }
  return rep;
}

/// Diagonal character sum for a cyclic group (element i = g^i).
inline std::vector<CMat> cyclic_char_rep(int order, const std::vector<int>& ks) {
  const int d = int(ks.size());
  std::vector<CMat> rep(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    CMat m = CMat::Zero(d, d);
    for (int l = 0; l < d; ++l) {
      const double angle = 2.0 * M_PI * double(ks[std::size_t(l)] * i) / double(order);
      m(l, l) = Complex(std::cos(angle), std::sin(angle));
    }
    rep[std::size_t(i)] = m;
  }
  return rep;
}

struct RandomSystem {
  DynamicalSystem sys;
  std::string label;
};

/// Deterministic random dynamical system: |G| <= 12 and sum of squared block
/// dimensions <= 10. The action composes exactly (up to rounding), so it
/// passes validation at the default tolerances.
inline RandomSystem random_system(std::uint64_t seed) {
  Rng rng(seed);
  const GroupChoice gc = group_menu(ri(rng, 12));
  FiniteGroup g = from_table(gc.table, {});
  std::vector<Subgroup> subs = candidate_subgroups(g, rng);

  struct Component {
    int m = 1;                         // number of blocks
    int d = 1;                         // common block dimension
    std::vector<std::vector<int>> tau; // per element: block permutation
    std::vector<CMat> inner;           // per element: unitary (m == 1 only)
  };
  std::vector<Component> comps;
  int budget = 10;
  std::string label = gc.label + ":";

  const int planned = 1 + ri(rng, 2);
  for (int cidx = 0; cidx < planned; ++cidx) {
    const int opt = ri(rng, 3);
    bool placed = false;

    if (opt == 2) {  // orbit of blocks over the cosets of a proper subgroup
      std::vector<std::size_t> eligible;
      for (std::size_t i = 0; i < subs.size(); ++i) {
        const int idx = g.order / subs[i].order();
        if (idx >= 2 && idx <= 4) eligible.push_back(i);
      }
      if (!eligible.empty()) {
        const Subgroup& h = subs[eligible[std::size_t(ri(rng, int(eligible.size())))]];
        const int m = g.order / h.order();
        int d0 = 1 + ri(rng, 2);
        if (m * d0 * d0 > budget) d0 = 1;
        if (m * d0 * d0 <= budget) {
          Component comp;
          comp.m = m;
          comp.d = d0;
          comp.tau = coset_action(g, h).tau;
          comps.push_back(std::move(comp));
          budget -= m * d0 * d0;
          label += "orbit" + std::to_string(m) + "x" + std::to_string(d0);
          placed = true;
        }
      }
    }

    if (!placed && opt >= 1) {  // fixed block with an honest inner representation
      const int d = 2 + ri(rng, 2);
      if (d * d <= budget) {
        std::vector<CMat> inner;
        if (gc.quaternion && d == 2) {
          inner = quaternion_two_dim_rep();
        } else if (gc.cyclic) {
          std::vector<int> ks;
          for (int l = 0; l < d; ++l) ks.push_back(ri(rng, g.order));
          inner = cyclic_char_rep(g.order, ks);
        } else {
          // look for a subgroup of index exactly d; fall back to the identity
          std::vector<std::size_t> eligible;
          for (std::size_t i = 0; i < subs.size(); ++i)
            if (g.order / subs[i].order() == d &&
                subs[i].order() * d == g.order)
              eligible.push_back(i);
          if (!eligible.empty())
            inner = coset_perm_rep(
                g, subs[eligible[std::size_t(ri(rng, int(eligible.size())))]]);
          else
            inner.assign(std::size_t(g.order), CMat::Identity(d, d));
        }
        Component comp;
        comp.m = 1;
        comp.d = d;
        comp.tau.assign(std::size_t(g.order), {0});
        comp.inner = std::move(inner);
        comps.push_back(std::move(comp));
        budget -= d * d;
        label += "inner" + std::to_string(d);
        placed = true;
      }
    }

    if (!placed && budget >= 1) {  // scalar summand, necessarily fixed
      Component comp;
      comp.m = 1;
      comp.d = 1;
      comp.tau.assign(std::size_t(g.order), {0});
      comp.inner.assign(std::size_t(g.order), CMat::Identity(1, 1));
      comps.push_back(std::move(comp));
      budget -= 1;
      label += "scalar";
    }
  }
  if (comps.empty()) {
    Component comp;
    comp.m = 1;
    comp.d = 1;
    comp.tau.assign(std::size_t(g.order), {0});
    comp.inner.assign(std::size_t(g.order), CMat::Identity(1, 1));
    comps.push_back(std::move(comp));
    label += "scalar";
  }

  // Assemble the block list and the per-element automorphisms.
  DynamicalSystem sys;
  sys.group = g;
  std::vector<int> offsets;  // first block index of each component
  for (const auto& comp : comps) {
    offsets.push_back(sys.algebra.num_blocks());
    for (int j = 0; j < comp.m; ++j) sys.algebra.block_dims.push_back(comp.d);
  }
  const int nb = sys.algebra.num_blocks();

  // Random change of basis per block, applied as a global conjugation: it
  // preserves exact composition of the action.
  std::vector<CMat> w;
  w.reserve(std::size_t(nb));
  for (int b = 0; b < nb; ++b)
    w.push_back(rng.unitary_matrix(sys.algebra.block_dims[std::size_t(b)]));

  sys.action.resize(std::size_t(g.order));
  for (int s = 0; s < g.order; ++s) {
    Automorphism f;
    f.perm.assign(std::size_t(nb), 0);
    f.unitaries.assign(std::size_t(nb), CMat());
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const Component& comp = comps[c];
      const int o = offsets[c];
      for (int j = 0; j < comp.m; ++j)
        f.perm[std::size_t(o + j)] = o + comp.tau[std::size_t(s)][std::size_t(j)];
    }
    const std::vector<int> inv = inverse_perm(f.perm);
    for (int j = 0; j < nb; ++j) {
      const int i = inv[std::size_t(j)];  // source block feeding target j
      // Base unitary: inner representation on fixed blocks, identity on
      // permuted ones; then the change of basis w_j ... w_i^*.
      CMat base;
      std::size_t c = 0;
      while (c + 1 < comps.size() && offsets[c + 1] <= j) ++c;
      if (comps[c].m == 1)
        base = comps[c].inner[std::size_t(s)];
      else
        base = CMat::Identity(comps[c].d, comps[c].d);
      f.unitaries[std::size_t(j)] =
          w[std::size_t(j)] * base * w[std::size_t(i)].adjoint();
    }
    sys.action[std::size_t(s)] = std::move(f);
  }

  return {std::move(sys), std::move(label)};
}

}  // namespace th

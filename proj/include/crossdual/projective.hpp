#pragma once

// Multipliers (2-cocycles), projective representations of subgroups, the
// intertwining unitaries attached to a stabilized algebra block, and the
// decomposition of twisted group algebras into irreducible projective parts.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "crossdual/algebra.hpp"
#include "crossdual/wedderburn.hpp"

namespace crossdual {

/// A unit-modulus 2-cocycle on a subgroup, tabulated over the subgroup's
/// sorted element list: table(a, b) = omega(elem[a], elem[b]).
struct Multiplier {
  Subgroup subgroup;
  CMat table;

  Complex value(int pos_a, int pos_b) const { return table(pos_a, pos_b); }
  bool is_trivial(double eps) const {
    const Index n = table.rows();
    return (table - CMat::Ones(n, n)).cwiseAbs().maxCoeff() <= eps;
  }
};

inline bool multiplier_close(const Multiplier& a, const Multiplier& b,
                             double eps) {
  if (a.subgroup.elements != b.subgroup.elements) return false;
  if (a.table.rows() != b.table.rows()) return false;
  return (a.table - b.table).cwiseAbs().maxCoeff() <= eps;
}

inline Multiplier conj_multiplier(const Multiplier& m) {
  return Multiplier{m.subgroup, m.table.conjugate()};
}

/// Checks unit modulus, normalization at the identity, and the cocycle
/// identity omega(r,s) omega(rs,t) = omega(s,t) omega(r,st).
inline void validate_multiplier(const FiniteGroup& g, const Multiplier& m,
                                double eps, ErrorKind kind = ErrorKind::ParseError) {
  const int n = m.subgroup.order();
  require(m.table.rows() == n && m.table.cols() == n, ErrorKind::ShapeMismatch,
          "multiplier table size");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      require(std::abs(std::abs(m.table(a, b)) - 1.0) <= eps, kind,
              "multiplier entry is not unit modulus");
  const int pe = m.subgroup.index_of(g.identity);
  require(pe >= 0, kind, "multiplier subgroup lacks the identity");
  for (int a = 0; a < n; ++a)
    require(std::abs(m.table(pe, a) - 1.0) <= eps &&
                std::abs(m.table(a, pe) - 1.0) <= eps,
            kind, "multiplier is not normalized at the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int ab = m.subgroup.index_of(
            g.mul(m.subgroup.elements[std::size_t(a)], m.subgroup.elements[std::size_t(b)]));
        const int bc = m.subgroup.index_of(
            g.mul(m.subgroup.elements[std::size_t(b)], m.subgroup.elements[std::size_t(c)]));
        require(ab >= 0 && bc >= 0, kind, "multiplier subgroup is not closed");
        require(std::abs(m.table(a, b) * m.table(ab, c) -
                         m.table(b, c) * m.table(a, bc)) <= eps,
                kind, "cocycle identity fails");
      }
}

/// Unitary projective representation of a subgroup with a fixed multiplier:
/// w(s) w(t) = omega(s, t) w(st).
struct ProjRep {
  Subgroup subgroup;
  int dim = 0;
  std::vector<CMat> w;  // per subgroup element, sorted order
  Multiplier multiplier;

  const CMat& at(int elem) const { return w[std::size_t(subgroup.index_of(elem))]; }
};

inline void check_projrep(const FiniteGroup& g, const ProjRep& rep, double eps,
                          ErrorKind kind = ErrorKind::ParseError) {
  require(int(rep.w.size()) == rep.subgroup.order(), ErrorKind::ShapeMismatch,
          "projective rep arity");
  for (const auto& u : rep.w)
    require(u.rows() == rep.dim && u.cols() == rep.dim && is_unitary(u, eps),
            kind, "projective rep entry is not unitary");
  validate_multiplier(g, rep.multiplier, eps, kind);
  require(rep.multiplier.subgroup.elements == rep.subgroup.elements,
          ErrorKind::ShapeMismatch, "multiplier subgroup mismatch");
  for (int a = 0; a < rep.subgroup.order(); ++a)
    for (int b = 0; b < rep.subgroup.order(); ++b) {
      const int s = rep.subgroup.elements[std::size_t(a)];
      const int t = rep.subgroup.elements[std::size_t(b)];
      const int pc = rep.subgroup.index_of(g.mul(s, t));
      require((rep.w[std::size_t(a)] * rep.w[std::size_t(b)] -
               rep.multiplier.value(a, b) * rep.w[std::size_t(pc)])
                      .norm() <= eps * std::max(1.0, std::sqrt(double(rep.dim))),
              kind, "projective multiplication rule fails");
    }
}

/// The family of unitaries intertwining pi_block with pi_block . sigma_s for
/// s in the stabilizer, with canonical phases, plus the multiplier they
/// generate. V at the identity is the identity matrix exactly.
struct VFamily {
  int block = 0;
  Subgroup stab;
  std::vector<CMat> v;  // per stabilizer element, sorted order
  Multiplier multiplier;

  const CMat& at(int elem) const { return v[std::size_t(stab.index_of(elem))]; }
};

/// Multiplier of a projective family: omega(s,t) = tr(v_{st}^* v_s v_t) / n,
/// snapped to unit modulus, with the identity row/column pinned to one.
inline Multiplier compute_multiplier(const FiniteGroup& g, const Subgroup& h,
                                     const std::vector<CMat>& v,
                                     const Tolerances& tol = {}) {
  const int m = h.order();
  require(int(v.size()) == m, ErrorKind::ShapeMismatch,
          "one unitary per subgroup element expected");
  require(m > 0 && h.contains(g.identity), ErrorKind::ShapeMismatch,
          "subgroup must contain the identity");
  const Index n = v[0].rows();
  Multiplier out;
  out.subgroup = h;
  out.table = CMat::Ones(m, m);
  const int pe = h.index_of(g.identity);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (a == pe || b == pe) { out.table(a, b) = 1.0; continue; }
      const int s = h.elements[std::size_t(a)], t = h.elements[std::size_t(b)];
      const int pc = h.index_of(g.mul(s, t));
      require(pc >= 0, ErrorKind::ShapeMismatch, "element list is not a subgroup");
      const Complex z =
          (v[std::size_t(pc)].adjoint() * v[std::size_t(a)] * v[std::size_t(b)]).trace() /
          double(n);
      // |z| = 1 holds exactly iff v_s v_t is a scalar multiple of v_{st}.
      require(std::abs(std::abs(z) - 1.0) <= 1e2 * tol.eps_eq,
              ErrorKind::NotUnitScalar,
              "products do not close projectively at (" + g.name_of(s) + ", " +
                  g.name_of(t) + ")");
      out.table(a, b) = z / std::abs(z);
    }
  validate_multiplier(g, out, 1e3 * tol.eps_eq, ErrorKind::InternalInconsistency);
  return out;
}

/// Canonical intertwining family of a stabilized block. Each v_s spans the
/// (one-dimensional, by irreducibility of the block) space of solutions of
/// v pi(x) = pi(sigma_s(x)) v and is normalized to a canonical-phase unitary.
inline VFamily compute_V(const DynamicalSystem& sys, int block,
                         const Tolerances& tol = {}) {
  const int n = sys.algebra.block_dims[std::size_t(block)];
  VFamily out;
  out.block = block;
  out.stab = stability_group(sys, block);

  // Generators: the block's own matrix units and their images under sigma_s.
  std::vector<CMat> gens_a;
  gens_a.reserve(std::size_t(n) * std::size_t(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      CMat e = CMat::Zero(n, n);
      e(r, c) = 1.0;
      gens_a.push_back(std::move(e));
    }

  for (int s : out.stab.elements) {
    if (s == sys.group.identity) {
      out.v.push_back(CMat::Identity(n, n));
      continue;
    }
    std::vector<CMat> gens_b;
    gens_b.reserve(gens_a.size());
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const AlgebraElement img =
            apply(sys.algebra, sys.sigma(s), matrix_unit(sys.algebra, block, r, c));
        gens_b.push_back(img.blocks[std::size_t(block)]);
      }
    const std::vector<CMat> basis = intertwiner_basis(gens_a, gens_b, tol);
    require(basis.size() == 1, ErrorKind::InternalInconsistency,
            "intertwiner space of a stabilized block is not one-dimensional");
    out.v.push_back(unitary_normalize(basis[0], tol));
  }
  out.multiplier = compute_multiplier(sys.group, out.stab, out.v, tol);
  return out;
}

/// Left regular representation of the twisted group algebra:
/// L(s) e_t = omega(s, t) e_{st}.
inline ProjRep twisted_regular_rep(const FiniteGroup& g, const Multiplier& m) {
  const int n = m.subgroup.order();
  ProjRep rep;
  rep.subgroup = m.subgroup;
  rep.dim = n;
  rep.multiplier = m;
  for (int a = 0; a < n; ++a) {
    CMat l = CMat::Zero(n, n);
    const int s = m.subgroup.elements[std::size_t(a)];
    for (int b = 0; b < n; ++b) {
      const int t = m.subgroup.elements[std::size_t(b)];
      const int pc = m.subgroup.index_of(g.mul(s, t));
      l(pc, b) = m.value(a, b);
    }
    rep.w.push_back(std::move(l));
  }
  return rep;
}

/// All irreducible omega-projective representations of the subgroup, one per
/// equivalence class, obtained by decomposing the twisted regular
/// representation. The squared dimensions add up to the subgroup order.
inline std::vector<ProjRep> irreducible_omega_reps(const FiniteGroup& g,
                                                   const Multiplier& m,
                                                   const Tolerances& tol = {}) {
  const ProjRep reg = twisted_regular_rep(g, m);
  const std::vector<WedderburnBlock> blocks = wedderburn_blocks(reg.w, tol);
  long dim_sq = 0;
  std::vector<ProjRep> out;
  out.reserve(blocks.size());
  for (const auto& blk : blocks) {
    ProjRep w;
    w.subgroup = m.subgroup;
    w.dim = blk.dim;
    w.multiplier = m;
    for (const auto& l : reg.w)
      w.w.push_back(blk.isometry.adjoint() * l * blk.isometry);
    check_projrep(g, w, 1e3 * tol.eps_eq, ErrorKind::InternalInconsistency);
    dim_sq += long(blk.dim) * blk.dim;
    out.push_back(std::move(w));
  }
  require(dim_sq == long(m.subgroup.order()), ErrorKind::InternalInconsistency,
          "irreducible projective dimensions do not fill the twisted algebra");
  return out;
}

/// Entrywise conjugate; its multiplier is the conjugate multiplier.
inline ProjRep conjugate_rep(const ProjRep& w) {
  ProjRep out;
  out.subgroup = w.subgroup;
  out.dim = w.dim;
  out.multiplier = conj_multiplier(w.multiplier);
  out.w.reserve(w.w.size());
  for (const auto& u : w.w) out.w.push_back(u.conjugate());
  return out;
}

/// Translate of a projective representation to the conjugated subgroup
/// s^{-1} H s: (s.w)(k) = w(s k s^{-1}).
inline ProjRep translate_rep(const FiniteGroup& g, int s, const ProjRep& w) {
  ProjRep out;
  out.subgroup.elements.reserve(w.subgroup.elements.size());
  for (int h : w.subgroup.elements) out.subgroup.elements.push_back(g.conj(s, h));
  std::sort(out.subgroup.elements.begin(), out.subgroup.elements.end());
  out.dim = w.dim;

  const int n = out.subgroup.order();
  auto back = [&](int k) {  // s k s^{-1}, an element of the original subgroup
    return g.mul(g.mul(s, k), g.inv(s));
  };
  out.w.reserve(std::size_t(n));
  CMat table(n, n);
  for (int a = 0; a < n; ++a) {
    const int ka = out.subgroup.elements[std::size_t(a)];
    out.w.push_back(w.at(back(ka)));
    for (int b = 0; b < n; ++b) {
      const int kb = out.subgroup.elements[std::size_t(b)];
      table(a, b) = w.multiplier.value(w.subgroup.index_of(back(ka)),
                                       w.subgroup.index_of(back(kb)));
    }
  }
  out.multiplier = Multiplier{out.subgroup, std::move(table)};
  return out;
}

/// Unitary equivalence of projective representations over the same subgroup.
/// Different multipliers (beyond tolerance) or dimensions give no intertwiner.
inline std::optional<CMat> proj_equivalent(const ProjRep& w1, const ProjRep& w2,
                                           const Tolerances& tol = {}) {
  if (w1.subgroup.elements != w2.subgroup.elements) return std::nullopt;
  if (w1.dim != w2.dim) return std::nullopt;
  if (!multiplier_close(w1.multiplier, w2.multiplier, 1e3 * tol.eps_eq))
    return std::nullopt;
  return unitary_intertwiner(w1.w, w2.w, tol);
}

}  // namespace crossdual

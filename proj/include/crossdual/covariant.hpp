#pragma once

// Covariant representations of a dynamical system restricted to a subgroup:
// validation, the tensor construction over a stabilized block, induction up
// to the full group, conjugation, and unitary equivalence.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "crossdual/projective.hpp"

namespace crossdual {

/// A pair (pi, u) with pi a unital *-representation of the algebra (stored on
/// the canonical matrix units) and u a genuine unitary representation of the
/// subgroup satisfying u(s) pi(x) u(s)^* = pi(sigma_s(x)).
struct CovariantRep {
  Subgroup subgroup;
  int space_dim = 0;
  std::vector<CMat> pi;  // per matrix unit, canonical flat order
  std::vector<CMat> u;   // per subgroup element, sorted order

  const CMat& u_at(int elem) const {
    return u[std::size_t(subgroup.index_of(elem))];
  }
};

/// pi extended linearly from the matrix units to an arbitrary element.
inline CMat apply_pi(const FdCStarAlgebra& a, const CovariantRep& c,
                     const AlgebraElement& x) {
  require_element_shape(a, x, "apply_pi");
  CMat out = CMat::Zero(c.space_dim, c.space_dim);
  int flat = 0;
  for (int i = 0; i < a.num_blocks(); ++i) {
    const int n = a.block_dims[std::size_t(i)];
    for (int r = 0; r < n; ++r)
      for (int cc = 0; cc < n; ++cc) {
        const Complex coeff = x.blocks[std::size_t(i)](r, cc);
        if (coeff != Complex(0, 0)) out += coeff * c.pi[std::size_t(flat)];
        ++flat;
      }
  }
  return out;
}

/// Full validation: pi is a unital *-homomorphism, u a unitary representation
/// of the subgroup, and the covariance relation holds on every matrix unit.
inline void check_covariant(const DynamicalSystem& sys, const CovariantRep& c,
                            const Tolerances& tol = {},
                            ErrorKind kind = ErrorKind::ParseError) {
  const FdCStarAlgebra& a = sys.algebra;
  const int units = a.unit_count();
  require(int(c.pi.size()) == units, ErrorKind::ShapeMismatch,
          "one pi image per matrix unit expected");
  require(int(c.u.size()) == c.subgroup.order() && c.subgroup.order() > 0,
          ErrorKind::ShapeMismatch, "one unitary per subgroup element expected");
  require(is_subgroup(sys.group, c.subgroup), kind,
          "covariant rep subgroup is not a subgroup");
  const Index n = c.space_dim;
  for (const auto& m : c.pi)
    require(m.rows() == n && m.cols() == n, ErrorKind::ShapeMismatch,
            "pi image size");
  const double eps = 1e3 * tol.eps_eq * std::max(1.0, std::sqrt(double(n)));

  // *-homomorphism on units: products, adjoints, and the unit itself.
  CMat sum_diag = CMat::Zero(n, n);
  for (int i = 0; i < a.num_blocks(); ++i) {
    const int d = a.block_dims[std::size_t(i)];
    for (int r = 0; r < d; ++r)
      sum_diag += c.pi[std::size_t(unit_flat_index(a, i, r, r))];
  }
  require(approx_equal(sum_diag, CMat::Identity(n, n), eps), kind,
          "representation is not unital");
  for (int i = 0; i < a.num_blocks(); ++i) {
    const int d = a.block_dims[std::size_t(i)];
    for (int r = 0; r < d; ++r)
      for (int cc = 0; cc < d; ++cc) {
        const CMat& e = c.pi[std::size_t(unit_flat_index(a, i, r, cc))];
        require(approx_equal(e.adjoint(),
                             c.pi[std::size_t(unit_flat_index(a, i, cc, r))], eps),
                kind, "representation does not respect adjoints");
      }
  }
  for (int i = 0; i < a.num_blocks(); ++i) {
    const int di = a.block_dims[std::size_t(i)];
    for (int j = 0; j < a.num_blocks(); ++j) {
      const int dj = a.block_dims[std::size_t(j)];
      for (int r = 0; r < di; ++r)
        for (int cc = 0; cc < di; ++cc)
          for (int r2 = 0; r2 < dj; ++r2)
            for (int c2 = 0; c2 < dj; ++c2) {
              const CMat prod = c.pi[std::size_t(unit_flat_index(a, i, r, cc))] *
                                c.pi[std::size_t(unit_flat_index(a, j, r2, c2))];
              const CMat expect =
                  (i == j && cc == r2)
                      ? c.pi[std::size_t(unit_flat_index(a, i, r, c2))]
                      : CMat::Zero(n, n);
              require(approx_equal(prod, expect, eps), kind,
                      "representation is not multiplicative");
            }
    }
  }

  for (const auto& m : c.u)
    require(is_unitary(m, eps), kind, "group part is not unitary");
  require(approx_equal(c.u_at(sys.group.identity), CMat::Identity(n, n), eps),
          kind, "group part does not map the identity to the identity");
  for (int sa : c.subgroup.elements)
    for (int sb : c.subgroup.elements)
      require(approx_equal(c.u_at(sa) * c.u_at(sb), c.u_at(sys.group.mul(sa, sb)), eps),
              kind, "group part is not multiplicative");

  for (int s : c.subgroup.elements)
    for (int flat = 0; flat < units; ++flat) {
      const AlgebraElement img =
          apply(a, sys.sigma(s), matrix_unit(a, flat));
      require(approx_equal(c.u_at(s) * c.pi[std::size_t(flat)] * c.u_at(s).adjoint(),
                           apply_pi(a, c, img), eps),
              kind, "covariance relation fails");
    }
}

/// Scalar joint commutant test.
inline bool is_irreducible_covariant(const CovariantRep& c,
                                     const Tolerances& tol = {}) {
  std::vector<CMat> gens = c.pi;
  gens.insert(gens.end(), c.u.begin(), c.u.end());
  return commutant_basis(gens, c.space_dim, tol).size() == 1;
}

/// Covariant representation of the stabilizer attached to a block and an
/// irreducible projective representation with the block's multiplier:
/// pi tensor 1 on the algebra and V(s) tensor conj(W(s)) on the stabilizer.
inline CovariantRep covariant_from_pair(const DynamicalSystem& sys,
                                        const VFamily& vf, const ProjRep& w,
                                        const Tolerances& tol = {}) {
  require(vf.stab.elements == w.subgroup.elements, ErrorKind::ShapeMismatch,
          "projective rep is not over the block stabilizer");
  require(multiplier_close(w.multiplier, vf.multiplier, 1e3 * tol.eps_eq),
          ErrorKind::MultiplierMismatch,
          "projective rep multiplier does not match the block multiplier");
  const FdCStarAlgebra& a = sys.algebra;
  const int n = a.block_dims[std::size_t(vf.block)];
  const int d = w.dim;
  CovariantRep out;
  out.subgroup = vf.stab;
  out.space_dim = n * d;
  out.pi.reserve(std::size_t(a.unit_count()));
  const CMat idw = CMat::Identity(d, d);
  for (int i = 0; i < a.num_blocks(); ++i) {
    const int di = a.block_dims[std::size_t(i)];
    for (int r = 0; r < di; ++r)
      for (int cc = 0; cc < di; ++cc) {
        if (i != vf.block) {
          out.pi.push_back(CMat::Zero(out.space_dim, out.space_dim));
        } else {
          CMat e = CMat::Zero(n, n);
          e(r, cc) = 1.0;
          out.pi.push_back(kron(e, idw));
        }
      }
  }
  out.u.reserve(vf.v.size());
  for (std::size_t k = 0; k < vf.v.size(); ++k)
    out.u.push_back(kron(vf.v[k], w.w[k].conjugate()));
  return out;
}

/// Induction of a covariant representation of a subgroup up to the full
/// group, realized on functions xi with xi(ts) = u(t) xi(s), coordinatized by
/// the canonical right-coset representatives.
inline CovariantRep induce(const DynamicalSystem& sys, const Subgroup& h,
                           const CovariantRep& c) {
  require(c.subgroup.elements == h.elements, ErrorKind::ShapeMismatch,
          "representation is not over the inducing subgroup");
  const FdCStarAlgebra& a = sys.algebra;
  const std::vector<Coset> cosets = right_cosets(sys.group, h);
  const int k = int(cosets.size());
  const int n0 = c.space_dim;
  CovariantRep out;
  out.subgroup = full_subgroup(sys.group);
  out.space_dim = k * n0;

  out.pi.reserve(std::size_t(a.unit_count()));
  for (int flat = 0; flat < a.unit_count(); ++flat) {
    CMat big = CMat::Zero(out.space_dim, out.space_dim);
    for (int i = 0; i < k; ++i) {
      const AlgebraElement img = apply(
          a, sys.sigma(cosets[std::size_t(i)].representative), matrix_unit(a, flat));
      big.block(i * n0, i * n0, n0, n0) = apply_pi(a, c, img);
    }
    out.pi.push_back(std::move(big));
  }

  // (u(t) xi)(r_i) = xi(r_i t) = c.u(r_i t r_j^{-1}) xi(r_j) where j is the
  // coset of r_i t.
  out.u.reserve(std::size_t(sys.group.order));
  for (int t = 0; t < sys.group.order; ++t) {
    CMat big = CMat::Zero(out.space_dim, out.space_dim);
    for (int i = 0; i < k; ++i) {
      const int x = sys.group.mul(cosets[std::size_t(i)].representative, t);
      int j = -1;
      for (int jj = 0; jj < k && j < 0; ++jj)
        if (h.contains(sys.group.mul(x, sys.group.inv(cosets[std::size_t(jj)].representative))))
          j = jj;
      require(j >= 0, ErrorKind::InternalInconsistency, "coset lookup failed");
      const int hh = sys.group.mul(x, sys.group.inv(cosets[std::size_t(j)].representative));
      big.block(i * n0, j * n0, n0, n0) = c.u_at(hh);
    }
    out.u.push_back(std::move(big));
  }
  return out;
}

/// Pullback along sigma_s: maps a representation of H to one of s^{-1} H s,
/// with pi' = pi . sigma_s and u'(k) = u(s k s^{-1}).
inline CovariantRep conjugate_covariant(const DynamicalSystem& sys, int s,
                                        const CovariantRep& c) {
  const FdCStarAlgebra& a = sys.algebra;
  CovariantRep out;
  out.subgroup.elements.reserve(c.subgroup.elements.size());
  for (int t : c.subgroup.elements)
    out.subgroup.elements.push_back(sys.group.conj(s, t));
  std::sort(out.subgroup.elements.begin(), out.subgroup.elements.end());
  out.space_dim = c.space_dim;
  out.pi.reserve(std::size_t(a.unit_count()));
  for (int flat = 0; flat < a.unit_count(); ++flat)
    out.pi.push_back(
        apply_pi(a, c, apply(a, sys.sigma(s), matrix_unit(a, flat))));
  out.u.reserve(c.u.size());
  for (int kk : out.subgroup.elements)
    out.u.push_back(c.u_at(sys.group.mul(sys.group.mul(s, kk), sys.group.inv(s))));
  return out;
}

/// The explicit unitary (V xi)(r) = xi(s r) from the induction of c over h to
/// the induction of the conjugated representation over s^{-1} h s. It is a
/// coset-permutation matrix whose nonzero blocks are values of c's group part.
inline CMat conjugation_induction_unitary(const DynamicalSystem& sys,
                                          const Subgroup& h,
                                          const CovariantRep& c, int s) {
  const std::vector<Coset> src = right_cosets(sys.group, h);
  const Subgroup hs = conjugate_subgroup(sys.group, s, h);
  const std::vector<Coset> dst = right_cosets(sys.group, hs);
  const int k = int(src.size());
  require(int(dst.size()) == k, ErrorKind::InternalInconsistency,
          "conjugate subgroup has a different index");
  const int n0 = c.space_dim;
  CMat v = CMat::Zero(k * n0, k * n0);
  for (int j = 0; j < k; ++j) {
    const int x = sys.group.mul(s, dst[std::size_t(j)].representative);  // s rho_j
    int i = -1;
    for (int ii = 0; ii < k && i < 0; ++ii)
      if (h.contains(sys.group.mul(x, sys.group.inv(src[std::size_t(ii)].representative))))
        i = ii;
    require(i >= 0, ErrorKind::InternalInconsistency, "coset lookup failed");
    const int hh = sys.group.mul(x, sys.group.inv(src[std::size_t(i)].representative));
    v.block(j * n0, i * n0, n0, n0) = c.u_at(hh);
  }
  return v;
}

/// Unitary equivalence as covariant representations: a single unitary
/// intertwining the algebra part and the group part simultaneously.
inline std::optional<CMat> covariant_equivalent(const CovariantRep& c1,
                                                const CovariantRep& c2,
                                                const Tolerances& tol = {}) {
  if (c1.subgroup.elements != c2.subgroup.elements) return std::nullopt;
  if (c1.space_dim != c2.space_dim) return std::nullopt;
  std::vector<CMat> ga = c1.pi, gb = c2.pi;
  ga.insert(ga.end(), c1.u.begin(), c1.u.end());
  gb.insert(gb.end(), c2.u.begin(), c2.u.end());
  return unitary_intertwiner(ga, gb, tol);
}

/// Restriction to a smaller subgroup (elements must be contained in the
/// representation's subgroup).
inline CovariantRep restrict_covariant(const CovariantRep& c,
                                       const Subgroup& h) {
  CovariantRep out;
  out.subgroup = h;
  out.space_dim = c.space_dim;
  out.pi = c.pi;
  out.u.reserve(h.elements.size());
  for (int s : h.elements) {
    require(c.subgroup.contains(s), ErrorKind::ShapeMismatch,
            "restriction target is not contained in the subgroup");
    out.u.push_back(c.u_at(s));
  }
  return out;
}

}  // namespace crossdual

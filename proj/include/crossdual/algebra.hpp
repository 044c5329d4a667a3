#pragma once

// Finite-dimensional C*-algebras (direct sums of matrix blocks), their
// automorphisms as block permutations with implementing unitaries, group
// actions, and the induced action on the set of irreducible representations.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "crossdual/group.hpp"
#include "crossdual/linalg.hpp"

namespace crossdual {

struct FdCStarAlgebra {
  std::vector<int> block_dims;

  int num_blocks() const { return int(block_dims.size()); }
  /// Linear dimension, sum of squared block sizes.
  int dim() const {
    int d = 0;
    for (int n : block_dims) d += n * n;
    return d;
  }
  /// Dimension of the standard representation space, sum of block sizes.
  int std_dim() const {
    int d = 0;
    for (int n : block_dims) d += n;
    return d;
  }
  int unit_count() const { return dim(); }
};

inline void validate_algebra(const FdCStarAlgebra& a) {
  require(!a.block_dims.empty(), ErrorKind::ParseError,
          "algebra needs at least one block");
  for (int n : a.block_dims)
    require(n >= 1, ErrorKind::ParseError, "block dimensions must be positive");
}

struct AlgebraElement {
  std::vector<CMat> blocks;
};

inline AlgebraElement zero_element(const FdCStarAlgebra& a) {
  AlgebraElement x;
  x.blocks.reserve(a.block_dims.size());
  for (int n : a.block_dims) x.blocks.push_back(CMat::Zero(n, n));
  return x;
}

inline AlgebraElement identity_element(const FdCStarAlgebra& a) {
  AlgebraElement x;
  for (int n : a.block_dims) x.blocks.push_back(CMat::Identity(n, n));
  return x;
}

inline void require_element_shape(const FdCStarAlgebra& a,
                                  const AlgebraElement& x, const char* who) {
  require(x.blocks.size() == a.block_dims.size(), ErrorKind::ShapeMismatch,
          std::string(who) + ": block count");
  for (std::size_t i = 0; i < x.blocks.size(); ++i)
    require(x.blocks[i].rows() == a.block_dims[i] &&
                x.blocks[i].cols() == a.block_dims[i],
            ErrorKind::ShapeMismatch, std::string(who) + ": block shape");
}

/// Canonical enumeration of matrix units: blocks in order, entries row-major.
struct UnitIndex {
  int block, row, col;
};

inline int unit_flat_index(const FdCStarAlgebra& a, int block, int row, int col) {
  int off = 0;
  for (int i = 0; i < block; ++i) off += a.block_dims[std::size_t(i)] * a.block_dims[std::size_t(i)];
  return off + row * a.block_dims[std::size_t(block)] + col;
}

inline UnitIndex unit_from_flat(const FdCStarAlgebra& a, int flat) {
  for (int i = 0; i < a.num_blocks(); ++i) {
    const int n = a.block_dims[std::size_t(i)];
    if (flat < n * n) return UnitIndex{i, flat / n, flat % n};
    flat -= n * n;
  }
  fail(ErrorKind::ShapeMismatch, "matrix unit index out of range");
}

inline AlgebraElement matrix_unit(const FdCStarAlgebra& a, int block, int row,
                                  int col) {
  AlgebraElement x = zero_element(a);
  x.blocks[std::size_t(block)](row, col) = 1.0;
  return x;
}

inline AlgebraElement matrix_unit(const FdCStarAlgebra& a, int flat) {
  const UnitIndex u = unit_from_flat(a, flat);
  return matrix_unit(a, u.block, u.row, u.col);
}

/// Block-diagonal matrix of x in the standard representation.
inline CMat std_rep(const FdCStarAlgebra& a, const AlgebraElement& x) {
  require_element_shape(a, x, "std_rep");
  return block_diag(x.blocks);
}

/// Automorphism of a multi-block algebra: a permutation tau of the blocks
/// (perm[i] = tau(i) is the target of source block i, which forces
/// dim-preservation) together with one unitary per target block, acting as
/// sigma(x)_j = u_j x_{tau^{-1}(j)} u_j^*.
struct Automorphism {
  std::vector<int> perm;
  std::vector<CMat> unitaries;
};

inline std::vector<int> inverse_perm(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size(), -1);
  for (std::size_t i = 0; i < perm.size(); ++i) inv[std::size_t(perm[i])] = int(i);
  return inv;
}

inline void validate_automorphism(const FdCStarAlgebra& a,
                                  const Automorphism& s, double eps) {
  const int nb = a.num_blocks();
  require(int(s.perm.size()) == nb && int(s.unitaries.size()) == nb,
          ErrorKind::ParseError, "automorphism arity");
  std::vector<bool> hit(std::size_t(nb), false);
  for (int i = 0; i < nb; ++i) {
    const int j = s.perm[std::size_t(i)];
    require(0 <= j && j < nb && !hit[std::size_t(j)], ErrorKind::ParseError,
            "block permutation is not a bijection");
    hit[std::size_t(j)] = true;
    require(a.block_dims[std::size_t(i)] == a.block_dims[std::size_t(j)],
            ErrorKind::ParseError,
            "block permutation does not preserve dimensions");
  }
  for (int j = 0; j < nb; ++j) {
    const int n = a.block_dims[std::size_t(j)];
    require(s.unitaries[std::size_t(j)].rows() == n &&
                s.unitaries[std::size_t(j)].cols() == n,
            ErrorKind::ParseError, "unitary size does not match its block");
    require(is_unitary(s.unitaries[std::size_t(j)], std::max(eps, 1e-8) * 1e2),
            ErrorKind::ParseError, "automorphism entry is not unitary");
  }
}

inline AlgebraElement apply(const FdCStarAlgebra& a, const Automorphism& s,
                            const AlgebraElement& x) {
  require_element_shape(a, x, "apply");
  const std::vector<int> inv = inverse_perm(s.perm);
  AlgebraElement out = zero_element(a);
  for (int j = 0; j < a.num_blocks(); ++j) {
    const CMat& u = s.unitaries[std::size_t(j)];
    out.blocks[std::size_t(j)] = u * x.blocks[std::size_t(inv[std::size_t(j)])] * u.adjoint();
  }
  return out;
}

struct DynamicalSystem {
  FdCStarAlgebra algebra;
  FiniteGroup group;
  std::vector<Automorphism> action;  // indexed by group element

  const Automorphism& sigma(int s) const { return action[std::size_t(s)]; }
};

struct ActionCheck {
  int pairs_checked = 0;
  int units_checked = 0;
};

/// Verifies sigma is a genuine action: sigma_e = id and
/// sigma_s(sigma_t(x)) = sigma_{st}(x) on every matrix unit. The comparison
/// is at the level of the maps themselves, so implementing unitaries are free
/// to differ by phases.
inline ActionCheck check_action(const DynamicalSystem& sys,
                                const Tolerances& tol = {}) {
  validate_algebra(sys.algebra);
  require(int(sys.action.size()) == sys.group.order, ErrorKind::NotAnAction,
          "need one automorphism per group element");
  for (const auto& s : sys.action)
    validate_automorphism(sys.algebra, s, tol.eps_eq);

  const double eps = 1e3 * tol.eps_eq;
  ActionCheck rep;
  const int units = sys.algebra.unit_count();

  for (int u = 0; u < units; ++u) {
    const AlgebraElement e = matrix_unit(sys.algebra, u);
    const AlgebraElement img = apply(sys.algebra, sys.sigma(sys.group.identity), e);
    for (int b = 0; b < sys.algebra.num_blocks(); ++b)
      require(approx_equal(img.blocks[std::size_t(b)], e.blocks[std::size_t(b)], eps),
              ErrorKind::NotAnAction, "identity element does not act trivially");
    ++rep.units_checked;
  }

  for (int s = 0; s < sys.group.order; ++s)
    for (int t = 0; t < sys.group.order; ++t) {
      const int st = sys.group.mul(s, t);
      for (int u = 0; u < units; ++u) {
        const AlgebraElement e = matrix_unit(sys.algebra, u);
        const AlgebraElement lhs =
            apply(sys.algebra, sys.sigma(s), apply(sys.algebra, sys.sigma(t), e));
        const AlgebraElement rhs = apply(sys.algebra, sys.sigma(st), e);
        for (int b = 0; b < sys.algebra.num_blocks(); ++b)
          require(
              approx_equal(lhs.blocks[std::size_t(b)], rhs.blocks[std::size_t(b)], eps),
              ErrorKind::NotAnAction,
              "composition fails at pair (" + sys.group.name_of(s) + ", " +
                  sys.group.name_of(t) + ") on unit " + std::to_string(u));
      }
      ++rep.pairs_checked;
    }
  return rep;
}

/// One irreducible representation of the algebra per matrix block.
struct IrrRep {
  int block;
  int dim;
};

inline std::vector<IrrRep> algebra_dual(const FdCStarAlgebra& a) {
  std::vector<IrrRep> out;
  out.reserve(a.block_dims.size());
  for (int i = 0; i < a.num_blocks(); ++i)
    out.push_back(IrrRep{i, a.block_dims[std::size_t(i)]});
  return out;
}

/// The representation pi_i composed with sigma_s is equivalent to pi_j for
/// j = tau_s^{-1}(i); returns j together with the implementing unitary u with
/// pi_i(sigma_s(x)) = u pi_j(x) u^*. This is a right action: (i.s).t = i.(st).
inline std::pair<int, CMat> dual_action(const DynamicalSystem& sys, int s,
                                        int block) {
  const Automorphism& a = sys.sigma(s);
  const std::vector<int> inv = inverse_perm(a.perm);
  return {inv[std::size_t(block)], a.unitaries[std::size_t(block)]};
}

/// Stabilizer of pi_block under the dual action.
inline Subgroup stability_group(const DynamicalSystem& sys, int block) {
  Subgroup h;
  for (int s = 0; s < sys.group.order; ++s)
    if (dual_action(sys, s, block).first == block) h.elements.push_back(s);
  std::sort(h.elements.begin(), h.elements.end());
  return h;
}

}  // namespace crossdual

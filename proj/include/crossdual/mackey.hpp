#pragma once

// The classification machinery: the parameter space of (block, projective
// representation) pairs, the group action on it, the induction map into
// irreducible covariant representations, orbit computation, matching of a
// given representation against the catalogue, and the ergodic decomposition
// of an invariant algebra into minimal projections.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "crossdual/covariant.hpp"

namespace crossdual {

/// A point of the parameter space: an algebra block (standing for its
/// irreducible representation) together with an irreducible projective
/// representation of the block's stabilizer whose multiplier is the one
/// generated by the block's intertwining family.
struct GammaPoint {
  int block = 0;
  VFamily vf;
  ProjRep w;
};

/// Canonical intertwining families, one per algebra block.
inline std::vector<VFamily> canonical_vfamilies(const DynamicalSystem& sys,
                                                const Tolerances& tol = {}) {
  std::vector<VFamily> out;
  out.reserve(std::size_t(sys.algebra.num_blocks()));
  for (int i = 0; i < sys.algebra.num_blocks(); ++i)
    out.push_back(compute_V(sys, i, tol));
  return out;
}

/// All points of the parameter space, ordered by block and then by the
/// (deterministic) order in which the twisted group algebra decomposition
/// lists the irreducible projective representations.
inline std::vector<GammaPoint> enumerate_gamma(const DynamicalSystem& sys,
                                               const std::vector<VFamily>& vfs,
                                               const Tolerances& tol = {}) {
  require(int(vfs.size()) == sys.algebra.num_blocks(), ErrorKind::ShapeMismatch,
          "one intertwining family per block expected");
  std::vector<GammaPoint> out;
  for (int i = 0; i < sys.algebra.num_blocks(); ++i) {
    const std::vector<ProjRep> ws =
        irreducible_omega_reps(sys.group, vfs[std::size_t(i)].multiplier, tol);
    for (const auto& w : ws)
      out.push_back(GammaPoint{i, vfs[std::size_t(i)], w});
  }
  return out;
}

inline std::vector<GammaPoint> enumerate_gamma(const DynamicalSystem& sys,
                                               const Tolerances& tol = {}) {
  return enumerate_gamma(sys, canonical_vfamilies(sys, tol), tol);
}

/// Covariant representation of the stabilizer attached to a parameter point.
inline CovariantRep stab_covariant(const DynamicalSystem& sys,
                                   const GammaPoint& gamma,
                                   const Tolerances& tol = {}) {
  return covariant_from_pair(sys, gamma.vf, gamma.w, tol);
}

/// The induction map: an irreducible covariant representation of the full
/// group. Irreducibility is certified by a scalar joint commutant.
inline CovariantRep phi(const DynamicalSystem& sys, const GammaPoint& gamma,
                        const Tolerances& tol = {}) {
  const CovariantRep ind =
      induce(sys, gamma.vf.stab, stab_covariant(sys, gamma, tol));
  require(is_irreducible_covariant(ind, tol), ErrorKind::InternalInconsistency,
          "induced representation of a parameter point is not irreducible");
  return ind;
}

/// The group action on parameter points. The target point lives over the
/// block j with pi_i . sigma_s ~ pi_j; its projective representation is the
/// translate of gamma's, corrected by the coherence phases between the
/// conjugated and the canonical intertwining families. Returns the index of
/// the unique matching catalogue point.
inline int gamma_act_index(const DynamicalSystem& sys,
                           const std::vector<GammaPoint>& gammas, int index,
                           int s, const Tolerances& tol = {}) {
  const GammaPoint& gamma = gammas[std::size_t(index)];
  const auto [j, u] = dual_action(sys, s, gamma.block);

  // Canonical intertwining family of the target block, shared by all its
  // catalogue points.
  const VFamily* vj = nullptr;
  for (const auto& cand : gammas)
    if (cand.block == j) { vj = &cand.vf; break; }
  require(vj != nullptr, ErrorKind::InternalInconsistency,
          "target block has no catalogue points");
  require(vj->stab.elements ==
              conjugate_subgroup(sys.group, s, gamma.vf.stab).elements,
          ErrorKind::InternalInconsistency,
          "stabilizer of the target block is not the conjugated stabilizer");

  // u^* V_i(s k s^{-1}) u is a unit multiple c(k) of V_j(k); the translated
  // projective representation corrected by conj(c(k)) carries exactly the
  // target block's multiplier.
  const int nj = sys.algebra.block_dims[std::size_t(j)];
  ProjRep translated;
  translated.subgroup = vj->stab;
  translated.dim = gamma.w.dim;
  translated.multiplier = vj->multiplier;
  for (int k : vj->stab.elements) {
    const int back = sys.group.mul(sys.group.mul(s, k), sys.group.inv(s));
    const CMat rotated = u.adjoint() * gamma.vf.at(back) * u;
    const Complex z = (vj->at(k).adjoint() * rotated).trace() / double(nj);
    require(std::abs(std::abs(z) - 1.0) <= 1e2 * std::sqrt(tol.eps_eq),
            ErrorKind::InternalInconsistency,
            "conjugated intertwiner is not a unit multiple of the canonical one");
    const Complex c = z / std::abs(z);
    translated.w.push_back(std::conj(c) * gamma.w.at(back));
  }

  int found = -1;
  for (std::size_t p = 0; p < gammas.size(); ++p) {
    if (gammas[p].block != j || gammas[p].w.dim != translated.dim) continue;
    if (proj_equivalent(translated, gammas[p].w, tol)) {
      require(found < 0, ErrorKind::InternalInconsistency,
              "group action target matched two catalogue points");
      found = int(p);
    }
  }
  require(found >= 0, ErrorKind::InternalInconsistency,
          "group action target matched no catalogue point");
  return found;
}

inline GammaPoint gamma_act(const DynamicalSystem& sys,
                            const std::vector<GammaPoint>& gammas, int index,
                            int s, const Tolerances& tol = {}) {
  return gammas[std::size_t(gamma_act_index(sys, gammas, index, s, tol))];
}

struct GammaOrbits {
  std::vector<std::vector<int>> orbits;  // sorted members, ordered by smallest
  std::vector<int> orbit_of;             // gamma index -> orbit id
};

/// Orbit partition of the parameter space under the group action, verified
/// against induced-representation equivalence: members of one orbit induce
/// equivalent representations, representatives of different orbits induce
/// inequivalent ones.
inline GammaOrbits gamma_orbits(const DynamicalSystem& sys,
                                const std::vector<GammaPoint>& gammas,
                                const std::vector<CovariantRep>& phis,
                                const Tolerances& tol = {}) {
  const int n = int(gammas.size());
  require(int(phis.size()) == n, ErrorKind::ShapeMismatch,
          "one induced representation per parameter point expected");
  GammaOrbits out;
  out.orbit_of.assign(std::size_t(n), -1);
  for (int start = 0; start < n; ++start) {
    if (out.orbit_of[std::size_t(start)] >= 0) continue;
    const int id = int(out.orbits.size());
    std::vector<int> members{start};
    out.orbit_of[std::size_t(start)] = id;
    for (std::size_t head = 0; head < members.size(); ++head)
      for (int s = 0; s < sys.group.order; ++s) {
        const int next = gamma_act_index(sys, gammas, members[head], s, tol);
        if (out.orbit_of[std::size_t(next)] < 0) {
          out.orbit_of[std::size_t(next)] = id;
          members.push_back(next);
        } else {
          require(out.orbit_of[std::size_t(next)] == id,
                  ErrorKind::InternalInconsistency,
                  "group action escaped its orbit");
        }
      }
    std::sort(members.begin(), members.end());
    out.orbits.push_back(std::move(members));
  }

  // Induced representations separate exactly the orbits.
  for (const auto& orbit : out.orbits)
    for (std::size_t m = 1; m < orbit.size(); ++m)
      require(covariant_equivalent(phis[std::size_t(orbit[0])],
                                   phis[std::size_t(orbit[m])], tol)
                  .has_value(),
              ErrorKind::InternalInconsistency,
              "points of one orbit induce inequivalent representations");
  for (std::size_t a = 0; a < out.orbits.size(); ++a)
    for (std::size_t b = a + 1; b < out.orbits.size(); ++b)
      require(!covariant_equivalent(phis[std::size_t(out.orbits[a][0])],
                                    phis[std::size_t(out.orbits[b][0])], tol)
                   .has_value(),
              ErrorKind::InternalInconsistency,
              "distinct orbits induce equivalent representations");
  return out;
}

/// One entry of the computed dual: an orbit with its canonical representative
/// and the induced irreducible representation.
struct DualDescriptor {
  int orbit = 0;
  int gamma_index = 0;  // smallest index in the orbit
  int block = 0;
  int stabilizer_order = 0;
  int w_dim = 0;
  bool multiplier_trivial = true;
  int induced_dim = 0;
  std::vector<int> orbit_members;
  CovariantRep rep;  // the induced representation of the representative
};

struct Classification {
  std::vector<GammaPoint> gammas;
  std::vector<CovariantRep> phis;  // aligned with gammas
  GammaOrbits orbits;
  std::vector<DualDescriptor> descriptors;
};

/// Full classification with a caller-supplied set of intertwining families
/// (used to demonstrate phase-robustness); see classify() for the standard
/// entry point. Verifies the counting identity
/// sum N^2 = dim(A) * |G| over the descriptors.
inline Classification classify_with(const DynamicalSystem& sys,
                                    const std::vector<VFamily>& vfs,
                                    const Tolerances& tol = {}) {
  check_action(sys, tol);
  Classification cls;
  cls.gammas = enumerate_gamma(sys, vfs, tol);
  cls.phis.reserve(cls.gammas.size());
  for (const auto& gamma : cls.gammas) cls.phis.push_back(phi(sys, gamma, tol));
  cls.orbits = gamma_orbits(sys, cls.gammas, cls.phis, tol);

  long sum_sq = 0;
  for (std::size_t o = 0; o < cls.orbits.orbits.size(); ++o) {
    const int rep_idx = cls.orbits.orbits[o][0];
    const GammaPoint& gamma = cls.gammas[std::size_t(rep_idx)];
    DualDescriptor d;
    d.orbit = int(o);
    d.gamma_index = rep_idx;
    d.block = gamma.block;
    d.stabilizer_order = gamma.vf.stab.order();
    d.w_dim = gamma.w.dim;
    d.multiplier_trivial = gamma.vf.multiplier.is_trivial(1e3 * tol.eps_eq);
    d.induced_dim = cls.phis[std::size_t(rep_idx)].space_dim;
    d.orbit_members = cls.orbits.orbits[o];
    d.rep = cls.phis[std::size_t(rep_idx)];
    sum_sq += long(d.induced_dim) * d.induced_dim;
    cls.descriptors.push_back(std::move(d));
  }
  require(sum_sq == long(sys.algebra.dim()) * sys.group.order,
          ErrorKind::InternalInconsistency,
          "squared dimensions of the dual do not fill the crossed product");
  return cls;
}

inline Classification classify(const DynamicalSystem& sys,
                               const Tolerances& tol = {}) {
  return classify_with(sys, canonical_vfamilies(sys, tol), tol);
}

struct AnalyzeResult {
  int gamma_index = 0;  // first catalogue point whose induction matches
  int orbit = 0;
  CMat intertwiner;     // unitary from the catalogue representation to c
};

/// Locates the orbit of a given irreducible covariant representation of the
/// full group. The input is validated, tested for irreducibility, and matched
/// against catalogue points over a block that occurs in its restriction.
inline AnalyzeResult analyze(const DynamicalSystem& sys,
                             const Classification& cls, const CovariantRep& c,
                             const Tolerances& tol = {}) {
  require(c.subgroup.elements == full_subgroup(sys.group).elements,
          ErrorKind::ShapeMismatch,
          "analysis expects a representation of the full group");
  check_covariant(sys, c, tol, ErrorKind::ParseError);
  require(is_irreducible_covariant(c, tol), ErrorKind::NotIrreducible,
          "joint commutant is not scalar");

  // Any algebra block visible in the restriction pins down the orbit: the
  // catalogue contains a matching point over that very block.
  int block = -1;
  for (int l = 0; l < sys.algebra.num_blocks() && block < 0; ++l) {
    AlgebraElement z = zero_element(sys.algebra);
    z.blocks[std::size_t(l)] =
        CMat::Identity(sys.algebra.block_dims[std::size_t(l)],
                       sys.algebra.block_dims[std::size_t(l)]);
    if (fnorm(apply_pi(sys.algebra, c, z)) > 0.5) block = l;
  }
  require(block >= 0, ErrorKind::InternalInconsistency,
          "no algebra block occurs in the restriction");

  for (std::size_t p = 0; p < cls.gammas.size(); ++p) {
    if (cls.gammas[p].block != block) continue;
    if (cls.phis[p].space_dim != c.space_dim) continue;
    if (auto t = covariant_equivalent(cls.phis[p], c, tol)) {
      AnalyzeResult res;
      res.gamma_index = int(p);
      res.orbit = cls.orbits.orbit_of[p];
      res.intertwiner = *t;
      return res;
    }
  }
  fail(ErrorKind::NoMatch,
       "representation does not match any catalogue point over block " +
           std::to_string(block));
}

// ---- ergodic decomposition of an invariant algebra ----

/// Join of the orbit of a projection under Ad of the given unitaries.
inline CMat orbit_join(const std::vector<CMat>& u, const CMat& p,
                       const Tolerances& tol = {}) {
  CMat j = CMat::Zero(p.rows(), p.cols());
  for (const auto& us : u) j = proj_join(j, us * p * us.adjoint(), tol);
  return j;
}

namespace detail {

/// Columns spanning the range of a numerical projection.
inline CMat range_basis(const CMat& p) {
  Eigen::SelfAdjointEigenSolver<CMat> es(p);
  const Index n = p.rows();
  Index lo = n;
  for (Index i = 0; i < n; ++i)
    if (es.eigenvalues()(i) > 0.5) { lo = i; break; }
  return es.eigenvectors().rightCols(n - lo);
}

/// A minimal projection of the *-algebra with the given orthonormal basis,
/// found by repeatedly splitting along spectral gaps of non-scalar corner
/// elements.
inline CMat minimal_projection(const SpanBasis& span, const Tolerances& tol) {
  const Index n = span.onb[0].rows();
  CMat p = CMat::Identity(n, n);
  for (Index guard = 0; guard <= n; ++guard) {
    const CMat q = range_basis(p);
    const Index k = q.cols();
    require(k >= 1, ErrorKind::InternalInconsistency,
            "minimal projection search lost its range");
    std::vector<CMat> corner;
    corner.reserve(span.onb.size());
    for (const auto& b : span.onb) corner.push_back(q.adjoint() * b * q);
    const SpanBasis local = orthonormalize_span(corner, tol);
    if (local.rank() == 1) return p;  // the corner is scalar: p is minimal

    CMat best;
    double best_dev = -1.0;
    for (const auto& e : local.onb) {
      const CMat herm = (e + e.adjoint()) / 2.0;
      const CMat skew = (e - e.adjoint()) / Complex(0, 2);
      for (const CMat& h : {herm, skew}) {
        const double dev =
            (h - (h.trace() / double(k)) * CMat::Identity(k, k)).norm();
        if (dev > best_dev) { best_dev = dev; best = h; }
      }
    }
    require(best_dev > 1e-8, ErrorKind::InternalInconsistency,
            "corner algebra has no non-scalar self-adjoint element");

    Eigen::SelfAdjointEigenSolver<CMat> es(best);
    const auto& ev = es.eigenvalues();
    Index cut = 0;
    double widest = -1.0;
    for (Index i = 0; i + 1 < k; ++i)
      if (ev(i + 1) - ev(i) > widest) { widest = ev(i + 1) - ev(i); cut = i; }
    const CMat low = es.eigenvectors().leftCols(cut + 1);
    p = (q * low) * (q * low).adjoint();
  }
  fail(ErrorKind::InternalInconsistency,
       "minimal projection search failed to terminate");
}

}  // namespace detail

/// Decomposes the identity into mutually orthogonal minimal projections of an
/// algebra on which the unitaries act ergodically: p_1 = q_1 and
/// p_i = (q_1 v ... v q_i) - (q_1 v ... v q_{i-1}) for translates q_i of one
/// minimal projection. Validates the algebra, the action, and ergodicity
/// (one-dimensional fixed-point space) first.
inline std::vector<CMat> ergodic_decompose(const FiniteGroup& g,
                                           const std::vector<CMat>& u,
                                           const std::vector<CMat>& alg_span,
                                           const Tolerances& tol = {}) {
  require(int(u.size()) == g.order, ErrorKind::ShapeMismatch,
          "one unitary per group element expected");
  require(!alg_span.empty(), ErrorKind::ShapeMismatch, "empty algebra span");
  const Index n = alg_span[0].rows();
  for (const auto& m : u)
    require(m.rows() == n && m.cols() == n && is_unitary(m, 1e-6),
            ErrorKind::ShapeMismatch, "group is not represented by unitaries");

  const SpanBasis span = orthonormalize_span(alg_span, tol);
  detail::verify_star_algebra(span, tol);
  const double eps = 1e3 * tol.eps_eq;
  for (int s = 0; s < g.order; ++s)
    for (const auto& b : span.onb)
      require(span.contains(u[std::size_t(s)] * b * u[std::size_t(s)].adjoint(), eps),
              ErrorKind::NotAnAction,
              "conjugation by " + g.name_of(s) + " does not preserve the algebra");
  for (int s = 0; s < g.order; ++s)
    for (int t = 0; t < g.order; ++t) {
      const CMat lhs = u[std::size_t(s)] * u[std::size_t(t)];
      const CMat& rhs = u[std::size_t(g.mul(s, t))];
      // Projective families are fine: only Ad matters.
      for (const auto& b : span.onb)
        require(approx_equal(lhs * b * lhs.adjoint(), rhs * b * rhs.adjoint(), eps),
                ErrorKind::NotAnAction, "conjugations do not compose");
    }

  // Ergodicity: the fixed-point space inside the algebra is the scalars.
  const Index r = span.rank();
  CMat fixed_constraints((g.order - 1) * r, r);
  Index row = 0;
  for (int s = 0; s < g.order; ++s) {
    if (s == g.identity) continue;
    CMat m(r, r);
    for (Index a = 0; a < r; ++a) {
      const CMat img =
          u[std::size_t(s)] * span.onb[std::size_t(a)] * u[std::size_t(s)].adjoint();
      const CVec coeff = span.stacked.adjoint() * vec(img);
      m.col(a) = coeff;
    }
    fixed_constraints.middleRows(row, r) = m - CMat::Identity(r, r);
    row += r;
  }
  const Index fixed_dim =
      g.order == 1 ? r : nullspace_basis(fixed_constraints, tol, 1.0).cols();
  require(fixed_dim == 1, ErrorKind::NotErgodic,
          "fixed-point subalgebra has dimension " + std::to_string(fixed_dim));

  const CMat p = detail::minimal_projection(span, tol);
  require(span.contains(p, eps), ErrorKind::InternalInconsistency,
          "minimal projection escaped the algebra");

  // The orbit join of a nonzero projection under an ergodic action is full.
  require(proj_rank(orbit_join(u, p, tol)) == int(n),
          ErrorKind::InternalInconsistency,
          "orbit join of the minimal projection is not the identity");

  // Greedy growth: add translates that strictly enlarge the join, then
  // orthogonalize by successive differences.
  CMat join = p;
  std::vector<CMat> out{p};
  for (int t = 0; t < g.order && proj_rank(join) < int(n); ++t) {
    const CMat q = u[std::size_t(t)] * p * u[std::size_t(t)].adjoint();
    const CMat next = proj_join(join, q, tol);
    if (proj_rank(next) > proj_rank(join)) {
      require(proj_rank(proj_meet(join, q, tol)) == 0,
              ErrorKind::InternalInconsistency,
              "translate of a minimal projection meets the join nontrivially");
      out.push_back(next - join);
      join = next;
    }
  }
  require(proj_rank(join) == int(n), ErrorKind::InternalInconsistency,
          "translates of the minimal projection do not fill the space");

  for (const auto& pi : out) {
    require(is_projection(pi, 1e-6), ErrorKind::InternalInconsistency,
            "difference of joins is not a projection");
    require(span.contains(pi, eps), ErrorKind::InternalInconsistency,
            "decomposition escaped the algebra");
    const CMat q = detail::range_basis(pi);
    std::vector<CMat> corner;
    corner.reserve(span.onb.size());
    for (const auto& b : span.onb) corner.push_back(q.adjoint() * b * q);
    require(orthonormalize_span(corner, tol).rank() == 1,
            ErrorKind::InternalInconsistency,
            "decomposition contains a non-minimal projection");
  }
  CMat total = CMat::Zero(n, n);
  for (const auto& pi : out) total += pi;
  require(approx_equal(total, CMat::Identity(n, n), eps),
          ErrorKind::InternalInconsistency,
          "minimal projections do not sum to the identity");
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      require((out[a] * out[b]).norm() <= eps, ErrorKind::InternalInconsistency,
              "decomposition is not orthogonal");
  return out;
}

}  // namespace crossdual

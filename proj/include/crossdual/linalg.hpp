#pragma once

// Rank-revealing decompositions and the small set of subspace operations the
// representation-theoretic layers are built on: nullspaces, commutants,
// intertwiners, projection meet/join, and unitary extraction.

#include <algorithm>
#include <optional>
#include <vector>

#include "crossdual/matrix.hpp"

namespace crossdual {

/// Orthonormal basis (columns) of {x : m x = 0}. Singular values below
/// eps_rank times the largest are treated as zero. `scale_floor` extends the
/// rank reference: when every entry of m is rounding noise relative to the
/// caller's natural scale (for instance, constraints between two numerically
/// identical families), the largest singular value alone would make the noise
/// look like full rank; measuring against max(smax, scale_floor) keeps such a
/// matrix effectively zero, with a full nullspace. A matrix with no rows has
/// full nullspace.
inline CMat nullspace_basis(const CMat& m, const Tolerances& tol = {},
                            double scale_floor = 0.0) {
  const Index n = m.cols();
  if (m.rows() == 0 || n == 0) return CMat::Identity(n, n);
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cut = tol.eps_rank * std::max(smax, scale_floor);
  Index rank = 0;
  if (smax > 0.0)
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cut) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

inline Index numerical_rank(const CMat& m, const Tolerances& tol = {}) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index rank = 0;
  if (smax > 0.0)
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol.eps_rank * smax) ++rank;
  return rank;
}

/// Frobenius-orthonormal basis of the span of a family of equally shaped
/// matrices, plus the same basis as columns of a (rows*cols) x rank matrix.
struct SpanBasis {
  std::vector<CMat> onb;
  CMat stacked;  // column k equals vec(onb[k]); orthonormal columns
  Index rank() const { return stacked.cols(); }

  /// Residual distance from x to the span.
  double distance(const CMat& x) const {
    CVec v = vec(x);
    return (v - stacked * (stacked.adjoint() * v)).norm();
  }
  bool contains(const CMat& x, double eps) const {
    return distance(x) <= eps * std::max(1.0, fnorm(x));
  }
};

inline SpanBasis orthonormalize_span(const std::vector<CMat>& elems,
                                     const Tolerances& tol = {}) {
  require(!elems.empty(), ErrorKind::ShapeMismatch,
          "orthonormalize_span: empty family");
  const Index r = elems[0].rows(), c = elems[0].cols();
  CMat stack(r * c, Index(elems.size()));
  for (std::size_t k = 0; k < elems.size(); ++k) {
    require(elems[k].rows() == r && elems[k].cols() == c,
            ErrorKind::ShapeMismatch, "orthonormalize_span: mixed shapes");
    stack.col(Index(k)) = vec(elems[k]);
  }
  Eigen::JacobiSVD<CMat> svd(stack, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index rank = 0;
  if (smax > 0.0)
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol.eps_rank * smax) ++rank;
  SpanBasis out;
  out.stacked = svd.matrixU().leftCols(rank);
  out.onb.reserve(std::size_t(rank));
  for (Index k = 0; k < rank; ++k)
    out.onb.push_back(unvec(out.stacked.col(k), r, c));
  return out;
}

namespace detail {

/// Stacked linear constraints whose solutions T (shape nb x na) satisfy
/// T A_k = B_k T and T A_k^* = B_k^* T for every generator pair.
/// Column-major vec: vec(T A) = (A^T kron I) vec(T), vec(B T) = (I kron B) vec(T).
inline CMat intertwiner_constraints(const std::vector<CMat>& gens_a,
                                    const std::vector<CMat>& gens_b,
                                    Index na, Index nb) {
  const Index rows_per = na * nb;
  CMat k(2 * Index(gens_a.size()) * rows_per, rows_per);
  const CMat ia = CMat::Identity(na, na);
  const CMat ib = CMat::Identity(nb, nb);
  Index row = 0;
  for (std::size_t g = 0; g < gens_a.size(); ++g) {
    const CMat& a = gens_a[g];
    const CMat& b = gens_b[g];
    k.middleRows(row, rows_per) =
        kron(a.transpose(), ib) - kron(ia, b);
    row += rows_per;
    k.middleRows(row, rows_per) =
        kron(a.conjugate(), ib) - kron(ia, b.adjoint());
    row += rows_per;
  }
  return k;
}

}  // namespace detail

/// Orthonormal basis of the *-commutant {x : x g = g x, x g^* = g^* x for all
/// generators}. The first basis element is always Identity/sqrt(dim); with no
/// generators the result spans all of M_dim.
inline std::vector<CMat> commutant_basis(const std::vector<CMat>& gens,
                                         Index dim,
                                         const Tolerances& tol = {}) {
  for (const auto& g : gens)
    require(g.rows() == dim && g.cols() == dim, ErrorKind::ShapeMismatch,
            "commutant_basis: generator shape");
  CMat constraints = gens.empty()
                         ? CMat(0, dim * dim)
                         : detail::intertwiner_constraints(gens, gens, dim, dim);
  double scale = 0.0;
  for (const auto& g : gens) scale = std::max(scale, fnorm(g));
  CMat ns = nullspace_basis(constraints, tol, scale);
  const Index k = ns.cols();
  require(k >= 1, ErrorKind::InternalInconsistency,
          "commutant_basis: identity missing from commutant");

  // Rotate the basis so a multiple of the identity comes first; the rest is
  // completed by modified Gram-Schmidt (twice, for stability) against it.
  const CVec b0 = vec(CMat::Identity(dim, dim)) / std::sqrt(double(dim));
  const double id_resid = (b0 - ns * (ns.adjoint() * b0)).norm();
  require(id_resid <= 1e-6, ErrorKind::InternalInconsistency,
          "commutant_basis: identity not in computed commutant");

  std::vector<CVec> accepted;
  accepted.push_back(b0);
  for (Index j = 0; j < k && Index(accepted.size()) < k; ++j) {
    CVec v = ns.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : accepted) v -= e * (e.dot(v));
    const double nrm = v.norm();
    if (nrm > 1e-6) accepted.push_back(v / nrm);
  }
  require(Index(accepted.size()) == k, ErrorKind::InternalInconsistency,
          "commutant_basis: basis canonicalization lost rank");
  std::vector<CMat> out;
  out.reserve(accepted.size());
  for (const auto& v : accepted) out.push_back(unvec(v, dim, dim));
  return out;
}

/// Orthonormal basis of {T : T a = b T and T a^* = b^* T for each generator
/// pair}; T maps the first space into the second. Lists must be nonempty and
/// of equal length.
inline std::vector<CMat> intertwiner_basis(const std::vector<CMat>& gens_a,
                                           const std::vector<CMat>& gens_b,
                                           const Tolerances& tol = {}) {
  require(!gens_a.empty() && gens_a.size() == gens_b.size(),
          ErrorKind::ShapeMismatch, "intertwiner_basis: generator lists");
  const Index na = gens_a[0].rows(), nb = gens_b[0].rows();
  for (const auto& g : gens_a)
    require(g.rows() == na && g.cols() == na, ErrorKind::ShapeMismatch,
            "intertwiner_basis: first family shapes");
  for (const auto& g : gens_b)
    require(g.rows() == nb && g.cols() == nb, ErrorKind::ShapeMismatch,
            "intertwiner_basis: second family shapes");
  double scale = 0.0;
  for (const auto& g : gens_a) scale = std::max(scale, fnorm(g));
  for (const auto& g : gens_b) scale = std::max(scale, fnorm(g));
  CMat ns = nullspace_basis(
      detail::intertwiner_constraints(gens_a, gens_b, na, nb), tol, scale);
  std::vector<CMat> out;
  out.reserve(std::size_t(ns.cols()));
  for (Index j = 0; j < ns.cols(); ++j) out.push_back(unvec(ns.col(j), nb, na));
  return out;
}

inline void require_projection(const CMat& p, const char* who) {
  require(p.rows() == p.cols() && is_projection(p, 1e-6),
          ErrorKind::ShapeMismatch,
          std::string(who) + ": operand is not an orthogonal projection");
}

/// Greatest lower bound of two orthogonal projections: the projection onto
/// ran(p) intersect ran(q), computed as the joint nullspace of I-p and I-q.
inline CMat proj_meet(const CMat& p, const CMat& q, const Tolerances& tol = {}) {
  require_projection(p, "proj_meet");
  require_projection(q, "proj_meet");
  require(p.rows() == q.rows(), ErrorKind::ShapeMismatch, "proj_meet: sizes");
  const Index n = p.rows();
  CMat stacked(2 * n, n);
  stacked.topRows(n) = CMat::Identity(n, n) - p;
  stacked.bottomRows(n) = CMat::Identity(n, n) - q;
  CMat b = nullspace_basis(stacked, tol, 1.0);
  return b * b.adjoint();
}

/// Least upper bound: the projection onto ran(p) + ran(q).
inline CMat proj_join(const CMat& p, const CMat& q, const Tolerances& tol = {}) {
  require_projection(p, "proj_join");
  require_projection(q, "proj_join");
  require(p.rows() == q.rows(), ErrorKind::ShapeMismatch, "proj_join: sizes");
  const Index n = p.rows();
  CMat side(n, 2 * n);
  side.leftCols(n) = p;
  side.rightCols(n) = q;
  Eigen::JacobiSVD<CMat> svd(side, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Index rank = 0;
  if (smax > 0.0)
    for (Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol.eps_rank * smax) ++rank;
  CMat u = svd.matrixU().leftCols(rank);
  return u * u.adjoint();
}

/// Rank of an (assumed numerical) orthogonal projection.
inline int proj_rank(const CMat& p) {
  return int(std::lround(p.trace().real()));
}

/// Multiply by a unit scalar so the first entry of largest modulus (row-major
/// scan) becomes real and positive. Fixes the global-phase ambiguity of
/// unitaries produced by eigensolvers and intertwiner extraction.
inline CMat phase_canonicalize(const CMat& u) {
  Index bi = 0, bj = 0;
  double best = -1.0;
  for (Index i = 0; i < u.rows(); ++i)
    for (Index j = 0; j < u.cols(); ++j) {
      const double a = std::abs(u(i, j));
      if (a > best) { best = a; bi = i; bj = j; }
    }
  if (best <= 0.0) return u;
  const Complex z = u(bi, bj);
  return u * (std::conj(z) / std::abs(z));
}

/// Checks T^* T = c Identity, divides by sqrt(c), and fixes the global phase.
/// Intertwiners between irreducible families are scalar multiples of
/// unitaries, so this turns any nonzero one into a canonical unitary.
inline CMat unitary_normalize(const CMat& t, const Tolerances& tol = {}) {
  require(t.rows() == t.cols() && t.rows() > 0, ErrorKind::ShapeMismatch,
          "unitary_normalize: square input expected");
  const Index n = t.rows();
  const CMat gram = t.adjoint() * t;
  const double c = gram.trace().real() / double(n);
  const double dev = (gram - c * CMat::Identity(n, n)).norm();
  require(c > 0.0 && dev <= tol.eps_eq * double(n) * std::max(1.0, c),
          ErrorKind::NotScalarGram,
          "unitary_normalize: gram matrix is not a positive scalar");
  return phase_canonicalize(t / std::sqrt(c));
}

/// A unitary T with T a = b T for all generator pairs, when one exists.
/// Searches the intertwiner space with deterministic coefficient draws; for
/// *-closed constraint sets the polar factor of any invertible intertwiner is
/// automatically unitary and intertwining.
inline std::optional<CMat> unitary_intertwiner(const std::vector<CMat>& gens_a,
                                               const std::vector<CMat>& gens_b,
                                               const Tolerances& tol = {}) {
  if (gens_a.empty() || gens_a.size() != gens_b.size()) return std::nullopt;
  const Index na = gens_a[0].rows(), nb = gens_b[0].rows();
  if (na != nb) return std::nullopt;
  const std::vector<CMat> basis = intertwiner_basis(gens_a, gens_b, tol);
  if (basis.empty()) return std::nullopt;

  double scale = 1.0;
  for (const auto& a : gens_a) scale = std::max(scale, fnorm(a));
  const double verify = 1e3 * tol.eps_eq * scale;

  for (int attempt = 0; attempt < 8; ++attempt) {
    CMat t = CMat::Zero(nb, na);
    if (attempt == 0) {
      for (const auto& b : basis) t += b;
    } else {
      Rng rng(tol.seed + 0x9E3779B97F4A7C15ull * std::uint64_t(attempt));
      for (const auto& b : basis) t += rng.cgaussian() * b;
    }
    Eigen::JacobiSVD<CMat> svd(t, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    if (smax <= 0.0 || sv(sv.size() - 1) <= tol.eps_rank * smax) continue;
    CMat u = svd.matrixU() * svd.matrixV().adjoint();
    bool ok = true;
    for (std::size_t g = 0; g < gens_a.size() && ok; ++g)
      ok = (u * gens_a[g] - gens_b[g] * u).norm() <= verify;
    if (ok) return phase_canonicalize(u);
  }
  return std::nullopt;
}

}  // namespace crossdual

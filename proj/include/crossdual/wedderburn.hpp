#pragma once

// Decomposition of a concretely represented finite-dimensional *-algebra into
// irreducible blocks with multiplicities: the workhorse behind both the
// twisted group algebra analysis and the brute-force crossed product check.

#include <algorithm>
#include <vector>

#include "crossdual/linalg.hpp"

namespace crossdual {

struct WedderburnBlock {
  int dim;           // size of the irreducible block
  int multiplicity;  // number of equivalent copies in this representation
  CMat isometry;     // ambient_dim x dim, orthonormal columns; compressing the
                     // algebra by it gives one irreducible copy
};

namespace detail {

/// Conditional expectation onto the commutant of the *-algebra spanned by the
/// Frobenius-orthonormal family `onb`: E(x) = sum_k b_k x b_k^*. The result is
/// basis-independent and E is onto the commutant, so a Gaussian Hermitian
/// input yields a generic Hermitian commutant element.
inline CMat twirl(const std::vector<CMat>& onb, const CMat& x) {
  CMat out = CMat::Zero(x.rows(), x.cols());
  for (const auto& b : onb) out += b * x * b.adjoint();
  return out;
}

inline bool nearly_scalar(const CMat& r, double* dev_out = nullptr) {
  const Index d = r.rows();
  const Complex mean = r.trace() / double(d);
  const double dev = (r - mean * CMat::Identity(d, d)).norm();
  if (dev_out) *dev_out = dev;
  return dev <= 1e-6 * std::max(1.0, fnorm(r));
}

/// Product/adjoint/identity closure of the span. Full pairwise product check
/// when affordable, randomized (but seeded) left/right multiplication probes
/// on larger inputs.
inline void verify_star_algebra(const SpanBasis& span, const Tolerances& tol) {
  const Index n = span.onb.empty() ? 0 : span.onb[0].rows();
  require(n > 0 && span.onb[0].cols() == n, ErrorKind::NotAnAlgebra,
          "algebra span must consist of square matrices");
  const double eps = 1e3 * tol.eps_eq;
  require(span.contains(CMat::Identity(n, n), eps), ErrorKind::NotAnAlgebra,
          "identity is not in the span");
  for (const auto& b : span.onb)
    require(span.contains(b.adjoint(), eps), ErrorKind::NotAnAlgebra,
            "span is not closed under adjoints");

  const Index r = span.rank();
  const double full_cost = double(r) * double(r) * double(n) * double(n) * double(n);
  if (full_cost <= 2e8) {
    for (const auto& a : span.onb)
      for (const auto& b : span.onb)
        require(span.contains(a * b, eps), ErrorKind::NotAnAlgebra,
                "span is not closed under products");
  } else {
    // Probe with random span elements: if some product b_i * b_j escapes the
    // span, a generic element x makes b_i * x escape as well.
    Rng rng(tol.seed ^ 0xA1CEBA5Eu);
    for (int probe = 0; probe < 4; ++probe) {
      CMat x = CMat::Zero(n, n);
      for (const auto& b : span.onb) x += rng.cgaussian() * b;
      const double scale = std::max(1.0, fnorm(x));
      for (const auto& b : span.onb) {
        require(span.distance(b * x) <= eps * scale, ErrorKind::NotAnAlgebra,
                "span is not closed under products");
        require(span.distance(x * b) <= eps * scale, ErrorKind::NotAnAlgebra,
                "span is not closed under products");
      }
    }
  }
}

struct WedderburnPiece {
  CMat isometry;  // ambient x d, one irreducible copy
};

/// Recursively splits the invariant subspace spanned by iso's columns along
/// eigenspaces of random commutant elements until the local commutant is
/// scalar. Leaves are certified irreducible by the local span filling d*d.
inline void split_invariant(const std::vector<CMat>& top_onb, const CMat& iso,
                            Rng& rng, const Tolerances& tol,
                            std::vector<WedderburnPiece>& out, int depth) {
  require(depth < 64, ErrorKind::InternalInconsistency,
          "wedderburn recursion failed to terminate");
  const Index d = iso.cols();
  std::vector<CMat> compressed;
  compressed.reserve(top_onb.size());
  for (const auto& b : top_onb) compressed.push_back(iso.adjoint() * b * iso);
  SpanBasis local = orthonormalize_span(compressed, tol);

  CMat splitter;
  bool found = false;
  for (int attempt = 0; attempt < 8 && !found; ++attempt) {
    CMat r = twirl(local.onb, rng.hermitian_matrix(d));
    r = ((r + r.adjoint()) / 2.0).eval();
    if (!nearly_scalar(r)) { splitter = r; found = true; }
  }
  if (!found) {
    // Scalar commutant: the algebra acts irreducibly, hence (double
    // commutant) the local span must be the full matrix algebra.
    require(local.rank() == d * d, ErrorKind::InternalInconsistency,
            "scalar commutant but local algebra is not full");
    out.push_back(WedderburnPiece{iso});
    return;
  }

  Eigen::SelfAdjointEigenSolver<CMat> es(splitter);
  const auto& ev = es.eigenvalues();  // ascending
  const double spread = ev(d - 1) - ev(0);
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(d - 1)));
  const double gap_thr = std::max(1e-6 * spread, 1e4 * 2.2e-16 * scale);
  Index start = 0;
  for (Index i = 1; i <= d; ++i) {
    if (i == d || ev(i) - ev(i - 1) > gap_thr) {
      CMat sub = iso * es.eigenvectors().middleCols(start, i - start);
      split_invariant(top_onb, sub, rng, tol, out, depth + 1);
      start = i;
    }
  }
}

}  // namespace detail

/// Decomposes the *-algebra spanned by `algebra_span` (acting on C^n) into
/// irreducible blocks. Returns one entry per equivalence class, sorted by
/// dimension then discovery order, with the class size as multiplicity and an
/// isometry onto one copy. Verifies the Artin-Wedderburn identity
/// sum(dim^2) == span rank before returning.
inline std::vector<WedderburnBlock> wedderburn_blocks(
    const std::vector<CMat>& algebra_span, const Tolerances& tol = {}) {
  SpanBasis span = orthonormalize_span(algebra_span, tol);
  detail::verify_star_algebra(span, tol);
  const Index n = span.onb[0].rows();

  Rng rng(tol.seed ^ 0x5EEDFACEu);
  std::vector<detail::WedderburnPiece> pieces;
  detail::split_invariant(span.onb, CMat::Identity(n, n), rng, tol, pieces, 0);

  // Group equivalent copies by their trace vectors against the top basis:
  // equivalent compressions have identical vectors, inequivalent ones are
  // separated by at least sqrt(2/n) in Frobenius distance.
  const Index nb = span.rank();
  std::vector<CVec> traces;
  traces.reserve(pieces.size());
  for (const auto& p : pieces) {
    CVec t(nb);
    for (Index i = 0; i < nb; ++i)
      t(i) = (p.isometry.adjoint() * span.onb[std::size_t(i)] * p.isometry).trace();
    traces.push_back(std::move(t));
  }

  std::vector<WedderburnBlock> blocks;
  std::vector<int> class_of(pieces.size(), -1);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (class_of[i] >= 0) continue;
    const int cls = int(blocks.size());
    class_of[i] = cls;
    WedderburnBlock blk;
    blk.dim = int(pieces[i].isometry.cols());
    blk.multiplicity = 1;
    blk.isometry = pieces[i].isometry;
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (class_of[j] >= 0) continue;
      if (pieces[j].isometry.cols() != pieces[i].isometry.cols()) continue;
      if ((traces[i] - traces[j]).norm() <= 1e-2) {
        class_of[j] = cls;
        ++blk.multiplicity;
      }
    }
    blocks.push_back(std::move(blk));
  }

  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const WedderburnBlock& a, const WedderburnBlock& b) {
                     return a.dim < b.dim;
                   });

  long dim_sq = 0, total = 0;
  for (const auto& b : blocks) {
    dim_sq += long(b.dim) * b.dim;
    total += long(b.dim) * b.multiplicity;
  }
  require(dim_sq == long(span.rank()), ErrorKind::InternalInconsistency,
          "block dimensions do not account for the algebra dimension");
  require(total == long(n), ErrorKind::InternalInconsistency,
          "block multiplicities do not account for the space dimension");
  return blocks;
}

}  // namespace crossdual

#pragma once

// Shared numeric types, tolerances, errors, and small matrix utilities.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace crossdual {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Numeric knobs used everywhere. eps_rank is relative to the largest
/// singular value when truncating; eps_eq is an absolute Frobenius-norm
/// tolerance for equality of O(1)-scaled matrices; seed drives every
/// randomized choice so runs are reproducible.
struct Tolerances {
  double eps_rank = 1e-8;
  double eps_eq = 1e-8;
  std::uint64_t seed = 123456789u;
};

enum class ErrorKind {
  NotAGroup,
  NotAnAlgebra,
  NotAnAction,
  NotScalarGram,
  NotUnitScalar,
  MultiplierMismatch,
  NotIrreducible,
  NotErgodic,
  NoMatch,
  FaithfulnessFailure,
  ShapeMismatch,
  ParseError,
  InternalInconsistency,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::NotAnAlgebra: return "NotAnAlgebra";
    case ErrorKind::NotAnAction: return "NotAnAction";
    case ErrorKind::NotScalarGram: return "NotScalarGram";
    case ErrorKind::NotUnitScalar: return "NotUnitScalar";
    case ErrorKind::MultiplierMismatch: return "MultiplierMismatch";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotErgodic: return "NotErgodic";
    case ErrorKind::NoMatch: return "NoMatch";
    case ErrorKind::FaithfulnessFailure: return "FaithfulnessFailure";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

inline double fnorm(const CMat& m) { return m.norm(); }

inline bool approx_equal(const CMat& a, const CMat& b, double eps) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).norm() <= eps;
}

inline bool approx_zero(const CMat& m, double eps) { return m.norm() <= eps; }

/// Kronecker product, row/col blocks ordered as (i*rows_b + k, j*cols_b + l).
inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Column-major vectorization; vec(AXB) = (B^T kron A) vec(X).
inline CVec vec(const CMat& m) {
  return Eigen::Map<const CVec>(m.data(), m.size());
}

inline CMat unvec(const CVec& v, Index rows, Index cols) {
  return Eigen::Map<const CMat>(v.data(), rows, cols);
}

inline CMat block_diag(const std::vector<CMat>& blocks) {
  Index r = 0, c = 0;
  for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
  CMat out = CMat::Zero(r, c);
  Index ro = 0, co = 0;
  for (const auto& b : blocks) {
    out.block(ro, co, b.rows(), b.cols()) = b;
    ro += b.rows();
    co += b.cols();
  }
  return out;
}

inline bool entries_finite(const CMat& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

inline bool is_unitary(const CMat& u, double eps) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - CMat::Identity(u.cols(), u.cols())).norm() <= eps;
}

inline bool is_projection(const CMat& p, double eps) {
  if (p.rows() != p.cols()) return false;
  return (p - p.adjoint()).norm() <= eps && (p * p - p).norm() <= eps;
}

/// Deterministic random source. Gaussians come from a hand-rolled
/// Box-Muller over the raw mt19937_64 stream because std::*_distribution
/// output differs across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1] (safe for log).
  double uniform_pos() { return (double(eng_() >> 11) + 1.0) * 0x1.0p-53; }

  /// Integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection-free modulo is fine here: n is tiny relative to 2^64 and
    // statistical quality only affects test-case variety.
    return eng_() % n;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

  Complex cgaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im);
  }

  CMat gaussian_matrix(Index rows, Index cols) {
    CMat m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = cgaussian();
    return m;
  }

  CMat hermitian_matrix(Index n) {
    CMat g = gaussian_matrix(n, n);
    return (g + g.adjoint()) / 2.0;
  }

  /// Haar-ish random unitary: QR of a Gaussian matrix with the phase of R's
  /// diagonal absorbed so the distribution is exactly Haar.
  CMat unitary_matrix(Index n) {
    CMat g = gaussian_matrix(n, n);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index i = 0; i < n; ++i) {
      const Complex d = r(i, i);
      const double a = std::abs(d);
      q.col(i) *= (a > 0) ? d / a : Complex(1, 0);
    }
    return q;
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace crossdual

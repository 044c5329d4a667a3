// Dense complex matrix utilities: Kronecker products, vectorization,
// block assembly, and the seeded random generator.

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace crossdual;

TEST_CASE("kron matches the mixed-product identity", "[matrix]") {
  Rng rng(7);
  const CMat a = rng.gaussian_matrix(2, 3);
  const CMat b = rng.gaussian_matrix(3, 2);
  const CMat c = rng.gaussian_matrix(3, 2);
  const CMat d = rng.gaussian_matrix(2, 4);
  CHECK(th::near(kron(a, c) * kron(b, d), kron(a * b, c * d)));
}

TEST_CASE("kron of identities is the identity", "[matrix]") {
  CHECK(th::near(kron(CMat::Identity(2, 2), CMat::Identity(3, 3)),
                 CMat::Identity(6, 6)));
}

TEST_CASE("vec and unvec are mutually inverse", "[matrix]") {
  Rng rng(11);
  const CMat m = rng.gaussian_matrix(3, 5);
  CHECK(th::near(unvec(vec(m), 3, 5), m));
}

TEST_CASE("vec turns two-sided multiplication into Kronecker action",
          "[matrix]") {
  Rng rng(13);
  const CMat t = rng.gaussian_matrix(3, 3);
  const CMat a = rng.gaussian_matrix(3, 3);
  const CMat b = rng.gaussian_matrix(3, 3);
  // Column-major convention: vec(T A) = (A^T (x) I) vec(T) and
  // vec(B T) = (I (x) B) vec(T).
  CHECK(th::near(vec(t * a), kron(a.transpose(), CMat::Identity(3, 3)) * vec(t)));
  CHECK(th::near(vec(b * t), kron(CMat::Identity(3, 3), b) * vec(t)));
}

TEST_CASE("block_diag stacks blocks on the diagonal", "[matrix]") {
  const CMat a = th::mat1(2.0);
  const CMat b = th::mat2(0, 1, 1, 0);
  const CMat m = block_diag({a, b});
  REQUIRE(m.rows() == 3);
  CHECK(m(0, 0) == Complex(2.0, 0.0));
  CHECK(m(1, 2) == Complex(1.0, 0.0));
  CHECK(m(0, 1) == Complex(0.0, 0.0));
  CHECK(m(2, 0) == Complex(0.0, 0.0));
}

TEST_CASE("unitary draws are unitary and deterministic per seed", "[matrix]") {
  Rng rng1(42), rng2(42), rng3(43);
  const CMat u1 = rng1.unitary_matrix(5);
  const CMat u2 = rng2.unitary_matrix(5);
  const CMat u3 = rng3.unitary_matrix(5);
  CHECK(is_unitary(u1, 1e-10));
  CHECK(th::near(u1, u2, 1e-15));
  CHECK(fnorm(u1 - u3) > 1e-3);
}

TEST_CASE("hermitian draws are hermitian", "[matrix]") {
  Rng rng(21);
  const CMat h = rng.hermitian_matrix(4);
  CHECK(th::near(h, h.adjoint().eval()));
}

TEST_CASE("below stays in range and covers values", "[matrix]") {
  Rng rng(5);
  std::vector<int> seen(6, 0);
  for (int k = 0; k < 600; ++k) {
    const int v = th::ri(rng, 6);
    REQUIRE(v >= 0);
    REQUIRE(v < 6);
    ++seen[std::size_t(v)];
  }
  for (int c : seen) CHECK(c > 0);
}

TEST_CASE("is_projection accepts projections and rejects others", "[matrix]") {
  CHECK(is_projection(th::mat2(1, 0, 0, 0), 1e-10));
  CHECK(is_projection(th::mat2(0.5, 0.5, 0.5, 0.5), 1e-10));
  CHECK_FALSE(is_projection(th::mat2(0, 1, 0, 0), 1e-10));
  CHECK_FALSE(is_projection(th::mat2(2, 0, 0, 0), 1e-10));
}

TEST_CASE("errors carry their kind", "[matrix]") {
  try {
    fail(ErrorKind::NotAGroup, "example message");
    FAIL("fail() must throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAGroup);
    CHECK(std::string(e.what()).find("example message") != std::string::npos);
    CHECK(std::string(error_kind_name(e.kind())) == "NotAGroup");
  }
}

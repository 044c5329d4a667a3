// Intertwining families of stabilized blocks, their multipliers, projective
// representations of subgroups, and the twisted regular decomposition.

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace crossdual;

namespace {

Multiplier multiplier_on(const FiniteGroup& g, const Subgroup& h,
                         const std::vector<std::tuple<int, int, Complex>>& entries) {
  Multiplier m;
  m.subgroup = h;
  m.table = CMat::Ones(h.order(), h.order());
  for (const auto& [a, b, z] : entries)
    m.table(h.index_of(a), h.index_of(b)) = z;
  (void)g;
  return m;
}

}  // namespace

TEST_CASE("inner conjugation by diag(1,-1) yields that canonical family",
          "[projective]") {
  const DynamicalSystem sys = th::bundled("inner_z2_m2");
  const VFamily vf = compute_V(sys, 0);
  REQUIRE(vf.stab.elements == std::vector<int>{0, 1});
  CHECK(th::near(vf.at(0), CMat::Identity(2, 2), 1e-12));
  CHECK(th::near(vf.at(1), th::mat2(1, 0, 0, -1), 1e-12));
  CHECK(vf.multiplier.is_trivial(1e-10));
}

TEST_CASE("the canonical family of the Klein four-group action is the Pauli "
          "family with its sign table",
          "[projective]") {
  const DynamicalSystem sys = th::bundled("pauli");
  const VFamily vf = compute_V(sys, 0);
  REQUIRE(vf.stab.order() == 4);
  const Complex one(1.0, 0.0);
  // Canonical phase fixing keeps the defining unitaries themselves.
  CHECK(th::near(vf.at(1), th::mat2(1, 0, 0, -1), 1e-12));   // a
  CHECK(th::near(vf.at(2), th::mat2(0, 1, 1, 0), 1e-12));    // b
  CHECK(th::near(vf.at(3), th::mat2(0, 1, -1, 0), 1e-12));   // ab
  const auto& m = vf.multiplier;
  const int pa = m.subgroup.index_of(1), pb = m.subgroup.index_of(2),
            pab = m.subgroup.index_of(3);
  CHECK(std::abs(m.value(pa, pb) - one) < 1e-10);
  CHECK(std::abs(m.value(pb, pa) + one) < 1e-10);   // omega(b, a) = -1
  CHECK(std::abs(m.value(pab, pab) + one) < 1e-10); // (ZX)^2 = -I
  CHECK(std::abs(m.value(pa, pa) - one) < 1e-10);
  CHECK(std::abs(m.value(pb, pb) - one) < 1e-10);
  CHECK_FALSE(m.is_trivial(1e-10));
  CHECK_NOTHROW(validate_multiplier(sys.group, m, 1e-10));
}

TEST_CASE("multipliers of canonical families always satisfy the cocycle "
          "identity",
          "[projective]") {
  for (const char* name : {"swap_c2", "inner_z2_m2", "pauli", "c_s3",
                           "mixed_s3", "mixed_z2", "trivial_group"}) {
    const DynamicalSystem sys = th::bundled(name);
    INFO(name);
    for (int b = 0; b < sys.algebra.num_blocks(); ++b) {
      const VFamily vf = compute_V(sys, b);
      CHECK_NOTHROW(validate_multiplier(sys.group, vf.multiplier, 1e-10));
      for (int k : vf.stab.elements) CHECK(is_unitary(vf.at(k), 1e-8));
    }
  }
}

TEST_CASE("non projectively closed families are rejected", "[projective]") {
  const FiniteGroup g = from_table(cyclic_table(2), {});
  const Subgroup h = full_subgroup(g);
  // The second matrix is a non-unitary idempotent: V_a V_a is not a unit
  // scalar times V_e.
  const std::vector<CMat> v = {CMat::Identity(2, 2), th::mat2(1, 0, 0, 0)};
  CHECK_THROWS_MATCHES(compute_multiplier(g, h, v, {}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::NotUnitScalar;
                       }));
}

TEST_CASE("conjugate multiplier is the entrywise inverse", "[projective]") {
  const FiniteGroup g = from_table(cyclic_table(2), {});
  const Complex i(0.0, 1.0);
  const Multiplier m = multiplier_on(g, full_subgroup(g), {{1, 1, i}});
  CHECK_NOTHROW(validate_multiplier(g, m, 1e-12));
  const Multiplier mc = conj_multiplier(m);
  CHECK(th::near((m.table.array() * mc.table.array()).matrix().eval(),
                 CMat::Ones(2, 2), 1e-12));
}

TEST_CASE("twisted regular representation satisfies the twisted product law",
          "[projective]") {
  const FiniteGroup g = from_table(cyclic_table(2), {});
  const Complex i(0.0, 1.0);
  const Multiplier m = multiplier_on(g, full_subgroup(g), {{1, 1, i}});
  const ProjRep reg = twisted_regular_rep(g, m);
  REQUIRE(reg.dim == 2);
  CHECK_NOTHROW(check_projrep(g, reg, 1e-10, ErrorKind::InternalInconsistency));
  // L(a)^2 = omega(a, a) L(e) = i * I.
  CHECK(th::near((reg.at(1) * reg.at(1)).eval(),
                 (i * CMat::Identity(2, 2)).eval(), 1e-12));
}

TEST_CASE("a coboundary twist on the order-two group splits into two "
          "one-dimensional twisted characters",
          "[projective]") {
  const FiniteGroup g = from_table(cyclic_table(2), {});
  const Complex i(0.0, 1.0);
  const Multiplier m = multiplier_on(g, full_subgroup(g), {{1, 1, i}});
  const auto reps = irreducible_omega_reps(g, m, {});
  REQUIRE(reps.size() == 2);
  int sum_sq = 0;
  for (const auto& w : reps) {
    sum_sq += w.dim * w.dim;
    CHECK(w.dim == 1);
    // w(a)^2 = i.
    CHECK(std::abs(w.at(1)(0, 0) * w.at(1)(0, 0) - i) < 1e-10);
  }
  CHECK(sum_sq == g.order);
  // The two square roots of i are distinct.
  CHECK(std::abs(reps[0].at(1)(0, 0) - reps[1].at(1)(0, 0)) > 1e-3);
  CHECK_FALSE(proj_equivalent(reps[0], reps[1], {}).has_value());
}

TEST_CASE("the trivial multiplier on a cyclic group gives the honest "
          "characters",
          "[projective]") {
  const FiniteGroup g = from_table(cyclic_table(3), {});
  Multiplier triv;
  triv.subgroup = full_subgroup(g);
  triv.table = CMat::Ones(3, 3);
  const auto reps = irreducible_omega_reps(g, triv, {});
  REQUIRE(reps.size() == 3);
  std::vector<Complex> values;
  for (const auto& w : reps) {
    REQUIRE(w.dim == 1);
    values.push_back(w.at(1)(0, 0));
  }
  // The generator's values are exactly the three cube roots of unity.
  for (const auto& z : values) CHECK(std::abs(z * z * z - 1.0) < 1e-9);
  std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
    return std::arg(a) < std::arg(b);
  });
  CHECK(std::abs(values[0] - values[1]) > 1e-3);
  CHECK(std::abs(values[1] - values[2]) > 1e-3);
}

TEST_CASE("the Pauli multiplier admits exactly one irreducible class, of "
          "dimension two",
          "[projective]") {
  const DynamicalSystem sys = th::bundled("pauli");
  const VFamily vf = compute_V(sys, 0);
  const auto reps = irreducible_omega_reps(sys.group, vf.multiplier, {});
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].dim == 2);
  CHECK_NOTHROW(check_projrep(sys.group, reps[0], 1e-8,
                              ErrorKind::InternalInconsistency));
  // It is projectively equivalent to the canonical family itself.
  ProjRep as_rep;
  as_rep.subgroup = vf.stab;
  as_rep.dim = 2;
  as_rep.w = vf.v;
  as_rep.multiplier = vf.multiplier;
  CHECK(proj_equivalent(reps[0], as_rep, {}).has_value());
}

TEST_CASE("translation relabels a representation along conjugation",
          "[projective]") {
  const DynamicalSystem sys = th::bundled("mixed_s3");
  const FiniteGroup& g = sys.group;
  // H = {e, s} carries the sign character; translating by r gives a
  // character of r^{-1} H r = {e, sr2}.
  const Subgroup h = subgroup_generated(g, {3});
  REQUIRE(h.elements == std::vector<int>{0, 3});
  ProjRep sign;
  sign.subgroup = h;
  sign.dim = 1;
  sign.w = {th::mat1(1.0), th::mat1(-1.0)};
  sign.multiplier.subgroup = h;
  sign.multiplier.table = CMat::Ones(2, 2);
  CHECK_NOTHROW(check_projrep(g, sign, 1e-12, ErrorKind::ParseError));

  const int r = 1;
  const ProjRep moved = translate_rep(g, r, sign);
  CHECK(moved.subgroup.elements == conjugate_subgroup(g, r, h).elements);
  REQUIRE(moved.subgroup.elements == std::vector<int>{0, 5});
  // moved(k) = sign(r k r^{-1}); for k = sr2 that value is sign(s) = -1.
  CHECK(std::abs(moved.at(5)(0, 0) + 1.0) < 1e-12);
  CHECK_NOTHROW(check_projrep(g, moved, 1e-12, ErrorKind::ParseError));
}

TEST_CASE("projective equivalence is detected up to conjugation and refused "
          "across different multipliers",
          "[projective]") {
  const DynamicalSystem sys = th::bundled("pauli");
  const VFamily vf = compute_V(sys, 0);
  const auto reps = irreducible_omega_reps(sys.group, vf.multiplier, {});
  REQUIRE(reps.size() == 1);
  Rng rng(77);
  const CMat u = rng.unitary_matrix(2);
  ProjRep rotated = reps[0];
  for (auto& w : rotated.w) w = u * w * u.adjoint();
  const auto ivt = proj_equivalent(reps[0], rotated, {});
  REQUIRE(ivt.has_value());
  for (std::size_t k = 0; k < rotated.w.size(); ++k)
    CHECK(th::near(*ivt * reps[0].w[k], rotated.w[k] * *ivt, 1e-8));

  // Ordinary characters of the same group have a different multiplier table.
  Multiplier triv;
  triv.subgroup = full_subgroup(sys.group);
  triv.table = CMat::Ones(4, 4);
  const auto chars = irreducible_omega_reps(sys.group, triv, {});
  REQUIRE(chars.size() == 4);
  for (const auto& c : chars)
    CHECK_FALSE(proj_equivalent(reps[0], c, {}).has_value());
}

TEST_CASE("stabilizer families exist on every block of every bundled system",
          "[projective]") {
  for (const char* name : {"swap_c2", "inner_z2_m2", "pauli", "c_s3",
                           "mixed_s3", "mixed_z2", "trivial_group"}) {
    const DynamicalSystem sys = th::bundled(name);
    INFO(name);
    const auto vfs = canonical_vfamilies(sys, {});
    REQUIRE(int(vfs.size()) == sys.algebra.num_blocks());
    for (const auto& vf : vfs) {
      CHECK(vf.stab.elements == stability_group(sys, vf.block).elements);
      CHECK(th::near(vf.at(0), CMat::Identity(
          sys.algebra.block_dims[std::size_t(vf.block)],
          sys.algebra.block_dims[std::size_t(vf.block)])));
    }
  }
}

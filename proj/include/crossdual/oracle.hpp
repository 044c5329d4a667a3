#pragma once

// Independent cross-check: represent the whole crossed product concretely on
// the regular covariant representation and decompose it with the generic
// *-algebra machinery, bypassing the parameter-space classification entirely.

#include <algorithm>
#include <string>
#include <vector>

#include "crossdual/covariant.hpp"
#include "crossdual/mackey.hpp"

namespace crossdual {

struct CrossedProductModel {
  CovariantRep rep;                 // regular covariant representation
  std::vector<CMat> algebra_basis;  // spanning set pi(E_u) * u(s)
  int algebra_dim = 0;              // == dim(A) * |G|, certified
};

/// The covariant representation induced from the standard representation of
/// the algebra over the trivial subgroup, together with a spanning set of the
/// represented crossed product. The span must have full dimension
/// dim(A) * |G| (the representation is faithful).
inline CrossedProductModel regular_model(const DynamicalSystem& sys,
                                         const Tolerances& tol = {}) {
  const FdCStarAlgebra& a = sys.algebra;
  CovariantRep seed;
  seed.subgroup = trivial_subgroup(sys.group);
  seed.space_dim = a.std_dim();
  seed.pi.reserve(std::size_t(a.unit_count()));
  for (int flat = 0; flat < a.unit_count(); ++flat)
    seed.pi.push_back(std_rep(a, matrix_unit(a, flat)));
  seed.u.push_back(CMat::Identity(seed.space_dim, seed.space_dim));

  CrossedProductModel model;
  model.rep = induce(sys, seed.subgroup, seed);
  model.algebra_basis.reserve(std::size_t(a.unit_count()) * std::size_t(sys.group.order));
  for (int flat = 0; flat < a.unit_count(); ++flat)
    for (int s = 0; s < sys.group.order; ++s)
      model.algebra_basis.push_back(model.rep.pi[std::size_t(flat)] *
                                    model.rep.u[std::size_t(s)]);

  const long expected = long(a.dim()) * sys.group.order;
  const Index rank = orthonormalize_span(model.algebra_basis, tol).rank();
  require(long(rank) == expected, ErrorKind::FaithfulnessFailure,
          "represented crossed product has dimension " + std::to_string(rank) +
              " instead of " + std::to_string(expected));
  model.algebra_dim = int(expected);
  return model;
}

inline std::vector<WedderburnBlock> crossed_decomposition(
    const CrossedProductModel& model, const Tolerances& tol = {}) {
  return wedderburn_blocks(model.algebra_basis, tol);
}

/// Sorted multiset of irreducible block dimensions of the crossed product.
inline std::vector<int> crossed_blocks(const CrossedProductModel& model,
                                       const Tolerances& tol = {}) {
  std::vector<int> dims;
  for (const auto& b : crossed_decomposition(model, tol)) dims.push_back(b.dim);
  std::sort(dims.begin(), dims.end());
  return dims;
}

struct OracleReport {
  bool match = false;
  std::vector<int> oracle_dims;   // sorted block dimensions, brute force
  std::vector<int> oracle_mults;  // multiplicities in the regular model
  std::vector<int> dual_dims;     // sorted induced dimensions, classification
  long sum_squares = 0;           // over the classification
  long expected_dim = 0;          // dim(A) * |G|
  bool pairwise_inequivalent = false;
  std::string detail;
};

/// Compares a computed classification against the brute-force decomposition:
/// the dimension multisets must agree, the squared dimensions must fill the
/// crossed product, and the classified representations must be pairwise
/// inequivalent.
inline OracleReport oracle_compare(const DynamicalSystem& sys,
                                   const std::vector<DualDescriptor>& dual,
                                   const Tolerances& tol = {}) {
  OracleReport rep;
  const CrossedProductModel model = regular_model(sys, tol);
  const std::vector<WedderburnBlock> blocks = crossed_decomposition(model, tol);
  for (const auto& b : blocks) {
    rep.oracle_dims.push_back(b.dim);
    rep.oracle_mults.push_back(b.multiplicity);
  }
  // Sort the dimension/multiplicity pairs together by dimension.
  std::vector<std::size_t> order(rep.oracle_dims.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return rep.oracle_dims[x] < rep.oracle_dims[y];
  });
  std::vector<int> sd, sm;
  for (std::size_t i : order) {
    sd.push_back(rep.oracle_dims[i]);
    sm.push_back(rep.oracle_mults[i]);
  }
  rep.oracle_dims = std::move(sd);
  rep.oracle_mults = std::move(sm);

  rep.expected_dim = long(sys.algebra.dim()) * sys.group.order;
  for (const auto& d : dual) {
    rep.dual_dims.push_back(d.induced_dim);
    rep.sum_squares += long(d.induced_dim) * d.induced_dim;
  }
  std::sort(rep.dual_dims.begin(), rep.dual_dims.end());

  rep.pairwise_inequivalent = true;
  for (std::size_t a = 0; a < dual.size() && rep.pairwise_inequivalent; ++a)
    for (std::size_t b = a + 1; b < dual.size() && rep.pairwise_inequivalent; ++b)
      if (dual[a].rep.space_dim == dual[b].rep.space_dim &&
          covariant_equivalent(dual[a].rep, dual[b].rep, tol).has_value())
        rep.pairwise_inequivalent = false;

  const bool dims_equal = rep.oracle_dims == rep.dual_dims;
  const bool sum_ok = rep.sum_squares == rep.expected_dim;
  rep.match = dims_equal && sum_ok && rep.pairwise_inequivalent;
  if (!dims_equal)
    rep.detail = "dimension multisets differ";
  else if (!sum_ok)
    rep.detail = "squared dimensions do not fill the crossed product";
  else if (!rep.pairwise_inequivalent)
    rep.detail = "two classified representations are equivalent";
  else
    rep.detail = "classification agrees with the brute-force decomposition";
  return rep;
}

}  // namespace crossdual

#pragma once

// Shared fixtures for the test suite: paths to the bundled systems, small
// matrix builders, and adapters between a system and its subsystems.
// Deliberately free of any test-framework include so the acceptance binary
// can reuse it.

#include <string>
#include <vector>

#include "crossdual/crossdual.hpp"
#include "crossdual/io.hpp"

namespace th {

using namespace crossdual;

inline std::string repo_path(const std::string& rel) {
  return std::string(CROSSDUAL_SOURCE_DIR) + "/" + rel;
}

inline std::string system_path(const std::string& name) {
  return repo_path("systems/" + name + ".json");
}

inline DynamicalSystem bundled(const std::string& name) {
  return load_system(system_path(name));
}

inline Json bundled_json(const std::string& name) {
  return load_json(system_path(name));
}

inline CMat mat1(Complex a) {
  CMat m(1, 1);
  m << a;
  return m;
}

inline CMat mat2(Complex a, Complex b, Complex c, Complex d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

/// Uniform integer in [0, n).
inline int ri(Rng& rng, int n) {
  return int(rng.below(std::uint64_t(n)));
}

/// The dynamical system obtained by restricting the group to a subgroup.
/// Element k of the restricted group corresponds to h.elements[k] (the
/// sorted order), so the identity keeps index 0.
inline DynamicalSystem subsystem(const DynamicalSystem& sys,
                                 const Subgroup& h) {
  const int m = h.order();
  std::vector<std::vector<int>> table(std::size_t(m),
                                      std::vector<int>(std::size_t(m), 0));
  std::vector<std::string> names;
  names.reserve(std::size_t(m));
  for (int i = 0; i < m; ++i) names.push_back(sys.group.name_of(h.elements[std::size_t(i)]));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      table[std::size_t(i)][std::size_t(j)] = h.index_of(
          sys.group.mul(h.elements[std::size_t(i)], h.elements[std::size_t(j)]));
  DynamicalSystem sub;
  sub.algebra = sys.algebra;
  sub.group = from_table(table, names);
  sub.action.reserve(std::size_t(m));
  for (int t : h.elements) sub.action.push_back(sys.action[std::size_t(t)]);
  return sub;
}

/// Reinterprets a covariant representation of the full restricted group as a
/// representation of the subgroup h inside the parent system. Works because
/// the restricted group lists its elements in the sorted parent order.
inline CovariantRep as_subgroup_rep(CovariantRep c, const Subgroup& h) {
  c.subgroup = h;
  return c;
}

/// A genuine covariant representation of (A, h): classify the subsystem and
/// take one of its induced representatives.
inline CovariantRep covariant_over_subgroup(const DynamicalSystem& sys,
                                            const Subgroup& h, int which,
                                            const Tolerances& tol = {}) {
  const DynamicalSystem sub = subsystem(sys, h);
  const Classification cls = classify(sub, tol);
  const int n = int(cls.phis.size());
  return as_subgroup_rep(cls.phis[std::size_t(which % n)], h);
}

/// Conjugates every matrix of a covariant representation by a fixed unitary
/// (produces an equivalent representation).
inline CovariantRep conjugate_by(const CovariantRep& c, const CMat& u) {
  CovariantRep out = c;
  for (auto& m : out.pi) m = u * m * u.adjoint();
  for (auto& m : out.u) m = u * m * u.adjoint();
  return out;
}

/// Sorted induced dimensions of a classification.
inline std::vector<int> dual_dims(const Classification& cls) {
  std::vector<int> dims;
  dims.reserve(cls.descriptors.size());
  for (const auto& d : cls.descriptors) dims.push_back(d.induced_dim);
  std::sort(dims.begin(), dims.end());
  return dims;
}

/// Catch-friendly matrix comparison.
inline bool near(const CMat& a, const CMat& b, double eps = 1e-8) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return fnorm(a - b) <= eps * std::max(1.0, std::max(fnorm(a), fnorm(b)));
}

}  // namespace th

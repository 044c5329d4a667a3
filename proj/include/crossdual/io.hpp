#pragma once

// JSON (de)serialization of dynamical systems and covariant representations.
// Complex numbers are [re, im]; matrices are row-major nested arrays.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "crossdual/algebra.hpp"
#include "crossdual/covariant.hpp"

namespace crossdual {

using Json = nlohmann::ordered_json;

namespace detail {

inline void expect(bool cond, const std::string& msg) {
  if (!cond) fail(ErrorKind::ParseError, msg);
}

}  // namespace detail

inline Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const Json& j) {
  detail::expect(j.is_array() && j.size() == 2 && j[0].is_number() &&
                     j[1].is_number(),
                 "complex values are [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline Json matrix_to_json(const CMat& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline CMat matrix_from_json(const Json& j) {
  detail::expect(j.is_array() && !j.empty(), "matrix must be a nonempty array of rows");
  const Index rows = Index(j.size());
  detail::expect(j[0].is_array() && !j[0].empty(), "matrix rows must be nonempty arrays");
  const Index cols = Index(j[0].size());
  CMat m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    detail::expect(j[std::size_t(r)].is_array() && Index(j[std::size_t(r)].size()) == cols,
                   "matrix rows have inconsistent lengths");
    for (Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(j[std::size_t(r)][std::size_t(c)]);
  }
  detail::expect(entries_finite(m), "matrix entries must be finite");
  return m;
}

inline std::vector<int> int_list_from_json(const Json& j, const std::string& what) {
  detail::expect(j.is_array(), what + " must be an array");
  std::vector<int> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    detail::expect(v.is_number_integer(), what + " entries must be integers");
    out.push_back(v.get<int>());
  }
  return out;
}

inline FiniteGroup group_from_json(const Json& j) {
  detail::expect(j.is_object(), "group must be an object");
  if (j.contains("table")) {
    detail::expect(j["table"].is_array(), "group table must be an array");
    std::vector<std::vector<int>> table;
    for (const auto& row : j["table"])
      table.push_back(int_list_from_json(row, "group table row"));
    std::vector<std::string> names;
    if (j.contains("names")) {
      detail::expect(j["names"].is_array(), "group names must be an array");
      for (const auto& n : j["names"]) {
        detail::expect(n.is_string(), "group names must be strings");
        names.push_back(n.get<std::string>());
      }
    }
    return from_table(table, std::move(names));
  }
  if (j.contains("degree") && j.contains("generators")) {
    detail::expect(j["degree"].is_number_integer(), "degree must be an integer");
    std::vector<std::vector<int>> gens;
    detail::expect(j["generators"].is_array(), "generators must be an array");
    for (const auto& g : j["generators"])
      gens.push_back(int_list_from_json(g, "permutation generator"));
    return from_table(permutation_group_table(j["degree"].get<int>(), gens));
  }
  fail(ErrorKind::ParseError,
       "group needs either a table or a degree with permutation generators");
}

inline DynamicalSystem system_from_json(const Json& j) {
  detail::expect(j.is_object(), "system must be an object");
  detail::expect(j.contains("algebra") && j["algebra"].is_object() &&
                     j["algebra"].contains("blocks"),
                 "system needs algebra.blocks");
  DynamicalSystem sys;
  sys.algebra.block_dims =
      int_list_from_json(j["algebra"]["blocks"], "algebra blocks");
  validate_algebra(sys.algebra);
  detail::expect(j.contains("group"), "system needs a group");
  sys.group = group_from_json(j["group"]);
  detail::expect(j.contains("action") && j["action"].is_array() &&
                     int(j["action"].size()) == sys.group.order,
                 "action must list one automorphism per group element");
  for (const auto& a : j["action"]) {
    detail::expect(a.is_object() && a.contains("perm") && a.contains("unitaries"),
                   "automorphisms need perm and unitaries");
    Automorphism am;
    am.perm = int_list_from_json(a["perm"], "block permutation");
    detail::expect(a["unitaries"].is_array(), "unitaries must be an array");
    for (const auto& u : a["unitaries"]) am.unitaries.push_back(matrix_from_json(u));
    validate_automorphism(sys.algebra, am, 1e-8);
    sys.action.push_back(std::move(am));
  }
  return sys;
}

inline Json system_to_json(const DynamicalSystem& sys) {
  Json j;
  j["algebra"] = Json{{"blocks", sys.algebra.block_dims}};
  Json group;
  group["table"] = sys.group.table;
  if (!sys.group.names.empty()) group["names"] = sys.group.names;
  j["group"] = std::move(group);
  Json action = Json::array();
  for (const auto& a : sys.action) {
    Json am;
    am["perm"] = a.perm;
    Json us = Json::array();
    for (const auto& u : a.unitaries) us.push_back(matrix_to_json(u));
    am["unitaries"] = std::move(us);
    action.push_back(std::move(am));
  }
  j["action"] = std::move(action);
  return j;
}

inline Json covariant_to_json(const CovariantRep& c) {
  Json j;
  j["subgroup"] = c.subgroup.elements;
  j["space_dim"] = c.space_dim;
  Json pi = Json::array();
  for (const auto& m : c.pi) pi.push_back(matrix_to_json(m));
  j["pi"] = std::move(pi);
  Json u = Json::array();
  for (const auto& m : c.u) u.push_back(matrix_to_json(m));
  j["u"] = std::move(u);
  return j;
}

inline CovariantRep covariant_from_json(const Json& j) {
  detail::expect(j.is_object() && j.contains("subgroup") && j.contains("space_dim") &&
                     j.contains("pi") && j.contains("u"),
                 "covariant representation needs subgroup, space_dim, pi, u");
  CovariantRep c;
  c.subgroup.elements = int_list_from_json(j["subgroup"], "subgroup");
  detail::expect(std::is_sorted(c.subgroup.elements.begin(), c.subgroup.elements.end()),
                 "subgroup elements must be sorted");
  detail::expect(j["space_dim"].is_number_integer(), "space_dim must be an integer");
  c.space_dim = j["space_dim"].get<int>();
  detail::expect(j["pi"].is_array() && j["u"].is_array(),
                 "pi and u must be arrays of matrices");
  for (const auto& m : j["pi"]) c.pi.push_back(matrix_from_json(m));
  for (const auto& m : j["u"]) c.u.push_back(matrix_from_json(m));
  for (const auto& m : c.pi)
    detail::expect(m.rows() == c.space_dim && m.cols() == c.space_dim,
                   "pi matrices must match space_dim");
  for (const auto& m : c.u)
    detail::expect(m.rows() == c.space_dim && m.cols() == c.space_dim,
                   "u matrices must match space_dim");
  return c;
}

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ParseError, path + ": " + e.what());
  }
}

inline void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::ParseError, "cannot write " + path);
  out << j.dump(2) << "\n";
}

inline DynamicalSystem load_system(const std::string& path) {
  return system_from_json(load_json(path));
}

}  // namespace crossdual

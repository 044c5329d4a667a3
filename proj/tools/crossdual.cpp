// Command-line front door: validate dynamical systems, classify the dual of
// the associated crossed product, enumerate the parameter space, and match
// externally supplied representations against the catalogue.  All structured
// output is JSON; the text format is rendered from the same JSON document.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "crossdual/crossdual.hpp"
#include "crossdual/io.hpp"

namespace {

using crossdual::Classification;
using crossdual::DynamicalSystem;
using crossdual::Error;
using crossdual::ErrorKind;
using crossdual::Json;
using crossdual::Tolerances;

struct CommonOpts {
  double tol = 0.0;  // 0 means "keep defaults"
  std::uint64_t seed = Tolerances{}.seed;
  std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_format = true) {
  cmd->add_option("--tol", opts.tol,
                  "Override both the rank-decision and the equality tolerance "
                  "(default: 1e-8 for each)");
  cmd->add_option("--seed", opts.seed,
                  "Seed for randomized probes (default: 123456789)");
  if (with_format)
    cmd->add_option("--format", opts.format, "Report format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
}

Tolerances make_tol(const CommonOpts& opts) {
  Tolerances t;
  if (opts.tol > 0.0) {
    t.eps_rank = opts.tol;
    t.eps_eq = opts.tol;
  }
  t.seed = opts.seed;
  return t;
}

Json tol_json(const Tolerances& t) {
  Json j;
  j["eps_rank"] = t.eps_rank;
  j["eps_eq"] = t.eps_eq;
  j["seed"] = t.seed;
  return j;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InternalInconsistency:
    case ErrorKind::NoMatch:
    case ErrorKind::FaithfulnessFailure:
      return 2;  // the classification itself is contradicted
    default:
      return 1;  // input or validation failure
  }
}

std::string int_list(const Json& arr) {
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& v : arr) {
    if (!first) os << ", ";
    first = false;
    os << v.get<long long>();
  }
  os << "]";
  return os.str();
}

void emit(const Json& report, const std::string& format) {
  if (format == "json") {
    std::cout << report.dump(2) << "\n";
    return;
  }
  const std::string& command = report["command"].get_ref<const std::string&>();
  if (command == "validate") {
    std::cout << "validate: " << report["input"].get<std::string>() << "\n"
              << "  group order:    " << report["group_order"].get<int>() << "\n"
              << "  algebra blocks: " << int_list(report["algebra_blocks"])
              << "\n"
              << "  action checked: " << report["pairs_checked"].get<int>()
              << " composition pairs, " << report["units_checked"].get<int>()
              << " unit images\n"
              << "  status:         " << report["status"].get<std::string>()
              << "\n";
    return;
  }
  if (command == "gamma") {
    std::cout << "parameter space: " << report["points"].size() << " points, "
              << report["orbits"].size() << " orbits\n";
    for (const auto& p : report["points"]) {
      std::cout << "  point " << p["index"].get<int>() << ": block "
                << p["block"].get<int>() << ", stabilizer order "
                << p["stabilizer_order"].get<int>() << ", w-dim "
                << p["w_dim"].get<int>() << ", multiplier "
                << (p["multiplier_trivial"].get<bool>() ? "trivial"
                                                        : "nontrivial")
                << "\n";
    }
    int k = 0;
    for (const auto& orb : report["orbits"])
      std::cout << "  orbit " << k++ << ": points " << int_list(orb) << "\n";
    return;
  }
  if (command == "dual") {
    std::cout << "dual of the crossed product: " << report["classes"].size()
              << " classes from " << report["gamma_points"].get<int>()
              << " parameter points\n";
    for (const auto& c : report["classes"]) {
      std::cout << "  class " << c["orbit"].get<int>() << ": dim "
                << c["induced_dim"].get<int>() << "  (block "
                << c["block"].get<int>() << ", stabilizer order "
                << c["stabilizer_order"].get<int>() << ", w-dim "
                << c["w_dim"].get<int>() << ", multiplier "
                << (c["multiplier_trivial"].get<bool>() ? "trivial"
                                                        : "nontrivial")
                << ", orbit size " << c["orbit_members"].size() << ")\n";
    }
    const auto& id = report["dimension_identity"];
    std::cout << "  dimension identity: " << id["sum_of_squares"].get<long>()
              << " = " << id["expected"].get<long>()
              << (id["holds"].get<bool>() ? "  ok" : "  MISMATCH") << "\n";
    if (report.contains("oracle")) {
      const auto& o = report["oracle"];
      std::cout << "  oracle block dims: " << int_list(o["oracle_dims"])
                << " vs classified " << int_list(o["dual_dims"]) << " -> "
                << (o["match"].get<bool>() ? "match" : "MISMATCH") << "\n";
      if (!o["match"].get<bool>())
        std::cout << "  oracle detail: " << o["detail"].get<std::string>()
                  << "\n";
    }
    if (report.contains("emitted"))
      for (const auto& f : report["emitted"])
        std::cout << "  wrote " << f.get<std::string>() << "\n";
    return;
  }
  if (command == "analyze") {
    std::cout << "analyze: representation of dimension "
              << report["space_dim"].get<int>() << " matches orbit "
              << report["orbit"].get<int>() << " (catalogue point "
              << report["gamma_index"].get<int>() << ")\n";
    return;
  }
  std::cout << report.dump(2) << "\n";
}

Json system_summary(const std::string& path, const DynamicalSystem& sys) {
  Json j;
  j["input"] = path;
  j["group_order"] = sys.group.order;
  j["algebra_blocks"] = sys.algebra.block_dims;
  j["algebra_dim"] = sys.algebra.dim();
  return j;
}

int cmd_validate(const std::string& path, const CommonOpts& opts) {
  const Tolerances tol = make_tol(opts);
  const DynamicalSystem sys = crossdual::load_system(path);
  const crossdual::ActionCheck chk = crossdual::check_action(sys, tol);
  Json report;
  report["command"] = "validate";
  report.update(system_summary(path, sys));
  report["pairs_checked"] = chk.pairs_checked;
  report["units_checked"] = chk.units_checked;
  report["status"] = "ok";
  emit(report, opts.format);
  return 0;
}

Json gamma_points_json(const DynamicalSystem& sys, const Classification& cls,
                       const Tolerances& tol) {
  Json points = Json::array();
  for (std::size_t i = 0; i < cls.gammas.size(); ++i) {
    const auto& g = cls.gammas[i];
    Json p;
    p["index"] = int(i);
    p["block"] = g.block;
    p["stabilizer_order"] = int(g.vf.stab.elements.size());
    Json names = Json::array();
    for (int s : g.vf.stab.elements) names.push_back(sys.group.name_of(s));
    p["stabilizer"] = names;
    p["w_dim"] = g.w.dim;
    p["multiplier_trivial"] = g.w.multiplier.is_trivial(tol.eps_eq);
    points.push_back(p);
  }
  return points;
}

int cmd_gamma(const std::string& path, const CommonOpts& opts) {
  const Tolerances tol = make_tol(opts);
  const DynamicalSystem sys = crossdual::load_system(path);
  const Classification cls = crossdual::classify(sys, tol);
  Json report;
  report["command"] = "gamma";
  report.update(system_summary(path, sys));
  report["tolerances"] = tol_json(tol);
  report["points"] = gamma_points_json(sys, cls, tol);
  report["orbits"] = cls.orbits.orbits;
  emit(report, opts.format);
  return 0;
}

int cmd_dual(const std::string& path, const CommonOpts& opts, bool deep_check,
             const std::string& emit_dir) {
  const Tolerances tol = make_tol(opts);
  const DynamicalSystem sys = crossdual::load_system(path);
  const Classification cls = crossdual::classify(sys, tol);

  Json report;
  report["command"] = "dual";
  report.update(system_summary(path, sys));
  report["tolerances"] = tol_json(tol);
  report["gamma_points"] = int(cls.gammas.size());
  report["orbit_count"] = int(cls.orbits.orbits.size());
  Json classes = Json::array();
  long sum_sq = 0;
  for (const auto& d : cls.descriptors) {
    Json c;
    c["orbit"] = d.orbit;
    c["gamma_index"] = d.gamma_index;
    c["block"] = d.block;
    c["stabilizer_order"] = d.stabilizer_order;
    c["w_dim"] = d.w_dim;
    c["multiplier_trivial"] = d.multiplier_trivial;
    c["induced_dim"] = d.induced_dim;
    c["orbit_members"] = d.orbit_members;
    classes.push_back(c);
    sum_sq += long(d.induced_dim) * d.induced_dim;
  }
  report["classes"] = classes;
  const long expected = long(sys.algebra.dim()) * sys.group.order;
  Json identity;
  identity["sum_of_squares"] = sum_sq;
  identity["expected"] = expected;
  identity["holds"] = (sum_sq == expected);
  report["dimension_identity"] = identity;

  bool ok = (sum_sq == expected);
  if (deep_check) {
    const crossdual::OracleReport oracle =
        crossdual::oracle_compare(sys, cls.descriptors, tol);
    Json o;
    o["match"] = oracle.match;
    o["oracle_dims"] = oracle.oracle_dims;
    o["oracle_multiplicities"] = oracle.oracle_mults;
    o["dual_dims"] = oracle.dual_dims;
    o["sum_squares"] = oracle.sum_squares;
    o["expected_dim"] = oracle.expected_dim;
    o["pairwise_inequivalent"] = oracle.pairwise_inequivalent;
    o["detail"] = oracle.detail;
    report["oracle"] = o;
    ok = ok && oracle.match;
  }

  if (!emit_dir.empty()) {
    std::filesystem::create_directories(emit_dir);
    Json emitted = Json::array();
    for (const auto& d : cls.descriptors) {
      const std::string file =
          (std::filesystem::path(emit_dir) /
           ("rep_orbit" + std::to_string(d.orbit) + ".json"))
              .string();
      crossdual::save_json(file, crossdual::covariant_to_json(d.rep));
      emitted.push_back(file);
    }
    report["emitted"] = emitted;
  }

  report["status"] = ok ? "ok" : "mismatch";
  emit(report, opts.format);
  return ok ? 0 : 2;
}

int cmd_analyze(const std::string& path, const std::string& rep_path,
                const CommonOpts& opts) {
  const Tolerances tol = make_tol(opts);
  const DynamicalSystem sys = crossdual::load_system(path);
  const crossdual::CovariantRep rep =
      crossdual::covariant_from_json(crossdual::load_json(rep_path));
  const Classification cls = crossdual::classify(sys, tol);
  const crossdual::AnalyzeResult res = crossdual::analyze(sys, cls, rep, tol);
  Json report;
  report["command"] = "analyze";
  report.update(system_summary(path, sys));
  report["representation"] = rep_path;
  report["tolerances"] = tol_json(tol);
  report["space_dim"] = rep.space_dim;
  report["orbit"] = res.orbit;
  report["gamma_index"] = res.gamma_index;
  report["status"] = "ok";
  emit(report, opts.format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "crossdual: classify the irreducible representations of the crossed "
      "product of a finite-dimensional C*-algebra by a finite group action"};
  app.require_subcommand(1);

  std::string path, rep_path, emit_dir;
  bool deep_check = false;
  CommonOpts v_opts, g_opts, d_opts, a_opts;

  CLI::App* validate =
      app.add_subcommand("validate", "Check group axioms, automorphism "
                                     "invariants, and the action laws");
  validate->add_option("system", path, "System description (JSON)")
      ->required();
  add_common(validate, v_opts);

  CLI::App* gamma = app.add_subcommand(
      "gamma", "Enumerate the classification parameter space and its orbits");
  gamma->add_option("system", path, "System description (JSON)")->required();
  add_common(gamma, g_opts);

  CLI::App* dual = app.add_subcommand(
      "dual", "Classify the irreducible representations of the crossed "
              "product");
  dual->add_option("system", path, "System description (JSON)")->required();
  add_common(dual, d_opts);
  dual->add_flag("--deep-check", deep_check,
                 "Also decompose the regular model brute-force and compare");
  dual->add_option("--emit-reps", emit_dir,
                   "Write one representative covariant representation per "
                   "class into this directory");

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Locate the class of a covariant representation given in "
                 "JSON form");
  analyze->add_option("system", path, "System description (JSON)")->required();
  analyze->add_option("representation", rep_path,
                      "Covariant representation (JSON)")
      ->required();
  add_common(analyze, a_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(path, v_opts);
    if (gamma->parsed()) return cmd_gamma(path, g_opts);
    if (dual->parsed()) return cmd_dual(path, d_opts, deep_check, emit_dir);
    if (analyze->parsed()) return cmd_analyze(path, rep_path, a_opts);
  } catch (const Error& e) {
    std::cerr << "error (" << crossdual::error_kind_name(e.kind())
              << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// Command-line front end: validation, Vec_G generation, dual computation and
// the invertibility / MPO / weak Hopf checks.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "morita/annular.hpp"
#include "morita/catalog.hpp"
#include "morita/crosscheck.hpp"
#include "morita/dualdata.hpp"
#include "morita/error.hpp"
#include "morita/invertibility.hpp"
#include "morita/io.hpp"
#include "morita/vecg.hpp"

using json = nlohmann::ordered_json;
using namespace morita;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

struct Common {
  std::string input = "-";
  std::string output = "-";
  std::optional<double> tolerance;
  bool as_json = false;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  return read_text_file(path);
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text_file(path, text);
  }
}

BimoduleData load(const Common& c) {
  BimoduleData data = load_skeletal(read_input(c.input));
  if (c.tolerance) data.tolerance = *c.tolerance;
  return data;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

json residual_json(const ResidualReport& r) {
  return {{"max_residual", r.max_residual}, {"instances", r.instances}, {"worst", r.worst}, {"passed", r.passed}};
}

unsigned long long parse_seed(const std::string& text) {
  std::size_t used = 0;
  const unsigned long long v = std::stoull(text, &used, 0);
  if (used != text.size()) throw Error(ErrorKind::InvalidInput, "bad seed \"" + text + "\"");
  return v;
}

FiniteGroup resolve_group(const std::string& spec, std::optional<Cocycle>& embedded) {
  if (std::filesystem::exists(spec)) {
    const std::string text = read_text_file(spec);
    FiniteGroup g = load_group(text);
    if (json::parse(text).contains("cocycle")) embedded = load_cocycle(g, text);
    return g;
  }
  return group_by_name(spec);
}

// ---------------------------------------------------------------------------

int run_validate(const Common& c) {
  const BimoduleData data = load(c);
  bool ok = true;
  json report = json::array();
  for (const auto& rep : {verify_pentagons(data), verify_unitarity(data), verify_unit_normalization(data)}) {
    for (const auto& fam : rep.families) {
      const bool pass = fam.max_residual < data.tolerance;
      ok = ok && pass;
      report.push_back({{"check", fam.name},
                        {"max_residual", fam.max_residual},
                        {"instances", fam.instances},
                        {"worst", fam.worst},
                        {"passed", pass}});
      if (!c.as_json)
        std::cout << (pass ? "ok   " : "FAIL ") << fam.name << "  residual " << num(fam.max_residual) << "  ("
                  << fam.instances << " instances)" << (pass ? "" : "  at " + fam.worst) << "\n";
    }
  }
  if (c.as_json)
    std::cout << json{{"passed", ok}, {"tolerance", data.tolerance}, {"checks", report}}.dump(2) << "\n";
  else
    std::cout << (ok ? "valid" : "invalid") << "\n";
  return ok ? kExitOk : kExitError;
}

int run_gen_vecg(const Common& c, const std::string& group, const std::string& cocycle_file) {
  std::optional<Cocycle> phi;
  const FiniteGroup g = resolve_group(group, phi);
  if (!cocycle_file.empty()) {
    if (cocycle_file == "symplectic") {
      if (g.order != 4 || g.table != klein_group().table)
        throw Error(ErrorKind::InvalidInput, "the symplectic cocycle is defined on Z2xZ2");
      phi = symplectic_cocycle();
    } else {
      phi = load_cocycle(g, read_text_file(cocycle_file));
    }
  }
  ModuleData mod = phi ? gen_vecg(g, *phi) : gen_vecg(g);
  BimoduleData data;
  data.module = std::move(mod);
  if (c.tolerance) data.tolerance = *c.tolerance;
  write_output(c.output, save_skeletal(data));
  return kExitOk;
}

DecomposeOptions options(const Common& c, const std::string& seed_text) {
  DecomposeOptions opt;
  opt.seed = parse_seed(seed_text);
  if (const char* env = std::getenv("MORITA_SEED"); env != nullptr && *env != '\0') opt.seed = parse_seed(env);
  if (c.tolerance) opt.tolerance = *c.tolerance;
  return opt;
}

int run_compute_dual(const Common& c, const std::string& seed_text) {
  const BimoduleData in = load(c);
  const DecomposeOptions opt = options(c, seed_text);
  BimoduleData out = assemble_dual(in.module, opt);
  out.tolerance = in.tolerance;
  write_output(c.output, save_skeletal(out));
  return kExitOk;
}

int run_check_invertible(const Common& c) {
  const BimoduleData data = load(c);
  const Verdict v = check_invertible(data);
  if (c.as_json) {
    json failures = json::array();
    for (const auto& f : v.failures) failures.push_back({{"mode", to_string(f.mode)}, {"witness", f.witness}});
    std::cout << json{{"invertible", v.invertible},
                      {"definitive", v.definitive},
                      {"fpdim_c", v.fpdim_c},
                      {"fpdim_d", v.fpdim_d},
                      {"gram", matrix_json(v.gram)},
                      {"failures", failures}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << (v.invertible ? "invertible" : "not invertible") << "\n";
    std::cout << "FPdim C = " << v.fpdim_c << ", FPdim D = " << v.fpdim_d << "\n";
    std::cout << "character Gram matrix:\n";
    for (Eigen::Index i = 0; i < v.gram.rows(); ++i) {
      std::cout << " ";
      for (Eigen::Index j = 0; j < v.gram.cols(); ++j) {
        const double x = std::abs(v.gram(i, j).real()) < 1e-12 ? 0.0 : v.gram(i, j).real();
        std::cout << " " << x;
      }
      std::cout << "\n";
    }
    for (const auto& f : v.failures) std::cout << to_string(f.mode) << ": " << f.witness << "\n";
    if (!v.definitive) std::cout << "note: no F3 data; a passing Gram test is necessary but not sufficient\n";
  }
  return v.invertible ? kExitOk : kExitNegative;
}

int run_verify_wha(const Common& c) {
  const BimoduleData data = load(c);
  const AnnularAlgebra alg(data.module);
  const WhaReport rep = verify_wha(alg, data.tolerance);
  if (c.as_json) {
    json axioms = json::array();
    for (const auto& a : rep.axioms)
      axioms.push_back({{"name", a.name},
                        {"residual", a.residual},
                        {"passed", a.passed},
                        {"informational", a.informational},
                        {"witness", a.witness}});
    std::cout << json{{"dimension", alg.dim()}, {"passed", rep.passed()}, {"axioms", axioms}}.dump(2) << "\n";
  } else {
    std::cout << "dim Ann = " << alg.dim() << "\n";
    for (const auto& a : rep.axioms)
      std::cout << (a.passed ? "ok   " : (a.informational ? "info " : "FAIL ")) << a.name << "  residual " << num(a.residual)
                << (a.passed || a.witness.empty() ? "" : "  at " + a.witness) << "\n";
    if (const AxiomResult* f = rep.first_failure()) std::cout << "first violated axiom: " << f->name << "\n";
  }
  return rep.passed() ? kExitOk : kExitError;
}

int run_check_mpo(const Common& c) {
  const BimoduleData data = load(c);
  const MpoReport rep = check_mpo_injectivity(data);
  if (c.as_json) {
    std::cout << json{{"identity", residual_json(rep.identity)},
                      {"reduced", residual_json(rep.reduced)},
                      {"orthogonality", residual_json(rep.orthogonality)},
                      {"agreement", rep.agreement}}
                     .dump(2)
              << "\n";
  } else {
    auto line = [](const char* name, const ResidualReport& r) {
      std::cout << (r.passed ? "ok   " : "FAIL ") << name << "  residual " << num(r.max_residual)
                << (r.passed ? "" : "  at " + r.worst) << "\n";
    };
    line("mpo-injectivity", rep.identity);
    line("mpo-reduced", rep.reduced);
    line("matrix-orthogonality", rep.orthogonality);
    std::cout << "agreement " << (rep.agreement ? "yes" : "no") << "\n";
  }
  return rep.identity.passed && rep.orthogonality.passed ? kExitOk : kExitNegative;
}

int run_crosscheck(const Common& c, const std::string& group, const std::string& seed_text) {
  std::optional<Cocycle> phi;
  const FiniteGroup g = resolve_group(group, phi);
  if (phi) throw Error(ErrorKind::InvalidInput, "crosscheck compares against linear representations; drop the cocycle");
  const DecomposeOptions opt = options(c, seed_text);
  const CrosscheckReport r = crosscheck_vecg(g, opt);
  const double tol = c.tolerance.value_or(kDefaultTolerance);
  const std::pair<const char*, double> rows[] = {{"character-table", r.character_table},
                                                 {"homomorphism", r.homomorphism},
                                                 {"gauge", r.gauge},
                                                 {"character-orthogonality", r.character_orthogonality},
                                                 {"matrix-orthogonality", r.matrix_orthogonality},
                                                 {"clebsch-gordan", r.clebsch_gordan},
                                                 {"cg-oracle", r.cg_oracle},
                                                 {"racah", r.racah}};
  if (c.as_json) {
    json j{{"group", g.name}, {"rank", r.rank}, {"match", r.match}, {"passed", r.passed(tol)}};
    for (const auto& [name, value] : rows) j[name] = value;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << g.name << ": " << r.rank << " irreps\n";
    for (const auto& [name, value] : rows) std::cout << (value < tol ? "ok   " : "FAIL ") << name << "  residual " << num(value) << "\n";
  }
  return r.passed(tol) ? kExitOk : kExitError;
}

int run_gen_example(const Common& c, const std::string& name) {
  BimoduleData data;
  if (name == "fib") {
    data.module = regular_module(fibonacci_category());
  } else if (name == "missing-irreps") {
    data = failure_missing_irreps();
  } else if (name == "duplicate-labels") {
    data = failure_duplicate_labels();
  } else if (name == "reducible-labels") {
    data = failure_reducible_labels();
  } else if (name == "Z2xZ2-twisted") {
    data.module = gen_vecg(klein_group(), symplectic_cocycle());
  } else if (name == "Z2-regular") {
    data.module = regular_module(gen_vecg(cyclic_group(2)).base);
  } else {
    data.module = gen_vecg(group_by_name(name));
  }
  if (c.tolerance) data.tolerance = *c.tolerance;
  write_output(c.output, save_skeletal(data));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skeletal data for fusion, module and bimodule categories"};
  app.require_subcommand(1);
  Common common;
  std::string seed_text = "0x5EED";
  std::string group, cocycle, example;

  auto add_common = [&](CLI::App* sub, bool with_input, bool with_output, bool with_json) {
    if (with_input) sub->add_option("file", common.input, "input file, - for stdin");
    if (with_output) sub->add_option("-o,--output", common.output, "output file, - for stdout");
    if (with_json) sub->add_flag("--json", common.as_json, "machine-readable report");
    sub->add_option("--tolerance", common.tolerance, "absolute tolerance")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "pentagon, unitarity and unit checks");
  add_common(validate, true, false, true);
  auto* gen = app.add_subcommand("gen-vecg", "(F0, F1) for Vec_G acting on Vec");
  add_common(gen, false, true, false);
  gen->add_option("--group", group, "group name (Z<n>, Z2xZ2, S3, S4, D4, Q8) or group file")->required();
  gen->add_option("--cocycle", cocycle, "cocycle file, or 'symplectic' for Z2xZ2");
  auto* dual = app.add_subcommand("compute-dual", "assemble F2, F3, F4 for the dual category");
  add_common(dual, true, true, false);
  dual->add_option("--seed", seed_text, "decomposition seed (MORITA_SEED overrides)");
  auto* inv = app.add_subcommand("check-invertible", "character Gram test and failure diagnosis");
  add_common(inv, true, false, true);
  auto* wha = app.add_subcommand("verify-wha", "build the annular algebra and check its axioms");
  add_common(wha, true, false, true);
  auto* mpo = app.add_subcommand("check-mpo", "MPO-injectivity identity and matrix-element orthogonality");
  add_common(mpo, true, false, true);
  auto* cross = app.add_subcommand("crosscheck", "compare the Vec_G dual with classical representation theory");
  add_common(cross, false, false, true);
  cross->add_option("--group", group, "group name or group file")->required();
  cross->add_option("--seed", seed_text, "decomposition seed (MORITA_SEED overrides)");
  auto* ex = app.add_subcommand("gen-example", "write a bundled example");
  add_common(ex, false, true, false);
  ex->add_option("name", example,
                 "group name, Z2xZ2-twisted, Z2-regular, fib, missing-irreps, duplicate-labels or reducible-labels")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*validate) return run_validate(common);
    if (*gen) return run_gen_vecg(common, group, cocycle);
    if (*dual) return run_compute_dual(common, seed_text);
    if (*inv) return run_check_invertible(common);
    if (*wha) return run_verify_wha(common);
    if (*mpo) return run_check_mpo(common);
    if (*cross) return run_crosscheck(common, group, seed_text);
    if (*ex) return run_gen_example(common, example);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

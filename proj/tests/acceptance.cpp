// One line per acceptance criterion: [PASS] or [FAIL], a short label, and
// the numbers it was judged on.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "morita/annular.hpp"
#include "morita/catalog.hpp"
#include "morita/crosscheck.hpp"
#include "morita/dualdata.hpp"
#include "morita/invertibility.hpp"
#include "morita/io.hpp"
#include "morita/repdecomp.hpp"
#include "morita/vecg.hpp"

using namespace morita;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED(" << what << ")";
    }
  }
};

std::string data_file(const std::string& name) { return std::string(MORITA_DATA_DIR) + "/" + name + ".json"; }

const std::vector<std::string> kGroups = {"Z2", "Z3", "Z4", "Z2xZ2", "S3"};

std::vector<BimoduleData> assembled_duals() {
  std::vector<BimoduleData> out;
  for (const auto& g : kGroups) out.push_back(assemble_dual(gen_vecg(group_by_name(g))));
  out.push_back(assemble_dual(gen_vecg(klein_group(), symplectic_cocycle())));
  out.push_back(assemble_dual(regular_module(fibonacci_category())));
  return out;
}

std::vector<int> rounded(const Mat& m) {
  std::vector<int> out;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.push_back(static_cast<int>(std::lround(m(i, j).real())));
  return out;
}

void criterion_1(Outcome& o) {
  for (const auto& name : kGroups) {
    const FiniteGroup g = group_by_name(name);
    const auto t0 = std::chrono::steady_clock::now();
    const DualResult dual = compute_dual(gen_vecg(g));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto classical = classical_irreps(g);
    const CrosscheckReport r = crosscheck_vecg(g, dual);
    std::vector<double> dims(dual.data.right->fp_dims);
    std::vector<double> want;
    for (int idx : r.match) want.push_back(classical[static_cast<std::size_t>(idx)].dim);
    double dim_err = 0.0;
    for (std::size_t i = 0; i < dims.size(); ++i) dim_err = std::max(dim_err, std::abs(dims[i] - want[i]));
    o.detail << " " << name << ":rank=" << r.rank << ",chars=" << r.character_table << ",t=" << secs << "s";
    o.require(r.rank == static_cast<int>(classical.size()), name + " rank");
    o.require(dim_err < 1e-9, name + " dims");
    o.require(r.character_table < 1e-9, name + " characters");
    o.require(secs < 10.0, name + " runtime");
  }
}

void criterion_2(Outcome& o) {
  auto expect = [&](const std::string& file, bool invertible, const std::vector<FailureMode>& modes) {
    const Verdict v = check_invertible(load_skeletal_file(data_file(file)));
    std::vector<FailureMode> got;
    for (const auto& f : v.failures) got.push_back(f.mode);
    o.detail << " " << file << ":" << (v.invertible ? "invertible" : std::string(to_string(got.empty() ? FailureMode::MissingIrreps : got[0])));
    o.require(v.invertible == invertible && got == modes, file);
    return v;
  };
  const Verdict miss = expect("failure_missing_irreps", false, {FailureMode::MissingIrreps});
  o.require(!miss.failures.empty() && miss.failures[0].witness == "FPdim 2 ≠ 1", "missing-irreps witness");
  const Verdict dup = expect("failure_duplicate_labels", false, {FailureMode::DuplicateLabels});
  o.require(rounded(dup.gram) == std::vector<int>{1, 1, 1, 1}, "all-ones gram");
  const Verdict red = expect("failure_reducible_labels", false, {FailureMode::ReducibleLabels});
  o.require(red.gram.rows() == 3 && std::abs(red.gram(2, 2) - 2.0) < 1e-9, "gram(pi,pi)");
  o.require(rounded(red.gram) == std::vector<int>{1, 0, 1, 0, 1, 1, 1, 1, 2}, "reducible gram");
  const Verdict rep = expect("dual_Z2", true, {});
  o.require(rounded(rep.gram) == std::vector<int>{1, 0, 0, 1}, "identity gram");
}

void criterion_3(Outcome& o) {
  double worst = 0.0;
  for (const auto& d : assembled_duals()) {
    const int n = d.rank(Sort::D);
    worst = std::max(worst, linalg::max_abs_diff(character_gram(d), Mat::Identity(n, n)));
  }
  o.detail << " max|gram-I|=" << worst;
  o.require(worst < 1e-9, "gram");
}

void criterion_4(Outcome& o) {
  double worst = 0.0;
  for (const auto& d : assembled_duals()) worst = std::max(worst, check_matrix_orthogonality(d).max_residual);
  double group = 0.0;
  for (const auto& name : kGroups) group = std::max(group, crosscheck_vecg(group_by_name(name)).matrix_orthogonality);
  o.detail << " orthogonality=" << worst << " group-specialization=" << group;
  o.require(worst < 1e-8, "orthogonality");
  o.require(group < 1e-9, "group specialization");
}

void criterion_5(Outcome& o) {
  double worst = 0.0;
  for (const auto& d : assembled_duals()) worst = std::max(worst, check_mpo_injectivity(d).identity.max_residual);
  o.detail << " identity=" << worst;
  o.require(worst < 1e-9, "identity on duals");
  for (const char* file : {"dual_Z2", "failure_missing_irreps", "failure_duplicate_labels", "failure_reducible_labels"}) {
    const MpoReport m = check_mpo_injectivity(load_skeletal_file(data_file(file)));
    o.detail << " " << file << ":" << (m.identity.passed ? "pass" : "fail") << "/" << (m.orthogonality.passed ? "pass" : "fail");
    o.require(m.agreement, std::string(file) + " agreement");
  }
}

void criterion_6(Outcome& o) {
  const std::vector<std::pair<std::string, ModuleData>> cases = {
      {"Vec_Z2/Vec", gen_vecg(cyclic_group(2))},
      {"Vec_Z2/Vec_Z2", regular_module(gen_vecg(cyclic_group(2)).base)},
      {"S3/Vec", gen_vecg(symmetric_group(3))},
      {"Fib/Fib", regular_module(fibonacci_category())}};
  for (const auto& [name, mod] : cases) {
    const AnnularAlgebra alg(mod);
    const WhaReport rep = verify_wha(alg, 1e-9);
    double axioms = 0.0;
    for (const auto& a : rep.axioms)
      if (!a.informational && a.name != "negative-control") axioms = std::max(axioms, a.residual);
    const Vec& h = alg.haar();
    double haar = std::max(linalg::max_abs_diff(alg.mul(h, h), h), linalg::max_abs_diff(alg.antipode(h), h));
    for (const auto& v : decompose(alg)) haar = std::max(haar, std::abs(character(v, h) - (v.trivial ? 1.0 : 0.0)));
    o.detail << " " << name << ":wha=" << axioms << ",haar=" << haar;
    o.require(rep.passed() && axioms < 1e-9, name + " axioms");
    o.require(haar < 1e-10, name + " haar");
  }
}

void criterion_7(Outcome& o) {
  auto dims = [](const std::vector<Irrep>& irreps) {
    std::vector<int> d;
    for (const auto& v : irreps) d.push_back(v.dim());
    std::sort(d.begin(), d.end());
    return d;
  };
  const DualResult fib = compute_dual(regular_module(fibonacci_category()));
  const double t = fib.data.right->fp_dims[1];
  const bool fusion = fib.data.right->fusion(1, 1, 0) == 1 && fib.data.right->fusion(1, 1, 1) == 1;
  o.detail << " Fib:dim=" << fib.algebra.dim() << ",tau^2-tau-1=" << t * t - t - 1.0;
  o.require(fib.algebra.dim() == 13, "Fib algebra dim");
  o.require(dims(fib.irreps) == std::vector<int>{2, 3}, "Fib irrep dims");
  o.require(fusion && std::abs(t * t - t - 1.0) < 1e-8, "Fib fusion");
  const AnnularAlgebra z2(regular_module(gen_vecg(cyclic_group(2)).base));
  o.detail << " Z2/Z2:dim=" << z2.dim();
  o.require(z2.dim() == 8, "Z2 algebra dim");
  o.require(dims(decompose(z2)) == std::vector<int>{2, 2}, "Z2 irrep dims");
}

void criterion_8(Outcome& o) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(MORITA_DATA_DIR)) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const std::string name = path.stem().string();
    if (name.rfind("vecg_", 0) != 0 && name != "fib") continue;
    const BimoduleData in = load_skeletal_file(path.string());
    const BimoduleData out = load_skeletal(save_skeletal(assemble_dual(in.module)));
    const double pent = verify_pentagons(out).max_residual();
    const double unit = verify_unitarity(out).max_residual();
    o.detail << " " << name << ":" << std::max(pent, unit);
    o.require(pent < 1e-9 && unit < 1e-9, name);
  }
}

void criterion_9(Outcome& o) {
  DecomposeOptions opt;
  opt.seed = 1;
  for (const auto& mod : {gen_vecg(symmetric_group(3)), regular_module(fibonacci_category())}) {
    const std::string a = save_skeletal(assemble_dual(mod, opt));
    const std::string b = save_skeletal(assemble_dual(mod, opt));
    o.detail << " " << a.size() << "B";
    o.require(a == b, "byte-identical");
  }
}

const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> kCriteria = {
    {"dual of Vec is Rep G", criterion_1},
    {"invertibility verdicts", criterion_2},
    {"character Gram is the identity", criterion_3},
    {"matrix-element orthogonality", criterion_4},
    {"MPO injectivity and agreement", criterion_5},
    {"weak Hopf axioms and Haar integral", criterion_6},
    {"dimension counting", criterion_7},
    {"coherence of computed duals", criterion_8},
    {"determinism", criterion_9},
};

bool run(int n) {
  Outcome o;
  try {
    kCriteria[static_cast<std::size_t>(n - 1)].second(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " exception: " << e.what();
  }
  std::printf("[%s] criterion %d: %s:%s\n", o.pass ? "PASS" : "FAIL", n, kCriteria[static_cast<std::size_t>(n - 1)].first.c_str(),
              o.detail.str().c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion")->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);
  bool ok = true;
  for (int n = 1; n <= 9; ++n)
    if (only == 0 || only == n) ok = run(n) && ok;
  return ok ? 0 : 1;
}

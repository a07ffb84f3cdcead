#include <doctest.h>

#include "fixtures.hpp"
#include "morita/error.hpp"
#include "morita/invertibility.hpp"
#include "morita/skeletal.hpp"

using namespace morita;

namespace {

// Fusion rules of Rep(S3) computed from the character table of S3 in the
// lexicographic permutation order used by symmetric_group(3).
Multiplicities rep_s3_fusion() {
  const double chi[3][6] = {{1, 1, 1, 1, 1, 1}, {1, -1, -1, 1, 1, -1}, {2, 0, 0, -1, -1, 0}};
  Multiplicities n(3, 3, 3);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int g = 0; g < 6; ++g) s += chi[a][g] * chi[b][g] * chi[c][g];
        n.set(a, b, c, static_cast<int>(std::lround(s / 6.0)));
      }
  return n;
}

BimoduleData as_bimodule(const ModuleData& mod) {
  BimoduleData d;
  d.module = mod;
  finalize(d);
  return d;
}

}  // namespace

TEST_CASE("FP dimensions of small fusion rings") {
  const auto z2 = compute_fp_dims(gen_vecg(cyclic_group(2)).base.fusion);
  CHECK(z2[0] == doctest::Approx(1.0));
  CHECK(z2[1] == doctest::Approx(1.0));

  const auto fib = compute_fp_dims(fibonacci_category().fusion);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(fib[1] - phi) < 1e-12);
  CHECK(std::abs(fib[1] * fib[1] - fib[1] - 1.0) < 1e-12);

  const Multiplicities s3 = rep_s3_fusion();
  const auto d = compute_fp_dims(s3);
  CHECK(std::abs(d[0] - 1.0) < 1e-12);
  CHECK(std::abs(d[1] - 1.0) < 1e-12);
  CHECK(std::abs(d[2] - 2.0) < 1e-12);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double rhs = 0.0;
      for (int c = 0; c < 3; ++c) rhs += s3(a, b, c) * d[static_cast<std::size_t>(c)];
      CHECK(std::abs(d[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(b)] - rhs) < 1e-10);
    }
}

TEST_CASE("pointed categories have unit FP dimensions") {
  for (const char* g : {"Z3", "Z2xZ2", "S3", "Q8"})
    for (double x : compute_fp_dims(gen_vecg(group_by_name(g)).base.fusion)) CHECK(std::abs(x - 1.0) < 1e-12);
}

TEST_CASE("broken unit row is rejected") {
  Multiplicities n(2, 2, 2);
  n.set(0, 0, 0, 1);
  n.set(0, 1, 0, 1);
  n.set(1, 0, 1, 1);
  n.set(1, 1, 0, 1);
  CHECK_THROWS_AS(compute_fp_dims(n), Error);
  try {
    compute_fp_dims(n);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonUnitalFusion);
  }
}

TEST_CASE("module dimensions") {
  for (int n : {2, 3, 5}) {
    const ModuleData mod = gen_vecg(cyclic_group(n));
    CHECK(std::abs(mod.dims[0] - std::sqrt(static_cast<double>(n))) < 1e-12);
  }
  const ModuleData fib = regular_module(fibonacci_category());
  CHECK(std::abs(fib.dims[0] - 1.0) < 1e-12);
  CHECK(std::abs(fib.dims[1] - (1.0 + std::sqrt(5.0)) / 2.0) < 1e-12);
  const ModuleData reg = fixtures::z2_regular();
  CHECK(std::abs(reg.dims[0] - 1.0) < 1e-12);
  CHECK(std::abs(reg.dims[1] - 1.0) < 1e-12);
}

TEST_CASE("inconsistent action is rejected") {
  ModuleData mod = gen_vecg(cyclic_group(2));
  mod.action.set(0, 0, 0, 2);
  try {
    finalize(mod);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InconsistentAction);
  }
}

TEST_CASE("pentagons on Vec_G data") {
  const BimoduleData z2 = as_bimodule(gen_vecg(cyclic_group(2)));
  const auto rep = verify_pentagons(z2);
  CHECK(rep.passed());
  CHECK(rep.max_residual() == 0.0);

  const BimoduleData twisted = as_bimodule(gen_vecg(klein_group(), symplectic_cocycle()));
  const auto tw = verify_pentagons(twisted);
  CHECK(tw.passed());
  bool saw = false;
  for (const auto& fam : tw.families)
    if (fam.name == "CCCM") {
      saw = true;
      CHECK(fam.instances == 64);
      CHECK(fam.max_residual < 1e-15);
    }
  CHECK(saw);
}

TEST_CASE("a flipped F0 sign breaks the pentagon by 2") {
  BimoduleData z2 = as_bimodule(gen_vecg(cyclic_group(2)));
  const FKey key{1, 1, 1, 1, 0, 0, 0, 0, 0, 0};
  REQUIRE(z2.module.base.fsym.contains(key));
  z2.module.base.fsym.set(key, -1.0);
  const auto rep = verify_pentagons(z2);
  CHECK_FALSE(rep.passed());
  CHECK(std::abs(rep.max_residual() - 2.0) < 1e-12);
}

TEST_CASE("unitarity residuals") {
  BimoduleData z2 = as_bimodule(gen_vecg(cyclic_group(2)));
  CHECK(verify_unitarity(z2).max_residual() == 0.0);
  z2.module.base.fsym.set(FKey{1, 1, 1, 1, 0, 0, 0, 0, 0, 0}, 2.0);
  CHECK(std::abs(verify_unitarity(z2).max_residual() - 3.0) < 1e-12);
  CHECK(verify_unitarity(fixtures::vecg_dual("S3").data).max_residual() < 1e-9);
}

TEST_CASE("F-block and lowered tensor conventions") {
  const BimoduleData fib = as_bimodule(regular_module(fibonacci_category()));
  const FBlock blk = fblock(fib, 0, 1, 1, 1, 1);
  CHECK(blk.matrix.rows() == 2);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(blk.matrix(0, 0).real() - 1.0 / phi) < 1e-14);
  const FTensor low = lowered(fib, 0);
  for (const auto& l : block_labels(fib, 0)) {
    const FBlock f = fblock(fib, 0, l[0], l[1], l[2], l[3]);
    const FBlock fi = block_of(fib, 0, low, l[0], l[1], l[2], l[3]);
    const Mat prod = f.matrix * fi.matrix.transpose();
    CHECK(linalg::max_abs_diff(prod, Mat::Identity(prod.rows(), prod.cols())) < 1e-12);
  }
}

TEST_CASE("missing blocks are reported") {
  BimoduleData z2 = as_bimodule(gen_vecg(cyclic_group(2)));
  FTensor pruned;
  for (const auto& [k, v] : z2.module.f1)
    if (!(k.a == 1 && k.b == 1)) pruned.set(k, v);
  z2.module.f1 = pruned;
  try {
    check_structure(z2);
    FAIL("expected MissingBlock");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingBlock);
  }
}

TEST_CASE("duals from fusion") {
  const auto d = duals_from_fusion(gen_vecg(cyclic_group(3)).base.fusion);
  CHECK(d == std::vector<int>{0, 2, 1});
}

TEST_CASE("identity gauge leaves data unchanged") {
  const BimoduleData& s3 = fixtures::vecg_dual("S3").data;
  const BimoduleData same = apply_gauge(s3, GaugeTransform{});
  CHECK(same.f2 == s3.f2);
  CHECK(same.f3 == s3.f3);
  CHECK(same.right->fsym == s3.right->fsym);
}

TEST_CASE("phase gauge on Vec_Z2 keeps the pentagons") {
  const BimoduleData z2 = as_bimodule(gen_vecg(cyclic_group(2)));
  GaugeTransform g;
  g.matrices[VertexSpace{Sort::C, 1, Sort::C, 1, 0}] = Mat::Constant(1, 1, std::polar(1.0, 0.7));
  g.matrices[VertexSpace{Sort::C, 1, Sort::M, 0, 0}] = Mat::Constant(1, 1, std::polar(1.0, -1.9));
  const BimoduleData out = apply_gauge(z2, g);
  CHECK(out.module.f1 != z2.module.f1);
  CHECK(verify_pentagons(out).max_residual() < 1e-14);
  CHECK(verify_unitarity(out).max_residual() < 1e-14);
}

TEST_CASE("gauge covariance of the assembled S3 dual") {
  const BimoduleData& s3 = fixtures::vecg_dual("S3").data;
  GaugeTransform g;
  g.matrices[VertexSpace{Sort::M, 0, Sort::D, 2, 0}] = fixtures::random_unitary(2, 7);
  g.matrices[VertexSpace{Sort::D, 2, Sort::D, 2, 2}] = Mat::Constant(1, 1, std::polar(1.0, 0.3));
  g.matrices[VertexSpace{Sort::C, 1, Sort::M, 0, 0}] = Mat::Constant(1, 1, std::polar(1.0, 1.1));
  const BimoduleData out = apply_gauge(s3, g);
  CHECK(out.f2 != s3.f2);
  CHECK(verify_pentagons(out).max_residual() < 1e-9);
  CHECK(verify_unitarity(out).max_residual() < 1e-9);
  CHECK(linalg::max_abs_diff(character_gram(out), character_gram(s3)) < 1e-9);
  CHECK(check_invertible(out).invertible == check_invertible(s3).invertible);
}

TEST_CASE("gauge shape and unitarity are validated") {
  const BimoduleData z2 = as_bimodule(gen_vecg(cyclic_group(2)));
  GaugeTransform g;
  g.matrices[VertexSpace{Sort::C, 1, Sort::C, 1, 0}] = Mat::Identity(2, 2);
  try {
    apply_gauge(z2, g);
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ShapeMismatch);
  }
  g.matrices.clear();
  g.matrices[VertexSpace{Sort::C, 1, Sort::C, 1, 0}] = Mat::Constant(1, 1, 2.0);
  CHECK_THROWS_AS(apply_gauge(z2, g), Error);
}

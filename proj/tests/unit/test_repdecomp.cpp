#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "morita/error.hpp"
#include "morita/repdecomp.hpp"

using namespace morita;

namespace {

std::vector<int> dims(const std::vector<Irrep>& irreps) {
  std::vector<int> out;
  for (const auto& v : irreps) out.push_back(v.dim());
  return out;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  Representation out;
  for (std::size_t i = 0; i < a.matrices.size(); ++i) {
    Mat m = Mat::Zero(a.dim() + b.dim(), a.dim() + b.dim());
    m.topLeftCorner(a.dim(), a.dim()) = a.matrices[i];
    m.bottomRightCorner(b.dim(), b.dim()) = b.matrices[i];
    out.matrices.push_back(m);
  }
  out.grading = a.grading;
  out.grading.insert(out.grading.end(), b.grading.begin(), b.grading.end());
  return out;
}

}  // namespace

TEST_CASE("Vec_Z2 has a trivial and a sign irrep") {
  const auto& r = fixtures::vecg_dual("Z2");
  REQUIRE(r.irreps.size() == 2);
  CHECK(r.irreps[0].trivial);
  CHECK(dims(r.irreps) == std::vector<int>{1, 1});
  const int g = r.algebra.index(TubeLabel{0, 0, 0, 0, 1, 0, 0});
  CHECK(std::abs(character(r.irreps[1], g) + 1.0) < 1e-12);
  CHECK(std::abs(character(r.irreps[0], g) - 1.0) < 1e-12);
}

TEST_CASE("irrep dimensions and completeness") {
  const AnnularAlgebra reg(fixtures::z2_regular());
  CHECK(dims(decompose(reg)) == std::vector<int>{2, 2});
  const auto& fib = fixtures::fib_dual();
  auto d = dims(fib.irreps);
  std::sort(d.begin(), d.end());
  CHECK(d == std::vector<int>{2, 3});
  CHECK(dims(fixtures::vecg_dual("S3").irreps) == std::vector<int>{1, 1, 2});
  for (const auto* r : {&fib, &fixtures::vecg_dual("S3"), &fixtures::vecg_dual("Z4")}) {
    int total = 0;
    for (const auto& v : r->irreps) total += v.dim() * v.dim();
    CHECK(total == r->algebra.dim());
  }
}

TEST_CASE("Haar integral detects the trivial irrep") {
  for (const auto* r : {&fixtures::fib_dual(), &fixtures::vecg_dual("S3")}) {
    for (const auto& v : r->irreps) CHECK(std::abs(character(v, r->algebra.haar()) - (v.trivial ? 1.0 : 0.0)) < 1e-10);
    CHECK(std::count_if(r->irreps.begin(), r->irreps.end(), [](const Irrep& v) { return v.trivial; }) == 1);
    CHECK(r->irreps[0].trivial);
  }
}

TEST_CASE("character of a unit summand is the sector dimension") {
  const auto& r = fixtures::fib_dual();
  for (const auto& v : r.irreps)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const int p = r.algebra.sector_projector(a, b);
        if (p < 0) continue;
        CHECK(std::abs(character(v, p) - static_cast<double>(v.sector_dim(a, b))) < 1e-10);
      }
}

TEST_CASE("Schur pairing is orthonormal") {
  for (const auto* r : {&fixtures::fib_dual(), &fixtures::vecg_dual("S3"), &fixtures::twisted_dual()})
    for (std::size_t i = 0; i < r->irreps.size(); ++i)
      for (std::size_t j = 0; j < r->irreps.size(); ++j)
        CHECK(std::abs(schur_pair(r->algebra, r->irreps[i], r->irreps[j]) - (i == j ? 1.0 : 0.0)) < 1e-9);
  const auto& s3 = fixtures::vecg_dual("S3");
  const Representation sum = direct_sum(s3.irreps[0], s3.irreps[1]);
  CHECK(std::abs(schur_pair(s3.algebra, sum, sum) - 2.0) < 1e-9);
  CHECK(hom_dim(s3.algebra, sum, sum) == 2);
}

TEST_CASE("irreps are unital star representations") {
  for (const auto* r : {&fixtures::fib_dual(), &fixtures::vecg_dual("S3")}) {
    const auto& alg = r->algebra;
    for (const auto& v : r->irreps) {
      CHECK(linalg::max_abs_diff(v.act(alg.unit()), Mat::Identity(v.dim(), v.dim())) < 1e-10);
      for (int i = 0; i < alg.dim(); ++i)
        CHECK(linalg::max_abs_diff(v.act(alg.star(alg.basis_vector(i))), v.matrices[static_cast<std::size_t>(i)].adjoint()) < 1e-9);
      CHECK(representation_residual(alg, v) < 1e-9);
      CHECK(hom_dim(alg, v, v) == 1);
    }
  }
}

TEST_CASE("grading respects the tube boundaries") {
  const auto& r = fixtures::fib_dual();
  for (const auto& v : r.irreps) {
    int total = 0;
    for (const auto& [sector, idx] : v.sectors) total += static_cast<int>(idx.size());
    CHECK(total == v.dim());
    for (int t = 0; t < r.algebra.dim(); ++t) {
      const TubeLabel& lab = r.algebra.basis()[static_cast<std::size_t>(t)];
      const Mat& m = v.matrices[static_cast<std::size_t>(t)];
      for (int i = 0; i < v.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) {
          if (std::abs(m(i, j)) < 1e-12) continue;
          CHECK(v.grading[static_cast<std::size_t>(j)] == Sector{lab.a, lab.b});
          CHECK(v.grading[static_cast<std::size_t>(i)] == Sector{lab.c, lab.d});
        }
    }
  }
}

TEST_CASE("hom dimensions between distinct irreps vanish") {
  const auto& r = fixtures::vecg_dual("Z2");
  CHECK(hom_dim(r.algebra, r.irreps[0], r.irreps[1]) == 0);
  CHECK(hom_basis(r.algebra, r.irreps[0], r.irreps[0]).size() == 1);
}

TEST_CASE("tensor products") {
  const auto& z2 = fixtures::vecg_dual("Z2");
  const TensorModule ss = tensor_module(z2.algebra, z2.irreps[1], z2.irreps[1]);
  CHECK(ss.dim() == 1);
  CHECK(hom_dim(z2.algebra, z2.irreps[0], ss) == 1);

  const auto& fib = fixtures::fib_dual();
  for (const auto& v : fib.irreps) {
    const TensorModule vt = tensor_module(fib.algebra, v, fib.irreps[0]);
    CHECK(vt.dim() == v.dim());
    CHECK(hom_dim(fib.algebra, v, vt) == 1);
  }
  const Irrep& tau = fib.irreps[1];
  const TensorModule tt = tensor_module(fib.algebra, tau, tau);
  CHECK(hom_dim(fib.algebra, fib.irreps[0], tt) == 1);
  CHECK(hom_dim(fib.algebra, tau, tt) == 1);
  CHECK(representation_residual(fib.algebra, tt) < 1e-9);
}

TEST_CASE("intertwiners are orthogonal isometric module maps") {
  const auto& s3 = fixtures::vecg_dual("S3");
  const Irrep& pi = s3.irreps[2];
  REQUIRE(pi.dim() == 2);
  const TensorModule pp = tensor_module(s3.algebra, pi, pi);
  int count = 0;
  for (const auto& c : s3.irreps) {
    const auto maps = intertwiners(s3.algebra, pi, pi, c);
    count += static_cast<int>(maps.size());
    for (const auto& v : maps) {
      CHECK(linalg::max_abs_diff(v.matrix.adjoint() * v.matrix, Mat::Identity(c.dim(), c.dim())) < 1e-10);
      for (int t = 0; t < s3.algebra.dim(); ++t)
        CHECK(linalg::max_abs_diff(pp.matrices[static_cast<std::size_t>(t)] * v.matrix, v.matrix * c.matrices[static_cast<std::size_t>(t)]) < 1e-9);
    }
  }
  CHECK(count == 3);

  const auto& fib = fixtures::fib_dual();
  for (const auto& [key, list] : fib.intertwiners)
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = 0; j < list.size(); ++j) {
        const Mat g = list[i].matrix.adjoint() * list[j].matrix;
        const int n = static_cast<int>(g.rows());
        CHECK(linalg::max_abs_diff(g, i == j ? Mat(Mat::Identity(n, n)) : Mat(Mat::Zero(n, n))) < 1e-10);
      }
}

TEST_CASE("trivial factor intertwiner is the unit constraint") {
  const auto& fib = fixtures::fib_dual();
  for (const auto& v : fib.irreps) {
    const auto maps = intertwiners(fib.algebra, fib.irreps[0], v, v);
    REQUIRE(maps.size() == 1);
    CHECK(linalg::unitarity_residual(maps[0].matrix) < 1e-10);
  }
}

TEST_CASE("Haar trace formula with the grouplike element") {
  for (const auto* r : {&fixtures::fib_dual(), &fixtures::vecg_dual("S3")}) {
    const auto& alg = r->algebra;
    const Mat c = alg.coproduct(alg.haar());
    Vec x = Vec::Zero(alg.dim());
    for (int j = 0; j < alg.dim(); ++j)
      for (int k = 0; k < alg.dim(); ++k)
        if (std::abs(c(j, k)) > 0.0) x += c(j, k) * alg.mul(alg.basis_vector(k), alg.antipode(alg.basis_vector(j)));
    const double eps1 = alg.counit(alg.unit()).real();
    for (std::size_t v = 0; v < r->irreps.size(); ++v) {
      const Irrep& irr = r->irreps[v];
      const double dv = r->data.right->fp_dims[v];
      const Mat lhs = irr.act(x);
      const Mat rhs = irr.dim() / (eps1 * dv) * irr.act(alg.grouplike(true));
      CHECK(linalg::max_abs_diff(lhs, rhs) < 1e-9);
    }
  }
}

TEST_CASE("decomposition is deterministic for a fixed seed") {
  const AnnularAlgebra alg(regular_module(fibonacci_category()));
  DecomposeOptions opt;
  opt.seed = 1;
  const auto a = decompose(alg, opt);
  const auto b = decompose(alg, opt);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t t = 0; t < a[i].matrices.size(); ++t) CHECK(a[i].matrices[t] == b[i].matrices[t]);
}

TEST_CASE("regular representation is faithful") {
  const AnnularAlgebra alg(fixtures::z2_regular());
  const Representation reg = regular_representation(alg);
  CHECK(reg.dim() == alg.dim());
  CHECK(representation_residual(alg, reg) < 1e-9);
}

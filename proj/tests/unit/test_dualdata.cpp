#include <doctest.h>

#include "fixtures.hpp"
#include "morita/dualdata.hpp"
#include "morita/invertibility.hpp"

using namespace morita;

namespace {

void check_coherent(const BimoduleData& d) {
  for (const auto& rep : {verify_pentagons(d), verify_unitarity(d), verify_unit_normalization(d)})
    for (const auto& fam : rep.families) {
      INFO(fam.name << " at " << fam.worst);
      CHECK(fam.max_residual < 1e-9);
    }
}

}  // namespace

TEST_CASE("Rep(Z2) has trivial associators") {
  const BimoduleData& d = fixtures::vecg_dual("Z2").data;
  REQUIRE(d.rank(Sort::D) == 2);
  for (const auto& [k, v] : d.right->fsym) CHECK(std::abs(v - 1.0) < 1e-12);
  CHECK(verify_pentagons(d).max_residual() < 1e-14);
}

TEST_CASE("Rep(S3) fusion and dimensions") {
  const BimoduleData& d = fixtures::vecg_dual("S3").data;
  REQUIRE(d.rank(Sort::D) == 3);
  const auto& fp = d.right->fp_dims;
  CHECK(std::abs(fp[0] - 1.0) < 1e-10);
  CHECK(std::abs(fp[1] - 1.0) < 1e-10);
  CHECK(std::abs(fp[2] - 2.0) < 1e-10);
  for (int c = 0; c < 3; ++c) CHECK(d.right->fusion(2, 2, c) == 1);
  CHECK(d.right->fusion(1, 1, 0) == 1);
  CHECK(d.right->fusion(1, 2, 2) == 1);
  CHECK(d.right->dual == std::vector<int>{0, 1, 2});
}

TEST_CASE("Fibonacci dual is Fibonacci") {
  const BimoduleData& d = fixtures::fib_dual().data;
  REQUIRE(d.rank(Sort::D) == 2);
  const double t = d.right->fp_dims[1];
  CHECK(std::abs(t * t - t - 1.0) < 1e-8);
  CHECK(d.right->fusion(1, 1, 0) == 1);
  CHECK(d.right->fusion(1, 1, 1) == 1);
}

TEST_CASE("assembled duals are coherent and invertible") {
  for (const auto* r : {&fixtures::vecg_dual("Z2"), &fixtures::vecg_dual("Z3"), &fixtures::vecg_dual("Z4"),
                        &fixtures::vecg_dual("Z2xZ2"), &fixtures::vecg_dual("S3"), &fixtures::fib_dual(),
                        &fixtures::twisted_dual()}) {
    const BimoduleData& d = r->data;
    check_coherent(d);
    CHECK(std::abs(d.left().fpdim() - d.right->fpdim()) < 1e-8 * d.left().fpdim());
    CHECK(linalg::max_abs_diff(character_gram(d), Mat::Identity(d.rank(Sort::D), d.rank(Sort::D))) < 1e-9);
    CHECK(check_matrix_orthogonality(d).max_residual < 1e-8);
  }
}

TEST_CASE("twisted Z2 x Z2 keeps FPdim |G|") {
  const BimoduleData& d = fixtures::twisted_dual().data;
  CHECK(std::abs(d.right->fpdim() - 4.0) < 1e-8);
}

TEST_CASE("right action matches the sector dimensions") {
  for (const auto* r : {&fixtures::fib_dual(), &fixtures::vecg_dual("S3")}) {
    const Multiplicities m = right_action_from(r->data.module, r->irreps);
    CHECK(m == r->data.right_action);
    for (std::size_t c = 0; c < r->irreps.size(); ++c)
      for (int b = 0; b < r->data.module.rank; ++b)
        for (int f = 0; f < r->data.module.rank; ++f)
          CHECK(r->data.right_action(b, static_cast<int>(c), f) == r->irreps[c].sector_dim(b, f));
  }
}

TEST_CASE("Vec_G F2 blocks are group representations") {
  const FiniteGroup g = symmetric_group(3);
  const BimoduleData& d = fixtures::vecg_dual("S3").data;
  for (int c = 0; c < 3; ++c) {
    const int n = d.right_action(0, c, 0);
    auto rho = [&](int x) {
      Mat m(n, n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m(a, b) = d.f2.at({x, 0, c, 0, 0, 0, a, b, 0, 0});
      return m;
    };
    for (int x = 0; x < 6; ++x)
      for (int y = 0; y < 6; ++y) CHECK(linalg::max_abs_diff(rho(x) * rho(y), rho(g.mul(x, y))) < 1e-10);
    CHECK(linalg::max_abs_diff(rho(0), Mat::Identity(n, n)) < 1e-12);
  }
}

TEST_CASE("unit-strand blocks are identities") {
  const BimoduleData& d = fixtures::fib_dual().data;
  for (int c = 0; c < 2; ++c) {
    const FBlock blk = fblock(d, 2, 0, 1, c, 1);
    if (blk.matrix.size() == 0) continue;
    CHECK(linalg::max_abs_diff(blk.matrix, Mat::Identity(blk.matrix.rows(), blk.matrix.cols())) < 1e-12);
  }
  for (int b = 0; b < 2; ++b)
    for (int dd = 0; dd < 2; ++dd) {
      const FBlock blk = fblock(d, 3, b, 0, 1, dd);
      if (blk.matrix.size() == 0) continue;
      CHECK(linalg::max_abs_diff(blk.matrix, Mat::Identity(blk.matrix.rows(), blk.matrix.cols())) < 1e-12);
    }
  CHECK(verify_unit_normalization(d).max_residual() < 1e-12);
}

TEST_CASE("dual fusion counts intertwiners") {
  const auto& r = fixtures::fib_dual();
  const Multiplicities n = dual_fusion_from(r.irreps, r.intertwiners);
  CHECK(n == r.data.right->fusion);
}

TEST_CASE("F4 agrees with its own tensors") {
  const auto& r = fixtures::vecg_dual("S3");
  const FTensor f4 = compute_f4(r.algebra, r.irreps, r.intertwiners, r.data.right->fusion);
  for (const auto& [k, v] : f4) CHECK(std::abs(v - r.data.right->fsym.at(k)) < 1e-12);
}

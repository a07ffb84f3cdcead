#include <doctest.h>

#include "fixtures.hpp"
#include "morita/annular.hpp"
#include "morita/error.hpp"

using namespace morita;

namespace {

int tube(const AnnularAlgebra& alg, int x) { return alg.index(TubeLabel{0, 0, 0, 0, x, 0, 0}); }

}  // namespace

TEST_CASE("algebra dimensions") {
  CHECK(AnnularAlgebra(gen_vecg(cyclic_group(2))).dim() == 2);
  CHECK(AnnularAlgebra(fixtures::z2_regular()).dim() == 8);
  CHECK(AnnularAlgebra(regular_module(fibonacci_category())).dim() == 13);
  CHECK(AnnularAlgebra(gen_vecg(symmetric_group(3))).dim() == 6);
}

TEST_CASE("basis enumeration is lexicographic") {
  const AnnularAlgebra alg(fixtures::z2_regular());
  for (int i = 1; i < alg.dim(); ++i) CHECK(alg.basis()[static_cast<std::size_t>(i - 1)] < alg.basis()[static_cast<std::size_t>(i)]);
}

TEST_CASE("Vec_G tubes multiply like the group algebra") {
  for (const char* name : {"Z2", "S3", "Q8"}) {
    const FiniteGroup g = group_by_name(name);
    const AnnularAlgebra alg(gen_vecg(g));
    for (int a = 0; a < g.order; ++a)
      for (int b = 0; b < g.order; ++b) {
        const Vec p = alg.mul(alg.basis_vector(tube(alg, a)), alg.basis_vector(tube(alg, b)));
        CHECK(linalg::max_abs_diff(p, alg.basis_vector(tube(alg, g.mul(a, b)))) < 1e-12);
      }
  }
}

TEST_CASE("Haar integral of Vec_G is the uniform average") {
  for (const char* name : {"Z2", "S3"}) {
    const FiniteGroup g = group_by_name(name);
    const AnnularAlgebra alg(gen_vecg(g));
    for (int x = 0; x < g.order; ++x) CHECK(std::abs(alg.haar()(tube(alg, x)) - 1.0 / g.order) < 1e-14);
  }
  const AnnularAlgebra z2(gen_vecg(cyclic_group(2)));
  CHECK(std::abs(z2.haar_measure(z2.haar()) - 1.0) < 1e-14);
}

TEST_CASE("unit and counit") {
  const AnnularAlgebra alg(fixtures::z2_regular());
  CHECK(std::abs(alg.counit(alg.unit()) - 2.0) < 1e-14);
  const AnnularAlgebra vec(gen_vecg(cyclic_group(3)));
  CHECK(std::abs(vec.counit(vec.unit()) - 1.0) < 1e-14);
  for (int i = 0; i < alg.dim(); ++i) {
    const Vec e = alg.basis_vector(i);
    CHECK(linalg::max_abs_diff(alg.mul(alg.unit(), e), e) < 1e-14);
    CHECK(linalg::max_abs_diff(alg.mul(e, alg.unit()), e) < 1e-14);
  }
}

TEST_CASE("mismatched boundaries multiply to zero") {
  const AnnularAlgebra alg(fixtures::z2_regular());
  int checked = 0;
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < alg.dim(); ++j) {
      const TubeLabel& u = alg.basis()[static_cast<std::size_t>(i)];
      const TubeLabel& v = alg.basis()[static_cast<std::size_t>(j)];
      if (u.a == v.c && u.b == v.d) continue;
      CHECK(alg.mul(alg.basis_vector(i), alg.basis_vector(j)).norm() == 0.0);
      ++checked;
    }
  CHECK(checked > 0);
}

TEST_CASE("weak Hopf axioms hold on the reference algebras") {
  const ModuleData mods[] = {gen_vecg(cyclic_group(2)), fixtures::z2_regular(), gen_vecg(symmetric_group(3)),
                             regular_module(fibonacci_category()), gen_vecg(klein_group(), symplectic_cocycle())};
  for (const auto& mod : mods) {
    const AnnularAlgebra alg(mod);
    const WhaReport rep = verify_wha(alg, 1e-9);
    for (const auto& a : rep.axioms) {
      INFO(a.name << " residual " << a.residual);
      if (!a.informational) CHECK(a.passed);
      if (a.name != "negative-control") CHECK(a.residual < 1e-9);
    }
    CHECK(rep.passed());
    CHECK(rep.first_failure() == nullptr);
  }
}

TEST_CASE("Haar integral properties") {
  const AnnularAlgebra alg(regular_module(fibonacci_category()));
  const Vec& h = alg.haar();
  CHECK(linalg::max_abs_diff(alg.mul(h, h), h) < 1e-10);
  CHECK(linalg::max_abs_diff(alg.antipode(h), h) < 1e-10);
  CHECK(linalg::max_abs_diff(alg.star(h), h) < 1e-10);
}

TEST_CASE("antipode squared is conjugation by the grouplike element") {
  for (const auto& mod : {regular_module(fibonacci_category()), fixtures::z2_regular()}) {
    const AnnularAlgebra alg(mod);
    const Vec& g = alg.grouplike();
    const Vec& gi = alg.grouplike(true);
    CHECK(linalg::max_abs_diff(alg.mul(g, gi), alg.unit()) < 1e-10);
    for (int i = 0; i < alg.dim(); ++i) {
      const Vec e = alg.basis_vector(i);
      CHECK(linalg::max_abs_diff(alg.antipode(alg.antipode(e)), alg.mul(alg.mul(g, e), gi)) < 1e-10);
    }
    const WhaReport rep = verify_wha(alg);
    REQUIRE(rep.find("antipode-squared-grouplike") != nullptr);
    CHECK(rep.find("antipode-squared-grouplike")->passed);
  }
}

TEST_CASE("Hopf degeneration for rank-one modules") {
  const AnnularAlgebra alg(gen_vecg(symmetric_group(3)));
  const Mat d1 = alg.coproduct(alg.unit());
  CHECK(linalg::max_abs_diff(d1, alg.unit() * alg.unit().transpose()) < 1e-12);
  const WhaReport rep = verify_wha(alg);
  REQUIRE(rep.find("hopf-degeneration") != nullptr);
  CHECK(rep.find("hopf-degeneration")->passed);
  const AnnularAlgebra reg(fixtures::z2_regular());
  CHECK(verify_wha(reg).find("hopf-degeneration") == nullptr);
}

TEST_CASE("inner product is positive definite") {
  const AnnularAlgebra alg(regular_module(fibonacci_category()));
  const Mat g = alg.gram();
  CHECK(linalg::max_abs_diff(g, g.adjoint()) < 1e-12);
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  CHECK(es.eigenvalues().minCoeff() > 1e-6);
}

TEST_CASE("identity antipode fails the antipode axioms") {
  const AnnularAlgebra alg(fixtures::z2_regular());
  const WhaReport rep = verify_wha(alg);
  const AxiomResult* neg = rep.find("negative-control");
  REQUIRE(neg != nullptr);
  CHECK(neg->passed);
  CHECK_FALSE(neg->informational);
  CHECK(neg->residual > 1e-3);
}

TEST_CASE("checked element API") {
  const AnnularAlgebra a(gen_vecg(cyclic_group(2)));
  const AnnularAlgebra b(gen_vecg(cyclic_group(2)));
  const AlgElement g = a.element(a.basis_vector(1));
  const AlgElement gg = a.multiply(g, g);
  CHECK(linalg::max_abs_diff(gg.coeffs, a.basis_vector(0)) == 0.0);
  try {
    a.multiply(g, b.unit_element());
    FAIL("expected AlgebraMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AlgebraMismatch);
  }
  CHECK(std::abs(a.haar_measure(a.haar_element()) - 1.0) < 1e-14);
  CHECK(a.coproduct(g).size() >= 1);
}

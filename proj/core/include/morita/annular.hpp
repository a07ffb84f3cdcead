#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "morita/linalg.hpp"
#include "morita/skeletal.hpp"

namespace morita {

/// Tube with inner boundary (a bottom, b top), outer boundary (c, d), a
/// C-strand x wrapping around, and vertices alpha: x |> a -> c, beta: x |> b -> d.
struct TubeLabel {
  int a = 0, b = 0, c = 0, d = 0, x = 0, alpha = 0, beta = 0;
  auto operator<=>(const TubeLabel&) const = default;
};

std::string to_string(const TubeLabel& t);

/// Coefficient vector over the tube basis of one particular algebra.
struct AlgElement {
  std::uint64_t algebra = 0;
  Vec coeffs;
};

/// One structure-constant term.
struct Term {
  int index = 0;
  Complex coef;
};

/// One term of a Sweedler sum: coef * e_left (x) e_right.
struct Term2 {
  int left = 0, right = 0;
  Complex coef;
};

/// The module annular algebra Ann(C, M) with its weak Hopf structure maps.
///
/// Products u * v stack u outside v. Coproducts are stored as Sweedler sums
/// over basis pairs; Delta(u) as a dense coefficient matrix C has
/// Delta(u) = sum_jk C(j, k) e_j (x) e_k.
class AnnularAlgebra {
 public:
  explicit AnnularAlgebra(const ModuleData& mod);

  const ModuleData& module() const { return mod_; }
  std::uint64_t id() const { return id_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<TubeLabel>& basis() const { return basis_; }
  /// Basis position of `t`, or -1.
  int index(const TubeLabel& t) const;

  // Raw maps on coefficient vectors.
  const std::vector<Term>& product_terms(int outer, int inner) const {
    return product_[static_cast<std::size_t>(outer) * basis_.size() + static_cast<std::size_t>(inner)];
  }
  Vec mul(const Vec& u, const Vec& v) const;
  const std::vector<Term2>& coproduct_terms(int i) const { return coproduct_[static_cast<std::size_t>(i)]; }
  Mat coproduct(const Vec& u) const;
  Complex counit(const Vec& u) const { return (counit_.transpose() * u)(0); }
  Vec antipode(const Vec& u) const { return antipode_ * u; }
  Vec star(const Vec& u) const { return star_ * u.conjugate(); }
  Complex haar_measure(const Vec& u) const { return (haar_measure_.transpose() * u)(0); }

  const Vec& unit() const { return unit_; }
  const Vec& haar() const { return haar_; }
  const Vec& grouplike(bool inverse = false) const { return inverse ? grouplike_inv_ : grouplike_; }
  const Vec& counit_vector() const { return counit_; }
  const Mat& antipode_matrix() const { return antipode_; }
  /// Columns are the images e_i^*; star(u) = K conj(u).
  const Mat& star_matrix() const { return star_; }
  Vec basis_vector(int i) const;

  /// Left multiplication by e_i as a dim x dim matrix.
  Mat left_regular(int i) const;
  /// Matrix of left multiplication by u.
  Mat left_regular(const Vec& u) const;
  /// <e_i, e_j> = lambda(e_i^* e_j); Hermitian positive definite for a C*-WHA.
  Mat gram() const;
  /// Pairs (S(Lambda_1), Lambda_2) of the Haar integral's coproduct, grouped by the
  /// first leg: X_M = sum rho_W(first) M rho_V(second) projects onto intertwiners.
  const std::vector<std::pair<Vec, Vec>>& averaging_pairs() const { return averaging_; }
  /// The unit's summands p_{ab} = tube(a,b -> a,b; 1, unit, 1).
  int sector_projector(int a, int b) const;

  // Checked API on AlgElements; AlgebraMismatch for foreign elements.
  AlgElement element(const Vec& coeffs) const;
  AlgElement multiply(const AlgElement& u, const AlgElement& v) const;
  std::vector<std::pair<AlgElement, AlgElement>> coproduct(const AlgElement& u) const;
  Complex counit(const AlgElement& u) const;
  AlgElement antipode(const AlgElement& u) const;
  AlgElement star(const AlgElement& u) const;
  Complex haar_measure(const AlgElement& u) const;
  AlgElement haar_element() const { return element(haar_); }
  AlgElement unit_element() const { return element(unit_); }
  AlgElement grouplike_element(bool inverse = false) const { return element(grouplike(inverse)); }

 private:
  void check(const AlgElement& u) const;

  ModuleData mod_;
  std::uint64_t id_ = 0;
  std::vector<TubeLabel> basis_;
  std::map<TubeLabel, int> lookup_;
  std::vector<std::vector<Term>> product_;
  std::vector<std::vector<Term2>> coproduct_;
  Vec counit_, unit_, haar_, haar_measure_, grouplike_, grouplike_inv_;
  Mat antipode_, star_;
  std::vector<std::pair<Vec, Vec>> averaging_;
};

AnnularAlgebra build_algebra(const ModuleData& mod);

struct AxiomResult {
  std::string name;
  double residual = 0.0;
  bool passed = true;
  std::string witness;
  /// Informational checks do not affect WhaReport::passed().
  bool informational = false;
};

struct WhaReport {
  double tolerance = kDefaultTolerance;
  std::vector<AxiomResult> axioms;
  bool passed() const;
  /// First failing non-informational axiom, or nullptr.
  const AxiomResult* first_failure() const;
  const AxiomResult* find(const std::string& name) const;
};

/// Numerically checks the weak Hopf, star, and Haar axioms on the tube basis.
/// Includes a negative control ("negative-control") that swaps S for the
/// identity and passes when that breaks the antipode axioms.
WhaReport verify_wha(const AnnularAlgebra& alg, double tolerance = kDefaultTolerance);

/// Projections Pi^L(x) = eps(1_1 x) 1_2 and Pi^R(x) = 1_1 eps(x 1_2).
Vec target_map(const AnnularAlgebra& alg, const Vec& x);
Vec source_map(const AnnularAlgebra& alg, const Vec& x);

}  // namespace morita

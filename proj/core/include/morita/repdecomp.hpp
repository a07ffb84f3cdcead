#pragma once

#include <map>
#include <utility>
#include <vector>

#include "morita/annular.hpp"
#include "morita/linalg.hpp"

namespace morita {

using Sector = std::pair<int, int>;  ///< (incoming b, outgoing f) module labels

/// Finite-dimensional *-representation of an annular algebra in an
/// orthonormal basis, one matrix per tube basis element.
struct Representation {
  std::vector<Mat> matrices;
  std::vector<Sector> grading;  ///< sector of each basis vector

  int dim() const { return static_cast<int>(grading.size()); }
  Mat act(const Vec& u) const;
};

struct Irrep : Representation {
  int id = -1;
  bool trivial = false;
  int dual = -1;
  Vec character;
  /// Basis indices of each sector, ordered by the multiplicity index.
  std::map<Sector, std::vector<int>> sectors;

  int sector_dim(int b, int f) const;
  /// Basis position of (b, mu, f), or -1.
  int index(int b, int mu, int f) const;
};

/// V_bottom (x) V_top restricted to Delta(1): pairs (i, j) with i in a
/// bottom sector (s, e) and j in a top sector (e, t); the pair has sector (s, t).
/// The first coproduct leg acts on the top factor.
struct TensorModule : Representation {
  std::vector<std::pair<int, int>> pairs;
  int pair_index(int i, int j) const;
};

/// Isometric module map V_c -> V_a (x) V_b.
struct Intertwiner {
  int a = 0, b = 0, c = 0, alpha = 0;
  Mat matrix;
};

struct DecomposeOptions {
  unsigned long long seed = 0x5EED;
  double cluster_tolerance = 1e-7;
  int retry_budget = 8;
  double tolerance = kDefaultTolerance;
};

/// Complete list of inequivalent irreps, trivial first.
std::vector<Irrep> decompose(const AnnularAlgebra& alg, const DecomposeOptions& opt = {});

/// Regular representation in the orthonormal basis of <u, v> = lambda(u^* v).
Representation regular_representation(const AnnularAlgebra& alg);

Complex character(const Representation& v, int tube);
Complex character(const Representation& v, const Vec& u);
Vec character_vector(const Representation& v);

/// <chi_V^* chi_W, Lambda>, with chi^*(u) = conj(chi(S(u)^*)).
Complex schur_pair(const AnnularAlgebra& alg, const Representation& v, const Representation& w);

TensorModule tensor_module(const AnnularAlgebra& alg, const Representation& bottom, const Representation& top);

/// Matrix of M -> X_M = sum rho_W(S(Lambda_1)) M rho_V(Lambda_2) on column-major vec(M).
Mat averaging_operator(const AnnularAlgebra& alg, const Representation& v, const Representation& w);

/// dim Hom_A(V, W). RankAmbiguous when the singular value gap is unclear.
int hom_dim(const AnnularAlgebra& alg, const Representation& v, const Representation& w);

/// Hilbert-Schmidt orthonormal basis of Hom_A(V, W) as dim W x dim V matrices.
std::vector<Mat> hom_basis(const AnnularAlgebra& alg, const Representation& v, const Representation& w);

/// Orthogonal isometries spanning Hom(V_c, V_a (x) V_b).
std::vector<Intertwiner> intertwiners(const AnnularAlgebra& alg, const Irrep& a, const Irrep& b, const Irrep& c);

/// max over tubes of |rho(u^*) - rho(u)^dagger|, |rho(uv) - rho(u) rho(v)| and |rho(1) - 1|.
double representation_residual(const AnnularAlgebra& alg, const Representation& v);

}  // namespace morita

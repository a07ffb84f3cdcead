#pragma once

#include <string>
#include <vector>

#include "morita/dualdata.hpp"
#include "morita/vecg.hpp"

namespace morita {

/// Residuals of the pipeline dual of (Vec_G, Vec) against textbook group
/// representation theory.
struct CrosscheckReport {
  int rank = 0;
  /// match[c] = index into classical_irreps of the irrep labelled c in D.
  std::vector<int> match;
  double character_table = 0.0;   ///< pipeline characters vs classical, after matching
  double homomorphism = 0.0;      ///< F2[g] F2[h] = F2[gh]
  double gauge = 0.0;             ///< F2 vs classical matrices after a unitary change of basis
  double character_orthogonality = 0.0;  ///< (1/|G|) sum_g chi_c(g) conj chi_c'(g) = delta
  double matrix_orthogonality = 0.0;     ///< sum_g rho_c(g)_ab conj rho_c'(g)_a'b' = |G|/dim delta's
  double clebsch_gordan = 0.0;    ///< F3 recouples classical rho's (rho x rho = CG rho CG^dagger)
  double cg_oracle = 0.0;         ///< F3 vs projection-operator Clebsch-Gordan, up to multiplicity unitaries
  double racah = 0.0;             ///< F4 vs recoupled Clebsch-Gordan tensors

  double max_residual() const;
  bool passed(double tol) const { return max_residual() < tol; }
};

/// Trivial cocycle only. MismatchedRank if the dual rank differs from the
/// number of classical irreps or characters cannot be paired up.
CrosscheckReport crosscheck_vecg(const FiniteGroup& g, const DecomposeOptions& opt = {});
CrosscheckReport crosscheck_vecg(const FiniteGroup& g, const DualResult& dual, unsigned long long seed = 0x5EED);

}  // namespace morita

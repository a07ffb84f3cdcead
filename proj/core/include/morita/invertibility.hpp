#pragma once

#include <string>
#include <vector>

#include "morita/linalg.hpp"
#include "morita/skeletal.hpp"

namespace morita {

enum class FailureMode { MissingIrreps, DuplicateLabels, ReducibleLabels };

std::string_view to_string(FailureMode mode);

struct Diagnosis {
  FailureMode mode;
  std::string witness;
};

struct Verdict {
  bool invertible = false;
  /// False when F3 is absent: the Gram test alone is necessary but not sufficient.
  bool definitive = false;
  double fpdim_c = 0.0, fpdim_d = 0.0;
  Mat gram;
  std::vector<Diagnosis> failures;

  bool has(FailureMode mode) const;
};

/// (1/rk M) sum (d_a / m_b^2) F2[a,b,c,d; a,b,mu; mu,d,beta] Fi2[a,b,c',d; a,b,nu; nu,d,beta].
Mat character_gram(const BimoduleData& data);

Verdict check_invertible(const BimoduleData& data);

struct ResidualReport {
  double max_residual = 0.0;
  std::size_t instances = 0;
  std::string worst;
  bool passed = true;
};

/// sum_{a,alpha,nu} d_a F2[a,b,c,d; alpha,e,beta; mu,f,nu] Fi2[a,b,c',d; alpha,e,beta'; mu',f,nu]
/// against delta_{c c'} delta_{beta beta'} delta_{mu mu'} m_e m_f / d_c.
ResidualReport check_matrix_orthogonality(const BimoduleData& data);

struct MpoReport {
  ResidualReport identity;       ///< the full F2/F3 scalar identity
  ResidualReport reduced;        ///< the same identity after F3 unitarity is used to remove F3
  ResidualReport orthogonality;  ///< check_matrix_orthogonality on the same data
  bool agreement = false;        ///< identity.passed == orthogonality.passed
};

/// Scalar MPO-injectivity identity, enumerated over every label tuple (c', g, h)
/// whether or not c' appears in g h.
MpoReport check_mpo_injectivity(const BimoduleData& data);

}  // namespace morita

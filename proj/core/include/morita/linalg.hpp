#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace morita {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kDimensionTolerance = 1e-12;
inline constexpr double kPruneThreshold = 1e-12;

namespace linalg {

/// Largest entrywise modulus of `a - b`.
double max_abs_diff(const Mat& a, const Mat& b);

/// max |U U^dagger - 1|, or +inf for non-square input.
double unitarity_residual(const Mat& u);

/// Multiplies `v` by the phase that makes its first largest-modulus entry real
/// and positive. Entries within `tie` of the maximum count as ties.
void fix_phase(Eigen::Ref<Vec> v, double tie = 1e-9);

/// Orthonormal basis (columns) for the eigenspace of Hermitian `h` with
/// eigenvalue near `value`.
Mat eigenspace(const Mat& h, double value, double tol);

/// Orthonormal basis for the column range of `a`, singular values above
/// `rel_tol * max singular value`.
Mat range_basis(const Mat& a, double rel_tol);

/// Kronecker product a (x) b with row index i_a * rows(b) + i_b.
Mat kron(const Mat& a, const Mat& b);

/// Zeroes real/imaginary parts smaller than `threshold` (also turns -0 into 0).
Complex clean(Complex z, double threshold);

}  // namespace linalg
}  // namespace morita

#include "morita/linalg.hpp"

#include <cmath>
#include <limits>

#include "morita/error.hpp"

namespace morita {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonUnitalFusion: return "NonUnitalFusion";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::InconsistentAction: return "InconsistentAction";
    case ErrorKind::MissingBlock: return "MissingBlock";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::DecompositionFailure: return "DecompositionFailure";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::RankAmbiguous: return "RankAmbiguous";
    case ErrorKind::GradingMismatch: return "GradingMismatch";
    case ErrorKind::PipelineInconsistent: return "PipelineInconsistent";
    case ErrorKind::MismatchedRank: return "MismatchedRank";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace linalg {

double max_abs_diff(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double unitarity_residual(const Mat& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  if (u.size() == 0) return 0.0;
  return max_abs_diff(u * u.adjoint(), Mat::Identity(u.rows(), u.cols()));
}

void fix_phase(Eigen::Ref<Vec> v, double tie) {
  if (v.size() == 0) return;
  const double top = v.cwiseAbs().maxCoeff();
  if (top == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= top - tie) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = Complex(std::abs(v(i)), 0.0);
      return;
    }
  }
}

Mat eigenspace(const Mat& h, double value, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(h);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "eigensolver did not converge");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    if (std::abs(solver.eigenvalues()(i) - value) < tol) keep.push_back(i);
  }
  Mat out(h.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(keep[k]);
  return out;
}

Mat range_basis(const Mat& a, double rel_tol) {
  if (a.size() == 0) return Mat(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return Mat(a.rows(), 0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > rel_tol * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Complex clean(Complex z, double threshold) {
  double re = std::abs(z.real()) < threshold ? 0.0 : z.real();
  double im = std::abs(z.imag()) < threshold ? 0.0 : z.imag();
  return {re + 0.0, im + 0.0};
}

}  // namespace linalg
}  // namespace morita

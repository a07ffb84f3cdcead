#include "morita/crosscheck.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <tuple>

#include "morita/error.hpp"

namespace morita {

double CrosscheckReport::max_residual() const {
  return std::max({character_table, homomorphism, gauge, character_orthogonality, matrix_orthogonality,
                   clebsch_gordan, cg_oracle, racah});
}

namespace {

int match_character(const std::vector<ClassicalIrrep>& cl, const std::vector<Complex>& chi, double& residual) {
  int best = -1;
  double best_res = 0.0;
  for (std::size_t k = 0; k < cl.size(); ++k) {
    double r = 0.0;
    for (std::size_t g = 0; g < chi.size(); ++g) r = std::max(r, std::abs(chi[g] - cl[k].character[g]));
    if (best < 0 || r < best_res) {
      best = static_cast<int>(k);
      best_res = r;
    }
  }
  if (best < 0 || best_res > 1e-6) throw Error(ErrorKind::MismatchedRank, "no classical irrep with a matching character");
  residual = std::max(residual, best_res);
  return best;
}

Mat polar_unitary(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Mat block_diag(const std::vector<Mat>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Mat out = Mat::Zero(n, n);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    out.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return out;
}

}  // namespace

CrosscheckReport crosscheck_vecg(const FiniteGroup& grp, const DecomposeOptions& opt) {
  return crosscheck_vecg(grp, compute_dual(gen_vecg(grp), opt), opt.seed);
}

CrosscheckReport crosscheck_vecg(const FiniteGroup& grp, const DualResult& dual, unsigned long long seed) {
  const BimoduleData& data = dual.data;
  const int n = grp.order;
  const auto cl = classical_irreps(grp, seed);
  CrosscheckReport rep;
  rep.rank = data.rank(Sort::D);
  if (rep.rank != static_cast<int>(cl.size()) || data.rank(Sort::M) != 1 || data.rank(Sort::C) != n)
    throw Error(ErrorKind::MismatchedRank, "dual rank " + std::to_string(rep.rank) + " vs " +
                                               std::to_string(cl.size()) + " classical irreps");
  const int nd = rep.rank;

  // Character table of the annular irreps on the group tubes.
  for (int c = 0; c < nd; ++c) {
    std::vector<Complex> chi;
    for (int g = 0; g < n; ++g)
      chi.push_back(dual.irreps[static_cast<std::size_t>(c)].character(dual.algebra.index(TubeLabel{0, 0, 0, 0, g, 0, 0})));
    rep.match.push_back(match_character(cl, chi, rep.character_table));
  }
  std::vector<int> sorted = rep.match;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::MismatchedRank, "two dual labels match the same classical irrep");

  // rho_c(g)_{ab} = F2[g,*,c,*; 1,*,a; b,*,1]
  std::vector<int> dim(static_cast<std::size_t>(nd));
  std::vector<std::vector<Mat>> rho(static_cast<std::size_t>(nd));
  for (int c = 0; c < nd; ++c) {
    const int d = data.mult(Sort::M, 0, Sort::D, c, 0);
    dim[static_cast<std::size_t>(c)] = d;
    for (int g = 0; g < n; ++g) {
      Mat r(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) r(a, b) = data.f2.at({g, 0, c, 0, 0, 0, a, b, 0, 0});
      rho[static_cast<std::size_t>(c)].push_back(r);
    }
  }
  auto R = [&](int c, int g) -> const Mat& { return rho[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)]; };

  for (int c = 0; c < nd; ++c)
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        rep.homomorphism = std::max(rep.homomorphism, linalg::max_abs_diff(R(c, g) * R(c, h), R(c, grp.mul(g, h))));

  // Unitary U_c with U R_c(g) U^dagger equal to the classical matrices.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Mat> gauge(static_cast<std::size_t>(nd));
  std::vector<const ClassicalIrrep*> target(static_cast<std::size_t>(nd));
  for (int c = 0; c < nd; ++c) {
    std::vector<Complex> chi;
    for (int g = 0; g < n; ++g) chi.push_back(R(c, g).trace());
    double unused = 0.0;
    const ClassicalIrrep& k = cl[static_cast<std::size_t>(match_character(cl, chi, unused))];
    const int d = dim[static_cast<std::size_t>(c)];
    Mat x(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) x(i, j) = Complex(normal(rng), normal(rng));
    Mat m = Mat::Zero(d, d);
    for (int g = 0; g < n; ++g) m += k.matrices[static_cast<std::size_t>(g)] * x * R(c, g).adjoint();
    const Mat u = polar_unitary(m);
    for (int g = 0; g < n; ++g)
      rep.gauge = std::max(rep.gauge, linalg::max_abs_diff(u * R(c, g) * u.adjoint(), k.matrices[static_cast<std::size_t>(g)]));
    gauge[static_cast<std::size_t>(c)] = u;
    target[static_cast<std::size_t>(c)] = &k;
  }
  auto cl_rho = [&](int c, int g) -> const Mat& { return target[static_cast<std::size_t>(c)]->matrices[static_cast<std::size_t>(g)]; };

  for (int c = 0; c < nd; ++c)
    for (int c2 = 0; c2 < nd; ++c2) {
      Complex s{};
      for (int g = 0; g < n; ++g) s += R(c, g).trace() * std::conj(R(c2, g).trace());
      rep.character_orthogonality = std::max(rep.character_orthogonality, std::abs(s / static_cast<double>(n) - (c == c2 ? 1.0 : 0.0)));
      const int d = dim[static_cast<std::size_t>(c)], d2 = dim[static_cast<std::size_t>(c2)];
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int a2 = 0; a2 < d2; ++a2)
            for (int b2 = 0; b2 < d2; ++b2) {
              Complex t{};
              for (int g = 0; g < n; ++g) t += R(c, g)(a, b) * std::conj(R(c2, g)(a2, b2));
              const double expect = (c == c2 && a == a2 && b == b2) ? static_cast<double>(n) / d : 0.0;
              rep.matrix_orthogonality = std::max(rep.matrix_orthogonality, std::abs(t - expect));
            }
    }

  // Clebsch-Gordan isometries in the classical basis, keyed by (sigma, tau, pi, mu).
  std::map<std::tuple<int, int, int, int>, Mat> cg;
  for (int s = 0; s < nd; ++s)
    for (int t = 0; t < nd; ++t) {
      const int ds = dim[static_cast<std::size_t>(s)], dt = dim[static_cast<std::size_t>(t)];
      std::vector<std::tuple<int, int>> cols;
      std::vector<Mat> blocks_u;
      for (int p = 0; p < nd; ++p)
        for (int mu = 0; mu < data.mult(Sort::D, s, Sort::D, t, p); ++mu) {
          cols.emplace_back(p, mu);
          blocks_u.push_back(gauge[static_cast<std::size_t>(p)].adjoint());
        }
      const Eigen::Index width = ds * dt;
      Mat c = Mat::Zero(width, width);
      Eigen::Index col = 0;
      for (const auto& [p, mu] : cols)
        for (int nu = 0; nu < dim[static_cast<std::size_t>(p)]; ++nu, ++col)
          for (int a = 0; a < ds; ++a)
            for (int b = 0; b < dt; ++b) c(a * dt + b, col) = data.f3.at({0, s, t, 0, a, 0, b, mu, p, nu});
      if (col != width) throw Error(ErrorKind::MismatchedRank, "Clebsch-Gordan block is not square");
      const Mat cprime = linalg::kron(gauge[static_cast<std::size_t>(s)], gauge[static_cast<std::size_t>(t)]) * c * block_diag(blocks_u);
      for (int g = 0; g < n; ++g) {
        std::vector<Mat> diag;
        for (const auto& [p, mu] : cols) diag.push_back(cl_rho(p, g));
        const Mat lhs = linalg::kron(cl_rho(s, g), cl_rho(t, g));
        rep.clebsch_gordan = std::max(rep.clebsch_gordan, linalg::max_abs_diff(lhs, cprime * block_diag(diag) * cprime.adjoint()));
      }
      col = 0;
      for (const auto& [p, mu] : cols) {
        const int dp = dim[static_cast<std::size_t>(p)];
        cg[{s, t, p, mu}] = cprime.middleCols(col, dp);
        col += dp;
      }

      // Projection-operator oracle: intertwiners pi -> sigma (x) tau from group averaging.
      for (int p = 0; p < nd; ++p) {
        const int dp = dim[static_cast<std::size_t>(p)];
        const int mult = data.mult(Sort::D, s, Sort::D, t, p);
        Mat stack(width * dp, width * dp);
        for (Eigen::Index e = 0; e < width * dp; ++e) {
          Mat x = Mat::Zero(width, dp);
          x(e % width, e / width) = 1.0;
          Mat avg = Mat::Zero(width, dp);
          for (int g = 0; g < n; ++g) avg += linalg::kron(cl_rho(s, g), cl_rho(t, g)) * x * cl_rho(p, g).adjoint();
          stack.col(e) = Eigen::Map<const Vec>(avg.data(), avg.size()) / static_cast<double>(n);
        }
        const Mat range = stack.norm() < 1e-8 ? Mat(width * dp, 0) : linalg::range_basis(stack, 1e-8);
        if (range.cols() != mult) {
          rep.cg_oracle = std::max(rep.cg_oracle, 1.0);
          continue;
        }
        if (mult == 0) continue;
        Mat w(mult, mult);
        std::vector<Mat> oracle;
        for (int k = 0; k < mult; ++k)
          oracle.push_back(Eigen::Map<const Mat>(range.col(k).data(), width, dp) * std::sqrt(static_cast<double>(dp)));
        for (int mu = 0; mu < mult; ++mu)
          for (int k = 0; k < mult; ++k) w(mu, k) = (cg.at({s, t, p, mu}).adjoint() * oracle[static_cast<std::size_t>(k)]).trace() / static_cast<double>(dp);
        rep.cg_oracle = std::max(rep.cg_oracle, linalg::unitarity_residual(w));
        for (int k = 0; k < mult; ++k) {
          Mat fit = Mat::Zero(width, dp);
          for (int mu = 0; mu < mult; ++mu) fit += cg.at({s, t, p, mu}) * w(mu, k);
          rep.cg_oracle = std::max(rep.cg_oracle, linalg::max_abs_diff(fit, oracle[static_cast<std::size_t>(k)]));
        }
      }
    }

  // Racah coefficients by recoupling V_d -> V_a (x) V_b (x) V_c both ways. The
  // tensors come from F3 rather than from the intertwiners, so the overlap
  // reproduces the lowered F4, i.e. its complex conjugate.
  const FTensor& f4 = data.right->fsym;
  for (int a = 0; a < nd; ++a)
    for (int b = 0; b < nd; ++b)
      for (int c = 0; c < nd; ++c)
        for (int d = 0; d < nd; ++d) {
          const FBlock blk = fblock(data, 4, a, b, c, d);
          const int dc = dim[static_cast<std::size_t>(c)], da = dim[static_cast<std::size_t>(a)], dd = dim[static_cast<std::size_t>(d)];
          for (std::size_t r = 0; r < blk.rows.size(); ++r)
            for (std::size_t q = 0; q < blk.cols.size(); ++q) {
              const auto& row = blk.rows[r];
              const auto& cc = blk.cols[q];
              const Mat left = linalg::kron(cg.at({a, b, row.mid, row.first}), Mat::Identity(dc, dc)) * cg.at({row.mid, c, d, row.second});
              const Mat right = linalg::kron(Mat::Identity(da, da), cg.at({b, c, cc.mid, cc.first})) * cg.at({a, cc.mid, d, cc.second});
              const Complex value = (right.adjoint() * left).trace() / static_cast<double>(dd);
              const Complex stored = f4.at({a, b, c, d, row.first, row.mid, row.second, cc.first, cc.mid, cc.second});
              rep.racah = std::max(rep.racah, std::abs(std::conj(value) - stored));
            }
        }
  return rep;
}

}  // namespace morita

#include "morita/repdecomp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <tuple>

#include "morita/error.hpp"

namespace morita {

Mat Representation::act(const Vec& u) const {
  Mat out = Mat::Zero(dim(), dim());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (u(i) != Complex{}) out += u(i) * matrices[static_cast<std::size_t>(i)];
  return out;
}

int Irrep::sector_dim(int b, int f) const {
  auto it = sectors.find({b, f});
  return it == sectors.end() ? 0 : static_cast<int>(it->second.size());
}

int Irrep::index(int b, int mu, int f) const {
  auto it = sectors.find({b, f});
  if (it == sectors.end() || mu < 0 || mu >= static_cast<int>(it->second.size())) return -1;
  return it->second[static_cast<std::size_t>(mu)];
}

int TensorModule::pair_index(int i, int j) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(i, j));
  return (it != pairs.end() && *it == std::make_pair(i, j)) ? static_cast<int>(it - pairs.begin()) : -1;
}

Complex character(const Representation& v, int tube) { return v.matrices[static_cast<std::size_t>(tube)].trace(); }

Complex character(const Representation& v, const Vec& u) {
  Complex s{};
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (u(i) != Complex{}) s += u(i) * v.matrices[static_cast<std::size_t>(i)].trace();
  return s;
}

Vec character_vector(const Representation& v) {
  Vec c(static_cast<Eigen::Index>(v.matrices.size()));
  for (std::size_t i = 0; i < v.matrices.size(); ++i) c(static_cast<Eigen::Index>(i)) = v.matrices[i].trace();
  return c;
}

Representation regular_representation(const AnnularAlgebra& alg) {
  const int n = alg.dim();
  const Mat g = alg.gram();
  Eigen::LLT<Mat> llt(0.5 * (g + g.adjoint()));
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "inner product lambda(u* v) is not positive definite");
  // y = L^dagger x is orthonormal for G = L L^dagger.
  const Mat lt = llt.matrixL().adjoint();
  const Mat lti = lt.triangularView<Eigen::Upper>().solve(Mat::Identity(n, n));
  Representation reg;
  reg.matrices.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) reg.matrices.push_back(lt * alg.left_regular(i) * lti);
  for (int i = 0; i < n; ++i) {
    const auto& t = alg.basis()[static_cast<std::size_t>(i)];
    reg.grading.emplace_back(t.c, t.d);
  }
  return reg;
}

Mat averaging_operator(const AnnularAlgebra& alg, const Representation& v, const Representation& w) {
  const Eigen::Index nv = v.dim(), nw = w.dim();
  Mat t = Mat::Zero(nv * nw, nv * nw);
  for (const auto& [first, second] : alg.averaging_pairs()) t += linalg::kron(v.act(second).transpose(), w.act(first));
  return t;
}

namespace {

Mat restrict_to(const Mat& m, const Mat& q) { return q.adjoint() * m * q; }

/// Orthonormal basis of the range of an (approximate) orthogonal projector.
Mat projector_range(const Mat& p) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (p + p.adjoint()));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = es.eigenvalues().size() - 1; i >= 0; --i)
    if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
  Mat out(p.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
  return out;
}

Representation restricted(const Representation& rep, const Mat& q) {
  Representation out;
  out.matrices.reserve(rep.matrices.size());
  for (const auto& m : rep.matrices) out.matrices.push_back(restrict_to(m, q));
  out.grading.assign(static_cast<std::size_t>(q.cols()), {-1, -1});
  return out;
}

/// Singular values of the averaging operator, sorted descending.
int rank_with_gap(const Mat& t) {
  if (t.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(t);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) < 1e-12) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double r = s(i) / s(0);
    if (r > 1e-6 && r < 1e-2) throw Error(ErrorKind::RankAmbiguous, "singular value ratio " + std::to_string(r) + " inside the ambiguity band");
    if (r >= 1e-2) ++rank;
  }
  return rank;
}

}  // namespace

int hom_dim(const AnnularAlgebra& alg, const Representation& v, const Representation& w) {
  if (v.dim() == 0 || w.dim() == 0) return 0;
  return rank_with_gap(averaging_operator(alg, v, w));
}

std::vector<Mat> hom_basis(const AnnularAlgebra& alg, const Representation& v, const Representation& w) {
  std::vector<Mat> out;
  if (v.dim() == 0 || w.dim() == 0) return out;
  const Mat t = averaging_operator(alg, v, w);
  const int rank = rank_with_gap(t);
  Eigen::JacobiSVD<Mat> svd(t, Eigen::ComputeThinU);
  for (int k = 0; k < rank; ++k) {
    Vec col = svd.matrixU().col(k);
    linalg::fix_phase(col);
    out.push_back(Eigen::Map<const Mat>(col.data(), w.dim(), v.dim()));
  }
  return out;
}

Complex schur_pair(const AnnularAlgebra& alg, const Representation& v, const Representation& w) {
  const int n = alg.dim();
  const Mat& s = alg.antipode_matrix();
  Vec chi_star(n), chi_w(n);
  for (int i = 0; i < n; ++i) {
    chi_star(i) = std::conj(character(v, alg.star(Vec(s.col(i)))));
    chi_w(i) = character(w, i);
  }
  const Mat c = alg.coproduct(alg.haar());
  return (chi_star.transpose() * c * chi_w)(0);
}

TensorModule tensor_module(const AnnularAlgebra& alg, const Representation& bottom, const Representation& top) {
  TensorModule tm;
  for (int i = 0; i < bottom.dim(); ++i)
    for (int j = 0; j < top.dim(); ++j)
      if (bottom.grading[static_cast<std::size_t>(i)].second == top.grading[static_cast<std::size_t>(j)].first) {
        tm.pairs.emplace_back(i, j);
        tm.grading.emplace_back(bottom.grading[static_cast<std::size_t>(i)].first, top.grading[static_cast<std::size_t>(j)].second);
      }
  const auto m = static_cast<Eigen::Index>(tm.pairs.size());
  const int n = alg.dim();
  tm.matrices.assign(static_cast<std::size_t>(n), Mat::Zero(m, m));
  for (int t = 0; t < n; ++t) {
    Mat& out = tm.matrices[static_cast<std::size_t>(t)];
    for (const auto& term : alg.coproduct_terms(t)) {
      const Mat& top_m = top.matrices[static_cast<std::size_t>(term.left)];
      const Mat& bot_m = bottom.matrices[static_cast<std::size_t>(term.right)];
      for (Eigen::Index p = 0; p < m; ++p)
        for (Eigen::Index q = 0; q < m; ++q) {
          const auto [i1, j1] = tm.pairs[static_cast<std::size_t>(p)];
          const auto [i0, j0] = tm.pairs[static_cast<std::size_t>(q)];
          out(p, q) += term.coef * bot_m(i1, i0) * top_m(j1, j0);
        }
    }
  }
  return tm;
}

double representation_residual(const AnnularAlgebra& alg, const Representation& v) {
  const int n = alg.dim();
  double r = linalg::max_abs_diff(v.act(alg.unit()), Mat::Identity(v.dim(), v.dim()));
  for (int i = 0; i < n; ++i) {
    r = std::max(r, linalg::max_abs_diff(v.act(alg.star(alg.basis_vector(i))), v.matrices[static_cast<std::size_t>(i)].adjoint()));
    for (int j = 0; j < n; ++j) {
      Mat prod = Mat::Zero(v.dim(), v.dim());
      for (const auto& t : alg.product_terms(i, j)) prod += t.coef * v.matrices[static_cast<std::size_t>(t.index)];
      r = std::max(r, linalg::max_abs_diff(prod, v.matrices[static_cast<std::size_t>(i)] * v.matrices[static_cast<std::size_t>(j)]));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Decomposition

namespace {

struct Splitter {
  const AnnularAlgebra& alg;
  const Representation& reg;
  const DecomposeOptions& opt;
  std::mt19937_64 rng;
  std::normal_distribution<double> normal;

  Mat random_matrix(Eigen::Index k) {
    Mat r(k, k);
    for (Eigen::Index j = 0; j < k; ++j)
      for (Eigen::Index i = 0; i < k; ++i) r(i, j) = Complex(normal(rng), normal(rng));
    return r;
  }

  /// Splits the invariant subspace spanned by q's columns into irreducible pieces.
  void split(const Mat& q, std::vector<Mat>& leaves) {
    std::deque<std::pair<Mat, int>> work{{q, 0}};
    while (!work.empty()) {
      auto [sub, failures] = std::move(work.front());
      work.pop_front();
      const Representation rep = restricted(reg, sub);
      if (sub.cols() == 1 || (sub.cols() <= 64 && sub.cols() < reg.dim() && hom_dim(alg, rep, rep) == 1)) {
        leaves.push_back(sub);
        continue;
      }
      if (failures >= opt.retry_budget) throw Error(ErrorKind::DegenerateSpectrum, "random commutant element did not separate a subspace");
      // A random matrix rather than rho(r): averaging an algebra element only reaches the center.
      const Mat h0 = random_matrix(sub.cols());
      const Mat h = h0 + h0.adjoint();
      Mat x = Mat::Zero(sub.cols(), sub.cols());
      for (const auto& [first, second] : alg.averaging_pairs()) x += rep.act(first) * h * rep.act(second);
      x = 0.5 * (x + x.adjoint());
      Eigen::SelfAdjointEigenSolver<Mat> es(x);
      const auto& ev = es.eigenvalues();
      const double scale = std::max(1e-300, ev.cwiseAbs().maxCoeff());
      std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
      Eigen::Index start = 0;
      for (Eigen::Index i = 1; i <= ev.size(); ++i) {
        if (i == ev.size() || (ev(i) - ev(i - 1)) / scale > opt.cluster_tolerance) {
          clusters.emplace_back(start, i);
          start = i;
        }
      }
      if (clusters.size() == 1) {
        work.emplace_back(sub, failures + 1);
        continue;
      }
      for (const auto& [b, e] : clusters) work.emplace_back(sub * es.eigenvectors().middleCols(b, e - b), 0);
    }
  }
};

bool char_less(const Vec& p, const Vec& q) {
  auto key = [](Complex z) { return std::make_pair(std::round(z.real() * 1e6), std::round(z.imag() * 1e6)); };
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const auto kp = key(p(i)), kq = key(q(i));
    if (kp != kq) return kp < kq;
  }
  return false;
}

}  // namespace

std::vector<Irrep> decompose(const AnnularAlgebra& alg, const DecomposeOptions& opt) {
  const int n = alg.dim();
  const auto& mod = alg.module();
  const Representation reg = regular_representation(alg);
  Splitter splitter{alg, reg, opt, std::mt19937_64(opt.seed), {}};
  std::vector<Mat> leaves;
  splitter.split(Mat::Identity(n, n), leaves);

  // One representative per equivalence class.
  std::vector<Mat> reps;
  std::vector<Representation> rep_modules;
  for (const auto& q : leaves) {
    Representation r = restricted(reg, q);
    bool seen = false;
    for (const auto& other : rep_modules)
      if (std::abs(schur_pair(alg, other, r)) > 0.5) seen = true;
    if (!seen) {
      reps.push_back(q);
      rep_modules.push_back(std::move(r));
    }
  }
  int total = 0;
  for (const auto& q : reps) total += static_cast<int>(q.cols() * q.cols());
  if (total != n)
    throw Error(ErrorKind::DecompositionFailure,
                "irrep dimensions squared sum to " + std::to_string(total) + ", algebra has dimension " + std::to_string(n));

  std::vector<Irrep> irreps;
  for (const auto& q : reps) {
    Irrep irr;
    Mat basis(n, 0);
    for (int b = 0; b < mod.rank; ++b)
      for (int f = 0; f < mod.rank; ++f) {
        const Mat p = restrict_to(reg.matrices[static_cast<std::size_t>(alg.sector_projector(b, f))], q);
        const Mat u = projector_range(p);
        if (u.cols() == 0) continue;
        Mat vecs = q * u;
        for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
          Vec col = vecs.col(k);
          linalg::fix_phase(col);
          vecs.col(k) = col;
        }
        auto& idx = irr.sectors[{b, f}];
        for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
          idx.push_back(static_cast<int>(basis.cols() + k));
          irr.grading.emplace_back(b, f);
        }
        basis.conservativeResize(Eigen::NoChange, basis.cols() + vecs.cols());
        basis.rightCols(vecs.cols()) = vecs;
      }
    if (basis.cols() != q.cols()) throw Error(ErrorKind::GradingMismatch, "sector projectors do not partition an irrep");
    auto rebuild = [&] {
      irr.matrices.clear();
      for (const auto& m : reg.matrices) irr.matrices.push_back(restrict_to(m, basis));
    };
    rebuild();
    irr.trivial = std::abs(character(irr, alg.haar()) - 1.0) < 1e-6;
    if (irr.trivial) {
      // w_e is fixed relative to w_b through rho(tube(b,b -> e,e; 1,x,1)) w_b, starting from label 0.
      std::vector<bool> fixed(static_cast<std::size_t>(mod.rank), false);
      std::deque<int> queue{0};
      fixed[0] = true;
      while (!queue.empty()) {
        const int b = queue.front();
        queue.pop_front();
        for (int x = 0; x < mod.base.rank; ++x)
          for (int e = 0; e < mod.rank; ++e) {
            if (fixed[static_cast<std::size_t>(e)] || mod.action(x, b, e) == 0) continue;
            const int t = alg.index({b, b, e, e, x, 0, 0});
            const int ib = irr.index(b, 0, b), ie = irr.index(e, 0, e);
            if (ib < 0 || ie < 0) throw Error(ErrorKind::GradingMismatch, "trivial irrep misses a diagonal sector");
            const Complex c = irr.matrices[static_cast<std::size_t>(t)](ie, ib);
            if (std::abs(c) < 1e-8) continue;
            basis.col(ie) *= c / std::abs(c);
            rebuild();
            fixed[static_cast<std::size_t>(e)] = true;
            queue.push_back(e);
          }
      }
    }
    irr.character = character_vector(irr);
    irreps.push_back(std::move(irr));
  }

  const auto trivial_count = std::count_if(irreps.begin(), irreps.end(), [](const Irrep& r) { return r.trivial; });
  if (trivial_count != 1) throw Error(ErrorKind::DecompositionFailure, "expected exactly one irrep with chi(Lambda) = 1");
  auto signature = [&](const Irrep& r) {
    std::vector<int> s;
    for (int b = 0; b < mod.rank; ++b)
      for (int f = 0; f < mod.rank; ++f) s.push_back(r.sector_dim(b, f));
    return s;
  };
  std::stable_sort(irreps.begin(), irreps.end(), [&](const Irrep& p, const Irrep& q) {
    if (p.trivial != q.trivial) return p.trivial;
    if (p.dim() != q.dim()) return p.dim() < q.dim();
    const auto sp = signature(p), sq = signature(q);
    if (sp != sq) return sp < sq;
    return char_less(p.character, q.character);
  });
  for (std::size_t i = 0; i < irreps.size(); ++i) irreps[i].id = static_cast<int>(i);

  // chi_abar = chi_a^*, chi^*(u) = conj(chi(S(u)^*)).
  const Mat& s = alg.antipode_matrix();
  for (auto& irr : irreps) {
    Vec dual_char(n);
    for (int i = 0; i < n; ++i) dual_char(i) = std::conj(character(irr, alg.star(Vec(s.col(i)))));
    for (const auto& other : irreps)
      if ((other.character - dual_char).cwiseAbs().maxCoeff() < 1e-6) irr.dual = other.id;
    if (irr.dual < 0) throw Error(ErrorKind::DecompositionFailure, "no irrep carries the dual character");
  }
  return irreps;
}

std::vector<Intertwiner> intertwiners(const AnnularAlgebra& alg, const Irrep& a, const Irrep& b, const Irrep& c) {
  const TensorModule ab = tensor_module(alg, a, b);
  std::vector<Mat> homs = hom_basis(alg, c, ab);
  std::vector<Intertwiner> out;
  const double scale = std::sqrt(static_cast<double>(c.dim()));
  if ((a.trivial || b.trivial) && homs.size() == 1) {
    // Unit constraint maps: v -> w_s (x) v or v (x) w_t, with no extra phase.
    Mat canon = Mat::Zero(ab.dim(), c.dim());
    for (int k = 0; k < c.dim(); ++k) {
      const auto [s, t] = c.grading[static_cast<std::size_t>(k)];
      const int p = a.trivial ? ab.pair_index(a.index(s, 0, s), k) : ab.pair_index(k, b.index(t, 0, t));
      if (p >= 0) canon(p, k) = 1.0;
    }
    const Complex z = (homs[0].adjoint() * canon).trace();
    if (std::abs(z) > 1e-8) homs[0] *= z / std::abs(z);
  }
  for (std::size_t k = 0; k < homs.size(); ++k) out.push_back({a.id, b.id, c.id, static_cast<int>(k), scale * homs[k]});
  return out;
}

}  // namespace morita

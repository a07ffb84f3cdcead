#include "morita/invertibility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "morita/error.hpp"

namespace morita {

std::string_view to_string(FailureMode mode) {
  switch (mode) {
    case FailureMode::MissingIrreps: return "MissingIrreps";
    case FailureMode::DuplicateLabels: return "DuplicateLabels";
    case FailureMode::ReducibleLabels: return "ReducibleLabels";
  }
  return "Unknown";
}

bool Verdict::has(FailureMode mode) const {
  return std::any_of(failures.begin(), failures.end(), [mode](const Diagnosis& d) { return d.mode == mode; });
}

namespace {

void require_f2(const BimoduleData& data) {
  if (!data.right || data.f2.empty()) throw Error(ErrorKind::MissingBlock, "F2 data required");
}

void observe(ResidualReport& rep, double r, const std::string& where) {
  ++rep.instances;
  if (r > rep.max_residual) {
    rep.max_residual = r;
    rep.worst = where;
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

Mat character_gram(const BimoduleData& data) {
  require_f2(data);
  const int nc = data.rank(Sort::C), nm = data.rank(Sort::M), nd = data.rank(Sort::D);
  const auto& dc = data.left().fp_dims;
  const auto& m = data.module.dims;
  const FTensor& f2 = data.f2;
  const FTensor fi2 = lowered(data, 2);
  Mat g = Mat::Zero(nd, nd);
  for (int c = 0; c < nd; ++c)
    for (int c2 = 0; c2 < nd; ++c2) {
      Complex s{};
      for (int a = 0; a < nc; ++a)
        for (int b = 0; b < nm; ++b)
          for (int d = 0; d < nm; ++d) {
            const double w = dc[static_cast<std::size_t>(a)] / (m[static_cast<std::size_t>(b)] * m[static_cast<std::size_t>(b)]);
            for (int al = 0; al < data.mult(Sort::C, a, Sort::M, b, b); ++al)
              for (int be = 0; be < data.mult(Sort::C, a, Sort::M, d, d); ++be)
                for (int mu = 0; mu < data.mult(Sort::M, b, Sort::D, c, d); ++mu)
                  for (int nu = 0; nu < data.mult(Sort::M, b, Sort::D, c2, d); ++nu)
                    s += w * f2.at({a, b, c, d, al, b, mu, mu, d, be}) * fi2.at({a, b, c2, d, al, b, nu, nu, d, be});
          }
      g(c, c2) = s / static_cast<double>(nm);
    }
  return g;
}

Verdict check_invertible(const BimoduleData& data) {
  Verdict v;
  v.gram = character_gram(data);
  v.fpdim_c = data.left().fpdim();
  v.fpdim_d = data.right->fpdim();
  v.definitive = !data.f3.empty();
  const double tol = data.tolerance;
  const int nd = static_cast<int>(v.gram.rows());
  const bool fp_equal = std::abs(v.fpdim_c - v.fpdim_d) < 1e-8 * std::max(v.fpdim_c, v.fpdim_d);
  const bool gram_identity = linalg::max_abs_diff(v.gram, Mat::Identity(nd, nd)) < tol;
  v.invertible = fp_equal && gram_identity;

  const auto& labels = data.right->labels;
  auto name = [&](int c) { return c < static_cast<int>(labels.size()) ? labels[static_cast<std::size_t>(c)] : std::to_string(c); };
  for (int c = 0; c < nd; ++c)
    for (int c2 = c + 1; c2 < nd; ++c2) {
      const Complex off = v.gram(c, c2);
      const double dcc = v.gram(c, c).real(), d22 = v.gram(c2, c2).real();
      if (std::abs(off) > 0.5 && std::abs(off - dcc) < 0.5 && std::abs(off - d22) < 0.5)
        v.failures.push_back({FailureMode::DuplicateLabels,
                              "labels " + name(c) + " and " + name(c2) + " carry the same irrep (gram " + fmt(off.real()) + ")"});
    }
  for (int c = 0; c < nd; ++c)
    if (v.gram(c, c).real() > 1.5)
      v.failures.push_back({FailureMode::ReducibleLabels,
                            "label " + name(c) + " is reducible (gram " + fmt(v.gram(c, c).real()) + ")"});
  if (gram_identity && !fp_equal)
    v.failures.push_back({FailureMode::MissingIrreps, "FPdim " + fmt(v.fpdim_c) + " \u2260 " + fmt(v.fpdim_d)});
  return v;
}

namespace {

/// Shared enumeration of the orthogonality relation; `scale_c` multiplies the
/// left-hand sum and `scale_d` the delta term.
ResidualReport orthogonality(const BimoduleData& data, double scale_c, double scale_d) {
  require_f2(data);
  ResidualReport rep;
  const int nc = data.rank(Sort::C), nm = data.rank(Sort::M), nd = data.rank(Sort::D);
  const auto& dc = data.left().fp_dims;
  const auto& dd = data.right->fp_dims;
  const auto& m = data.module.dims;
  const FTensor& f2 = data.f2;
  const FTensor fi2 = lowered(data, 2);
  for (int b = 0; b < nm; ++b)
    for (int e = 0; e < nm; ++e)
      for (int f = 0; f < nm; ++f)
        for (int d = 0; d < nm; ++d)
          for (int c = 0; c < nd; ++c)
            for (int c2 = 0; c2 < nd; ++c2)
              for (int be = 0; be < data.mult(Sort::M, e, Sort::D, c, d); ++be)
                for (int be2 = 0; be2 < data.mult(Sort::M, e, Sort::D, c2, d); ++be2)
                  for (int mu = 0; mu < data.mult(Sort::M, b, Sort::D, c, f); ++mu)
                    for (int mu2 = 0; mu2 < data.mult(Sort::M, b, Sort::D, c2, f); ++mu2) {
                      Complex lhs{};
                      for (int a = 0; a < nc; ++a)
                        for (int al = 0; al < data.mult(Sort::C, a, Sort::M, b, e); ++al)
                          for (int nu = 0; nu < data.mult(Sort::C, a, Sort::M, f, d); ++nu)
                            lhs += dc[static_cast<std::size_t>(a)] * f2.at({a, b, c, d, al, e, be, mu, f, nu}) *
                                   fi2.at({a, b, c2, d, al, e, be2, mu2, f, nu});
                      const double rhs = (c == c2 && be == be2 && mu == mu2)
                                             ? m[static_cast<std::size_t>(e)] * m[static_cast<std::size_t>(f)] / dd[static_cast<std::size_t>(c)]
                                             : 0.0;
                      std::ostringstream os;
                      os << "b=" << b << " e=" << e << " f=" << f << " d=" << d << " c=" << c << " c'=" << c2;
                      observe(rep, std::abs(scale_c * lhs - scale_d * rhs), os.str());
                    }
  rep.passed = rep.max_residual < data.tolerance;
  return rep;
}

}  // namespace

ResidualReport check_matrix_orthogonality(const BimoduleData& data) { return orthogonality(data, 1.0, 1.0); }

MpoReport check_mpo_injectivity(const BimoduleData& data) {
  require_f2(data);
  if (data.f3.empty()) throw Error(ErrorKind::MissingBlock, "F3 data required");
  MpoReport out;
  const int nc = data.rank(Sort::C), nm = data.rank(Sort::M), nd = data.rank(Sort::D);
  const auto& dc = data.left().fp_dims;
  const auto& dd = data.right->fp_dims;
  const auto& m = data.module.dims;
  const double fpc = data.left().fpdim(), fpd = data.right->fpdim();
  const FTensor& f2 = data.f2;
  const FTensor fi2 = lowered(data, 2);
  const FTensor& f3 = data.f3;
  const FTensor fi3 = lowered(data, 3);
  auto mult = [&](Sort s, int x, Sort t, int y, int z) { return data.mult(s, x, t, y, z); };
  constexpr Sort M = Sort::M, D = Sort::D, C = Sort::C;

  ResidualReport& rep = out.identity;
  for (int b = 0; b < nm; ++b)
    for (int e = 0; e < nm; ++e)
      for (int f = 0; f < nm; ++f)
        for (int d = 0; d < nm; ++d)
          for (int j = 0; j < nm; ++j)
            for (int k = 0; k < nm; ++k)
              for (int g = 0; g < nd; ++g)
                for (int h = 0; h < nd; ++h)
                  for (int c2 = 0; c2 < nd; ++c2) {
                    const double pre = m[static_cast<std::size_t>(e)] * m[static_cast<std::size_t>(f)] /
                                       (dd[static_cast<std::size_t>(c2)] * fpd);
                    for (int g1 = 0; g1 < mult(M, b, D, g, j); ++g1)
                      for (int e1 = 0; e1 < mult(M, j, D, h, f); ++e1)
                        for (int mu2 = 0; mu2 < mult(M, b, D, c2, f); ++mu2)
                          for (int g0 = 0; g0 < mult(M, e, D, g, k); ++g0)
                            for (int e0 = 0; e0 < mult(M, k, D, h, d); ++e0)
                              for (int be2 = 0; be2 < mult(M, e, D, c2, d); ++be2) {
                                Complex lhs{};
                                for (int ze = 0; ze < mult(D, g, D, h, c2); ++ze)
                                  lhs += fi3.at({b, g, h, f, g1, j, e1, ze, c2, mu2}) * f3.at({e, g, h, d, g0, k, e0, ze, c2, be2});
                                lhs *= pre;
                                Complex rhs{};
                                for (int a = 0; a < nc; ++a)
                                  for (int al = 0; al < mult(C, a, M, b, e); ++al)
                                    for (int nu = 0; nu < mult(C, a, M, f, d); ++nu)
                                      for (int et = 0; et < mult(C, a, M, j, k); ++et)
                                        rhs += dc[static_cast<std::size_t>(a)] / fpc *
                                               fi2.at({a, b, c2, d, al, e, be2, mu2, f, nu}) *
                                               f2.at({a, b, g, k, al, e, g0, g1, j, et}) *
                                               f2.at({a, j, h, d, et, k, e0, e1, f, nu});
                                std::ostringstream os;
                                os << "b=" << b << " e=" << e << " f=" << f << " d=" << d << " j=" << j << " k=" << k
                                   << " g=" << g << " h=" << h << " c'=" << c2;
                                observe(rep, std::abs(lhs - rhs), os.str());
                              }
                  }
  rep.passed = rep.max_residual < data.tolerance;
  out.reduced = orthogonality(data, 1.0 / fpc, 1.0 / fpd);
  out.orthogonality = check_matrix_orthogonality(data);
  out.agreement = out.identity.passed == out.orthogonality.passed;
  return out;
}

}  // namespace morita

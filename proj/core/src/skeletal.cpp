#include "morita/skeletal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "morita/error.hpp"

namespace morita {

// ---------------------------------------------------------------------------
// Multiplicities / FTensor

Multiplicities::Multiplicities(int n0, int n1, int n2)
    : extent_{n0, n1, n2}, data_(static_cast<std::size_t>(n0) * n1 * n2, 0) {
  if (n0 < 0 || n1 < 0 || n2 < 0) throw Error(ErrorKind::ShapeMismatch, "negative multiplicity extent");
}

int Multiplicities::operator()(int i, int j, int k) const {
  if (i < 0 || j < 0 || k < 0 || i >= extent_[0] || j >= extent_[1] || k >= extent_[2]) return 0;
  return data_[(static_cast<std::size_t>(i) * extent_[1] + j) * extent_[2] + k];
}

void Multiplicities::set(int i, int j, int k, int value) {
  if (i < 0 || j < 0 || k < 0 || i >= extent_[0] || j >= extent_[1] || k >= extent_[2])
    throw Error(ErrorKind::ShapeMismatch, "multiplicity index out of range");
  if (value < 0) throw Error(ErrorKind::InvalidInput, "negative multiplicity");
  data_[(static_cast<std::size_t>(i) * extent_[1] + j) * extent_[2] + k] = value;
}

Complex FTensor::at(const FKey& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? Complex{} : it->second;
}

void FTensor::set(const FKey& key, Complex value) { entries_[key] = value; }

double FusionCategory::fpdim() const {
  double s = 0.0;
  for (double d : fp_dims) s += d * d;
  return s;
}

// ---------------------------------------------------------------------------
// Sorts

std::array<Sort, 3> family_sorts(int k) {
  switch (k) {
    case 0: return {Sort::C, Sort::C, Sort::C};
    case 1: return {Sort::C, Sort::C, Sort::M};
    case 2: return {Sort::C, Sort::M, Sort::D};
    case 3: return {Sort::M, Sort::D, Sort::D};
    case 4: return {Sort::D, Sort::D, Sort::D};
    default: throw Error(ErrorKind::InvalidInput, "no F family " + std::to_string(k));
  }
}

Sort product_sort(Sort x, Sort y) {
  if (x == Sort::C && y == Sort::C) return Sort::C;
  if (x == Sort::C && y == Sort::M) return Sort::M;
  if (x == Sort::M && y == Sort::D) return Sort::M;
  if (x == Sort::D && y == Sort::D) return Sort::D;
  throw Error(ErrorKind::InvalidInput, "incompatible sorts in product");
}

int family_of(Sort x, Sort y, Sort z) {
  for (int k = 0; k < 5; ++k) {
    if (family_sorts(k) == std::array<Sort, 3>{x, y, z}) return k;
  }
  return -1;
}

int BimoduleData::rank(Sort s) const {
  switch (s) {
    case Sort::C: return module.base.rank;
    case Sort::M: return module.rank;
    case Sort::D: return right ? right->rank : 0;
  }
  return 0;
}

int BimoduleData::mult(Sort sx, int x, Sort sy, int y, int z) const {
  if (sx == Sort::C && sy == Sort::C) return module.base.fusion(x, y, z);
  if (sx == Sort::C && sy == Sort::M) return module.action(x, y, z);
  if (sx == Sort::M && sy == Sort::D) return right ? right_action(x, y, z) : 0;
  if (sx == Sort::D && sy == Sort::D) return right ? right->fusion(x, y, z) : 0;
  return 0;
}

const FTensor& BimoduleData::family(int k) const {
  switch (k) {
    case 0: return module.base.fsym;
    case 1: return module.f1;
    case 2: return f2;
    case 3: return f3;
    case 4:
      if (!right) throw Error(ErrorKind::MissingBlock, "F4 requested without a right category");
      return right->fsym;
    default: throw Error(ErrorKind::InvalidInput, "no F family " + std::to_string(k));
  }
}

FTensor& BimoduleData::family(int k) {
  return const_cast<FTensor&>(static_cast<const BimoduleData&>(*this).family(k));
}

bool BimoduleData::has_family(int k) const {
  if (k == 0 || k == 1) return true;
  if (!right) return false;
  return !family(k).empty();
}

// ---------------------------------------------------------------------------
// Dimensions

namespace {

RealVec perron_vector(const Eigen::MatrixXd& m, double& eigenvalue, double& gap) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "eigensolver did not converge");
  const auto& values = solver.eigenvalues();
  Eigen::Index top = 0;
  for (Eigen::Index i = 1; i < values.size(); ++i) {
    if (values(i).real() > values(top).real()) top = i;
  }
  eigenvalue = values(top).real();
  gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (i != top) gap = std::min(gap, eigenvalue - std::abs(values(i)));
  }
  RealVec v = solver.eigenvectors().col(top).real();
  if (v.sum() < 0) v = -v;
  return v;
}

}  // namespace

std::vector<double> compute_fp_dims(const Multiplicities& fusion) {
  const int n = fusion.extent(0);
  if (n <= 0 || fusion.extent(1) != n || fusion.extent(2) != n)
    throw Error(ErrorKind::ShapeMismatch, "fusion tensor must be rank x rank x rank");
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      const int expect = a == c ? 1 : 0;
      if (fusion(0, a, c) != expect || fusion(a, 0, c) != expect)
        throw Error(ErrorKind::NonUnitalFusion, "label 0 does not act as the unit on label " + std::to_string(a));
    }
  }
  // d is the common positive eigenvector of right multiplication by every label.
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) r(b, c) += fusion(b, a, c);
  double top = 0.0, gap = 0.0;
  RealVec v = perron_vector(r, top, gap);
  if (n > 1 && gap < kDimensionTolerance) throw Error(ErrorKind::NumericalFailure, "Perron eigenvalue not separated");
  if (v(0) <= 0.0) throw Error(ErrorKind::NumericalFailure, "Perron vector has no positive unit component");
  v /= v(0);
  std::vector<double> d(v.data(), v.data() + n);
  for (int a = 0; a < n; ++a) {
    if (!(d[static_cast<std::size_t>(a)] >= 1.0 - 1e-10))
      throw Error(ErrorKind::NumericalFailure, "FP dimension below 1 for label " + std::to_string(a));
    for (int b = 0; b < n; ++b) {
      double rhs = 0.0;
      for (int c = 0; c < n; ++c) rhs += fusion(a, b, c) * d[static_cast<std::size_t>(c)];
      if (std::abs(d[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(b)] - rhs) > 1e-10 * std::max(1.0, rhs))
        throw Error(ErrorKind::NumericalFailure, "FP dimensions do not satisfy the fusion rules");
    }
  }
  return d;
}

std::vector<double> compute_module_dims(const ModuleData& mod) {
  const int nc = mod.base.rank;
  const int nm = mod.rank;
  if (mod.action.extent(0) != nc || mod.action.extent(1) != nm || mod.action.extent(2) != nm)
    throw Error(ErrorKind::ShapeMismatch, "module action must be rank(C) x rank(M) x rank(M)");
  std::vector<double> dc = mod.base.fp_dims.empty() ? compute_fp_dims(mod.base.fusion) : mod.base.fp_dims;
  for (int a = 0; a < nm; ++a)
    for (int c = 0; c < nm; ++c)
      if (mod.action(0, a, c) != (a == c ? 1 : 0))
        throw Error(ErrorKind::InconsistentAction, "unit of C does not act trivially on module label " + std::to_string(a));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nm, nm);
  double total = 0.0;
  for (int x = 0; x < nc; ++x) {
    total += dc[static_cast<std::size_t>(x)];
    for (int a = 0; a < nm; ++a)
      for (int c = 0; c < nm; ++c) m(a, c) += mod.action(x, a, c);
  }
  double top = 0.0, gap = 0.0;
  RealVec v = perron_vector(m, top, gap);
  if (std::abs(top - total) > 1e-8 * total)
    throw Error(ErrorKind::InconsistentAction, "action has no positive dimension solution");
  double fp_c = 0.0;
  for (double d : dc) fp_c += d * d;
  if ((v.array() <= 0.0).any()) throw Error(ErrorKind::InconsistentAction, "module dimension vector is not positive");
  v *= std::sqrt(fp_c / v.squaredNorm());
  std::vector<double> out(v.data(), v.data() + nm);
  for (int x = 0; x < nc; ++x) {
    for (int a = 0; a < nm; ++a) {
      double rhs = 0.0;
      for (int c = 0; c < nm; ++c) rhs += mod.action(x, a, c) * out[static_cast<std::size_t>(c)];
      if (std::abs(dc[static_cast<std::size_t>(x)] * out[static_cast<std::size_t>(a)] - rhs) > 1e-8 * std::max(1.0, rhs))
        throw Error(ErrorKind::InconsistentAction, "module dimensions violate the action");
    }
  }
  return out;
}

std::vector<int> duals_from_fusion(const Multiplicities& fusion) {
  const int n = fusion.extent(0);
  std::vector<int> dual(static_cast<std::size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (fusion(a, b, 0) == 1) {
        if (dual[static_cast<std::size_t>(a)] != -1) throw Error(ErrorKind::NonUnitalFusion, "label has two duals");
        dual[static_cast<std::size_t>(a)] = b;
      } else if (fusion(a, b, 0) != 0) {
        throw Error(ErrorKind::NonUnitalFusion, "unit appears with multiplicity > 1");
      }
    }
    if (dual[static_cast<std::size_t>(a)] == -1) throw Error(ErrorKind::NonUnitalFusion, "label without a dual");
  }
  return dual;
}

void finalize(FusionCategory& cat) {
  if (cat.rank <= 0) throw Error(ErrorKind::InvalidInput, "category rank must be positive");
  cat.fp_dims = compute_fp_dims(cat.fusion);
  auto derived = duals_from_fusion(cat.fusion);
  if (cat.dual.empty()) cat.dual = derived;
  if (cat.dual != derived) throw Error(ErrorKind::NonUnitalFusion, "dual table disagrees with the fusion rules");
  if (cat.labels.empty())
    for (int a = 0; a < cat.rank; ++a) cat.labels.push_back(std::to_string(a));
}

void finalize(ModuleData& mod) {
  finalize(mod.base);
  if (mod.rank <= 0) throw Error(ErrorKind::InvalidInput, "module rank must be positive");
  mod.dims = compute_module_dims(mod);
  if (mod.labels.empty())
    for (int a = 0; a < mod.rank; ++a) mod.labels.push_back(std::to_string(a));
}

void finalize(BimoduleData& data) {
  finalize(data.module);
  if (data.right) {
    finalize(*data.right);
    const int nm = data.module.rank, nd = data.right->rank;
    if (data.right_action.extent(0) != nm || data.right_action.extent(1) != nd || data.right_action.extent(2) != nm)
      throw Error(ErrorKind::ShapeMismatch, "right action must be rank(M) x rank(D) x rank(M)");
    for (int a = 0; a < nm; ++a)
      for (int c = 0; c < nm; ++c)
        if (data.right_action(a, 0, c) != (a == c ? 1 : 0))
          throw Error(ErrorKind::InconsistentAction, "unit of D does not act trivially");
  }
}

// ---------------------------------------------------------------------------
// Blocks

namespace {

struct Frame {
  Sort sx, sy, sz, se, sf;
};

Frame frame_of(int family) {
  auto s = family_sorts(family);
  Frame fr{s[0], s[1], s[2], Sort::C, Sort::C};
  fr.se = product_sort(s[0], s[1]);
  fr.sf = product_sort(s[1], s[2]);
  return fr;
}

std::string key_string(int family, const FKey& k) {
  std::ostringstream os;
  os << "F" << family << "[" << k.a << "," << k.b << "," << k.c << "," << k.d << "|" << k.alpha + 1 << "," << k.e << ","
     << k.beta + 1 << "|" << k.mu + 1 << "," << k.f << "," << k.nu + 1 << "]";
  return os.str();
}

}  // namespace

FBlock block_of(const BimoduleData& data, int family, const FTensor& t, int a, int b, int c, int d) {
  const Frame fr = frame_of(family);
  FBlock blk;
  blk.labels = {a, b, c, d};
  for (int e = 0; e < data.rank(fr.se); ++e) {
    const int na = data.mult(fr.sx, a, fr.sy, b, e);
    const int nb = data.mult(fr.se, e, fr.sz, c, d);
    for (int al = 0; al < na; ++al)
      for (int be = 0; be < nb; ++be) blk.rows.push_back({al, e, be});
  }
  for (int f = 0; f < data.rank(fr.sf); ++f) {
    const int nm = data.mult(fr.sy, b, fr.sz, c, f);
    const int nn = data.mult(fr.sx, a, fr.sf, f, d);
    for (int mu = 0; mu < nm; ++mu)
      for (int nu = 0; nu < nn; ++nu) blk.cols.push_back({mu, f, nu});
  }
  blk.matrix = Mat::Zero(static_cast<Eigen::Index>(blk.rows.size()), static_cast<Eigen::Index>(blk.cols.size()));
  for (std::size_t i = 0; i < blk.rows.size(); ++i) {
    for (std::size_t j = 0; j < blk.cols.size(); ++j) {
      const auto& r = blk.rows[i];
      const auto& q = blk.cols[j];
      blk.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          t.at(FKey{a, b, c, d, r.first, r.mid, r.second, q.first, q.mid, q.second});
    }
  }
  return blk;
}

FBlock fblock(const BimoduleData& data, int family, int a, int b, int c, int d) {
  return block_of(data, family, data.family(family), a, b, c, d);
}

std::vector<std::array<int, 4>> block_labels(const BimoduleData& data, int family) {
  const Frame fr = frame_of(family);
  std::vector<std::array<int, 4>> out;
  const Sort sd = product_sort(fr.se, fr.sz);
  for (int a = 0; a < data.rank(fr.sx); ++a)
    for (int b = 0; b < data.rank(fr.sy); ++b)
      for (int c = 0; c < data.rank(fr.sz); ++c)
        for (int d = 0; d < data.rank(sd); ++d) {
          bool any = false;
          for (int e = 0; e < data.rank(fr.se) && !any; ++e)
            any = data.mult(fr.sx, a, fr.sy, b, e) > 0 && data.mult(fr.se, e, fr.sz, c, d) > 0;
          if (any) out.push_back({a, b, c, d});
        }
  return out;
}

FTensor lowered(const BimoduleData& data, int family) {
  FTensor out;
  for (const auto& l : block_labels(data, family)) {
    FBlock blk = fblock(data, family, l[0], l[1], l[2], l[3]);
    if (blk.rows.size() != blk.cols.size())
      throw Error(ErrorKind::ShapeMismatch, "non-square F block in family " + std::to_string(family));
    Eigen::FullPivLU<Mat> lu(blk.matrix);
    if (!lu.isInvertible()) throw Error(ErrorKind::NumericalFailure, "singular F block in family " + std::to_string(family));
    Mat inv_t = lu.inverse().transpose();
    for (std::size_t i = 0; i < blk.rows.size(); ++i)
      for (std::size_t j = 0; j < blk.cols.size(); ++j) {
        const auto& r = blk.rows[i];
        const auto& q = blk.cols[j];
        const Complex v = inv_t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (std::abs(v) > kPruneThreshold)
          out.set(FKey{l[0], l[1], l[2], l[3], r.first, r.mid, r.second, q.first, q.mid, q.second}, v);
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports

bool CoherenceReport::passed() const {
  return std::all_of(families.begin(), families.end(),
                     [this](const FamilyResidual& f) { return f.max_residual < tolerance; });
}

double CoherenceReport::max_residual() const {
  double m = 0.0;
  for (const auto& f : families) m = std::max(m, f.max_residual);
  return m;
}

void check_structure(const BimoduleData& data) {
  for (int k = 0; k < 5; ++k) {
    if (!data.has_family(k)) continue;
    const Frame fr = frame_of(k);
    const Sort sd = product_sort(fr.se, fr.sz);
    for (const auto& [key, value] : data.family(k)) {
      (void)value;
      const bool in_range = key.a >= 0 && key.a < data.rank(fr.sx) && key.b >= 0 && key.b < data.rank(fr.sy) &&
                            key.c >= 0 && key.c < data.rank(fr.sz) && key.d >= 0 && key.d < data.rank(sd) &&
                            key.e >= 0 && key.e < data.rank(fr.se) && key.f >= 0 && key.f < data.rank(fr.sf);
      const bool allowed = in_range && key.alpha >= 0 && key.alpha < data.mult(fr.sx, key.a, fr.sy, key.b, key.e) &&
                           key.beta >= 0 && key.beta < data.mult(fr.se, key.e, fr.sz, key.c, key.d) && key.mu >= 0 &&
                           key.mu < data.mult(fr.sy, key.b, fr.sz, key.c, key.f) && key.nu >= 0 &&
                           key.nu < data.mult(fr.sx, key.a, fr.sf, key.f, key.d);
      if (!allowed) throw Error(ErrorKind::InvalidInput, "entry outside the fusion rules: " + key_string(k, key));
    }
    for (const auto& l : block_labels(data, k)) {
      FBlock blk = fblock(data, k, l[0], l[1], l[2], l[3]);
      if (blk.matrix.size() > 0 && blk.matrix.cwiseAbs().maxCoeff() == 0.0) {
        throw Error(ErrorKind::MissingBlock, "no entries for allowed block " +
                                                 key_string(k, FKey{l[0], l[1], l[2], l[3], 0, 0, 0, 0, 0, 0}));
      }
    }
  }
}

CoherenceReport verify_unitarity(const BimoduleData& data) {
  CoherenceReport rep;
  rep.tolerance = data.tolerance;
  for (int k = 0; k < 5; ++k) {
    if (!data.has_family(k)) continue;
    FamilyResidual fam{"F" + std::to_string(k), 0.0, 0, ""};
    for (const auto& l : block_labels(data, k)) {
      FBlock blk = fblock(data, k, l[0], l[1], l[2], l[3]);
      const double r = linalg::unitarity_residual(blk.matrix);
      ++fam.instances;
      if (r > fam.max_residual || fam.worst.empty()) {
        if (r >= fam.max_residual) {
          fam.max_residual = r;
          fam.worst = key_string(k, FKey{l[0], l[1], l[2], l[3], 0, 0, 0, 0, 0, 0}).substr(0, std::string::npos);
        }
      }
    }
    rep.families.push_back(fam);
  }
  return rep;
}

CoherenceReport verify_unit_normalization(const BimoduleData& data) {
  CoherenceReport rep;
  rep.tolerance = data.tolerance;
  for (int k = 0; k < 5; ++k) {
    if (!data.has_family(k)) continue;
    const auto s = family_sorts(k);
    FamilyResidual fam{"unit-F" + std::to_string(k), 0.0, 0, ""};
    for (const auto& l : block_labels(data, k)) {
      bool unit_strand = false;
      for (int i = 0; i < 3; ++i)
        unit_strand = unit_strand || (s[static_cast<std::size_t>(i)] != Sort::M && l[static_cast<std::size_t>(i)] == 0);
      if (!unit_strand) continue;
      FBlock blk = fblock(data, k, l[0], l[1], l[2], l[3]);
      double r = blk.rows.size() == blk.cols.size()
                     ? linalg::max_abs_diff(blk.matrix, Mat::Identity(blk.matrix.rows(), blk.matrix.cols()))
                     : std::numeric_limits<double>::infinity();
      ++fam.instances;
      if (r > fam.max_residual) {
        fam.max_residual = r;
        fam.worst = key_string(k, FKey{l[0], l[1], l[2], l[3], 0, 0, 0, 0, 0, 0});
      }
    }
    rep.families.push_back(fam);
  }
  return rep;
}

namespace {

struct PentagonPattern {
  const char* name;
  std::array<Sort, 4> sorts;
  std::array<int, 2> needs;  // families that must be present (may repeat)
};

constexpr PentagonPattern kPatterns[] = {
    {"CCCC", {Sort::C, Sort::C, Sort::C, Sort::C}, {0, 0}},
    {"CCCM", {Sort::C, Sort::C, Sort::C, Sort::M}, {0, 1}},
    {"CCMD", {Sort::C, Sort::C, Sort::M, Sort::D}, {1, 2}},
    {"CMDD", {Sort::C, Sort::M, Sort::D, Sort::D}, {2, 3}},
    {"MDDD", {Sort::M, Sort::D, Sort::D, Sort::D}, {3, 4}},
    {"DDDD", {Sort::D, Sort::D, Sort::D, Sort::D}, {4, 4}},
};

}  // namespace

CoherenceReport verify_pentagons(const BimoduleData& data) {
  check_structure(data);
  CoherenceReport rep;
  rep.tolerance = data.tolerance;
  for (const auto& pat : kPatterns) {
    if (!data.has_family(pat.needs[0]) || !data.has_family(pat.needs[1])) continue;
    const auto [s1, s2, s3, s4] = pat.sorts;
    const Sort se = product_sort(s1, s2), sf = product_sort(se, s3), so = product_sort(sf, s4);
    const Sort sg = product_sort(s3, s4), sh = product_sort(s2, sg), sk = product_sort(s2, s3);
    const FTensor& f_ecd = data.family(family_of(se, s3, s4));
    const FTensor& f_abg = data.family(family_of(s1, s2, sg));
    const FTensor& f_abc = data.family(family_of(s1, s2, s3));
    const FTensor& f_akd = data.family(family_of(s1, sk, s4));
    const FTensor& f_bcd = data.family(family_of(s2, s3, s4));
    FamilyResidual fam{pat.name, 0.0, 0, ""};
    for (int a = 0; a < data.rank(s1); ++a)
      for (int b = 0; b < data.rank(s2); ++b)
        for (int c = 0; c < data.rank(s3); ++c)
          for (int d = 0; d < data.rank(s4); ++d)
            for (int e = 0; e < data.rank(se); ++e) {
              const int n_al = data.mult(s1, a, s2, b, e);
              if (n_al == 0) continue;
              for (int f = 0; f < data.rank(sf); ++f) {
                const int n_be = data.mult(se, e, s3, c, f);
                if (n_be == 0) continue;
                for (int o = 0; o < data.rank(so); ++o) {
                  const int n_ga = data.mult(sf, f, s4, d, o);
                  if (n_ga == 0) continue;
                  for (int g = 0; g < data.rank(sg); ++g) {
                    const int n_mu = data.mult(s3, c, s4, d, g);
                    if (n_mu == 0) continue;
                    const int n_nu = data.mult(se, e, sg, g, o);
                    for (int h = 0; h < data.rank(sh); ++h) {
                      const int n_ka = data.mult(s2, b, sg, g, h);
                      const int n_la = data.mult(s1, a, sh, h, o);
                      if (n_ka == 0 || n_la == 0) continue;
                      for (int al = 0; al < n_al; ++al)
                        for (int be = 0; be < n_be; ++be)
                          for (int ga = 0; ga < n_ga; ++ga)
                            for (int mu = 0; mu < n_mu; ++mu)
                              for (int ka = 0; ka < n_ka; ++ka)
                                for (int la = 0; la < n_la; ++la) {
                                  Complex lhs{};
                                  for (int nu = 0; nu < n_nu; ++nu)
                                    lhs += f_ecd.at({e, c, d, o, be, f, ga, mu, g, nu}) *
                                           f_abg.at({a, b, g, o, al, e, nu, ka, h, la});
                                  Complex rhs{};
                                  for (int k = 0; k < data.rank(sk); ++k) {
                                    const int n_de = data.mult(s2, b, s3, c, k);
                                    const int n_ep = data.mult(s1, a, sk, k, f);
                                    const int n_ph = data.mult(sk, k, s4, d, h);
                                    for (int de = 0; de < n_de; ++de)
                                      for (int ep = 0; ep < n_ep; ++ep)
                                        for (int ph = 0; ph < n_ph; ++ph)
                                          rhs += f_abc.at({a, b, c, f, al, e, be, de, k, ep}) *
                                                 f_akd.at({a, k, d, o, ep, f, ga, ph, h, la}) *
                                                 f_bcd.at({b, c, d, h, de, k, ph, mu, g, ka});
                                  }
                                  const double r = std::abs(lhs - rhs);
                                  ++fam.instances;
                                  if (r > fam.max_residual) {
                                    fam.max_residual = r;
                                    std::ostringstream os;
                                    os << pat.name << " a=" << a << " b=" << b << " c=" << c << " d=" << d << " e=" << e
                                       << " f=" << f << " out=" << o << " g=" << g << " h=" << h;
                                    fam.worst = os.str();
                                  }
                                }
                    }
                  }
                }
              }
            }
    rep.families.push_back(fam);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Gauge

BimoduleData apply_gauge(const BimoduleData& data, const GaugeTransform& gauge) {
  for (const auto& [space, u] : gauge.matrices) {
    const int n = data.mult(space.left_sort, space.x, space.right_sort, space.y, space.z);
    if (u.rows() != n || u.cols() != n)
      throw Error(ErrorKind::ShapeMismatch, "gauge matrix does not match its fusion space dimension");
    if (linalg::unitarity_residual(u) > data.tolerance) throw Error(ErrorKind::InvalidInput, "gauge matrix is not unitary");
    const bool unit_space = (space.left_sort != Sort::M && space.x == 0) || (space.right_sort != Sort::M && space.y == 0);
    if (unit_space && linalg::max_abs_diff(u, Mat::Identity(n, n)) > data.tolerance)
      throw Error(ErrorKind::InvalidInput, "gauge must be trivial on unit-strand fusion spaces");
  }
  auto vertex = [&](Sort sx, int x, Sort sy, int y, int z) -> Mat {
    auto it = gauge.matrices.find(VertexSpace{sx, x, sy, y, z});
    const int n = data.mult(sx, x, sy, y, z);
    return it == gauge.matrices.end() ? Mat(Mat::Identity(n, n)) : it->second;
  };
  BimoduleData out = data;
  for (int k = 0; k < 5; ++k) {
    if (!data.has_family(k)) continue;
    const Frame fr = frame_of(k);
    FTensor fresh;
    for (const auto& l : block_labels(data, k)) {
      FBlock blk = fblock(data, k, l[0], l[1], l[2], l[3]);
      const auto nr = static_cast<Eigen::Index>(blk.rows.size());
      const auto nc = static_cast<Eigen::Index>(blk.cols.size());
      Mat ur = Mat::Zero(nr, nr), uc = Mat::Zero(nc, nc);
      // Row/column orderings are (e, first, second); the per-e sub-blocks are Kronecker products.
      for (Eigen::Index i = 0; i < nr; ++i)
        for (Eigen::Index j = 0; j < nr; ++j) {
          const auto& ri = blk.rows[static_cast<std::size_t>(i)];
          const auto& rj = blk.rows[static_cast<std::size_t>(j)];
          if (ri.mid != rj.mid) continue;
          ur(i, j) = vertex(fr.sx, l[0], fr.sy, l[1], ri.mid)(ri.first, rj.first) *
                     vertex(fr.se, ri.mid, fr.sz, l[2], l[3])(ri.second, rj.second);
        }
      for (Eigen::Index i = 0; i < nc; ++i)
        for (Eigen::Index j = 0; j < nc; ++j) {
          const auto& ci = blk.cols[static_cast<std::size_t>(i)];
          const auto& cj = blk.cols[static_cast<std::size_t>(j)];
          if (ci.mid != cj.mid) continue;
          uc(i, j) = vertex(fr.sy, l[1], fr.sz, l[2], ci.mid)(ci.first, cj.first) *
                     vertex(fr.sx, l[0], fr.sf, ci.mid, l[3])(ci.second, cj.second);
        }
      Mat m = ur * blk.matrix * uc.adjoint();
      for (Eigen::Index i = 0; i < nr; ++i)
        for (Eigen::Index j = 0; j < nc; ++j) {
          if (std::abs(m(i, j)) <= kPruneThreshold) continue;
          const auto& r = blk.rows[static_cast<std::size_t>(i)];
          const auto& q = blk.cols[static_cast<std::size_t>(j)];
          fresh.set(FKey{l[0], l[1], l[2], l[3], r.first, r.mid, r.second, q.first, q.mid, q.second}, m(i, j));
        }
    }
    out.family(k) = std::move(fresh);
  }
  return out;
}

}  // namespace morita

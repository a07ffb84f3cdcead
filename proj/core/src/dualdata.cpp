#include "morita/dualdata.hpp"

#include <cmath>

#include "morita/error.hpp"

namespace morita {

namespace {

constexpr double kCleanThreshold = 1e-13;

FTensor cleaned(const FTensor& t) {
  FTensor out;
  for (const auto& [k, v] : t) {
    const Complex c = linalg::clean(v, kCleanThreshold);
    if (c != Complex{}) out.set(k, c);
  }
  return out;
}

const std::vector<Intertwiner>& lookup(const IntertwinerTable& table, int a, int b, int c) {
  static const std::vector<Intertwiner> empty;
  auto it = table.find({a, b, c});
  return it == table.end() ? empty : it->second;
}

}  // namespace

IntertwinerTable all_intertwiners(const AnnularAlgebra& alg, const std::vector<Irrep>& irreps) {
  IntertwinerTable table;
  for (const auto& a : irreps)
    for (const auto& b : irreps)
      for (const auto& c : irreps) {
        auto maps = intertwiners(alg, a, b, c);
        if (!maps.empty()) table[{a.id, b.id, c.id}] = std::move(maps);
      }
  return table;
}

Multiplicities right_action_from(const ModuleData& mod, const std::vector<Irrep>& irreps) {
  const int nd = static_cast<int>(irreps.size());
  Multiplicities act(mod.rank, nd, mod.rank);
  for (const auto& irr : irreps)
    for (const auto& [sector, idx] : irr.sectors) act.set(sector.first, irr.id, sector.second, static_cast<int>(idx.size()));
  return act;
}

Multiplicities dual_fusion_from(const std::vector<Irrep>& irreps, const IntertwinerTable& table) {
  const int nd = static_cast<int>(irreps.size());
  Multiplicities fusion(nd, nd, nd);
  for (const auto& [key, maps] : table)
    fusion.set(std::get<0>(key), std::get<1>(key), std::get<2>(key), static_cast<int>(maps.size()));
  return fusion;
}

FTensor compute_f2(const ModuleData& mod, const AnnularAlgebra& alg, const std::vector<Irrep>& irreps) {
  const auto& dc = mod.base.fp_dims;
  const auto& m = mod.dims;
  FTensor inv;
  for (const auto& irr : irreps) {
    const int c = irr.id;
    for (int t = 0; t < alg.dim(); ++t) {
      // tube(b, f -> e, d; alpha, a, nu)
      const TubeLabel& tl = alg.basis()[static_cast<std::size_t>(t)];
      const int b = tl.a, f = tl.b, e = tl.c, d = tl.d, a = tl.x;
      const int nmu = irr.sector_dim(b, f), nbeta = irr.sector_dim(e, d);
      if (nmu == 0 || nbeta == 0) continue;
      const auto sz = [&](int k) { return m[static_cast<std::size_t>(k)]; };
      const double weight = std::sqrt(dc[static_cast<std::size_t>(a)] * sz(b) / sz(e)) *
                            std::pow(sz(e) * sz(d), 0.25) / std::pow(sz(b) * sz(f), 0.25);
      const Mat& rho = irr.matrices[static_cast<std::size_t>(t)];
      for (int beta = 0; beta < nbeta; ++beta)
        for (int mu = 0; mu < nmu; ++mu) {
          const Complex v = rho(irr.index(e, beta, d), irr.index(b, mu, f)) / weight;
          if (std::abs(v) > kPruneThreshold) inv.set(FKey{a, b, c, d, tl.alpha, e, beta, mu, f, tl.beta}, v);
        }
    }
  }
  return inv;
}

FTensor compute_f3(const ModuleData& mod, const AnnularAlgebra& alg, const std::vector<Irrep>& irreps,
                   const IntertwinerTable& table) {
  FTensor inv;
  const int nm = mod.rank;
  for (const auto& [key, maps] : table) {
    const auto [b, c, f] = key;
    const Irrep& vb = irreps[static_cast<std::size_t>(b)];
    const Irrep& vc = irreps[static_cast<std::size_t>(c)];
    const Irrep& vf = irreps[static_cast<std::size_t>(f)];
    const TensorModule bc = tensor_module(alg, vb, vc);
    for (const auto& map : maps)
      for (int a = 0; a < nm; ++a)
        for (int d = 0; d < nm; ++d)
          for (int nu = 0; nu < vf.sector_dim(a, d); ++nu)
            for (int e = 0; e < nm; ++e)
              for (int al = 0; al < vb.sector_dim(a, e); ++al)
                for (int be = 0; be < vc.sector_dim(e, d); ++be) {
                  const int p = bc.pair_index(vb.index(a, al, e), vc.index(e, be, d));
                  const Complex v = map.matrix(p, vf.index(a, nu, d));
                  if (std::abs(v) > kPruneThreshold) inv.set(FKey{a, b, c, d, al, e, be, map.alpha, f, nu}, v);
                }
  }
  return inv;
}

FTensor compute_f4(const AnnularAlgebra& alg, const std::vector<Irrep>& irreps, const IntertwinerTable& table,
                   const Multiplicities& fusion) {
  const int nd = static_cast<int>(irreps.size());
  FTensor out;
  auto irrep = [&](int k) -> const Irrep& { return irreps[static_cast<std::size_t>(k)]; };
  std::map<std::pair<int, int>, TensorModule> tensors;
  auto tensor = [&](int a, int b) -> const TensorModule& {
    auto it = tensors.find({a, b});
    if (it == tensors.end()) it = tensors.emplace(std::make_pair(a, b), tensor_module(alg, irrep(a), irrep(b))).first;
    return it->second;
  };

  for (int a = 0; a < nd; ++a)
    for (int b = 0; b < nd; ++b)
      for (int c = 0; c < nd; ++c) {
        // Triples (i, j, k) of V_a (x) V_b (x) V_c with matching sectors.
        const TensorModule& ab = tensor(a, b);
        const TensorModule& bc = tensor(b, c);
        std::map<std::tuple<int, int, int>, Eigen::Index> triples;
        for (const auto& [i, j] : ab.pairs)
          for (int k = 0; k < irrep(c).dim(); ++k)
            if (irrep(b).grading[static_cast<std::size_t>(j)].second == irrep(c).grading[static_cast<std::size_t>(k)].first)
              triples.emplace(std::make_tuple(i, j, k), static_cast<Eigen::Index>(triples.size()));
        const auto nt = static_cast<Eigen::Index>(triples.size());

        for (int d = 0; d < nd; ++d) {
          const int nv = irrep(d).dim();
          struct Tree {
            int mid, first, second;
            Mat map;
          };
          std::vector<Tree> left, right;
          for (int e = 0; e < nd; ++e) {
            const auto& v_ab = lookup(table, a, b, e);
            const auto& v_ec = lookup(table, e, c, d);
            if (v_ab.empty() || v_ec.empty()) continue;
            const TensorModule& ec = tensor(e, c);
            for (const auto& first : v_ab)
              for (const auto& second : v_ec) {
                Mat l = Mat::Zero(nt, nv);
                for (std::size_t p = 0; p < ec.pairs.size(); ++p) {
                  const auto [ie, k] = ec.pairs[p];
                  for (std::size_t q = 0; q < ab.pairs.size(); ++q) {
                    const Complex w = first.matrix(static_cast<Eigen::Index>(q), ie);
                    if (w == Complex{}) continue;
                    const auto [i, j] = ab.pairs[q];
                    auto it = triples.find({i, j, k});
                    if (it == triples.end()) continue;
                    l.row(it->second) += w * second.matrix.row(static_cast<Eigen::Index>(p));
                  }
                }
                left.push_back({e, first.alpha, second.alpha, std::move(l)});
              }
          }
          for (int f = 0; f < nd; ++f) {
            const auto& v_bc = lookup(table, b, c, f);
            const auto& v_af = lookup(table, a, f, d);
            if (v_bc.empty() || v_af.empty()) continue;
            const TensorModule& af = tensor(a, f);
            for (const auto& first : v_bc)
              for (const auto& second : v_af) {
                Mat r = Mat::Zero(nt, nv);
                for (std::size_t p = 0; p < af.pairs.size(); ++p) {
                  const auto [i, jf] = af.pairs[p];
                  for (std::size_t q = 0; q < bc.pairs.size(); ++q) {
                    const Complex w = first.matrix(static_cast<Eigen::Index>(q), jf);
                    if (w == Complex{}) continue;
                    const auto [j, k] = bc.pairs[q];
                    auto it = triples.find({i, j, k});
                    if (it == triples.end()) continue;
                    r.row(it->second) += w * second.matrix.row(static_cast<Eigen::Index>(p));
                  }
                }
                right.push_back({f, first.alpha, second.alpha, std::move(r)});
              }
          }
          if (left.empty() && right.empty()) continue;
          if (left.size() != right.size())
            throw Error(ErrorKind::PipelineInconsistent, "F4 block is not square");
          Mat block(static_cast<Eigen::Index>(left.size()), static_cast<Eigen::Index>(right.size()));
          for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = 0; j < right.size(); ++j)
              block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                  (right[j].map.adjoint() * left[i].map).trace() / static_cast<double>(nv);
          const double residual = linalg::unitarity_residual(block);
          if (residual >= 1e-6)
            throw Error(ErrorKind::PipelineInconsistent, "F4 block far from unitary (residual " + std::to_string(residual) + ")");
          Eigen::JacobiSVD<Mat> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
          block = svd.matrixU() * svd.matrixV().adjoint();
          for (std::size_t i = 0; i < left.size(); ++i)
            for (std::size_t j = 0; j < right.size(); ++j) {
              const Complex v = block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
              if (std::abs(v) > kPruneThreshold)
                out.set(FKey{a, b, c, d, left[i].first, left[i].mid, left[i].second, right[j].first, right[j].mid,
                             right[j].second},
                        v);
            }
        }
      }
  (void)fusion;
  return out;
}

DualResult compute_dual(const ModuleData& input, const DecomposeOptions& opt) {
  ModuleData mod = input;
  if (mod.dims.empty() || mod.base.fp_dims.empty()) finalize(mod);
  AnnularAlgebra alg(mod);
  std::vector<Irrep> irreps = decompose(alg, opt);
  IntertwinerTable table = all_intertwiners(alg, irreps);

  BimoduleData data;
  data.module = mod;
  data.tolerance = opt.tolerance;
  FusionCategory dcat;
  dcat.rank = static_cast<int>(irreps.size());
  dcat.fusion = dual_fusion_from(irreps, table);
  for (const auto& irr : irreps) {
    dcat.dual.push_back(irr.dual);
    dcat.labels.push_back("V" + std::to_string(irr.id));
  }
  data.right = dcat;
  data.right_action = right_action_from(mod, irreps);

  // Inverse-transposed tensors are read off directly; lowering them again gives F.
  data.f2 = compute_f2(mod, alg, irreps);
  data.f2 = cleaned(lowered(data, 2));
  data.f3 = compute_f3(mod, alg, irreps, table);
  data.f3 = cleaned(lowered(data, 3));
  data.right->fsym = cleaned(compute_f4(alg, irreps, table, dcat.fusion));

  try {
    finalize(data);
  } catch (const Error& err) {
    throw Error(ErrorKind::PipelineInconsistent, std::string("assembled dual is not a valid category: ") + err.what());
  }
  const double fc = data.left().fpdim(), fd = data.right->fpdim();
  if (std::abs(fc - fd) > 1e-8 * fc)
    throw Error(ErrorKind::PipelineInconsistent, "FPdim(D) = " + std::to_string(fd) + " differs from FPdim(C) = " + std::to_string(fc));
  for (const auto& report : {verify_pentagons(data), verify_unitarity(data), verify_unit_normalization(data)}) {
    for (const auto& fam : report.families)
      if (fam.max_residual >= opt.tolerance)
        throw Error(ErrorKind::PipelineInconsistent,
                    fam.name + " check fails on the assembled dual (residual " + std::to_string(fam.max_residual) + " at " + fam.worst + ")");
  }
  return DualResult{std::move(alg), std::move(irreps), std::move(table), std::move(data)};
}

BimoduleData assemble_dual(const ModuleData& mod, const DecomposeOptions& opt) { return compute_dual(mod, opt).data; }

}  // namespace morita

#pragma once

#include <map>
#include <tuple>
#include <vector>

#include "morita/annular.hpp"
#include "morita/repdecomp.hpp"
#include "morita/skeletal.hpp"

namespace morita {

/// Intertwiners V_{ab}^{c; alpha} keyed by (a, b, c).
using IntertwinerTable = std::map<std::tuple<int, int, int>, std::vector<Intertwiner>>;

IntertwinerTable all_intertwiners(const AnnularAlgebra& alg, const std::vector<Irrep>& irreps);

/// Right action multiplicities dim Hom(b <| c, f) = sector dims of the irreps.
Multiplicities right_action_from(const ModuleData& mod, const std::vector<Irrep>& irreps);
/// N^{ab}_c = number of intertwiners V_c -> V_a (x) V_b.
Multiplicities dual_fusion_from(const std::vector<Irrep>& irreps, const IntertwinerTable& table);

/// F2 from the irrep matrix elements, with the X = (m_a m_c)^(-1/4) basis factors.
FTensor compute_f2(const ModuleData& mod, const AnnularAlgebra& alg, const std::vector<Irrep>& irreps);
/// F3 from the intertwiner matrix elements between sector bases.
FTensor compute_f3(const ModuleData& mod, const AnnularAlgebra& alg, const std::vector<Irrep>& irreps,
                   const IntertwinerTable& table);
/// F4 from overlaps of the two recouplings V_d -> V_a (x) V_b (x) V_c.
FTensor compute_f4(const AnnularAlgebra& alg, const std::vector<Irrep>& irreps, const IntertwinerTable& table,
                   const Multiplicities& fusion);

struct DualResult {
  AnnularAlgebra algebra;
  std::vector<Irrep> irreps;
  IntertwinerTable intertwiners;
  BimoduleData data;
};

/// Full pipeline; PipelineInconsistent if the assembled data fails validation.
DualResult compute_dual(const ModuleData& mod, const DecomposeOptions& opt = {});
BimoduleData assemble_dual(const ModuleData& mod, const DecomposeOptions& opt = {});

}  // namespace morita

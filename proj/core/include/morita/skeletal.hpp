#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morita/linalg.hpp"

namespace morita {

/// Which of the three label sets an index belongs to: the left fusion
/// category C, the module M, or the right fusion category D.
enum class Sort : std::uint8_t { C, M, D };

/// Dense nonnegative-integer 3-tensor of fusion/action multiplicities.
class Multiplicities {
 public:
  Multiplicities() = default;
  Multiplicities(int n0, int n1, int n2);

  int operator()(int i, int j, int k) const;
  void set(int i, int j, int k, int value);
  int extent(int axis) const { return extent_[static_cast<std::size_t>(axis)]; }

  bool operator==(const Multiplicities&) const = default;

 private:
  std::array<int, 3> extent_{0, 0, 0};
  std::vector<int> data_;
};

/// Index of one F-symbol entry. Labels are 0-based, multiplicity indices are
/// 0-based internally (the file format shifts them to 1-based).
///
/// The entry relates the left-bracketed tree ((a b) c) -> d, with vertices
/// alpha: a b -> e and beta: e c -> d, to the right-bracketed tree
/// (a (b c)) -> d with mu: b c -> f and nu: a f -> d.
struct FKey {
  int a = 0, b = 0, c = 0, d = 0;
  int alpha = 0, e = 0, beta = 0;
  int mu = 0, f = 0, nu = 0;
  auto operator<=>(const FKey&) const = default;
};

/// Sparse F-symbol storage. Absent keys are structural zeros.
class FTensor {
 public:
  using Storage = std::map<FKey, Complex>;

  Complex at(const FKey& key) const;
  void set(const FKey& key, Complex value);
  bool contains(const FKey& key) const { return entries_.count(key) != 0; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  Storage::const_iterator begin() const { return entries_.begin(); }
  Storage::const_iterator end() const { return entries_.end(); }

  bool operator==(const FTensor&) const = default;

 private:
  Storage entries_;
};

struct FusionCategory {
  int rank = 0;
  std::vector<int> dual;
  Multiplicities fusion;  ///< N^{ab}_c
  FTensor fsym;           ///< F^0 for the left category, F^4 for the right one
  std::vector<std::string> labels;
  std::vector<double> fp_dims;  ///< filled by finalize()

  double fpdim() const;
};

struct ModuleData {
  FusionCategory base;
  int rank = 0;
  Multiplicities action;  ///< (x, a, c) -> dim Hom(x |> a, c)
  FTensor f1;
  std::vector<std::string> labels;
  std::vector<double> dims;  ///< filled by finalize()
};

/// Full skeletal data (F^0, ..., F^4) of a (C, D)-bimodule category. The right
/// side is optional so that plain module data (F^0, F^1) uses the same type.
struct BimoduleData {
  ModuleData module;
  std::optional<FusionCategory> right;
  Multiplicities right_action;  ///< (a, c, f) -> dim Hom(a <| c, f)
  FTensor f2, f3;
  double tolerance = kDefaultTolerance;

  const FusionCategory& left() const { return module.base; }
  int rank(Sort s) const;
  /// Multiplicity of z in x * y for the product of sorts (sx, sy); 0 when
  /// the sorts do not compose.
  int mult(Sort sx, int x, Sort sy, int y, int z) const;
  const FTensor& family(int k) const;
  FTensor& family(int k);
  /// F^0/F^1 are always present; F^2..F^4 need a right category and data.
  bool has_family(int k) const;
};

/// Sorts of the three incoming strands of family k (k = 0..4).
std::array<Sort, 3> family_sorts(int k);
/// Sort of the product x * y; throws InvalidInput for incompatible sorts.
Sort product_sort(Sort x, Sort y);
/// Family index for three strand sorts, or -1.
int family_of(Sort x, Sort y, Sort z);

// ---------------------------------------------------------------------------
// Dimensions

/// Frobenius-Perron dimensions of a based fusion ring with unit 0.
std::vector<double> compute_fp_dims(const Multiplicities& fusion);

/// Positive solution of d_x m_a = sum_c N^{xa}_c m_c with sum m_a^2 = FPdim(C).
std::vector<double> compute_module_dims(const ModuleData& mod);

/// Derives the dual involution from N^{ab}_0.
std::vector<int> duals_from_fusion(const Multiplicities& fusion);

/// Fills the derived fields (FP dims, module dims). Throws on invalid fusion.
void finalize(FusionCategory& cat);
void finalize(ModuleData& mod);
void finalize(BimoduleData& data);

// ---------------------------------------------------------------------------
// Blocks and coherence

/// One tree basis vector: (alpha, e, beta) for rows or (mu, f, nu) for columns.
struct TreeIndex {
  int first = 0, mid = 0, second = 0;
};

/// Dense F-matrix for fixed outer labels (a, b, c, d); rows are ordered by
/// (e, alpha, beta) and columns by (f, mu, nu).
struct FBlock {
  std::array<int, 4> labels{};
  std::vector<TreeIndex> rows, cols;
  Mat matrix;
};

FBlock fblock(const BimoduleData& data, int family, int a, int b, int c, int d);
/// All outer label tuples with a nonempty block in family k.
std::vector<std::array<int, 4>> block_labels(const BimoduleData& data, int family);
/// Builds a block from an arbitrary tensor with the index sets of family k.
FBlock block_of(const BimoduleData& data, int family, const FTensor& t, int a, int b, int c, int d);
/// Inverse-transposed F ("lowered" indices): sum_{mu f nu} F^{..}_{mu f nu} Fi^{..'}_{mu f nu} = delta.
FTensor lowered(const BimoduleData& data, int family);

struct FamilyResidual {
  std::string name;
  double max_residual = 0.0;
  std::size_t instances = 0;
  std::string worst;  ///< human-readable location of the largest residual
};

struct CoherenceReport {
  double tolerance = kDefaultTolerance;
  std::vector<FamilyResidual> families;
  bool passed() const;
  double max_residual() const;
};

/// Pentagon identities for every strand-sort pattern whose F data are present
/// (CCCC, CCCM, CCMD, CMDD, MDDD, DDDD).
CoherenceReport verify_pentagons(const BimoduleData& data);
/// Per-block max |F F^dagger - 1|.
CoherenceReport verify_unitarity(const BimoduleData& data);
/// Unit-strand (triangle) constraints: every block with a unit strand is the identity.
CoherenceReport verify_unit_normalization(const BimoduleData& data);

/// Structural checks: keys within the fusion rules, no allowed block missing.
void check_structure(const BimoduleData& data);

// ---------------------------------------------------------------------------
// Gauge

/// A fusion space Hom(x * y, z) where x has sort `left_sort` and y has sort `right_sort`.
struct VertexSpace {
  Sort left_sort = Sort::C;
  int x = 0;
  Sort right_sort = Sort::C;
  int y = 0;
  int z = 0;
  auto operator<=>(const VertexSpace&) const = default;
};

/// Unitary basis changes per fusion space; spaces not listed are untouched.
struct GaugeTransform {
  std::map<VertexSpace, Mat> matrices;
};

BimoduleData apply_gauge(const BimoduleData& data, const GaugeTransform& gauge);

}  // namespace morita

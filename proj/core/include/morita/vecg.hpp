#pragma once

#include <string>
#include <vector>

#include "morita/linalg.hpp"
#include "morita/skeletal.hpp"

namespace morita {

/// Finite group given by its multiplication table; element 0 is the identity.
struct FiniteGroup {
  std::string name;
  int order = 0;
  std::vector<std::vector<int>> table;  ///< table[g][h] = g h
  std::vector<int> inverse;

  int mul(int g, int h) const { return table[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)]; }
  int inv(int g) const { return inverse[static_cast<std::size_t>(g)]; }
};

/// Validates associativity, identity and inverses, and fills `inverse`.
/// InvalidInput on failure.
FiniteGroup from_table(std::string name, std::vector<std::vector<int>> table);

FiniteGroup cyclic_group(int n);
/// Z2 x Z2 with (a, b) at index 2a + b.
FiniteGroup klein_group();
/// Permutations of {0..n-1} in lexicographic order (identity first).
FiniteGroup symmetric_group(int n);
/// Symmetries of the square: r^k s^j at index 4j + k.
FiniteGroup dihedral4_group();
/// Quaternion group {1, -1, i, -i, j, -j, k, -k}.
FiniteGroup quaternion_group();
/// Z<n>, Z2xZ2, S3, S4, D4, Q8. InvalidInput for unknown names.
FiniteGroup group_by_name(const std::string& name);

/// Normalized 2-cocycle phi(g, h) with values on the unit circle.
struct Cocycle {
  std::vector<std::vector<Complex>> values;
  Complex operator()(int g, int h) const {
    return values[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)];
  }
};

Cocycle trivial_cocycle(const FiniteGroup& g);
/// phi((a,b),(c,d)) = (-1)^{b c} on Z2 x Z2.
Cocycle symplectic_cocycle();
/// Throws InvalidInput unless phi is a normalized unitary 2-cocycle of `g` (tolerance 1e-12).
void validate_cocycle(const FiniteGroup& g, const Cocycle& phi);

/// (Vec_G, Vec) with F0 = 1 and F1[g,h,*,*; 1,gh,1; 1,*,1] = phi(g, h).
ModuleData gen_vecg(const FiniteGroup& g, const Cocycle& phi);
ModuleData gen_vecg(const FiniteGroup& g);

/// Irreducible unitary representations of G as matrices rho(g).
struct ClassicalIrrep {
  int dim = 0;
  std::vector<Mat> matrices;
  std::vector<Complex> character;
};

/// Decomposes the regular representation by diagonalizing random Hermitian
/// elements of its commutant. InvalidInput for |G| > max_order.
std::vector<ClassicalIrrep> classical_irreps(const FiniteGroup& g, unsigned long long seed = 0x5EED,
                                             int max_order = 48);

}  // namespace morita

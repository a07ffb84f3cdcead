#include "morita/vecg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "morita/error.hpp"

namespace morita {

FiniteGroup from_table(std::string name, std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorKind::InvalidInput, "empty group table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::InvalidInput, "group table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw Error(ErrorKind::InvalidInput, "group table entry out of range");
  }
  FiniteGroup g{std::move(name), n, std::move(table), std::vector<int>(static_cast<std::size_t>(n), -1)};
  for (int a = 0; a < n; ++a)
    if (g.mul(0, a) != a || g.mul(a, 0) != a) throw Error(ErrorKind::InvalidInput, "element 0 is not the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) throw Error(ErrorKind::InvalidInput, "group table is not associative");
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == 0 && g.mul(b, a) == 0) g.inverse[static_cast<std::size_t>(a)] = b;
    if (g.inverse[static_cast<std::size_t>(a)] < 0) throw Error(ErrorKind::InvalidInput, "element without inverse");
  }
  return g;
}

FiniteGroup cyclic_group(int n) {
  if (n <= 0) throw Error(ErrorKind::InvalidInput, "cyclic group order must be positive");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return from_table("Z" + std::to_string(n), std::move(t));
}

FiniteGroup klein_group() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int g = 0; g < 4; ++g)
    for (int h = 0; h < 4; ++h) t[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] = g ^ h;
  return from_table("Z2xZ2", std::move(t));
}

FiniteGroup symmetric_group(int n) {
  if (n <= 0 || n > 5) throw Error(ErrorKind::InvalidInput, "symmetric group degree must be in 1..5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  auto find = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  const auto m = perms.size();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  std::vector<int> q(static_cast<std::size_t>(n));
  // (g h)(i) = g(h(i))
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(i)])];
      t[a][b] = find(q);
    }
  return from_table("S" + std::to_string(n), std::move(t));
}

FiniteGroup dihedral4_group() {
  // r^k s^j; s r = r^-1 s.
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int j1 = 0; j1 < 2; ++j1)
    for (int k1 = 0; k1 < 4; ++k1)
      for (int j2 = 0; j2 < 2; ++j2)
        for (int k2 = 0; k2 < 4; ++k2) {
          const int k = (k1 + (j1 ? 4 - k2 : k2)) % 4;
          const int j = j1 ^ j2;
          t[static_cast<std::size_t>(4 * j1 + k1)][static_cast<std::size_t>(4 * j2 + k2)] = 4 * j + k;
        }
  return from_table("D4", std::move(t));
}

FiniteGroup quaternion_group() {
  // Unit quaternions +-1, +-i, +-j, +-k at index 2u + s (u = 1,i,j,k; s = sign bit).
  static const int unit_prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign_prod[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const int u = a / 2, v = b / 2;
      const int s = (a % 2) ^ (b % 2) ^ sign_prod[u][v];
      t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 2 * unit_prod[u][v] + s;
    }
  return from_table("Q8", std::move(t));
}

FiniteGroup group_by_name(const std::string& name) {
  if (name == "Z2xZ2" || name == "V4" || name == "Z2Z2") return klein_group();
  if (name == "D4") return dihedral4_group();
  if (name == "Q8") return quaternion_group();
  if (name.size() >= 2 && (name[0] == 'Z' || name[0] == 'S') &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const int n = std::stoi(name.substr(1));
    return name[0] == 'Z' ? cyclic_group(n) : symmetric_group(n);
  }
  throw Error(ErrorKind::InvalidInput, "unknown group '" + name + "'");
}

Cocycle trivial_cocycle(const FiniteGroup& g) {
  return Cocycle{std::vector<std::vector<Complex>>(static_cast<std::size_t>(g.order),
                                                   std::vector<Complex>(static_cast<std::size_t>(g.order), 1.0))};
}

Cocycle symplectic_cocycle() {
  Cocycle phi{std::vector<std::vector<Complex>>(4, std::vector<Complex>(4, 1.0))};
  for (int g = 0; g < 4; ++g)
    for (int h = 0; h < 4; ++h) {
      const int b = g & 1, c = h >> 1;
      phi.values[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] = (b * c) ? -1.0 : 1.0;
    }
  return phi;
}

void validate_cocycle(const FiniteGroup& g, const Cocycle& phi) {
  const int n = g.order;
  if (static_cast<int>(phi.values.size()) != n) throw Error(ErrorKind::InvalidInput, "cocycle table has the wrong size");
  for (const auto& row : phi.values)
    if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::InvalidInput, "cocycle table has the wrong size");
  constexpr double tol = 1e-12;
  for (int a = 0; a < n; ++a) {
    if (std::abs(phi(0, a) - 1.0) > tol || std::abs(phi(a, 0) - 1.0) > tol)
      throw Error(ErrorKind::InvalidInput, "cocycle is not normalized");
    for (int b = 0; b < n; ++b) {
      if (std::abs(std::abs(phi(a, b)) - 1.0) > tol) throw Error(ErrorKind::InvalidInput, "cocycle value off the unit circle");
      for (int c = 0; c < n; ++c)
        if (std::abs(phi(a, b) * phi(g.mul(a, b), c) - phi(a, g.mul(b, c)) * phi(b, c)) > tol)
          throw Error(ErrorKind::InvalidInput, "cocycle identity fails at (" + std::to_string(a) + "," +
                                                   std::to_string(b) + "," + std::to_string(c) + ")");
    }
  }
}

ModuleData gen_vecg(const FiniteGroup& g, const Cocycle& phi) {
  validate_cocycle(g, phi);
  const int n = g.order;
  ModuleData mod;
  auto& cat = mod.base;
  cat.rank = n;
  cat.fusion = Multiplicities(n, n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) cat.fusion.set(a, b, g.mul(a, b), 1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int ab = g.mul(a, b), bc = g.mul(b, c);
        cat.fsym.set(FKey{a, b, c, g.mul(ab, c), 0, ab, 0, 0, bc, 0}, 1.0);
      }
  cat.labels.clear();
  for (int a = 0; a < n; ++a) cat.labels.push_back("g" + std::to_string(a));
  mod.rank = 1;
  mod.action = Multiplicities(n, 1, 1);
  for (int a = 0; a < n; ++a) mod.action.set(a, 0, 0, 1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) mod.f1.set(FKey{a, b, 0, 0, 0, g.mul(a, b), 0, 0, 0, 0}, phi(a, b));
  mod.labels = {"*"};
  finalize(mod);
  return mod;
}

ModuleData gen_vecg(const FiniteGroup& g) { return gen_vecg(g, trivial_cocycle(g)); }

std::vector<ClassicalIrrep> classical_irreps(const FiniteGroup& g, unsigned long long seed, int max_order) {
  const int n = g.order;
  if (n > max_order) throw Error(ErrorKind::InvalidInput, "group order exceeds the configured bound");
  std::vector<Mat> reg(static_cast<std::size_t>(n), Mat::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) reg[static_cast<std::size_t>(a)](g.mul(a, b), b) = 1.0;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
    m = m + m.adjoint();
    Mat x = Mat::Zero(n, n);
    for (const auto& r : reg) x += r * m * r.adjoint();
    x = 0.5 * (x + x.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(x);
    const auto& ev = es.eigenvalues();
    std::vector<ClassicalIrrep> found;
    bool ok = true;
    for (Eigen::Index start = 0; start < n && ok;) {
      Eigen::Index end = start + 1;
      while (end < n && ev(end) - ev(end - 1) < 1e-7) ++end;
      const Mat u = es.eigenvectors().middleCols(start, end - start);
      ClassicalIrrep irr;
      irr.dim = static_cast<int>(end - start);
      double norm = 0.0;
      for (const auto& r : reg) {
        irr.matrices.push_back(u.adjoint() * r * u);
        irr.character.push_back(irr.matrices.back().trace());
        norm += std::norm(irr.character.back());
      }
      if (std::abs(norm / n - 1.0) > 1e-6) ok = false;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const ClassicalIrrep& other) {
        Complex ip = 0.0;
        for (int a = 0; a < n; ++a)
          ip += std::conj(other.character[static_cast<std::size_t>(a)]) * irr.character[static_cast<std::size_t>(a)];
        return std::abs(ip) / n > 0.5;
      });
      if (ok && !duplicate) found.push_back(std::move(irr));
      start = end;
    }
    if (!ok) continue;
    int total = 0;
    for (const auto& irr : found) total += irr.dim * irr.dim;
    if (total != n) throw Error(ErrorKind::DecompositionFailure, "classical irreps do not exhaust the group algebra");
    std::stable_sort(found.begin(), found.end(), [](const ClassicalIrrep& p, const ClassicalIrrep& q) {
      const bool pt = std::abs(p.character[0] - 1.0) < 1e-9 && p.dim == 1 &&
                      std::all_of(p.character.begin(), p.character.end(), [](Complex c) { return std::abs(c - 1.0) < 1e-9; });
      const bool qt = std::abs(q.character[0] - 1.0) < 1e-9 && q.dim == 1 &&
                      std::all_of(q.character.begin(), q.character.end(), [](Complex c) { return std::abs(c - 1.0) < 1e-9; });
      if (pt != qt) return pt;
      return p.dim < q.dim;
    });
    return found;
  }
  throw Error(ErrorKind::DegenerateSpectrum, "random commutant element failed to separate the irreps");
}

}  // namespace morita

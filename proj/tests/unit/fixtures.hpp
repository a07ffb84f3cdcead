#pragma once

#include <cmath>
#include <random>

#include "morita/catalog.hpp"
#include "morita/dualdata.hpp"
#include "morita/vecg.hpp"

namespace fixtures {

inline const morita::DualResult& vecg_dual(const std::string& group) {
  static std::map<std::string, morita::DualResult> cache;
  auto it = cache.find(group);
  if (it == cache.end()) it = cache.emplace(group, morita::compute_dual(morita::gen_vecg(morita::group_by_name(group)))).first;
  return it->second;
}

inline const morita::DualResult& fib_dual() {
  static const morita::DualResult r = morita::compute_dual(morita::regular_module(morita::fibonacci_category()));
  return r;
}

inline const morita::DualResult& twisted_dual() {
  static const morita::DualResult r = morita::compute_dual(morita::gen_vecg(morita::klein_group(), morita::symplectic_cocycle()));
  return r;
}

inline morita::ModuleData z2_regular() { return morita::regular_module(morita::gen_vecg(morita::cyclic_group(2)).base); }

inline morita::Mat random_unitary(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  morita::Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = morita::Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<morita::Mat> qr(m);
  return qr.householderQ() * morita::Mat::Identity(n, n);
}

}  // namespace fixtures

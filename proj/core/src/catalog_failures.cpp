#include "morita/catalog.hpp"
#include "morita/dualdata.hpp"
#include "morita/vecg.hpp"

namespace morita {

namespace {

FusionCategory trivial_category() {
  FusionCategory cat;
  cat.rank = 1;
  cat.dual = {0};
  cat.fusion = Multiplicities(1, 1, 1);
  cat.fusion.set(0, 0, 0, 1);
  cat.fsym.set(FKey{}, 1.0);
  cat.labels = {"1"};
  return cat;
}

}  // namespace

BimoduleData failure_missing_irreps() {
  BimoduleData data;
  data.module = gen_vecg(cyclic_group(2));
  data.right = trivial_category();
  data.right_action = Multiplicities(1, 1, 1);
  data.right_action.set(0, 0, 0, 1);
  for (int a = 0; a < 2; ++a) data.f2.set(FKey{a, 0, 0, 0, 0, 0, 0, 0, 0, 0}, 1.0);
  data.f3.set(FKey{}, 1.0);
  finalize(data);
  return data;
}

BimoduleData failure_duplicate_labels() {
  BimoduleData data;
  data.module = gen_vecg(cyclic_group(2));
  FusionCategory d = data.module.base;
  d.labels = {"1", "s"};
  data.right = d;
  data.right_action = Multiplicities(1, 2, 1);
  for (int h = 0; h < 2; ++h) data.right_action.set(0, h, 0, 1);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) data.f2.set(FKey{a, 0, c, 0, 0, 0, 0, 0, 0, 0}, 1.0);
  for (int g = 0; g < 2; ++g)
    for (int h = 0; h < 2; ++h) data.f3.set(FKey{0, g, h, 0, 0, 0, 0, 0, g ^ h, 0}, 1.0);
  finalize(data);
  return data;
}

BimoduleData failure_reducible_labels() {
  // Rep(S3) data for (Vec_S3, Vec), with the left category cut down to the
  // subgroup {e, (12)}; element 1 of the S3 table is a transposition.
  const BimoduleData full = compute_dual(gen_vecg(symmetric_group(3))).data;
  BimoduleData data;
  data.module = gen_vecg(cyclic_group(2));
  data.right = full.right;
  data.right->labels = {"1", "sigma", "pi"};
  data.right_action = full.right_action;
  for (const auto& [key, value] : full.f2)
    if (key.a < 2) data.f2.set(key, value);
  data.f3 = full.f3;
  data.tolerance = full.tolerance;
  finalize(data);
  return data;
}

}  // namespace morita

#include <cmath>

#include "morita/catalog.hpp"

namespace morita {

FusionCategory fibonacci_category() {
  FusionCategory cat;
  cat.rank = 2;
  cat.fusion = Multiplicities(2, 2, 2);
  cat.fusion.set(0, 0, 0, 1);
  cat.fusion.set(0, 1, 1, 1);
  cat.fusion.set(1, 0, 1, 1);
  cat.fusion.set(1, 1, 0, 1);
  cat.fusion.set(1, 1, 1, 1);
  cat.labels = {"1", "tau"};
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          for (int e = 0; e < 2; ++e)
            for (int f = 0; f < 2; ++f) {
              if (!cat.fusion(a, b, e) || !cat.fusion(e, c, d) || !cat.fusion(b, c, f) || !cat.fusion(a, f, d)) continue;
              double v = 1.0;
              if (a == 1 && b == 1 && c == 1 && d == 1) {
                if (e == 0 && f == 0) v = 1.0 / phi;
                else if (e == 1 && f == 1) v = -1.0 / phi;
                else v = 1.0 / std::sqrt(phi);
              }
              if (v != 0.0) cat.fsym.set(FKey{a, b, c, d, 0, e, 0, 0, f, 0}, v);
            }
  finalize(cat);
  return cat;
}

ModuleData regular_module(const FusionCategory& cat) {
  ModuleData mod;
  mod.base = cat;
  mod.rank = cat.rank;
  mod.action = cat.fusion;
  mod.f1 = cat.fsym;
  mod.labels = cat.labels;
  finalize(mod);
  return mod;
}

}  // namespace morita

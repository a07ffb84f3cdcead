#pragma once

#include "morita/skeletal.hpp"

namespace morita {

/// Fibonacci category {1, tau} with tau tau = 1 + tau.
FusionCategory fibonacci_category();

/// C acting on itself; F1 = F0.
ModuleData regular_module(const FusionCategory& cat);

/// Vec_Z2 acting on Vec with D = Vec: rank of D too small.
BimoduleData failure_missing_irreps();
/// Vec_Z2 acting on Vec with D = Vec_Z2 and every F = 1.
BimoduleData failure_duplicate_labels();
/// Vec_Z2 acting on Vec with D = Rep(S3), restricted along Z2 < S3.
BimoduleData failure_reducible_labels();

}  // namespace morita

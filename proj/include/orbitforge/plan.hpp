#pragma once

#include <vector>

#include "orbitforge/gamma.hpp"
#include "orbitforge/weights.hpp"

namespace orbitforge {

/// One synthesis step: the data (s_n, |lambda_n|, F_n) plus the per-step
/// budget margins actually achieved. alpha is the target sup-norm budget
/// already raised to the p-th power.
struct PlanStep {
    int n = 0;
    GroupPoint s;
    double lambda_mag = 1.0;
    Window window;
    double alpha = 1.0;
    double margin_c1 = 0.0, margin_c2 = 0.0, margin_c3 = 0.0;
};

/// Witness data for the series condition: steps n = 1..N with the implicit
/// step 0 fixed at (identity, 1, empty window). Shifted windows are
/// pairwise disjoint by construction.
struct SynthesisPlan {
    Space space = Space::Z;
    double p = 2.0;
    Weight weight;
    GammaSet gamma;
    std::vector<PlanStep> steps;
};

}  // namespace orbitforge

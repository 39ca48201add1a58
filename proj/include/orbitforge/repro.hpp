#pragma once

#include <string>
#include <vector>

#include "orbitforge/criteria.hpp"
#include "orbitforge/weights.hpp"

namespace orbitforge {

/// Bundled example weights and vectors, addressable by id from the CLI:
///   r_peaks        anchored peak weight on R (factorial anchors)
///   claim2_vector  sum of small indicator blocks left of each anchor
///   ex52_v1        one-sided geometric weight on Z (1 for n <= 0)
///   ex52_v2        mirrored variant (1 for n >= 0)
///   final_z        double-exponential weight on Z
///   twosided_exp   symmetric geometric weight 2^(-|n|)
RealWeight make_r_peaks(int n_max);
SupportedVec make_claim2_vector(int n_max);
DiscreteWeight make_ex52_v1();
DiscreteWeight make_ex52_v2();
DiscreteWeight make_final_z();
DiscreteWeight make_twosided_exp();

bool is_weight_alias(const std::string& id);
Weight build_weight_alias(const std::string& id, int n_max = 12);

/// CSV-shaped experiment output: a header plus string cells.
struct ExperimentTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::string to_csv() const;
};

struct ExperimentParams {
    int n_lo = 2, n_hi = 10;
    int n_max = 12;              // anchor count for r_peaks
    std::vector<double> ps{1.0, 2.0};
    std::int64_t horizon = 4096;
};

/// ids: claim1 (operator-norm bracket), claim2 (norm growth across the
/// anchor ascent), ex52 (verdict pair), final_z (admissibility conflict).
ExperimentTable run_experiment(const std::string& id, const ExperimentParams& params);

}  // namespace orbitforge

#pragma once

#include <vector>

#include "orbitforge/gamma.hpp"
#include "orbitforge/shifts.hpp"
#include "orbitforge/weights.hpp"

namespace orbitforge {

struct ApproxResult {
    GroupPoint s_star;
    cplx lambda_star{0.0, 0.0};
    double error = 0.0;
    bool attained = true;
};

struct LambdaFit {
    cplx lambda{0.0, 0.0};
    double error = 0.0;
    bool attained = true;
};

/// Best scalar multiple of the translate: minimizes
/// ||lambda * T_s f - g||_{p,w} over lambda in Gamma \ {0}.
/// For p = 2 the unconstrained minimizer is the weighted projection
/// coefficient, then projected to |Gamma| keeping its phase. For general p
/// nested golden-section search runs over log-magnitude and phase.
/// A vanishing translate or a limit-at-zero optimum reports
/// error = ||g||_{p,w} with attained = false.
LambdaFit best_lambda(const SupportedVec& f, const SupportedVec& g, const GroupPoint& s,
                      const GammaSet& gamma, double p, const Weight& w);

/// Minimum over s in S (within the horizon) of best_lambda; deterministic
/// tie-break by canonical shift order, then smaller |lambda|.
ApproxResult best_approx(const SupportedVec& f, const SupportedVec& g, const ShiftSet& s,
                         const GammaSet& gamma, double p, const Weight& w, std::int64_t horizon);

/// Exhaustive log-magnitude x phase grid, optionally zoom-refined.
/// Test oracle for the convexity handling in best_lambda.
struct OracleGrid {
    int mag_points = 1000;
    int phase_points = 64;
    int refine_rounds = 0;
    double mag_lo = 0.0;  // 0 = derive the bracket from the norms
    double mag_hi = 0.0;
};
double brute_oracle(const SupportedVec& f, const SupportedVec& g, const GroupPoint& s,
                    const GammaSet& gamma, double p, const Weight& w, const OracleGrid& grid);

/// || T_s f - T_{s0} f ||_{p,w} for each approach point s.
std::vector<double> continuity_probe(const SupportedVec& f, const GroupPoint& s0,
                                     const std::vector<GroupPoint>& approach, const Weight& w,
                                     double p);

}  // namespace orbitforge

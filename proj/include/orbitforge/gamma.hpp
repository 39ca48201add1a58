#pragma once

#include <optional>
#include <vector>

#include "orbitforge/common.hpp"

namespace orbitforge {

/// Scalar set descriptor. Only the magnitude structure matters for every
/// density criterion, so phases are collapsed at construction; the
/// approximation layer reintroduces phases where they matter.
struct GammaSet {
    enum class Kind { Singleton, Annulus, ZeroToOne, OneToInf, AllNonzero, Grid };
    Kind kind = Kind::AllNonzero;
    double r = 1.0, R = 1.0;            // Annulus / Singleton magnitude (r)
    std::vector<double> grid;           // Grid magnitudes, sorted ascending

    static GammaSet all_nonzero() { return GammaSet{Kind::AllNonzero, 1.0, 1.0, {}}; }
    static GammaSet singleton(cplx lambda0);
    static GammaSet annulus(double r, double R);
    static GammaSet zero_to_one() { return GammaSet{Kind::ZeroToOne, 1.0, 1.0, {}}; }
    static GammaSet one_to_inf() { return GammaSet{Kind::OneToInf, 1.0, 1.0, {}}; }
    static GammaSet grid_of(std::vector<cplx> points);

    /// Largest / smallest magnitude in |Gamma|, +inf / 0 for unbounded ends.
    double mag_min() const;
    double mag_max() const;
    /// Closest member of |Gamma| to a target magnitude (clamp / snap).
    double project_magnitude(double target) const;
};

/// inf over |Gamma| of max{|lambda| c, d / |lambda|} with its argmin.
/// attained = false when the infimum is only a limit (e.g. c = 0 with
/// magnitudes unbounded above).
struct GammaObjective {
    double value = 0.0;
    double argmin_magnitude = 1.0;
    bool attained = true;
};

GammaObjective objective(double c, double d, const GammaSet& g);

/// log2-scale variant used by the criterion checkers: takes log2 c, log2 d
/// (extended reals) and returns log2 of the objective value. When
/// log_argmin is given it receives log2 of the minimizing magnitude
/// (clamped into the set; +-inf for limit-only infima).
double objective_log2(double lc, double ld, const GammaSet& g, double* log_argmin = nullptr);

/// Decides whether some lambda in Gamma\{0} satisfies both strict
/// inequalities |lambda| c < eps and d/|lambda| < eps, i.e. whether
/// |Gamma| meets the open interval (d/eps, eps/c). Returns the witness.
struct Feasibility {
    bool ok = false;
    double witness_magnitude = 1.0;
};
Feasibility feasible(double c, double d, double eps, const GammaSet& g);
Feasibility feasible_log2(double lc, double ld, double leps, const GammaSet& g);

}  // namespace orbitforge

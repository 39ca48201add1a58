#pragma once

#include <string>
#include <vector>

#include "orbitforge/gamma.hpp"
#include "orbitforge/plan.hpp"
#include "orbitforge/shifts.hpp"
#include "orbitforge/weights.hpp"

namespace orbitforge {

/// Integer range on which a FailsCertified bound was derived. Re-evaluating
/// the criterion functional anywhere in it stays >= the bound.
struct DerivationWindow {
    std::int64_t q = 0;       // functional parameter, where applicable
    std::int64_t n_lo = 0;    // range start
    bool unbounded = true;    // extends to +inf
    std::int64_t n_hi = 0;    // used when bounded (finite shift lists)
};

struct CriterionWitness {
    GroupPoint s;
    double lambda_magnitude = 1.0;
    Window window;            // window the inequality was checked on
    double achieved = 0.0;    // functional value at the witness
    std::int64_t q = 0;       // sub-criterion index, where applicable
};

struct Verdict {
    enum class Type { HoldsCertified, HoldsNumeric, FailsCertified, Inconclusive };
    Type type = Type::Inconclusive;
    double bound = 0.0;          // FailsCertified: positive lower bound
    DerivationWindow window;     // FailsCertified: where the bound holds
    std::int64_t horizon = 0;
    double best_margin = 0.0;    // smallest functional value seen
};

std::string verdict_name(Verdict::Type t);

struct CriterionReport {
    std::string kind;
    Verdict verdict;
    std::vector<CriterionWitness> witnesses;
    bool s_admissible = true;
    bool g_admissible = true;
    std::string annotation;            // e.g. the admissibility caveat
    std::string cross_check_kind;      // secondary criterion consulted
    std::string cross_check_verdict;
    // checker parameters echoed into the report, serialized as an object
    std::vector<std::pair<std::string, std::string>> params;
};

// --- criterion functionals (exposed for witness re-validation) -------------

/// log2( w(n+q) + w(-n+q) )
double salas_sum_log2(const DiscreteWeight& w, std::int64_t q, std::int64_t n);
/// log2( w(n+q) * w(-n+q) )
double salas_product_log2(const DiscreteWeight& w, std::int64_t q, std::int64_t n);
/// log2 of inf over |Gamma| of max{|l| w(s), w(-s)/|l|}
double pointwise_value_log2(const Weight& w, const GammaSet& g, const GroupPoint& s);

// --- checkers ---------------------------------------------------------------

/// Shift-orbit density criterion on Z: holds iff
/// liminf_n [w(n+q) + w(-n+q)] = 0 for every q >= 0. Certified through the
/// tail models, which decide the liminf for every q at once.
CriterionReport salas_hypercyclic(const DiscreteWeight& w, std::int64_t q_max, std::int64_t horizon);

/// Projective variant: the product w(n+q) * w(-n+q) replaces the sum.
CriterionReport salas_supercyclic(const DiscreteWeight& w, std::int64_t q_max, std::int64_t horizon);

/// Scalar-set criterion: tests inf over s in S of
/// inf_{l in Gamma\0} max{|l| w(s), w(-s)/|l|} = 0.
/// Carries if-and-only-if meaning only for weights admissible under every
/// group translation; the report records the admissibility flags.
CriterionReport pointwise_gamma(const Weight& w, const ShiftSet& s, const GammaSet& g,
                                std::int64_t horizon);

/// E = {t in F : w(s+t) <= theta_c and w(-s+t) <= theta_d} as an exact
/// union of intervals, with the discarded measure.
struct GoodSubset {
    Window subset;
    double deficit = 0.0;
};
GoodSubset select_good_subset(const RealWeight& w, const Window& f, const GroupPoint& s,
                              double theta_c, double theta_d);

/// One window/threshold pair of a checking schedule.
struct ScheduleItem {
    Window window;
    double eps = 0.0;
};
std::vector<ScheduleItem> default_schedule(int m_max);

/// Density criterion for abelian shift families: for each (F_m, eps_m)
/// find s in S and lambda in Gamma with |lambda| sup_{F} w(s+t) < eps_m and
/// sup_F w(-s+t) / |lambda| < eps_m; on R a sub-level subset E of F with
/// deficit < eps_m may be carved out first. On Z, E = F always.
/// p_norm_variant replaces the sups by local p-norms.
CriterionReport abelian_density_check(const Weight& w, const ShiftSet& s, const GammaSet& g,
                                      double p, const std::vector<ScheduleItem>& schedule,
                                      std::int64_t horizon, bool p_norm_variant = false);

/// Exact partial double series
///   sum_{0 <= n,k <= N, n != k} (|l_n|/|l_k|)^p * || w ||^p_{p, K_k - s_k + s_n}
/// with the implicit step 0, plus exact pairwise-disjointness verification.
/// alpha_weighted multiplies each term by alpha_k.
struct SeriesEval {
    double partial_sum = 0.0;
    bool disjoint_ok = true;
    std::vector<std::vector<double>> terms;  // (N+1) x (N+1), diagonal zero
};
SeriesEval plan_series(const SynthesisPlan& plan, const Weight& w, double p, int n,
                       bool alpha_weighted = false);

/// Greedy constructor of a synthesis plan: at step n choose (s_n, l_n) with
/// the shifted window disjoint from all earlier ones and the three budget
/// sums below 2^-n. Failure to extend is Inconclusive, never Fails.
struct GreedyResult {
    bool ok = false;
    SynthesisPlan plan;
    int failed_step = 0;
    double best_margin = 0.0;  // smallest infeasibility ratio seen at the failed step
};
GreedyResult greedy_plan(const Weight& w, const ShiftSet& s, const GammaSet& g, double p,
                         const std::vector<Window>& target_windows,
                         const std::vector<double>& alphas, std::int64_t horizon);

}  // namespace orbitforge

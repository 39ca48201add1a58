#pragma once

#include <vector>

#include "orbitforge/plan.hpp"

namespace orbitforge {

/// Parameters of the deterministic target enumeration. Targets are
/// finitely supported vectors on Z with dyadic coefficients; level l
/// uses support radius radius_base + l and coefficient exponents up to
/// min(l, coeff_depth).
struct TargetConfig {
    int width = 1;        // tuple width N >= 1
    int coeff_depth = 1;  // dyadic exponent range of the palette
    int radius_base = 0;  // radius of level 0
};

/// Deterministic stream of N-tuples. The stream index is folded through
/// a ruler pairing, so every base tuple recurs infinitely often; tuple
/// components are decoded from independently de-interleaved sub-indices.
class TargetStream {
public:
    explicit TargetStream(TargetConfig cfg);

    const TargetConfig& config() const { return cfg_; }
    /// Tuple at stream index k (width vectors, space Z).
    std::vector<SupportedVec> tuple(std::int64_t k) const;
    /// Base tuple index the ruler pairing maps k to.
    static std::int64_t base_index(std::int64_t k);
    /// max over components of (sup norm)^p: the budget attached to index k.
    double alpha(std::int64_t k, double p) const;

private:
    SupportedVec component(std::int64_t sub_index) const;
    TargetConfig cfg_;
};

TargetStream enumerate_targets(const TargetConfig& cfg);

/// Increasing plan windows: window i is the support hull of all tuples up
/// to stream index i (padded to include the origin).
std::vector<Window> plan_windows(const TargetStream& targets, int count);

struct Certificate {
    int n = 0;
    double bound = 0.0;      // B_n
    double bound_pow = 0.0;  // B_n^p
};

/// Truncated series candidate with per-target error certificates. The
/// certificates are recomputable from the plan and the weight alone.
struct DenseVectorCandidate {
    std::vector<SupportedVec> components;
    SynthesisPlan plan;
    int truncation = 0;
    std::vector<Certificate> certificates;
    double norm_bound_pow = 0.0;  // recorded bound on ||f_j||^p
};

/// f_j = sum_{n <= truncation} (1/lambda_n) translate(g_{j,n}, -s_n).
/// Requires a discrete plan with at least `truncation` steps whose windows
/// contain the matching tuple supports.
DenseVectorCandidate build_vector(const SynthesisPlan& plan, const TargetStream& targets,
                                  int truncation);

/// Certified upper bound B_n on max_j || lambda_n T_{s_n} f_j - g_n ||_{p,w}.
double certify(const DenseVectorCandidate& cand, int n);

}  // namespace orbitforge

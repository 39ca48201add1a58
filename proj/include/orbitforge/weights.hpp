#pragma once

#include <variant>
#include <vector>

#include "orbitforge/asymptotics.hpp"
#include "orbitforge/group.hpp"
#include "orbitforge/shifts.hpp"

namespace orbitforge {

/// Certified tail behaviour of a discrete weight, on a log2 scale.
/// Two families cover every bundled example:
///   Log2Affine:    log2 w(n) = a + b*n
///   Log2DoubleExp: log2 w(n) = sign * c * 2^(b*n), c > 0
/// Both are monotone throughout their tail, which is what turns
/// horizon-bounded suprema into true suprema.
struct TailModel {
    enum class Kind { Log2Affine, Log2DoubleExp };
    Kind kind = Kind::Log2Affine;
    double a = 0.0, b = 0.0;  // affine part (b doubles as the dexp rate)
    int sign = 1;             // dexp only
    double c = 0.0;           // dexp only, c > 0

    static TailModel affine(double a, double b) { return TailModel{Kind::Log2Affine, a, b, 1, 0.0}; }
    static TailModel double_exp(int sign, double c, double b) {
        return TailModel{Kind::Log2DoubleExp, 0.0, b, sign, c};
    }

    double log2_eval(double n) const;
    /// log2 w(dir*n + shift) as an ExpSum in n (n -> +inf).
    ExpSum asym(int dir, double shift) const;
    /// Limit of log2 w(n) as n -> dir * inf  (extended real).
    double limit_log2(int dir) const;
};

/// Weight on Z: explicit positive values on [lo, hi], certified tail
/// models outside. Tails must agree with the edge values to 1e-12 rel.
struct DiscreteWeight {
    std::int64_t lo = 0, hi = 0;
    std::vector<double> values;
    TailModel left, right;

    double eval_at(std::int64_t n) const;
    double log2_at(double n) const;
    void validate() const;
};

enum class SegKind { Const, Affine, Exp2, Recip };

/// One piecewise-model segment in anchor-local coordinate u = t - anchor:
///   Const:  A            Affine: A + B*u
///   Exp2:   A * 2^(B*u)  Recip:  A / u   (span excludes u = 0)
struct Segment {
    double lo = 0.0, hi = 0.0;
    SegKind kind = SegKind::Const;
    double A = 1.0, B = 0.0;
};

/// Weight on R: anchored piecewise segments, default value off all
/// segments. Segments within an anchor are contiguous and non-overlapping;
/// all segments evaluate strictly positive on their closed spans.
struct RealWeight {
    AnchorTablePtr anchors;
    std::vector<std::pair<int, std::vector<Segment>>> per_anchor;  // sorted by anchor id
    double default_value = 1.0;

    double eval_local(int anchor, double u) const;
    double eval_abs(double t) const;
    void validate() const;
    /// Copy with only the first `keep` anchors' segments (divergence probe).
    RealWeight truncated(int keep) const;
};

using Weight = std::variant<DiscreteWeight, RealWeight>;

Space weight_space(const Weight& w);
double eval(const Weight& w, const GroupPoint& t);

/// Integral of w^p over K (counting measure on Z, closed forms on R).
double local_norm_pow(const Weight& w, const Window& k, double p);
/// (integral of w^p over K)^(1/p); p >= 1.
double local_norm(const Weight& w, const Window& k, double p);

double weighted_norm_pow(const SupportedVec& f, const Weight& w, double p);
double weighted_norm(const SupportedVec& f, const Weight& w, double p);

/// Exact supremum of w over K (max on Z, per-segment monotone analysis on R).
double sup_on(const Weight& w, const Window& k);

/// {t in K : w(shift + t) <= threshold} as an exact window (R only).
Window sublevel_set(const RealWeight& w, const Window& k, const GroupPoint& shift, double threshold);

/// Translation-operator norm  M(s) = sup_t w(s+t)/w(t).
/// certified: the tail analysis (Z) or the complete segment-pair analysis
/// (R) covers the whole line. A certified infinite value is a result, not
/// an error. diverging: the value keeps growing when the anchor horizon is
/// extended, so the finite value is only a lower bound (R only).
struct MBound {
    double value = 0.0;
    bool certified = false;
    GroupPoint witness;
    bool diverging = false;
};

MBound m_bound(const Weight& w, const GroupPoint& s, std::int64_t horizon);

struct AdmissibilityEntry {
    GroupPoint s;
    MBound bound;
};
struct AdmissibilityReport {
    std::vector<AdmissibilityEntry> entries;
    bool admissible_up_to_horizon = true;
    bool certified = true;
    std::int64_t horizon = 0;
};

/// Per-shift M(s) over S enumerated within the horizon.
AdmissibilityReport admissible(const Weight& w, const ShiftSet& s, std::int64_t horizon);

}  // namespace orbitforge

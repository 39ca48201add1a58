#pragma once

#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "orbitforge/common.hpp"

namespace orbitforge {

enum class Space { Z, Zd, R };

/// Strictly increasing integer anchor positions with positions[0] = 0.
/// Real-line coordinates are stored anchor-locally: a point is an anchor
/// index plus a double offset, so arithmetic near a large anchor keeps
/// full relative precision. Cross-anchor operations resolve through the
/// exact integer positions.
class AnchorTable {
public:
    AnchorTable() : positions_{0} {}
    explicit AnchorTable(std::vector<std::int64_t> positions);

    /// Anchors 0, a_2 = 2!, a_3 = 3!, ..., a_nmax = nmax!. nmax <= 14 so
    /// every position stays an exact int64 (and an exact double).
    static AnchorTable factorial(int nmax);

    std::int64_t position(int id) const;
    int size() const { return static_cast<int>(positions_.size()); }
    const std::vector<std::int64_t>& positions() const { return positions_; }

    /// Index of the anchor closest to the given absolute position.
    int nearest(double absolute) const;

private:
    std::vector<std::int64_t> positions_;
};

using AnchorTablePtr = std::shared_ptr<const AnchorTable>;

/// Point of the real line as anchor + offset. anchor 0 is the origin.
struct RealPoint {
    int anchor = 0;
    double offset = 0.0;
};

/// Element of one of the supported ambient groups (all abelian; the
/// group operation is addition).
class GroupPoint {
public:
    GroupPoint() : v_(std::int64_t{0}) {}
    static GroupPoint integer(std::int64_t n) { return GroupPoint(n); }
    static GroupPoint lattice(std::vector<std::int64_t> v) { return GroupPoint(std::move(v)); }
    static GroupPoint real(int anchor, double offset) { return GroupPoint(RealPoint{anchor, offset}); }
    static GroupPoint real(double offset) { return GroupPoint(RealPoint{0, offset}); }

    Space space() const;
    std::int64_t as_int() const;
    const std::vector<std::int64_t>& as_lattice() const;
    const RealPoint& as_real() const;

    /// Absolute real coordinate; requires the owning anchor table.
    double absolute(const AnchorTable& t) const;

private:
    explicit GroupPoint(std::int64_t n) : v_(n) {}
    explicit GroupPoint(std::vector<std::int64_t> v) : v_(std::move(v)) {}
    explicit GroupPoint(RealPoint p) : v_(p) {}
    std::variant<std::int64_t, std::vector<std::int64_t>, RealPoint> v_;
};

GroupPoint add(const GroupPoint& a, const GroupPoint& b, const AnchorTable* table = nullptr);
GroupPoint negate(const GroupPoint& a);
GroupPoint identity(Space s, int dim = 1);
bool same_point(const GroupPoint& a, const GroupPoint& b, const AnchorTable* table = nullptr);

/// Canonical search order: by magnitude, positive before negative.
/// Used for deterministic tie-breaks in witness reductions.
bool canon_less(const GroupPoint& a, const GroupPoint& b, const AnchorTable* table = nullptr);

// ---------------------------------------------------------------------------
// Windows (compact subsets)
// ---------------------------------------------------------------------------

/// Closed integer interval [lo, hi]; empty iff lo > hi.
struct IntInterval {
    std::int64_t lo = 0, hi = -1;
    bool empty() const { return lo > hi; }
};

/// Axis-aligned box in Z^d, closed per axis.
struct IntBox {
    std::vector<std::int64_t> lo, hi;
};

/// Anchored real span [anchor + lo, anchor + hi], lo <= hi.
struct RealSpan {
    int anchor = 0;
    double lo = 0.0, hi = 0.0;
};

/// Finite union of anchored spans, pairwise disjoint after resolving
/// anchors, kept sorted by absolute position.
struct RealUnion {
    AnchorTablePtr anchors;
    std::vector<RealSpan> spans;
};

class Window {
public:
    Window() : v_(IntInterval{}) {}
    static Window interval(std::int64_t lo, std::int64_t hi) { return Window(IntInterval{lo, hi}); }
    static Window empty_interval() { return Window(IntInterval{0, -1}); }
    static Window box(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi);
    static Window real_union(AnchorTablePtr anchors, std::vector<RealSpan> spans);

    Space space() const;
    const IntInterval& as_interval() const;
    const IntBox& as_box() const;
    const RealUnion& as_union() const;
    bool is_empty() const;

private:
    explicit Window(IntInterval i) : v_(i) {}
    explicit Window(IntBox b) : v_(std::move(b)) {}
    explicit Window(RealUnion u) : v_(std::move(u)) {}
    std::variant<IntInterval, IntBox, RealUnion> v_;
};

Window shift_window(const Window& k, const GroupPoint& s);
bool disjoint(const Window& k1, const Window& k2);
Window intersect_windows(const Window& k1, const Window& k2);
/// Counting measure on Z/Z^d, total length on R.
double measure(const Window& k);

// ---------------------------------------------------------------------------
// Finitely supported vectors
// ---------------------------------------------------------------------------

/// Finitely supported function on Z or Z^d. Entries are kept sorted
/// (lexicographically) with all coefficients nonzero, so iteration order
/// and downstream sums are deterministic.
struct DiscreteVec {
    int dim = 1;
    std::vector<std::pair<std::vector<std::int64_t>, cplx>> entries;
};

/// Finite step function on R: disjoint half-open anchored intervals
/// [lo, hi) with constant nonzero complex values.
struct StepPart {
    int anchor = 0;
    double lo = 0.0, hi = 0.0;
    cplx coef;
};
struct StepVec {
    AnchorTablePtr anchors;
    std::vector<StepPart> parts;
};

class SupportedVec {
public:
    SupportedVec() : v_(DiscreteVec{}) {}
    static SupportedVec discrete(DiscreteVec d);
    static SupportedVec step(StepVec s);
    /// Point mass at an integer.
    static SupportedVec delta(std::int64_t at, cplx coef = 1.0);

    Space space() const;
    const DiscreteVec& as_discrete() const;
    const StepVec& as_step() const;
    bool is_zero() const;

private:
    explicit SupportedVec(DiscreteVec d) : v_(std::move(d)) {}
    explicit SupportedVec(StepVec s) : v_(std::move(s)) {}
    std::variant<DiscreteVec, StepVec> v_;
};

/// (T_s f)(t) = f(t - s): support moves by +s, coefficients unchanged.
SupportedVec translate(const SupportedVec& f, const GroupPoint& s);

/// Characteristic function of a finite-measure window scaled by coef.
/// An empty window gives the empty vector.
SupportedVec indicator(const Window& k, cplx coef);

SupportedVec scale(const SupportedVec& f, cplx factor);
/// a + b pointwise; cancellations remove entries.
SupportedVec vec_add(const SupportedVec& a, const SupportedVec& b);
SupportedVec vec_sub(const SupportedVec& a, const SupportedVec& b);

double sup_norm(const SupportedVec& f);
/// Smallest window containing the support (interval / box / span union).
Window support_hull(const SupportedVec& f);
bool vec_equal(const SupportedVec& a, const SupportedVec& b, double tol = 0.0);

}  // namespace orbitforge

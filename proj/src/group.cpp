#include "orbitforge/group.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace orbitforge {

int worker_count() {
    if (const char* env = std::getenv("ORBITFORGE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// ---------------------------------------------------------------------------
// AnchorTable
// ---------------------------------------------------------------------------

AnchorTable::AnchorTable(std::vector<std::int64_t> positions) : positions_(std::move(positions)) {
    if (positions_.empty() || positions_[0] != 0)
        throw ArgumentError("anchor table must start at position 0");
    for (std::size_t i = 1; i < positions_.size(); ++i)
        if (positions_[i] <= positions_[i - 1])
            throw ArgumentError("anchor positions must be strictly increasing");
}

AnchorTable AnchorTable::factorial(int nmax) {
    if (nmax < 2 || nmax > 14) throw ArgumentError("factorial anchors need 2 <= nmax <= 14");
    std::vector<std::int64_t> pos{0};
    std::int64_t f = 2;  // 2!
    for (int n = 2; n <= nmax; ++n) {
        pos.push_back(f);
        f *= (n + 1);
    }
    return AnchorTable(std::move(pos));
}

std::int64_t AnchorTable::position(int id) const {
    if (id < 0 || id >= size()) throw ArgumentError("anchor id out of range");
    return positions_[static_cast<std::size_t>(id)];
}

int AnchorTable::nearest(double absolute) const {
    auto it = std::lower_bound(positions_.begin(), positions_.end(), absolute);
    if (it == positions_.end()) return size() - 1;
    if (it == positions_.begin()) return 0;
    double up = static_cast<double>(*it) - absolute;
    double down = absolute - static_cast<double>(*(it - 1));
    return static_cast<int>(down <= up ? (it - positions_.begin()) - 1 : it - positions_.begin());
}

// ---------------------------------------------------------------------------
// GroupPoint
// ---------------------------------------------------------------------------

Space GroupPoint::space() const {
    if (std::holds_alternative<std::int64_t>(v_)) return Space::Z;
    if (std::holds_alternative<std::vector<std::int64_t>>(v_)) return Space::Zd;
    return Space::R;
}

std::int64_t GroupPoint::as_int() const {
    if (space() != Space::Z) throw SpaceMismatchError("point is not in Z");
    return std::get<std::int64_t>(v_);
}

const std::vector<std::int64_t>& GroupPoint::as_lattice() const {
    if (space() != Space::Zd) throw SpaceMismatchError("point is not in Z^d");
    return std::get<std::vector<std::int64_t>>(v_);
}

const RealPoint& GroupPoint::as_real() const {
    if (space() != Space::R) throw SpaceMismatchError("point is not in R");
    return std::get<RealPoint>(v_);
}

double GroupPoint::absolute(const AnchorTable& t) const {
    const RealPoint& p = as_real();
    return static_cast<double>(t.position(p.anchor)) + p.offset;
}

GroupPoint add(const GroupPoint& a, const GroupPoint& b, const AnchorTable* table) {
    if (a.space() != b.space()) throw SpaceMismatchError("cannot add points from different spaces");
    switch (a.space()) {
        case Space::Z:
            return GroupPoint::integer(a.as_int() + b.as_int());
        case Space::Zd: {
            const auto& x = a.as_lattice();
            const auto& y = b.as_lattice();
            if (x.size() != y.size()) throw SpaceMismatchError("lattice dimension mismatch");
            std::vector<std::int64_t> r(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
            return GroupPoint::lattice(std::move(r));
        }
        case Space::R: {
            const RealPoint& p = a.as_real();
            const RealPoint& q = b.as_real();
            if (!table) {
                if (p.anchor == 0 || q.anchor == 0) {
                    // anchor positions unknown only matter when both are anchored
                    int anchor = p.anchor != 0 ? p.anchor : q.anchor;
                    return GroupPoint::real(anchor, p.offset + q.offset);
                }
                throw ArgumentError("adding two anchored real points needs the anchor table");
            }
            std::int64_t base = table->position(p.anchor) + table->position(q.anchor);
            double off = p.offset + q.offset;
            int m = table->nearest(static_cast<double>(base));
            return GroupPoint::real(m, static_cast<double>(base - table->position(m)) + off);
        }
    }
    throw ArgumentError("unreachable");
}

GroupPoint negate(const GroupPoint& a) {
    switch (a.space()) {
        case Space::Z:
            return GroupPoint::integer(-a.as_int());
        case Space::Zd: {
            std::vector<std::int64_t> r = a.as_lattice();
            for (auto& x : r) x = -x;
            return GroupPoint::lattice(std::move(r));
        }
        case Space::R: {
            const RealPoint& p = a.as_real();
            if (p.anchor != 0)
                // negation of an anchored point leaves the anchor grid;
                // callers that need it should work with absolute shifts
                throw ArgumentError("negate: only origin-anchored real points are supported");
            return GroupPoint::real(0, -p.offset);
        }
    }
    throw ArgumentError("unreachable");
}

GroupPoint identity(Space s, int dim) {
    switch (s) {
        case Space::Z: return GroupPoint::integer(0);
        case Space::Zd: return GroupPoint::lattice(std::vector<std::int64_t>(static_cast<std::size_t>(dim), 0));
        case Space::R: return GroupPoint::real(0, 0.0);
    }
    throw ArgumentError("unreachable");
}

bool same_point(const GroupPoint& a, const GroupPoint& b, const AnchorTable* table) {
    if (a.space() != b.space()) return false;
    switch (a.space()) {
        case Space::Z: return a.as_int() == b.as_int();
        case Space::Zd: return a.as_lattice() == b.as_lattice();
        case Space::R: {
            const RealPoint& p = a.as_real();
            const RealPoint& q = b.as_real();
            if (p.anchor == q.anchor) return p.offset == q.offset;
            if (!table) return false;
            return static_cast<double>(table->position(p.anchor) - table->position(q.anchor)) ==
                   q.offset - p.offset;
        }
    }
    return false;
}

bool canon_less(const GroupPoint& a, const GroupPoint& b, const AnchorTable* table) {
    auto key_z = [](std::int64_t n) {
        return std::pair<std::uint64_t, int>(n < 0 ? static_cast<std::uint64_t>(-(n + 1)) * 2 + 1
                                                   : static_cast<std::uint64_t>(n) * 2,
                                             0);
    };
    if (a.space() != b.space()) return static_cast<int>(a.space()) < static_cast<int>(b.space());
    switch (a.space()) {
        case Space::Z:
            return key_z(a.as_int()) < key_z(b.as_int());
        case Space::Zd: {
            const auto& x = a.as_lattice();
            const auto& y = b.as_lattice();
            std::int64_t nx = 0, ny = 0;
            for (auto v : x) nx += std::llabs(v);
            for (auto v : y) ny += std::llabs(v);
            if (nx != ny) return nx < ny;
            return x < y;
        }
        case Space::R: {
            double xa = table ? a.absolute(*table) : a.as_real().offset;
            double xb = table ? b.absolute(*table) : b.as_real().offset;
            if (std::fabs(xa) != std::fabs(xb)) return std::fabs(xa) < std::fabs(xb);
            return xa > xb;  // positive first
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Window
// ---------------------------------------------------------------------------

namespace {

// Exact-as-possible comparison of two anchored positions: the integer
// anchor difference is exact, offsets are compared against it.
int cmp_anchored(const AnchorTable& t, int a1, double o1, int a2, double o2) {
    double d = static_cast<double>(t.position(a1) - t.position(a2)) + (o1 - o2);
    if (d < 0) return -1;
    if (d > 0) return 1;
    return 0;
}

void require_same_table(const AnchorTablePtr& a, const AnchorTablePtr& b) {
    if (!a || !b) throw ArgumentError("real object missing its anchor table");
    if (a != b && a->positions() != b->positions())
        throw SpaceMismatchError("objects use different anchor tables");
}

}  // namespace

Window Window::box(std::vector<std::int64_t> lo, std::vector<std::int64_t> hi) {
    if (lo.size() != hi.size() || lo.empty()) throw ArgumentError("box bounds must have equal nonzero dimension");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i]) throw ArgumentError("box lo > hi");
    return Window(IntBox{std::move(lo), std::move(hi)});
}

Window Window::real_union(AnchorTablePtr anchors, std::vector<RealSpan> spans) {
    if (!anchors) throw ArgumentError("real window needs an anchor table");
    for (const auto& s : spans) {
        if (!(s.lo <= s.hi) || !std::isfinite(s.lo) || !std::isfinite(s.hi))
            throw ArgumentError("real span needs finite lo <= hi");
        (void)anchors->position(s.anchor);
    }
    std::sort(spans.begin(), spans.end(), [&](const RealSpan& x, const RealSpan& y) {
        return cmp_anchored(*anchors, x.anchor, x.lo, y.anchor, y.lo) < 0;
    });
    // drop zero-length spans, require disjoint interiors
    std::vector<RealSpan> keep;
    for (const auto& s : spans) {
        if (s.lo == s.hi) continue;
        if (!keep.empty()) {
            const auto& prev = keep.back();
            if (cmp_anchored(*anchors, s.anchor, s.lo, prev.anchor, prev.hi) < 0)
                throw ArgumentError("real union spans overlap");
        }
        keep.push_back(s);
    }
    return Window(RealUnion{std::move(anchors), std::move(keep)});
}

Space Window::space() const {
    if (std::holds_alternative<IntInterval>(v_)) return Space::Z;
    if (std::holds_alternative<IntBox>(v_)) return Space::Zd;
    return Space::R;
}

const IntInterval& Window::as_interval() const {
    if (space() != Space::Z) throw SpaceMismatchError("window is not an integer interval");
    return std::get<IntInterval>(v_);
}
const IntBox& Window::as_box() const {
    if (space() != Space::Zd) throw SpaceMismatchError("window is not a lattice box");
    return std::get<IntBox>(v_);
}
const RealUnion& Window::as_union() const {
    if (space() != Space::R) throw SpaceMismatchError("window is not a real union");
    return std::get<RealUnion>(v_);
}

bool Window::is_empty() const {
    switch (space()) {
        case Space::Z: return as_interval().empty();
        case Space::Zd: return false;  // boxes are validated non-empty
        case Space::R: return as_union().spans.empty();
    }
    return true;
}

Window shift_window(const Window& k, const GroupPoint& s) {
    if (k.space() != s.space()) throw SpaceMismatchError("window/shift space mismatch");
    switch (k.space()) {
        case Space::Z: {
            const auto& i = k.as_interval();
            if (i.empty()) return Window::empty_interval();
            return Window::interval(i.lo + s.as_int(), i.hi + s.as_int());
        }
        case Space::Zd: {
            IntBox b = k.as_box();
            const auto& v = s.as_lattice();
            if (v.size() != b.lo.size()) throw SpaceMismatchError("lattice dimension mismatch");
            for (std::size_t i = 0; i < v.size(); ++i) {
                b.lo[i] += v[i];
                b.hi[i] += v[i];
            }
            return Window::box(std::move(b.lo), std::move(b.hi));
        }
        case Space::R: {
            const RealUnion& u = k.as_union();
            const RealPoint& p = s.as_real();
            std::int64_t sbase = u.anchors->position(p.anchor);
            std::vector<RealSpan> spans;
            spans.reserve(u.spans.size());
            for (const auto& sp : u.spans) {
                std::int64_t base = u.anchors->position(sp.anchor) + sbase;
                int m = u.anchors->nearest(static_cast<double>(base));
                double shift = static_cast<double>(base - u.anchors->position(m)) + p.offset;
                spans.push_back(RealSpan{m, sp.lo + shift, sp.hi + shift});
            }
            return Window::real_union(u.anchors, std::move(spans));
        }
    }
    throw ArgumentError("unreachable");
}

bool disjoint(const Window& k1, const Window& k2) {
    if (k1.space() != k2.space()) throw SpaceMismatchError("window space mismatch");
    switch (k1.space()) {
        case Space::Z: {
            const auto& a = k1.as_interval();
            const auto& b = k2.as_interval();
            if (a.empty() || b.empty()) return true;
            return a.hi < b.lo || b.hi < a.lo;
        }
        case Space::Zd: {
            const auto& a = k1.as_box();
            const auto& b = k2.as_box();
            if (a.lo.size() != b.lo.size()) throw SpaceMismatchError("lattice dimension mismatch");
            for (std::size_t i = 0; i < a.lo.size(); ++i)
                if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return true;
            return false;
        }
        case Space::R: {
            const RealUnion& a = k1.as_union();
            const RealUnion& b = k2.as_union();
            if (a.spans.empty() || b.spans.empty()) return true;
            require_same_table(a.anchors, b.anchors);
            const AnchorTable& t = *a.anchors;
            // sorted spans: sweep both lists; only interior overlap counts
            std::size_t i = 0, j = 0;
            while (i < a.spans.size() && j < b.spans.size()) {
                const RealSpan& x = a.spans[i];
                const RealSpan& y = b.spans[j];
                bool x_before = cmp_anchored(t, x.anchor, x.hi, y.anchor, y.lo) <= 0;
                bool y_before = cmp_anchored(t, y.anchor, y.hi, x.anchor, x.lo) <= 0;
                if (x_before)
                    ++i;
                else if (y_before)
                    ++j;
                else
                    return false;
            }
            return true;
        }
    }
    return true;
}

Window intersect_windows(const Window& k1, const Window& k2) {
    if (k1.space() != k2.space()) throw SpaceMismatchError("window space mismatch");
    switch (k1.space()) {
        case Space::Z: {
            const auto& a = k1.as_interval();
            const auto& b = k2.as_interval();
            if (a.empty() || b.empty()) return Window::empty_interval();
            std::int64_t lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
            if (lo > hi) return Window::empty_interval();
            return Window::interval(lo, hi);
        }
        case Space::Zd: {
            const auto& a = k1.as_box();
            const auto& b = k2.as_box();
            if (a.lo.size() != b.lo.size()) throw SpaceMismatchError("lattice dimension mismatch");
            std::vector<std::int64_t> lo(a.lo.size()), hi(a.lo.size());
            for (std::size_t i = 0; i < a.lo.size(); ++i) {
                lo[i] = std::max(a.lo[i], b.lo[i]);
                hi[i] = std::min(a.hi[i], b.hi[i]);
                if (lo[i] > hi[i]) throw ArgumentError("empty box intersection is not representable");
            }
            return Window::box(std::move(lo), std::move(hi));
        }
        case Space::R: {
            const RealUnion& a = k1.as_union();
            const RealUnion& b = k2.as_union();
            require_same_table(a.anchors, b.anchors);
            const AnchorTable& t = *a.anchors;
            std::vector<RealSpan> out;
            std::size_t i = 0, j = 0;
            while (i < a.spans.size() && j < b.spans.size()) {
                const RealSpan& x = a.spans[i];
                const RealSpan& y = b.spans[j];
                // overlap in x's frame
                double shift = static_cast<double>(t.position(y.anchor) - t.position(x.anchor));
                double lo = std::max(x.lo, y.lo + shift);
                double hi = std::min(x.hi, y.hi + shift);
                if (lo < hi) out.push_back(RealSpan{x.anchor, lo, hi});
                if (cmp_anchored(t, x.anchor, x.hi, y.anchor, y.hi) <= 0)
                    ++i;
                else
                    ++j;
            }
            return Window::real_union(a.anchors, std::move(out));
        }
    }
    throw ArgumentError("unreachable");
}

double measure(const Window& k) {
    switch (k.space()) {
        case Space::Z: {
            const auto& i = k.as_interval();
            return i.empty() ? 0.0 : static_cast<double>(i.hi - i.lo + 1);
        }
        case Space::Zd: {
            const auto& b = k.as_box();
            double m = 1.0;
            for (std::size_t i = 0; i < b.lo.size(); ++i)
                m *= static_cast<double>(b.hi[i] - b.lo[i] + 1);
            return m;
        }
        case Space::R: {
            double m = 0.0;
            for (const auto& s : k.as_union().spans) m += s.hi - s.lo;
            return m;
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// SupportedVec
// ---------------------------------------------------------------------------

namespace {

void normalize(DiscreteVec& d) {
    std::sort(d.entries.begin(), d.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::vector<std::int64_t>, cplx>> out;
    for (auto& e : d.entries) {
        if (static_cast<int>(e.first.size()) != d.dim)
            throw SpaceMismatchError("discrete entry dimension mismatch");
        if (!out.empty() && out.back().first == e.first)
            out.back().second += e.second;
        else
            out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second == cplx(0.0, 0.0); }),
              out.end());
    d.entries = std::move(out);
}

// Split the real line at every part boundary of a and b, then emit the
// summed coefficient per elementary piece. Exact for shared anchor grids.
StepVec merge_steps(const StepVec& a, const StepVec& b, cplx wa, cplx wb) {
    require_same_table(a.anchors, b.anchors);
    const AnchorTable& t = *a.anchors;
    struct Edge {
        int anchor;
        double off;
        cplx delta;
    };
    std::vector<Edge> edges;
    for (const auto& p : a.parts) {
        edges.push_back({p.anchor, p.lo, wa * p.coef});
        edges.push_back({p.anchor, p.hi, -wa * p.coef});
    }
    for (const auto& p : b.parts) {
        edges.push_back({p.anchor, p.lo, wb * p.coef});
        edges.push_back({p.anchor, p.hi, -wb * p.coef});
    }
    std::sort(edges.begin(), edges.end(), [&](const Edge& x, const Edge& y) {
        return cmp_anchored(t, x.anchor, x.off, y.anchor, y.off) < 0;
    });
    // Sweep boundaries keeping the running level; emit a piece whenever the
    // level was nonzero between consecutive boundaries.
    StepVec out;
    out.anchors = a.anchors;
    cplx level(0.0, 0.0);
    std::size_t i = 0;
    int open_anchor = 0;
    double open_off = 0.0;
    while (i < edges.size()) {
        std::size_t j = i;
        cplx d(0.0, 0.0);
        while (j < edges.size() &&
               cmp_anchored(t, edges[j].anchor, edges[j].off, edges[i].anchor, edges[i].off) == 0) {
            d += edges[j].delta;
            ++j;
        }
        if (level != cplx(0.0, 0.0)) {
            double hi_local = edges[i].off +
                              static_cast<double>(t.position(edges[i].anchor) - t.position(open_anchor));
            if (hi_local > open_off)
                out.parts.push_back(StepPart{open_anchor, open_off, hi_local, level});
        }
        level += d;
        open_anchor = edges[i].anchor;
        open_off = edges[i].off;
        i = j;
    }
    return out;
}

}  // namespace

SupportedVec SupportedVec::discrete(DiscreteVec d) {
    normalize(d);
    return SupportedVec(std::move(d));
}

SupportedVec SupportedVec::step(StepVec s) {
    if (!s.anchors) throw ArgumentError("step vector needs an anchor table");
    const AnchorTable& t = *s.anchors;
    std::sort(s.parts.begin(), s.parts.end(), [&](const StepPart& x, const StepPart& y) {
        return cmp_anchored(t, x.anchor, x.lo, y.anchor, y.lo) < 0;
    });
    std::vector<StepPart> keep;
    for (const auto& p : s.parts) {
        if (!(p.lo <= p.hi) || !std::isfinite(p.lo) || !std::isfinite(p.hi))
            throw ArgumentError("step part needs finite lo <= hi");
        if (p.lo == p.hi || p.coef == cplx(0.0, 0.0)) continue;
        if (!keep.empty() && cmp_anchored(t, p.anchor, p.lo, keep.back().anchor, keep.back().hi) < 0)
            throw ArgumentError("step parts overlap");
        keep.push_back(p);
    }
    s.parts = std::move(keep);
    return SupportedVec(std::move(s));
}

SupportedVec SupportedVec::delta(std::int64_t at, cplx coef) {
    DiscreteVec d;
    d.dim = 1;
    if (coef != cplx(0.0, 0.0)) d.entries.push_back({{at}, coef});
    return SupportedVec::discrete(std::move(d));
}

Space SupportedVec::space() const {
    if (std::holds_alternative<DiscreteVec>(v_))
        return std::get<DiscreteVec>(v_).dim == 1 ? Space::Z : Space::Zd;
    return Space::R;
}

const DiscreteVec& SupportedVec::as_discrete() const {
    if (!std::holds_alternative<DiscreteVec>(v_)) throw SpaceMismatchError("vector is not discrete");
    return std::get<DiscreteVec>(v_);
}
const StepVec& SupportedVec::as_step() const {
    if (!std::holds_alternative<StepVec>(v_)) throw SpaceMismatchError("vector is not a step function");
    return std::get<StepVec>(v_);
}

bool SupportedVec::is_zero() const {
    if (std::holds_alternative<DiscreteVec>(v_)) return std::get<DiscreteVec>(v_).entries.empty();
    return std::get<StepVec>(v_).parts.empty();
}

SupportedVec translate(const SupportedVec& f, const GroupPoint& s) {
    if (f.space() != s.space()) throw SpaceMismatchError("vector/shift space mismatch");
    if (f.space() == Space::Z || f.space() == Space::Zd) {
        DiscreteVec d = f.as_discrete();
        std::vector<std::int64_t> shift;
        if (f.space() == Space::Z)
            shift = {s.as_int()};
        else
            shift = s.as_lattice();
        if (static_cast<int>(shift.size()) != d.dim) throw SpaceMismatchError("lattice dimension mismatch");
        for (auto& e : d.entries)
            for (std::size_t i = 0; i < shift.size(); ++i) e.first[i] += shift[i];
        return SupportedVec::discrete(std::move(d));
    }
    const StepVec& sv = f.as_step();
    const RealPoint& p = s.as_real();
    std::int64_t sbase = sv.anchors->position(p.anchor);
    StepVec out;
    out.anchors = sv.anchors;
    for (const auto& part : sv.parts) {
        std::int64_t base = sv.anchors->position(part.anchor) + sbase;
        int m = sv.anchors->nearest(static_cast<double>(base));
        double shift = static_cast<double>(base - sv.anchors->position(m)) + p.offset;
        out.parts.push_back(StepPart{m, part.lo + shift, part.hi + shift, part.coef});
    }
    return SupportedVec::step(std::move(out));
}

SupportedVec indicator(const Window& k, cplx coef) {
    switch (k.space()) {
        case Space::Z: {
            DiscreteVec d;
            d.dim = 1;
            const auto& i = k.as_interval();
            if (coef != cplx(0.0, 0.0))
                for (std::int64_t n = i.lo; n <= i.hi; ++n) d.entries.push_back({{n}, coef});
            return SupportedVec::discrete(std::move(d));
        }
        case Space::Zd: {
            const auto& b = k.as_box();
            DiscreteVec d;
            d.dim = static_cast<int>(b.lo.size());
            if (coef != cplx(0.0, 0.0)) {
                std::vector<std::int64_t> cur = b.lo;
                while (true) {
                    d.entries.push_back({cur, coef});
                    int axis = d.dim - 1;
                    while (axis >= 0) {
                        if (++cur[static_cast<std::size_t>(axis)] <= b.hi[static_cast<std::size_t>(axis)]) break;
                        cur[static_cast<std::size_t>(axis)] = b.lo[static_cast<std::size_t>(axis)];
                        --axis;
                    }
                    if (axis < 0) break;
                }
            }
            return SupportedVec::discrete(std::move(d));
        }
        case Space::R: {
            const RealUnion& u = k.as_union();
            StepVec sv;
            sv.anchors = u.anchors;
            if (coef != cplx(0.0, 0.0))
                for (const auto& s : u.spans) sv.parts.push_back(StepPart{s.anchor, s.lo, s.hi, coef});
            return SupportedVec::step(std::move(sv));
        }
    }
    throw ArgumentError("unreachable");
}

SupportedVec scale(const SupportedVec& f, cplx factor) {
    if (f.space() == Space::R) {
        StepVec s = f.as_step();
        for (auto& p : s.parts) p.coef *= factor;
        return SupportedVec::step(std::move(s));
    }
    DiscreteVec d = f.as_discrete();
    for (auto& e : d.entries) e.second *= factor;
    return SupportedVec::discrete(std::move(d));
}

SupportedVec vec_add(const SupportedVec& a, const SupportedVec& b) {
    if (a.space() != b.space()) throw SpaceMismatchError("vector space mismatch");
    if (a.space() == Space::R)
        return SupportedVec::step(merge_steps(a.as_step(), b.as_step(), 1.0, 1.0));
    DiscreteVec d = a.as_discrete();
    const DiscreteVec& e = b.as_discrete();
    if (d.dim != e.dim) throw SpaceMismatchError("lattice dimension mismatch");
    d.entries.insert(d.entries.end(), e.entries.begin(), e.entries.end());
    return SupportedVec::discrete(std::move(d));
}

SupportedVec vec_sub(const SupportedVec& a, const SupportedVec& b) {
    if (a.space() != b.space()) throw SpaceMismatchError("vector space mismatch");
    if (a.space() == Space::R)
        return SupportedVec::step(merge_steps(a.as_step(), b.as_step(), 1.0, -1.0));
    return vec_add(a, scale(b, -1.0));
}

double sup_norm(const SupportedVec& f) {
    double m = 0.0;
    if (f.space() == Space::R) {
        for (const auto& p : f.as_step().parts) m = std::max(m, std::abs(p.coef));
    } else {
        for (const auto& e : f.as_discrete().entries) m = std::max(m, std::abs(e.second));
    }
    return m;
}

Window support_hull(const SupportedVec& f) {
    switch (f.space()) {
        case Space::Z: {
            const auto& d = f.as_discrete();
            if (d.entries.empty()) return Window::empty_interval();
            return Window::interval(d.entries.front().first[0], d.entries.back().first[0]);
        }
        case Space::Zd: {
            const auto& d = f.as_discrete();
            if (d.entries.empty()) throw ArgumentError("empty lattice vector has no hull box");
            std::vector<std::int64_t> lo = d.entries.front().first, hi = lo;
            for (const auto& e : d.entries)
                for (int i = 0; i < d.dim; ++i) {
                    lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], e.first[static_cast<std::size_t>(i)]);
                    hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], e.first[static_cast<std::size_t>(i)]);
                }
            return Window::box(std::move(lo), std::move(hi));
        }
        case Space::R: {
            const auto& s = f.as_step();
            std::vector<RealSpan> spans;
            for (const auto& p : s.parts) spans.push_back(RealSpan{p.anchor, p.lo, p.hi});
            return Window::real_union(s.anchors, std::move(spans));
        }
    }
    throw ArgumentError("unreachable");
}

bool vec_equal(const SupportedVec& a, const SupportedVec& b, double tol) {
    if (a.space() != b.space()) return false;
    SupportedVec diff = vec_sub(a, b);
    if (tol == 0.0) return diff.is_zero();
    if (diff.space() == Space::R) {
        for (const auto& p : diff.as_step().parts)
            if (std::abs(p.coef) > tol) return false;
        return true;
    }
    for (const auto& e : diff.as_discrete().entries)
        if (std::abs(e.second) > tol) return false;
    return true;
}

}  // namespace orbitforge

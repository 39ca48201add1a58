#include <algorithm>
#include <cmath>
#include <limits>

#include "orbitforge/weights.hpp"
#include "weights_detail.hpp"

namespace orbitforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;

double seg_eval(const Segment& s, double u) {
    switch (s.kind) {
        case SegKind::Const: return s.A;
        case SegKind::Affine: return s.A + s.B * u;
        case SegKind::Exp2: return s.A * std::exp2(s.B * u);
        case SegKind::Recip:
            if (u == 0.0) throw DomainError("reciprocal segment evaluated at u = 0");
            return s.A / u;
    }
    throw ArgumentError("unreachable");
}

// d/du log f, used by the ratio stationary-point analysis.
double seg_dlog(const Segment& s, double u) {
    switch (s.kind) {
        case SegKind::Const: return 0.0;
        case SegKind::Affine: return s.B / (s.A + s.B * u);
        case SegKind::Exp2: return s.B * kLn2;
        case SegKind::Recip: return -1.0 / u;
    }
    throw ArgumentError("unreachable");
}

// Integral of f^p over [u1, u2] inside one segment, closed form.
double seg_integral_pow(const Segment& s, double p, double u1, double u2) {
    if (!(u1 <= u2)) return 0.0;
    switch (s.kind) {
        case SegKind::Const:
            return std::pow(s.A, p) * (u2 - u1);
        case SegKind::Affine: {
            if (s.B == 0.0) return std::pow(s.A, p) * (u2 - u1);
            auto F = [&](double u) { return std::pow(s.A + s.B * u, p + 1.0); };
            return (F(u2) - F(u1)) / (s.B * (p + 1.0));
        }
        case SegKind::Exp2: {
            if (s.B == 0.0) return std::pow(s.A, p) * (u2 - u1);
            double k = p * s.B * kLn2;
            return std::pow(s.A, p) * (std::exp2(p * s.B * u2) - std::exp2(p * s.B * u1)) / k;
        }
        case SegKind::Recip: {
            double mag = std::fabs(s.A);
            if (u1 > 0.0 || (u1 == 0.0 && u2 > 0.0)) {
                if (u1 == 0.0) return kInf;  // u^-p is not integrable at 0 for p >= 1
                if (p == 1.0) return mag * std::log(u2 / u1);
                return std::pow(mag, p) * (std::pow(u2, 1.0 - p) - std::pow(u1, 1.0 - p)) / (1.0 - p);
            }
            if (u2 == 0.0) return kInf;
            // negative span: f = |A| / |u|
            if (p == 1.0) return mag * (std::log(-u1) - std::log(-u2));
            auto G = [&](double u) { return std::pow(-u, 1.0 - p) / (p - 1.0); };
            return std::pow(mag, p) * (G(u2) - G(u1));
        }
    }
    throw ArgumentError("unreachable");
}

// One monotone-model piece of the weight in a fixed anchor frame.
// lo/hi are local coordinates and may be +-inf for the outer defaults.
struct Piece {
    int anchor = 0;
    double lo = 0.0, hi = 0.0;
    Segment seg;
    double abs_lo = 0.0, abs_hi = 0.0;  // for sorting/search only
};

std::vector<Piece> build_pieces(const RealWeight& w, int max_anchor_id) {
    std::vector<Piece> covered;
    for (const auto& [aid, segs] : w.per_anchor) {
        if (aid > max_anchor_id) continue;
        double base = static_cast<double>(w.anchors->position(aid));
        for (const auto& s : segs) {
            Piece p;
            p.anchor = aid;
            p.lo = s.lo;
            p.hi = s.hi;
            p.seg = s;
            p.abs_lo = base + s.lo;
            p.abs_hi = base + s.hi;
            covered.push_back(p);
        }
    }
    std::sort(covered.begin(), covered.end(),
              [](const Piece& a, const Piece& b) { return a.abs_lo < b.abs_lo; });
    Segment def{0.0, 0.0, SegKind::Const, w.default_value, 0.0};
    std::vector<Piece> out;
    if (covered.empty()) {
        Piece p;
        p.anchor = 0;
        p.lo = -kInf;
        p.hi = kInf;
        p.seg = def;
        p.abs_lo = -kInf;
        p.abs_hi = kInf;
        out.push_back(p);
        return out;
    }
    const AnchorTable& t = *w.anchors;
    {
        Piece p;
        p.anchor = covered.front().anchor;
        p.lo = -kInf;
        p.hi = covered.front().lo;
        p.seg = def;
        p.abs_lo = -kInf;
        p.abs_hi = covered.front().abs_lo;
        out.push_back(p);
    }
    for (std::size_t i = 0; i < covered.size(); ++i) {
        out.push_back(covered[i]);
        double gap_lo = covered[i].hi;
        int frame = covered[i].anchor;
        double gap_hi;
        if (i + 1 < covered.size()) {
            const Piece& nxt = covered[i + 1];
            gap_hi = nxt.lo + static_cast<double>(t.position(nxt.anchor) - t.position(frame));
            if (gap_hi > gap_lo) {
                Piece p;
                p.anchor = frame;
                p.lo = gap_lo;
                p.hi = gap_hi;
                p.seg = def;
                p.abs_lo = covered[i].abs_hi;
                p.abs_hi = nxt.abs_lo;
                out.push_back(p);
            }
        } else {
            Piece p;
            p.anchor = frame;
            p.lo = gap_lo;
            p.hi = kInf;
            p.seg = def;
            p.abs_lo = covered[i].abs_hi;
            p.abs_hi = kInf;
            out.push_back(p);
        }
    }
    return out;
}

// Local coordinate of an absolute anchored position (aid, off) in the
// frame of `anchor`; the integer anchor difference is exact.
double reframe(const AnchorTable& t, int from_anchor, double off, int to_anchor) {
    return off + static_cast<double>(t.position(from_anchor) - t.position(to_anchor));
}

}  // namespace

// ---------------------------------------------------------------------------
// RealWeight
// ---------------------------------------------------------------------------

double RealWeight::eval_local(int anchor, double u) const {
    if (!anchors) throw ArgumentError("real weight missing its anchor table");
    (void)anchors->position(anchor);
    for (const auto& [aid, segs] : per_anchor) {
        if (segs.empty()) continue;
        double ua = reframe(*anchors, anchor, u, aid);
        if (ua < segs.front().lo || ua > segs.back().hi) continue;
        for (const auto& s : segs)
            if (ua >= s.lo && ua <= s.hi) return seg_eval(s, ua);
    }
    return default_value;
}

double RealWeight::eval_abs(double t) const {
    if (!anchors) throw ArgumentError("real weight missing its anchor table");
    int m = anchors->nearest(t);
    return eval_local(m, t - static_cast<double>(anchors->position(m)));
}

void RealWeight::validate() const {
    if (!anchors) throw ArgumentError("real weight missing its anchor table");
    if (!(default_value > 0.0) || !std::isfinite(default_value))
        throw ArgumentError("default weight value must be positive finite");
    double prev_abs_hi = -kInf;
    auto sorted = per_anchor;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [aid, segs] : sorted) {
        double base = static_cast<double>(anchors->position(aid));
        double prev_hi = -kInf;
        for (const auto& s : segs) {
            if (!(s.lo <= s.hi) || !std::isfinite(s.lo) || !std::isfinite(s.hi))
                throw ArgumentError("segment needs finite lo <= hi");
            if (s.lo < prev_hi) throw ArgumentError("segments overlap within an anchor");
            prev_hi = s.hi;
            if (base + s.lo < prev_abs_hi) throw ArgumentError("segments overlap across anchors");
            // positivity on the closed span; all kinds are monotone there
            if (s.kind == SegKind::Recip) {
                if (s.lo < 0.0 && s.hi > 0.0) throw ArgumentError("reciprocal span must not contain 0");
                if (s.hi != 0.0 && !(seg_eval(s, s.hi) > 0.0))
                    throw ArgumentError("segment not positive on its span");
                if (s.lo != 0.0 && !(seg_eval(s, s.lo) > 0.0))
                    throw ArgumentError("segment not positive on its span");
            } else {
                double v1 = seg_eval(s, s.lo), v2 = seg_eval(s, s.hi);
                if (!(v1 > 0.0) || !(v2 > 0.0) || !std::isfinite(v1) || !std::isfinite(v2))
                    throw ArgumentError("segment not positive finite on its span");
            }
        }
        if (!segs.empty()) prev_abs_hi = base + segs.back().hi;
    }
}

RealWeight RealWeight::truncated(int keep) const {
    RealWeight w = *this;
    if (static_cast<int>(w.per_anchor.size()) > keep)
        w.per_anchor.resize(static_cast<std::size_t>(std::max(keep, 0)));
    return w;
}

namespace detail {

double real_local_norm_pow(const RealWeight& w, const RealUnion& k, double p) {
    auto pieces = build_pieces(w, w.anchors->size());
    const AnchorTable& t = *w.anchors;
    double total = 0.0;
    for (const auto& span : k.spans) {
        for (const auto& pc : pieces) {
            // span bounds in the piece frame
            double lo = reframe(t, span.anchor, span.lo, pc.anchor);
            double hi = reframe(t, span.anchor, span.hi, pc.anchor);
            double u1 = std::max(lo, pc.lo), u2 = std::min(hi, pc.hi);
            if (u1 < u2) total += seg_integral_pow(pc.seg, p, u1, u2);
        }
    }
    return total;
}

double real_sup_on(const RealWeight& w, const RealUnion& k) {
    auto pieces = build_pieces(w, w.anchors->size());
    const AnchorTable& t = *w.anchors;
    double best = 0.0;
    for (const auto& span : k.spans) {
        for (const auto& pc : pieces) {
            double lo = reframe(t, span.anchor, span.lo, pc.anchor);
            double hi = reframe(t, span.anchor, span.hi, pc.anchor);
            double u1 = std::max(lo, pc.lo), u2 = std::min(hi, pc.hi);
            if (u1 > u2) continue;
            if (u1 == u2 && !(u1 > pc.lo && u1 < pc.hi)) continue;  // measure-zero touch
            // every segment kind is monotone on its span
            best = std::max(best, std::max(seg_eval(pc.seg, u1), seg_eval(pc.seg, u2)));
        }
    }
    return best;
}

double real_weighted_norm_pow(const StepVec& f, const RealWeight& w, double p) {
    if (f.parts.empty()) return 0.0;
    if (f.anchors->positions() != w.anchors->positions())
        throw SpaceMismatchError("vector and weight use different anchor tables");
    RealUnion u;
    u.anchors = w.anchors;
    double total = 0.0;
    for (const auto& part : f.parts) {
        RealUnion one;
        one.anchors = w.anchors;
        one.spans.push_back(RealSpan{part.anchor, part.lo, part.hi});
        total += std::pow(std::abs(part.coef), p) * real_local_norm_pow(w, one, p);
    }
    return total;
}

MBound real_m_bound(const RealWeight& w, const RealPoint& s, int max_anchor) {
    const AnchorTable& t = *w.anchors;
    auto pieces = build_pieces(w, max_anchor);
    MBound r;
    r.certified = true;
    r.value = 0.0;
    bool have_witness = false;
    double witness_abs = 0.0;
    auto consider = [&](double v, double abs_t, int anchor, double u) {
        if (std::isnan(v)) {
            r.certified = false;
            return;
        }
        if (v > r.value || (v == r.value && have_witness && std::fabs(abs_t) < std::fabs(witness_abs))) {
            r.value = v;
            r.witness = GroupPoint::real(anchor, u);
            witness_abs = abs_t;
            have_witness = true;
        }
    };
    for (const auto& pt : pieces) {
        for (const auto& pu : pieces) {
            // t in pt, t+s in pu; work in pt's frame: v = u + delta
            double delta = static_cast<double>(t.position(pt.anchor) + t.position(s.anchor) -
                                               t.position(pu.anchor)) +
                           s.offset;
            double lo = std::max(pt.lo, pu.lo - delta);
            double hi = std::min(pt.hi, pu.hi - delta);
            if (!(lo < hi)) continue;
            const Segment& ft = pt.seg;
            Segment fu = pu.seg;
            auto ratio_at = [&](double u) {
                return seg_eval(fu, u + delta) / seg_eval(ft, u);
            };
            double base_abs = static_cast<double>(t.position(pt.anchor));
            if (lo == -kInf || hi == kInf) {
                // only default-vs-default reaches an unbounded overlap
                double edge = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
                consider(fu.A / ft.A, base_abs + edge, pt.anchor, edge);
                if (std::isfinite(lo)) consider(ratio_at(lo), base_abs + lo, pt.anchor, lo);
                if (std::isfinite(hi)) consider(ratio_at(hi), base_abs + hi, pt.anchor, hi);
                continue;
            }
            consider(ratio_at(lo), base_abs + lo, pt.anchor, lo);
            consider(ratio_at(hi), base_abs + hi, pt.anchor, hi);
            // interior stationary point of log ratio: dlog fu(u+delta) = dlog ft(u).
            // Every kind pair admits at most one, with a closed form.
            double ustar = std::numeric_limits<double>::quiet_NaN();
            const SegKind kt = ft.kind, ku = fu.kind;
            auto const_dlog = [&](const Segment& sgm) {
                return sgm.kind == SegKind::Exp2 ? sgm.B * kLn2 : 0.0;
            };
            bool t_constd = (kt == SegKind::Const || kt == SegKind::Exp2);
            bool u_constd = (ku == SegKind::Const || ku == SegKind::Exp2);
            if (t_constd && u_constd) {
                // log ratio is affine: monotone, endpoints suffice
            } else if (kt == SegKind::Affine && ku == SegKind::Affine) {
                // Moebius ratio: monotone
            } else if (kt == SegKind::Affine && u_constd) {
                double cst = const_dlog(fu);
                if (cst != 0.0 && ft.B != 0.0) ustar = 1.0 / cst - ft.A / ft.B;
            } else if (t_constd && ku == SegKind::Affine) {
                double cst = const_dlog(ft);
                if (cst != 0.0 && fu.B != 0.0) ustar = (1.0 / cst - fu.A / fu.B) - delta;
            } else if (kt == SegKind::Recip && u_constd) {
                double cst = const_dlog(fu);
                if (cst != 0.0) ustar = -1.0 / cst;
            } else if (t_constd && ku == SegKind::Recip) {
                double cst = const_dlog(ft);
                if (cst != 0.0) ustar = -1.0 / cst - delta;
            } else if (kt == SegKind::Recip && ku == SegKind::Affine) {
                if (fu.B != 0.0) ustar = -(fu.A + fu.B * delta) / (2.0 * fu.B);
            } else if (kt == SegKind::Affine && ku == SegKind::Recip) {
                if (ft.B != 0.0) ustar = -(ft.A + ft.B * delta) / (2.0 * ft.B);
            } else if (kt == SegKind::Recip && ku == SegKind::Recip) {
                // u/(u+delta) is monotone
            }
            if (std::isfinite(ustar) && ustar > lo && ustar < hi)
                consider(ratio_at(ustar), base_abs + ustar, pt.anchor, ustar);
        }
    }
    if (!have_witness) r.witness = GroupPoint::real(0, 0.0);
    return r;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sub-level sets (exact interval unions)
// ---------------------------------------------------------------------------

Window sublevel_set(const RealWeight& w, const Window& k, const GroupPoint& shift, double threshold) {
    if (k.space() != Space::R || shift.space() != Space::R)
        throw SpaceMismatchError("sublevel_set needs real window and shift");
    const RealUnion& ku = k.as_union();
    const AnchorTable& t = *w.anchors;
    const RealPoint& s = shift.as_real();
    auto pieces = build_pieces(w, t.size());
    std::vector<RealSpan> out;
    for (const auto& span : ku.spans) {
        for (const auto& pc : pieces) {
            // v = u + delta maps t-local u into the piece frame of w(s + t)
            double delta = static_cast<double>(t.position(span.anchor) + t.position(s.anchor) -
                                               t.position(pc.anchor)) +
                           s.offset;
            double u1 = std::max(span.lo, pc.lo - delta);
            double u2 = std::min(span.hi, pc.hi - delta);
            if (!(u1 < u2)) continue;
            const Segment& sg = pc.seg;
            double a = u1, b = u2;  // accepted sub-interval, possibly clipped
            bool none = false;
            switch (sg.kind) {
                case SegKind::Const:
                    none = sg.A > threshold;
                    break;
                case SegKind::Affine: {
                    if (sg.B == 0.0) {
                        none = sg.A > threshold;
                        break;
                    }
                    double v = (threshold - sg.A) / sg.B - delta;
                    if (sg.B > 0.0)
                        b = std::min(b, v);
                    else
                        a = std::max(a, v);
                    none = !(a <= b);
                    break;
                }
                case SegKind::Exp2: {
                    if (threshold <= 0.0 || sg.A <= 0.0) {
                        none = true;
                        break;
                    }
                    if (sg.B == 0.0) {
                        none = sg.A > threshold;
                        break;
                    }
                    double v = std::log2(threshold / sg.A) / sg.B - delta;
                    if (sg.B > 0.0)
                        b = std::min(b, v);
                    else
                        a = std::max(a, v);
                    none = !(a <= b);
                    break;
                }
                case SegKind::Recip: {
                    if (threshold <= 0.0) {
                        none = true;
                        break;
                    }
                    if (sg.lo >= 0.0) {  // positive branch: w <= thr iff v >= A/thr
                        a = std::max(a, sg.A / threshold - delta);
                    } else {  // negative branch: w <= thr iff v <= -|A|/thr
                        b = std::min(b, -std::fabs(sg.A) / threshold - delta);
                    }
                    none = !(a <= b);
                    break;
                }
            }
            if (!none && a < b) out.push_back(RealSpan{span.anchor, a, b});
        }
    }
    // merge touching spans
    Window raw = Window::real_union(ku.anchors, std::move(out));
    const RealUnion& ru = raw.as_union();
    std::vector<RealSpan> merged;
    for (const auto& sp : ru.spans) {
        if (!merged.empty()) {
            RealSpan& prev = merged.back();
            double lo_in_prev = reframe(t, sp.anchor, sp.lo, prev.anchor);
            if (lo_in_prev <= prev.hi) {
                prev.hi = std::max(prev.hi, reframe(t, sp.anchor, sp.hi, prev.anchor));
                continue;
            }
        }
        merged.push_back(sp);
    }
    return Window::real_union(ku.anchors, std::move(merged));
}

}  // namespace orbitforge

#include "orbitforge/weights.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "weights_detail.hpp"

namespace orbitforge {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// TailModel
// ---------------------------------------------------------------------------

double TailModel::log2_eval(double n) const {
    if (kind == Kind::Log2Affine) return a + b * n;
    return static_cast<double>(sign) * c * std::exp2(b * n);
}

ExpSum TailModel::asym(int dir, double shift) const {
    ExpSum e;
    if (kind == Kind::Log2Affine) {
        e.konst = a + b * shift;
        e.slope = b * static_cast<double>(dir);
    } else {
        // sign*c*2^(b*(dir*n + shift)) = [sign*c*2^(b*shift)] * 2^((b*dir)*n)
        e.add_term(b * static_cast<double>(dir), static_cast<double>(sign) * c * std::exp2(b * shift));
    }
    return e;
}

double TailModel::limit_log2(int dir) const {
    ExpSum e = asym(dir, 0.0);
    return e.limit();
}

// ---------------------------------------------------------------------------
// DiscreteWeight
// ---------------------------------------------------------------------------

double DiscreteWeight::eval_at(std::int64_t n) const {
    if (n >= lo && n <= hi) return values[static_cast<std::size_t>(n - lo)];
    return std::exp2(log2_at(static_cast<double>(n)));
}

double DiscreteWeight::log2_at(double n) const {
    if (n >= static_cast<double>(lo) && n <= static_cast<double>(hi))
        return std::log2(values[static_cast<std::size_t>(static_cast<std::int64_t>(n) - lo)]);
    return n < static_cast<double>(lo) ? left.log2_eval(n) : right.log2_eval(n);
}

void DiscreteWeight::validate() const {
    if (values.size() != static_cast<std::size_t>(hi - lo + 1))
        throw ArgumentError("discrete weight: window size does not match value count");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError("discrete weight: values must be positive finite");
    auto agree = [](double model_log2, double value) {
        double model = std::exp2(model_log2);
        return std::fabs(model - value) <= 1e-12 * std::fabs(value);
    };
    if (!agree(left.log2_eval(static_cast<double>(lo)), values.front()))
        throw ArgumentError("discrete weight: left tail disagrees with the window edge");
    if (!agree(right.log2_eval(static_cast<double>(hi)), values.back()))
        throw ArgumentError("discrete weight: right tail disagrees with the window edge");
    if (left.kind == TailModel::Kind::Log2DoubleExp && !(left.c > 0.0))
        throw ArgumentError("double-exp tail needs c > 0");
    if (right.kind == TailModel::Kind::Log2DoubleExp && !(right.c > 0.0))
        throw ArgumentError("double-exp tail needs c > 0");
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

Space weight_space(const Weight& w) {
    return std::holds_alternative<DiscreteWeight>(w) ? Space::Z : Space::R;
}

double eval(const Weight& w, const GroupPoint& t) {
    if (std::holds_alternative<DiscreteWeight>(w)) {
        if (t.space() != Space::Z) throw SpaceMismatchError("weight lives on Z");
        return std::get<DiscreteWeight>(w).eval_at(t.as_int());
    }
    const RealWeight& rw = std::get<RealWeight>(w);
    if (t.space() != Space::R) throw SpaceMismatchError("weight lives on R");
    const RealPoint& p = t.as_real();
    return rw.eval_local(p.anchor, p.offset);
}

double local_norm_pow(const Weight& w, const Window& k, double p) {
    if (p < 1.0) throw ArgumentError("p must be >= 1");
    if (std::holds_alternative<DiscreteWeight>(w)) {
        const auto& dw = std::get<DiscreteWeight>(w);
        if (k.space() != Space::Z) throw SpaceMismatchError("weight lives on Z");
        const auto& iv = k.as_interval();
        if (!iv.empty() && iv.hi - iv.lo > (std::int64_t{1} << 24))
            throw ArgumentError("window too large for pointwise summation");
        double sum = 0.0;
        for (std::int64_t n = iv.lo; n <= iv.hi; ++n) sum += std::pow(dw.eval_at(n), p);
        return sum;
    }
    if (k.space() != Space::R) throw SpaceMismatchError("weight lives on R");
    return detail::real_local_norm_pow(std::get<RealWeight>(w), k.as_union(), p);
}

double local_norm(const Weight& w, const Window& k, double p) {
    return std::pow(local_norm_pow(w, k, p), 1.0 / p);
}

double weighted_norm_pow(const SupportedVec& f, const Weight& w, double p) {
    if (p < 1.0) throw ArgumentError("p must be >= 1");
    if (std::holds_alternative<DiscreteWeight>(w)) {
        const auto& dw = std::get<DiscreteWeight>(w);
        if (f.space() != Space::Z) throw SpaceMismatchError("weight lives on Z");
        double sum = 0.0;
        for (const auto& e : f.as_discrete().entries)
            sum += std::pow(std::abs(e.second), p) * std::pow(dw.eval_at(e.first[0]), p);
        return sum;
    }
    if (f.space() != Space::R) throw SpaceMismatchError("weight lives on R");
    return detail::real_weighted_norm_pow(f.as_step(), std::get<RealWeight>(w), p);
}

double weighted_norm(const SupportedVec& f, const Weight& w, double p) {
    return std::pow(weighted_norm_pow(f, w, p), 1.0 / p);
}

double sup_on(const Weight& w, const Window& k) {
    if (k.is_empty()) return 0.0;
    if (std::holds_alternative<DiscreteWeight>(w)) {
        const auto& dw = std::get<DiscreteWeight>(w);
        if (k.space() != Space::Z) throw SpaceMismatchError("weight lives on Z");
        const auto& iv = k.as_interval();
        double best = 0.0;
        for (std::int64_t n = iv.lo; n <= iv.hi; ++n) best = std::max(best, dw.eval_at(n));
        return best;
    }
    if (k.space() != Space::R) throw SpaceMismatchError("weight lives on R");
    return detail::real_sup_on(std::get<RealWeight>(w), k.as_union());
}

// ---------------------------------------------------------------------------
// Translation operator norm on Z
// ---------------------------------------------------------------------------

namespace {

MBound discrete_m_bound(const DiscreteWeight& w, std::int64_t s) {
    MBound r;
    r.certified = true;
    r.witness = GroupPoint::integer(0);
    if (s == 0) {
        r.value = 1.0;
        return r;
    }
    if (std::llabs(static_cast<long long>(s)) > (std::int64_t{1} << 24))
        throw ArgumentError("shift too large for the window belt");
    double best = 0.0;
    std::int64_t best_t = 0;
    auto consider = [&](double v, std::int64_t t) {
        if (v > best || (v == best && canon_less(GroupPoint::integer(t), GroupPoint::integer(best_t)))) {
            best = v;
            best_t = t;
        }
    };
    // Belt around the window: both evaluation points exact.
    std::int64_t pad = std::llabs(s) + 2;
    std::int64_t t_lo = w.lo - pad, t_hi = w.hi + pad;
    for (std::int64_t t = t_lo; t <= t_hi; ++t) {
        double num = w.eval_at(t + s), den = w.eval_at(t);
        double v;
        if (std::isfinite(num) && std::isfinite(den) && den > 0.0 && num > 0.0) {
            v = num / den;
        } else {
            v = std::exp2(w.log2_at(static_cast<double>(t + s)) - w.log2_at(static_cast<double>(t)));
        }
        consider(v, t);
    }
    // Deep tails: both points governed by one monotone model, so the
    // supremum over the half-line is max(boundary value, limit). The
    // log-ratio is formed symbolically so the tail offset cancels.
    auto tail_sup = [&](const TailModel& tm, int dir, std::int64_t t0) {
        ExpSum ratio;
        if (tm.kind == TailModel::Kind::Log2Affine) {
            ratio.konst = tm.b * static_cast<double>(s);
        } else {
            ratio.add_term(tm.b * static_cast<double>(dir),
                           static_cast<double>(tm.sign) * tm.c *
                               (std::exp2(tm.b * static_cast<double>(s)) - 1.0));
        }
        double at_boundary = std::exp2(ratio.eval(static_cast<double>(dir > 0 ? t0 : -t0)));
        double lim = std::exp2(ratio.limit());
        consider(at_boundary, t0);
        if (lim > best) {
            // approached along the tail; report the boundary as witness
            consider(lim, t0);
        }
    };
    tail_sup(w.right, +1, t_hi + 1);
    tail_sup(w.left, -1, t_lo - 1);
    r.value = best;
    r.witness = GroupPoint::integer(best_t);
    return r;
}

}  // namespace

MBound m_bound(const Weight& w, const GroupPoint& s, std::int64_t horizon) {
    if (horizon < 1) throw ArgumentError("horizon must be >= 1");
    if (std::holds_alternative<DiscreteWeight>(w)) {
        if (s.space() != Space::Z) throw SpaceMismatchError("weight lives on Z");
        return discrete_m_bound(std::get<DiscreteWeight>(w), s.as_int());
    }
    if (s.space() != Space::R) throw SpaceMismatchError("weight lives on R");
    const RealWeight& rw = std::get<RealWeight>(w);
    int max_anchor = static_cast<int>(std::min<std::int64_t>(horizon, rw.anchors ? rw.anchors->size() : 1));
    return detail::real_m_bound(rw, s.as_real(), max_anchor);
}

AdmissibilityReport admissible(const Weight& w, const ShiftSet& s, std::int64_t horizon) {
    AdmissibilityReport rep;
    rep.horizon = horizon;
    Space sp = weight_space(w);
    auto shifts = enumerate_shifts(s, sp, horizon, 1u << 12);
    rep.entries.resize(shifts.size());
    auto work = [&](std::size_t i) {
        AdmissibilityEntry& e = rep.entries[i];
        e.s = shifts[i];
        e.bound = m_bound(w, shifts[i], horizon);
        if (sp == Space::R) {
            // Divergence probe: drop the outermost anchor and recompute.
            // If the value still grew, it has not stabilized within the
            // horizon and only bounds the norm from below.
            const RealWeight& rw = std::get<RealWeight>(w);
            int n = static_cast<int>(rw.per_anchor.size());
            if (n >= 3) {
                RealWeight prev = rw.truncated(n - 1);
                MBound mb_prev = detail::real_m_bound(prev, shifts[i].as_real(), prev.anchors->size());
                if (mb_prev.value > 0.0 && e.bound.value >= 1.5 * mb_prev.value) {
                    e.bound.diverging = true;
                    e.bound.certified = false;
                }
            }
        }
    };
    // per-shift bounds are independent; entries stay index-ordered so the
    // reduction below is deterministic
    int workers = std::min<int>(worker_count(), static_cast<int>(shifts.size()));
    if (workers > 1 && shifts.size() >= 32) {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < shifts.size(); i = next.fetch_add(1))
                    work(i);
            });
        for (auto& th : pool) th.join();
    } else {
        for (std::size_t i = 0; i < shifts.size(); ++i) work(i);
    }
    for (const auto& e : rep.entries) {
        if (!(e.bound.value < kInf) || e.bound.diverging) rep.admissible_up_to_horizon = false;
        if (!e.bound.certified) rep.certified = false;
    }
    return rep;
}

}  // namespace orbitforge

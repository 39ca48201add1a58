#include "orbitforge/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace orbitforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log2_add_exp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    if (a == kInf || b == kInf) return kInf;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

ExpSum scaled(const ExpSum& f, double k) {
    ExpSum r = f;
    r.slope *= k;
    r.konst *= k;
    for (auto& t : r.terms) t.coef *= k;
    return r;
}

double log2_sup_on(const DiscreteWeight& w, const IntInterval& iv) {
    double best = -kInf;
    for (std::int64_t n = iv.lo; n <= iv.hi; ++n) best = std::max(best, w.log2_at(static_cast<double>(n)));
    return best;
}

// First n >= n0 placing both n+q and -n+q outside the value window, so the
// tail models govern the functional from there on.
std::int64_t tail_start(const DiscreteWeight& w, std::int64_t q) {
    return std::max<std::int64_t>({w.hi - q, q - w.lo, 1});
}

// --- pointwise tail analysis -------------------------------------------------

// Limit of log2 objective(c(n), d(n), g) as n -> inf given the log2
// descriptors of c and d. certifiable = false for Grid sets.
double phi_limit_log2(const ExpSum& dc, const ExpSum& dd, const GammaSet& g, bool* certifiable) {
    *certifiable = true;
    switch (g.kind) {
        case GammaSet::Kind::Singleton:
        case GammaSet::Kind::Annulus:
            return objective_log2(dc.limit(), dd.limit(), g);
        case GammaSet::Kind::AllNonzero:
            return scaled(dc.plus(dd), 0.5).limit();
        case GammaSet::Kind::ZeroToOne: {
            int cmp = dd.plus(dc.negated()).eventual_sign();  // sign of d/c eventually
            if (cmp > 0) return dd.limit();
            return scaled(dc.plus(dd), 0.5).limit();
        }
        case GammaSet::Kind::OneToInf: {
            int cmp = dc.plus(dd.negated()).eventual_sign();
            if (cmp > 0) return dc.limit();
            return scaled(dc.plus(dd), 0.5).limit();
        }
        case GammaSet::Kind::Grid:
            *certifiable = false;
            return -kInf;
    }
    throw ArgumentError("unreachable");
}

// Rigorous lower bound of log2 objective over integers n >= n0. Uses the
// universal bound objective >= sqrt(c d) plus per-set one-sided bounds.
TailInf phi_inf_log2(const ExpSum& dc, const ExpSum& dd, const GammaSet& g, std::int64_t n0) {
    auto combine_max = [](const TailInf& a, const TailInf& b) {
        TailInf r;
        r.value = std::max(a.value, b.value);
        r.exact = a.exact && b.exact;
        r.argmin = a.value >= b.value ? a.argmin : b.argmin;
        return r;
    };
    TailInf root = integer_inf_from(scaled(dc.plus(dd), 0.5), n0);
    switch (g.kind) {
        case GammaSet::Kind::Singleton: {
            double lm = std::log2(g.r);
            ExpSum a = dc;
            a.konst += lm;
            ExpSum b = dd;
            b.konst -= lm;
            return combine_max(integer_inf_from(a, n0), integer_inf_from(b, n0));
        }
        case GammaSet::Kind::Annulus: {
            ExpSum a = dc;
            a.konst += std::log2(g.r);
            ExpSum b = dd;
            b.konst -= std::log2(g.R);
            return combine_max(integer_inf_from(a, n0), integer_inf_from(b, n0));
        }
        case GammaSet::Kind::AllNonzero:
            return root;
        case GammaSet::Kind::ZeroToOne:
            return combine_max(root, integer_inf_from(dd, n0));
        case GammaSet::Kind::OneToInf:
            return combine_max(root, integer_inf_from(dc, n0));
        case GammaSet::Kind::Grid:
            // objective over any magnitude set dominates sqrt(c d)
            return root;
    }
    throw ArgumentError("unreachable");
}

// log2 c(n), log2 d(n) for the pointwise functional along direction dir.
struct DirDescriptors {
    ExpSum lc, ld;
};
DirDescriptors pointwise_dir(const DiscreteWeight& w, int dir) {
    if (dir > 0) return {w.right.asym(+1, 0.0), w.left.asym(-1, 0.0)};
    return {w.left.asym(-1, 0.0), w.right.asym(+1, 0.0)};
}

}  // namespace

std::string verdict_name(Verdict::Type t) {
    switch (t) {
        case Verdict::Type::HoldsCertified: return "holds_certified";
        case Verdict::Type::HoldsNumeric: return "holds_numeric";
        case Verdict::Type::FailsCertified: return "fails_certified";
        case Verdict::Type::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

// ---------------------------------------------------------------------------
// Criterion functionals
// ---------------------------------------------------------------------------

double salas_sum_log2(const DiscreteWeight& w, std::int64_t q, std::int64_t n) {
    return log2_add_exp(w.log2_at(static_cast<double>(n + q)), w.log2_at(static_cast<double>(-n + q)));
}

double salas_product_log2(const DiscreteWeight& w, std::int64_t q, std::int64_t n) {
    return w.log2_at(static_cast<double>(n + q)) + w.log2_at(static_cast<double>(-n + q));
}

double pointwise_value_log2(const Weight& w, const GammaSet& g, const GroupPoint& s) {
    if (std::holds_alternative<DiscreteWeight>(w)) {
        const auto& dw = std::get<DiscreteWeight>(w);
        std::int64_t v = s.as_int();
        return objective_log2(dw.log2_at(static_cast<double>(v)), dw.log2_at(static_cast<double>(-v)), g);
    }
    const RealPoint& p = s.as_real();
    if (p.anchor != 0) throw ArgumentError("pointwise functional on R expects origin-anchored shifts");
    GroupPoint neg = GroupPoint::real(0, -p.offset);
    return objective_log2(std::log2(eval(w, s)), std::log2(eval(w, neg)), g);
}

// ---------------------------------------------------------------------------
// Salas-type criteria on Z
// ---------------------------------------------------------------------------

namespace {

void collect_schedule_witnesses(const DiscreteWeight& w, std::int64_t q, std::int64_t horizon,
                                bool product, std::vector<CriterionWitness>& out) {
    int k = 1;
    for (std::int64_t n = 1; n <= horizon && k <= 20; ++n) {
        double v = product ? salas_product_log2(w, q, n) : salas_sum_log2(w, q, n);
        while (k <= 20 && v < -static_cast<double>(k)) {
            CriterionWitness cw;
            cw.s = GroupPoint::integer(n);
            cw.window = Window::interval(q, q);
            cw.achieved = std::exp2(v);
            cw.q = q;
            out.push_back(cw);
            ++k;
        }
    }
}

}  // namespace

CriterionReport salas_hypercyclic(const DiscreteWeight& w, std::int64_t q_max, std::int64_t horizon) {
    if (q_max < 0 || horizon < 1) throw ArgumentError("salas: need q_max >= 0, horizon >= 1");
    CriterionReport rep;
    rep.kind = "salas_hypercyclic";
    rep.verdict.horizon = horizon;
    rep.params = {{"q_max", std::to_string(q_max)}, {"horizon", std::to_string(horizon)}};
    double lplus = w.right.limit_log2(+1);
    double lminus = w.left.limit_log2(-1);
    // lim_n w(n+q) is independent of q for both tail families, so one
    // decision covers every q.
    double limit_sum = log2_add_exp(lplus, lminus);
    double best = kInf;
    for (std::int64_t q = 0; q <= q_max; ++q)
        for (std::int64_t n = 1; n <= std::min<std::int64_t>(horizon, 512); ++n)
            best = std::min(best, salas_sum_log2(w, q, n));
    rep.verdict.best_margin = std::exp2(best);
    if (limit_sum == -kInf) {
        rep.verdict.type = Verdict::Type::HoldsCertified;
        for (std::int64_t q = 0; q <= std::min<std::int64_t>(q_max, 4); ++q)
            collect_schedule_witnesses(w, q, horizon, false, rep.witnesses);
        return rep;
    }
    // liminf exceeds a positive bound for every q; derive it at q = 0
    std::int64_t q0 = 0;
    std::int64_t n0 = tail_start(w, q0);
    double g_inf = std::min(w.eval_at(n0 + q0), std::exp2(lplus));
    double h_inf = std::min(w.eval_at(-n0 + q0), std::exp2(lminus));
    rep.verdict.type = Verdict::Type::FailsCertified;
    rep.verdict.bound = std::min(g_inf + h_inf, 1e300);  // keep the bound JSON-representable
    rep.verdict.window = DerivationWindow{q0, n0, true, 0};
    return rep;
}

namespace {

// Limit sign of the log2 product descriptor for a single q: -1 means the
// product tends to 0 (the criterion holds at q).
int product_limit_sign(const DiscreteWeight& w, std::int64_t q) {
    ExpSum d = w.right.asym(+1, static_cast<double>(q)).plus(w.left.asym(-1, static_cast<double>(q)));
    double lim = d.limit();
    if (lim == -kInf) return -1;
    return +1;
}

// Decides the product criterion for every q > q_max at once; returns
// -1 (holds beyond), +1 with *q_fail set (some larger q fails), 0 unknown.
int product_sign_beyond(const DiscreteWeight& w, std::int64_t q_max, std::int64_t* q_fail) {
    // q-dependent pieces: a right double-exp tail contributes rate b with
    // coefficient sign fixed by its own sign; a left one contributes rate
    // -b. Affine tails contribute a q-independent slope.
    double slope = 0.0;
    bool right_dexp = w.right.kind == TailModel::Kind::Log2DoubleExp && w.right.b != 0.0;
    bool left_dexp = w.left.kind == TailModel::Kind::Log2DoubleExp && w.left.b != 0.0;
    if (w.right.kind == TailModel::Kind::Log2Affine) slope += w.right.b;
    if (w.left.kind == TailModel::Kind::Log2Affine) slope -= w.left.b;
    double r1 = right_dexp ? w.right.b : -kInf;   // rate from the right tail
    double r2 = left_dexp ? -w.left.b : -kInf;    // rate from the left tail
    int s1 = w.right.sign, s2 = w.left.sign;
    double top = std::max(r1, r2);
    if (top <= 0.0) {
        // no exploding exponential in n: the affine slope decides uniformly
        if (slope < 0.0) return -1;
        *q_fail = q_max + 1;
        return +1;
    }
    if (r1 != r2) {
        int sgn = r1 > r2 ? s1 : s2;
        if (sgn < 0) return -1;
        *q_fail = q_max + 1;
        return +1;
    }
    // equal rates: coef(q) = s1 c1 2^(r q) + s2 c2 2^(-r q)
    if (s1 == s2) {
        if (s1 < 0) return -1;
        *q_fail = q_max + 1;
        return +1;
    }
    double qc = std::log2(w.left.c / w.right.c) / (2.0 * r1);  // crossing in q
    if (s1 > 0) {
        *q_fail = std::max<std::int64_t>(q_max + 1, static_cast<std::int64_t>(std::floor(qc)) + 1);
        return +1;
    }
    // s1 < 0: sign is s1 for q beyond the crossing
    if (static_cast<double>(q_max) >= qc) return -1;
    *q_fail = q_max + 1;
    return +1;
}

}  // namespace

CriterionReport salas_supercyclic(const DiscreteWeight& w, std::int64_t q_max, std::int64_t horizon) {
    if (q_max < 0 || horizon < 1) throw ArgumentError("salas: need q_max >= 0, horizon >= 1");
    CriterionReport rep;
    rep.kind = "salas_supercyclic";
    rep.verdict.horizon = horizon;
    rep.params = {{"q_max", std::to_string(q_max)}, {"horizon", std::to_string(horizon)}};
    double best = kInf;
    for (std::int64_t q = 0; q <= q_max; ++q)
        for (std::int64_t n = 1; n <= std::min<std::int64_t>(horizon, 512); ++n)
            best = std::min(best, salas_product_log2(w, q, n));
    rep.verdict.best_margin = std::exp2(best);
    std::optional<std::int64_t> failing_q;
    for (std::int64_t q = 0; q <= q_max && !failing_q; ++q)
        if (product_limit_sign(w, q) > 0) failing_q = q;
    if (!failing_q) {
        std::int64_t q_fail = 0;
        int beyond = product_sign_beyond(w, q_max, &q_fail);
        if (beyond < 0) {
            rep.verdict.type = Verdict::Type::HoldsCertified;
            for (std::int64_t q = 0; q <= std::min<std::int64_t>(q_max, 4); ++q)
                collect_schedule_witnesses(w, q, horizon, true, rep.witnesses);
            return rep;
        }
        if (beyond > 0) failing_q = q_fail;
    }
    if (failing_q) {
        std::int64_t q = *failing_q;
        std::int64_t n0 = tail_start(w, q);
        ExpSum d = w.right.asym(+1, static_cast<double>(q)).plus(w.left.asym(-1, static_cast<double>(q)));
        TailInf ti = integer_inf_from(d, n0);
        // the infimum can dip below double range before the product turns
        // around; move the window past the dip so the bound stays
        // representable
        for (int guard = 0; guard < 12 && ti.exact && ti.value < -900.0; ++guard) {
            n0 = std::max(n0 + 1, ti.argmin + 1);
            ti = integer_inf_from(d, n0);
        }
        if (ti.exact && ti.value > -900.0) {
            rep.verdict.type = Verdict::Type::FailsCertified;
            rep.verdict.bound = std::exp2(std::min(ti.value, 1020.0));
            rep.verdict.window = DerivationWindow{q, n0, true, 0};
            return rep;
        }
    }
    // tails certify each tested q but not beyond
    rep.verdict.type = best < std::log2(std::exp2(-20.0)) ? Verdict::Type::HoldsNumeric
                                                          : Verdict::Type::Inconclusive;
    if (rep.verdict.type == Verdict::Type::HoldsNumeric)
        for (std::int64_t q = 0; q <= std::min<std::int64_t>(q_max, 4); ++q)
            collect_schedule_witnesses(w, q, horizon, true, rep.witnesses);
    return rep;
}

// ---------------------------------------------------------------------------
// Pointwise scalar-set criterion
// ---------------------------------------------------------------------------

CriterionReport pointwise_gamma(const Weight& w, const ShiftSet& s, const GammaSet& g,
                                std::int64_t horizon) {
    if (horizon < 1) throw ArgumentError("horizon must be >= 1");
    CriterionReport rep;
    rep.kind = "pointwise_gamma";
    rep.verdict.horizon = horizon;
    rep.params = {{"horizon", std::to_string(horizon)}};
    Space sp = weight_space(w);
    auto shifts = enumerate_shifts(s, sp, horizon, 1u << 14);

    double best = kInf;
    int next_k = 1;
    for (const auto& sh : shifts) {
        double lm = 0.0;
        double v;
        if (sp == Space::Z) {
            const auto& dw = std::get<DiscreteWeight>(w);
            std::int64_t x = sh.as_int();
            v = objective_log2(dw.log2_at(static_cast<double>(x)), dw.log2_at(static_cast<double>(-x)), g,
                               &lm);
        } else {
            const RealPoint& p = sh.as_real();
            if (p.anchor != 0) continue;  // ladder shifts are origin-anchored
            GroupPoint neg = GroupPoint::real(0, -p.offset);
            v = objective_log2(std::log2(eval(w, sh)), std::log2(eval(w, neg)), g, &lm);
        }
        best = std::min(best, v);
        while (next_k <= 20 && v < -static_cast<double>(next_k)) {
            CriterionWitness cw;
            cw.s = sh;
            cw.lambda_magnitude = std::exp2(std::clamp(lm, -1000.0, 1000.0));
            cw.achieved = std::exp2(v);
            rep.witnesses.push_back(cw);
            ++next_k;
        }
    }
    rep.verdict.best_margin = std::exp2(best);

    // Admissibility flags: the iff reading needs every group translation
    // bounded, not just those in S.
    {
        auto s_rep = admissible(w, s, std::min<std::int64_t>(horizon, 128));
        rep.s_admissible = s_rep.admissible_up_to_horizon;
        auto g_rep = admissible(w, ShiftSet::all(), std::min<std::int64_t>(horizon, 48));
        rep.g_admissible = g_rep.admissible_up_to_horizon;
    }

    bool tails_available = sp == Space::Z;
    std::vector<int> dirs = tails_available ? tail_directions(s) : std::vector<int>{};
    bool any_zero_limit = false, all_positive = !dirs.empty();
    double tail_bound_log = kInf;
    bool tail_bound_rigorous = true;
    if (tails_available) {
        const auto& dw = std::get<DiscreteWeight>(w);
        for (int dir : dirs) {
            DirDescriptors dd = pointwise_dir(dw, dir);
            bool certifiable = true;
            double lim = phi_limit_log2(dd.lc, dd.ld, g, &certifiable);
            if (!certifiable) {
                all_positive = false;
                continue;
            }
            if (lim == -kInf) {
                any_zero_limit = true;
                all_positive = false;
            }
            std::int64_t n0 = std::max<std::int64_t>({std::llabs(dw.lo), std::llabs(dw.hi), 1}) + 1;
            // the enumeration must reach the tail start or shifts in
            // between would escape both bounds
            if (horizon < n0) tail_bound_rigorous = false;
            TailInf ti = phi_inf_log2(dd.lc, dd.ld, g, n0);
            tail_bound_log = std::min(tail_bound_log, ti.value);
            tail_bound_rigorous = tail_bound_rigorous && ti.exact;
        }
    }

    if (any_zero_limit) {
        rep.verdict.type = Verdict::Type::HoldsCertified;
    } else if (s.kind == ShiftSet::Kind::List && !shifts.empty() &&
               shifts.size() == s.list.size() && best > -kInf) {
        // finite S: the enumeration is exhaustive and exact
        rep.verdict.type = Verdict::Type::FailsCertified;
        rep.verdict.bound = std::exp2(best);
        rep.verdict.window = DerivationWindow{0, 0, false, static_cast<std::int64_t>(shifts.size()) - 1};
    } else if (all_positive && tail_bound_rigorous && tail_bound_log > -kInf) {
        double bound_log = std::min(best, tail_bound_log);
        rep.verdict.type = Verdict::Type::FailsCertified;
        rep.verdict.bound = std::exp2(std::min(bound_log, 1020.0));
        rep.verdict.window = DerivationWindow{0, 1, true, 0};
    } else if (best < -20.0) {
        rep.verdict.type = Verdict::Type::HoldsNumeric;
    } else {
        rep.verdict.type = Verdict::Type::Inconclusive;
    }

    if ((rep.verdict.type == Verdict::Type::HoldsCertified ||
         rep.verdict.type == Verdict::Type::HoldsNumeric) &&
        !rep.g_admissible) {
        rep.annotation = "necessary-condition semantics only: the weight is not admissible for "
                         "every group translation";
        if (sp == Space::Z) {
            CriterionReport cross = salas_supercyclic(std::get<DiscreteWeight>(w), 4, horizon);
            rep.cross_check_kind = cross.kind;
            rep.cross_check_verdict = verdict_name(cross.verdict.type);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Good subsets and the abelian window criterion
// ---------------------------------------------------------------------------

GoodSubset select_good_subset(const RealWeight& w, const Window& f, const GroupPoint& s,
                              double theta_c, double theta_d) {
    if (!(theta_c > 0.0) || !(theta_d > 0.0)) throw ArgumentError("thresholds must be positive");
    Window e1 = sublevel_set(w, f, s, theta_c);
    GroupPoint neg = negate(s);
    Window e2 = sublevel_set(w, f, neg, theta_d);
    GoodSubset out;
    out.subset = intersect_windows(e1, e2);
    out.deficit = measure(f) - measure(out.subset);
    return out;
}

std::vector<ScheduleItem> default_schedule(int m_max) {
    if (m_max < 1 || m_max > 20) throw ArgumentError("schedule needs 1 <= m_max <= 20");
    std::vector<ScheduleItem> out;
    for (int m = 1; m <= m_max; ++m)
        out.push_back(ScheduleItem{Window::interval(-m, m), std::exp2(-m)});
    return out;
}

namespace {

// Tail descriptor of sup_{t in F} w(t + dir*n) for large n: the window
// rides one monotone tail model, so the sup sits at a fixed edge of F.
ExpSum window_sup_descriptor(const DiscreteWeight& w, const IntInterval& f, int dir) {
    const TailModel& tm = dir > 0 ? w.right : w.left;
    // both tail families are monotone throughout, with direction b
    // (affine) resp. sign*b (double-exponential); the sup over the shifted
    // window therefore sits at a fixed edge
    double growth = tm.kind == TailModel::Kind::Log2Affine ? tm.b
                                                           : static_cast<double>(tm.sign) * tm.b;
    double edge = growth >= 0.0 ? static_cast<double>(f.hi) : static_cast<double>(f.lo);
    return tm.asym(dir, edge);
}

}  // namespace

CriterionReport abelian_density_check(const Weight& w, const ShiftSet& s, const GammaSet& g,
                                      double p, const std::vector<ScheduleItem>& schedule,
                                      std::int64_t horizon, bool p_norm_variant) {
    if (schedule.empty()) throw ArgumentError("schedule must not be empty");
    if (p < 1.0) throw ArgumentError("p must be >= 1");
    CriterionReport rep;
    rep.kind = p_norm_variant ? "abelian_density_pnorm" : "abelian_density";
    rep.verdict.horizon = horizon;
    rep.params = {{"p", std::to_string(p)},
                  {"schedule_items", std::to_string(schedule.size())},
                  {"horizon", std::to_string(horizon)}};
    Space sp = weight_space(w);
    auto shifts = enumerate_shifts(s, sp, horizon, 1u << 14);

    bool all_found = true;
    bool certified_all = sp == Space::Z;
    double worst_margin = 0.0;
    for (std::size_t mi = 0; mi < schedule.size(); ++mi) {
        const auto& item = schedule[mi];
        if (!(item.eps > 0.0)) throw ArgumentError("schedule eps must be positive");
        double leps = std::log2(item.eps);
        bool found = false;
        double best_phi = kInf;
        for (const auto& sh : shifts) {
            if (sp == Space::Z) {
                const auto& dw = std::get<DiscreteWeight>(w);
                Window fplus = shift_window(item.window, sh);
                Window fminus = shift_window(item.window, negate(sh));
                double lc, ld;
                if (p_norm_variant) {
                    lc = std::log2(local_norm(w, fplus, p));
                    ld = std::log2(local_norm(w, fminus, p));
                } else {
                    lc = log2_sup_on(dw, fplus.as_interval());
                    ld = log2_sup_on(dw, fminus.as_interval());
                }
                best_phi = std::min(best_phi, objective_log2(lc, ld, g));
                Feasibility fz = feasible_log2(lc, ld, leps, g);
                if (fz.ok) {
                    CriterionWitness cw;
                    cw.s = sh;
                    cw.lambda_magnitude = fz.witness_magnitude;
                    cw.window = item.window;
                    cw.achieved = std::exp2(objective_log2(lc, ld, g));
                    cw.q = static_cast<std::int64_t>(mi);
                    rep.witnesses.push_back(cw);
                    found = true;
                    break;
                }
            } else {
                const auto& rw = std::get<RealWeight>(w);
                Window fplus = shift_window(item.window, sh);
                Window fminus = shift_window(item.window, negate(sh));
                double c, d;
                if (p_norm_variant) {
                    c = local_norm(w, fplus, p);
                    d = local_norm(w, fminus, p);
                } else {
                    c = sup_on(w, fplus);
                    d = sup_on(w, fminus);
                }
                best_phi = std::min(best_phi, objective_log2(std::log2(c), std::log2(d), g));
                Feasibility fz = feasible(c, d, item.eps, g);
                if (fz.ok) {
                    CriterionWitness cw;
                    cw.s = sh;
                    cw.lambda_magnitude = fz.witness_magnitude;
                    cw.window = item.window;
                    cw.achieved = objective(c, d, g).value;
                    cw.q = static_cast<std::int64_t>(mi);
                    rep.witnesses.push_back(cw);
                    found = true;
                    break;
                }
                // carve a good subset: lambda grid around the balance point
                GammaObjective base = objective(c, d, g);
                double center = base.argmin_magnitude;
                if (!(center > 0.0) || !std::isfinite(center)) center = 1.0;
                for (int j = 0; j <= 40 && !found; ++j) {
                    int off = (j + 1) / 2 * (j % 2 == 1 ? +1 : -1);
                    double lam = g.project_magnitude(center * std::pow(std::sqrt(2.0), off));
                    double theta_c = item.eps * (1.0 - 1e-9) / lam;
                    double theta_d = item.eps * (1.0 - 1e-9) * lam;
                    GoodSubset gs = select_good_subset(rw, item.window, sh, theta_c, theta_d);
                    if (gs.deficit < item.eps && !gs.subset.is_empty()) {
                        double cc = sup_on(w, shift_window(gs.subset, sh));
                        double dd2 = sup_on(w, shift_window(gs.subset, negate(sh)));
                        if (lam * cc < item.eps && dd2 / lam < item.eps) {
                            CriterionWitness cw;
                            cw.s = sh;
                            cw.lambda_magnitude = lam;
                            cw.window = gs.subset;
                            cw.achieved = std::max(lam * cc, dd2 / lam);
                            cw.q = static_cast<std::int64_t>(mi);
                            rep.witnesses.push_back(cw);
                            found = true;
                        }
                    }
                }
                if (found) break;
            }
        }
        if (!found) {
            all_found = false;
            worst_margin = std::max(worst_margin, std::exp2(best_phi) / item.eps);
            // certified failure when the tails bound the functional away
            // from zero below eps for this window
            if (sp == Space::Z && !p_norm_variant) {
                const auto& dw = std::get<DiscreteWeight>(w);
                auto dirs = tail_directions(s);
                bool fails_certified = !dirs.empty();
                double bound_log = best_phi;
                for (int dir : dirs) {
                    ExpSum dc = window_sup_descriptor(dw, item.window.as_interval(), dir);
                    ExpSum dd = window_sup_descriptor(dw, item.window.as_interval(), -dir);
                    bool certifiable = true;
                    double lim = phi_limit_log2(dc, dd, g, &certifiable);
                    if (!certifiable || lim == -kInf) {
                        fails_certified = false;
                        break;
                    }
                    std::int64_t span = std::max(std::llabs(item.window.as_interval().lo),
                                                 std::llabs(item.window.as_interval().hi));
                    std::int64_t n0 = std::max<std::int64_t>(
                        {std::llabs(dw.lo), std::llabs(dw.hi), 1}) + span + 1;
                    TailInf ti = phi_inf_log2(dc, dd, g, n0);
                    if (!ti.exact || horizon < n0) {
                        fails_certified = false;
                        break;
                    }
                    bound_log = std::min(bound_log, ti.value);
                }
                if (fails_certified && bound_log >= leps) {
                    rep.verdict.type = Verdict::Type::FailsCertified;
                    rep.verdict.bound = std::exp2(std::min(bound_log, 1020.0));
                    rep.verdict.window = DerivationWindow{static_cast<std::int64_t>(mi), 1, true, 0};
                    rep.verdict.best_margin = std::exp2(best_phi);
                    return rep;
                }
            }
        }
        if (certified_all && sp == Space::Z) {
            // schedule item certifiable when the functional tends to 0
            const auto& dw = std::get<DiscreteWeight>(w);
            bool item_cert = false;
            for (int dir : tail_directions(s)) {
                ExpSum dc = window_sup_descriptor(dw, item.window.as_interval(), dir);
                ExpSum dd = window_sup_descriptor(dw, item.window.as_interval(), -dir);
                bool certifiable = true;
                if (phi_limit_log2(dc, dd, g, &certifiable) == -kInf && certifiable) item_cert = true;
            }
            certified_all = item_cert;
        }
    }
    if (all_found) {
        rep.verdict.type = (sp == Space::Z && certified_all) ? Verdict::Type::HoldsCertified
                                                             : Verdict::Type::HoldsNumeric;
        rep.verdict.best_margin = 0.0;
    } else {
        rep.verdict.type = Verdict::Type::Inconclusive;
        rep.verdict.best_margin = worst_margin;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Plan series and the greedy constructor
// ---------------------------------------------------------------------------

SeriesEval plan_series(const SynthesisPlan& plan, const Weight& w, double p, int n,
                       bool alpha_weighted) {
    if (n < 0 || n > static_cast<int>(plan.steps.size()))
        throw ArgumentError("series order exceeds the plan length");
    if (weight_space(w) != plan.space) throw SpaceMismatchError("plan/weight space mismatch");
    SeriesEval out;
    int total = n + 1;  // indices 0..n
    out.terms.assign(static_cast<std::size_t>(total), std::vector<double>(static_cast<std::size_t>(total), 0.0));
    auto window_of = [&](int idx) {
        return idx == 0 ? Window::empty_interval() : plan.steps[static_cast<std::size_t>(idx - 1)].window;
    };
    auto shift_of = [&](int idx) {
        return idx == 0 ? identity(plan.space) : plan.steps[static_cast<std::size_t>(idx - 1)].s;
    };
    auto lambda_of = [&](int idx) {
        return idx == 0 ? 1.0 : plan.steps[static_cast<std::size_t>(idx - 1)].lambda_mag;
    };
    auto alpha_of = [&](int idx) {
        return idx == 0 ? 1.0 : plan.steps[static_cast<std::size_t>(idx - 1)].alpha;
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j < i; ++j) {
            Window a = shift_window(window_of(i), negate(shift_of(i)));
            Window b = shift_window(window_of(j), negate(shift_of(j)));
            if (!disjoint(a, b)) out.disjoint_ok = false;
        }
    for (int i = 0; i <= n; ++i) {
        for (int k = 0; k <= n; ++k) {
            if (i == k || window_of(k).is_empty()) continue;
            Window moved = shift_window(shift_window(window_of(k), negate(shift_of(k))), shift_of(i));
            double term = std::pow(lambda_of(i) / lambda_of(k), p) * local_norm_pow(w, moved, p);
            if (alpha_weighted) term *= alpha_of(k);
            out.terms[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = term;
            out.partial_sum += term;
        }
    }
    return out;
}

GreedyResult greedy_plan(const Weight& w, const ShiftSet& s, const GammaSet& g, double p,
                         const std::vector<Window>& target_windows,
                         const std::vector<double>& alphas, std::int64_t horizon) {
    if (p < 1.0) throw ArgumentError("p must be >= 1");
    if (target_windows.size() != alphas.size())
        throw ArgumentError("one alpha budget per target window is required");
    Space sp = weight_space(w);
    GreedyResult res;
    res.plan.space = sp;
    res.plan.p = p;
    res.plan.weight = w;
    res.plan.gamma = g;
    auto shifts = enumerate_shifts(s, sp, horizon, 1u << 14);
    for (std::size_t i = 0; i < target_windows.size(); ++i) {
        int n = static_cast<int>(i) + 1;
        double budget = std::exp2(-n);
        const Window& fn = target_windows[i];
        double alpha_n = alphas[i];
        if (!(alpha_n > 0.0)) throw ArgumentError("alpha budgets must be positive");
        bool placed = false;
        double best_ratio = kInf;
        for (const auto& sh : shifts) {
            // C0: shifted windows pairwise disjoint
            Window mine = shift_window(fn, negate(sh));
            bool ok = true;
            for (const auto& st : res.plan.steps) {
                if (!disjoint(mine, shift_window(st.window, negate(st.s)))) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            // budget sums as functions of |lambda|^p
            double a_self = alpha_n * local_norm_pow(w, mine, p);  // C1 numerator
            double b_prev = 0.0;                                  // C3 numerator
            double q_prev = 0.0;                                  // C2 / |lambda|^p coefficient
            for (const auto& st : res.plan.steps) {
                Window toward_prev = shift_window(mine, st.s);
                b_prev += alpha_n * std::pow(st.lambda_mag, p) * local_norm_pow(w, toward_prev, p);
                Window prev_moved = shift_window(shift_window(st.window, negate(st.s)), sh);
                q_prev += st.alpha * local_norm_pow(w, prev_moved, p) / std::pow(st.lambda_mag, p);
            }
            double need_hi = std::max(a_self, b_prev);
            double ratio = need_hi * q_prev / (budget * budget);
            best_ratio = std::min(best_ratio, ratio);
            // |l|^p must exceed max(a_self, b_prev)/budget and stay below
            // budget/q_prev: the same interval shape gamma feasibility solves
            Feasibility fz = feasible(std::pow(q_prev, 1.0 / p), std::pow(need_hi, 1.0 / p),
                                      std::pow(budget, 1.0 / p), g);
            if (!fz.ok) continue;
            double lam = fz.witness_magnitude;
            double lam_p = std::pow(lam, p);
            double c1 = a_self / lam_p;
            double c2 = lam_p * q_prev;
            double c3 = b_prev / lam_p;
            if (!(c1 < budget && c2 < budget && c3 < budget)) continue;
            PlanStep step;
            step.n = n;
            step.s = sh;
            step.lambda_mag = lam;
            step.window = fn;
            step.alpha = alpha_n;
            step.margin_c1 = budget - c1;
            step.margin_c2 = budget - c2;
            step.margin_c3 = budget - c3;
            res.plan.steps.push_back(step);
            placed = true;
            break;
        }
        if (!placed) {
            res.ok = false;
            res.failed_step = n;
            res.best_margin = std::min(best_ratio, 1e300);  // keep reports JSON-clean
            return res;
        }
    }
    res.ok = true;
    return res;
}

}  // namespace orbitforge

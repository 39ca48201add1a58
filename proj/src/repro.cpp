#include "orbitforge/repro.hpp"

#include <cmath>
#include <cstdio>

#include "orbitforge/approx.hpp"
#include "orbitforge/gamma.hpp"

namespace orbitforge {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

RealWeight make_r_peaks(int n_max) {
    if (n_max < 2 || n_max > 14) throw ArgumentError("r_peaks needs 2 <= n_max <= 14");
    RealWeight w;
    w.anchors = std::make_shared<AnchorTable>(AnchorTable::factorial(n_max));
    w.default_value = 1.0;
    for (int id = 1; id < w.anchors->size(); ++id) {
        int n = id + 1;  // anchor id holds position (id+1)!
        double peak = std::exp2(n);
        std::vector<Segment> segs;
        segs.push_back(Segment{-static_cast<double>(n), -1.0, SegKind::Exp2, peak, 1.0});
        segs.push_back(Segment{-1.0, -0.5, SegKind::Const, peak / 2.0, 0.0});
        segs.push_back(Segment{-0.5, 0.0, SegKind::Affine, 1.0, -(peak - 2.0)});
        segs.push_back(Segment{0.0, std::exp2(-n), SegKind::Affine, 1.0, peak * peak - peak});
        segs.push_back(Segment{std::exp2(-n), 1.0, SegKind::Recip, 1.0, 0.0});
        w.per_anchor.push_back({id, std::move(segs)});
    }
    w.validate();
    return w;
}

SupportedVec make_claim2_vector(int n_max) {
    if (n_max < 2 || n_max > 14) throw ArgumentError("claim2_vector needs 2 <= n_max <= 14");
    StepVec sv;
    sv.anchors = std::make_shared<AnchorTable>(AnchorTable::factorial(n_max));
    for (int id = 1; id < sv.anchors->size(); ++id) {
        int k = id + 1;
        sv.parts.push_back(StepPart{id, -std::exp2(-k), 0.0, cplx(1.0, 0.0)});
    }
    return SupportedVec::step(std::move(sv));
}

DiscreteWeight make_ex52_v1() {
    DiscreteWeight w;
    w.lo = 0;
    w.hi = 0;
    w.values = {1.0};
    w.left = TailModel::affine(0.0, 0.0);
    w.right = TailModel::affine(0.0, -1.0);
    w.validate();
    return w;
}

DiscreteWeight make_ex52_v2() {
    DiscreteWeight w;
    w.lo = 0;
    w.hi = 0;
    w.values = {1.0};
    w.left = TailModel::affine(0.0, 1.0);
    w.right = TailModel::affine(0.0, 0.0);
    w.validate();
    return w;
}

DiscreteWeight make_final_z() {
    DiscreteWeight w;
    w.lo = -1;
    w.hi = 0;
    w.values = {std::exp2(-4.0), 2.0};
    w.left = TailModel::double_exp(-1, 2.0, -1.0);
    w.right = TailModel::double_exp(+1, 1.0, 1.0);
    w.validate();
    return w;
}

DiscreteWeight make_twosided_exp() {
    DiscreteWeight w;
    w.lo = 0;
    w.hi = 0;
    w.values = {1.0};
    w.left = TailModel::affine(0.0, 1.0);
    w.right = TailModel::affine(0.0, -1.0);
    w.validate();
    return w;
}

bool is_weight_alias(const std::string& id) {
    return id == "r_peaks" || id == "ex52_v1" || id == "ex52_v2" || id == "final_z" ||
           id == "twosided_exp";
}

Weight build_weight_alias(const std::string& id, int n_max) {
    if (id == "r_peaks") return make_r_peaks(n_max);
    if (id == "ex52_v1") return make_ex52_v1();
    if (id == "ex52_v2") return make_ex52_v2();
    if (id == "final_z") return make_final_z();
    if (id == "twosided_exp") return make_twosided_exp();
    throw ArgumentError("unknown weight alias: " + id);
}

std::string ExperimentTable::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out += columns[i];
        out += i + 1 == columns.size() ? '\n' : ',';
    }
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            out += i + 1 == row.size() ? '\n' : ',';
        }
    return out;
}

namespace {

ExperimentTable experiment_claim1(const ExperimentParams& prm) {
    ExperimentTable t;
    t.columns = {"s", "m_hat", "lower_bound", "upper_bound", "witness_ratio", "within_bounds"};
    RealWeight w = make_r_peaks(prm.n_max);
    const AnchorTable& anchors = *w.anchors;
    for (int n = prm.n_lo; n <= prm.n_hi; ++n) {
        double s = std::exp2(-n);
        MBound mb = m_bound(w, GroupPoint::real(0, s), anchors.size());
        double lo = 1.0 / (8.0 * s), hi = 2.0 / s;
        // witness at the anchor with the matching peak scale
        int id = n - 1;
        double num = w.eval_local(id, s);
        double den = w.eval_local(id, 0.0);
        double witness = num / den;
        bool ok = lo <= mb.value && mb.value <= hi &&
                  witness == 1.0 + (std::exp2(2.0 * n) - std::exp2(n)) * s && mb.value >= witness;
        t.rows.push_back({fmt(s), fmt(mb.value), fmt(lo), fmt(hi), fmt(witness), ok ? "1" : "0"});
    }
    return t;
}

ExperimentTable experiment_claim2(const ExperimentParams& prm) {
    ExperimentTable t;
    t.columns = {"n", "p", "norm_p", "closed_form", "growth_bound", "ratio"};
    RealWeight w = make_r_peaks(std::max(prm.n_max, prm.n_hi));
    for (double p : prm.ps) {
        for (int n = prm.n_lo; n <= prm.n_hi; ++n) {
            int id = n - 1;
            RealUnion win;
            win.anchors = w.anchors;
            win.spans.push_back(RealSpan{id, 0.0, std::exp2(-n)});
            double normp = local_norm_pow(w, Window::real_union(w.anchors, win.spans), p);
            double closed = (std::exp2(n * (p + 1.0)) - 1.0) /
                            ((p + 1.0) * (std::exp2(2.0 * n) - std::exp2(n)));
            double bound = std::exp2(n * (p - 1.0)) / ((p + 1.0) * std::exp2(p));
            t.rows.push_back({fmt(n), fmt(p), fmt(normp), fmt(closed), fmt(bound),
                              fmt(normp / bound)});
        }
    }
    return t;
}

ExperimentTable experiment_ex52(const ExperimentParams& prm) {
    ExperimentTable t;
    t.columns = {"criterion", "verdict", "bound"};
    DiscreteWeight w = make_ex52_v1();
    CriterionReport hyper = salas_hypercyclic(w, 8, prm.horizon);
    CriterionReport pw = pointwise_gamma(w, ShiftSet::half_line_pos(), GammaSet::all_nonzero(),
                                         prm.horizon);
    t.rows.push_back({hyper.kind, verdict_name(hyper.verdict.type), fmt(hyper.verdict.bound)});
    t.rows.push_back({pw.kind, verdict_name(pw.verdict.type), fmt(pw.verdict.bound)});
    return t;
}

ExperimentTable experiment_final_z(const ExperimentParams& prm) {
    ExperimentTable t;
    t.columns = {"check", "result", "detail"};
    DiscreteWeight w = make_final_z();
    CriterionReport pw = pointwise_gamma(w, ShiftSet::half_line_neg(), GammaSet::all_nonzero(),
                                         prm.horizon);
    CriterionReport sc = salas_supercyclic(w, 8, prm.horizon);
    auto s_adm = admissible(w, ShiftSet::half_line_neg(), 64);
    auto g_adm = admissible(w, ShiftSet::all(), 48);
    t.rows.push_back({pw.kind, verdict_name(pw.verdict.type), pw.annotation});
    t.rows.push_back({sc.kind, verdict_name(sc.verdict.type), fmt(sc.verdict.bound)});
    t.rows.push_back({"s_admissible", s_adm.admissible_up_to_horizon ? "1" : "0", ""});
    t.rows.push_back({"g_admissible", g_adm.admissible_up_to_horizon ? "1" : "0", ""});
    return t;
}

}  // namespace

ExperimentTable run_experiment(const std::string& id, const ExperimentParams& params) {
    if (id == "claim1") return experiment_claim1(params);
    if (id == "claim2") return experiment_claim2(params);
    if (id == "ex52") return experiment_ex52(params);
    if (id == "final_z") return experiment_final_z(params);
    throw ArgumentError("unknown experiment id: " + id);
}

}  // namespace orbitforge

#include "orbitforge/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace orbitforge {

namespace {

const char* space_name(Space s) {
    switch (s) {
        case Space::Z: return "Z";
        case Space::Zd: return "Zd";
        case Space::R: return "R";
    }
    return "Z";
}

Space space_from(const std::string& s) {
    if (s == "Z") return Space::Z;
    if (s == "Zd") return Space::Zd;
    if (s == "R") return Space::R;
    throw ArgumentError("unknown space tag: " + s);
}

json anchors_to_json(const AnchorTablePtr& t) {
    json a = json::array();
    for (auto p : t->positions()) a.push_back(p);
    return a;
}

AnchorTablePtr anchors_from_json(const json& j) {
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s.rfind("factorial:", 0) == 0) {
            int nmax = std::stoi(s.substr(10));
            return std::make_shared<AnchorTable>(AnchorTable::factorial(nmax));
        }
        throw ArgumentError("anchors: unknown alias " + s);
    }
    std::vector<std::int64_t> pos;
    for (const auto& v : j) pos.push_back(v.get<std::int64_t>());
    return std::make_shared<AnchorTable>(std::move(pos));
}

json tail_to_json(const TailModel& t) {
    json j;
    if (t.kind == TailModel::Kind::Log2Affine) {
        j["kind"] = "log2affine";
        j["a"] = t.a;
        j["b"] = t.b;
    } else {
        j["kind"] = "log2doubleexp";
        j["sign"] = t.sign;
        j["c"] = t.c;
        j["b"] = t.b;
    }
    return j;
}

TailModel tail_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "log2affine") return TailModel::affine(j.at("a").get<double>(), j.at("b").get<double>());
    if (kind == "log2doubleexp")
        return TailModel::double_exp(j.at("sign").get<int>(), j.at("c").get<double>(),
                                     j.at("b").get<double>());
    throw ArgumentError("tail: unknown kind " + kind);
}

const char* seg_kind_name(SegKind k) {
    switch (k) {
        case SegKind::Const: return "const";
        case SegKind::Affine: return "affine";
        case SegKind::Exp2: return "exp2";
        case SegKind::Recip: return "recip";
    }
    return "const";
}

SegKind seg_kind_from(const std::string& s) {
    if (s == "const") return SegKind::Const;
    if (s == "affine") return SegKind::Affine;
    if (s == "exp2") return SegKind::Exp2;
    if (s == "recip") return SegKind::Recip;
    throw ArgumentError("segments: unknown kind " + s);
}

}  // namespace

json to_json(const GroupPoint& p) {
    switch (p.space()) {
        case Space::Z: return json(p.as_int());
        case Space::Zd: {
            json a = json::array();
            for (auto v : p.as_lattice()) a.push_back(v);
            return a;
        }
        case Space::R: {
            json j;
            j["anchor"] = p.as_real().anchor;
            j["offset"] = p.as_real().offset;
            return j;
        }
    }
    return json();
}

GroupPoint group_point_from_json(const json& j, Space space) {
    switch (space) {
        case Space::Z: return GroupPoint::integer(j.get<std::int64_t>());
        case Space::Zd: {
            std::vector<std::int64_t> v;
            for (const auto& x : j) v.push_back(x.get<std::int64_t>());
            return GroupPoint::lattice(std::move(v));
        }
        case Space::R:
            return GroupPoint::real(j.at("anchor").get<int>(), j.at("offset").get<double>());
    }
    throw ArgumentError("unreachable");
}

json to_json(const Window& k) {
    json j;
    switch (k.space()) {
        case Space::Z:
            j["lo"] = k.as_interval().lo;
            j["hi"] = k.as_interval().hi;
            return j;
        case Space::Zd:
            j["lo"] = k.as_box().lo;
            j["hi"] = k.as_box().hi;
            return j;
        case Space::R: {
            json spans = json::array();
            for (const auto& s : k.as_union().spans) {
                json sj;
                sj["anchor"] = s.anchor;
                sj["lo"] = s.lo;
                sj["hi"] = s.hi;
                spans.push_back(sj);
            }
            j["spans"] = spans;
            return j;
        }
    }
    return j;
}

Window window_from_json(const json& j, Space space, AnchorTablePtr anchors) {
    switch (space) {
        case Space::Z:
            return Window::interval(j.at("lo").get<std::int64_t>(), j.at("hi").get<std::int64_t>());
        case Space::Zd:
            return Window::box(j.at("lo").get<std::vector<std::int64_t>>(),
                               j.at("hi").get<std::vector<std::int64_t>>());
        case Space::R: {
            std::vector<RealSpan> spans;
            for (const auto& sj : j.at("spans"))
                spans.push_back(RealSpan{sj.at("anchor").get<int>(), sj.at("lo").get<double>(),
                                         sj.at("hi").get<double>()});
            return Window::real_union(std::move(anchors), std::move(spans));
        }
    }
    throw ArgumentError("unreachable");
}

json to_json(const SupportedVec& f) {
    json j;
    j["space"] = space_name(f.space());
    if (f.space() == Space::R) {
        const auto& sv = f.as_step();
        j["anchors"] = anchors_to_json(sv.anchors);
        json entries = json::array();
        for (const auto& part : sv.parts) {
            json e;
            json iv;
            iv["anchor"] = part.anchor;
            iv["lo"] = part.lo;
            iv["hi"] = part.hi;
            e["interval"] = iv;
            e["re"] = part.coef.real();
            e["im"] = part.coef.imag();
            entries.push_back(e);
        }
        j["entries"] = entries;
        return j;
    }
    const auto& dv = f.as_discrete();
    if (f.space() == Space::Zd) j["dim"] = dv.dim;
    json entries = json::array();
    for (const auto& e : dv.entries) {
        json ej;
        if (dv.dim == 1)
            ej["point"] = e.first[0];
        else
            ej["point"] = e.first;
        ej["re"] = e.second.real();
        ej["im"] = e.second.imag();
        entries.push_back(ej);
    }
    j["entries"] = entries;
    return j;
}

SupportedVec vector_from_json(const json& j) {
    Space sp = space_from(j.at("space").get<std::string>());
    if (sp == Space::R) {
        StepVec sv;
        sv.anchors = anchors_from_json(j.at("anchors"));
        for (const auto& e : j.at("entries")) {
            const auto& iv = e.at("interval");
            sv.parts.push_back(StepPart{iv.at("anchor").get<int>(), iv.at("lo").get<double>(),
                                        iv.at("hi").get<double>(),
                                        cplx(e.at("re").get<double>(), e.at("im").get<double>())});
        }
        return SupportedVec::step(std::move(sv));
    }
    DiscreteVec dv;
    dv.dim = sp == Space::Z ? 1 : j.at("dim").get<int>();
    for (const auto& e : j.at("entries")) {
        std::vector<std::int64_t> pt;
        if (dv.dim == 1)
            pt.push_back(e.at("point").get<std::int64_t>());
        else
            pt = e.at("point").get<std::vector<std::int64_t>>();
        dv.entries.push_back({std::move(pt), cplx(e.at("re").get<double>(), e.at("im").get<double>())});
    }
    return SupportedVec::discrete(std::move(dv));
}

json to_json(const Weight& w) {
    json j;
    if (std::holds_alternative<DiscreteWeight>(w)) {
        const auto& dw = std::get<DiscreteWeight>(w);
        j["space"] = "Z";
        json win;
        win["lo"] = dw.lo;
        win["hi"] = dw.hi;
        win["values"] = dw.values;
        j["window"] = win;
        j["left_tail"] = tail_to_json(dw.left);
        j["right_tail"] = tail_to_json(dw.right);
        return j;
    }
    const auto& rw = std::get<RealWeight>(w);
    j["space"] = "R";
    j["anchors"] = anchors_to_json(rw.anchors);
    json segs = json::array();
    for (const auto& [aid, list] : rw.per_anchor)
        for (const auto& s : list) {
            json sj;
            sj["anchor"] = aid;
            sj["lo"] = s.lo;
            sj["hi"] = s.hi;
            sj["kind"] = seg_kind_name(s.kind);
            sj["A"] = s.A;
            sj["B"] = s.B;
            segs.push_back(sj);
        }
    j["segments"] = segs;
    j["default"] = rw.default_value;
    return j;
}

Weight weight_from_json(const json& j) {
    Space sp = space_from(j.at("space").get<std::string>());
    if (sp == Space::Z) {
        DiscreteWeight w;
        const auto& win = j.at("window");
        w.lo = win.at("lo").get<std::int64_t>();
        w.hi = win.at("hi").get<std::int64_t>();
        w.values = win.at("values").get<std::vector<double>>();
        w.left = tail_from_json(j.at("left_tail"));
        w.right = tail_from_json(j.at("right_tail"));
        w.validate();
        return w;
    }
    if (sp != Space::R) throw ArgumentError("weights live on Z or R");
    RealWeight w;
    w.anchors = anchors_from_json(j.at("anchors"));
    w.default_value = j.value("default", 1.0);
    std::map<int, std::vector<Segment>> per;
    for (const auto& sj : j.at("segments")) {
        Segment s;
        s.lo = sj.at("lo").get<double>();
        s.hi = sj.at("hi").get<double>();
        s.kind = seg_kind_from(sj.at("kind").get<std::string>());
        s.A = sj.at("A").get<double>();
        s.B = sj.value("B", 0.0);
        per[sj.at("anchor").get<int>()].push_back(s);
    }
    for (auto& [aid, list] : per) {
        std::sort(list.begin(), list.end(), [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
        w.per_anchor.push_back({aid, std::move(list)});
    }
    w.validate();
    return w;
}

json to_json(const GammaSet& g) {
    json j;
    switch (g.kind) {
        case GammaSet::Kind::AllNonzero: j["kind"] = "all"; break;
        case GammaSet::Kind::ZeroToOne: j["kind"] = "zero_to_one"; break;
        case GammaSet::Kind::OneToInf: j["kind"] = "one_to_inf"; break;
        case GammaSet::Kind::Singleton:
            j["kind"] = "singleton";
            j["magnitude"] = g.r;
            break;
        case GammaSet::Kind::Annulus:
            j["kind"] = "annulus";
            j["r"] = g.r;
            j["R"] = g.R;
            break;
        case GammaSet::Kind::Grid:
            j["kind"] = "grid";
            j["magnitudes"] = g.grid;
            break;
    }
    return j;
}

GammaSet gamma_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "all") return GammaSet::all_nonzero();
    if (kind == "zero_to_one") return GammaSet::zero_to_one();
    if (kind == "one_to_inf") return GammaSet::one_to_inf();
    if (kind == "singleton") {
        if (j.contains("magnitude")) return GammaSet::singleton(j.at("magnitude").get<double>());
        return GammaSet::singleton(cplx(j.at("re").get<double>(), j.value("im", 0.0)));
    }
    if (kind == "annulus") return GammaSet::annulus(j.at("r").get<double>(), j.at("R").get<double>());
    if (kind == "grid") {
        std::vector<cplx> pts;
        for (const auto& m : j.at("magnitudes")) pts.push_back(cplx(m.get<double>(), 0.0));
        return GammaSet::grid_of(std::move(pts));
    }
    throw ArgumentError("gamma: unknown kind " + kind);
}

GammaSet gamma_from_inline(const std::string& text) {
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, sep)) out.push_back(item);
        return out;
    };
    if (text == "all") return GammaSet::all_nonzero();
    if (text == "zero_to_one") return GammaSet::zero_to_one();
    if (text == "one_to_inf") return GammaSet::one_to_inf();
    auto parts = split(text, ':');
    if (parts.size() == 2 && parts[0] == "singleton") return GammaSet::singleton(std::stod(parts[1]));
    if (parts.size() == 3 && parts[0] == "annulus")
        return GammaSet::annulus(std::stod(parts[1]), std::stod(parts[2]));
    if (parts.size() == 2 && parts[0] == "grid") {
        std::vector<cplx> pts;
        for (const auto& m : split(parts[1], ',')) pts.push_back(cplx(std::stod(m), 0.0));
        return GammaSet::grid_of(std::move(pts));
    }
    if (parts.size() == 3 && parts[0] == "grid_pow2") {
        // grid_pow2:k_lo:k_hi -> magnitudes 2^k
        std::vector<cplx> pts;
        for (int k = std::stoi(parts[1]); k <= std::stoi(parts[2]); ++k)
            pts.push_back(cplx(std::exp2(k), 0.0));
        return GammaSet::grid_of(std::move(pts));
    }
    throw ArgumentError("gamma: cannot parse '" + text + "'");
}

json to_json(const ShiftSet& s) {
    json j;
    switch (s.kind) {
        case ShiftSet::Kind::All: j["kind"] = "all"; break;
        case ShiftSet::Kind::HalfLinePos: j["kind"] = "half_line_pos"; break;
        case ShiftSet::Kind::HalfLineNeg: j["kind"] = "half_line_neg"; break;
        case ShiftSet::Kind::SingleGenerator:
            j["kind"] = "single_generator";
            j["generator"] = to_json(s.generator);
            break;
        case ShiftSet::Kind::List: {
            j["kind"] = "list";
            json pts = json::array();
            for (const auto& p : s.list) pts.push_back(to_json(p));
            j["points"] = pts;
            break;
        }
        case ShiftSet::Kind::Arithmetic:
            j["kind"] = "arithmetic";
            j["a"] = s.a;
            j["step"] = s.step;
            break;
    }
    return j;
}

ShiftSet shifts_from_json(const json& j) {
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "all") return ShiftSet::all();
    if (kind == "half_line_pos") return ShiftSet::half_line_pos();
    if (kind == "half_line_neg") return ShiftSet::half_line_neg();
    if (kind == "single_generator")
        return ShiftSet::single(group_point_from_json(j.at("generator"), Space::Z));
    if (kind == "list") {
        std::vector<GroupPoint> pts;
        for (const auto& p : j.at("points")) pts.push_back(group_point_from_json(p, Space::Z));
        return ShiftSet::of_list(std::move(pts));
    }
    if (kind == "arithmetic")
        return ShiftSet::arithmetic(j.at("a").get<std::int64_t>(), j.at("step").get<std::int64_t>());
    throw ArgumentError("shifts: unknown kind " + kind);
}

ShiftSet shifts_from_inline(const std::string& text) {
    if (text == "all") return ShiftSet::all();
    if (text == "half_line_pos") return ShiftSet::half_line_pos();
    if (text == "half_line_neg") return ShiftSet::half_line_neg();
    if (text.rfind("single:", 0) == 0)
        return ShiftSet::single(GroupPoint::integer(std::stoll(text.substr(7))));
    if (text.rfind("arithmetic:", 0) == 0) {
        auto rest = text.substr(11);
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw ArgumentError("shifts: arithmetic:a:step");
        return ShiftSet::arithmetic(std::stoll(rest.substr(0, colon)), std::stoll(rest.substr(colon + 1)));
    }
    if (text.rfind("list:", 0) == 0) {
        std::vector<GroupPoint> pts;
        std::stringstream ss(text.substr(5));
        std::string item;
        while (std::getline(ss, item, ',')) pts.push_back(GroupPoint::integer(std::stoll(item)));
        return ShiftSet::of_list(std::move(pts));
    }
    throw ArgumentError("shifts: cannot parse '" + text + "'");
}

json to_json(const CriterionReport& r) {
    json j;
    j["kind"] = r.kind;
    json v;
    v["type"] = verdict_name(r.verdict.type);
    v["bound"] = r.verdict.bound;
    v["horizon"] = r.verdict.horizon;
    v["best_margin"] = r.verdict.best_margin;
    json dw;
    dw["q"] = r.verdict.window.q;
    dw["n_lo"] = r.verdict.window.n_lo;
    dw["unbounded"] = r.verdict.window.unbounded;
    dw["n_hi"] = r.verdict.window.n_hi;
    v["derivation_window"] = dw;
    json ws = json::array();
    for (const auto& cw : r.witnesses) {
        json wj;
        wj["s"] = to_json(cw.s);
        wj["lambda_magnitude"] = cw.lambda_magnitude;
        wj["window"] = to_json(cw.window);
        wj["achieved"] = cw.achieved;
        wj["q"] = cw.q;
        ws.push_back(wj);
    }
    v["witnesses"] = ws;
    j["verdict"] = v;
    json params = json::object();
    for (const auto& [k2, v2] : r.params) params[k2] = v2;
    j["params"] = params;
    j["s_admissible"] = r.s_admissible;
    j["g_admissible"] = r.g_admissible;
    j["annotation"] = r.annotation;
    if (!r.cross_check_kind.empty()) {
        json cc;
        cc["kind"] = r.cross_check_kind;
        cc["verdict"] = r.cross_check_verdict;
        j["cross_check"] = cc;
    }
    return j;
}

json to_json(const ApproxResult& r) {
    json j;
    j["s"] = to_json(r.s_star);
    json lam;
    lam["re"] = r.lambda_star.real();
    lam["im"] = r.lambda_star.imag();
    j["lambda"] = lam;
    j["error"] = r.error;
    j["attained"] = r.attained;
    return j;
}

json to_json(const SynthesisPlan& p) {
    json j;
    j["space"] = space_name(p.space);
    j["p"] = p.p;
    j["gamma"] = to_json(p.gamma);
    j["weight"] = to_json(p.weight);
    json steps = json::array();
    for (const auto& st : p.steps) {
        json sj;
        sj["n"] = st.n;
        sj["s"] = to_json(st.s);
        sj["lambda_magnitude"] = st.lambda_mag;
        sj["window"] = to_json(st.window);
        sj["alpha"] = st.alpha;
        sj["margin_c1"] = st.margin_c1;
        sj["margin_c2"] = st.margin_c2;
        sj["margin_c3"] = st.margin_c3;
        steps.push_back(sj);
    }
    j["steps"] = steps;
    return j;
}

json to_json(const DenseVectorCandidate& c) {
    json j;
    json comps = json::array();
    for (const auto& f : c.components) comps.push_back(to_json(f));
    j["components"] = comps;
    j["truncation"] = c.truncation;
    j["norm_bound_pow"] = c.norm_bound_pow;
    json certs = json::array();
    for (const auto& ct : c.certificates) {
        json cj;
        cj["n"] = ct.n;
        cj["bound"] = ct.bound;
        cj["bound_pow"] = ct.bound_pow;
        certs.push_back(cj);
    }
    j["certificates"] = certs;
    j["plan"] = to_json(c.plan);
    return j;
}

json to_json(const MBound& m) {
    json j;
    // JSON has no infinity literal; a certified infinite norm is a result
    if (std::isinf(m.value))
        j["value"] = "inf";
    else
        j["value"] = m.value;
    j["certified"] = m.certified;
    j["witness"] = to_json(m.witness);
    j["diverging"] = m.diverging;
    return j;
}

json to_json(const AdmissibilityReport& r) {
    json j;
    j["horizon"] = r.horizon;
    j["admissible_up_to_horizon"] = r.admissible_up_to_horizon;
    j["certified"] = r.certified;
    json es = json::array();
    for (const auto& e : r.entries) {
        json ej;
        ej["s"] = to_json(e.s);
        ej["bound"] = to_json(e.bound);
        es.push_back(ej);
    }
    j["entries"] = es;
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ArgumentError("cannot open file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw ArgumentError("cannot write file: " + path);
    f << content;
}

}  // namespace orbitforge

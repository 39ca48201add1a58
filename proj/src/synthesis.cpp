#include "orbitforge/synthesis.hpp"

#include <algorithm>
#include <cmath>

namespace orbitforge {

namespace {

// palette order 1, -1, 2, -2, 1/2, -1/2, 4, -4, ...
double palette_coef(int depth, int index) {
    int pair = index / 2;
    int sign = index % 2 == 0 ? +1 : -1;
    int e = (pair + 1) / 2 * (pair % 2 == 1 ? +1 : -1);
    (void)depth;
    return sign * std::exp2(e);
}

int palette_size(int depth) { return 2 * (2 * depth + 1); }

// position order 0, 1, -1, 2, -2, ...
std::int64_t position_at(int index) {
    int pair = (index + 1) / 2;
    return index % 2 == 1 ? pair : -pair;
}

}  // namespace

TargetStream::TargetStream(TargetConfig cfg) : cfg_(cfg) {
    if (cfg_.width < 1) throw ArgumentError("tuple width must be >= 1");
    if (cfg_.coeff_depth < 0 || cfg_.radius_base < 0)
        throw ArgumentError("target config needs nonnegative depth and radius");
}

TargetStream enumerate_targets(const TargetConfig& cfg) { return TargetStream(cfg); }

std::int64_t TargetStream::base_index(std::int64_t k) {
    // k+1 = 2^a (2b+1) -> b; every b recurs infinitely often
    std::int64_t m = k + 1;
    while ((m & 1) == 0) m >>= 1;
    return m >> 1;
}

SupportedVec TargetStream::component(std::int64_t sub_index) const {
    // walk levels: level l holds (2r+1) point masses plus one block
    // indicator per palette entry
    std::int64_t rem = sub_index;
    int level = 0;
    while (true) {
        int r = cfg_.radius_base + level;
        int pal = palette_size(std::min(level, cfg_.coeff_depth));
        std::int64_t size = static_cast<std::int64_t>(2 * r + 2) * pal;
        if (rem < size) {
            DiscreteVec d;
            d.dim = 1;
            std::int64_t points = static_cast<std::int64_t>(2 * r + 1) * pal;
            if (rem < points) {
                int pos_index = static_cast<int>(rem / pal);
                int pal_index = static_cast<int>(rem % pal);
                d.entries.push_back({{position_at(pos_index)}, palette_coef(level, pal_index)});
            } else {
                int pal_index = static_cast<int>(rem - points);
                cplx coef = palette_coef(level, pal_index);
                for (std::int64_t t = -r; t <= r; ++t) d.entries.push_back({{t}, coef});
            }
            return SupportedVec::discrete(std::move(d));
        }
        rem -= size;
        ++level;
    }
}

std::vector<SupportedVec> TargetStream::tuple(std::int64_t k) const {
    if (k < 0) throw ArgumentError("stream index must be nonnegative");
    std::int64_t b = base_index(k);
    // de-interleave b's bits into width sub-indices
    std::vector<std::int64_t> subs(static_cast<std::size_t>(cfg_.width), 0);
    for (int bit = 0; bit < 62; ++bit) {
        if ((b >> bit) & 1) {
            int comp = bit % cfg_.width;
            subs[static_cast<std::size_t>(comp)] |= std::int64_t{1} << (bit / cfg_.width);
        }
    }
    std::vector<SupportedVec> out;
    out.reserve(static_cast<std::size_t>(cfg_.width));
    for (auto si : subs) out.push_back(component(si));
    return out;
}

double TargetStream::alpha(std::int64_t k, double p) const {
    double a = 0.0;
    for (const auto& v : tuple(k)) a = std::max(a, std::pow(sup_norm(v), p));
    return a;
}

std::vector<Window> plan_windows(const TargetStream& targets, int count) {
    std::vector<Window> out;
    std::int64_t lo = 0, hi = 0;
    for (int i = 0; i < count; ++i) {
        for (const auto& v : targets.tuple(i)) {
            Window h = support_hull(v);
            if (!h.is_empty()) {
                lo = std::min(lo, h.as_interval().lo);
                hi = std::max(hi, h.as_interval().hi);
            }
        }
        out.push_back(Window::interval(lo, hi));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

double certificate_pow(const SynthesisPlan& plan, int truncation, int n) {
    const Weight& w = plan.weight;
    double p = plan.p;
    const PlanStep& sn = plan.steps[static_cast<std::size_t>(n - 1)];
    double total = 0.0;
    for (int k = 1; k <= truncation; ++k) {
        if (k == n) continue;
        const PlanStep& sk = plan.steps[static_cast<std::size_t>(k - 1)];
        Window moved = shift_window(shift_window(sk.window, negate(sk.s)), sn.s);
        total += sk.alpha * std::pow(sn.lambda_mag / sk.lambda_mag, p) * local_norm_pow(w, moved, p);
    }
    // on discrete spaces the windows are kept whole, so the deficit term
    // alpha_n * ||w||^p_{p, F_n \ K_n} vanishes
    return total;
}

}  // namespace

DenseVectorCandidate build_vector(const SynthesisPlan& plan, const TargetStream& targets,
                                  int truncation) {
    if (plan.space != Space::Z) throw SpaceMismatchError("synthesis is restricted to discrete plans");
    if (truncation < 1 || truncation > static_cast<int>(plan.steps.size()))
        throw ArgumentError("truncation must be within the plan length");
    DenseVectorCandidate cand;
    cand.plan = plan;
    cand.plan.steps.resize(static_cast<std::size_t>(truncation));
    cand.truncation = truncation;
    int width = targets.config().width;
    std::vector<SupportedVec> comps(static_cast<std::size_t>(width));
    cand.norm_bound_pow = 0.0;
    for (int n = 1; n <= truncation; ++n) {
        const PlanStep& st = plan.steps[static_cast<std::size_t>(n - 1)];
        auto tup = targets.tuple(n - 1);
        double alpha = targets.alpha(n - 1, plan.p);
        if (std::fabs(alpha - st.alpha) > 1e-9 * std::max(1.0, st.alpha))
            throw ArgumentError("plan budgets do not match the target stream");
        GroupPoint back = negate(st.s);
        for (int j = 0; j < width; ++j) {
            const SupportedVec& gj = tup[static_cast<std::size_t>(j)];
            Window hull = support_hull(gj);
            if (!hull.is_empty()) {
                const auto& hv = hull.as_interval();
                const auto& fv = st.window.as_interval();
                if (hv.lo < fv.lo || hv.hi > fv.hi)
                    throw ArgumentError("target support exceeds its plan window");
            }
            SupportedVec piece = translate(scale(gj, 1.0 / st.lambda_mag), back);
            comps[static_cast<std::size_t>(j)] = vec_add(comps[static_cast<std::size_t>(j)], piece);
        }
        cand.norm_bound_pow += st.alpha *
                               local_norm_pow(plan.weight, shift_window(st.window, back), plan.p) /
                               std::pow(st.lambda_mag, plan.p);
    }
    cand.components = std::move(comps);
    for (int n = 1; n <= truncation; ++n) {
        Certificate c;
        c.n = n;
        c.bound_pow = certificate_pow(cand.plan, truncation, n);
        c.bound = std::pow(c.bound_pow, 1.0 / plan.p);
        cand.certificates.push_back(c);
    }
    return cand;
}

double certify(const DenseVectorCandidate& cand, int n) {
    if (n < 1 || n > cand.truncation) throw ArgumentError("certificate index out of range");
    return std::pow(certificate_pow(cand.plan, cand.truncation, n), 1.0 / cand.plan.p);
}

}  // namespace orbitforge

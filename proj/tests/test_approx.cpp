#include <doctest.h>

#include <cmath>

#include "orbitforge/approx.hpp"
#include "orbitforge/criteria.hpp"
#include "orbitforge/repro.hpp"
#include "orbitforge/synthesis.hpp"
#include "testutil.hpp"

using namespace orbitforge;

namespace {

DiscreteWeight flat_weight() {
    DiscreteWeight w;
    w.lo = 0;
    w.hi = 0;
    w.values = {1.0};
    w.left = TailModel::affine(0.0, 0.0);
    w.right = TailModel::affine(0.0, 0.0);
    return w;
}

}  // namespace

TEST_CASE("scalar fit recovers exact multiples") {
    Weight w = flat_weight();
    SupportedVec f = SupportedVec::delta(0, 1.0);
    SupportedVec g = SupportedVec::delta(5, 3.0);
    LambdaFit fit = best_lambda(f, g, GroupPoint::integer(5), GammaSet::all_nonzero(), 2.0, w);
    CHECK(fit.lambda.real() == doctest::Approx(3.0));
    CHECK(fit.lambda.imag() == doctest::Approx(0.0));
    CHECK(fit.error == doctest::Approx(0.0));
    CHECK(fit.attained);
}

TEST_CASE("singleton scalar sets evaluate at the fixed magnitude") {
    // the scalar set carries magnitudes only; the fit keeps the optimal
    // phase, which for real data is a sign
    Weight w = flat_weight();
    testutil::Rng rng(601);
    for (int trial = 0; trial < 20; ++trial) {
        SupportedVec f = testutil::random_zvec(rng, 6, 5, false);
        SupportedVec g = testutil::random_zvec(rng, 6, 5, false);
        std::int64_t s = testutil::uniform_int(rng, -5, 5);
        LambdaFit fit = best_lambda(f, g, GroupPoint::integer(s), GammaSet::singleton(1.0), 2.0, w);
        SupportedVec h = translate(f, GroupPoint::integer(s));
        double plus = weighted_norm(vec_sub(h, g), w, 2.0);
        double minus = weighted_norm(vec_add(h, g), w, 2.0);
        CHECK(fit.error == doctest::Approx(std::min(plus, minus)).epsilon(1e-9));
        CHECK(std::abs(fit.lambda) == doctest::Approx(1.0));
    }
}

TEST_CASE("vanishing translate reports the target norm") {
    Weight w = flat_weight();
    SupportedVec zero = SupportedVec::discrete(DiscreteVec{});
    SupportedVec g = SupportedVec::delta(1, 2.0);
    LambdaFit fit = best_lambda(zero, g, GroupPoint::integer(3), GammaSet::all_nonzero(), 2.0, w);
    CHECK(fit.error == doctest::Approx(2.0));
    CHECK(!fit.attained);
}

TEST_CASE("projection fit beats the zoomed oracle at p = 2") {
    testutil::Rng rng(602);
    OracleGrid grid;
    grid.mag_points = 400;
    grid.phase_points = 64;
    grid.refine_rounds = 14;
    for (int trial = 0; trial < 100; ++trial) {
        DiscreteWeight w = testutil::random_discrete_weight(rng, false);
        SupportedVec f = testutil::random_zvec(rng);
        SupportedVec g = testutil::random_zvec(rng);
        std::int64_t s = testutil::uniform_int(rng, -4, 4);
        LambdaFit fit = best_lambda(f, g, GroupPoint::integer(s), GammaSet::all_nonzero(), 2.0, w);
        double oracle = brute_oracle(f, g, GroupPoint::integer(s), GammaSet::all_nonzero(), 2.0, w, grid);
        // oracle dominance plus a tight relative gap
        CHECK(fit.error <= oracle * (1.0 + 1e-12));
        CHECK(oracle - fit.error <= 1e-6 * std::max(1e-12, oracle));
    }
}

TEST_CASE("general-p search stays within oracle reach") {
    testutil::Rng rng(603);
    OracleGrid grid;
    grid.mag_points = 300;
    grid.phase_points = 48;
    grid.refine_rounds = 3;
    for (double p : {1.0, 3.0}) {
        for (int trial = 0; trial < 15; ++trial) {
            DiscreteWeight w = testutil::random_discrete_weight(rng, false);
            SupportedVec f = testutil::random_zvec(rng, 4, 4);
            SupportedVec g = testutil::random_zvec(rng, 4, 4);
            std::int64_t s = testutil::uniform_int(rng, -3, 3);
            LambdaFit fit = best_lambda(f, g, GroupPoint::integer(s), GammaSet::all_nonzero(), p, w);
            double oracle = brute_oracle(f, g, GroupPoint::integer(s), GammaSet::all_nonzero(), p, w, grid);
            CHECK(fit.error <= oracle * (1.0 + 1e-6));
        }
    }
}

TEST_CASE("first-order optimality of the p = 2 projection") {
    testutil::Rng rng(604);
    Weight w = testutil::random_discrete_weight(rng, false);
    for (int trial = 0; trial < 20; ++trial) {
        SupportedVec f = testutil::random_zvec(rng);
        SupportedVec g = testutil::random_zvec(rng);
        LambdaFit fit = best_lambda(f, g, GroupPoint::integer(1), GammaSet::all_nonzero(), 2.0, w);
        SupportedVec h = translate(f, GroupPoint::integer(1));
        auto sq = [&](cplx lam) {
            double e = weighted_norm(vec_sub(scale(h, lam), g), w, 2.0);
            return e * e;
        };
        double base = sq(fit.lambda);
        double step = 1e-6 * (std::abs(fit.lambda) + 1.0);
        for (cplx dir : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
            double d = (sq(fit.lambda + step * dir) - sq(fit.lambda - step * dir)) / (2.0 * step);
            CHECK(std::fabs(d) <= 1e-6 * std::max(1.0, base));
        }
    }
}

TEST_CASE("orbit of a point mass cannot cover two points") {
    Weight w = flat_weight();
    SupportedVec f = SupportedVec::delta(0, 1.0);
    SupportedVec g = vec_add(SupportedVec::delta(0, 1.0), SupportedVec::delta(1, 1.0));
    ApproxResult res = best_approx(f, g, ShiftSet::all(), GammaSet::all_nonzero(), 1.0, w, 16);
    CHECK(res.error >= 1.0 - 1e-12);
}

TEST_CASE("zero target: infimum only where magnitudes accumulate at zero") {
    Weight w = flat_weight();
    SupportedVec f = SupportedVec::delta(0, 1.0);
    SupportedVec zero = SupportedVec::discrete(DiscreteVec{});
    LambdaFit un = best_lambda(f, zero, GroupPoint::integer(0), GammaSet::all_nonzero(), 2.0, w);
    CHECK(un.error == doctest::Approx(0.0));
    CHECK(!un.attained);
    LambdaFit low = best_lambda(f, zero, GroupPoint::integer(0), GammaSet::one_to_inf(), 2.0, w);
    CHECK(low.error == doctest::Approx(1.0));  // |lambda| >= 1 keeps mass 1
    CHECK(low.attained);
}

TEST_CASE("larger scalar sets never increase the best error") {
    testutil::Rng rng(605);
    Weight w = testutil::random_discrete_weight(rng, false);
    for (int trial = 0; trial < 20; ++trial) {
        SupportedVec f = testutil::random_zvec(rng);
        SupportedVec g = testutil::random_zvec(rng);
        ApproxResult small = best_approx(f, g, ShiftSet::all(), GammaSet::singleton(1.0), 2.0, w, 8);
        ApproxResult mid = best_approx(f, g, ShiftSet::all(), GammaSet::annulus(0.5, 2.0), 2.0, w, 8);
        ApproxResult big = best_approx(f, g, ShiftSet::all(), GammaSet::all_nonzero(), 2.0, w, 8);
        CHECK(mid.error <= small.error * (1.0 + 1e-12));
        CHECK(big.error <= mid.error * (1.0 + 1e-12));
        // monotone in the horizon as well
        ApproxResult wide = best_approx(f, g, ShiftSet::all(), GammaSet::all_nonzero(), 2.0, w, 16);
        CHECK(wide.error <= big.error * (1.0 + 1e-12));
    }
}

TEST_CASE("triangle sanity under replay") {
    testutil::Rng rng(606);
    Weight w = testutil::random_discrete_weight(rng, false);
    for (int trial = 0; trial < 20; ++trial) {
        SupportedVec f = testutil::random_zvec(rng);
        SupportedVec g = testutil::random_zvec(rng);
        SupportedVec h = testutil::random_zvec(rng);
        GroupPoint s = GroupPoint::integer(testutil::uniform_int(rng, -4, 4));
        cplx lam(testutil::uniform(rng, -2.0, 2.0), testutil::uniform(rng, -2.0, 2.0));
        SupportedVec orbit = scale(translate(f, s), lam);
        double eg = weighted_norm(vec_sub(orbit, g), w, 2.0);
        double eh = weighted_norm(vec_sub(orbit, h), w, 2.0);
        double hg = weighted_norm(vec_sub(h, g), w, 2.0);
        CHECK(eg <= (eh + hg) * (1.0 + 1e-12));
    }
}

TEST_CASE("continuity probe: the peak weight blocks convergence") {
    int n_max = 12;
    RealWeight rp = make_r_peaks(n_max);
    SupportedVec f = make_claim2_vector(n_max);
    std::vector<GroupPoint> approach;
    for (int n = 2; n <= n_max; ++n) approach.push_back(GroupPoint::real(0, std::exp2(-n)));

    auto vals1 = continuity_probe(f, GroupPoint::real(0, 0.0), approach, rp, 1.0);
    for (double v : vals1) CHECK(v >= 0.25 - 1e-12);  // p-th power >= 1/4 at p = 1

    auto vals2 = continuity_probe(f, GroupPoint::real(0, 0.0), approach, rp, 2.0);
    for (std::size_t i = 0; i < vals2.size(); ++i) {
        int n = 2 + static_cast<int>(i);
        double pow2 = vals2[i] * vals2[i];
        CHECK(pow2 >= std::exp2(n) / 12.0 * (1.0 - 1e-12));
    }
    // and grows without bound along the approach
    CHECK(vals2.back() > vals2.front());
}

TEST_CASE("continuity probe: bounded translations do converge") {
    // admissible two-sided exponential profile, truncated to segments
    RealWeight w;
    w.anchors = std::make_shared<AnchorTable>(std::vector<std::int64_t>{0});
    w.default_value = 1.0;
    std::vector<Segment> segs;
    segs.push_back(Segment{-8.0, 0.0, SegKind::Exp2, 1.0, -1.0});  // 2^-u rising to the left
    segs.push_back(Segment{0.0, 8.0, SegKind::Exp2, 1.0, 1.0});    // 2^u to the right
    w.per_anchor.push_back({0, segs});
    w.validate();
    StepVec sv;
    sv.anchors = w.anchors;
    sv.parts.push_back(StepPart{0, 0.0, 1.0, cplx(1.0, 0.0)});
    SupportedVec f = SupportedVec::step(sv);
    std::vector<GroupPoint> approach;
    for (int k = 1; k <= 10; ++k) approach.push_back(GroupPoint::real(0, std::exp2(-k)));
    auto vals = continuity_probe(f, GroupPoint::real(0, 0.0), approach, w, 2.0);
    for (std::size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] <= vals[i - 1] * (1.0 + 1e-12));
    CHECK(vals.back() < 0.1);
}

TEST_CASE("orbit search meets the synthesis certificates") {
    TargetStream ts = enumerate_targets(TargetConfig{1, 1, 0});
    std::vector<Window> windows = plan_windows(ts, 6);
    std::vector<double> alphas;
    for (int i = 0; i < 6; ++i) alphas.push_back(ts.alpha(i, 2.0));
    GreedyResult res = greedy_plan(make_twosided_exp(), ShiftSet::half_line_pos(),
                                   GammaSet::singleton(1.0), 2.0, windows, alphas, 1 << 12);
    REQUIRE(res.ok);
    DenseVectorCandidate cand = build_vector(res.plan, ts, 6);
    Weight w = res.plan.weight;
    for (int n = 1; n <= 6; ++n) {
        ApproxResult found = best_approx(cand.components[0], ts.tuple(n - 1)[0],
                                         ShiftSet::half_line_pos(), GammaSet::singleton(1.0), 2.0, w,
                                         res.plan.steps[static_cast<std::size_t>(n - 1)].s.as_int() + 4);
        CHECK(found.error <= cand.certificates[static_cast<std::size_t>(n - 1)].bound * (1.0 + 1e-9));
    }
}

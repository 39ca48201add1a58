#include <doctest.h>

#include <cmath>

#include "orbitforge/repro.hpp"
#include "orbitforge/weights.hpp"
#include "testutil.hpp"

using namespace orbitforge;

namespace {

DiscreteWeight twosided() { return make_twosided_exp(); }

RealWeight peaks(int n_max = 6) { return make_r_peaks(n_max); }

Window anchor_span(const RealWeight& w, int anchor, double lo, double hi) {
    return Window::real_union(w.anchors, {RealSpan{anchor, lo, hi}});
}

}  // namespace

TEST_CASE("pointwise evaluation, window and tails") {
    DiscreteWeight v1 = make_ex52_v1();
    CHECK(v1.eval_at(3) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(v1.eval_at(-7) == 1.0);
    CHECK(v1.eval_at(0) == 1.0);

    RealWeight rp = peaks();
    // descent plateau junction half a unit left of the 3! anchor
    CHECK(rp.eval_local(2, -0.5) == doctest::Approx(4.0));
    CHECK(rp.eval_abs(6.0 - 0.5) == doctest::Approx(4.0));
    CHECK(rp.eval_local(2, 0.0) == 1.0);
    CHECK(rp.eval_abs(10.0) == 1.0);  // between anchor blocks: default
}

TEST_CASE("weight validation rejects broken inputs") {
    DiscreteWeight w;
    w.lo = 0;
    w.hi = 1;
    w.values = {1.0, -2.0};
    w.left = TailModel::affine(0.0, 0.0);
    w.right = TailModel::affine(0.0, 0.0);
    CHECK_THROWS_AS(w.validate(), ArgumentError);
    w.values = {1.0, 2.0};
    CHECK_THROWS_AS(w.validate(), ArgumentError);  // right tail disagrees at the edge
}

TEST_CASE("local norms on Z") {
    DiscreteWeight flat;
    flat.lo = 0;
    flat.hi = 0;
    flat.values = {1.0};
    flat.left = TailModel::affine(0.0, 0.0);
    flat.right = TailModel::affine(0.0, 0.0);
    flat.validate();
    CHECK(local_norm(flat, Window::interval(0, 2), 1.0) == doctest::Approx(3.0));
    CHECK(local_norm_pow(twosided(), Window::interval(0, 2), 1.0) == doctest::Approx(1.75));
    CHECK_THROWS_AS(local_norm(flat, Window::interval(0, 1), 0.5), ArgumentError);
}

TEST_CASE("local norm on R: exact closed forms") {
    RealWeight rp = peaks();
    // ascent right of the 3! anchor: integral of 1 + 56u over [0, 1/8]
    double got = local_norm_pow(rp, anchor_span(rp, 2, 0.0, 0.125), 1.0);
    CHECK(got == doctest::Approx(0.5625).epsilon(1e-14));
    CHECK(local_norm(rp, anchor_span(rp, 2, 0.0, 0.125), 1.0) == doctest::Approx(0.5625));
}

TEST_CASE("local norm monotone in the window") {
    testutil::Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        DiscreteWeight w = testutil::random_discrete_weight(rng);
        std::int64_t a = testutil::uniform_int(rng, -10, 0);
        std::int64_t b = testutil::uniform_int(rng, 0, 10);
        double inner = local_norm(w, Window::interval(a + 1, b - 1), 2.0);
        double outer = local_norm(w, Window::interval(a, b), 2.0);
        CHECK(inner <= outer * (1.0 + 1e-12));
    }
}

TEST_CASE("weighted norms") {
    DiscreteWeight w = twosided();
    CHECK(weighted_norm(SupportedVec::delta(0, 1.0), w, 1.5) == doctest::Approx(w.eval_at(0)));
    DiscreteWeight flat;
    flat.lo = 0;
    flat.hi = 0;
    flat.values = {1.0};
    flat.left = TailModel::affine(0.0, 0.0);
    flat.right = TailModel::affine(0.0, 0.0);
    SupportedVec f = indicator(Window::interval(0, 2), 3.0);
    CHECK(weighted_norm(f, flat, 2.0) == doctest::Approx(3.0 * std::sqrt(3.0)));
}

TEST_CASE("block sum vector has finite norm under the peak weight") {
    int n_max = 12;
    RealWeight rp = peaks(n_max);
    SupportedVec f = make_claim2_vector(n_max);
    double npow = weighted_norm_pow(f, rp, 1.0);
    // each block contributes at most 2^-k * (2 - 2^(1-k))
    double majorant = 0.0;
    for (int k = 2; k <= n_max; ++k) majorant += std::exp2(-k) * (2.0 - std::exp2(1 - k));
    CHECK(npow > 0.0);
    CHECK(npow <= majorant * (1.0 + 1e-12));
}

TEST_CASE("suprema over windows") {
    CHECK(sup_on(twosided(), Window::interval(-2, 3)) == 1.0);
    RealWeight rp = peaks();
    CHECK(sup_on(rp, anchor_span(rp, 2, -1.0, -0.5)) == doctest::Approx(4.0));
    // affine ascent attains its max at the right endpoint: 1 + 56/8 = 8
    CHECK(sup_on(rp, anchor_span(rp, 2, 0.0, 0.125)) == doctest::Approx(8.0));
}

TEST_CASE("operator norm on Z: certified values") {
    DiscreteWeight v1 = make_ex52_v1();
    MBound m1 = m_bound(v1, GroupPoint::integer(1), 64);
    CHECK(m1.value == doctest::Approx(1.0));
    CHECK(m1.certified);
    MBound m2 = m_bound(v1, GroupPoint::integer(-1), 64);
    CHECK(m2.value == doctest::Approx(2.0));
    CHECK(m2.certified);
    // double-exponential weight: shifts towards the light side stay bounded
    DiscreteWeight fz = make_final_z();
    MBound m3 = m_bound(fz, GroupPoint::integer(-1), 64);
    CHECK(m3.certified);
    // the ratio tops out one step right of the window: w(0)/w(1) = 1/2
    CHECK(m3.value == doctest::Approx(0.5));
    // and towards the heavy side they do not
    MBound m4 = m_bound(fz, GroupPoint::integer(1), 64);
    CHECK(m4.certified);
    CHECK(m4.value == std::numeric_limits<double>::infinity());
}

TEST_CASE("operator norm on R: dyadic shifts of the peak weight") {
    RealWeight rp = peaks(12);
    for (int n = 2; n <= 10; ++n) {
        double s = std::exp2(-n);
        MBound mb = m_bound(rp, GroupPoint::real(0, s), 64);
        CHECK(mb.certified);
        // exact value: the ratio peaks against the next anchor's ramp
        double expected = std::exp2(n + 1) / (2.0 - std::exp2(-n));
        CHECK(mb.value == doctest::Approx(expected).epsilon(1e-12));
        CHECK(mb.value >= 1.0 / (8.0 * s));
        CHECK(mb.value <= 2.0 / s);
        // the anchor-point witness is reproduced exactly
        double witness = rp.eval_local(n - 1, s) / rp.eval_local(n - 1, 0.0);
        CHECK(witness == 1.0 + (std::exp2(2 * n) - std::exp2(n)) * s);
    }
}

TEST_CASE("admissibility reports") {
    RealWeight rp = peaks(12);
    std::vector<GroupPoint> dyadic;
    for (int k = 0; k <= 8; ++k) dyadic.push_back(GroupPoint::real(0, std::exp2(-k)));
    dyadic.push_back(GroupPoint::real(0, 2.0));
    auto pos = admissible(rp, ShiftSet::of_list(dyadic), 16);
    CHECK(pos.admissible_up_to_horizon);
    for (const auto& e : pos.entries) CHECK(std::isfinite(e.bound.value));

    // shifting towards the peaks from the right diverges with the anchor
    // horizon; reported as a growing lower bound, not a certified value
    auto neg = admissible(rp, ShiftSet::of_list({GroupPoint::real(0, -1.0)}), 16);
    CHECK(!neg.admissible_up_to_horizon);
    REQUIRE(neg.entries.size() == 1);
    CHECK(neg.entries[0].bound.diverging);
    CHECK(!neg.entries[0].bound.certified);
    CHECK(neg.entries[0].bound.value >= std::exp2(11));

    DiscreteWeight fz = make_final_z();
    auto fz_rep = admissible(fz, ShiftSet::half_line_neg(), 32);
    CHECK(fz_rep.admissible_up_to_horizon);
    CHECK(fz_rep.certified);
    auto fz_all = admissible(fz, ShiftSet::all(), 32);
    CHECK(!fz_all.admissible_up_to_horizon);
}

TEST_CASE("operator norm is submultiplicative") {
    testutil::Rng rng(102);
    for (int trial = 0; trial < 25; ++trial) {
        DiscreteWeight w = testutil::random_discrete_weight(rng, false);
        std::int64_t a = testutil::uniform_int(rng, -6, 6);
        std::int64_t b = testutil::uniform_int(rng, -6, 6);
        double ma = m_bound(w, GroupPoint::integer(a), 64).value;
        double mb = m_bound(w, GroupPoint::integer(b), 64).value;
        double mab = m_bound(w, GroupPoint::integer(a + b), 64).value;
        if (std::isfinite(ma) && std::isfinite(mb))
            CHECK(mab <= ma * mb * (1.0 + 1e-9));
    }
}

TEST_CASE("translate is bounded by the operator norm") {
    testutil::Rng rng(103);
    for (int trial = 0; trial < 25; ++trial) {
        DiscreteWeight w = testutil::random_discrete_weight(rng, false);
        SupportedVec f = testutil::random_zvec(rng);
        std::int64_t s = testutil::uniform_int(rng, -8, 8);
        double m = m_bound(w, GroupPoint::integer(s), 64).value;
        if (!std::isfinite(m)) continue;
        double lhs = weighted_norm(translate(f, GroupPoint::integer(s)), w, 2.0);
        double rhs = m * weighted_norm(f, w, 2.0);
        CHECK(lhs <= rhs * (1.0 + 1e-9));
    }
}

TEST_CASE("closed-form integration agrees with adaptive quadrature") {
    testutil::Rng rng(104);
    for (int trial = 0; trial < 12; ++trial) {
        RealWeight w = testutil::random_real_weight(rng);
        double p = trial % 2 == 0 ? 1.0 : 2.0;
        double a = testutil::uniform(rng, -6.0, 0.0);
        double b = a + testutil::uniform(rng, 1.0, 8.0);
        Window k = Window::real_union(w.anchors, {RealSpan{0, a, b}});
        double exact = local_norm_pow(w, k, p);
        double quad = testutil::quad_pow(w, a, b, p);
        CHECK(exact == doctest::Approx(quad).epsilon(1e-9));
    }
    // and across an anchor at distance 50 with its local segments
    RealWeight w = testutil::random_real_weight(rng);
    Window k = Window::real_union(w.anchors, {RealSpan{1, -5.0, 5.0}});
    double exact = local_norm_pow(w, k, 2.0);
    double quad = testutil::quad_pow(w, 45.0, 55.0, 2.0);
    CHECK(exact == doctest::Approx(quad).epsilon(1e-9));
}

TEST_CASE("operator norm is scale invariant") {
    testutil::Rng rng(105);
    for (int trial = 0; trial < 15; ++trial) {
        DiscreteWeight w = testutil::random_discrete_weight(rng, false);
        std::int64_t s = testutil::uniform_int(rng, -5, 5);
        // dyadic scaling keeps every ratio bit-identical
        double kappa_log = static_cast<double>(testutil::uniform_int(rng, -10, 10));
        DiscreteWeight scaled = w;
        for (auto& v : scaled.values) v *= std::exp2(kappa_log);
        scaled.left.a += kappa_log;
        scaled.right.a += kappa_log;
        scaled.validate();
        MBound base = m_bound(w, GroupPoint::integer(s), 64);
        MBound after = m_bound(scaled, GroupPoint::integer(s), 64);
        // window-region ratios cancel the dyadic factor bit-exactly; tail
        // model evaluation leaves at most an ulp of slack
        CHECK(after.value == doctest::Approx(base.value).epsilon(1e-14));
        if (after.value == base.value) CHECK(same_point(after.witness, base.witness));
    }
}

TEST_CASE("sublevel sets carve exact interval unions") {
    RealWeight rp = peaks();
    // window across the whole 3! peak block
    Window f = anchor_span(rp, 2, -3.0, 1.0);
    Window e = sublevel_set(rp, f, GroupPoint::real(0, 0.0), 2.0);
    // excluded: values above 2, i.e. the upper half of the climb, the
    // plateau, part of the descent, most of the ascent and part of the
    // reciprocal fall
    double kept = measure(e);
    CHECK(kept < measure(f));
    // every kept point satisfies the threshold; sample densely
    for (const auto& span : e.as_union().spans) {
        for (int i = 0; i <= 20; ++i) {
            double u = span.lo + (span.hi - span.lo) * i / 20.0;
            CHECK(rp.eval_local(span.anchor, u) <= 2.0 * (1.0 + 1e-12));
        }
    }
    // complement spot checks: the plateau value 4 is out
    CHECK(rp.eval_local(2, -0.75) == 4.0);
    Window plateau = intersect_windows(e, anchor_span(rp, 2, -1.0, -0.5));
    CHECK(measure(plateau) == doctest::Approx(0.0));
}

TEST_CASE("reciprocal segments integrate on the negative branch") {
    RealWeight w;
    w.anchors = std::make_shared<AnchorTable>(std::vector<std::int64_t>{0});
    w.default_value = 1.0;
    // f(u) = -1/u = 1/|u| on [-2, -1], values in [1/2, 1]
    w.per_anchor.push_back({0, {Segment{-2.0, -1.0, SegKind::Recip, -1.0, 0.0}}});
    w.validate();
    Window k = Window::real_union(w.anchors, {RealSpan{0, -2.0, -1.0}});
    CHECK(local_norm_pow(w, k, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(local_norm_pow(w, k, 2.0) == doctest::Approx(0.5).epsilon(1e-14));  // 1/|u|^2 integral
    CHECK(sup_on(w, k) == doctest::Approx(1.0));
    CHECK(w.eval_local(0, -2.0) == doctest::Approx(0.5));
}

TEST_CASE("admissibility sweeps honor the worker cap") {
    // same report single- and multi-threaded
    DiscreteWeight w = make_twosided_exp();
    auto base = admissible(w, ShiftSet::all(), 64);
    setenv("ORBITFORGE_THREADS", "4", 1);
    auto par = admissible(w, ShiftSet::all(), 64);
    unsetenv("ORBITFORGE_THREADS");
    REQUIRE(base.entries.size() == par.entries.size());
    for (std::size_t i = 0; i < base.entries.size(); ++i) {
        CHECK(same_point(base.entries[i].s, par.entries[i].s));
        CHECK(base.entries[i].bound.value == par.entries[i].bound.value);
    }
}

#include <doctest.h>

#include "orbitforge/approx.hpp"
#include "orbitforge/io.hpp"
#include "orbitforge/repro.hpp"
#include "testutil.hpp"

using namespace orbitforge;

TEST_CASE("vector serialization round-trips byte-identically") {
    testutil::Rng rng(801);
    for (int trial = 0; trial < 20; ++trial) {
        SupportedVec f = testutil::random_zvec(rng);
        std::string once = to_json(f).dump();
        SupportedVec back = vector_from_json(json::parse(once));
        CHECK(to_json(back).dump() == once);
        CHECK(vec_equal(f, back));
    }
    SupportedVec step = make_claim2_vector(6);
    std::string once = to_json(step).dump();
    CHECK(to_json(vector_from_json(json::parse(once))).dump() == once);
}

TEST_CASE("weight serialization round-trips") {
    testutil::Rng rng(802);
    for (int trial = 0; trial < 20; ++trial) {
        Weight w = testutil::random_discrete_weight(rng);
        std::string once = to_json(w).dump();
        CHECK(to_json(weight_from_json(json::parse(once))).dump() == once);
    }
    Weight rp = make_r_peaks(8);
    std::string once = to_json(rp).dump();
    CHECK(to_json(weight_from_json(json::parse(once))).dump() == once);
}

TEST_CASE("weight loading enforces the invariants") {
    json j = to_json(Weight(make_ex52_v1()));
    j["window"]["values"][0] = -1.0;
    CHECK_THROWS_AS(weight_from_json(j), ArgumentError);
    json k = to_json(Weight(make_ex52_v1()));
    k["right_tail"]["a"] = 4.0;  // breaks edge agreement
    CHECK_THROWS_AS(weight_from_json(k), ArgumentError);
}

TEST_CASE("factorial anchor alias loads") {
    json j = to_json(Weight(make_r_peaks(6)));
    j["anchors"] = "factorial:6";
    Weight w = weight_from_json(j);
    CHECK(std::get<RealWeight>(w).anchors->position(3) == 24);
}

TEST_CASE("scalar-set parsing: inline and JSON forms") {
    CHECK(gamma_from_inline("all").kind == GammaSet::Kind::AllNonzero);
    CHECK(gamma_from_inline("singleton:2").r == 2.0);
    CHECK(gamma_from_inline("annulus:0.5:2").R == 2.0);
    GammaSet grid = gamma_from_inline("grid_pow2:0:4");
    REQUIRE(grid.grid.size() == 5);
    CHECK(grid.grid.back() == 16.0);
    for (const char* text : {"all", "zero_to_one", "one_to_inf", "singleton:3", "annulus:1:4"}) {
        GammaSet g = gamma_from_inline(text);
        std::string once = to_json(g).dump();
        CHECK(to_json(gamma_from_json(json::parse(once))).dump() == once);
    }
    CHECK_THROWS_AS(gamma_from_inline("whatever:1"), ArgumentError);
}

TEST_CASE("shift-set parsing") {
    CHECK(shifts_from_inline("half_line_neg").kind == ShiftSet::Kind::HalfLineNeg);
    ShiftSet arith = shifts_from_inline("arithmetic:3:2");
    CHECK(arith.a == 3);
    CHECK(arith.step == 2);
    ShiftSet list = shifts_from_inline("list:1,4,9");
    REQUIRE(list.list.size() == 3);
    std::string once = to_json(list).dump();
    CHECK(to_json(shifts_from_json(json::parse(once))).dump() == once);
}

TEST_CASE("report serialization carries the verdict fields") {
    CriterionReport rep = salas_hypercyclic(make_ex52_v1(), 4, 256);
    json j = to_json(rep);
    CHECK(j["kind"] == "salas_hypercyclic");
    CHECK(j["verdict"]["type"] == "fails_certified");
    CHECK(j["verdict"]["bound"] == 1.0);
    CHECK(j["verdict"].contains("witnesses"));
}

TEST_CASE("approximation results serialize with their fixed field names") {
    Weight w = make_twosided_exp();
    SupportedVec f = SupportedVec::delta(0, 1.0);
    SupportedVec g = SupportedVec::delta(3, 2.0);
    ApproxResult r = best_approx(f, g, ShiftSet::all(), GammaSet::all_nonzero(), 2.0, w, 8);
    json j = to_json(r);
    CHECK(j.contains("s"));
    CHECK(j["lambda"].contains("re"));
    CHECK(j["lambda"].contains("im"));
    CHECK(j.contains("error"));
    CHECK(j.contains("attained"));
    CHECK(j["error"].get<double>() == doctest::Approx(0.0));
    CHECK(j["s"].get<std::int64_t>() == 3);
}

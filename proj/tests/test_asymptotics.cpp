#include <doctest.h>

#include <cmath>
#include <limits>

#include "orbitforge/asymptotics.hpp"

using namespace orbitforge;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("limits pick the dominant component") {
    ExpSum f;
    f.slope = -1.0;
    f.konst = 10.0;
    CHECK(f.limit() == -kInf);
    f.add_term(0.5, 1.0);  // 2^(n/2) beats any slope
    CHECK(f.limit() == kInf);
    f.add_term(0.5, -1.0);  // cancels
    CHECK(f.limit() == -kInf);

    ExpSum g;
    g.add_term(-1.0, 100.0);  // vanishes
    g.konst = 3.0;
    CHECK(g.limit() == 3.0);
}

TEST_CASE("eventual sign ranks rates over slope over constants") {
    ExpSum f;
    f.add_term(1.0, -0.001);
    f.slope = 5.0;
    CHECK(f.eventual_sign() == -1);
    ExpSum g;
    g.slope = -2.0;
    g.konst = 100.0;
    CHECK(g.eventual_sign() == -1);
    ExpSum h;
    h.add_term(-0.5, -3.0);
    CHECK(h.eventual_sign() == -1);
    CHECK(ExpSum{}.eventual_sign() == 0);
}

TEST_CASE("integer infimum: monotone cases are exact") {
    ExpSum f;  // 2^n, increasing
    f.add_term(1.0, 1.0);
    TailInf ti = integer_inf_from(f, 3);
    CHECK(ti.exact);
    CHECK(ti.value == 8.0);
    CHECK(ti.argmin == 3);

    ExpSum g;  // 2^-n + 5, decreasing to 5
    g.add_term(-1.0, 1.0);
    g.konst = 5.0;
    TailInf tg = integer_inf_from(g, 0);
    CHECK(tg.exact);
    CHECK(tg.value == 5.0);
    CHECK(tg.at_limit);
}

TEST_CASE("integer infimum finds an interior dip") {
    // f(n) = 2^-n + 2^(n-10): convex with minimum near n = 5
    ExpSum f;
    f.add_term(-1.0, 1.0);
    f.add_term(1.0, std::exp2(-10.0));
    TailInf ti = integer_inf_from(f, 0);
    CHECK(ti.exact);
    CHECK(ti.argmin == 5);
    CHECK(ti.value == doctest::Approx(2.0 * std::exp2(-5.0)));
    // brute check over a long stretch
    double brute = kInf;
    for (int n = 0; n <= 200; ++n) brute = std::min(brute, f.eval(n));
    CHECK(ti.value == doctest::Approx(brute));
}

TEST_CASE("integer supremum mirrors the infimum") {
    ExpSum f;  // -(2^-n): increasing to 0
    f.add_term(-1.0, -1.0);
    TailInf ts = integer_sup_from(f, 2);
    CHECK(ts.exact);
    CHECK(ts.value == 0.0);
}

TEST_CASE("sum algebra merges rates") {
    ExpSum a;
    a.add_term(1.0, 2.0);
    a.slope = 1.0;
    ExpSum b;
    b.add_term(1.0, -2.0);
    b.konst = 4.0;
    ExpSum c = a.plus(b);
    CHECK(c.terms.empty());
    CHECK(c.slope == 1.0);
    CHECK(c.konst == 4.0);
    CHECK(c.eval(3.0) == 7.0);
}

TEST_CASE("dominance waits out slow exponentials against linear terms") {
    // f(n) = 20 * 2^(0.01 n) - n: positive at small n, dips negative near
    // n ~ 144, recovers later; the certified infimum must see the dip
    ExpSum f;
    f.add_term(0.01, 20.0);
    f.slope = -1.0;
    TailInf ti = integer_inf_from(f, 1);
    REQUIRE(ti.exact);
    double brute = std::numeric_limits<double>::infinity();
    std::int64_t arg = 0;
    for (std::int64_t n = 1; n <= 4000; ++n) {
        double v = f.eval(static_cast<double>(n));
        if (v < brute) {
            brute = v;
            arg = n;
        }
    }
    CHECK(brute < 0.0);
    CHECK(ti.value == doctest::Approx(brute));
    CHECK(ti.argmin == arg);
}

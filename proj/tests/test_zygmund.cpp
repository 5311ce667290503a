#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "risob/zygmund.hpp"

using namespace risob;

TEST_CASE("finite-domain subcritical power") {
    const auto d = zygmund_table(AsymptoticClass::near_infinity(2.0, 0.0), 3,
                                 table_setting::finite_e10);
    CHECK(d.orlicz == "L^6");
    CHECK(d.ri == "L^(6,2)");
}

TEST_CASE("finite-domain subcritical power-log") {
    const auto d = zygmund_table(AsymptoticClass::near_infinity(1.5, 1.0), 2,
                                 table_setting::finite_e10);
    CHECK(d.orlicz == "L^6(log L)^4");
    CHECK(d.ri == "L^(6,1.5;0.666667)");
}

TEST_CASE("critical cases at p = n") {
    SUBCASE("alpha below the threshold") {
        const auto d = zygmund_table(AsymptoticClass::near_infinity(2.0, 0.0), 2,
                                     table_setting::finite_e10);
        CHECK(d.orlicz == "exp L^2");
        CHECK(d.ri == "L^(inf,2;-1)");
    }
    SUBCASE("alpha at the threshold") {
        const auto d = zygmund_table(AsymptoticClass::near_infinity(3.0, 2.0), 3,
                                     table_setting::finite_e10);
        CHECK(d.orlicz == "exp exp L^1.5");
        CHECK(d.ri == "L^(inf,3;-1/n,-1)");
    }
    SUBCASE("alpha above the threshold collapses") {
        const auto d = zygmund_table(AsymptoticClass::near_infinity(2.0, 1.5), 2,
                                     table_setting::finite_e10);
        CHECK(d.orlicz == "L^inf");
        CHECK(d.ri == "L^inf");
    }
}

TEST_CASE("supercritical power collapses") {
    const auto d = zygmund_table(AsymptoticClass::near_infinity(4.0, 0.0), 2,
                                 table_setting::finite_e1);
    CHECK(d.orlicz == "L^inf");
    CHECK(d.ri == "L^inf");
}

TEST_CASE("loglog class, Orlicz target only") {
    const auto d = zygmund_table(AsymptoticClass::near_infinity(2.0, 0.0, 1.0), 4,
                                 table_setting::finite_e10);
    CHECK(d.orlicz == "L^4(loglog L)^2");
    CHECK(d.ri.empty());
}

TEST_CASE("whole-space zero-trace class") {
    SUBCASE("subcritical two-sided") {
        const auto d = zygmund_table(AsymptoticClass::two_sided(1.5, 0.0, 2.0, 1.0), 3,
                                     table_setting::rn_e10);
        CHECK(d.orlicz == "LA{near0: t^3; nearinf: t^6 (log t)^3}");
        CHECK(d.ri == "L(A,n=3){near0: t^1.5; nearinf: t^2 (log t)^1}");
    }
    SUBCASE("supercritical near infinity goes to the weighted target") {
        const auto d = zygmund_table(AsymptoticClass::two_sided(2.0, 0.0, 4.0, 0.0), 3,
                                     table_setting::rn_e10);
        CHECK(d.orlicz == "LA{near0: t^6; nearinf: inf}");
        CHECK(d.ri == "LB(nu=min(s^-1/3,1)){near0: t^2; nearinf: inf}");
    }
    SUBCASE("near-zero class must satisfy the integrability restriction") {
        CHECK_THROWS_AS(zygmund_table(AsymptoticClass::two_sided(4.0, 0.0, 2.0, 0.0), 3,
                                      table_setting::rn_e10),
                        unsupported_space);
    }
}

TEST_CASE("whole-space full-norm class") {
    SUBCASE("subcritical") {
        const auto d = zygmund_table(AsymptoticClass::two_sided(2.0, -1.0, 2.0, 0.0), 3,
                                     table_setting::rn_e1);
        CHECK(d.orlicz == "LA{near0: t^2 (log 1/t)^-1; nearinf: t^6}");
        CHECK(d.ri == "Lambda(varpi=max(s^-1/3,1)){near0: t^2 (log 1/t)^-1; nearinf: t^2}");
    }
    SUBCASE("supercritical: Orlicz target is already the optimal r.i. target") {
        const auto d = zygmund_table(AsymptoticClass::two_sided(4.0, 0.0, 4.0, 0.0), 2,
                                     table_setting::rn_e1);
        CHECK(d.orlicz == "LA{near0: t^4; nearinf: inf}");
        CHECK(d.ri == d.orlicz);
    }
    SUBCASE("critical near infinity") {
        const auto d = zygmund_table(AsymptoticClass::two_sided(2.0, 0.0, 2.0, 1.0), 2,
                                     table_setting::rn_e1);
        CHECK(d.orlicz == "LA{near0: t^2; nearinf: exp(exp(t^2))}");
        CHECK(d.ri ==
              "Lambda(varpi=max(s^-1/2,1)){near0: t^2; nearinf: t^2 (log t)^-1 (loglog t)^-2}");
    }
}

TEST_CASE("parameters outside every listed case are refused") {
    CHECK_THROWS_AS(zygmund_table(AsymptoticClass::near_infinity(0.5, 0.0), 2,
                                  table_setting::finite_e10),
                    unsupported_space);
    CHECK_THROWS_AS(zygmund_table(AsymptoticClass::near_infinity(1.0, -1.0), 2,
                                  table_setting::finite_e10),
                    unsupported_space);
    CHECK_THROWS_AS(zygmund_table(AsymptoticClass::near_infinity(2.0, 0.0), 2,
                                  table_setting::rn_e10),
                    unsupported_space);
    AsymptoticClass bad = AsymptoticClass::two_sided(1.0, 1.0, 2.0, 0.0);
    CHECK_THROWS_AS(zygmund_table(bad, 2, table_setting::rn_e1), unsupported_space);
}

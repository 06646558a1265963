#include <catch2/catch_amalgamated.hpp>

#include <boost/math/constants/constants.hpp>

#include "gaussint/analytic.hpp"

using namespace gaussint;

TEST_CASE("zeta") {
    SECTION("zeta(2) = pi^2/6 to better than 10 digits") {
        const ZetaValue z = zeta(BigFloat(2), 12);
        const BigFloat reference =
            boost::math::constants::pi<BigFloat>() * boost::math::constants::pi<BigFloat>() / 6;
        CHECK(abs(z.value - reference) < BigFloat("1e-11"));
        CHECK(z.abs_error_bound < BigFloat("1e-12"));
        CHECK(abs(z.value - reference) <= z.abs_error_bound);
    }

    SECTION("zeta(3) = 1.2020569...") {
        const ZetaValue z = zeta(BigFloat(3), 10);
        CHECK(abs(z.value - BigFloat("1.2020569031595942854")) < BigFloat("1e-10"));
        CHECK(z.abs_error_bound < BigFloat("1e-10"));
    }

    SECTION("monotone decreasing at sampled points") {
        BigFloat prev = zeta(BigFloat("1.5"), 8).value;
        for (const char* s : {"2", "3", "5", "10"}) {
            const BigFloat cur = zeta(BigFloat(s), 8).value;
            CHECK(cur < prev);
            prev = cur;
        }
    }

    SECTION("domain and precision validation") {
        CHECK_THROWS_AS(zeta(BigFloat(1), 10), domain_error);
        CHECK_THROWS_AS(zeta(BigFloat("0.5"), 10), domain_error);
        CHECK_THROWS_AS(zeta(BigFloat(2), 0), domain_error);
        CHECK_THROWS_AS(zeta(BigFloat(2), 99), domain_error);
        CHECK_THROWS_AS(zeta(BigFloat("1.0000001"), 14), resource_error);
    }
}

TEST_CASE("beta") {
    SECTION("beta(2) is Catalan's constant, certified below 1") {
        const ZetaValue b = beta(BigFloat(2), 12);
        CHECK(abs(b.value - BigFloat("0.91596559417721901505")) < BigFloat("1e-11"));
        CHECK(b.value + b.abs_error_bound < 1);
    }

    SECTION("beta(s) -> 1 as s grows") {
        const ZetaValue b = beta(BigFloat(50), 12);
        CHECK(abs(b.value - 1) < BigFloat("1e-23"));
    }

    SECTION("character values") {
        CHECK(chi1(1) == 1);
        CHECK(chi1(3) == -1);
        CHECK(chi1(2) == 0);
        CHECK(chi1(4) == 0);
        CHECK(chi1(-1) == -1);
        CHECK(chi1(-3) == 1);
        CHECK(chi1(mpz_class("1000000000000000001")) == 1);
    }

    SECTION("beta <= zeta at sampled points") {
        for (const char* s : {"1.5", "2", "3", "5", "10"}) {
            const ZetaValue z = zeta(BigFloat(s), 8), b = beta(BigFloat(s), 8);
            CHECK(b.value <= z.value + z.abs_error_bound + b.abs_error_bound);
        }
    }
}

TEST_CASE("dedekind zeta of Q[i]") {
    SECTION("zeta(2)beta(2) = 1.50670... and certified below 2") {
        const ZetaValue v = dedekind_zeta_qi(BigFloat(2), 12);
        CHECK(abs(v.value - BigFloat("1.5067030099229850308")) < BigFloat("1e-10"));
        CHECK(v.value + v.abs_error_bound < 2);
    }

    SECTION("value at 3 sits below zeta(3)^2") {
        const ZetaValue v = dedekind_zeta_qi(BigFloat(3), 10);
        const ZetaValue z3 = zeta(BigFloat(3), 10);
        CHECK(v.value < z3.value * z3.value);
        CHECK((z3.value + z3.abs_error_bound) * (z3.value + z3.abs_error_bound) < 2);
    }
}

TEST_CASE("Euler product over Gaussian primes") {
    SECTION("single factor at norm limit 2") {
        const BigFloat v = dedekind_zeta_euler_product(BigFloat(2), 2);
        CHECK(abs(v - BigFloat(4) / 3) < BigFloat("1e-40"));
    }

    SECTION("monotone in the limit and below the full value") {
        const ZetaValue full = dedekind_zeta_qi(BigFloat(2), 12);
        BigFloat prev = 0;
        for (uint64_t limit : {2, 10, 100, 1000, 10000}) {
            const BigFloat v = dedekind_zeta_euler_product(BigFloat(2), limit);
            CHECK(v >= prev);
            CHECK(v <= full.value + full.abs_error_bound);
            prev = v;
        }
        CHECK(full.value - prev < BigFloat("0.02"));
    }

    SECTION("domain validation") {
        CHECK_THROWS_AS(dedekind_zeta_euler_product(BigFloat(1), 100), domain_error);
        CHECK_THROWS_AS(dedekind_zeta_euler_product(BigFloat(2), 1), domain_error);
    }
}

TEST_CASE("power-gap inequality predicates") {
    SECTION("examples that hold") {
        const LemmaInequalityResult a = lemma_inequality_check(GaussianInt(1, 1), 3, 1);
        CHECK(a.partial_sum_exceeds_top);
        CHECK(a.one_step_gap);
        CHECK(a.multi_step_gap);
        const LemmaInequalityResult b = lemma_inequality_check(GaussianInt(3, 1), 5, 3);
        CHECK(b.all());
    }

    SECTION("m = 0 is the exact equality case") {
        const LemmaInequalityResult r = lemma_inequality_check(GaussianInt(2), 1, 0);
        CHECK(r.multi_step_gap);
        CHECK((pow(GaussianInt(2), 1) - GaussianInt(1, 0)).norm() ==
              (pow(GaussianInt(2), 1) - pow(GaussianInt(2), 0)).norm());
    }

    SECTION("the gap inequalities fail on valid inputs") {
        // eta = 1+2i, n = 3: ||eta^3 - 1|| = 148 < 160 = ||eta^3 - eta||,
        // so the one-step gap claim is false there; the multi-step version
        // fails at (n, m) = (4, 2) with 640 < 800. The partial-sum
        // predicate still holds on both.
        const LemmaInequalityResult a = lemma_inequality_check(GaussianInt(1, 2), 3, 1);
        CHECK(a.partial_sum_exceeds_top);
        CHECK_FALSE(a.one_step_gap);
        CHECK_FALSE(a.multi_step_gap);
        const LemmaInequalityResult b = lemma_inequality_check(GaussianInt(1, 2), 4, 2);
        CHECK(b.partial_sum_exceeds_top);
        CHECK_FALSE(b.multi_step_gap);
    }

    SECTION("preconditions") {
        CHECK_THROWS_AS(lemma_inequality_check(GaussianInt(-1, 2), 3, 1), domain_error);
        CHECK_THROWS_AS(lemma_inequality_check(GaussianInt(0, 2), 3, 1), domain_error);
        CHECK_THROWS_AS(lemma_inequality_check(GaussianInt(1, 0), 3, 1), domain_error);
        CHECK_THROWS_AS(lemma_inequality_check(GaussianInt(2), 0, 0), domain_error);
        CHECK_THROWS_AS(lemma_inequality_check(GaussianInt(2), 2, 3), domain_error);
    }
}

TEST_CASE("abundancy norm bound") {
    SECTION("eta = 2, k = 2: ||I_2(2)|| = 13/16 is below zeta_Q[i](2)") {
        CHECK(abundancy_norm(GaussianInt(2), 2) == mpq_class(13, 16));
        CHECK(abundancy_norm_bound(GaussianInt(2), 2));
    }

    SECTION("units") {
        CHECK(abundancy_norm_bound(GaussianInt(0, 1), 3));
    }

    SECTION("k < 2 is out of the claimed range") {
        CHECK_THROWS_AS(abundancy_norm_bound(GaussianInt(2), 1), domain_error);
    }

    SECTION("the bound fails on real inputs") {
        // ||I_2(1+3i)|| = 8/5 = 1.6 exceeds zeta(2)beta(2) = 1.50670...;
        // the checker reports that honestly.
        CHECK(abundancy_norm(GaussianInt(1, 3), 2) == mpq_class(8, 5));
        CHECK_FALSE(abundancy_norm_bound(GaussianInt(1, 3), 2));
    }
}

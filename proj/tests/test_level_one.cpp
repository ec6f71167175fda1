#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "reference_values.hpp"
#include "whmf/level_one.hpp"

using whmf::QSeries;

TEST_CASE("bernoulli numbers match the Akiyama-Tanigawa oracle") {
    for (long n = 0; n <= 30; n += 2)
        REQUIRE(whmf::bernoulli(n) == oracles::at_bernoulli(n));
    REQUIRE(whmf::bernoulli(12) == mpq_class(-691, 2730));
    REQUIRE_THROWS_AS(whmf::bernoulli(3), std::invalid_argument);
    REQUIRE_THROWS_AS(whmf::bernoulli(-2), std::invalid_argument);
}

TEST_CASE("eisenstein series against divisor-sum oracles") {
    const QSeries e4 = whmf::eisenstein(4, 30);
    const QSeries e6 = whmf::eisenstein(6, 30);
    const QSeries e14 = whmf::eisenstein(14, 30);
    REQUIRE(e4.coeff(0) == 1);
    for (long n = 1; n < 30; ++n) {
        REQUIRE(e4.coeff(n) == 240 * oracles::naive_sigma(3, n));
        REQUIRE(e6.coeff(n) == -504 * oracles::naive_sigma(5, n));
        REQUIRE(e14.coeff(n) == -24 * oracles::naive_sigma(13, n));
    }
    // the quasimodular case comes from the same formula
    const QSeries e2 = whmf::eisenstein(2, 20);
    for (long n = 1; n < 20; ++n)
        REQUIRE(e2.coeff(n) == -24 * oracles::naive_sigma(1, n));
    REQUIRE(whmf::eisenstein(0, 5).coeff(0) == 1);
    REQUIRE_THROWS_AS(whmf::eisenstein(5, 10), std::invalid_argument);
}

TEST_CASE("E_4^3 - E_6^2 = 1728 delta") {
    const long P = 40;
    const QSeries lhs =
        pow(whmf::eisenstein(4, P), 3) - pow(whmf::eisenstein(6, P), 2);
    const QSeries rhs = mpq_class(1728) * whmf::delta(P);
    REQUIRE(agree(lhs, rhs));
}

TEST_CASE("delta, its inverse, and j hang together") {
    const QSeries d = whmf::delta(50);
    const QSeries di = whmf::delta_inverse(48);
    const QSeries one = d * di;
    REQUIRE(one.coeff(0) == 1);
    for (long n = 1; n < one.prec(); ++n) REQUIRE(one.coeff(n) == 0);

    const QSeries j = whmf::jfunc(40);
    REQUIRE(j.val() == -1);
    REQUIRE(j.coeff(-1) == 1);
    REQUIRE(j.coeff(0) == 744);
    REQUIRE(j.coeff(1) == 196884);
    // j * delta = E_4^3 exactly
    REQUIRE(agree(j * whmf::delta(42), pow(whmf::eisenstein(4, 41), 3)));
}

TEST_CASE("weight splitting into 12l + k'") {
    const auto check = [](long k, long ell, long kp) {
        const auto ws = whmf::weight_split(k);
        REQUIRE(ws.ell == ell);
        REQUIRE(ws.kprime == kp);
    };
    check(4, 0, 4);
    check(6, 0, 6);
    check(8, 0, 8);
    check(10, 0, 10);
    check(14, 0, 14);
    check(0, 0, 0);
    check(12, 1, 0);
    check(16, 1, 4);
    check(2, -1, 14);
    check(-2, -1, 10);
    check(-4, -1, 8);
    check(-6, -1, 6);
    check(-8, -1, 4);
    check(-12, -1, 0);
    check(-26, -3, 10);
    REQUIRE_THROWS_AS(whmf::weight_split(7), std::invalid_argument);
}

TEST_CASE("canonical forms: principal part, gap, integrality") {
    for (long k : {4L, 6L, 8L, 10L, 14L}) {
        for (long m = 0; m <= 5; ++m) {
            const QSeries f = whmf::canonical_form(k, m, 12);
            REQUIRE(f.coeff(-m) == 1);
            // gap: every exponent strictly between -m and l+1 vanishes
            for (long t = -m + 1; t <= whmf::weight_split(k).ell; ++t)
                REQUIRE(f.coeff(t) == 0);
            REQUIRE(f.integral());
        }
    }
    for (long k : {-2L, -4L, -6L, -8L, -12L}) {
        for (long m = 1; m <= 5; ++m) {
            const QSeries f = whmf::canonical_form(k, m, 12);
            REQUIRE(f.coeff(-m) == 1);
            for (long t = -m + 1; t <= whmf::weight_split(k).ell; ++t)
                REQUIRE(f.coeff(t) == 0);
            REQUIRE(f.integral());
        }
    }
    REQUIRE_THROWS_AS(whmf::canonical_form(-2, 0, 10), std::domain_error);
}

TEST_CASE("canonical seeds are the Eisenstein series") {
    REQUIRE(agree(whmf::canonical_form(4, 0, 20), whmf::eisenstein(4, 20)));
    REQUIRE(agree(whmf::canonical_form(14, 0, 20), whmf::eisenstein(14, 20)));
    // weight -12 seed is 1/delta at index 1
    REQUIRE(agree(whmf::canonical_form(-12, 1, 20), whmf::delta_inverse(20)));
}

TEST_CASE("f_{4,1} equals E_4 (j - 984), an independent construction") {
    const long P = 30;
    const QSeries e4 = whmf::eisenstein(4, P + 2);
    const QSeries rhs =
        e4 * (whmf::jfunc(P + 1) - QSeries::constant(984, P + 1));
    REQUIRE(agree(whmf::canonical_form(4, 1, P), rhs));
}

TEST_CASE("a_coeff: support convention and known factorizations") {
    REQUIRE(whmf::a_coeff(4, -5, 3) == 0);
    REQUIRE(whmf::a_coeff(-2, 0, 7) == 0);
    REQUIRE(whmf::a_coeff(4, 1, 0) == 0);
    // the leading q^{-m} term is not an a-coefficient: a_4(0,0) = 0 even
    // though the series constant is 1
    REQUIRE(whmf::a_coeff(4, 0, 0) == 0);
    REQUIRE(whmf::canonical_form(4, 0, 5).coeff(0) == 1);
    REQUIRE(whmf::a_coeff(-12, 1, -1) == 0);

    for (const auto& row : refvals::a4_1_factored)
        REQUIRE(whmf::a_coeff(4, 1, row.n) == refvals::from_factors(row.factors));

    REQUIRE(whmf::vp_int(whmf::a_coeff(4, 1, 10), 3) == refvals::v3_a4_1_10);
}

TEST_CASE("duality on a small grid") {
    for (long k : {4L, 6L, 8L, 10L, 14L})
        for (long m = 0; m <= 4; ++m)
            for (long n = 1; n <= 4; ++n)
                REQUIRE(whmf::a_coeff(k, m, n) == -whmf::a_coeff(2 - k, n, m));
}

TEST_CASE("ladder rebuilds preserve previously served values") {
    const mpz_class before = whmf::a_coeff(6, 2, 3);
    whmf::canonical_form(6, 7, 60);   // index extension
    whmf::canonical_form(6, 2, 100);  // precision bump, drops high indexes
    const mpz_class after = whmf::a_coeff(6, 2, 3);
    REQUIRE(before == after);
    const QSeries again = whmf::canonical_form(6, 7, 30);
    REQUIRE(again.coeff(-7) == 1);
}

TEST_CASE("classical congruences: tau and the j coefficients") {
    const QSeries d = whmf::delta(305);
    for (long n = 1; 2 * n < 121; ++n)
        REQUIRE(d.coeff(2 * n).get_num() % 2 == 0);
    for (long n = 1; 3 * n < 181; ++n)
        REQUIRE(d.coeff(3 * n).get_num() % 3 == 0);
    for (long n = 1; 5 * n < 305; ++n)
        REQUIRE(d.coeff(5 * n).get_num() % 5 == 0);

    const QSeries j = whmf::jfunc(4);
    REQUIRE(j.coeff(2) == 21493760);
    REQUIRE(whmf::vp(j.coeff(2), 2).v >= 11);   // Lehner exponent 3a+8, a=1
    REQUIRE(whmf::vp(j.coeff(3), 3).v >= 5);    // 3v_3(n)+2 worked example
}

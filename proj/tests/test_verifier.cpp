#include <catch2/catch_amalgamated.hpp>

#include "reference_values.hpp"
#include "whmf/verifier.hpp"

using whmf::QSeries;

TEST_CASE("coefficient recurrence under U_p, V_p bookkeeping") {
    REQUIRE(whmf::recurrence_check(2, 4, 1, 1, 1));
    REQUIRE(whmf::recurrence_check(2, 4, 1, 2, 1));
    REQUIRE(whmf::recurrence_check(2, 4, 2, 3, 1));
    REQUIRE(whmf::recurrence_check(3, 6, 1, 2, 1));
    REQUIRE(whmf::recurrence_check(3, 8, 2, 2, 2));
    REQUIRE(whmf::recurrence_check(5, 10, 1, 1, 1));
    REQUIRE(whmf::recurrence_check(5, 14, 3, 2, 1));
    REQUIRE_THROWS_AS(whmf::recurrence_check(2, 4, 0, 1, 1),
                      std::invalid_argument);
}

TEST_CASE("reduction chain identities") {
    REQUIRE(whmf::reduction_chain_check(2, 4, 1, 1, 1, 2));
    REQUIRE(whmf::reduction_chain_check(2, 6, 1, 3, 2, 2));
    REQUIRE(whmf::reduction_chain_check(3, 6, 2, 1, 1, 1));
    REQUIRE(whmf::reduction_chain_check(3, 8, 1, 2, 0, 2));
    REQUIRE(whmf::reduction_chain_check(5, 4, 1, 1, 2, 1));
    REQUIRE(whmf::reduction_chain_check(5, 8, 2, 3, 1, 1));
    REQUIRE_THROWS_AS(whmf::reduction_chain_check(2, 4, 2, 1, 1, 1),
                      std::invalid_argument);  // p | m
}

TEST_CASE("test forms and their constants at (p,k) = (2,14)") {
    for (const auto& [j, c] : refvals::p2_k14_constants) {
        const QSeries f = whmf::build_test_form(2, 14, j, 30);
        REQUIRE(f.coeff(0) == c);
        // holomorphic at infinity by the gap structure
        for (long n = f.val(); n < 0; ++n) REQUIRE(f.coeff(n) == 0);
    }
    REQUIRE_THROWS_AS(whmf::build_test_form(2, 14, 4, 30),
                      std::invalid_argument);  // j exceeds d-1 = 3
}

TEST_CASE("decompose: base cases and a round trip") {
    const long p = 3, w = -6, prec = 40;
    const auto ta = whmf::theta_alpha(w, p, prec);

    // alpha itself: pole order = theta pole, N = 0, B = [1]
    const auto d0 = whmf::decompose(ta.alpha, w, p, prec, ta.pole_order);
    REQUIRE(d0.N == 0);
    REQUIRE(d0.B == std::vector<mpq_class>{1});

    // Phi * alpha: N = 1, B = [0, 1]
    const QSeries pa = whmf::phi(p, 1 + prec) * ta.alpha;
    const auto d1 = whmf::decompose(pa.truncated(prec), w, p, prec,
                                    ta.pole_order + 1);
    REQUIRE(d1.B == std::vector<mpq_class>({0, 1}));

    // arbitrary integer combination comes back exactly
    const std::vector<mpq_class> want = {3, 50, -7, 0, 11};
    QSeries f = QSeries::constant(0, prec);
    QSeries base = ta.alpha;
    const QSeries ph = whmf::phi(p, 1 + prec);
    for (std::size_t i = 0; i < want.size(); ++i) {
        f = f + want[i] * base.truncated(prec);
        base = base * ph;
    }
    const auto d2 = whmf::decompose(f, w, p, prec,
                                    ta.pole_order + static_cast<long>(want.size()) - 1);
    REQUIRE(d2.B == want);
    REQUIRE(d2.remainder_ok);

    // too-small N leaves a remainder and must refuse
    REQUIRE_THROWS_AS(
        whmf::decompose(f, w, p, prec, ta.pole_order + 1), std::domain_error);
}

TEST_CASE("the (p,k,j) = (3,8,1) certificate, all eight coefficients") {
    const long prec = 60;
    const QSeries f = whmf::build_test_form(3, 8, 1, prec);
    const auto dec = whmf::decompose(f, -6, 3, prec, 9);  // pole j*p^2 = 9
    REQUIRE(dec.N == 7);
    REQUIRE(dec.B.size() == 8);
    for (std::size_t i = 0; i < 8; ++i)
        REQUIRE(dec.B[i] == mpq_class(refvals::p3_k8_B[i]));

    long minrest = whmf::vp_cap;
    for (std::size_t i = 1; i < 8; ++i)
        minrest = std::min(minrest, dec.valuations[i]);
    REQUIRE(minrest == refvals::p3_k8_min_vp_igt0);
    REQUIRE(dec.valuations[0] == 1);  // B_0 = -480 = -2^5 3 5

    // eps = 3, nu = 2: certificate passes, and with the exact constant
    REQUIRE(whmf::certify_constant_congruence(dec, 3, 2));
    REQUIRE(whmf::certify_constant_congruence(dec, 3, 2, mpq_class(-480)));
    REQUIRE_FALSE(whmf::certify_constant_congruence(dec, 3, 2, mpq_class(480)));
    REQUIRE_FALSE(whmf::certify_constant_congruence(dec, 6, 2));
    REQUIRE_FALSE(whmf::certify_constant_congruence(dec, 3, 0));
}

TEST_CASE("verify_certificates at reduced precision") {
    const auto rep = whmf::verify_certificates(2, 14, 80);
    REQUIRE(rep.pass);
    REQUIRE(rep.d == 4);
    REQUIRE(rep.prec == 80);
    REQUIRE(rep.tests.size() == 3);
    for (std::size_t i = 0; i < rep.tests.size(); ++i) {
        const auto& [j, c] = refvals::p2_k14_constants[i];
        REQUIRE(rep.tests[i].j == j);
        REQUIRE(rep.tests[i].constant == c);
        REQUIRE(rep.tests[i].cert_pass);
        REQUIRE(rep.tests[i].scan_pass);
    }
    REQUIRE(rep.mu_inequality);  // holds for every weight at p = 2

    const std::string js = whmf::report_to_json(rep);
    REQUIRE(js.find("{\"p\":2,\"k\":14,\"d\":4,\"epsilon\":7,\"tests\":[") == 0);
    REQUIRE(js.find("{\"j\":1,\"constant\":\"24\",") != std::string::npos);
    REQUIRE(js.find("\"constant\":\"196608\"") != std::string::npos);
    REQUIRE(js.find("\"constant\":\"38263776\"") != std::string::npos);
    REQUIRE(js.find("\"pass\":true,\"prec\":80,\"elapsed_ms\":") !=
            std::string::npos);

    const auto rep38 = whmf::verify_certificates(3, 8, 120);
    REQUIRE(rep38.pass);
    REQUIRE(rep38.tests.size() == 2);  // d = dim M_8(3) = 3, so j in {1,2}
    REQUIRE(rep38.tests[0].constant == -480);
    REQUIRE(rep38.tests[0].vp_B0 == 1);
    REQUIRE(rep38.tests[0].min_vp_rest == refvals::p3_k8_min_vp_igt0);

    REQUIRE_THROWS_AS(whmf::verify_certificates(3, 8, 20), std::invalid_argument);
    REQUIRE_THROWS_AS(whmf::verify_certificates(3, 12), std::invalid_argument);
}

TEST_CASE("valuation reporting and the zero sentinel") {
    REQUIRE(whmf::vp_capped(mpq_class(0), 3) == whmf::vp_cap);
    REQUIRE(whmf::vp_capped(mpq_class(18), 3) == 2);
    REQUIRE(whmf::vp_capped(mpq_class(1, 9), 3) == -2);
    REQUIRE(whmf::lambda_half(2) == 12);
    REQUIRE(whmf::lambda_half(5) == 3);
}

TEST_CASE("valuation-bound scan: clean region, exclusions, tight bounds") {
    REQUIRE(whmf::scan_includes(2, 1, 2));
    REQUIRE_FALSE(whmf::scan_includes(2, 2, 6));   // v_2 equal
    REQUIRE_FALSE(whmf::scan_includes(3, 1, 10));  // v_3(1) = v_3(10) = 0

    const auto rep = whmf::scan_valuation_bound(2, 4, 4, 16);
    REQUIRE(rep.violations.empty());
    REQUIRE(rep.checked + rep.skipped == 4 * 16);

    const auto rep3 = whmf::scan_valuation_bound(3, 6, 3, 12, 1);
    REQUIRE(rep3.violations.empty());
    REQUIRE(rep3.checked + rep3.skipped == 3 * 12 * 2);

    // bound attainment: v_2(a_4(1,2)) = (1)(k-1) + eps exactly
    REQUIRE(whmf::vp_int(whmf::a_coeff(4, 1, 2), 2) == 3 + 7);
    REQUIRE(whmf::vp_int(whmf::a_coeff(4, 1, 5), 5) == 3 + 1);
}

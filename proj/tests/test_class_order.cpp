#include <doctest.h>

#include "abcforge/class_order.hpp"

using namespace abcforge;

namespace {

AbcParams base(unsigned ell) { return make_params(3, ell, {Int(1), Int(-1)}); }

}  // namespace

TEST_CASE("ideal identity and norms at tau = 5") {
    auto p = base(2);
    IntPoly f = build_f(p, 5);
    auto id = verify_ideal_identity(p, 5, f);
    CHECK(id.ok());
    CHECK(id.norm_xi == 25);
    CHECK(id.norm_g == 625);
    CHECK(ideal_norm_tau_xi(f, 5) == 5);
    CHECK(ideal_norm_tau_xi(f, -5) == 5);
}

TEST_CASE("identity holds across parameter sets") {
    for (auto p : {make_params(3, 2, {Int(1), Int(-1)}), make_params(4, 2, {Int(1), Int(2), Int(3)}),
                   make_params(3, 3, {Int(1), Int(2)}), make_params(5, 2, {Int(1), Int(-1), Int(2), Int(-2)})}) {
        Int P = abs(p.product());
        for (long k = 1; k <= 6; ++k) {
            Int tau = 1 + k * P;
            if (!satisfies_cond1(p, tau)) continue;
            auto a = a_of_tau(p, tau);
            bool collide = false;
            for (const Int& aj : p.a) collide = collide || aj == *a;
            if (collide) continue;
            IntPoly f = build_f(p, tau);
            CHECK(verify_ideal_identity(p, tau, f).ok());
            CHECK(ideal_norm_tau_xi(f, tau) == abs(tau));
        }
    }
}

TEST_CASE("condition 3 threshold") {
    CHECK_FALSE(cond3_holds(2, 100, 3));  // 2^5 = 32 <= 10^4
    CHECK(cond3_holds(7, 100, 3));        // 7^5 = 16807 > 10^4
    CHECK_FALSE(cond3_holds(-2, -100, 3));
}

TEST_CASE("condition 1 failure is unsuitable") {
    auto p = make_params(3, 2, {Int(1), Int(2)});
    auto rec = check_suitable(p, 4);
    CHECK(rec.verdict == Verdict::Unsuitable);
    CHECK(rec.reason == "cond1");
    CHECK(rec.cond1 == CondStatus::Fail);
}

TEST_CASE("collision is skipped") {
    // a(0) = 1 = a_1 for (1, -1) at ell = 2.
    auto rec = check_suitable(base(2), 0);
    CHECK(rec.verdict == Verdict::Skipped);
    CHECK(rec.reason == "degenerate");
}

TEST_CASE("tau = 5 is suitable and the class of (5, xi) has order 2") {
    auto rec = check_suitable(base(2), 5);
    REQUIRE(rec.verdict == Verdict::Suitable);
    CHECK(rec.cond1 == CondStatus::Pass);
    CHECK(rec.cond2 == CondStatus::Pass);
    CHECK(rec.cond3 == CondStatus::Pass);
    CHECK(rec.cond4 == CondStatus::Pass);
    CHECK(rec.disc->value == 1376905);
    auto cert = class_order_certificate(rec);
    CHECK(cert.certified);
    CHECK(cert.lambda == 2);
    CHECK(cert.ideal_norm == 5);
    REQUIRE(cert.oracle == OracleCheck::Verified);
    CHECK(cert.oracle_order == 2);
    CHECK(cert.oracle_class_number % 2 == 0);
}

TEST_CASE("ell = 1 gives lambda = 1") {
    auto rec = check_suitable(base(1), 5);
    REQUIRE(rec.verdict == Verdict::Suitable);
    auto cert = class_order_certificate(rec);
    CHECK(cert.lambda == 1);
    if (cert.oracle == OracleCheck::Verified) CHECK(cert.oracle_order == 1);
}

TEST_CASE("a condition 4 failure yields divisor evidence") {
    // At tau = 2 the element xi times a unit is a square.
    auto rec = check_suitable(base(2), 2);
    REQUIRE(rec.verdict == Verdict::Unsuitable);
    CHECK(rec.reason == "cond4");
    auto cert = class_order_certificate(rec);
    CHECK_FALSE(cert.certified);
    CHECK(cert.lambda == 1);
    REQUIRE(cert.witness);
    CHECK(cert.witness->p == 2);
    REQUIRE(cert.oracle == OracleCheck::Verified);
    CHECK(cert.oracle_order == 1);
}

TEST_CASE("order three classes") {
    for (long tau : {2L, 3L, -3L}) {
        auto rec = check_suitable(base(3), tau);
        REQUIRE(rec.verdict == Verdict::Suitable);
        auto cert = class_order_certificate(rec);
        CHECK(cert.lambda == 3);
        REQUIRE(cert.oracle == OracleCheck::Verified);
        CHECK(cert.oracle_order == 3);
    }
}

TEST_CASE("certificate refuses records without evidence") {
    auto rec = check_suitable(make_params(3, 2, {Int(1), Int(2)}), 4);
    CHECK_THROWS_AS(class_order_certificate(rec), std::invalid_argument);
}

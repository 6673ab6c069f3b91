#include <doctest.h>

#include <cmath>
#include <random>

#include "abcforge/field_disc.hpp"
#include "abcforge/units_kummer.hpp"

using namespace abcforge;

namespace {

KummerContext tau5_context() {
    AbcParams p = make_params(3, 2, {Int(1), Int(-1)});
    IntPoly f = build_f(p, 5);
    auto fd = field_discriminant(f);
    return KummerContext(f, compute_embeddings(p, Int(-24), f, 64), fd.index);
}

}  // namespace

TEST_CASE("unit system of the tau = 5 field") {
    KummerContext ctx = tau5_context();
    UnitSystem us = abc_unit_system(ctx, {Int(1), Int(-1)});
    REQUIRE(us.nonzero);
    // xi_k - a_k ~ 1 / ((a_k - a) prod_{j != k} (a_k - a_j)), so the diagonal
    // is -log|a| shifted by O(1) terms and the off-diagonal is log|a_i - a_j|.
    CHECK(us.log_matrix[0][0].mid_d() == doctest::Approx(-std::log(25.0 * 2)).epsilon(0.01));
    CHECK(us.log_matrix[1][1].mid_d() == doctest::Approx(-std::log(23.0 * 2)).epsilon(0.01));
    CHECK(us.log_matrix[0][1].mid_d() == doctest::Approx(std::log(2.0)).epsilon(0.01));
    CHECK(us.log_matrix[1][0].mid_d() == doctest::Approx(std::log(2.0)).epsilon(0.01));
    double predicted = std::log(50.0) * std::log(46.0) - std::log(2.0) * std::log(2.0);
    CHECK(us.regulator.mid_d() == doctest::Approx(predicted).epsilon(0.01));
    CHECK(us.regulator.width() < 1e-15);
    for (long a : {1L, -1L}) CHECK(abs(ctx.K.norm(ctx.K.xi_minus(a))) == 1);
}

TEST_CASE("power tests") {
    KummerContext ctx = tau5_context();
    const auto& K = ctx.K;
    CHECK(is_pth_power(ctx, K.one(), 2).status == PowerStatus::Power);
    CHECK(is_pth_power(ctx, K.one(), 3).status == PowerStatus::Power);
    NfElem xi = K.xi_minus(0);
    auto sq = is_pth_power(ctx, K.pow(xi, 2), 2);
    REQUIRE(sq.status == PowerStatus::Power);
    CHECK((*sq.root == xi || *sq.root == K.neg(xi)));
    auto neg = is_pth_power(ctx, K.xi_minus(1), 2);
    CHECK(neg.status == PowerStatus::NotPower);
    CHECK(neg.screen == PowerScreen::Sign);
    auto nrm = is_pth_power(ctx, K.from_int(2), 2);
    CHECK(nrm.status == PowerStatus::NotPower);
    CHECK(nrm.screen == PowerScreen::Norm);
    CHECK_THROWS_AS(is_pth_power(ctx, K.zero(), 2), std::invalid_argument);
}

TEST_CASE("saturation and planted refinement") {
    KummerContext ctx = tau5_context();
    const auto& K = ctx.K;
    std::vector<NfElem> units{K.xi_minus(1), K.xi_minus(-1)};
    auto sat = saturation_check(ctx, units, 2);
    CHECK(sat.status == Outcome::Pass);
    CHECK(sat.tests == 7);

    std::vector<NfElem> planted{K.pow(units[0], 2), units[1]};
    auto bad = saturation_check(ctx, planted, 2);
    REQUIRE(bad.status == Outcome::Fail);
    REQUIRE(bad.witness);
    CHECK(K.pow(bad.witness->root, 2) == K.mul(K.from_int(bad.witness->s), planted[0]));
    auto fixed = refine_units(K, planted, *bad.witness);
    CHECK(saturation_check(ctx, fixed, 2).status == Outcome::Pass);
}

TEST_CASE("condition 4") {
    KummerContext ctx = tau5_context();
    const auto& K = ctx.K;
    NfElem xi = K.xi_minus(0);
    std::vector<NfElem> units{K.xi_minus(1), K.xi_minus(-1)};
    auto one = condition4_check(ctx, xi, units, 1);
    CHECK(one.status == Outcome::Pass);
    CHECK(one.tests == 0);
    auto two = condition4_check(ctx, xi, units, 2);
    CHECK(two.status != Outcome::Undecided);
    CHECK(two.sign_screens > 0);

    // Planted failure: in the field of x^3 - 2 * 7^2 ... use a field where xi is a square times a unit.
    NfElem d = K.add(K.xi_minus(0), K.from_int(3));
    NfElem beta = K.pow(d, 2);
    auto fake = condition4_check(ctx, beta, units, 2);
    REQUIRE(fake.status == Outcome::Fail);
    REQUIRE(fake.witness);
    CHECK(fake.witness->p == 2);
}

#include <doctest.h>

#include <random>

#include "abcforge/field_disc.hpp"
#include "abcforge/poly_mod_p.hpp"
#include "oracles.hpp"

using namespace abcforge;

TEST_CASE("resultant conventions") {
    // Sylvester: Res(x - 1, x + 1) = lead^1 * (1 + 1).
    CHECK(resultant(IntPoly{-1, 1}, IntPoly{1, 1}) == 2);
    CHECK(oracle::sylvester_resultant(IntPoly{-1, 1}, IntPoly{1, 1}) == 2);
    CHECK(resultant(IntPoly{-1, -1, 0, 1}, IntPoly{1}) == 1);
    CHECK(resultant(IntPoly{-1, -1, 0, 1}, IntPoly{-1, 0, 3}) == 23);
    CHECK(oracle::sylvester_resultant(IntPoly{-1, -1, 0, 1}, IntPoly{-1, 0, 3}) == 23);
    CHECK_THROWS_AS(resultant(IntPoly{}, IntPoly{1, 1}), std::invalid_argument);
}

TEST_CASE("discriminant examples") {
    CHECK(discriminant(IntPoly{-1, 0, 1}) == 4);
    CHECK(discriminant(IntPoly{-1, -1, 0, 1}) == -23);
    IntPoly tau5{-25, -1, 24, 1};
    CHECK(discriminant(tau5) == oracle::sylvester_discriminant(tau5));
    CHECK(discriminant(tau5) == 1376905);
    CHECK_THROWS(discriminant(IntPoly{7}));
}

TEST_CASE("resultant agrees with the Sylvester determinant") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        IntPoly f = oracle::random_poly(rng, 1 + int(rng() % 6), 30, false);
        IntPoly g = oracle::random_poly(rng, 1 + int(rng() % 6), 30, false);
        REQUIRE(resultant(f, g) == oracle::sylvester_resultant(f, g));
        REQUIRE(discriminant(f) == oracle::sylvester_discriminant(f));
    }
}

TEST_CASE("resultant is multiplicative") {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 200; ++it) {
        IntPoly f = oracle::random_poly(rng, 1 + int(rng() % 5), 20, false);
        IntPoly g = oracle::random_poly(rng, 1 + int(rng() % 4), 20, false);
        IntPoly h = oracle::random_poly(rng, 1 + int(rng() % 4), 20, false);
        REQUIRE(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
    }
}

TEST_CASE("discriminant vanishes exactly for repeated roots") {
    std::mt19937_64 rng(13);
    int zero = 0;
    for (int it = 0; it < 600; ++it) {
        IntPoly f;
        if (it % 3 == 0) {
            IntPoly a = oracle::random_poly(rng, 1 + int(rng() % 2), 50, true);
            IntPoly b = oracle::random_poly(rng, int(rng() % 3), 50, true);
            f = a * a * b;
        } else {
            f = oracle::random_poly(rng, 1 + int(rng() % 6), 50, true);
        }
        bool d0 = discriminant(f) == 0;
        bool common = primitive_gcd(f, f.derivative()).degree() > 0;
        REQUIRE(d0 == common);
        zero += d0;
    }
    CHECK(zero >= 200);
}

TEST_CASE("factor shapes") {
    IntPoly f{-1, -1, 0, 1};
    auto s2 = factor_shape_mod_p(f, 2);
    CHECK(s2.parts == std::vector<std::pair<int, int>>{{3, 1}});
    CHECK_FALSE(s2.ramified);
    CHECK(oracle::roots_mod(f, 2).empty());
    auto s5 = factor_shape_mod_p(f, 5);
    CHECK(s5.parts == std::vector<std::pair<int, int>>{{1, 1}, {2, 1}});
    CHECK(oracle::roots_mod(f, 5) == std::vector<long>{2});
    auto sq = factor_shape_mod_p(IntPoly{-1, 0, 1}, 2);
    CHECK(sq.parts == std::vector<std::pair<int, int>>{{1, 2}});
    CHECK(sq.ramified);
    CHECK_THROWS_AS(factor_shape_mod_p(IntPoly{1, 0, 2}, 2), std::invalid_argument);
}

TEST_CASE("factor shapes sum to the degree and match root counts") {
    std::mt19937_64 rng(14);
    const std::uint64_t primes[] = {2, 3, 5, 7, 11, 13, 101, 1000003};
    for (int it = 0; it < 300; ++it) {
        IntPoly f = oracle::random_poly(rng, 1 + int(rng() % 7), 40, false);
        for (auto p : primes) {
            if (modp::reduce(f.lead(), p) == 0) continue;
            auto s = factor_shape_mod_p(f, p);
            int total = 0, linear = 0;
            for (auto [d, m] : s.parts) {
                total += d * m;
                if (d == 1) ++linear;
            }
            REQUIRE(total == f.degree());
            if (p < 200) REQUIRE(std::size_t(linear) == oracle::roots_mod(f, long(p)).size());
            // Every factor really divides f mod p.
            PolyP fp = modp::monic(modp::from_int_poly(f, p), p);
            PolyP prod{1};
            for (auto& fac : modp::factor(f, p))
                for (int k = 0; k < fac.multiplicity; ++k) prod = modp::mul(prod, fac.poly, p);
            REQUIRE(prod == fp);
        }
    }
}

TEST_CASE("Dedekind criterion") {
    CHECK(dedekind_p_maximal(IntPoly{-1, -1, 0, 1}, 23));
    CHECK_FALSE(dedekind_p_maximal(IntPoly{-5, 0, 1}, 2));
    CHECK(dedekind_p_maximal(IntPoly{-2, 0, 1}, 2));
    CHECK_THROWS_AS(dedekind_p_maximal(IntPoly{-5, 0, 2}, 2), std::invalid_argument);
}

TEST_CASE("field discriminant") {
    CHECK(field_discriminant(IntPoly{-1, -1, 0, 1}).value == -23);
    auto d5 = field_discriminant(IntPoly{-5, 0, 1});
    CHECK_FALSE(d5.skipped);
    CHECK(d5.value == 5);
    CHECK(d5.index == 2);
    CHECK(field_discriminant(IntPoly{-2, 0, 1}).value == 8);

    FactorBudget tiny{100, 0};
    auto sk = field_discriminant(IntPoly{-1009L * 1013L, 0, 1}, tiny);
    CHECK(sk.skipped);
    CHECK(sk.skip_reason == "factor-budget");

    std::mt19937_64 rng(15);
    for (int it = 0; it < 200; ++it) {
        IntPoly f = oracle::random_poly(rng, 2 + int(rng() % 3), 30, true);
        if (discriminant(f) == 0) continue;
        auto fd = field_discriminant(f);
        if (fd.skipped) continue;
        REQUIRE(fd.poly_disc % fd.value == 0);
        REQUIRE(is_perfect_square(Int(fd.poly_disc / fd.value)));
    }
}

TEST_CASE("integer factorization") {
    auto f = factor_integer(Int(2 * 2 * 3) * 1000003 * 1000003);
    CHECK(f.complete());
    CHECK(f.primes.size() == 3);
    CHECK(f.primes.back().first == 1000003);
    CHECK(f.primes.back().second == 2);
    Int big = Int("1000000007") * Int("998244353");
    auto g = factor_integer(big);
    CHECK(g.complete());
    CHECK(g.primes.size() == 2);
}

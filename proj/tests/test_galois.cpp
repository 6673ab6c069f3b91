#include <doctest.h>

#include <random>

#include "abcforge/galois.hpp"
#include "oracles.hpp"

using namespace abcforge;

TEST_CASE("irreducibility") {
    auto r = is_irreducible(IntPoly{-1, -1, 0, 1});
    CHECK(r.status == Verdict3::Yes);
    CHECK(r.shape_primes == std::vector<std::uint64_t>{2});
    auto q = is_irreducible(IntPoly{-1, 0, 1});
    CHECK(q.status == Verdict3::No);
    REQUIRE(q.factor);
    CHECK(q.factor->degree() == 1);
    CHECK(exact_quotient(IntPoly{-1, 0, 1}, *q.factor).has_value());
    IntPoly prod = IntPoly{1, 0, 1} * IntPoly{2, 0, 1};
    auto s = is_irreducible(prod);
    CHECK(s.status == Verdict3::No);
    REQUIRE(s.factor);
    CHECK(s.factor->degree() == 2);
}

TEST_CASE("S_n certificates") {
    auto c = certify_sn(IntPoly{-1, -1, 0, 1});
    CHECK(c.status == SnStatus::Certified);
    CHECK(c.n_cycle_prime == 2);
    CHECK(c.transposition_prime == 5);
    CHECK(c.disc == -23);
    CHECK(c.disc_nonsquare);
    CHECK(check_sn_certificate(IntPoly{-1, -1, 0, 1}, c));

    IntPoly tau5{-25, -1, 24, 1};
    auto c5 = certify_sn(tau5);
    CHECK(c5.status == SnStatus::Certified);
    CHECK(c5.transposition_prime < 100);
    CHECK(check_sn_certificate(tau5, c5));

    auto c4 = certify_sn(IntPoly{1, 0, 0, 0, 1});
    CHECK(c4.status == SnStatus::NotSymmetric);
    CHECK(certify_sn(IntPoly{-1, -3, 0, 1}).status == SnStatus::NotSymmetric);
}

TEST_CASE("small Galois oracle") {
    CHECK(brute_galois_small(IntPoly{-1, -1, 0, 1}) == SmallGroup::S3);
    CHECK(brute_galois_small(IntPoly{-1, -3, 0, 1}) == SmallGroup::C3);
    CHECK(brute_galois_small(IntPoly{1, 0, 0, 0, 1}) == SmallGroup::V4);
    CHECK(brute_galois_small(IntPoly{-2, 0, 0, 0, 1}) == SmallGroup::D4);
    // x^4 - 4x^2 + 2 has group C4; x^4 + 8x + 12 has A4.
    CHECK(brute_galois_small(IntPoly{2, 0, -4, 0, 1}) == SmallGroup::C4);
    CHECK(brute_galois_small(IntPoly{12, 8, 0, 0, 1}) == SmallGroup::A4);
    CHECK(brute_galois_small(IntPoly{1, 1, 0, 0, 1}) == SmallGroup::S4);
    CHECK(brute_galois_small(IntPoly{1, 0, 1} * IntPoly{2, 0, 1}) == SmallGroup::Reducible);
    CHECK_THROWS_AS(brute_galois_small(IntPoly{1, 1, 1, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("certificates agree with the oracle on random small polynomials") {
    std::mt19937_64 rng(31);
    int certified = 0;
    for (int it = 0; it < 600; ++it) {
        int n = 3 + int(rng() % 2);
        IntPoly f = oracle::random_poly(rng, n, 20, false);
        if (f.coeff(0) == 0 || discriminant(f) == 0) continue;
        SmallGroup g = brute_galois_small(f);
        auto c = certify_sn(f, 300);
        if (c.status == SnStatus::Certified) {
            ++certified;
            REQUIRE(check_sn_certificate(f, c));
            REQUIRE((g == SmallGroup::S3 || g == SmallGroup::S4));
            REQUIRE(is_irreducible(f).status == Verdict3::Yes);
        }
        if (g == SmallGroup::Reducible) REQUIRE(is_irreducible(f, 300).status != Verdict3::Yes);
    }
    CHECK(certified > 300);
}

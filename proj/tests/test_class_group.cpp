#include <doctest.h>

#include <random>

#include "abcforge/class_group.hpp"
#include "abcforge/lattice.hpp"

using namespace abcforge;

namespace {

ClassGroupResult run(const IntPoly& f) {
    ClassGroupResult r = class_group_small(f);
    REQUIRE(r.verified());
    return r;
}

}  // namespace

TEST_CASE("empty factor base gives the trivial group") {
    auto r = run(IntPoly{1, -2, -1, 1});
    CHECK(r.disc == 49);
    CHECK(r.factor_base.empty());
    CHECK(r.class_number == 1);
    CHECK(r.structure() == "C1");
    auto s = run(IntPoly{-1, -1, 0, 1});
    CHECK(s.disc == -23);
    CHECK(s.class_number == 1);
}

TEST_CASE("classical small class groups") {
    // Q(sqrt -5), Q(sqrt -23), Q(sqrt 10), Q(cbrt 11), Q(cbrt 7), Q(cbrt 2).
    CHECK(run(IntPoly{5, 0, 1}).structure() == "C2");
    CHECK(run(IntPoly{6, 1, 1}).structure() == "C3");
    CHECK(run(IntPoly{-10, 0, 1}).structure() == "C2");
    CHECK(run(IntPoly{-11, 0, 0, 1}).structure() == "C2");
    CHECK(run(IntPoly{-7, 0, 0, 1}).structure() == "C3");
    CHECK(run(IntPoly{-2, 0, 0, 1}).structure() == "C1");
}

TEST_CASE("ideal orders in Q(sqrt -5)") {
    auto r = run(IntPoly{5, 0, 1});
    // (2, 1 + x) is the non-principal prime above 2; (3, x - 1) too; their product is principal.
    long i2 = r.find(2, PolyP{1, 1});
    REQUIRE(i2 >= 0);
    IntVec v(r.factor_base.size(), Int(0));
    v[i2] = 1;
    CHECK(class_order_of(r, v) == 2);
    v[i2] = 2;
    CHECK(class_order_of(r, v) == 1);
}

TEST_CASE("unverified outside the supported range") {
    // Index 2: Z[sqrt 5] is not maximal.
    CHECK(class_group_small(IntPoly{-5, 0, 1}).reason == "index");
    ClassGroupConfig cfg;
    cfg.disc_bound = 100;
    CHECK(class_group_small(IntPoly{-25, -1, 24, 1}, cfg).reason == "disc-bound");
    CHECK(class_group_small(IntPoly{-1, 0, 0, 0, 0, 1}).reason == "degree");
}

TEST_CASE("valuations add up to the norm") {
    IntPoly f{-25, -1, 24, 1};
    NumberField K(f);
    ClassGroupConfig cfg;
    cfg.extra_primes = {5};
    auto r = class_group_small(f, cfg);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int t = 0; t < 200; ++t) {
        NfElem a = K.zero();
        for (auto& c : a.c) c = d(rng);
        if (a.is_zero()) continue;
        Int N = abs(K.norm(a).get_num());
        for (std::uint64_t p : {2ul, 3ul, 5ul, 7ul}) {
            int want = 0;
            while (mpz_divisible_ui_p(N.get_mpz_t(), p)) {
                N /= Int(p);
                ++want;
            }
            int got = 0;
            for (const auto& P : r.factor_base)
                if (P.p == p) got += P.f * valuation(K, a, P);
            CHECK(got == want);
        }
    }
}

TEST_CASE("tau = 5 field: the ideal (5, xi) has order 2") {
    IntPoly f{-25, -1, 24, 1};
    ClassGroupConfig cfg;
    cfg.extra_primes = {5};
    auto r = class_group_small(f, cfg);
    REQUIRE(r.verified());
    CHECK(r.class_number % 2 == 0);
    long i = r.find(5, PolyP{0, 1});
    REQUIRE(i >= 0);
    IntVec v(r.factor_base.size(), Int(0));
    v[i] = 1;
    CHECK(class_order_of(r, v) == 2);
    // Same answer from a different relation stream.
    cfg.seed = 11;
    cfg.sieve_lines = 3;
    auto r2 = class_group_small(f, cfg);
    REQUIRE(r2.verified());
    CHECK(r2.structure() == r.structure());
}

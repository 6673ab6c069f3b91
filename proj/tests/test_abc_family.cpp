#include <doctest.h>

#include <random>

#include "abcforge/abc_family.hpp"
#include "abcforge/galois.hpp"
#include "oracles.hpp"

using namespace abcforge;

namespace {
AbcParams paper3(unsigned ell = 2) { return make_params(3, ell, {Int(1), Int(-1)}); }
}  // namespace

TEST_CASE("a(tau)") {
    CHECK(*a_of_tau(paper3(), 5) == -24);
    CHECK(*a_of_tau(paper3(), 0) == 1);
    CHECK_FALSE(a_of_tau(make_params(3, 2, {Int(1), Int(2)}), 2).has_value());
}

TEST_CASE("params validation") {
    CHECK_THROWS_AS(make_params(3, 2, {Int(1), Int(1)}), std::invalid_argument);
    CHECK_THROWS_AS(make_params(3, 2, {Int(0), Int(1)}), std::invalid_argument);
    CHECK_THROWS_AS(make_params(2, 2, {Int(1)}), std::invalid_argument);
    CHECK_THROWS_AS(make_params(4, 2, {Int(1), Int(2)}), std::invalid_argument);
}

TEST_CASE("build_f") {
    CHECK(build_f(paper3(), 5) == IntPoly{-25, -1, 24, 1});
    // tau = 0 gives a(0) = 1 = a_1: the raw family member exists but is degenerate.
    CHECK(family_poly(paper3(), 1) == IntPoly{0, -1, -1, 1});
    CHECK_THROWS_AS(build_f(paper3(), 0), std::domain_error);
    CHECK_THROWS_AS(build_f(make_params(3, 2, {Int(1), Int(2)}), 2), std::invalid_argument);

    AbcParams p4 = make_params(4, 3, {Int(1), Int(2), Int(3)});
    for (long t = -41; t <= 43; t += 6) {
        IntPoly f = build_f(p4, t);
        CHECK(f.is_monic());
        CHECK(f.degree() == 4);
        CHECK(f.coeff(0) == -ipow(Int(t), 3));
        for (const Int& a : p4.a) CHECK(f.eval(a) == -1);
    }
}

TEST_CASE("g polynomial") {
    IntPoly g = g_poly(paper3());
    CHECK(g == IntPoly{1, 1, -1});
    CHECK(g.coeff(0) == 1);
    std::mt19937_64 rng(21);
    for (int it = 0; it < 100; ++it) {
        int n = 3 + int(rng() % 3);
        std::vector<Int> a;
        while (int(a.size()) < n - 1) {
            long v = long(rng() % 15) - 7;
            if (v != 0 && std::find(a.begin(), a.end(), Int(v)) == a.end()) a.push_back(v);
        }
        AbcParams p = make_params(n, 1 + unsigned(rng() % 3), a);
        IntPoly gp = g_poly(p);
        CHECK(gp.degree() == n - 1);
        // x g(x) = P f(0, x), computed directly with rational a(0).
        Rat a0 = Rat(n % 2 == 0 ? 1 : -1, 1) / Rat(p.product());
        a0.canonicalize();
        for (long x = -3; x <= 3; ++x) {
            Rat prod = 1;
            for (const Int& v : a) prod *= Rat(x - v);
            Rat f0 = prod * (Rat(x) - a0) - 1;
            CHECK(Rat(x) * Rat(gp.eval(Int(x))) == f0 * Rat(p.product()));
        }
    }
}

TEST_CASE("g(0) is nonzero for the shipped parameter sets") {
    CHECK(g_poly(paper3()).coeff(0) != 0);
    CHECK(g_poly(make_params(4, 2, {Int(1), Int(2), Int(3)})).coeff(0) != 0);
}

TEST_CASE("candidate range") {
    auto c = candidate_taus(paper3(), 10);
    std::vector<long> taus;
    for (auto& t : c) taus.push_back(t.tau.get_si());
    CHECK(taus == std::vector<long>{8, -8, 9, -9, 10, -10});
    CHECK_FALSE(c[0].mirror);
    CHECK(c[1].mirror);
    CHECK(c[1].a_tau == c[0].a_tau);

    // Brute-force filter of range (14) and condition 1.
    for (unsigned ell : {1u, 2u, 3u}) {
        AbcParams p = make_params(4, ell, {Int(1), Int(2), Int(3)});
        for (long T : {5L, 17L, 40L}) {
            std::vector<long> expect;
            for (long t = 1; t <= T; ++t) {
                bool in_range = 2 * ipow(Int(t), ell) >= ipow(Int(T), ell) + 2;
                if (!in_range) continue;
                for (long s : {t, -t})
                    if (((s - 1) % 6 + 6) % 6 == 0 && std::gcd(s, g_poly(p).coeff(0).get_si()) == 1) expect.push_back(s);
            }
            std::vector<long> got;
            for (auto& t : candidate_taus(p, T)) got.push_back(t.tau.get_si());
            CHECK(got == expect);
        }
    }
    CHECK(range_lower_bound(2, 10) == 8);
}

TEST_CASE("stream restart from a checkpoint") {
    CandidateStream full(paper3(), 40);
    std::vector<long> all;
    while (auto c = full.next()) all.push_back(c->tau.get_si());
    CandidateStream part(paper3(), 40, 33);
    std::vector<long> tail;
    while (auto c = part.next()) tail.push_back(c->tau.get_si());
    std::vector<long> expect(std::find(all.begin(), all.end(), 33), all.end());
    CHECK(tail == expect);
}

TEST_CASE("discriminant closed form") {
    CHECK(disc_closed_form(3, 1, 1, 1, 1, 1) == 31);
    CHECK(closed_form_poly(3, 1, 1, 1, 1, 1) == IntPoly{-3, 5, -4, 1});
    CHECK(discriminant(closed_form_poly(3, 1, 1, 1, 1, 1)) == -31);
    // a(tau) = 0 with gamma = 1: alpha tau^ell + beta = 1.
    for (int n = 3; n <= 6; ++n) CHECK(disc_closed_form(n, 2, -1, 1, 1, 2) == (n % 2 ? 1 : -1) * ipow(Int(n), n));

    std::mt19937_64 rng(22);
    for (int it = 0; it < 100; ++it) {
        int n = 3 + int(rng() % 3);
        long alpha = long(rng() % 9) - 4, beta = long(rng() % 9) - 4, gamma = long(rng() % 9) - 4, tau = long(rng() % 7) - 3;
        if (gamma == 0) gamma = 1;
        unsigned ell = 1 + unsigned(rng() % 3);
        IntPoly g = closed_form_poly(n, alpha, beta, gamma, tau, ell);
        Int sign = (n * (n - 1) / 2) % 2 ? -1 : 1;
        CHECK(sign * oracle::sylvester_discriminant(g) == disc_closed_form(n, alpha, beta, gamma, tau, ell));
    }
}

TEST_CASE("base parameter search") {
    AbcParams p3 = search_base_params(3, 5);
    CHECK(p3.a == std::vector<Int>{1, -1});
    AbcParams p4 = search_base_params(4, 2);
    CHECK(p4.a.size() == 3);
    CHECK(p4.a == std::vector<Int>{1, 2, 3});
    p4.validate();
}

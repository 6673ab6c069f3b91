#include <doctest.h>

#include <random>

#include "abcforge/lattice.hpp"
#include "oracles.hpp"

using namespace abcforge;

namespace {

// Smith invariants by gcd of k x k minors: d_k = D_k / D_{k-1}.
std::vector<Int> smith_by_minors(const std::vector<IntVec>& m) {
    const std::size_t n = m.size();
    std::vector<Int> dk(n + 1, Int(0));
    dk[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Int g = 0;
        std::vector<std::size_t> rs(k), cs(k);
        // Enumerate subsets by bitmask (n <= 4 in these tests).
        for (unsigned rm = 0; rm < (1u << n); ++rm) {
            if (std::size_t(__builtin_popcount(rm)) != k) continue;
            for (unsigned cm = 0; cm < (1u << n); ++cm) {
                if (std::size_t(__builtin_popcount(cm)) != k) continue;
                std::vector<std::vector<Rat>> sub;
                for (std::size_t r = 0; r < n; ++r) {
                    if (!(rm >> r & 1)) continue;
                    std::vector<Rat> row;
                    for (std::size_t c = 0; c < n; ++c)
                        if (cm >> c & 1) row.push_back(Rat(m[r][c]));
                    sub.push_back(row);
                }
                Int di = oracle::det(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), di.get_mpz_t());
            }
        }
        dk[k] = g;
    }
    std::vector<Int> out;
    for (std::size_t k = 1; k <= n; ++k) {
        Int d = dk[k] / dk[k - 1];
        if (d > 1) out.push_back(d);
    }
    return out;
}

}  // namespace

TEST_CASE("HNF lattice basics") {
    HnfLattice lat(2);
    CHECK_FALSE(lat.full_rank());
    CHECK(lat.add({Int(4), Int(2)}));
    CHECK(lat.add({Int(0), Int(6)}));
    CHECK(lat.full_rank());
    CHECK(lat.determinant() == 24);
    CHECK(lat.contains({Int(8), Int(4)}));
    CHECK(lat.contains({Int(4), Int(8)}));
    CHECK_FALSE(lat.contains({Int(2), Int(1)}));
    CHECK(lat.add({Int(2), Int(1)}));
    CHECK(lat.determinant() == 12);
    CHECK_FALSE(lat.add({Int(6), Int(3)}));
    auto inv = smith_invariants(lat);
    REQUIRE(inv.size() == 1);
    CHECK(inv[0] == 12);
}

TEST_CASE("Smith invariants agree with the determinantal-divisor oracle") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> e(-9, 9), dim(1, 4);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = std::size_t(dim(rng));
        std::vector<IntVec> m(n, IntVec(n));
        std::vector<std::vector<Rat>> mr(n, std::vector<Rat>(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                m[r][c] = e(rng);
                mr[r][c] = Rat(m[r][c]);
            }
        if (oracle::det(mr) == 0) continue;
        auto want = smith_by_minors(m);
        CHECK(smith_invariants(m) == want);
        // Same quotient through the incremental HNF, with extra redundant rows.
        HnfLattice lat(n);
        for (auto& row : m) lat.add(row);
        for (int extra = 0; extra < 3; ++extra) {
            IntVec comb(n, Int(0));
            for (auto& row : m) {
                int k = e(rng);
                for (std::size_t c = 0; c < n; ++c) comb[c] += k * row[c];
            }
            CHECK_FALSE(lat.add(comb));
        }
        CHECK(lat.determinant() == abs(oracle::det(mr)));
        CHECK(smith_invariants(lat) == want);
        ++checked;
    }
    CHECK(checked > 150);
}

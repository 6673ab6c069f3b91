#include <doctest.h>

#include "abcforge/embeddings.hpp"

using namespace abcforge;

TEST_CASE("real root isolation") {
    auto r = isolate_real_roots(IntPoly{-1, 0, 1});
    REQUIRE(r.size() == 2);
    CHECK(r[0].lo < -1);
    CHECK(r[0].hi > -1);
    CHECK(r[1].lo < 1);
    CHECK(r[1].hi > 1);
    CHECK(isolate_real_roots(IntPoly{1, 0, 1}).empty());
    CHECK_THROWS_AS(isolate_real_roots(IntPoly{1, 2, 1}), std::invalid_argument);

    IntPoly f{-25, -1, 24, 1};
    auto b = isolate_real_roots(f);
    REQUIRE(b.size() == 3);
    CHECK(SturmSequence(f).count_all() == 3);
    // Sign changes pin one root in (1, 1.05) and one in (-1.05, -1).
    CHECK(f.sign_at(Rat(1)) < 0);
    CHECK(f.sign_at(Rat(21, 20)) > 0);
    CHECK(f.sign_at(Rat(-1)) < 0);
    CHECK(f.sign_at(Rat(-21, 20)) > 0);
    for (auto& box : b) CHECK(brackets_root(f, box));
    RootBox one = refine_root(f, b[2], Rat(1, 100));
    CHECK(one.lo >= 1);
    CHECK(one.hi <= Rat(21, 20));
    RootBox fine = refine_root_bits(f, b[2], 64);
    CHECK(fine.width() <= Rat(Int(1), Int(1) << 64));
    CHECK(brackets_root(f, fine));
    CHECK(fine.lo >= b[2].lo);
    CHECK(fine.hi <= b[2].hi);
    // Idempotent once narrow enough.
    RootBox again = refine_root(f, fine, Rat(1, 1000));
    CHECK(again.lo == fine.lo);
    CHECK(again.hi == fine.hi);
}

TEST_CASE("refinement agrees with plain bisection") {
    IntPoly f{-2, 0, 1};
    RootBox box{Rat(1), Rat(2), -1};
    RootBox r = refine_root_bits(f, box, 80);
    Rat lo = 1, hi = 2;
    while (hi - lo > Rat(Int(1), Int(1) << 80)) {
        Rat m = (lo + hi) / 2;
        if (m * m < 2) lo = m;
        else hi = m;
    }
    CHECK(r.lo <= hi);
    CHECK(r.hi >= lo);
    CHECK(r.lo * r.lo < 2);
    CHECK(r.hi * r.hi > 2);
}

TEST_CASE("embeddings and layout") {
    AbcParams p = make_params(3, 2, {Int(1), Int(-1)});
    IntPoly f = build_f(p, 5);
    EmbeddingData emb = compute_embeddings(p, Int(-24), f, 64);
    REQUIRE(emb.totally_real);
    CHECK(emb.roots[0].lo > 1);
    CHECK(emb.roots[1].hi < -1);
    CHECK(emb.xi().lo > -24);
    CHECK(emb.xi().hi < -23);
    CHECK(root_product_consistent(f, emb));
    LayoutReport rep = verify_root_layout(p, Int(-24), f, emb, 10, 1);
    CHECK(rep.pass);
    CHECK(rep.scaled_upper[0] <= 10);
    CHECK(rep.xi_scaled_upper <= 10);
    CHECK_THROWS_AS(verify_root_layout(p, Int(-24), f, emb), std::invalid_argument);

    // x^3 - 2 has one real root.
    AbcParams q = make_params(3, 1, {Int(1), Int(2)});
    EmbeddingData e2 = compute_plain_embeddings(IntPoly{-2, 0, 0, 1}, 64);
    CHECK_FALSE(e2.totally_real);
    LayoutReport r2 = verify_root_layout(q, Int(200), IntPoly{-2, 0, 0, 1}, e2);
    CHECK_FALSE(r2.pass);
    CHECK_FALSE(r2.totally_real);
}

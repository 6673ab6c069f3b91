#pragma once

// Sturm-sequence isolation and refinement of the real roots of an integer
// polynomial. Box endpoints are exact rationals (dyadic in practice), so
// every sign decision is made in exact arithmetic.

#include <vector>

#include "abcforge/int_poly.hpp"

namespace abcforge {

struct RootBox {
    Rat lo, hi;
    // Which fixed parameter the root tracks: 0..n-2 for a_1..a_{n-1},
    // n-1 for a(tau), -1 when unlabeled.
    int label = -1;

    Rat width() const { return hi - lo; }
    Rat midpoint() const { return (lo + hi) / 2; }
};

class SturmSequence {
public:
    explicit SturmSequence(const IntPoly& f);

    // Sign variations of the sequence at x.
    int variations_at(const Rat& x) const;
    // Sign variations at +infinity (sign > 0) or -infinity (sign < 0).
    int variations_at_infinity(int sign) const;
    // Number of distinct real roots in (lo, hi].
    int count(const Rat& lo, const Rat& hi) const;
    int count_all() const;

    const std::vector<IntPoly>& polys() const { return seq_; }

private:
    std::vector<IntPoly> seq_;
};

// Disjoint isolating boxes for all real roots, ascending. Each box has
// lo < hi and f(lo) * f(hi) < 0. Throws std::invalid_argument unless f is squarefree.
std::vector<RootBox> isolate_real_roots(const IntPoly& f);

// Shrinks a box around a simple root to width <= eps, by bisection with
// opportunistic Newton steps whose results are re-certified by sign change.
RootBox refine_root(const IntPoly& f, const RootBox& box, const Rat& eps);

// Width <= 2^-bits.
RootBox refine_root_bits(const IntPoly& f, const RootBox& box, long bits);

// True when f changes sign across the box.
bool brackets_root(const IntPoly& f, const RootBox& box);

}  // namespace abcforge

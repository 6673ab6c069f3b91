#pragma once

// Slow, independent reference computations used only by the tests.

#include <random>
#include <vector>

#include "abcforge/int_poly.hpp"

namespace oracle {

using abcforge::Int;
using abcforge::IntPoly;
using abcforge::Rat;

// Determinant by fraction-exact Gaussian elimination.
inline Int det(std::vector<std::vector<Rat>> m) {
    const std::size_t n = m.size();
    Rat d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rat k = m[r][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[r][j] -= k * m[c][j];
        }
    }
    return Int(d);
}

// Resultant as the Sylvester determinant.
inline Int sylvester_resultant(const IntPoly& f, const IntPoly& g) {
    const int m = f.degree(), k = g.degree();
    if (m == 0) return abcforge::ipow(f.coeff(0), static_cast<unsigned long>(k));
    if (k == 0) return abcforge::ipow(g.coeff(0), static_cast<unsigned long>(m));
    const int size = m + k;
    std::vector<std::vector<Rat>> s(size, std::vector<Rat>(size, 0));
    for (int r = 0; r < k; ++r)
        for (int i = 0; i <= m; ++i) s[r][r + i] = f.coeff(m - i);
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= k; ++i) s[k + r][r + i] = g.coeff(k - i);
    return det(s);
}

inline Int sylvester_discriminant(const IntPoly& f) {
    const int d = f.degree();
    Int r = sylvester_resultant(f, f.derivative()) / f.lead();
    return (d * (d - 1) / 2) % 2 ? Int(-r) : r;
}

inline IntPoly random_poly(std::mt19937_64& rng, int degree, long bound, bool monic) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::vector<Int> c(degree + 1);
    for (auto& x : c) x = dist(rng);
    if (monic) c.back() = 1;
    while (c.back() == 0) c.back() = dist(rng);
    return IntPoly(c);
}

// Roots of f mod a small prime p by exhaustion.
inline std::vector<long> roots_mod(const IntPoly& f, long p) {
    std::vector<long> out;
    for (long x = 0; x < p; ++x) {
        Int v = f.eval(Int(x)) % p;
        if (v == 0) out.push_back(x);
    }
    return out;
}

}  // namespace oracle

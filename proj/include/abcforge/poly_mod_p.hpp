#pragma once

// Polynomials over F_p for word-size primes p < 2^63, with squarefree,
// distinct-degree and equal-degree (Cantor-Zassenhaus) factorization.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "abcforge/int_poly.hpp"

namespace abcforge {

// Coefficients in [0, p), lowest degree first, no trailing zeros.
using PolyP = std::vector<std::uint64_t>;

namespace modp {

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
std::uint64_t reduce(const Int& v, std::uint64_t p);

int degree(const PolyP& a);
PolyP from_int_poly(const IntPoly& f, std::uint64_t p);
// Lift with coefficients in [0, p).
IntPoly lift(const PolyP& a);

PolyP add(const PolyP& a, const PolyP& b, std::uint64_t p);
PolyP sub(const PolyP& a, const PolyP& b, std::uint64_t p);
PolyP mul(const PolyP& a, const PolyP& b, std::uint64_t p);
std::pair<PolyP, PolyP> divrem(const PolyP& a, const PolyP& b, std::uint64_t p);
PolyP rem(const PolyP& a, const PolyP& b, std::uint64_t p);
PolyP monic(const PolyP& a, std::uint64_t p);
PolyP gcd(const PolyP& a, const PolyP& b, std::uint64_t p);
PolyP derivative(const PolyP& a, std::uint64_t p);
PolyP powmod(const PolyP& base, const Int& e, const PolyP& m, std::uint64_t p);

struct Factor {
    PolyP poly;  // monic irreducible
    int multiplicity;
};

// (squarefree part, multiplicity) pairs for monic f; parts are coprime.
std::vector<std::pair<PolyP, int>> squarefree_decomposition(const PolyP& f, std::uint64_t p);

// For monic squarefree f: (product of all irreducible factors of degree d, d).
std::vector<std::pair<PolyP, int>> distinct_degree(const PolyP& f, std::uint64_t p);

// Splits g (monic, product of distinct irreducibles of degree d) into its factors.
std::vector<PolyP> equal_degree(const PolyP& g, int d, std::uint64_t p);

// Complete factorization of f mod p into monic irreducibles; sorted by (degree, coefficients).
std::vector<Factor> factor(const IntPoly& f, std::uint64_t p);

}  // namespace modp

// Degrees and multiplicities of the irreducible factors of f mod p.
struct FactorShape {
    std::uint64_t prime = 0;
    std::vector<std::pair<int, int>> parts;  // (degree, multiplicity), sorted
    bool ramified = false;                   // some multiplicity > 1

    bool operator==(const FactorShape&) const = default;
    // Multiset of cycle lengths (degrees repeated by multiplicity).
    std::vector<int> degrees() const;
    std::string str() const;
};

// Throws std::invalid_argument when p divides lead(f).
FactorShape factor_shape_mod_p(const IntPoly& f, std::uint64_t p);

}  // namespace abcforge

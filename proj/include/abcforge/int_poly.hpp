#pragma once

// Dense univariate polynomials over Z with exact arithmetic.
//
// Resultants follow the Sylvester convention: for f of degree m and g of
// degree k, Res(f, g) = lead(f)^k * prod g(alpha) over the roots alpha of f.
// The discriminant is disc(f) = (-1)^{m(m-1)/2} Res(f, f') / lead(f), so
// disc(x^2 - 1) = 4 and disc(x^3 - x - 1) = -23.

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abcforge/arith.hpp"

namespace abcforge {

class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    static IntPoly constant(const Int& c);
    static IntPoly monomial(const Int& c, int degree);
    // prod (x - r) over the given roots.
    static IntPoly from_roots(std::span<const Int> roots);

    // -1 for the zero polynomial.
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    // Coefficient of x^i; zero outside [0, degree].
    Int coeff(int i) const;
    const Int& lead() const;
    std::span<const Int> coeffs() const { return c_; }

    IntPoly derivative() const;
    Int content() const;
    IntPoly primitive_part() const;

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;
    // Sign of f(x), computed without building the rational value.
    int sign_at(const Rat& x) const;

    IntPoly operator-() const;
    IntPoly& operator+=(const IntPoly& o);
    IntPoly& operator-=(const IntPoly& o);
    IntPoly& operator*=(const Int& s);
    friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
    friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(IntPoly a, const Int& s) { return a *= s; }
    friend IntPoly operator*(const Int& s, IntPoly a) { return a *= s; }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    // Divides every coefficient by d; throws if any division is inexact.
    IntPoly divided_exactly(const Int& d) const;

    std::string str(char var = 'x') const;

private:
    void normalize();
    std::vector<Int> c_;
};

// lead(b)^(deg a - deg b + 1) * a = q * b + r with deg r < deg b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

// q with a == q * b over Z, or nullopt when b does not divide a in Z[x].
std::optional<IntPoly> exact_quotient(const IntPoly& a, const IntPoly& b);

// Primitive gcd with positive leading coefficient (content ignored).
IntPoly primitive_gcd(const IntPoly& a, const IntPoly& b);

Int resultant(const IntPoly& f, const IntPoly& g);
Int discriminant(const IntPoly& f);
bool is_squarefree(const IntPoly& f);

}  // namespace abcforge

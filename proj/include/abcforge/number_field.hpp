#pragma once

// Arithmetic in K = Q[x]/(f) for monic irreducible f, elements in the power
// basis 1, xi, ..., xi^{n-1} with rational coordinates.

#include <string>
#include <vector>

#include "abcforge/interval.hpp"
#include "abcforge/int_poly.hpp"

namespace abcforge {

struct NfElem {
    std::vector<Rat> c;  // length n

    bool operator==(const NfElem&) const = default;
    bool is_zero() const;
    // Least common denominator of the coordinates.
    Int denominator() const;
    std::string str() const;
};

class NumberField {
public:
    explicit NumberField(IntPoly f);

    int degree() const { return n_; }
    const IntPoly& poly() const { return f_; }

    NfElem zero() const;
    NfElem one() const;
    NfElem from_int(const Int& v) const;
    // h(xi) for any integer polynomial h.
    NfElem from_poly(const IntPoly& h) const;
    // xi - v.
    NfElem xi_minus(const Int& v) const;

    NfElem add(const NfElem& a, const NfElem& b) const;
    NfElem sub(const NfElem& a, const NfElem& b) const;
    NfElem neg(const NfElem& a) const;
    NfElem mul(const NfElem& a, const NfElem& b) const;
    NfElem scale(const NfElem& a, const Rat& s) const;
    NfElem pow(const NfElem& a, unsigned long k) const;
    // Throws std::domain_error for zero.
    NfElem inverse(const NfElem& a) const;

    // Exact norm via the resultant with f.
    Rat norm(const NfElem& a) const;
    // Value of a at the embedding xi -> root.
    Interval embed(const NfElem& a, const Interval& root) const;

private:
    IntPoly f_;
    int n_;
};

}  // namespace abcforge

#pragma once

// Closed real intervals with MPFR endpoints and outward rounding. Every
// operation returns an interval containing all possible exact results.

#include <string>

#include <mpfr.h>

#include "abcforge/arith.hpp"

namespace abcforge {

class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64);
    Interval(const Rat& lo, const Rat& hi, mpfr_prec_t prec);
    Interval(const Interval& o);
    Interval(Interval&& o) noexcept;
    Interval& operator=(const Interval& o);
    Interval& operator=(Interval&& o) noexcept;
    ~Interval();

    static Interval point(const Rat& v, mpfr_prec_t prec) { return Interval(v, v, prec); }
    static Interval point(const Int& v, mpfr_prec_t prec) { return Interval(Rat(v), Rat(v), prec); }

    mpfr_prec_t precision() const { return prec_; }
    mpfr_srcptr lo() const { return lo_; }
    mpfr_srcptr hi() const { return hi_; }
    Rat lo_rat() const;
    Rat hi_rat() const;
    double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double mid_d() const;
    // Upper bound on hi - lo.
    double width() const;
    // log2 of the width (upper bound), -inf for points.
    double log2_width() const;

    // +1 / -1 when the sign is certified, 0 when the interval meets zero.
    int sign() const;
    bool contains(const Rat& v) const;
    bool contains_integer() const;
    // Integers inside the interval, when there is at most `limit` of them.
    bool integers_inside(std::vector<Int>& out, std::size_t limit) const;
    bool certainly_le(const Rat& v) const;

    Interval operator-() const;
    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    // Throws std::domain_error when b meets zero.
    friend Interval operator/(const Interval& a, const Interval& b);

    Interval abs() const;
    // Natural log; throws std::domain_error unless certainly positive.
    Interval log() const;
    // Real k-th root of a nonnegative interval.
    Interval root(unsigned long k) const;
    Interval pow(unsigned long k) const;
    Interval hull(const Interval& o) const;

    std::string str() const;

private:
    mpfr_prec_t prec_;
    mpfr_t lo_, hi_;
};

}  // namespace abcforge

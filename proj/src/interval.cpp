#include "abcforge/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace abcforge {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rat& lo, const Rat& hi, mpfr_prec_t prec) : prec_(prec) {
    if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
    if (this == &o) return *this;
    prec_ = o.prec_;
    mpfr_set_prec(lo_, prec_);
    mpfr_set_prec(hi_, prec_);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
    return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
    std::swap(prec_, o.prec_);
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

Interval::~Interval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

Rat Interval::lo_rat() const {
    Rat r;
    mpfr_get_q(r.get_mpq_t(), lo_);
    return r;
}

Rat Interval::hi_rat() const {
    Rat r;
    mpfr_get_q(r.get_mpq_t(), hi_);
    return r;
}

double Interval::mid_d() const { return 0.5 * (lo_d() + hi_d()); }

double Interval::width() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

double Interval::log2_width() const {
    mpfr_t w;
    mpfr_init2(w, prec_);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double out;
    if (mpfr_zero_p(w)) {
        out = -std::numeric_limits<double>::infinity();
    } else {
        long e;
        double m = mpfr_get_d_2exp(&e, w, MPFR_RNDU);
        out = std::log2(m) + double(e);
    }
    mpfr_clear(w);
    return out;
}

int Interval::sign() const {
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    return 0;
}

bool Interval::contains(const Rat& v) const {
    return mpfr_cmp_q(lo_, v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, v.get_mpq_t()) >= 0;
}

bool Interval::certainly_le(const Rat& v) const { return mpfr_cmp_q(hi_, v.get_mpq_t()) <= 0; }

bool Interval::integers_inside(std::vector<Int>& out, std::size_t limit) const {
    out.clear();
    Int a, b;
    mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDU);
    mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
    if (a > b) return true;
    if (b - a + 1 > Int(static_cast<unsigned long>(limit))) return false;
    for (Int k = a; k <= b; ++k) out.push_back(k);
    return true;
}

bool Interval::contains_integer() const {
    Int a, b;
    mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDU);
    mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
    return a <= b;
}

Interval Interval::operator-() const {
    Interval r(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec_, b.prec_));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    mpfr_prec_t prec = std::max(a.prec_, b.prec_);
    Interval r(prec);
    mpfr_t t;
    mpfr_init2(t, prec);
    mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto x : xs) {
        for (auto y : ys) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.sign() == 0) throw std::domain_error("interval division by an interval containing zero");
    mpfr_prec_t prec = std::max(a.prec_, b.prec_);
    Interval inv(prec);
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
}

Interval Interval::abs() const {
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    Interval r(prec_);
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    if (mpfr_greater_p(hi_, r.hi_)) mpfr_set(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::log() const {
    if (mpfr_sgn(lo_) <= 0) throw std::domain_error("log of an interval not certainly positive");
    Interval r(prec_);
    mpfr_log(r.lo_, lo_, MPFR_RNDD);
    mpfr_log(r.hi_, hi_, MPFR_RNDU);
    return r;
}

Interval Interval::root(unsigned long k) const {
    if (mpfr_sgn(lo_) < 0) throw std::domain_error("root of an interval with negative part");
    Interval r(prec_);
    mpfr_rootn_ui(r.lo_, lo_, k, MPFR_RNDD);
    mpfr_rootn_ui(r.hi_, hi_, k, MPFR_RNDU);
    return r;
}

Interval Interval::pow(unsigned long k) const {
    Interval r = point(Int(1), prec_);
    Interval b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

Interval Interval::hull(const Interval& o) const {
    Interval r(std::max(prec_, o.prec_));
    mpfr_min(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
}

std::string Interval::str() const {
    std::ostringstream os;
    os.precision(17);
    os << "[" << lo_d() << ", " << hi_d() << "]";
    return os.str();
}

}  // namespace abcforge

#include "abcforge/number_field.hpp"

#include <sstream>
#include <stdexcept>

namespace abcforge {

bool NfElem::is_zero() const {
    for (const Rat& v : c)
        if (v != 0) return false;
    return true;
}

Int NfElem::denominator() const {
    Int d = 1;
    for (const Rat& v : c) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den().get_mpz_t());
    return d;
}

std::string NfElem::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << to_string(c[i]);
    os << "]";
    return os.str();
}

NumberField::NumberField(IntPoly f) : f_(std::move(f)), n_(f_.degree()) {
    if (!f_.is_monic() || n_ < 1) throw std::invalid_argument("NumberField needs a monic polynomial of degree >= 1");
}

NfElem NumberField::zero() const { return NfElem{std::vector<Rat>(n_, Rat(0))}; }

NfElem NumberField::one() const { return from_int(1); }

NfElem NumberField::from_int(const Int& v) const {
    NfElem e = zero();
    e.c[0] = v;
    return e;
}

NfElem NumberField::from_poly(const IntPoly& h) const {
    std::vector<Rat> c(std::max(n_, h.degree() + 1), Rat(0));
    for (int i = 0; i <= h.degree(); ++i) c[i] = h.coeff(i);
    for (int k = int(c.size()) - 1; k >= n_; --k) {
        if (c[k] == 0) continue;
        for (int i = 0; i < n_; ++i) c[k - n_ + i] -= c[k] * f_.coeff(i);
        c[k] = 0;
    }
    c.resize(n_);
    return NfElem{std::move(c)};
}

NfElem NumberField::xi_minus(const Int& v) const {
    NfElem e = zero();
    e.c[0] = -v;
    if (n_ > 1) e.c[1] = 1;
    else e.c[0] -= f_.coeff(0);
    return e;
}

NfElem NumberField::add(const NfElem& a, const NfElem& b) const {
    NfElem r = a;
    for (int i = 0; i < n_; ++i) r.c[i] += b.c[i];
    return r;
}

NfElem NumberField::sub(const NfElem& a, const NfElem& b) const {
    NfElem r = a;
    for (int i = 0; i < n_; ++i) r.c[i] -= b.c[i];
    return r;
}

NfElem NumberField::neg(const NfElem& a) const {
    NfElem r = a;
    for (auto& v : r.c) v = -v;
    return r;
}

NfElem NumberField::scale(const NfElem& a, const Rat& s) const {
    NfElem r = a;
    for (auto& v : r.c) v *= s;
    return r;
}

NfElem NumberField::mul(const NfElem& a, const NfElem& b) const {
    std::vector<Rat> c(2 * n_ - 1, Rat(0));
    for (int i = 0; i < n_; ++i) {
        if (a.c[i] == 0) continue;
        for (int j = 0; j < n_; ++j) c[i + j] += a.c[i] * b.c[j];
    }
    for (int k = 2 * n_ - 2; k >= n_; --k) {
        if (c[k] == 0) continue;
        for (int i = 0; i < n_; ++i) c[k - n_ + i] -= c[k] * f_.coeff(i);
    }
    c.resize(n_);
    return NfElem{std::move(c)};
}

NfElem NumberField::pow(const NfElem& a, unsigned long k) const {
    NfElem r = one(), b = a;
    while (k) {
        if (k & 1) r = mul(r, b);
        k >>= 1;
        if (k) b = mul(b, b);
    }
    return r;
}

NfElem NumberField::inverse(const NfElem& a) const {
    if (a.is_zero()) throw std::domain_error("inverse of zero");
    // Solve M y = e_0 where column j of M is a * xi^j.
    std::vector<std::vector<Rat>> m(n_, std::vector<Rat>(n_ + 1, Rat(0)));
    NfElem col = a;
    NfElem x = zero();
    if (n_ > 1) x.c[1] = 1;
    for (int j = 0; j < n_; ++j) {
        for (int i = 0; i < n_; ++i) m[i][j] = col.c[i];
        if (j + 1 < n_) col = mul(col, x);
    }
    m[0][n_] = 1;
    for (int c = 0; c < n_; ++c) {
        int piv = c;
        while (m[piv][c] == 0) ++piv;
        std::swap(m[piv], m[c]);
        for (int r = 0; r < n_; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rat k = m[r][c] / m[c][c];
            for (int j = c; j <= n_; ++j) m[r][j] -= k * m[c][j];
        }
    }
    NfElem y = zero();
    for (int i = 0; i < n_; ++i) y.c[i] = m[i][n_] / m[i][i];
    return y;
}

Rat NumberField::norm(const NfElem& a) const {
    Int d = a.denominator();
    std::vector<Int> num(n_);
    for (int i = 0; i < n_; ++i) num[i] = Int(a.c[i] * d);
    IntPoly h(num);
    if (h.is_zero()) return 0;
    Rat r(resultant(f_, h), ipow(d, static_cast<unsigned long>(n_)));
    r.canonicalize();
    return r;
}

Interval NumberField::embed(const NfElem& a, const Interval& root) const {
    mpfr_prec_t prec = root.precision();
    Interval acc = Interval::point(a.c[n_ - 1], prec);
    for (int i = n_ - 2; i >= 0; --i) acc = acc * root + Interval::point(a.c[i], prec);
    return acc;
}

}  // namespace abcforge

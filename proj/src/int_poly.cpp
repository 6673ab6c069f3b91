#include "abcforge/int_poly.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace abcforge {

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    c_.reserve(coeffs.size());
    for (long v : coeffs) c_.emplace_back(v);
    normalize();
}

IntPoly IntPoly::constant(const Int& c) { return IntPoly(std::vector<Int>{c}); }

IntPoly IntPoly::monomial(const Int& c, int degree) {
    std::vector<Int> v(std::size_t(degree) + 1);
    v.back() = c;
    return IntPoly(std::move(v));
}

IntPoly IntPoly::from_roots(std::span<const Int> roots) {
    IntPoly r = constant(1);
    for (const Int& a : roots) r = r * IntPoly(std::vector<Int>{-a, Int(1)});
    return r;
}

void IntPoly::normalize() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Int IntPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return 0;
    return c_[std::size_t(i)];
}

const Int& IntPoly::lead() const {
    if (c_.empty()) throw std::domain_error("lead() of zero polynomial");
    return c_.back();
}

IntPoly IntPoly::derivative() const {
    if (degree() <= 0) return {};
    std::vector<Int> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Int(static_cast<unsigned long>(i));
    return IntPoly(std::move(d));
}

Int IntPoly::content() const {
    Int g = 0;
    for (const Int& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return {};
    Int g = content();
    if (sgn(lead()) < 0) g = -g;
    return divided_exactly(g);
}

Int IntPoly::eval(const Int& x) const {
    Int acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rat IntPoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
    return acc;
}

int IntPoly::sign_at(const Rat& x) const {
    // den^deg * f(num/den) = sum c_i num^i den^(deg-i), and den > 0.
    const Int& num = x.get_num();
    const Int& den = x.get_den();
    Int acc = 0;
    Int den_pow = 1;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = acc * num + *it * den_pow;
        den_pow *= den;
    }
    return sgn(acc);
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (Int& v : r.c_) v = -v;
    return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    normalize();
    return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    normalize();
    return *this;
}

IntPoly& IntPoly::operator*=(const Int& s) {
    for (Int& v : c_) v *= s;
    normalize();
    return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Int> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::divided_exactly(const Int& d) const {
    if (sgn(d) == 0) throw std::domain_error("division by zero");
    std::vector<Int> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!mpz_divisible_p(c_[i].get_mpz_t(), d.get_mpz_t()))
            throw std::logic_error("inexact coefficient division");
        mpz_divexact(r[i].get_mpz_t(), c_[i].get_mpz_t(), d.get_mpz_t());
    }
    return IntPoly(std::move(r));
}

std::string IntPoly::str(char var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Int& c = c_[std::size_t(i)];
        if (sgn(c) == 0) continue;
        Int mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0 || mag != 1) {
            os << mag.get_str();
            if (i > 0) os << "*";
        }
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo_remainder by zero");
    int db = b.degree();
    if (a.degree() < db) return a;
    std::vector<Int> r(a.coeffs().begin(), a.coeffs().end());
    const Int& lb = b.lead();
    int steps = a.degree() - db + 1;
    int dr = a.degree();
    while (dr >= db) {
        Int top = r[std::size_t(dr)];
        for (auto& v : r) v *= lb;
        for (int j = 0; j <= db; ++j) r[std::size_t(dr - db + j)] -= top * b.coeffs()[std::size_t(j)];
        --steps;
        while (dr >= 0 && sgn(r[std::size_t(dr)]) == 0) --dr;
        r.resize(std::size_t(dr + 1));
    }
    if (steps > 0) {
        Int m = ipow(lb, static_cast<unsigned long>(steps));
        for (auto& v : r) v *= m;
    }
    return IntPoly(std::move(r));
}

std::optional<IntPoly> exact_quotient(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::domain_error("exact_quotient by zero");
    if (a.is_zero()) return IntPoly{};
    int db = b.degree();
    if (a.degree() < db) return std::nullopt;
    std::vector<Int> r(a.coeffs().begin(), a.coeffs().end());
    std::vector<Int> q(std::size_t(a.degree() - db + 1));
    const Int& lb = b.lead();
    for (int i = a.degree() - db; i >= 0; --i) {
        Int& top = r[std::size_t(i + db)];
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        Int t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        q[std::size_t(i)] = t;
        for (int j = 0; j <= db; ++j) r[std::size_t(i + j)] -= t * b.coeffs()[std::size_t(j)];
    }
    for (const Int& v : r)
        if (sgn(v) != 0) return std::nullopt;
    return IntPoly(std::move(q));
}

IntPoly primitive_gcd(const IntPoly& a, const IntPoly& b) {
    IntPoly x = a.primitive_part();
    IntPoly y = b.primitive_part();
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        IntPoly r = pseudo_remainder(x, y);
        x = std::move(y);
        y = r.primitive_part();
    }
    return x;
}

Int resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
    if (g.degree() == 0) return ipow(g.lead(), static_cast<unsigned long>(f.degree()));
    if (f.degree() == 0) return ipow(f.lead(), static_cast<unsigned long>(g.degree()));

    // Subresultant PRS.
    IntPoly a = f, b = g;
    int s = 1;
    if (a.degree() < b.degree()) {
        std::swap(a, b);
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
    }
    Int ca = a.content(), cb = b.content();
    Int t = ipow(ca, static_cast<unsigned long>(b.degree())) * ipow(cb, static_cast<unsigned long>(a.degree()));
    a = a.divided_exactly(ca);
    b = b.divided_exactly(cb);
    Int gg = 1, h = 1;
    for (;;) {
        int delta = a.degree() - b.degree();
        if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
        IntPoly r = pseudo_remainder(a, b);
        a = std::move(b);
        b = r.divided_exactly(gg * ipow(h, static_cast<unsigned long>(delta)));
        gg = a.lead();
        if (delta >= 1) {
            Int num = ipow(gg, static_cast<unsigned long>(delta));
            Int den = ipow(h, static_cast<unsigned long>(delta - 1));
            mpz_divexact(h.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        }
        if (b.degree() > 0) continue;
        if (b.is_zero()) return 0;
        break;
    }
    unsigned long da = static_cast<unsigned long>(a.degree());
    Int num = ipow(b.lead(), da);
    Int den = ipow(h, da - 1);
    Int hh;
    mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return Int(s) * t * hh;
}

Int discriminant(const IntPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
    int d = f.degree();
    Int r = resultant(f, f.derivative());
    Int q;
    mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), f.lead().get_mpz_t());
    if ((long(d) * (d - 1) / 2) % 2 == 1) q = -q;
    return q;
}

bool is_squarefree(const IntPoly& f) {
    if (f.degree() < 1) return f.degree() == 0;
    return primitive_gcd(f, f.derivative()).degree() == 0;
}

}  // namespace abcforge

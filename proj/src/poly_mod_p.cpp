#include "abcforge/poly_mod_p.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace abcforge {
namespace modp {

std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a, p);
        a = mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::domain_error("inverse of zero mod p");
    return pow(a, p - 2, p);
}

std::uint64_t reduce(const Int& v, std::uint64_t p) {
    Int r;
    Int pp;
    mpz_import(pp.get_mpz_t(), 1, -1, sizeof(p), 0, 0, &p);
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), pp.get_mpz_t());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, r.get_mpz_t());
    return out;
}

namespace {

void trim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return (s >= p || s < a) ? s - p : s;
}

std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + (p - b);
}

bool is_one(const PolyP& a) { return a.size() == 1 && a[0] == 1; }

PolyP x_poly() { return {0, 1}; }

}  // namespace

int degree(const PolyP& a) { return int(a.size()) - 1; }

PolyP from_int_poly(const IntPoly& f, std::uint64_t p) {
    PolyP r(f.coeffs().size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = reduce(f.coeffs()[i], p);
    trim(r);
    return r;
}

IntPoly lift(const PolyP& a) {
    std::vector<Int> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        mpz_import(c[i].get_mpz_t(), 1, -1, sizeof(a[i]), 0, 0, &a[i]);
    }
    return IntPoly(std::move(c));
}

PolyP add(const PolyP& a, const PolyP& b, std::uint64_t p) {
    PolyP r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = addm(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
    trim(r);
    return r;
}

PolyP sub(const PolyP& a, const PolyP& b, std::uint64_t p) {
    PolyP r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = subm(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, p);
    trim(r);
    return r;
}

PolyP mul(const PolyP& a, const PolyP& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = addm(r[i + j], mul(a[i], b[j], p), p);
    }
    trim(r);
    return r;
}

std::pair<PolyP, PolyP> divrem(const PolyP& a, const PolyP& b, std::uint64_t p) {
    if (b.empty()) throw std::domain_error("polynomial division by zero mod p");
    PolyP r = a;
    int db = degree(b);
    if (degree(r) < db) return {{}, r};
    PolyP q(std::size_t(degree(r) - db + 1), 0);
    std::uint64_t il = inv(b.back(), p);
    for (int i = degree(r); i >= db; --i) {
        std::uint64_t t = mul(r[std::size_t(i)], il, p);
        if (!t) continue;
        q[std::size_t(i - db)] = t;
        for (int j = 0; j <= db; ++j)
            r[std::size_t(i - db + j)] = subm(r[std::size_t(i - db + j)], mul(t, b[std::size_t(j)], p), p);
    }
    trim(r);
    trim(q);
    return {q, r};
}

PolyP rem(const PolyP& a, const PolyP& b, std::uint64_t p) { return divrem(a, b, p).second; }

PolyP monic(const PolyP& a, std::uint64_t p) {
    if (a.empty()) return a;
    std::uint64_t il = inv(a.back(), p);
    PolyP r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], il, p);
    return r;
}

PolyP gcd(const PolyP& a, const PolyP& b, std::uint64_t p) {
    PolyP x = a, y = b;
    while (!y.empty()) {
        PolyP r = rem(x, y, p);
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x, p);
}

PolyP derivative(const PolyP& a, std::uint64_t p) {
    if (a.size() <= 1) return {};
    PolyP r(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p, p);
    trim(r);
    return r;
}

PolyP powmod(const PolyP& base, const Int& e, const PolyP& m, std::uint64_t p) {
    PolyP result = rem(PolyP{1}, m, p);
    PolyP b = rem(base, m, p);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = rem(mul(result, result, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b, p), m, p);
    }
    return result;
}

namespace {

Int to_int(std::uint64_t v) {
    Int r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
    return r;
}

PolyP pth_root(const PolyP& f, std::uint64_t p) {
    PolyP r;
    for (std::size_t i = 0; i < f.size(); i += p) r.push_back(f[i]);
    trim(r);
    return r;
}

void sff(const PolyP& f, std::uint64_t p, int scale, std::vector<std::pair<PolyP, int>>& out) {
    PolyP c = gcd(f, derivative(f, p), p);
    PolyP w = divrem(f, c, p).first;
    int i = 1;
    while (!is_one(w)) {
        PolyP y = gcd(w, c, p);
        PolyP fac = divrem(w, y, p).first;
        if (degree(fac) > 0) out.emplace_back(monic(fac, p), i * scale);
        w = y;
        c = divrem(c, y, p).first;
        ++i;
    }
    if (degree(c) > 0) sff(monic(pth_root(c, p), p), p, scale * int(p), out);
}

std::vector<PolyP> split_equal_degree(const PolyP& g, int d, std::uint64_t p, std::mt19937_64& rng) {
    if (degree(g) == d) return {g};
    int n = degree(g);
    Int exponent = (ipow(to_int(p), static_cast<unsigned long>(d)) - 1) / 2;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        PolyP a(std::size_t(n), 0);
        for (auto& v : a) v = rng() % p;
        trim(a);
        if (degree(a) < 1) continue;
        PolyP b;
        if (p == 2) {
            PolyP t = rem(a, g, p);
            b = t;
            for (int i = 1; i < d; ++i) {
                t = rem(mul(t, t, p), g, p);
                b = add(b, t, p);
            }
        } else {
            b = sub(powmod(a, exponent, g, p), PolyP{1}, p);
        }
        PolyP v = gcd(g, b, p);
        if (degree(v) > 0 && degree(v) < n) {
            auto left = split_equal_degree(v, d, p, rng);
            auto right = split_equal_degree(divrem(g, v, p).first, d, p, rng);
            left.insert(left.end(), right.begin(), right.end());
            return left;
        }
    }
    throw std::runtime_error("equal-degree factorization did not converge");
}

}  // namespace

std::vector<std::pair<PolyP, int>> squarefree_decomposition(const PolyP& f, std::uint64_t p) {
    std::vector<std::pair<PolyP, int>> out;
    if (degree(f) <= 0) return out;
    sff(monic(f, p), p, 1, out);
    return out;
}

std::vector<std::pair<PolyP, int>> distinct_degree(const PolyP& f, std::uint64_t p) {
    std::vector<std::pair<PolyP, int>> out;
    PolyP rest = monic(f, p);
    PolyP h = rem(x_poly(), rest, p);
    Int pe = to_int(p);
    for (int i = 1; degree(rest) >= 2 * i; ++i) {
        h = powmod(h, pe, rest, p);
        PolyP g = gcd(rest, sub(h, x_poly(), p), p);
        if (degree(g) > 0) {
            out.emplace_back(g, i);
            rest = divrem(rest, g, p).first;
            h = rem(h, rest, p);
        }
    }
    if (degree(rest) > 0) out.emplace_back(rest, degree(rest));
    return out;
}

std::vector<PolyP> equal_degree(const PolyP& g, int d, std::uint64_t p) {
    std::mt19937_64 rng(p * 0x9E3779B97F4A7C15ULL + std::uint64_t(degree(g)) * 1315423911ULL + std::uint64_t(d));
    return split_equal_degree(monic(g, p), d, p, rng);
}

std::vector<Factor> factor(const IntPoly& f, std::uint64_t p) {
    PolyP fp = from_int_poly(f, p);
    if (degree(fp) != f.degree()) throw std::invalid_argument("prime divides the leading coefficient");
    std::vector<Factor> out;
    for (auto& [part, mult] : squarefree_decomposition(fp, p))
        for (auto& [prod, d] : distinct_degree(part, p))
            for (auto& irr : equal_degree(prod, d, p)) out.push_back({irr, mult});
    std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) {
        if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
        return a.poly < b.poly;
    });
    return out;
}

}  // namespace modp

std::vector<int> FactorShape::degrees() const {
    std::vector<int> out;
    for (auto [d, m] : parts)
        for (int i = 0; i < m; ++i) out.push_back(d);
    return out;
}

std::string FactorShape::str() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ",";
        os << "(" << parts[i].first << "," << parts[i].second << ")";
    }
    os << "}";
    return os.str();
}

FactorShape factor_shape_mod_p(const IntPoly& f, std::uint64_t p) {
    PolyP fp = modp::from_int_poly(f, p);
    if (modp::degree(fp) != f.degree()) throw std::invalid_argument("prime divides the leading coefficient");
    FactorShape shape;
    shape.prime = p;
    for (auto& [part, mult] : modp::squarefree_decomposition(fp, p)) {
        for (auto& [prod, d] : modp::distinct_degree(part, p)) {
            int count = modp::degree(prod) / d;
            for (int i = 0; i < count; ++i) shape.parts.emplace_back(d, mult);
            if (mult > 1) shape.ramified = true;
        }
    }
    std::sort(shape.parts.begin(), shape.parts.end());
    return shape;
}

}  // namespace abcforge

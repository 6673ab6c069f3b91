#include "abcforge/galois.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace abcforge {

namespace {

using Mask = std::uint64_t;

// Bit k set iff some sub-multiset of the shape degrees sums to k.
Mask subset_sums(const std::vector<int>& degrees) {
    Mask m = 1;
    for (int d : degrees) m |= m << d;
    return m;
}

Mask proper_degrees(int n) { return ((Mask(1) << n) - 1) & ~Mask(1); }

bool is_prime_small(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool unusable_prime(const Int& lead, const Int& disc, std::uint64_t p) {
    return mpz_divisible_ui_p(lead.get_mpz_t(), p) || mpz_divisible_ui_p(disc.get_mpz_t(), p);
}

bool shape_is(const FactorShape& s, std::vector<int> degs) {
    std::sort(degs.begin(), degs.end());
    return s.degrees() == degs;
}

bool transposition_shape(const FactorShape& s) {
    int twos = 0;
    for (int d : s.degrees()) {
        if (d == 2) ++twos;
        else if (d % 2 == 0) return false;
    }
    return twos == 1;
}

std::vector<Int> divisors(const Int& v) {
    Int a = abs(v);
    std::vector<Int> out;
    if (a == 0) return out;
    for (Int d = 1; d * d <= a; ++d) {
        if (a % d == 0) {
            out.push_back(d);
            if (d * d != a) out.push_back(a / d);
        }
    }
    return out;
}

}  // namespace

std::optional<IntPoly> find_rational_factor(const IntPoly& f) {
    using C = std::complex<long double>;
    const int n = f.degree();
    if (n < 2) return std::nullopt;
    std::vector<C> c(n + 1);
    const long double lead = f.lead().get_d();
    for (int i = 0; i <= n; ++i) c[i] = C(f.coeff(i).get_d() / lead, 0);
    long double radius = 0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
    radius += 1;
    std::vector<C> z(n);
    C seed(0.4L, 0.9L);
    for (int k = 0; k < n; ++k) z[k] = radius * std::pow(seed, k + 1) / std::abs(std::pow(seed, k + 1)) * 0.9L;
    for (int it = 0; it < 2000; ++it) {
        long double change = 0;
        for (int k = 0; k < n; ++k) {
            C num = c[n];
            for (int i = n - 1; i >= 0; --i) num = num * z[k] + c[i];
            C den = 1;
            for (int j = 0; j < n; ++j)
                if (j != k) den *= z[k] - z[j];
            if (std::abs(den) == 0) den = C(1e-30L, 0);
            C step = num / den;
            z[k] -= step;
            change = std::max(change, std::abs(step) / (1 + std::abs(z[k])));
        }
        if (change < 1e-18L) break;
    }
    std::vector<Int> leads = divisors(f.lead());
    for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        int k = __builtin_popcount(mask);
        if (2 * k > n) continue;
        // Elementary symmetric functions of the chosen roots.
        std::vector<C> e(k + 1, C(0, 0));
        e[0] = 1;
        for (int j = 0; j < n; ++j) {
            if (!(mask & (1u << j))) continue;
            for (int i = k; i >= 1; --i) e[i] += e[i - 1] * (-z[j]);
        }
        for (const Int& d : leads) {
            std::vector<Int> coeffs(k + 1);
            bool ok = true;
            const long double dd = d.get_d();
            for (int i = 0; i <= k && ok; ++i) {
                C v = e[k - i] * dd;
                long double re = std::round(v.real());
                if (std::abs(v.imag()) > 0.25L || std::abs(v.real() - re) > 0.25L || std::abs(re) > 9e18L) ok = false;
                else coeffs[i] = Int(static_cast<long>(re));
            }
            if (!ok) continue;
            IntPoly g(coeffs);
            if (g.degree() != k) continue;
            if (exact_quotient(f, g)) return g.primitive_part();
        }
    }
    return std::nullopt;
}

IrreducibilityResult is_irreducible(const IntPoly& f_in, std::size_t prime_budget) {
    IrreducibilityResult r;
    // Irreducibility over Q; the content is irrelevant.
    const IntPoly f = f_in.is_zero() ? f_in : f_in.primitive_part();
    const int n = f.degree();
    if (n <= 0) {
        r.status = Verdict3::No;
        return r;
    }
    if (n == 1) {
        r.status = Verdict3::Yes;
        return r;
    }
    Int d = discriminant(f);
    if (d == 0) {
        IntPoly g = primitive_gcd(f, f.derivative());
        r.status = Verdict3::No;
        r.factor = g;
        return r;
    }
    Mask possible = proper_degrees(n);
    std::size_t used = 0;
    bool tried_factor = false;
    for (std::uint32_t p : first_primes(prime_budget)) {
        if (unusable_prime(f.lead(), d, p)) continue;
        ++used;
        FactorShape s = factor_shape_mod_p(f, p);
        if (shape_is(s, {n})) {
            r.status = Verdict3::Yes;
            r.shape_primes = {p};
            return r;
        }
        Mask next = possible & subset_sums(s.degrees());
        if (next != possible) r.shape_primes.push_back(p);
        possible = next;
        if (possible == 0) {
            r.status = Verdict3::Yes;
            return r;
        }
        if (!tried_factor && used >= 20) {
            tried_factor = true;
            if (auto g = find_rational_factor(f)) {
                r.status = Verdict3::No;
                r.shape_primes.clear();
                r.factor = *g;
                return r;
            }
        }
    }
    if (!tried_factor) {
        if (auto g = find_rational_factor(f)) {
            r.status = Verdict3::No;
            r.shape_primes.clear();
            r.factor = *g;
            return r;
        }
    }
    r.shape_primes.clear();
    return r;
}

SnCertificate certify_sn(const IntPoly& f, std::size_t prime_budget) {
    const int n = f.degree();
    if (n < 2) throw std::invalid_argument("certify_sn needs degree >= 2");
    SnCertificate cert;
    cert.disc = discriminant(f);
    if (cert.disc == 0) throw std::invalid_argument("certify_sn needs a squarefree polynomial");
    cert.disc_nonsquare = !is_perfect_square(cert.disc);
    if (!cert.disc_nonsquare) {
        cert.status = SnStatus::NotSymmetric;
        cert.reason = "square discriminant";
        return cert;
    }
    const bool prime_degree = is_prime_small(n);
    Mask possible = proper_degrees(n);
    bool transitive = false;
    std::size_t used = 0;
    bool tried_factor = false;
    for (std::uint32_t p : first_primes(prime_budget)) {
        if (unusable_prime(f.lead(), cert.disc, p)) continue;
        ++used;
        FactorShape s = factor_shape_mod_p(f, p);
        if (!cert.n_cycle_prime && shape_is(s, {n})) cert.n_cycle_prime = p;
        if (!prime_degree && !cert.long_cycle_prime && shape_is(s, {1, n - 1})) cert.long_cycle_prime = p;
        if (!cert.transposition_prime && transposition_shape(s)) cert.transposition_prime = p;
        if (!transitive) {
            if (cert.n_cycle_prime) {
                transitive = true;
                cert.transitivity_primes = {cert.n_cycle_prime};
            } else {
                Mask next = possible & subset_sums(s.degrees());
                if (next != possible) cert.transitivity_primes.push_back(p);
                possible = next;
                transitive = possible == 0;
            }
        }
        if (transitive && cert.transposition_prime && (prime_degree || cert.long_cycle_prime)) {
            cert.status = SnStatus::Certified;
            return cert;
        }
        if (!transitive && !tried_factor && used >= 20) {
            tried_factor = true;
            if (find_rational_factor(f)) {
                cert.status = SnStatus::NotSymmetric;
                cert.reason = "reducible";
                return cert;
            }
        }
    }
    cert.status = SnStatus::Undecided;
    cert.reason = "prime budget exhausted";
    return cert;
}

bool check_sn_certificate(const IntPoly& f, const SnCertificate& cert) {
    if (cert.status != SnStatus::Certified) return false;
    const int n = f.degree();
    Int d = discriminant(f);
    if (d != cert.disc || is_perfect_square(d)) return false;
    auto shape_at = [&](std::uint64_t p, FactorShape& s) {
        if (p == 0 || unusable_prime(f.lead(), d, p)) return false;
        s = factor_shape_mod_p(f, p);
        return true;
    };
    FactorShape s;
    if (!shape_at(cert.transposition_prime, s) || !transposition_shape(s)) return false;
    if (!is_prime_small(n)) {
        if (!shape_at(cert.long_cycle_prime, s) || !shape_is(s, {1, n - 1})) return false;
    }
    Mask possible = proper_degrees(n);
    for (auto p : cert.transitivity_primes) {
        if (!shape_at(p, s)) return false;
        possible &= subset_sums(s.degrees());
    }
    return possible == 0;
}

std::string to_string(SnStatus s) {
    switch (s) {
        case SnStatus::Certified: return "certified";
        case SnStatus::NotSymmetric: return "not-symmetric";
        case SnStatus::Undecided: return "undecided";
    }
    return "?";
}

std::string to_string(SmallGroup g) {
    switch (g) {
        case SmallGroup::Reducible: return "reducible";
        case SmallGroup::S2: return "S2";
        case SmallGroup::C3: return "C3";
        case SmallGroup::S3: return "S3";
        case SmallGroup::C4: return "C4";
        case SmallGroup::V4: return "V4";
        case SmallGroup::D4: return "D4";
        case SmallGroup::A4: return "A4";
        case SmallGroup::S4: return "S4";
    }
    return "?";
}

namespace {

// c^{n-1} f(y / c): monic with the same splitting field.
IntPoly monicize(const IntPoly& f) {
    const int n = f.degree();
    Int c = f.lead();
    std::vector<Int> g(n + 1);
    for (int i = 0; i < n; ++i) g[i] = f.coeff(i) * ipow(c, static_cast<unsigned long>(n - 1 - i));
    g[n] = 1;
    return IntPoly(g);
}

std::vector<Int> integer_roots(const IntPoly& g) {
    std::vector<Int> out;
    int low = 0;
    while (g.coeff(low) == 0) ++low;
    if (low > 0) out.push_back(0);
    for (const Int& d : divisors(g.coeff(low))) {
        if (g.eval(d) == 0) out.push_back(d);
        if (g.eval(Int(-d)) == 0) out.push_back(-d);
    }
    return out;
}

// Monic x^4 + a x^3 + b x^2 + c x + d = (x^2 + p x + q)(x^2 + r x + s) over Z.
bool has_quadratic_factor(const IntPoly& g) {
    Int a = g.coeff(3), b = g.coeff(2), c = g.coeff(1), d = g.coeff(0);
    for (const Int& q0 : divisors(d)) {
        for (int sg : {1, -1}) {
            Int q = q0 * sg, s = d / q;
            if (s != q) {
                Int num = c - q * a, den = s - q;
                if (num % den != 0) continue;
                Int p = num / den, r = a - p;
                if (p * r == b - q - s) return true;
            } else {
                if (c != q * a) continue;
                // p + r = a, p r = b - 2q.
                Int disc = a * a - 4 * (b - 2 * q);
                if (is_perfect_square(disc)) return true;
            }
        }
    }
    return false;
}

bool square_in_quadratic(const Int& v, const Int& delta) {
    return v == 0 || is_perfect_square(v) || is_perfect_square(Int(v * delta));
}

}  // namespace

SmallGroup brute_galois_small(const IntPoly& f) {
    const int n = f.degree();
    if (n < 2 || n > 4) throw std::invalid_argument("brute_galois_small handles degrees 2..4");
    IntPoly g = monicize(f);
    Int delta = discriminant(g);
    if (delta == 0) throw std::invalid_argument("brute_galois_small needs a squarefree polynomial");
    if (!integer_roots(g).empty()) return SmallGroup::Reducible;
    if (n == 2) return SmallGroup::S2;
    if (n == 3) return is_perfect_square(delta) ? SmallGroup::C3 : SmallGroup::S3;
    if (has_quadratic_factor(g)) return SmallGroup::Reducible;
    Int a = g.coeff(3), b = g.coeff(2), c = g.coeff(1), d = g.coeff(0);
    IntPoly resolvent({-(a * a * d - 4 * b * d + c * c), a * c - 4 * d, -b, Int(1)});
    std::vector<Int> roots = integer_roots(resolvent);
    if (roots.empty()) return is_perfect_square(delta) ? SmallGroup::A4 : SmallGroup::S4;
    if (roots.size() >= 2) return SmallGroup::V4;
    const Int& r = roots[0];
    bool c4 = square_in_quadratic(Int(r * r - 4 * d), delta) && square_in_quadratic(Int(a * a - 4 * (b - r)), delta);
    return c4 ? SmallGroup::C4 : SmallGroup::D4;
}

}  // namespace abcforge

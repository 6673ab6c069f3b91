#include "abcforge/field_disc.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "abcforge/poly_mod_p.hpp"

namespace abcforge {

namespace {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
Int pollard_brent(const Int& n, std::uint64_t budget) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    std::uint64_t used = 0;
    for (unsigned long c = 1; c < 20 && used < budget; ++c) {
        Int y = 2, x, ys, q = 1, g = 1, t;
        std::uint64_t r = 1;
        const std::uint64_t m = 128;
        while (g == 1 && used < budget) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) {
                y = (y * y + c) % n;
            }
            used += r;
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min(m, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    t = abs(x - y);
                    q = (q * t) % n;
                }
                used += lim;
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = (ys * ys + c) % n;
                t = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
    }
    return 0;
}

}  // namespace

Factorization factor_integer(const Int& n_in, const FactorBudget& budget) {
    if (sgn(n_in) == 0) throw std::invalid_argument("factor_integer(0)");
    Int n = abs(n_in);
    std::map<Int, unsigned> found;
    for (std::uint32_t p : small_primes(budget.trial_bound)) {
        if (n == 1) break;
        if (Int(p) * p > n) break;
        if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            ++e;
        }
        found[Int(p)] += e;
    }

    Factorization out;
    std::vector<std::pair<Int, unsigned>> work;
    if (n != 1) work.emplace_back(n, 1);
    const Int trial_cube = Int(budget.trial_bound) * budget.trial_bound * budget.trial_bound;
    std::uint64_t rho_left = budget.rho_iterations;
    while (!work.empty()) {
        auto [c, mult] = work.back();
        work.pop_back();
        if (c == 1) continue;
        if (c < Int(budget.trial_bound) * budget.trial_bound || is_probable_prime(c)) {
            // Every factor is >= trial_bound, so c below trial_bound^2 is prime.
            found[c] += mult;
            continue;
        }
        bool split = false;
        for (unsigned long k = 2; Int(1) << k <= c && !split; ++k) {
            if (auto r = exact_root(c, k)) {
                work.emplace_back(*r, mult * unsigned(k));
                split = true;
            }
        }
        if (split) continue;
        Int d = pollard_brent(c, rho_left);
        rho_left = rho_left > 1000 ? rho_left / 2 : 0;
        if (d != 0) {
            work.emplace_back(d, mult);
            work.emplace_back(c / d, mult);
            continue;
        }
        out.unfactored.push_back(c);
        // Composite, not a perfect power, and every prime factor >= trial_bound.
        if (mult > 1 || c >= trial_cube) out.unfactored_squarefree = false;
    }
    for (auto& [p, e] : found) {
        out.primes.emplace_back(p, e);
        // A leftover sharing a prime with an identified factor hides a square.
        for (const Int& u : out.unfactored)
            if (mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t())) out.unfactored_squarefree = false;
    }
    return out;
}

DedekindResult dedekind_test(const IntPoly& f, const Int& p_big) {
    if (!f.is_monic()) throw std::invalid_argument("dedekind_test needs a monic polynomial");
    if (bit_length(p_big) > 62) throw std::out_of_range("prime too large for word-size arithmetic");
    const std::uint64_t p = p_big.get_ui();
    PolyP fp = modp::from_int_poly(f, p);
    PolyP g{1};
    for (auto& [part, mult] : modp::squarefree_decomposition(fp, p)) g = modp::mul(g, part, p);
    PolyP h = modp::divrem(fp, g, p).first;
    IntPoly gl = modp::lift(g), hl = modp::lift(h);
    IntPoly big_f = (gl * hl - f).divided_exactly(p_big);
    PolyP z = modp::gcd(modp::from_int_poly(big_f, p), modp::gcd(g, h, p), p);
    DedekindResult r;
    r.index_exponent = modp::degree(z);
    r.maximal = r.index_exponent == 0;
    return r;
}

bool dedekind_p_maximal(const IntPoly& f, const Int& p) {
    if (!f.is_monic()) throw std::invalid_argument("dedekind_p_maximal needs a monic polynomial");
    Int d = discriminant(f);
    Int p2 = p * p;
    if (!mpz_divisible_p(d.get_mpz_t(), p2.get_mpz_t())) return true;
    return dedekind_test(f, p).maximal;
}

FieldDiscriminant field_discriminant(const IntPoly& f, const FactorBudget& budget) {
    if (!f.is_monic()) throw std::invalid_argument("field_discriminant needs a monic polynomial");
    FieldDiscriminant out;
    out.poly_disc = discriminant(f);
    if (sgn(out.poly_disc) == 0) throw std::invalid_argument("field_discriminant of an inseparable polynomial");
    Factorization fac = factor_integer(out.poly_disc, budget);
    if (!fac.complete() && !fac.unfactored_squarefree) {
        out.skipped = true;
        out.skip_reason = "factor-budget";
        return out;
    }
    Int index = 1;
    for (auto& [p, e] : fac.primes) {
        if (e < 2) continue;
        if (bit_length(p) > 62) {
            out.skipped = true;
            out.skip_reason = "large-prime";
            return out;
        }
        DedekindResult dr = dedekind_test(f, p);
        if (dr.maximal) continue;
        // One enlargement multiplies the index by p^k; it is maximal when the
        // remaining p-adic valuation of the discriminant is at most 1.
        if (int(e) - 2 * dr.index_exponent > 1) {
            out.skipped = true;
            out.skip_reason = "dedekind";
            return out;
        }
        index *= ipow(p, static_cast<unsigned long>(dr.index_exponent));
    }
    out.index = index;
    out.value = out.poly_disc / (index * index);
    return out;
}

}  // namespace abcforge

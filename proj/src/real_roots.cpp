#include "abcforge/real_roots.hpp"

#include <algorithm>
#include <stdexcept>

#include <mpfr.h>

namespace abcforge {

SturmSequence::SturmSequence(const IntPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("Sturm sequence needs degree >= 1");
    seq_.push_back(f);
    seq_.push_back(f.derivative());
    while (seq_.back().degree() > 0) {
        const IntPoly& a = seq_[seq_.size() - 2];
        const IntPoly& b = seq_.back();
        // prem multiplies by lead(b)^(delta+1); undo the sign of that factor
        // so that the sequence stays a positive multiple of the Sturm chain.
        IntPoly r = pseudo_remainder(a, b);
        int k = a.degree() - b.degree() + 1;
        bool flip = sgn(b.lead()) < 0 && k % 2 == 1;
        if (!flip) r = -r;
        if (r.is_zero()) break;
        Int c = r.content();
        seq_.push_back(r.divided_exactly(c));
    }
}

int SturmSequence::variations_at(const Rat& x) const {
    int v = 0, prev = 0;
    for (const auto& p : seq_) {
        int s = p.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

int SturmSequence::variations_at_infinity(int sign) const {
    int v = 0, prev = 0;
    for (const auto& p : seq_) {
        int s = sgn(p.lead());
        if (sign < 0 && p.degree() % 2 == 1) s = -s;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

int SturmSequence::count(const Rat& lo, const Rat& hi) const { return variations_at(lo) - variations_at(hi); }

int SturmSequence::count_all() const { return variations_at_infinity(-1) - variations_at_infinity(1); }

namespace {

Rat cauchy_bound_pow2(const IntPoly& f) {
    Int lead = abs(f.lead());
    Int maxc = 0;
    for (int i = 0; i < f.degree(); ++i) maxc = std::max(maxc, Int(abs(f.coeff(i))));
    // 1 + max|c_i| / |lead| < 2^k
    Rat bound = Rat(1) + Rat(maxc, lead);
    Rat b = 1;
    while (b <= bound) b *= 2;
    return b;
}

Rat split_point(const IntPoly& f, const Rat& lo, const Rat& hi) {
    Rat mid = (lo + hi) / 2;
    if (f.sign_at(mid) != 0) return mid;
    Rat step = (hi - lo) / 8;
    for (;;) {
        Rat cand = mid + step;
        if (f.sign_at(cand) != 0) return cand;
        step /= 2;
    }
}

}  // namespace

bool brackets_root(const IntPoly& f, const RootBox& box) {
    return box.lo < box.hi && f.sign_at(box.lo) * f.sign_at(box.hi) < 0;
}

std::vector<RootBox> isolate_real_roots(const IntPoly& f) {
    if (f.degree() < 1) throw std::invalid_argument("isolate_real_roots needs degree >= 1");
    if (!is_squarefree(f)) throw std::invalid_argument("isolate_real_roots needs a squarefree polynomial");
    SturmSequence sturm(f);
    Rat b = cauchy_bound_pow2(f);
    std::vector<RootBox> out;
    struct Piece {
        Rat lo, hi;
        int n;
    };
    std::vector<Piece> stack{{-b, b, sturm.count(-b, b)}};
    while (!stack.empty()) {
        Piece pc = stack.back();
        stack.pop_back();
        if (pc.n == 0) continue;
        if (pc.n == 1) {
            out.push_back({pc.lo, pc.hi, -1});
            continue;
        }
        Rat m = split_point(f, pc.lo, pc.hi);
        int left = sturm.count(pc.lo, m);
        stack.push_back({m, pc.hi, pc.n - left});
        stack.push_back({pc.lo, m, left});
    }
    std::sort(out.begin(), out.end(), [](const RootBox& a, const RootBox& c) { return a.lo < c.lo; });
    return out;
}

namespace {

// One Newton run at the given precision starting from x0; returns false on breakdown.
bool newton_estimate(const IntPoly& f, const Rat& x0, mpfr_prec_t prec, Rat& out) {
    IntPoly df = f.derivative();
    mpfr_t x, fx, dfx, t;
    mpfr_inits2(prec, x, fx, dfx, t, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_q(x, x0.get_mpq_t(), MPFR_RNDN);
    bool ok = true;
    auto horner = [&](const IntPoly& p, mpfr_t res) {
        mpfr_set_zero(res, 1);
        for (int i = p.degree(); i >= 0; --i) {
            mpfr_mul(res, res, x, MPFR_RNDN);
            mpfr_add_z(res, res, p.coeff(i).get_mpz_t(), MPFR_RNDN);
        }
    };
    int iters = 8;
    for (mpfr_prec_t p = 64; p < prec; p *= 2) ++iters;
    for (int it = 0; it < iters && ok; ++it) {
        horner(f, fx);
        horner(df, dfx);
        if (mpfr_zero_p(dfx) || !mpfr_number_p(fx)) {
            ok = false;
            break;
        }
        mpfr_div(t, fx, dfx, MPFR_RNDN);
        mpfr_sub(x, x, t, MPFR_RNDN);
    }
    if (ok && mpfr_number_p(x)) mpfr_get_q(out.get_mpq_t(), x);
    else ok = false;
    mpfr_clears(x, fx, dfx, t, static_cast<mpfr_ptr>(nullptr));
    return ok;
}

}  // namespace

RootBox refine_root(const IntPoly& f, const RootBox& box, const Rat& eps) {
    if (sgn(eps) <= 0) throw std::invalid_argument("refine_root: eps must be positive");
    RootBox b = box;
    if (b.width() <= eps) return b;
    if (!brackets_root(f, b)) throw std::invalid_argument("refine_root: box does not bracket a simple root");
    int s_lo = f.sign_at(b.lo);

    // log2(1/eps) bounds the precision needed for the Newton guess.
    long bits = long(mpz_sizeinbase(eps.get_den().get_mpz_t(), 2)) -
                long(mpz_sizeinbase(eps.get_num().get_mpz_t(), 2)) + 2;
    mpfr_prec_t prec = std::max<mpfr_prec_t>(64, bits + 64);
    int bisections_since_newton = 0;
    while (b.width() > eps) {
        if (bisections_since_newton >= 4) {
            bisections_since_newton = 0;
            Rat guess;
            if (newton_estimate(f, b.midpoint(), prec, guess)) {
                Rat w = eps / 4;
                RootBox cand{guess - w, guess + w, b.label};
                if (b.lo <= cand.lo && cand.hi <= b.hi && brackets_root(f, cand)) {
                    b = cand;
                    break;
                }
            }
        }
        Rat m = b.midpoint();
        int s = f.sign_at(m);
        if (s == 0) {
            Rat w = std::min(eps / 4, b.width() / 4);
            b = RootBox{m - w, m + w, b.label};
            break;
        }
        if (s == s_lo) b.lo = m;
        else b.hi = m;
        ++bisections_since_newton;
    }
    return b;
}

RootBox refine_root_bits(const IntPoly& f, const RootBox& box, long bits) {
    Rat eps(Int(1), Int(1) << static_cast<mp_bitcnt_t>(std::max(0L, bits)));
    return refine_root(f, box, eps);
}

}  // namespace abcforge

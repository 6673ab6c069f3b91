#include "abcforge/units_kummer.hpp"

#include <functional>
#include <stdexcept>

namespace abcforge {

std::vector<unsigned> prime_divisors(unsigned v) {
    std::vector<unsigned> out;
    for (unsigned p = 2; p * p <= v; ++p) {
        if (v % p) continue;
        out.push_back(p);
        while (v % p == 0) v /= p;
    }
    if (v > 1) out.push_back(v);
    return out;
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::Undecided: return "undecided";
    }
    return "?";
}

std::string to_string(PowerScreen s) {
    switch (s) {
        case PowerScreen::None: return "none";
        case PowerScreen::Norm: return "norm";
        case PowerScreen::Sign: return "sign";
        case PowerScreen::Reconstruction: return "reconstruction";
        case PowerScreen::Precision: return "precision";
    }
    return "?";
}

Interval interval_det(const std::vector<std::vector<Interval>>& m) {
    const std::size_t k = m.size();
    if (k == 0) return Interval::point(Int(1), 64);
    mpfr_prec_t prec = m[0][0].precision();
    if (k == 1) return m[0][0];
    if (k == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Interval acc = Interval::point(Int(0), prec);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::vector<Interval>> minor;
        for (std::size_t r = 1; r < k; ++r) {
            std::vector<Interval> row;
            for (std::size_t c = 0; c < k; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Interval term = m[0][j] * interval_det(minor);
        acc = j % 2 ? acc - term : acc + term;
    }
    return acc;
}

UnitSystem abc_unit_system(KummerContext& ctx, const std::vector<Int>& a) {
    const std::size_t r = a.size();
    if (ctx.emb.roots.size() != r + 1) throw std::invalid_argument("abc_unit_system: embedding count mismatch");
    UnitSystem us;
    for (long bits = std::max(ctx.emb.precision_bits, 64L);; bits *= 2) {
        if (bits > ctx.emb.precision_bits) refine_embeddings(ctx.K.poly(), ctx.emb, bits);
        const mpfr_prec_t prec = bits + 64;
        us.log_matrix.assign(r, {});
        bool ok = true;
        for (std::size_t i = 0; i < r && ok; ++i) {
            Interval root = ctx.emb.root_interval(i, prec);
            for (std::size_t j = 0; j < r; ++j) {
                Interval v = (root - Interval::point(a[j], prec)).abs();
                if (v.sign() <= 0) {
                    ok = false;
                    break;
                }
                us.log_matrix[i].push_back(v.log());
            }
        }
        if (ok) {
            Interval det = interval_det(us.log_matrix);
            us.regulator = det.abs();
            us.nonzero = det.sign() != 0;
            us.precision_bits = bits;
            if (us.nonzero) return us;
        }
        if (bits * 2 > ctx.max_bits) {
            us.precision_bits = bits;
            return us;
        }
    }
}

namespace {

bool is_rational_pth_power(const Rat& v, unsigned p) {
    if (v == 0) return true;
    if (p % 2 == 0 && v < 0) return false;
    return exact_root(v.get_num(), p).has_value() && exact_root(v.get_den(), p).has_value();
}

}  // namespace

PowerResult is_pth_power(KummerContext& ctx, const NfElem& beta, unsigned p) {
    if (beta.is_zero()) throw std::invalid_argument("is_pth_power: beta must be nonzero");
    if (p < 2) throw std::invalid_argument("is_pth_power: p must be at least 2");
    PowerResult res;
    const NumberField& K = ctx.K;
    const int n = K.degree();
    if (!is_rational_pth_power(K.norm(beta), p)) {
        res.status = PowerStatus::NotPower;
        res.screen = PowerScreen::Norm;
        return res;
    }
    if (int(ctx.emb.roots.size()) != n) throw std::invalid_argument("is_pth_power needs all n real embeddings");
    const bool even = p % 2 == 0;
    const Rat D(ctx.denom_bound);
    const IntPoly& f = K.poly();
    const IntPoly df = f.derivative();

    for (long bits = std::max(ctx.emb.precision_bits, 64L);; bits *= 2) {
        if (bits > ctx.max_bits) {
            res.status = PowerStatus::Undecided;
            res.screen = PowerScreen::Precision;
            return res;
        }
        if (bits > ctx.emb.precision_bits) refine_embeddings(f, ctx.emb, bits);
        const mpfr_prec_t prec = bits + 64;
        std::vector<Interval> delta;
        bool precise = true;
        for (int i = 0; i < n; ++i) {
            Interval b = K.embed(beta, ctx.emb.root_interval(i, prec));
            int sg = b.sign();
            if (even && sg < 0) {
                res.status = PowerStatus::NotPower;
                res.screen = PowerScreen::Sign;
                return res;
            }
            if (sg == 0) {
                precise = false;
                break;
            }
            delta.push_back(sg > 0 ? b.root(p) : -((-b).root(p)));
        }
        if (!precise) continue;

        // Lagrange interpolation weights: coordinate k of delta is
        // sum_i delta_i q_{i,k} / f'(r_i), where f(x) / (x - r_i) = sum_k q_{i,k} x^k.
        std::vector<std::vector<Interval>> w(n);
        for (int i = 0; i < n; ++i) {
            Interval r = ctx.emb.root_interval(i, prec);
            Interval fp = Interval::point(df.coeff(n - 1), prec);
            for (int k = n - 2; k >= 0; --k) fp = fp * r + Interval::point(df.coeff(k), prec);
            if (fp.sign() == 0) {
                precise = false;
                break;
            }
            Interval inv = Interval::point(Int(1), prec) / fp;
            std::vector<Interval> q(n, Interval(prec));
            q[n - 1] = Interval::point(Int(1), prec);
            for (int k = n - 1; k >= 1; --k) q[k - 1] = Interval::point(f.coeff(k), prec) + r * q[k];
            for (int k = 0; k < n; ++k) w[i].push_back(q[k] * inv);
        }
        if (!precise) continue;

        bool undecided = false;
        const unsigned patterns = even ? 1u << (n - 1) : 1u;
        for (unsigned pat = 0; pat < patterns; ++pat) {
            NfElem cand = K.zero();
            bool rejected = false, wide = false;
            for (int k = 0; k < n && !rejected; ++k) {
                Interval c(prec);
                for (int i = 0; i < n; ++i) {
                    bool negate = i > 0 && (pat >> (i - 1)) & 1;
                    Interval t = delta[i] * w[i][k];
                    c = negate ? c - t : c + t;
                }
                c = c * Interval::point(D, prec);
                std::vector<Int> ints;
                if (!c.integers_inside(ints, 1)) {
                    wide = true;
                    break;
                }
                if (ints.empty()) rejected = true;
                else cand.c[k] = Rat(ints[0]) / D;
            }
            if (rejected) continue;
            if (wide) {
                undecided = true;
                continue;
            }
            ++res.reconstructions;
            if (K.pow(cand, p) == beta) {
                res.status = PowerStatus::Power;
                res.root = cand;
                return res;
            }
        }
        if (!undecided) {
            res.status = PowerStatus::NotPower;
            res.screen = PowerScreen::Reconstruction;
            return res;
        }
    }
}

namespace {

// Calls visit(e, s) for every e in {0..p-1}^r and s in {+1, -1}, in a fixed
// order. For odd p only s = +1 is visited: -1 is itself a p-th power.
bool for_each_representative(std::size_t r, unsigned p, bool skip_identity,
                             const std::function<bool(const std::vector<unsigned>&, int)>& visit) {
    std::vector<unsigned> e(r, 0);
    for (;;) {
        bool identity = true;
        for (unsigned v : e) identity = identity && v == 0;
        for (int s : {1, -1}) {
            if (s == -1 && p % 2 == 1) continue;
            if (skip_identity && identity && s == 1) continue;
            if (!visit(e, s)) return false;
        }
        std::size_t i = 0;
        while (i < r && ++e[i] == p) e[i++] = 0;
        if (i == r) return true;
    }
}

NfElem unit_product(const NumberField& K, const std::vector<NfElem>& units, const std::vector<unsigned>& e, int s) {
    NfElem v = K.from_int(s);
    for (std::size_t j = 0; j < units.size(); ++j)
        if (e[j]) v = K.mul(v, K.pow(units[j], e[j]));
    return v;
}

}  // namespace

SaturationResult saturation_check(KummerContext& ctx, const std::vector<NfElem>& units, unsigned p) {
    SaturationResult res;
    bool undecided = false;
    bool complete = for_each_representative(units.size(), p, true, [&](const std::vector<unsigned>& e, int s) {
        ++res.tests;
        PowerResult pr = is_pth_power(ctx, unit_product(ctx.K, units, e, s), p);
        if (pr.status == PowerStatus::Power) {
            res.witness = KummerWitness{p, e, s, *pr.root};
            return false;
        }
        if (pr.status == PowerStatus::Undecided) undecided = true;
        return true;
    });
    if (!complete) res.status = Outcome::Fail;
    else res.status = undecided ? Outcome::Undecided : Outcome::Pass;
    return res;
}

std::vector<NfElem> refine_units(const NumberField& K, const std::vector<NfElem>& units, const KummerWitness& w) {
    const unsigned p = w.p;
    std::size_t j = 0;
    while (j < w.e.size() && w.e[j] % p == 0) ++j;
    if (j == w.e.size()) throw std::invalid_argument("refine_units: witness has no unit exponent");
    unsigned x = 1;
    while ((x * w.e[j]) % p != 1) ++x;
    // root^{xp} = s^x prod u_i^{x e_i}; divide out the full p-th powers so the
    // exponent of u_j becomes exactly 1.
    NfElem v = K.pow(w.root, x);
    for (std::size_t i = 0; i < units.size(); ++i) {
        unsigned q = (x * w.e[i]) / p;
        if (q) v = K.mul(v, K.pow(K.inverse(units[i]), q));
    }
    std::vector<NfElem> out = units;
    out[j] = v;
    return out;
}

Cond4Result condition4_check(KummerContext& ctx, const NfElem& xi, std::vector<NfElem> units, unsigned ell,
                             int max_refinements) {
    Cond4Result res;
    res.primes = prime_divisors(ell);
    for (unsigned p : res.primes) {
        for (;;) {
            SaturationResult sat = saturation_check(ctx, units, p);
            res.tests += sat.tests;
            if (sat.status == Outcome::Pass) break;
            if (sat.status == Outcome::Undecided) {
                res.status = Outcome::Undecided;
                res.detail = "saturation undecided at p=" + std::to_string(p);
                res.units = units;
                return res;
            }
            if (++res.refinements > max_refinements) {
                res.status = Outcome::Undecided;
                res.detail = "too many unit refinements at p=" + std::to_string(p);
                res.units = units;
                return res;
            }
            units = refine_units(ctx.K, units, *sat.witness);
        }
    }
    res.units = units;
    bool undecided = false;
    for (unsigned p : res.primes) {
        bool complete = for_each_representative(units.size(), p, false, [&](const std::vector<unsigned>& e, int s) {
            ++res.tests;
            PowerResult pr = is_pth_power(ctx, ctx.K.mul(xi, unit_product(ctx.K, units, e, s)), p);
            res.reconstructions += pr.reconstructions;
            if (pr.status == PowerStatus::Power) {
                res.witness = KummerWitness{p, e, s, *pr.root};
                return false;
            }
            if (pr.screen == PowerScreen::Norm) ++res.norm_screens;
            if (pr.screen == PowerScreen::Sign) ++res.sign_screens;
            if (pr.status == PowerStatus::Undecided) undecided = true;
            return true;
        });
        if (!complete) {
            res.status = Outcome::Fail;
            res.detail = "xi times a unit is a " + std::to_string(p) + "-th power";
            return res;
        }
    }
    res.status = undecided ? Outcome::Undecided : Outcome::Pass;
    if (undecided) res.detail = "power test ran out of precision";
    return res;
}

}  // namespace abcforge

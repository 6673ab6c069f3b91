#include "abcforge/class_order.hpp"

#include <stdexcept>

namespace abcforge {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Suitable: return "SUITABLE";
        case Verdict::Unsuitable: return "UNSUITABLE";
        case Verdict::Skipped: return "SKIPPED";
    }
    return "?";
}

std::string to_string(CondStatus s) {
    switch (s) {
        case CondStatus::NotRun: return "not-run";
        case CondStatus::Pass: return "pass";
        case CondStatus::Fail: return "fail";
        case CondStatus::Skipped: return "skipped";
    }
    return "?";
}

std::string to_string(OracleCheck o) {
    switch (o) {
        case OracleCheck::Absent: return "absent";
        case OracleCheck::Unverified: return "unverified";
        case OracleCheck::Verified: return "verified";
    }
    return "?";
}

IdentityCheck verify_ideal_identity(const AbcParams& params, const Int& tau, const IntPoly& f) {
    IdentityCheck out;
    NumberField K(f);
    const int n = params.n;
    IntPoly g = g_poly(params);
    NfElem xi = K.xi_minus(0);
    NfElem lhs = K.mul(xi, K.from_poly(g));
    NfElem rhs = K.from_int(ipow(tau, params.ell));
    for (const Int& aj : params.a) rhs = K.mul(rhs, K.xi_minus(aj));
    if (n % 2 == 0) rhs = K.neg(rhs);
    out.element_identity = lhs == rhs;

    Int g0 = g.coeff(0), gc;
    mpz_gcd(gc.get_mpz_t(), g0.get_mpz_t(), tau.get_mpz_t());
    out.coprime = gc == 1;

    out.norm_xi = abs(resultant(f, IntPoly{0, 1}));
    out.norm_g = abs(resultant(f, g));
    Int t = abs(tau);
    out.norms_ok = out.norm_xi == ipow(t, params.ell) &&
                   out.norm_g == ipow(t, static_cast<unsigned long>(n - 1) * params.ell);
    if (!out.ok())
        throw std::logic_error("ideal identity check failed at tau = " + to_string(tau) + " for a = (" +
                               params.a_csv() + ")");
    return out;
}

Int ideal_norm_tau_xi(const IntPoly& f, const Int& tau) {
    const int n = f.degree();
    NumberField K(f);
    HnfLattice lat{std::size_t(n)};
    for (int i = 0; i < n; ++i) {
        IntVec v(n, Int(0));
        v[i] = tau;
        lat.add(v);
    }
    for (int i = 1; i <= n; ++i) {
        NfElem e = K.from_poly(IntPoly::monomial(1, i));
        IntVec v(n);
        for (int j = 0; j < n; ++j) v[j] = e.c[j].get_num();
        lat.add(v);
    }
    return lat.determinant();
}

bool cond3_holds(const Int& disc_K, const Int& tau, int n) {
    return ipow(abs(disc_K), static_cast<unsigned long>(n + 2)) > tau * tau;
}

namespace {

struct Settler {
    SuitabilityRecord& rec;
    bool settled = false;

    void settle(Verdict v, std::string reason) {
        if (settled) return;
        settled = true;
        rec.verdict = v;
        rec.reason = std::move(reason);
    }
};

}  // namespace

SuitabilityRecord check_suitable(const AbcParams& params, const Int& tau, const SuitabilityConfig& cfg) {
    params.validate();
    SuitabilityRecord rec;
    rec.params = params;
    rec.tau = tau;
    Settler st{rec};

    rec.cond1_modulus = cond1_modulus(params);
    mpz_gcd(rec.cond1_gcd.get_mpz_t(), tau.get_mpz_t(), rec.cond1_modulus.get_mpz_t());
    if (!satisfies_cond1(params, tau)) {
        rec.cond1 = CondStatus::Fail;
        st.settle(Verdict::Unsuitable, "cond1");
        return rec;
    }
    rec.cond1 = CondStatus::Pass;
    rec.a_tau = *a_of_tau(params, tau);
    for (const Int& aj : params.a)
        if (aj == rec.a_tau) {
            st.settle(Verdict::Skipped, "degenerate");
            return rec;
        }
    rec.f = build_f(params, tau);
    if (abs(rec.a_tau) < cfg.min_abs_a) {
        st.settle(Verdict::Skipped, "floor");
        return rec;
    }

    long bits = cfg.precision_bits > 0 ? cfg.precision_bits : default_precision_bits();
    rec.emb = compute_embeddings(params, rec.a_tau, rec.f, bits);
    if (!rec.emb->totally_real) {
        st.settle(Verdict::Skipped, "not-totally-real");
        return rec;
    }
    if (abs(rec.a_tau) >= cfg.layout_min_abs_a)
        rec.layout = verify_root_layout(params, rec.a_tau, rec.f, *rec.emb, cfg.layout_C, cfg.layout_min_abs_a);
    rec.identity = verify_ideal_identity(params, tau, rec.f);

    const int n = params.n;
    rec.disc = field_discriminant(rec.f, cfg.factor_budget);
    if (rec.disc->skipped) {
        rec.cond3 = CondStatus::Skipped;
        st.settle(Verdict::Skipped, "cond3:" + rec.disc->skip_reason);
    } else {
        bool big = cond3_holds(rec.disc->value, tau, n);
        rec.cond3 = big ? CondStatus::Pass : CondStatus::Fail;
        if (!big) st.settle(Verdict::Unsuitable, "cond3");
        Int gi;
        mpz_gcd(gi.get_mpz_t(), tau.get_mpz_t(), rec.disc->index.get_mpz_t());
        if (gi != 1) st.settle(Verdict::Skipped, "index");
    }
    if (st.settled && !cfg.exhaustive) return rec;

    rec.galois = certify_sn(rec.f, cfg.prime_budget);
    switch (rec.galois->status) {
        case SnStatus::Certified: rec.cond2 = CondStatus::Pass; break;
        case SnStatus::NotSymmetric:
            rec.cond2 = CondStatus::Fail;
            st.settle(Verdict::Unsuitable, "cond2");
            break;
        case SnStatus::Undecided:
            rec.cond2 = CondStatus::Skipped;
            st.settle(Verdict::Skipped, "cond2:undecided");
            break;
    }
    if (st.settled && !cfg.exhaustive) return rec;

    // D * O_K lies in Z[xi] for D = index; index^2 divides disc(f) otherwise.
    Int D = rec.disc->skipped ? abs(rec.disc->poly_disc) : rec.disc->index;
    KummerContext ctx(rec.f, *rec.emb, D);
    ctx.max_bits = cfg.max_bits;
    rec.units = abc_unit_system(ctx, params.a);
    if (!rec.units->nonzero) {
        rec.cond4 = CondStatus::Skipped;
        st.settle(Verdict::Skipped, "precision");
        return rec;
    }
    std::vector<NfElem> units;
    for (const Int& aj : params.a) units.push_back(ctx.K.xi_minus(aj));
    rec.kummer = condition4_check(ctx, ctx.K.xi_minus(0), units, params.ell);
    rec.emb = ctx.emb;
    switch (rec.kummer->status) {
        case Outcome::Pass: rec.cond4 = CondStatus::Pass; break;
        case Outcome::Fail:
            rec.cond4 = CondStatus::Fail;
            st.settle(Verdict::Unsuitable, "cond4");
            break;
        case Outcome::Undecided:
            rec.cond4 = CondStatus::Skipped;
            st.settle(Verdict::Skipped, "cond4:undecided");
            break;
    }
    st.settle(Verdict::Suitable, "");
    return rec;
}

ClassCertificate class_order_certificate(const SuitabilityRecord& rec, const OracleConfig& ocfg) {
    ClassCertificate cert;
    cert.tau = rec.tau;
    const unsigned ell = rec.params.ell;
    if (rec.verdict == Verdict::Suitable) {
        cert.lambda = ell;
        cert.certified = true;
    } else if (rec.cond4 == CondStatus::Fail && rec.kummer && rec.kummer->witness) {
        cert.witness = rec.kummer->witness;
        cert.lambda = ell / cert.witness->p;
    } else {
        throw std::invalid_argument("class_order_certificate needs a suitable record or a condition-4 witness");
    }
    cert.ideal_norm = ideal_norm_tau_xi(rec.f, rec.tau);
    if (cert.ideal_norm != abs(rec.tau)) throw std::logic_error("ideal (tau, xi) has norm " + to_string(cert.ideal_norm));

    if (!ocfg.enabled) return cert;
    cert.oracle = OracleCheck::Unverified;
    if (rec.params.n > 4) {
        cert.oracle_reason = "degree";
        return cert;
    }
    if (rec.disc && !rec.disc->skipped && abs(rec.disc->value) > ocfg.disc_bound) {
        cert.oracle_reason = "disc-bound";
        return cert;
    }
    ClassGroupConfig cg;
    cg.disc_bound = ocfg.disc_bound;
    cg.seed = ocfg.seed;
    std::vector<std::pair<std::uint64_t, unsigned>> tau_primes;
    if (abs(rec.tau) > 1) {
        for (auto& [p, e] : factor_integer(rec.tau).primes) {
            if (bit_length(p) > 62) {
                cert.oracle_reason = "large-tau";
                return cert;
            }
            tau_primes.emplace_back(p.get_ui(), e);
            cg.extra_primes.push_back(p.get_ui());
        }
    }
    ClassGroupResult cgr = class_group_small(rec.f, cg);
    if (!cgr.verified()) {
        cert.oracle_reason = cgr.reason;
        return cert;
    }
    IntVec exps(cgr.factor_base.size(), Int(0));
    for (auto& [p, e] : tau_primes) {
        long i = cgr.find(p, PolyP{0, 1});
        if (i < 0) throw std::logic_error("oracle factor base lacks (p, xi) for p | tau");
        exps[i] = e;
    }
    cert.oracle = OracleCheck::Verified;
    cert.oracle_structure = cgr.structure();
    cert.oracle_class_number = cgr.class_number;
    cert.oracle_order = class_order_of(cgr, exps);
    bool consistent = cert.certified ? cert.oracle_order == cert.lambda
                                     : mpz_divisible_ui_p(Int(cert.lambda).get_mpz_t(), cert.oracle_order.get_ui()) != 0;
    if (!consistent)
        throw std::logic_error("class order " + std::to_string(cert.lambda) + " contradicts the oracle order " +
                               to_string(cert.oracle_order) + " at tau = " + to_string(rec.tau));
    return cert;
}

}  // namespace abcforge

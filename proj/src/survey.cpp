#include "abcforge/survey.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "abcforge/embeddings.hpp"

namespace abcforge {

double ScanConfig::mu() const { return 1.0 / (2.0 * double(params.ell) * double(params.n - 1)); }

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = unsigned(std::max<std::size_t>(1, std::min<std::size_t>(jobs ? jobs : 1, count)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
                next = count;
                return;
            }
        }
    };
    if (workers == 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

namespace {

double log_abs(const Int& v) {
    long e;
    double m = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log(std::fabs(m)) + double(e) * std::log(2.0);
}

}  // namespace

Calibration calibrate_c1(const AbcParams& params, std::size_t samples) {
    params.validate();
    Calibration cal;
    const Int P = abs(params.product());
    const double mu = 1.0 / (2.0 * double(params.ell) * double(params.n - 1));
    double log_kappa = -1e300;
    for (long k = 1; cal.samples < samples && k < 100000; ++k) {
        Int tau = 1 + Int(k) * P;
        if (!satisfies_cond1(params, tau)) continue;
        Int a = *a_of_tau(params, tau);
        if (a == 0 || std::find(params.a.begin(), params.a.end(), a) != params.a.end()) continue;
        Int d = discriminant(family_poly(params, a));
        double lk = log_abs(d) - 2.0 * double(params.n - 1) * log_abs(a);
        log_kappa = std::max(log_kappa, lk);
        ++cal.samples;
    }
    if (cal.samples == 0) throw std::runtime_error("calibrate_c1: no admissible sample");
    cal.kappa = std::exp(log_kappa);
    cal.c1 = std::exp(log_abs(P) / double(params.ell) - mu * log_kappa);
    return cal;
}

Int scan_T(double X, double mu, double c1) {
    double t = std::floor(c1 * std::pow(X, mu));
    if (!(t >= 2)) return 2;
    Int T;
    mpz_set_d(T.get_mpz_t(), t);
    return T;
}

Verdict3 fields_isomorphic(const IntPoly& f, const Int& index_f, const IntPoly& g, long max_bits) {
    const int n = f.degree();
    if (g.degree() != n) return Verdict3::No;
    if (f == g) return Verdict3::Yes;
    EmbeddingData ef = compute_plain_embeddings(f, 64);
    EmbeddingData eg = compute_plain_embeddings(g, 64);
    if (ef.real_root_count != eg.real_root_count) return Verdict3::No;
    if (ef.real_root_count != n) return Verdict3::Undecided;
    NumberField K(f);
    std::vector<int> perm(n);
    for (long bits = 128; bits <= max_bits; bits *= 2) {
        refine_embeddings(f, ef, bits + 32);
        refine_embeddings(g, eg, bits + 32);
        const mpfr_prec_t prec = mpfr_prec_t(bits + 64);
        std::vector<Interval> xs, ys;
        for (int j = 0; j < n; ++j) {
            xs.push_back(ef.root_interval(j, prec));
            ys.push_back(eg.root_interval(j, prec));
        }
        // Lagrange basis: lag[j][i] is the coefficient of x^i in L_j.
        std::vector<std::vector<Interval>> lag(n);
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            std::vector<Interval> poly{Interval::point(Int(1), prec)};
            Interval den = Interval::point(Int(1), prec);
            for (int k = 0; k < n; ++k) {
                if (k == j) continue;
                std::vector<Interval> next(poly.size() + 1, Interval::point(Int(0), prec));
                for (std::size_t i = 0; i < poly.size(); ++i) {
                    next[i + 1] = next[i + 1] + poly[i];
                    next[i] = next[i] - poly[i] * xs[k];
                }
                poly = std::move(next);
                den = den * (xs[j] - xs[k]);
            }
            if (den.sign() == 0) {
                ok = false;
                break;
            }
            for (auto& c : poly) c = c / den;
            lag[j] = std::move(poly);
        }
        if (!ok) continue;
        const Interval D = Interval::point(index_f, prec);
        std::iota(perm.begin(), perm.end(), 0);
        bool pending = false;
        do {
            std::vector<Int> coords(n);
            bool refuted = false, open = false;
            for (int i = 0; i < n && !refuted; ++i) {
                Interval c = Interval::point(Int(0), prec);
                for (int j = 0; j < n; ++j) c = c + ys[perm[j]] * lag[j][i];
                c = c * D;
                if (c.width() >= 1) {
                    open = true;
                    continue;
                }
                std::vector<Int> ints;
                c.integers_inside(ints, 2);
                if (ints.empty()) refuted = true;
                else coords[i] = ints[0];
            }
            if (refuted) continue;
            if (open) {
                pending = true;
                continue;
            }
            NfElem beta = K.zero();
            for (int i = 0; i < n; ++i) beta.c[i] = Rat(coords[i], index_f);
            NfElem acc = K.zero();
            for (int k = g.degree(); k >= 0; --k) acc = K.add(K.mul(acc, beta), K.from_int(g.coeff(k)));
            if (acc.is_zero()) return Verdict3::Yes;
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (!pending) return Verdict3::No;
    }
    return Verdict3::Undecided;
}

DedupResult dedup_isomorphic(const std::vector<Certificate>& certs) {
    DedupResult out;
    out.class_of.assign(certs.size(), -1);
    struct Member {
        std::size_t cert;
        IntPoly f;
    };
    struct Class {
        long window;
        Int disc;
        Int index;
        IntPoly rep;
        std::vector<IntPoly> polys;  // distinct polynomials
    };
    std::vector<Class> classes;
    std::map<long, std::vector<std::size_t>> by_window;  // window -> class ids
    std::map<long, std::size_t> window_fields;
    for (std::size_t i = 0; i < certs.size(); ++i) {
        const Certificate& c = certs[i];
        if (c.verdict != "SUITABLE" || !c.disc_K) continue;
        long w = long(bit_length(abs(c.a_tau))) - 1;
        IntPoly f{std::vector<Int>(c.f_coeffs)};
        ++window_fields[w];
        long found = -1;
        for (std::size_t id : by_window[w]) {
            Class& k = classes[id];
            if (k.disc != *c.disc_K) continue;
            Verdict3 v = fields_isomorphic(k.rep, k.index, f);
            if (v == Verdict3::Yes) {
                found = long(id);
                break;
            }
            if (v == Verdict3::Undecided) ++out.undecided_pairs;
        }
        if (found < 0) {
            found = long(classes.size());
            classes.push_back(Class{w, *c.disc_K, c.index, f, {}});
            by_window[w].push_back(std::size_t(found));
        }
        Class& k = classes[std::size_t(found)];
        if (std::find(k.polys.begin(), k.polys.end(), f) == k.polys.end()) k.polys.push_back(f);
        out.class_of[i] = found;
        const std::size_t bound = std::size_t(c.n) * std::size_t(c.n - 1) * std::size_t(c.n - 2);
        if (c.n >= 3 && k.polys.size() > bound)
            throw std::logic_error("dyadic window " + std::to_string(w) + " holds " + std::to_string(k.polys.size()) +
                                   " isomorphic fields, above the bound " + std::to_string(bound));
    }
    out.classes = classes.size();
    for (auto& [w, ids] : by_window) {
        WindowStats ws;
        ws.window = w;
        ws.fields = window_fields[w];
        ws.classes = ids.size();
        for (std::size_t id : ids) ws.max_multiplicity = std::max(ws.max_multiplicity, classes[id].polys.size());
        out.max_multiplicity = std::max(out.max_multiplicity, ws.max_multiplicity);
        out.windows.push_back(ws);
    }
    return out;
}

CensusReport build_report(const std::vector<Certificate>& certs) {
    CensusReport r;
    if (!certs.empty()) {
        const Certificate& c0 = certs.front();
        r.n = c0.n;
        r.ell = c0.ell;
        r.a = c0.a;
        r.X = c0.scan_X;
        r.T = c0.scan_T;
        r.mu = 1.0 / (2.0 * double(r.ell) * double(r.n - 1));
        r.multiplicity_bound = std::size_t(r.n) * std::size_t(r.n - 1) * std::size_t(r.n - 2);
        r.log_density_target = 2.0 / (double(r.n - 1) * double(r.n + 2) * double(r.ell));
    }
    for (const Certificate& c : certs) {
        ++r.candidates;
        if (c.verdict == "SUITABLE") ++r.suitable;
        else if (c.verdict == "UNSUITABLE") ++r.unsuitable;
        else ++r.skipped;
        if (c.verdict != "SUITABLE") ++r.reasons[c.reason];
        if (!c.mirror) {
            if (c.cond2 == "fail") ++r.cond2_failures;
            if (c.cond4 == "fail") ++r.cond4_failures;
            if (c.cond3 == "fail") ++r.cond3_failures;
        }
        if (c.oracle == "verified") ++r.oracle_verified;
        if (c.oracle == "unverified") ++r.oracle_unverified;
        if (c.layout != "not-run") {
            ++r.layout_checked;
            if (c.layout != "pass") ++r.layout_failures;
        }
    }
    DedupResult d = dedup_isomorphic(certs);
    r.suitable_fields = d.classes;
    r.undecided_pairs = d.undecided_pairs;
    r.windows = d.windows;
    r.max_multiplicity = d.max_multiplicity;
    double T = r.T.get_d();
    r.exceptional_scale = T > 1 ? std::sqrt(T) * std::log(T) : 0;
    if (r.exceptional_scale > 0) r.exceptional_C = double(r.cond2_failures + r.cond4_failures) / r.exceptional_scale;
    double X = r.X.empty() ? 0 : std::strtod(r.X.c_str(), nullptr);
    if (r.suitable_fields > 0 && X > 1) r.log_density = std::log(double(r.suitable_fields)) / std::log(X);
    r.reconciled = r.suitable + r.unsuitable + r.skipped == r.candidates && r.suitable_fields <= r.suitable;
    return r;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string report_csv(const CensusReport& r) {
    std::ostringstream os;
    std::string a;
    for (std::size_t i = 0; i < r.a.size(); ++i) a += (i ? ";" : "") + to_string(r.a[i]);
    os << "section,key,value\n";
    os << "params,n," << r.n << "\n";
    os << "params,ell," << r.ell << "\n";
    os << "params,a," << a << "\n";
    os << "params,X," << r.X << "\n";
    os << "params,T," << r.T << "\n";
    os << "params,mu," << fmt(r.mu) << "\n";
    os << "counts,candidates," << r.candidates << "\n";
    os << "counts,suitable," << r.suitable << "\n";
    os << "counts,unsuitable," << r.unsuitable << "\n";
    os << "counts,skipped," << r.skipped << "\n";
    os << "counts,reconciled," << (r.reconciled ? "yes" : "no") << "\n";
    for (const auto& [reason, k] : r.reasons) os << "reasons," << reason << "," << k << "\n";
    os << "dedup,suitable_fields," << r.suitable_fields << "\n";
    os << "dedup,undecided_pairs," << r.undecided_pairs << "\n";
    os << "dedup,max_multiplicity," << r.max_multiplicity << "\n";
    os << "dedup,multiplicity_bound," << r.multiplicity_bound << "\n";
    for (const auto& w : r.windows)
        os << "window," << w.window << "," << w.fields << ";" << w.classes << ";" << w.max_multiplicity << "\n";
    os << "exceptional,cond2_failures," << r.cond2_failures << "\n";
    os << "exceptional,cond4_failures," << r.cond4_failures << "\n";
    os << "exceptional,cond3_failures," << r.cond3_failures << "\n";
    os << "exceptional,sqrtT_logT," << fmt(r.exceptional_scale) << "\n";
    os << "exceptional,C," << fmt(r.exceptional_C) << "\n";
    os << "density,log_density," << fmt(r.log_density) << "\n";
    os << "density,target," << fmt(r.log_density_target) << "\n";
    os << "oracle,verified," << r.oracle_verified << "\n";
    os << "oracle,unverified," << r.oracle_unverified << "\n";
    os << "layout,checked," << r.layout_checked << "\n";
    os << "layout,failures," << r.layout_failures << "\n";
    return os.str();
}

ScanResult scan(const ScanConfig& cfg, std::ostream* out, const std::vector<Certificate>* resume) {
    cfg.params.validate();
    ScanResult res;
    const std::string xs = format_double(cfg.X);
    if (cfg.T_override > 0) {
        res.T = cfg.T_override;
    } else {
        if (cfg.c1) {
            res.calibration.c1 = *cfg.c1;
        } else {
            res.calibration = calibrate_c1(cfg.params);
        }
        res.T = scan_T(cfg.X, cfg.mu(), res.calibration.c1);
    }

    std::vector<TauCandidate> cands;
    CandidateStream stream(cfg.params, res.T, 0, cfg.small_tau);
    while (auto c = stream.next()) cands.push_back(std::move(*c));

    std::size_t reused = 0;
    if (resume) {
        if (resume->size() > cands.size()) throw std::runtime_error("resume file has more records than the scan");
        for (const Certificate& c : *resume) {
            const TauCandidate& k = cands[reused];
            if (c.tau != k.tau || c.n != cfg.params.n || c.ell != cfg.params.ell || c.a != cfg.params.a ||
                c.scan_X != xs || c.scan_T != res.T)
                throw std::runtime_error("resume file does not match this scan at record " + std::to_string(reused + 1));
            ++reused;
        }
    }

    SuitabilityConfig scfg;
    scfg.prime_budget = cfg.prime_budget;
    scfg.factor_budget = cfg.factor_budget;
    scfg.precision_bits = cfg.precision_bits;
    scfg.min_abs_a = cfg.min_abs_a;
    OracleConfig ocfg;
    ocfg.enabled = cfg.oracle && cfg.params.n <= 4;
    ocfg.disc_bound = cfg.oracle_disc_bound;
    ocfg.seed = cfg.seed;

    std::vector<std::optional<Certificate>> slots(cands.size());
    for (std::size_t i = 0; i < reused; ++i) slots[i] = (*resume)[i];
    std::mutex flush_mu;
    std::size_t flushed = reused;
    parallel_for(cands.size() - reused, cfg.jobs, [&](std::size_t j) {
        const std::size_t i = reused + j;
        const TauCandidate& k = cands[i];
        SuitabilityRecord rec = check_suitable(cfg.params, k.tau, scfg);
        std::optional<ClassCertificate> cert;
        if (rec.verdict == Verdict::Suitable || (rec.cond4 == CondStatus::Fail && rec.kummer && rec.kummer->witness))
            cert = class_order_certificate(rec, ocfg);
        Certificate c = make_certificate(rec, cert, xs, res.T, k.mirror);
        std::lock_guard<std::mutex> lock(flush_mu);
        slots[i] = std::move(c);
        while (flushed < slots.size() && slots[flushed]) {
            if (out) *out << emit_certificate(*slots[flushed]) << '\n' << std::flush;
            ++flushed;
        }
    });
    for (auto& s : slots) res.certificates.push_back(std::move(*s));
    res.report = build_report(res.certificates);
    return res;
}

CensusTable exceptional_census(const AbcParams& params, const Int& T, const CensusConfig& cfg) {
    params.validate();
    if (T < 10) throw std::invalid_argument("exceptional_census needs T >= 10");
    CensusTable table;
    table.params = params;
    std::vector<TauCandidate> cands;
    CandidateStream stream(params, T, 0, true);
    while (auto c = stream.next())
        if (!c->mirror && !c->collision) cands.push_back(std::move(*c));

    SuitabilityConfig scfg;
    scfg.prime_budget = cfg.prime_budget;
    scfg.factor_budget = cfg.factor_budget;
    scfg.layout_min_abs_a = Int(1) << 62;  // layout is not part of the census
    scfg.exhaustive = true;
    struct Flags {
        CondStatus c2 = CondStatus::NotRun, c3 = CondStatus::NotRun, c4 = CondStatus::NotRun;
    };
    std::vector<Flags> flags(cands.size());
    parallel_for(cands.size(), cfg.jobs, [&](std::size_t i) {
        SuitabilityRecord rec = check_suitable(params, cands[i].tau, scfg);
        flags[i] = Flags{rec.cond2, rec.cond3, rec.cond4};
    });

    std::vector<Int> cuts;
    for (Int d = 10; d <= T; d *= 10) cuts.push_back(d);
    if (cuts.empty() || cuts.back() != T) cuts.push_back(T);
    for (const Int& cut : cuts) {
        CensusRow row;
        row.T = cut;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (abs(cands[i].tau) > cut) continue;
            ++row.candidates;
            const Flags& f = flags[i];
            if (f.c2 == CondStatus::Fail) ++row.cond2_fail;
            if (f.c2 == CondStatus::Skipped) ++row.cond2_undecided;
            if (f.c4 == CondStatus::Fail) ++row.cond4_fail;
            if (f.c4 == CondStatus::Skipped) ++row.cond4_undecided;
            if (f.c3 == CondStatus::Fail) ++row.cond3_fail;
            if (f.c2 == CondStatus::Fail || f.c4 == CondStatus::Fail) ++row.exceptional;
        }
        double t = cut.get_d();
        row.scale = std::sqrt(t) * std::log(t);
        row.C_T = double(row.exceptional) / row.scale;
        table.rows.push_back(row);
    }
    double lo = 0, hi = 0;
    bool any = false, zero = false;
    for (const CensusRow& row : table.rows) {
        if (row.T < 1000) continue;
        if (row.exceptional == 0) zero = true;
        if (!any) lo = hi = row.C_T;
        lo = std::min(lo, row.C_T);
        hi = std::max(hi, row.C_T);
        any = true;
    }
    table.C = hi;
    if (!any) {
        table.note = "no rows with T >= 1000";
    } else if (hi == 0) {
        table.stable = true;
        table.spread = 1;
        table.note = "no exceptional tau; the bound holds with any C >= 0";
    } else if (zero) {
        table.spread = HUGE_VAL;
        table.note = "some rows have no exceptional tau while others do";
    } else {
        table.spread = hi / lo;
        table.stable = table.spread <= 2;
    }
    return table;
}

std::string census_csv(const CensusTable& t) {
    std::ostringstream os;
    os << "T,candidates,cond2_fail,cond2_undecided,cond4_fail,cond4_undecided,cond3_fail,exceptional,sqrtT_logT,C_T\n";
    for (const CensusRow& r : t.rows)
        os << r.T << "," << r.candidates << "," << r.cond2_fail << "," << r.cond2_undecided << "," << r.cond4_fail << ","
           << r.cond4_undecided << "," << r.cond3_fail << "," << r.exceptional << "," << fmt(r.scale) << ","
           << fmt(r.C_T) << "\n";
    os << "# C=" << fmt(t.C) << " spread=" << fmt(t.spread) << " stable=" << (t.stable ? "yes" : "no");
    if (!t.note.empty()) os << " note=" << t.note;
    os << "\n";
    return os.str();
}

}  // namespace abcforge

#include "abcforge/class_group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "abcforge/field_disc.hpp"
#include "abcforge/kernels.hpp"
#include "abcforge/real_roots.hpp"

namespace abcforge {

std::string PrimeIdeal::str() const {
    std::ostringstream os;
    os << "(" << p << ", " << modp::lift(h).str() << ")";
    if (e > 1) os << "^e" << e;
    return os.str();
}

std::string ClassGroupResult::structure() const {
    if (invariants.empty()) return "C1";
    std::string s;
    for (std::size_t i = 0; i < invariants.size(); ++i) {
        if (i) s += " x ";
        s += "C" + to_string(invariants[i]);
    }
    return s;
}

long ClassGroupResult::find(std::uint64_t p, const PolyP& h) const {
    for (std::size_t i = 0; i < factor_base.size(); ++i)
        if (factor_base[i].p == p && factor_base[i].h == h) return long(i);
    return -1;
}

int valuation(const NumberField& K, const NfElem& alpha_in, const PrimeIdeal& P) {
    if (alpha_in.is_zero()) throw std::invalid_argument("valuation of zero");
    if (alpha_in.denominator() != 1) throw std::invalid_argument("valuation needs an algebraic integer");
    NfElem alpha = alpha_in;
    const Int p(static_cast<unsigned long>(P.p));
    int v = 0;
    for (;;) {
        NfElem t = K.mul(alpha, P.beta);
        bool divisible = true;
        for (const Rat& c : t.c)
            if (!mpz_divisible_p(c.get_num().get_mpz_t(), p.get_mpz_t())) {
                divisible = false;
                break;
            }
        if (!divisible) return v;
        alpha = K.scale(t, Rat(1, p));
        ++v;
    }
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class RelationSearch {
public:
    RelationSearch(const IntPoly& f, ClassGroupResult& res, const ClassGroupConfig& cfg)
        : f_(f), K_(f), res_(res), cfg_(cfg), k_(res.factor_base.size()) {
        margin_ = cfg.margin ? cfg.margin : 2 * k_ + 20;
        for (const auto& P : res.factor_base) primes_.insert(P.p);
    }

    bool done() const { return res_.lattice.full_rank() && stable_ >= margin_; }

    void offer(const IntVec& v) {
        ++res_.relations;
        if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) return;
        bool changed = res_.lattice.add(v);
        if (changed || !res_.lattice.full_rank()) stable_ = 0;
        else ++stable_;
    }

    void prime_relations() {
        for (std::uint64_t p : primes_) {
            IntVec v(k_, Int(0));
            for (std::size_t i = 0; i < k_; ++i)
                if (res_.factor_base[i].p == p) v[i] = res_.factor_base[i].e;
            offer(v);
        }
    }

    void sieve() {
        const int n = f_.degree();
        const std::size_t W = cfg_.sieve_width;
        const long a0 = -long(W / 2);
        std::vector<double> cb(n + 1);
        std::vector<float> logs(W);
        std::vector<std::uint32_t> picks(W);
        double pmax = 2;
        for (std::uint64_t p : primes_) pmax = std::max(pmax, double(p));
        const float thr = float(2 * std::log2(pmax) + 0.5);
        // Degree-one ideals with their roots.
        struct Root {
            std::uint64_t p, r;
            float logp;
        };
        std::vector<Root> roots;
        for (const auto& P : res_.factor_base)
            if (P.f == 1) roots.push_back({P.p, (P.p - P.h[0]) % P.p, float(std::log2(double(P.p)))});
        const auto& kern = kernels::active();
        for (std::size_t b = 1; b <= cfg_.sieve_lines && !done(); ++b) {
            double bp = 1;
            for (int k = n; k >= 0; --k) {
                cb[k] = f_.coeff(k).get_d() * bp;
                bp *= double(b);
            }
            kern.log2_norms(cb.data(), n, double(a0), W, logs.data());
            for (const Root& rt : roots) {
                if (b % rt.p == 0) continue;
                // a = a0 + i with a == b r (mod p).
                long target = long((std::uint64_t(b) % rt.p) * rt.r % rt.p);
                long start = (target - a0) % long(rt.p);
                if (start < 0) start += long(rt.p);
                for (std::size_t i = std::size_t(start); i < W; i += rt.p) logs[i] -= rt.logp;
            }
            std::size_t m = kern.select_below(logs.data(), W, thr, picks.data());
            for (std::size_t j = 0; j < m && !done(); ++j) try_linear(a0 + long(picks[j]), long(b));
        }
    }

    void random_elements() {
        const int n = f_.degree();
        std::mt19937_64 rng(mix64(mix64(res_.disc.get_si() ^ 0x5bd1e995ULL) ^ cfg_.seed));
        for (std::size_t t = 0; t < cfg_.random_budget && !done(); ++t) {
            int R = 2 + int(t / 2000);
            std::uniform_int_distribution<int> d(-R, R);
            NfElem alpha = K_.zero();
            for (int i = 0; i < n; ++i) alpha.c[i] = d(rng);
            if (alpha.is_zero()) continue;
            Rat nr = K_.norm(alpha);
            Int N = abs(nr.get_num());
            IntVec v(k_, Int(0));
            bool smooth = true;
            for (std::uint64_t p : primes_) {
                unsigned vp = 0;
                while (mpz_divisible_ui_p(N.get_mpz_t(), p)) {
                    mpz_divexact_ui(N.get_mpz_t(), N.get_mpz_t(), p);
                    ++vp;
                }
                if (vp == 0) continue;
                unsigned acc = 0;
                for (std::size_t i = 0; i < k_; ++i) {
                    if (res_.factor_base[i].p != p) continue;
                    int w = valuation(K_, alpha, res_.factor_base[i]);
                    v[i] = w;
                    acc += unsigned(w * res_.factor_base[i].f);
                }
                if (acc != vp) throw std::logic_error("class group: valuations disagree with the norm");
            }
            if (N != 1) smooth = false;
            if (smooth) offer(v);
        }
    }

private:
    void try_linear(long a, long b) {
        if (std::gcd(a, b) != 1) return;
        const int n = f_.degree();
        Int N = 0, A(a), bpow = 1;
        for (int k = n; k >= 0; --k) {
            // sum c_k a^k b^{n-k} by Horner in a with b powers folded in.
            N = N * A + f_.coeff(k) * bpow;
            bpow *= b;
        }
        if (N == 0) return;
        N = abs(N);
        IntVec v(k_, Int(0));
        for (std::uint64_t p : primes_) {
            if (!mpz_divisible_ui_p(N.get_mpz_t(), p)) continue;
            unsigned vp = 0;
            while (mpz_divisible_ui_p(N.get_mpz_t(), p)) {
                mpz_divexact_ui(N.get_mpz_t(), N.get_mpz_t(), p);
                ++vp;
            }
            // a - b xi lies in exactly one prime above p: the degree-one ideal at r = a / b.
            std::uint64_t am = modp::reduce(A, p), bm = modp::reduce(Int(b), p);
            std::uint64_t r = modp::mul(am, modp::inv(bm, p), p);
            PolyP h{(p - r) % p, 1};
            long idx = res_.find(p, h);
            if (idx < 0) throw std::logic_error("class group: missing degree-one ideal");
            v[idx] = vp;
        }
        if (N != 1) return;
        offer(v);
    }

    const IntPoly& f_;
    NumberField K_;
    ClassGroupResult& res_;
    const ClassGroupConfig& cfg_;
    std::size_t k_;
    std::size_t margin_;
    std::size_t stable_ = 0;
    std::set<std::uint64_t> primes_;
};

}  // namespace

ClassGroupResult class_group_small(const IntPoly& f, const ClassGroupConfig& cfg) {
    ClassGroupResult res;
    const int n = f.degree();
    if (!f.is_monic() || n < 2 || n > cfg.max_degree) {
        res.reason = "degree";
        return res;
    }
    FieldDiscriminant fd = field_discriminant(f);
    if (fd.skipped) {
        res.reason = "disc-" + fd.skip_reason;
        return res;
    }
    if (fd.index != 1) {
        res.reason = "index";
        return res;
    }
    res.disc = fd.value;
    if (abs(res.disc) > cfg.disc_bound) {
        res.reason = "disc-bound";
        return res;
    }
    int r1 = SturmSequence(f).count_all();
    int r2 = (n - r1) / 2;
    double fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    res.minkowski = fact / std::pow(double(n), n) * std::pow(4 / M_PI, r2) * std::sqrt(std::fabs(res.disc.get_d()));

    std::set<std::uint64_t> ps;
    for (std::uint32_t p : small_primes(std::uint32_t(res.minkowski) + 2))
        if (double(p) <= res.minkowski) ps.insert(p);
    for (std::uint64_t p : cfg.extra_primes) ps.insert(p);
    NumberField K(f);
    for (std::uint64_t p : ps) {
        PolyP fp = modp::from_int_poly(f, p);
        for (const auto& fac : modp::factor(f, p)) {
            PrimeIdeal P;
            P.p = p;
            P.h = fac.poly;
            P.e = fac.multiplicity;
            P.f = modp::degree(fac.poly);
            P.beta = K.from_poly(modp::lift(modp::divrem(fp, fac.poly, p).first));
            res.factor_base.push_back(std::move(P));
        }
    }
    const std::size_t k = res.factor_base.size();
    res.lattice = HnfLattice(k);
    if (k == 0) {
        res.status = OracleStatus::Verified;
        res.class_number = 1;
        return res;
    }
    RelationSearch search(f, res, cfg);
    search.prime_relations();
    if (!search.done()) search.sieve();
    if (!search.done()) search.random_elements();
    if (!search.done()) {
        res.reason = res.lattice.full_rank() ? "unsaturated" : "rank";
        return res;
    }
    res.status = OracleStatus::Verified;
    res.class_number = res.lattice.determinant();
    res.invariants = smith_invariants(res.lattice);
    return res;
}

Int class_order_of(const ClassGroupResult& res, const IntVec& exps) {
    if (!res.verified()) throw std::logic_error("class_order_of needs a verified class group");
    if (exps.size() != res.factor_base.size()) throw std::invalid_argument("class_order_of: dimension mismatch");
    if (res.factor_base.empty()) return 1;
    const Int& h = res.class_number;
    std::vector<Int> divs{1};
    for (auto& [p, e] : factor_integer(h).primes) {
        std::size_t m = divs.size();
        Int pk = 1;
        for (unsigned j = 1; j <= e; ++j) {
            pk *= p;
            for (std::size_t i = 0; i < m; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    for (const Int& d : divs) {
        IntVec w = exps;
        for (auto& x : w) x *= d;
        if (res.lattice.contains(w)) return d;
    }
    throw std::logic_error("class_order_of: order does not divide the class number");
}

}  // namespace abcforge

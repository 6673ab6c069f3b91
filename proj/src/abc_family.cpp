#include "abcforge/abc_family.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "abcforge/galois.hpp"

namespace abcforge {

void AbcParams::validate() const {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    if (ell < 1) throw std::invalid_argument("ell must be at least 1");
    if (int(a.size()) != n - 1) throw std::invalid_argument("expected n-1 base integers a_1..a_{n-1}");
    std::set<Int> seen;
    for (const Int& v : a) {
        if (v == 0) throw std::invalid_argument("base integers must be nonzero");
        if (!seen.insert(v).second) throw std::invalid_argument("base integers must be pairwise distinct");
    }
}

Int AbcParams::product() const {
    Int p = 1;
    for (const Int& v : a) p *= v;
    return p;
}

std::string AbcParams::a_csv() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i].get_str();
    return os.str();
}

AbcParams make_params(int n, unsigned ell, std::vector<Int> a) {
    AbcParams p{n, ell, std::move(a)};
    p.validate();
    return p;
}

std::optional<Int> a_of_tau(const AbcParams& params, const Int& tau) {
    Int num = ipow(tau, params.ell) - 1;
    Int den = params.product();
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) return std::nullopt;
    Int q = num / den;
    return params.n % 2 == 0 ? Int(-q) : q;
}

IntPoly family_poly(const AbcParams& params, const Int& a_value) {
    std::vector<Int> roots = params.a;
    roots.push_back(a_value);
    return IntPoly::from_roots(roots) - IntPoly{1};
}

IntPoly build_f(const AbcParams& params, const Int& tau) {
    auto at = a_of_tau(params, tau);
    if (!at) throw std::invalid_argument("a(tau) is not an integer for tau = " + tau.get_str());
    for (const Int& v : params.a)
        if (v == *at) throw std::domain_error("a(tau) coincides with a base integer for tau = " + tau.get_str());
    return family_poly(params, *at);
}

IntPoly g_poly(const AbcParams& params) {
    // P f(0, x) = prod(x - a_j) (P x - (-1)^n) - P, and the constant term cancels.
    const Int P = params.product();
    const Int sign = params.n % 2 == 0 ? Int(1) : Int(-1);
    IntPoly h = IntPoly::from_roots(params.a) * IntPoly(std::vector<Int>{Int(-sign), P}) - IntPoly::constant(P);
    if (h.coeff(0) != 0) throw std::logic_error("f(0, 0) != 0");
    std::vector<Int> c(h.coeffs().begin() + 1, h.coeffs().end());
    return IntPoly(std::move(c));
}

Int cond1_modulus(const AbcParams& params) { return g_poly(params).coeff(0); }

bool satisfies_cond1(const AbcParams& params, const Int& tau) {
    Int P = abs(params.product());
    Int r = tau - 1;
    if (!mpz_divisible_p(r.get_mpz_t(), P.get_mpz_t())) return false;
    Int g;
    Int m = cond1_modulus(params);
    mpz_gcd(g.get_mpz_t(), tau.get_mpz_t(), m.get_mpz_t());
    return g == 1;
}

Int range_lower_bound(unsigned ell, const Int& T) {
    Int target = ipow(T, ell) + 2;
    Int m;
    // Start from floor((target/2)^{1/ell}) and step up.
    Int half = target / 2;
    mpz_root(m.get_mpz_t(), half.get_mpz_t(), ell);
    if (m < 1) m = 1;
    while (m > 1 && 2 * ipow(Int(m - 1), ell) >= target) --m;
    while (2 * ipow(m, ell) < target) ++m;
    return m;
}

CandidateStream::CandidateStream(AbcParams params, Int T, Int start_abs, bool small_tau)
    : params_(std::move(params)), hi_(std::move(T)) {
    params_.validate();
    if (hi_ < 2) throw std::invalid_argument("T must be at least 2");
    lo_ = small_tau ? Int(2) : range_lower_bound(params_.ell, hi_);
    cur_ = std::max(lo_, start_abs);
}

std::optional<TauCandidate> CandidateStream::next() {
    while (cur_ <= hi_) {
        Int tau = sign_ > 0 ? cur_ : Int(-cur_);
        const bool plus = sign_ > 0;
        if (plus) {
            sign_ = -1;
        } else {
            sign_ = 1;
            ++cur_;
        }
        if (!satisfies_cond1(params_, tau)) {
            if (plus) emitted_plus_ = false;
            continue;
        }
        TauCandidate c;
        c.tau = tau;
        c.a_tau = *a_of_tau(params_, tau);
        c.f = family_poly(params_, c.a_tau);
        c.collision = std::find(params_.a.begin(), params_.a.end(), c.a_tau) != params_.a.end();
        c.mirror = !plus && params_.ell % 2 == 0 && emitted_plus_;
        if (plus) emitted_plus_ = true;
        return c;
    }
    return std::nullopt;
}

std::vector<TauCandidate> candidate_taus(const AbcParams& params, const Int& T, bool small_tau) {
    CandidateStream s(params, T, 0, small_tau);
    std::vector<TauCandidate> out;
    while (auto c = s.next()) out.push_back(std::move(*c));
    return out;
}

Int disc_closed_form(int n, const Int& alpha, const Int& beta, const Int& gamma, const Int& tau, unsigned ell) {
    if (gamma == 0) throw std::invalid_argument("gamma must be nonzero");
    Int a = alpha * ipow(tau, ell) + beta - 1;
    Int inner = ipow(Int(n - 1), n - 1) * ipow(a, n) + ipow(Int(n), n) * gamma;
    Int d = ipow(gamma, n - 2) * inner;
    return n % 2 == 0 ? Int(-d) : d;
}

IntPoly closed_form_poly(int n, const Int& alpha, const Int& beta, const Int& gamma, const Int& tau, unsigned ell) {
    std::vector<Int> roots(n - 1, Int(1));
    roots.push_back(alpha * ipow(tau, ell) + beta);
    return IntPoly::from_roots(roots) - IntPoly::constant(gamma);
}

namespace {

Int spread(const std::vector<Int>& a) {
    Int s = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) s *= abs(a[i] - a[j]);
    return s;
}

void enumerate_tuples(int k, int bound, std::vector<Int>& cur, std::vector<std::vector<Int>>& out) {
    if (int(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    int start = cur.empty() ? -bound : int(cur.back().get_si()) + 1;
    for (int v = start; v <= bound; ++v) {
        if (v == 0) continue;
        cur.push_back(v);
        enumerate_tuples(k, bound, cur, out);
        cur.pop_back();
    }
}

}  // namespace

AbcParams search_base_params(int n, unsigned ell, const SearchBudget& budget) {
    if (n < 3) throw std::invalid_argument("n must be at least 3");
    if (n == 3) return make_params(3, ell, {Int(1), Int(-1)});
    std::vector<std::vector<Int>> tuples;
    std::vector<Int> cur;
    enumerate_tuples(n - 1, budget.max_abs_entry, cur, tuples);
    // Tightly clustered tuples keep the unit logarithms closest to the
    // asymptotic diagonal; ties prefer small entries, then positive ones.
    auto key = [](const std::vector<Int>& t) {
        Int mx = 0, sum = 0;
        for (const Int& v : t) {
            mx = std::max(mx, Int(abs(v)));
            sum += v;
        }
        return std::make_tuple(spread(t), mx, Int(-sum));
    };
    std::stable_sort(tuples.begin(), tuples.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
    for (const auto& t : tuples) {
        AbcParams p{n, ell, t};
        // f(0, x) = x g(x) / P is separable iff g is squarefree with g(0) != 0.
        IntPoly g = g_poly(p);
        if (g.coeff(0) == 0 || !is_squarefree(g)) continue;
        int ok = 0;
        Int P = abs(p.product());
        for (Int k = 1; ok < budget.sample && k < 100 * budget.sample; ++k) {
            Int tau = 1 + k * P;
            if (!satisfies_cond1(p, tau)) continue;
            Int at = *a_of_tau(p, tau);
            if (std::find(t.begin(), t.end(), at) != t.end()) continue;
            IntPoly f = family_poly(p, at);
            if (discriminant(f) == 0) break;
            if (certify_sn(f, budget.prime_budget).status != SnStatus::Certified) break;
            ++ok;
        }
        if (ok >= budget.sample) return p;
    }
    throw std::runtime_error("search_base_params: no tuple passed within the budget");
}

}  // namespace abcforge

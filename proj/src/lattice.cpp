#include "abcforge/lattice.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace abcforge {

namespace {

// g = s a + t b with g = gcd(a, b) >= 0.
void ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

Int fmod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

}  // namespace

namespace {

constexpr std::uint64_t kRankPrime = (std::uint64_t(1) << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    return std::uint64_t((unsigned __int128)a * b % q);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t q) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, q);
        a = mulmod(a, a, q);
        e >>= 1;
    }
    return r;
}

std::uint64_t reduce_q(const Int& v, std::uint64_t q) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), q);
    return r.get_ui();
}

// Descending primes below 2^61.
std::uint64_t nth_large_prime(std::size_t i) {
    static std::vector<std::uint64_t> cache{kRankPrime};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= i) {
        std::uint64_t c = cache.back() - 2;
        while (!is_probable_prime(Int(static_cast<unsigned long>(c)))) c -= 2;
        cache.push_back(c);
    }
    return cache[i];
}

std::uint64_t det_mod(const std::vector<IntVec>& m, std::uint64_t q) {
    const std::size_t k = m.size();
    std::vector<std::vector<std::uint64_t>> a(k, std::vector<std::uint64_t>(k));
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) a[r][c] = reduce_q(m[r][c], q);
    std::uint64_t det = 1;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        while (piv < k && a[piv][c] == 0) ++piv;
        if (piv == k) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = (q - det) % q;
        }
        det = mulmod(det, a[c][c], q);
        std::uint64_t inv = powmod(a[c][c], q - 2, q);
        for (std::size_t r = c + 1; r < k; ++r) {
            if (a[r][c] == 0) continue;
            std::uint64_t t = mulmod(a[r][c], inv, q);
            for (std::size_t j = c; j < k; ++j) a[r][j] = (a[r][j] + q - mulmod(t, a[c][j], q)) % q;
        }
    }
    return det;
}

}  // namespace

Int abs_determinant(const std::vector<IntVec>& m) {
    const std::size_t k = m.size();
    if (k == 0) return 1;
    double bits = 1;
    for (const auto& row : m) {
        Int s = 0;
        for (const Int& x : row) s += x * x;
        if (s == 0) return 0;
        bits += 0.5 * double(mpz_sizeinbase(s.get_mpz_t(), 2));
    }
    Int residue = 0, mod = 1;
    for (std::size_t i = 0; double(bit_length(mod)) < bits + 2; ++i) {
        std::uint64_t q = nth_large_prime(i);
        std::uint64_t r = det_mod(m, q);
        // residue + mod * t == r (mod q)
        std::uint64_t cur = reduce_q(residue, q);
        std::uint64_t minv = powmod(reduce_q(mod, q), q - 2, q);
        std::uint64_t t = mulmod((r + q - cur) % q, minv, q);
        residue += mod * Int(static_cast<unsigned long>(t));
        mod *= Int(static_cast<unsigned long>(q));
    }
    // Symmetric lift.
    if (2 * residue > mod) residue -= mod;
    return abs(residue);
}

HnfLattice::HnfLattice(std::size_t dim) : dim_(dim), full_(dim == 0), det_(dim == 0 ? 1 : 0), rows_(dim) {
    echelon_.resize(dim);
    echelon_src_.assign(dim, -1);
}

const Int& HnfLattice::modulus() const {
    return (modulus_ != 0 && modulus_ < det_) ? modulus_ : det_;
}

void HnfLattice::recompute_det() {
    Int d = 1;
    for (std::size_t i = 0; i < dim_; ++i) d *= rows_[i][i];
    det_ = d;
    if (modulus_ != 0 && det_ < modulus_) modulus_ = det_;
}

bool HnfLattice::add(IntVec v) {
    if (v.size() != dim_) throw std::invalid_argument("HnfLattice::add: dimension mismatch");
    if (full_) return add_full(std::move(v));
    if (std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; })) return false;
    const std::uint64_t q = kRankPrime;
    std::vector<std::uint64_t> w(dim_);
    for (std::size_t i = 0; i < dim_; ++i) w[i] = reduce_q(v[i], q);
    pending_.push_back(std::move(v));
    for (std::size_t i = 0; i < dim_; ++i) {
        if (w[i] == 0) continue;
        if (echelon_[i].empty()) {
            std::uint64_t inv = powmod(w[i], q - 2, q);
            for (auto& x : w) x = mulmod(x, inv, q);
            echelon_[i] = std::move(w);
            echelon_src_[i] = long(pending_.size() - 1);
            if (++rank_ == dim_) finish_rank();
            break;
        }
        std::uint64_t t = w[i];
        for (std::size_t j = i; j < dim_; ++j) w[j] = (w[j] + q - mulmod(t, echelon_[i][j], q)) % q;
    }
    return true;
}

void HnfLattice::finish_rank() {
    std::vector<IntVec> basis;
    for (long src : echelon_src_) basis.push_back(pending_[std::size_t(src)]);
    modulus_ = abs_determinant(basis);
    if (modulus_ == 0) throw std::logic_error("HnfLattice: independent rows with zero determinant");
    for (std::size_t i = 0; i < dim_; ++i) {
        rows_[i].assign(dim_, Int(0));
        rows_[i][i] = modulus_;
    }
    full_ = true;
    recompute_det();
    // The independent rows first: they bring the determinant down to modulus_.
    for (auto& row : basis) add_full(row);
    std::vector<IntVec> rest = std::move(pending_);
    pending_.clear();
    echelon_.clear();
    echelon_src_.clear();
    for (auto& row : rest) add_full(std::move(row));
}

bool HnfLattice::add_full(IntVec v) {
    bool changed = false;
    const Int m = modulus();
    for (auto& x : v) x = fmod_pos(x, m);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (v[i] == 0) continue;
        IntVec& h = rows_[i];
        if (mpz_divisible_p(v[i].get_mpz_t(), h[i].get_mpz_t())) {
            // Plain subtraction keeps the pivot.
            Int qt = v[i] / h[i];
            for (std::size_t j = i; j < dim_; ++j) v[j] = fmod_pos(Int(v[j] - qt * h[j]), m);
            continue;
        }
        Int g, s, t;
        ext_gcd(h[i], v[i], g, s, t);
        Int hi = h[i] / g, vi = v[i] / g;
        IntVec nh(dim_), nv(dim_);
        for (std::size_t j = i; j < dim_; ++j) {
            nh[j] = s * h[j] + t * v[j];
            nv[j] = hi * v[j] - vi * h[j];
        }
        // The new pivot g divides m, so reducing the tail mod m is sound.
        for (std::size_t j = i + 1; j < dim_; ++j) {
            nh[j] = fmod_pos(nh[j], m);
            nv[j] = fmod_pos(nv[j], m);
        }
        nv[i] = 0;
        h = std::move(nh);
        v = std::move(nv);
        changed = true;
    }
    if (changed) {
        recompute_det();
        const Int& d = modulus();
        // Pivots divide d; reduce off-diagonal entries for a canonical-size basis.
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i + 1; j < dim_; ++j) rows_[i][j] = fmod_pos(rows_[i][j], d);
    }
    return changed;
}

bool HnfLattice::contains(IntVec v) const {
    if (v.size() != dim_) throw std::invalid_argument("HnfLattice::contains: dimension mismatch");
    if (!full_) throw std::logic_error("HnfLattice::contains needs full rank");
    const Int& m = modulus();
    for (std::size_t i = 0; i < dim_; ++i) {
        v[i] = fmod_pos(v[i], m);
        if (v[i] == 0) continue;
        const IntVec& h = rows_[i];
        if (!mpz_divisible_p(v[i].get_mpz_t(), h[i].get_mpz_t())) return false;
        Int qt = v[i] / h[i];
        for (std::size_t j = i; j < dim_; ++j) v[j] -= qt * h[j];
    }
    return true;
}

std::vector<Int> smith_invariants(std::vector<IntVec> m) {
    const std::size_t k = m.size();
    std::vector<Int> diag;
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            // Pivot: smallest nonzero absolute value in the remaining block.
            std::size_t pr = k, pc = k;
            for (std::size_t r = t; r < k; ++r)
                for (std::size_t c = t; c < k; ++c)
                    if (m[r][c] != 0 && (pr == k || abs(m[r][c]) < abs(m[pr][pc]))) {
                        pr = r;
                        pc = c;
                    }
            if (pr == k) throw std::invalid_argument("smith_invariants: singular matrix");
            std::swap(m[t], m[pr]);
            for (auto& row : m) std::swap(row[t], row[pc]);
            bool clean = true;
            for (std::size_t r = t + 1; r < k; ++r) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m[r][t].get_mpz_t(), m[t][t].get_mpz_t());
                if (q != 0)
                    for (std::size_t c = t; c < k; ++c) m[r][c] -= q * m[t][c];
                if (m[r][t] != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < k; ++c) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m[t][c].get_mpz_t(), m[t][t].get_mpz_t());
                if (q != 0)
                    for (std::size_t r = t; r < k; ++r) m[r][c] -= q * m[r][t];
                if (m[t][c] != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility condition: the pivot must divide the rest of the block.
            bool divides = true;
            for (std::size_t r = t + 1; r < k && divides; ++r)
                for (std::size_t c = t + 1; c < k; ++c)
                    if (!mpz_divisible_p(m[r][c].get_mpz_t(), m[t][t].get_mpz_t())) {
                        for (std::size_t cc = t; cc < k; ++cc) m[t][cc] += m[r][cc];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(abs(m[t][t]));
    }
    std::vector<Int> out;
    for (const Int& d : diag)
        if (d > 1) out.push_back(d);
    return out;
}

std::vector<Int> smith_invariants(const HnfLattice& lat) {
    if (!lat.full_rank()) throw std::invalid_argument("smith_invariants needs a full-rank lattice");
    const std::size_t k = lat.dim();
    const auto& rows = lat.rows();
    // Generators with pivot 1 are eliminated: e_i = -sum_{j>i} H_ij e_j.
    std::vector<std::size_t> keep;
    std::vector<long> pos(k, -1);
    for (std::size_t i = 0; i < k; ++i)
        if (rows[i][i] != 1) {
            pos[i] = long(keep.size());
            keep.push_back(i);
        }
    const std::size_t r = keep.size();
    if (r == 0) return {};
    const Int& det = lat.determinant();
    std::vector<IntVec> expr(k, IntVec(r, Int(0)));
    for (std::size_t ii = k; ii-- > 0;) {
        if (pos[ii] >= 0) {
            expr[ii][pos[ii]] = 1;
            continue;
        }
        for (std::size_t j = ii + 1; j < k; ++j) {
            if (rows[ii][j] == 0) continue;
            for (std::size_t c = 0; c < r; ++c) expr[ii][c] = fmod_pos(Int(expr[ii][c] - rows[ii][j] * expr[j][c]), det);
        }
    }
    std::vector<IntVec> m;
    for (std::size_t i : keep) {
        IntVec row(r, Int(0));
        for (std::size_t j = i; j < k; ++j) {
            if (rows[i][j] == 0) continue;
            for (std::size_t c = 0; c < r; ++c) row[c] += rows[i][j] * expr[j][c];
        }
        for (auto& x : row) x = fmod_pos(x, det);
        m.push_back(std::move(row));
    }
    // det * e_c are relations too; adding them keeps the quotient unchanged.
    for (std::size_t c = 0; c < r; ++c) {
        IntVec row(r, Int(0));
        row[c] = det;
        m.push_back(std::move(row));
    }
    // Reduce the (2r x r) system to a square one through an HNF pass.
    HnfLattice small(r);
    for (auto& row : m) small.add(row);
    std::vector<IntVec> sq;
    for (const auto& row : small.rows()) sq.push_back(row);
    return smith_invariants(sq);
}

}  // namespace abcforge

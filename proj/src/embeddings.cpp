#include "abcforge/embeddings.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace abcforge {

long default_precision_bits() {
    if (const char* env = std::getenv("ABC_FORGE_PRECISION_BITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 16 && v <= 1 << 20) return v;
    }
    return 64;
}

Interval EmbeddingData::root_interval(std::size_t k, mpfr_prec_t prec) const {
    return Interval(roots.at(k).lo, roots.at(k).hi, prec);
}

void refine_embeddings(const IntPoly& f, EmbeddingData& emb, long bits) {
    for (auto& r : emb.roots) r = refine_root_bits(f, r, bits);
    emb.precision_bits = std::max(emb.precision_bits, bits);
}

EmbeddingData compute_embeddings(const AbcParams& params, const Int& a_value, const IntPoly& f, long bits) {
    EmbeddingData emb;
    std::vector<RootBox> boxes = isolate_real_roots(f);
    emb.real_root_count = int(boxes.size());
    emb.totally_real = emb.real_root_count == f.degree();
    if (!emb.totally_real) {
        emb.roots = std::move(boxes);
        return emb;
    }
    std::vector<Int> values = params.a;
    values.push_back(a_value);
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return values[x] < values[y]; });
    emb.roots.resize(values.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        boxes[i].label = order[i];
        emb.roots[order[i]] = boxes[i];
    }
    refine_embeddings(f, emb, bits);
    return emb;
}

EmbeddingData compute_plain_embeddings(const IntPoly& f, long bits) {
    EmbeddingData emb;
    emb.roots = isolate_real_roots(f);
    emb.real_root_count = int(emb.roots.size());
    emb.totally_real = emb.real_root_count == f.degree();
    for (std::size_t i = 0; i < emb.roots.size(); ++i) emb.roots[i].label = int(i);
    refine_embeddings(f, emb, bits);
    return emb;
}

namespace {

// Bounds on |x - v| over the box.
Rat dist_upper(const RootBox& b, const Rat& v) { return std::max(abs(b.lo - v), abs(b.hi - v)); }

Rat dist_lower(const RootBox& b, const Rat& v) {
    if (b.lo <= v && v <= b.hi) return 0;
    return std::min(abs(b.lo - v), abs(b.hi - v));
}

}  // namespace

LayoutReport verify_root_layout(const AbcParams& params, const Int& a_value, const IntPoly& f, EmbeddingData& emb,
                                const Rat& C, const Int& min_abs_a, long max_bits) {
    const Int abs_a = abs(a_value);
    if (abs_a < min_abs_a) throw std::invalid_argument("|a(tau)| below the configured floor");
    LayoutReport rep;
    rep.totally_real = emb.totally_real;
    if (!emb.totally_real) {
        rep.decided = true;
        return rep;
    }
    const int n = params.n;
    const Rat scale_k(abs_a);
    const Rat scale_xi(ipow(abs_a, static_cast<unsigned long>(n - 1)));
    for (long bits = std::max(emb.precision_bits, 16L);; bits *= 2) {
        if (bits > emb.precision_bits) refine_embeddings(f, emb, bits);
        bool decided = true, pass = true;
        rep.scaled_upper.assign(n - 1, Rat(0));
        for (int k = 0; k < n - 1; ++k) {
            Rat up = dist_upper(emb.roots[k], Rat(params.a[k])) * scale_k;
            Rat lo = dist_lower(emb.roots[k], Rat(params.a[k])) * scale_k;
            rep.scaled_upper[k] = up;
            if (up > C) {
                pass = false;
                if (lo <= C) decided = false;
            }
        }
        Rat up = dist_upper(emb.xi(), Rat(a_value)) * scale_xi;
        Rat lo = dist_lower(emb.xi(), Rat(a_value)) * scale_xi;
        rep.xi_scaled_upper = up;
        if (up > C) {
            pass = false;
            if (lo <= C) decided = false;
        }
        if (decided || bits >= max_bits) {
            rep.decided = decided;
            rep.pass = pass && decided;
            break;
        }
    }
    rep.max_scaled = rep.xi_scaled_upper.get_d();
    for (const Rat& v : rep.scaled_upper) rep.max_scaled = std::max(rep.max_scaled, v.get_d());
    return rep;
}

bool root_product_consistent(const IntPoly& f, const EmbeddingData& emb, mpfr_prec_t prec) {
    if (!emb.totally_real) return false;
    Interval prod = Interval::point(Int(1), prec);
    for (std::size_t k = 0; k < emb.roots.size(); ++k) prod = prod * emb.root_interval(k, prec);
    if (f.degree() % 2 == 1) prod = -prod;
    return prod.contains(Rat(f.coeff(0)));
}

}  // namespace abcforge

#pragma once

// Real embeddings of an ABC field: the n real roots of f(tau, x), each
// labelled by the base value it tracks, refined to a working precision.

#include <optional>
#include <vector>

#include "abcforge/abc_family.hpp"
#include "abcforge/interval.hpp"
#include "abcforge/real_roots.hpp"

namespace abcforge {

// Starting precision in bits: ABC_FORGE_PRECISION_BITS when set, else 64.
long default_precision_bits();

struct EmbeddingData {
    // roots[k] tracks a_{k+1} for k < n-1 (the embedding sigma_{k+1});
    // roots[n-1] tracks a(tau) (the distinguished root xi).
    std::vector<RootBox> roots;
    long precision_bits = 0;
    bool totally_real = false;
    int real_root_count = 0;

    const RootBox& xi() const { return roots.back(); }
    Interval root_interval(std::size_t k, mpfr_prec_t prec) const;
};

// Isolates and labels the roots of f = family_poly(params, a_value). Roots are
// matched to the sorted base values in order. When f is not totally real the
// result has totally_real = false and no labels.
EmbeddingData compute_embeddings(const AbcParams& params, const Int& a_value, const IntPoly& f, long bits);

// All real roots of f in ascending order, labelled by position, refined to 2^-bits.
EmbeddingData compute_plain_embeddings(const IntPoly& f, long bits);

// Refines every box to width <= 2^-bits.
void refine_embeddings(const IntPoly& f, EmbeddingData& emb, long bits);

struct LayoutReport {
    bool totally_real = false;
    bool decided = false;  // every comparison with C certified
    bool pass = false;
    std::vector<Rat> scaled_upper;  // |xi_k - a_k| * |a| upper bounds, k < n-1
    Rat xi_scaled_upper;            // |xi - a| * |a|^{n-1} upper bound
    double max_scaled = 0;          // largest of the above, for reporting
};

// Checks |xi_k - a_k| |a| <= C and |xi - a| |a|^{n-1} <= C with exact rational
// bounds from the root boxes, refining until each comparison is decided or
// max_bits is reached. Throws std::invalid_argument when |a| < min_abs_a.
LayoutReport verify_root_layout(const AbcParams& params, const Int& a_value, const IntPoly& f, EmbeddingData& emb,
                                const Rat& C = 10, const Int& min_abs_a = 100, long max_bits = 4096);

// (-1)^n times the interval product of the roots contains the constant term of f.
bool root_product_consistent(const IntPoly& f, const EmbeddingData& emb, mpfr_prec_t prec = 256);

}  // namespace abcforge

#pragma once

// Integer lattices in Z^k: incremental Hermite normal form (modular once the
// lattice has full rank), membership, and Smith invariants.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "abcforge/arith.hpp"

namespace abcforge {

using IntVec = std::vector<Int>;

class HnfLattice {
public:
    explicit HnfLattice(std::size_t dim);

    std::size_t dim() const { return dim_; }
    // Exact once full rank; before that, the rank modulo a large prime.
    std::size_t rank() const { return rank_; }
    bool full_rank() const { return full_; }
    // Index [Z^k : L] when full rank, else 0.
    const Int& determinant() const { return det_; }

    // Adds a generator; returns true when the lattice changed. Before full
    // rank every nonzero generator counts as a change.
    bool add(IntVec v);
    // Needs full rank (throws std::logic_error otherwise).
    bool contains(IntVec v) const;

    // Upper-triangular basis rows with pivots on the diagonal (full rank only).
    const std::vector<IntVec>& rows() const { return rows_; }

private:
    bool add_full(IntVec v);
    void finish_rank();
    const Int& modulus() const;
    void recompute_det();

    std::size_t dim_;
    std::size_t rank_ = 0;
    bool full_ = false;
    Int det_ = 0;
    Int modulus_ = 0;  // M with M Z^k inside L
    std::vector<IntVec> rows_;
    // Generators seen before full rank, and an echelon form of them mod q.
    std::vector<IntVec> pending_;
    std::vector<std::vector<std::uint64_t>> echelon_;
    std::vector<long> echelon_src_;
};

// |det| of a square integer matrix by Chinese remaindering under the Hadamard bound.
Int abs_determinant(const std::vector<IntVec>& m);

// Nontrivial Smith invariants (> 1), each dividing the next, of Z^k / L for a
// full-rank lattice.
std::vector<Int> smith_invariants(const HnfLattice& lat);

// Smith invariants of an arbitrary square nonsingular integer matrix.
std::vector<Int> smith_invariants(std::vector<IntVec> m);

}  // namespace abcforge

#pragma once

// Small-field class group oracle: factor base of prime ideals below the
// Minkowski bound, relations from (p), sieved linear elements a - b xi and
// random small elements, Hermite/Smith reduction of the relation lattice.
// Only fields with Z[xi] maximal are handled, so prime ideals are read off
// the factorization of f mod p.

#include <cstdint>
#include <string>
#include <vector>

#include "abcforge/lattice.hpp"
#include "abcforge/number_field.hpp"
#include "abcforge/poly_mod_p.hpp"

namespace abcforge {

struct PrimeIdeal {
    std::uint64_t p = 0;
    PolyP h;  // monic irreducible factor of f mod p
    int e = 1;
    int f = 1;
    NfElem beta;  // lift of (f / h)(xi); alpha in P iff alpha * beta in p Z[xi]

    std::string str() const;
};

struct ClassGroupConfig {
    Int disc_bound = 10'000'000;
    int max_degree = 4;
    std::uint64_t seed = 0;
    // Extra primes whose ideals must be in the factor base (e.g. divisors of tau).
    std::vector<std::uint64_t> extra_primes;
    // Consecutive relations that leave the lattice unchanged before we stop.
    std::size_t margin = 0;  // 0: 2 * |factor base| + 20
    std::size_t sieve_width = 2048;
    std::size_t sieve_lines = 400;
    std::size_t random_budget = 20000;
};

enum class OracleStatus { Verified, Unverified };

struct ClassGroupResult {
    OracleStatus status = OracleStatus::Unverified;
    std::string reason;  // why unverified
    Int disc;
    double minkowski = 0;
    std::vector<PrimeIdeal> factor_base;
    std::vector<Int> invariants;  // cyclic factors, each dividing the next
    Int class_number = 0;
    std::size_t relations = 0;  // relations offered to the lattice
    HnfLattice lattice{0};

    bool verified() const { return status == OracleStatus::Verified; }
    std::string structure() const;  // e.g. "C2 x C4", "C1"
    // Factor-base position of the ideal (p, h), or -1.
    long find(std::uint64_t p, const PolyP& h) const;
};

// f monic irreducible. Never throws on fields outside its range; reports them
// as unverified with a reason.
ClassGroupResult class_group_small(const IntPoly& f, const ClassGroupConfig& cfg = {});

// Valuation of a nonzero algebraic integer at the prime ideal.
int valuation(const NumberField& K, const NfElem& alpha, const PrimeIdeal& P);

// Order of the class of prod P_i^{v_i} in a verified result.
Int class_order_of(const ClassGroupResult& res, const IntVec& exps);

}  // namespace abcforge

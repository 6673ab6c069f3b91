#pragma once

// Integer factorization under a work budget, the Dedekind p-maximality
// criterion, and the field discriminant derived from them.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "abcforge/int_poly.hpp"

namespace abcforge {

struct FactorBudget {
    std::uint32_t trial_bound = 1'000'000;
    std::uint64_t rho_iterations = 200'000;
};

struct Factorization {
    std::vector<std::pair<Int, unsigned>> primes;  // identified prime powers, ascending
    std::vector<Int> unfactored;                   // composite leftovers, all prime factors >= trial_bound
    bool unfactored_squarefree = true;             // leftovers provably squarefree

    bool complete() const { return unfactored.empty(); }
};

Factorization factor_integer(const Int& n, const FactorBudget& budget = {});

struct DedekindResult {
    bool maximal = true;
    // deg of the Dedekind obstruction Z; p^index_exponent divides [O_K : Z[x]/f].
    int index_exponent = 0;
};

// Classical Dedekind criterion at p for monic f. Throws std::invalid_argument
// for non-monic input and std::out_of_range when p does not fit a machine word.
DedekindResult dedekind_test(const IntPoly& f, const Int& p);

// True iff Z[x]/(f) is maximal at p; answers true directly when p^2 does not divide disc(f).
bool dedekind_p_maximal(const IntPoly& f, const Int& p);

struct FieldDiscriminant {
    bool skipped = false;
    std::string skip_reason;  // "factor-budget", "dedekind", "large-prime"
    Int value;                // disc(K) when not skipped
    Int index = 1;            // [O_K : Z[xi]] when not skipped
    Int poly_disc;
};

// disc(K) for K = Q[x]/(f), f monic irreducible. Primes where Z[xi] is not
// maximal are corrected only when one Dedekind enlargement provably reaches
// the maximal order; otherwise the result is conservatively skipped.
FieldDiscriminant field_discriminant(const IntPoly& f, const FactorBudget& budget = {});

}  // namespace abcforge

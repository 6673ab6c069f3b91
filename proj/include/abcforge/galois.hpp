#pragma once

// Irreducibility and S_n certificates from factorization shapes modulo
// unramified primes, and an exact resolvent-based oracle for degree <= 4.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abcforge/poly_mod_p.hpp"

namespace abcforge {

enum class Verdict3 { Yes, No, Undecided };

struct IrreducibilityResult {
    Verdict3 status = Verdict3::Undecided;
    // Primes whose shapes jointly rule out every proper factor degree. A single
    // prime with shape (n) is reported alone.
    std::vector<std::uint64_t> shape_primes;
    std::optional<IntPoly> factor;  // exact proper factor when reducible
};

IrreducibilityResult is_irreducible(const IntPoly& f, std::size_t prime_budget = 10'000);

// Searches for a proper factor over Z via numerical roots and exact division.
// Only a found factor is meaningful; nullopt proves nothing.
std::optional<IntPoly> find_rational_factor(const IntPoly& f);

enum class SnStatus { Certified, NotSymmetric, Undecided };

std::string to_string(SnStatus s);

struct SnCertificate {
    SnStatus status = SnStatus::Undecided;
    std::uint64_t n_cycle_prime = 0;        // shape (n)
    std::uint64_t long_cycle_prime = 0;     // shape (1, n-1); unused for prime n
    std::uint64_t transposition_prime = 0;  // one part of degree 2, all others odd
    std::vector<std::uint64_t> transitivity_primes;
    Int disc;
    bool disc_nonsquare = false;
    std::string reason;  // for NotSymmetric / Undecided
};

// Pre: f squarefree of degree >= 2. Ramified primes and primes dividing the
// leading coefficient are skipped.
SnCertificate certify_sn(const IntPoly& f, std::size_t prime_budget = 10'000);

// Recomputes every witness shape of a Certified certificate.
bool check_sn_certificate(const IntPoly& f, const SnCertificate& cert);

enum class SmallGroup { Reducible, S2, C3, S3, C4, V4, D4, A4, S4 };

std::string to_string(SmallGroup g);

// Exact Galois group for squarefree f of degree 2..4 from the discriminant
// and the cubic resolvent. Throws std::invalid_argument for other degrees.
SmallGroup brute_galois_small(const IntPoly& f);

}  // namespace abcforge

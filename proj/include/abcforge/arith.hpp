#pragma once

// Arbitrary-precision integer and rational helpers shared by every module.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace abcforge {

using Int = mpz_class;
using Rat = mpq_class;

Int ipow(const Int& base, unsigned long exp);

// Returns r with r^k == n when such an integer exists (negative n only for odd k).
std::optional<Int> exact_root(const Int& n, unsigned long k);

inline bool is_perfect_square(const Int& n) {
    return sgn(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Int parse_int(std::string_view text);
Rat parse_rat(std::string_view text);
std::string to_string(const Int& v);
std::string to_string(const Rat& v);

// Number of bits of |v| (0 for v == 0).
inline std::size_t bit_length(const Int& v) {
    return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

// Primes below `bound`, computed once and cached. Thread-safe.
std::span<const std::uint32_t> small_primes(std::uint32_t bound = 1'000'000);

// The first `count` primes (count <= number of primes below 10^7).
std::span<const std::uint32_t> first_primes(std::size_t count);

bool is_probable_prime(const Int& n);

std::vector<std::uint64_t> prime_factors_small(std::uint64_t n);

}  // namespace abcforge

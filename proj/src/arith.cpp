#include "abcforge/arith.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace abcforge {

Int ipow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

std::optional<Int> exact_root(const Int& n, unsigned long k) {
    if (k == 0) throw std::invalid_argument("exact_root: k must be positive");
    if (sgn(n) < 0 && k % 2 == 0) return std::nullopt;
    Int r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) == 0) return std::nullopt;
    return r;
}

Int parse_int(std::string_view text) {
    std::string s(text);
    Int v;
    if (s.empty() || v.set_str(s, 10) != 0)
        throw std::invalid_argument("not a decimal integer: '" + s + "'");
    return v;
}

Rat parse_rat(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_int(text));
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

std::string to_string(const Int& v) { return v.get_str(10); }

std::string to_string(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str(10);
    return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

namespace {

std::vector<std::uint32_t> sieve_below(std::uint32_t bound) {
    std::vector<bool> composite(bound, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < bound; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j < bound; j += i) composite[j] = true;
    }
    return out;
}

std::mutex g_prime_mutex;
std::vector<std::uint32_t> g_primes;
std::uint32_t g_prime_bound = 0;

}  // namespace

std::span<const std::uint32_t> small_primes(std::uint32_t bound) {
    std::lock_guard lock(g_prime_mutex);
    if (g_prime_bound < bound) {
        g_primes = sieve_below(std::max<std::uint32_t>(bound, 1'000'000));
        g_prime_bound = std::max<std::uint32_t>(bound, 1'000'000);
    }
    auto end = std::lower_bound(g_primes.begin(), g_primes.end(), bound);
    return {g_primes.data(), std::size_t(end - g_primes.begin())};
}

std::span<const std::uint32_t> first_primes(std::size_t count) {
    std::uint32_t bound = 1'000'000;
    for (;;) {
        auto ps = small_primes(bound);
        if (ps.size() >= count) return ps.subspan(0, count);
        if (bound >= 10'000'000) throw std::out_of_range("first_primes: count too large");
        bound *= 2;
    }
}

bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

std::vector<std::uint64_t> prime_factors_small(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace abcforge

#pragma once

// The one-parameter ABC family
//   f(t, x) = (x - a_1)...(x - a_{n-1}) (x - a(t)) - 1,
//   a(t)    = (-1)^{n-1} (t^ell - 1) / (a_1 ... a_{n-1}),
// its admissible specializations, and the discriminant closed form used to
// show that the generic Galois group is not contained in A_n.

#include <optional>
#include <string>
#include <vector>

#include "abcforge/int_poly.hpp"

namespace abcforge {

struct AbcParams {
    int n = 3;
    unsigned ell = 2;
    std::vector<Int> a;  // a_1..a_{n-1}, pairwise distinct and nonzero

    // Throws std::invalid_argument when the invariants fail.
    void validate() const;
    Int product() const;
    std::string a_csv() const;
};

AbcParams make_params(int n, unsigned ell, std::vector<Int> a);

// a(tau), or nullopt when the division is inexact.
std::optional<Int> a_of_tau(const AbcParams& params, const Int& tau);

// (x - a_1)...(x - a_{n-1})(x - a_value) - 1 with no admissibility checks.
IntPoly family_poly(const AbcParams& params, const Int& a_value);

// f(tau, x). Throws std::invalid_argument if a(tau) is not an integer and
// std::domain_error if a(tau) coincides with some a_j.
IntPoly build_f(const AbcParams& params, const Int& tau);

// g(x) = a_1...a_{n-1} f(0, x) / x.
IntPoly g_poly(const AbcParams& params);

// a_1...a_{n-1} * df/dx(0, 0), which equals g(0).
Int cond1_modulus(const AbcParams& params);

// tau = 1 mod a_1...a_{n-1} and gcd(tau, g(0)) = 1.
bool satisfies_cond1(const AbcParams& params, const Int& tau);

// Smallest m >= 1 with 2 m^ell >= T^ell + 2.
Int range_lower_bound(unsigned ell, const Int& T);

struct TauCandidate {
    Int tau;
    Int a_tau;
    IntPoly f;
    // ell even and the opposite sign of |tau| was already emitted: same a(tau).
    bool mirror = false;
    // a(tau) equals some a_j, so f(tau, x) is not an ABC polynomial.
    bool collision = false;
};

// All tau with range_lower_bound(ell, T) <= |tau| <= T satisfying condition 1,
// ordered by |tau| and then + before -. Starting at |tau| = start_abs (when
// larger than the range minimum) restarts the stream from a checkpoint.
// With small_tau the stream starts at |tau| = 2 instead of the range minimum.
class CandidateStream {
public:
    CandidateStream(AbcParams params, Int T, Int start_abs = 0, bool small_tau = false);
    std::optional<TauCandidate> next();
    const Int& lower() const { return lo_; }
    const Int& upper() const { return hi_; }

private:
    AbcParams params_;
    Int lo_, hi_;
    Int cur_;
    int sign_ = 1;
    bool emitted_plus_ = false;
};

std::vector<TauCandidate> candidate_taus(const AbcParams& params, const Int& T, bool small_tau = false);

// The closed form D(t) = (-1)^{n-1} gamma^{n-2} ((n-1)^{n-1} a^n + n^n gamma),
// a = alpha tau^ell + beta - 1. It equals (-1)^{n(n-1)/2} times the standard
// discriminant of (x - 1)^{n-1} (x - alpha tau^ell - beta) - gamma.
Int disc_closed_form(int n, const Int& alpha, const Int& beta, const Int& gamma, const Int& tau, unsigned ell);

// (x - 1)^{n-1} (x - alpha tau^ell - beta) - gamma.
IntPoly closed_form_poly(int n, const Int& alpha, const Int& beta, const Int& gamma, const Int& tau, unsigned ell);

struct SearchBudget {
    int max_abs_entry = 6;
    int sample = 8;
    std::size_t prime_budget = 2000;
};

// Base tuple a_1..a_{n-1} with f(0, x) separable and S_n certified on
// `sample` specializations. Throws std::runtime_error when none is found.
AbcParams search_base_params(int n, unsigned ell, const SearchBudget& budget = {});

}  // namespace abcforge

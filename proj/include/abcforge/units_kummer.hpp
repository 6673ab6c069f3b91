#pragma once

// ABC units, their regulator, exact p-th power tests in O_K, p-saturation of
// the unit system and the Kummer condition on xi.
//
// The Kummer condition is checked in the form the class-order argument needs:
// for each prime p | ell, no unit u makes xi * u a p-th power in K. If
// V = <-1, units> has index prime to p in the full unit group, then every unit
// is in V * U^p, so it suffices to test xi * s * prod u_j^{e_j} with
// s = +-1 and 0 <= e_j < p (s = +1 alone for odd p, where -1 is a p-th power).

#include <optional>
#include <string>
#include <vector>

#include "abcforge/embeddings.hpp"
#include "abcforge/number_field.hpp"

namespace abcforge {

// Everything the power tests need about one totally real field.
struct KummerContext {
    NumberField K;
    EmbeddingData emb;   // all n real roots; refined in place when precision runs short
    Int denom_bound = 1; // D with D * O_K inside Z[xi]
    long max_bits = 1L << 14;

    KummerContext(const IntPoly& f, EmbeddingData e, Int d) : K(f), emb(std::move(e)), denom_bound(std::move(d)) {}
};

struct UnitSystem {
    // log_matrix[i][j] = log |sigma_i(xi - a_j)|, i, j < n-1.
    std::vector<std::vector<Interval>> log_matrix;
    Interval regulator;
    long precision_bits = 0;
    bool nonzero = false;  // determinant interval excludes 0
};

// Raises precision until the determinant sign is certified or max_bits is hit.
UnitSystem abc_unit_system(KummerContext& ctx, const std::vector<Int>& a);

// Determinant by cofactor expansion (small matrices only).
Interval interval_det(const std::vector<std::vector<Interval>>& m);

enum class PowerStatus { Power, NotPower, Undecided };
enum class PowerScreen { None, Norm, Sign, Reconstruction, Precision };

std::string to_string(PowerScreen s);

struct PowerResult {
    PowerStatus status = PowerStatus::Undecided;
    PowerScreen screen = PowerScreen::None;  // which screen decided a NotPower / Undecided
    std::optional<NfElem> root;              // delta with delta^p == beta, verified exactly
    int reconstructions = 0;                 // sign patterns that reached exact verification
};

// Decides whether beta (nonzero, integral) is a p-th power of an element of
// O_K. Throws std::invalid_argument for beta == 0.
PowerResult is_pth_power(KummerContext& ctx, const NfElem& beta, unsigned p);

// exponent vector e and sign s of the tested element s * prod u_j^{e_j} (times xi for the Kummer test)
struct KummerWitness {
    unsigned p = 0;
    std::vector<unsigned> e;
    int s = 1;
    NfElem root;
};

enum class Outcome { Pass, Fail, Undecided };

std::string to_string(Outcome o);

struct SaturationResult {
    Outcome status = Outcome::Undecided;  // Pass = saturated at p
    std::optional<KummerWitness> witness;
    int tests = 0;
};

SaturationResult saturation_check(KummerContext& ctx, const std::vector<NfElem>& units, unsigned p);

// Replaces one unit by a p-th root found by saturation_check, giving a unit
// system whose group contains the old one with index p.
std::vector<NfElem> refine_units(const NumberField& K, const std::vector<NfElem>& units, const KummerWitness& w);

struct Cond4Result {
    Outcome status = Outcome::Undecided;
    std::vector<unsigned> primes;          // primes dividing ell
    std::optional<KummerWitness> witness;  // on Fail: xi * s * prod u^e = root^p
    std::vector<NfElem> units;             // the p-saturated system actually used
    int refinements = 0;
    int tests = 0;
    int norm_screens = 0;
    int sign_screens = 0;
    int reconstructions = 0;
    std::string detail;
};

// Saturates the unit system at every p | ell (refining it when needed) and
// then tests every representative.
Cond4Result condition4_check(KummerContext& ctx, const NfElem& xi, std::vector<NfElem> units, unsigned ell,
                             int max_refinements = 8);

std::vector<unsigned> prime_divisors(unsigned v);

}  // namespace abcforge

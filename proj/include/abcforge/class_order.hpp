#pragma once

// Suitability of a specialization tau and the order of the class of the
// ideal a = (tau, xi), whose ell-th power is (xi).

#include <optional>
#include <string>

#include "abcforge/abc_family.hpp"
#include "abcforge/class_group.hpp"
#include "abcforge/embeddings.hpp"
#include "abcforge/field_disc.hpp"
#include "abcforge/galois.hpp"
#include "abcforge/units_kummer.hpp"

namespace abcforge {

struct IdentityCheck {
    bool element_identity = false;  // xi g(xi) = (-1)^{n-1} prod (xi - a_j) tau^ell
    bool coprime = false;           // gcd(g(0), tau) = 1
    Int norm_xi;                    // |N(xi)|, must be |tau|^ell
    Int norm_g;                     // |N(g(xi))|, must be |tau|^{(n-1) ell}
    bool norms_ok = false;

    bool ok() const { return element_identity && coprime && norms_ok; }
};

// Throws std::logic_error when any check fails: that is a construction bug.
IdentityCheck verify_ideal_identity(const AbcParams& params, const Int& tau, const IntPoly& f);

// [Z[xi] : tau Z[xi] + xi Z[xi]] from the Hermite form of the generators.
Int ideal_norm_tau_xi(const IntPoly& f, const Int& tau);

// |disc K| > |tau|^{2/(n+2)}, compared exactly as |disc K|^{n+2} > tau^2.
bool cond3_holds(const Int& disc_K, const Int& tau, int n);

enum class Verdict { Suitable, Unsuitable, Skipped };
enum class CondStatus { NotRun, Pass, Fail, Skipped };

std::string to_string(Verdict v);
std::string to_string(CondStatus s);

struct SuitabilityConfig {
    std::size_t prime_budget = 10'000;
    FactorBudget factor_budget;
    long precision_bits = 0;  // 0: default_precision_bits()
    long max_bits = 1L << 14;
    Int min_abs_a = 0;         // candidates below are skipped ("floor")
    Int layout_min_abs_a = 100;
    Rat layout_C = 10;
    // Evaluate conditions 2 and 4 even after an earlier failure (census mode).
    bool exhaustive = false;
};

struct SuitabilityRecord {
    AbcParams params;
    Int tau;
    Int a_tau;
    IntPoly f;
    Verdict verdict = Verdict::Skipped;
    std::string reason;  // failing condition or skip cause

    CondStatus cond1 = CondStatus::NotRun;
    Int cond1_modulus;
    Int cond1_gcd;

    CondStatus cond2 = CondStatus::NotRun;
    std::optional<SnCertificate> galois;

    CondStatus cond3 = CondStatus::NotRun;
    std::optional<FieldDiscriminant> disc;

    CondStatus cond4 = CondStatus::NotRun;
    std::optional<Cond4Result> kummer;

    std::optional<EmbeddingData> emb;
    std::optional<LayoutReport> layout;
    std::optional<UnitSystem> units;
    std::optional<IdentityCheck> identity;
};

SuitabilityRecord check_suitable(const AbcParams& params, const Int& tau, const SuitabilityConfig& cfg = {});

enum class OracleCheck { Absent, Unverified, Verified };

std::string to_string(OracleCheck o);

struct ClassCertificate {
    Int tau;
    Int ideal_norm;
    // Exact order when certified; otherwise an upper bound ell / p from a Kummer witness.
    unsigned lambda = 0;
    bool certified = false;
    std::optional<KummerWitness> witness;

    OracleCheck oracle = OracleCheck::Absent;
    std::string oracle_structure;
    std::string oracle_reason;
    Int oracle_class_number;
    Int oracle_order;
};

struct OracleConfig {
    bool enabled = true;
    Int disc_bound = 10'000'000;
    std::uint64_t seed = 0;
};

// For a SUITABLE record: lambda = ell. For a record that failed condition 4
// with a witness at p: lambda divides ell / p. Any other record throws
// std::invalid_argument. When the oracle verifies the class group its answer
// must agree, else std::logic_error.
ClassCertificate class_order_certificate(const SuitabilityRecord& rec, const OracleConfig& oracle = {});

}  // namespace abcforge

#pragma once

// One self-contained certificate per scanned tau, stored as a JSON line.
// Integers are decimal strings, real intervals are exact rational endpoint
// pairs, and emit(parse(line)) reproduces the line byte for byte.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abcforge/class_order.hpp"

namespace abcforge {

inline constexpr int kSchemaVersion = 1;

using RatPair = std::pair<Rat, Rat>;

struct WitnessData {
    unsigned p = 0;
    std::vector<unsigned> e;
    int s = 1;
    std::vector<Rat> root;  // power-basis coordinates

    bool operator==(const WitnessData&) const = default;
};

struct Certificate {
    int schema_version = kSchemaVersion;
    int n = 0;
    unsigned ell = 0;
    std::vector<Int> a;
    Int tau;
    Int a_tau;
    bool mirror = false;
    std::vector<Int> f_coeffs;  // lowest degree first
    Int disc_f;
    std::optional<Int> disc_K;
    std::string disc_K_skip;  // reason when disc_K is absent
    Int index;                // meaningful only with disc_K

    std::string galois_status;  // certified / not-symmetric / undecided / not-run
    std::uint64_t n_cycle_prime = 0;
    std::uint64_t long_cycle_prime = 0;
    std::uint64_t transposition_prime = 0;
    std::vector<std::uint64_t> transitivity_primes;
    bool disc_nonsquare = false;

    std::vector<RatPair> roots;
    std::optional<RatPair> regulator_abc;
    // Layout bounds: max of |xi_k - a_k| |a| and |xi - a| |a|^{n-1} (upper bound).
    std::string layout;  // pass / fail / undecided / not-run
    std::optional<Rat> layout_max;

    std::string cond1, cond2, cond3, cond4;  // pass / fail / skipped / not-run
    Int cond1_modulus;
    Int cond1_gcd;
    std::vector<unsigned> cond4_primes;
    int cond4_tests = 0;
    int cond4_refinements = 0;
    std::optional<WitnessData> cond4_witness;

    std::string verdict;  // SUITABLE / UNSUITABLE / SKIPPED
    std::string reason;
    std::optional<unsigned> lambda;
    bool lambda_certified = false;
    Int ideal_norm;

    std::string oracle = "absent";  // absent / unverified / verified
    std::string oracle_structure;
    std::string oracle_reason;
    Int oracle_class_number;
    Int oracle_order;

    // Scan context, so a report can be rebuilt from the file alone.
    std::string scan_X;
    Int scan_T;

    bool operator==(const Certificate&) const = default;
};

Certificate make_certificate(const SuitabilityRecord& rec, const std::optional<ClassCertificate>& cert,
                             const std::string& scan_X, const Int& scan_T, bool mirror);

class CertificateError : public std::runtime_error {
public:
    CertificateError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Compact JSON without a trailing newline.
std::string emit_certificate(const Certificate& c);

// Parses and validates one line: schema version, field types, canonical
// integer spellings, and consistency of f and a(tau) with (n, ell, a, tau).
// Throws CertificateError carrying `line_no`.
Certificate parse_certificate(std::string_view line, std::size_t line_no = 1);

std::vector<Certificate> load_certificates(std::istream& in);
void write_certificates(std::ostream& out, const std::vector<Certificate>& certs);

}  // namespace abcforge

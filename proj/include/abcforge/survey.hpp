#pragma once

// Scanning specializations, isomorphism dedup in dyadic windows of |a(tau)|,
// the exceptional census and the tabular census report.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abcforge/certificate.hpp"
#include "abcforge/class_order.hpp"
#include "abcforge/galois.hpp"

namespace abcforge {

struct ScanConfig {
    AbcParams params;
    double X = 1e10;
    std::optional<double> c1;  // calibrated when absent
    Int T_override = 0;        // > 0 replaces c1 X^mu
    Int min_abs_a = 100;
    bool small_tau = false;    // also scan 2 <= |tau| below the range minimum
    std::size_t prime_budget = 10'000;
    FactorBudget factor_budget;
    long precision_bits = 0;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    bool oracle = true;
    Int oracle_disc_bound = 10'000'000;

    // 1 / (2 ell (n - 1))
    double mu() const;
};

struct Calibration {
    double kappa = 0;  // max |disc f| / |a|^{2(n-1)} over the sample
    double c1 = 0;     // T = c1 X^mu keeps |disc K| <= X
    std::size_t samples = 0;
};

Calibration calibrate_c1(const AbcParams& params, std::size_t samples = 16);

// max(2, floor(c1 X^mu)).
Int scan_T(double X, double mu, double c1);

std::string format_double(double v);

// Exact isomorphism test for totally real fields of equal degree: searches a
// root of g in Q[x]/(f) by interpolating through the real embeddings, then
// verifies it exactly. index_f bounds denominators in the power basis of f.
Verdict3 fields_isomorphic(const IntPoly& f, const Int& index_f, const IntPoly& g, long max_bits = 4096);

struct WindowStats {
    long window = 0;  // floor(log2 |a|)
    std::size_t fields = 0;
    std::size_t classes = 0;
    std::size_t max_multiplicity = 0;
};

struct DedupResult {
    std::vector<long> class_of;  // per input certificate, -1 unless SUITABLE
    std::size_t classes = 0;
    std::size_t undecided_pairs = 0;
    std::vector<WindowStats> windows;
    std::size_t max_multiplicity = 0;
};

// Groups SUITABLE certificates into isomorphism classes within each dyadic
// window. Multiplicity counts distinct polynomials per class; exceeding
// n(n-1)(n-2) throws std::logic_error.
DedupResult dedup_isomorphic(const std::vector<Certificate>& certs);

struct CensusReport {
    int n = 0;
    unsigned ell = 0;
    std::vector<Int> a;
    std::string X;
    Int T;
    double mu = 0;

    std::size_t candidates = 0;
    std::size_t suitable = 0;
    std::size_t unsuitable = 0;
    std::size_t skipped = 0;
    std::map<std::string, std::size_t> reasons;

    std::size_t suitable_fields = 0;
    std::size_t undecided_pairs = 0;
    std::vector<WindowStats> windows;
    std::size_t max_multiplicity = 0;
    std::size_t multiplicity_bound = 0;

    std::size_t cond2_failures = 0;
    std::size_t cond4_failures = 0;
    std::size_t cond3_failures = 0;
    double exceptional_scale = 0;  // sqrt(T) log T
    double exceptional_C = 0;

    double log_density = 0;  // log(suitable_fields) / log X
    double log_density_target = 0;

    std::size_t oracle_verified = 0;
    std::size_t oracle_unverified = 0;
    std::size_t layout_checked = 0;
    std::size_t layout_failures = 0;

    bool reconciled = false;
};

CensusReport build_report(const std::vector<Certificate>& certs);
std::string report_csv(const CensusReport& r);

struct ScanResult {
    Int T;
    Calibration calibration;
    std::vector<Certificate> certificates;
    CensusReport report;
};

// Runs every candidate of the range through check_suitable and, where
// applicable, class_order_certificate. Output order is the candidate order
// whatever the number of jobs. Certificates are streamed to `out` as they
// become final; `resume` holds a previously written prefix that is reused.
ScanResult scan(const ScanConfig& cfg, std::ostream* out = nullptr, const std::vector<Certificate>* resume = nullptr);

struct CensusConfig {
    std::size_t prime_budget = 2'000;
    FactorBudget factor_budget{100'000, 20'000};
    unsigned jobs = 1;
};

struct CensusRow {
    Int T;
    std::size_t candidates = 0;
    std::size_t cond2_fail = 0;
    std::size_t cond2_undecided = 0;
    std::size_t cond4_fail = 0;
    std::size_t cond4_undecided = 0;
    std::size_t cond3_fail = 0;
    std::size_t exceptional = 0;  // cond2 or cond4 failure
    double scale = 0;             // sqrt(T) log T
    double C_T = 0;
};

struct CensusTable {
    AbcParams params;
    std::vector<CensusRow> rows;  // decades up to T, then T
    double C = 0;                 // largest C_T over rows with T >= 1000
    double spread = 0;            // max C_T / min C_T over those rows
    bool stable = false;          // spread <= 2, or all counts zero
    std::string note;
};

// Every tau with 2 <= |tau| <= T passing condition 1 (one of +-tau when ell is
// even), evaluated with all conditions regardless of earlier failures.
CensusTable exceptional_census(const AbcParams& params, const Int& T, const CensusConfig& cfg = {});
std::string census_csv(const CensusTable& t);

// Runs fn(i) for i in [0, count) on `jobs` threads; rethrows the first exception.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace abcforge

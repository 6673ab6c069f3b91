#include <doctest.h>

#include <sstream>

#include "abcforge/survey.hpp"

using namespace abcforge;

TEST_CASE("isomorphism test on small cubic fields") {
    // x^3 - 3x + 1 and x^3 - 3x^2 + 3 both cut out the cubic field of conductor 9.
    IntPoly f{{Int(1), Int(-3), Int(0), Int(1)}};
    IntPoly g{{Int(3), Int(0), Int(-3), Int(1)}};
    CHECK(fields_isomorphic(f, 1, g) == Verdict3::Yes);
    CHECK(fields_isomorphic(f, 1, f) == Verdict3::Yes);
    // Conductor 7 field, same signature and different discriminant.
    IntPoly h{{Int(1), Int(-2), Int(-1), Int(1)}};
    CHECK(fields_isomorphic(f, 1, h) == Verdict3::No);
    // h(x - 1)
    IntPoly h_shift{{Int(1), Int(-1), Int(-2), Int(1)}};
    CHECK(fields_isomorphic(h, 1, h_shift) == Verdict3::Yes);
}

TEST_CASE("calibration keeps the discriminant below X") {
    AbcParams p = make_params(3, 2, {Int(1), Int(-1)});
    Calibration cal = calibrate_c1(p);
    CHECK(cal.samples == 16);
    CHECK(cal.kappa > 3.5);
    CHECK(cal.kappa < 6);
    Int T = scan_T(1e12, 1.0 / 8, cal.c1);
    CHECK(T >= 20);
    CHECK(T <= 40);
}

TEST_CASE("scan is deterministic across thread counts") {
    ScanConfig cfg;
    cfg.params = make_params(3, 2, {Int(1), Int(-1)});
    cfg.X = 1e9;
    cfg.min_abs_a = 0;
    cfg.small_tau = true;
    std::ostringstream one, many;
    cfg.jobs = 1;
    ScanResult r1 = scan(cfg, &one);
    cfg.jobs = 4;
    ScanResult r4 = scan(cfg, &many);
    CHECK(one.str() == many.str());
    CHECK(r1.report.reconciled);
    CHECK(r1.report.candidates == r1.certificates.size());
    CHECK(report_csv(r1.report) == report_csv(r4.report));
    CHECK(report_csv(build_report(r1.certificates)) == report_csv(r1.report));

    // A resumed scan reproduces the same stream.
    std::vector<Certificate> prefix(r1.certificates.begin(), r1.certificates.begin() + 3);
    std::ostringstream rest;
    ScanResult rr = scan(cfg, &rest, &prefix);
    CHECK(rr.certificates == r1.certificates);
}

TEST_CASE("dedup merges mirrored copies of one field") {
    ScanConfig cfg;
    cfg.params = make_params(3, 2, {Int(1), Int(-1)});
    cfg.T_override = 8;
    cfg.min_abs_a = 0;
    cfg.small_tau = true;
    ScanResult r = scan(cfg);
    DedupResult d = dedup_isomorphic(r.certificates);
    std::size_t suitable = 0;
    for (auto& c : r.certificates) suitable += c.verdict == "SUITABLE";
    CHECK(suitable >= d.classes);
    CHECK(d.classes == 6);
    CHECK(d.max_multiplicity <= 6);
}

TEST_CASE("parallel_for covers every index and rethrows") {
    std::vector<int> hit(100, 0);
    parallel_for(hit.size(), 3, [&](std::size_t i) { hit[i]++; });
    for (int h : hit) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) {
                        if (i == 5) throw std::runtime_error("x");
                    }),
                    std::runtime_error);
}

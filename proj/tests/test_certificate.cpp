#include <doctest.h>

#include <sstream>

#include "abcforge/certificate.hpp"

using namespace abcforge;

namespace {

std::vector<Certificate> sample_certificates() {
    AbcParams p = make_params(3, 2, {Int(1), Int(-1)});
    SuitabilityConfig cfg;
    OracleConfig ocfg;
    std::vector<Certificate> out;
    for (long t : {5L, 2L, 4L, 7L, -9L}) {
        SuitabilityRecord rec = check_suitable(p, t, cfg);
        std::optional<ClassCertificate> cc;
        if (rec.verdict == Verdict::Suitable || (rec.cond4 == CondStatus::Fail && rec.kummer && rec.kummer->witness))
            cc = class_order_certificate(rec, ocfg);
        out.push_back(make_certificate(rec, cc, "10000000", 30, t < 0));
    }
    return out;
}

}  // namespace

TEST_CASE("certificate round trip is byte identical") {
    for (const Certificate& c : sample_certificates()) {
        std::string line = emit_certificate(c);
        Certificate back = parse_certificate(line);
        CHECK(back == c);
        CHECK(emit_certificate(back) == line);
    }
}

TEST_CASE("certificate content at tau = 5") {
    Certificate c = sample_certificates().front();
    CHECK(c.verdict == "SUITABLE");
    REQUIRE(c.disc_K);
    CHECK(*c.disc_K == 1376905);
    CHECK(c.lambda == 2u);
    CHECK(c.lambda_certified);
    CHECK(c.oracle == "verified");
    CHECK(c.oracle_order == 2);
    std::string line = emit_certificate(c);
    CHECK(line.find("\"tau\":\"5\"") != std::string::npos);
    CHECK(line.find("\"schema_version\":1") != std::string::npos);
}

TEST_CASE("file load reports the corrupted line") {
    auto certs = sample_certificates();
    std::ostringstream os;
    write_certificates(os, certs);
    std::string text = os.str();
    {
        std::istringstream in(text);
        CHECK(load_certificates(in) == certs);
    }
    // Corrupt the third line.
    std::size_t start = 0;
    for (int k = 0; k < 2; ++k) start = text.find('\n', start) + 1;
    std::string bad = text;
    bad.insert(start + 5, "}");
    std::istringstream in(bad);
    try {
        load_certificates(in);
        FAIL("corruption accepted");
    } catch (const CertificateError& e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
    }
}

TEST_CASE("parser rejects schema mismatch and tampering") {
    Certificate c = sample_certificates().front();
    std::string line = emit_certificate(c);
    auto replaced = [&](const std::string& from, const std::string& to) {
        std::string s = line;
        auto pos = s.find(from);
        REQUIRE(pos != std::string::npos);
        s.replace(pos, from.size(), to);
        return s;
    };
    CHECK_THROWS_AS(parse_certificate(replaced("\"schema_version\":1", "\"schema_version\":2")), CertificateError);
    CHECK_THROWS_AS(parse_certificate(replaced("\"tau\":\"5\"", "\"tau\":\"05\"")), CertificateError);
    CHECK_THROWS_AS(parse_certificate(replaced("\"tau\":\"5\"", "\"tau\":5")), CertificateError);
    CHECK_THROWS_AS(parse_certificate(replaced("\"tau\":\"5\"", "\"tau\":\"6\"")), CertificateError);
    CHECK_THROWS_AS(parse_certificate(replaced("\"verdict\":\"SUITABLE\"", "\"verdict\":\"MAYBE\"")), CertificateError);
    CHECK_THROWS_AS(parse_certificate(replaced("{", "{\"extra\":1,")), CertificateError);
    CHECK_THROWS_AS(parse_certificate("not json", 7), CertificateError);
}

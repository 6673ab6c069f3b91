#include "abcforge/certificate.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>

#include <json.hpp>

namespace abcforge {

using json = nlohmann::ordered_json;

Certificate make_certificate(const SuitabilityRecord& rec, const std::optional<ClassCertificate>& cert,
                             const std::string& scan_X, const Int& scan_T, bool mirror) {
    Certificate c;
    c.n = rec.params.n;
    c.ell = rec.params.ell;
    c.a = rec.params.a;
    c.tau = rec.tau;
    c.a_tau = rec.a_tau;
    c.mirror = mirror;
    if (!rec.f.is_zero()) {
        c.f_coeffs.assign(rec.f.coeffs().begin(), rec.f.coeffs().end());
        c.disc_f = discriminant(rec.f);
    }
    if (rec.disc) {
        if (rec.disc->skipped) {
            c.disc_K_skip = rec.disc->skip_reason;
        } else {
            c.disc_K = rec.disc->value;
            c.index = rec.disc->index;
        }
    } else {
        c.disc_K_skip = "not-run";
    }
    if (rec.galois) {
        const SnCertificate& g = *rec.galois;
        c.galois_status = to_string(g.status);
        c.n_cycle_prime = g.n_cycle_prime;
        c.long_cycle_prime = g.long_cycle_prime;
        c.transposition_prime = g.transposition_prime;
        c.transitivity_primes = g.transitivity_primes;
        c.disc_nonsquare = g.disc_nonsquare;
    } else {
        c.galois_status = "not-run";
    }
    if (rec.emb)
        for (const RootBox& b : rec.emb->roots) c.roots.emplace_back(b.lo, b.hi);
    if (rec.units) c.regulator_abc = RatPair{rec.units->regulator.lo_rat(), rec.units->regulator.hi_rat()};
    if (rec.layout) {
        const LayoutReport& L = *rec.layout;
        c.layout = !L.decided ? "undecided" : (L.pass ? "pass" : "fail");
        Rat m = L.xi_scaled_upper;
        for (const Rat& r : L.scaled_upper) m = std::max(m, r);
        c.layout_max = m;
    } else {
        c.layout = "not-run";
    }
    c.cond1 = to_string(rec.cond1);
    c.cond2 = to_string(rec.cond2);
    c.cond3 = to_string(rec.cond3);
    c.cond4 = to_string(rec.cond4);
    c.cond1_modulus = rec.cond1_modulus;
    c.cond1_gcd = rec.cond1_gcd;
    if (rec.kummer) {
        c.cond4_primes = rec.kummer->primes;
        c.cond4_tests = rec.kummer->tests;
        c.cond4_refinements = rec.kummer->refinements;
        if (rec.kummer->witness) {
            const KummerWitness& w = *rec.kummer->witness;
            c.cond4_witness = WitnessData{w.p, w.e, w.s, w.root.c};
        }
    }
    c.verdict = to_string(rec.verdict);
    c.reason = rec.reason;
    if (cert) {
        c.lambda = cert->lambda;
        c.lambda_certified = cert->certified;
        c.ideal_norm = cert->ideal_norm;
        c.oracle = to_string(cert->oracle);
        c.oracle_structure = cert->oracle_structure;
        c.oracle_reason = cert->oracle_reason;
        c.oracle_class_number = cert->oracle_class_number;
        c.oracle_order = cert->oracle_order;
    }
    c.scan_X = scan_X;
    c.scan_T = scan_T;
    return c;
}

namespace {

json ints(const std::vector<Int>& v) {
    json j = json::array();
    for (const Int& x : v) j.push_back(to_string(x));
    return j;
}

json pair_json(const RatPair& p) { return json::array({to_string(p.first), to_string(p.second)}); }

}  // namespace

std::string emit_certificate(const Certificate& c) {
    json j;
    j["schema_version"] = c.schema_version;
    j["n"] = c.n;
    j["ell"] = c.ell;
    j["a"] = ints(c.a);
    j["tau"] = to_string(c.tau);
    j["a_tau"] = to_string(c.a_tau);
    j["mirror"] = c.mirror;
    j["f_coeffs"] = ints(c.f_coeffs);
    j["disc_f"] = to_string(c.disc_f);
    if (c.disc_K) j["disc_K"] = {{"value", to_string(*c.disc_K)}, {"index", to_string(c.index)}};
    else j["disc_K"] = {{"skipped", c.disc_K_skip}};
    j["galois"] = {{"status", c.galois_status},
                   {"witness_primes",
                    {{"n_cycle", c.n_cycle_prime},
                     {"long_cycle", c.long_cycle_prime},
                     {"transposition", c.transposition_prime},
                     {"transitivity", c.transitivity_primes}}},
                   {"disc_nonsquare", c.disc_nonsquare}};
    json roots = json::array();
    for (const auto& r : c.roots) roots.push_back(pair_json(r));
    j["roots"] = roots;
    j["regulator_abc"] = c.regulator_abc ? pair_json(*c.regulator_abc) : json(nullptr);
    j["layout"] = {{"status", c.layout}, {"max_scaled", c.layout_max ? json(to_string(*c.layout_max)) : json(nullptr)}};
    j["cond1"] = {{"verdict", c.cond1}, {"modulus", to_string(c.cond1_modulus)}, {"gcd", to_string(c.cond1_gcd)}};
    j["cond2"] = {{"verdict", c.cond2}};
    j["cond3"] = {{"verdict", c.cond3}};
    json w = nullptr;
    if (c.cond4_witness) {
        json root = json::array();
        for (const Rat& r : c.cond4_witness->root) root.push_back(to_string(r));
        w = {{"p", c.cond4_witness->p}, {"e", c.cond4_witness->e}, {"s", c.cond4_witness->s}, {"root", root}};
    }
    j["cond4"] = {{"verdict", c.cond4},
                  {"primes", c.cond4_primes},
                  {"tests", c.cond4_tests},
                  {"refinements", c.cond4_refinements},
                  {"witness", w}};
    j["verdict"] = c.verdict;
    j["reason"] = c.reason;
    j["lambda"] = c.lambda ? json(*c.lambda) : json(nullptr);
    j["lambda_certified"] = c.lambda_certified;
    j["ideal_norm"] = to_string(c.ideal_norm);
    json o = {{"status", c.oracle}};
    if (c.oracle == "verified") {
        o["structure"] = c.oracle_structure;
        o["class_number"] = to_string(c.oracle_class_number);
        o["order"] = to_string(c.oracle_order);
    } else if (c.oracle == "unverified") {
        o["reason"] = c.oracle_reason;
    }
    j["oracle"] = o;
    j["scan"] = {{"X", c.scan_X}, {"T", to_string(c.scan_T)}};
    return j.dump();
}

namespace {

struct Reader {
    std::size_t line;

    [[noreturn]] void fail(const std::string& what) const { throw CertificateError(line, what); }

    const json& at(const json& j, const char* key) const {
        if (!j.is_object()) fail("expected an object around '" + std::string(key) + "'");
        auto it = j.find(key);
        if (it == j.end()) fail(std::string("missing field '") + key + "'");
        return *it;
    }

    void only(const json& j, std::initializer_list<const char*> keys) const {
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!allowed.count(it.key())) fail("unexpected field '" + it.key() + "'");
    }

    std::string str(const json& j, const char* key) const {
        const json& v = at(j, key);
        if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
        return v.get<std::string>();
    }

    Int integer(const json& v, const char* key) const {
        if (!v.is_string()) fail(std::string("field '") + key + "' must be a decimal string");
        std::string s = v.get<std::string>();
        Int x;
        try {
            x = parse_int(s);
        } catch (const std::exception&) {
            fail(std::string("field '") + key + "' is not an integer");
        }
        if (to_string(x) != s) fail(std::string("field '") + key + "' is not in canonical form");
        return x;
    }

    Int integer(const json& j, const char* key, bool) const { return integer(at(j, key), key); }

    Rat rational(const json& v, const char* key) const {
        if (!v.is_string()) fail(std::string("field '") + key + "' must be a rational string");
        std::string s = v.get<std::string>();
        Rat x;
        try {
            x = parse_rat(s);
        } catch (const std::exception&) {
            fail(std::string("field '") + key + "' is not a rational");
        }
        if (to_string(x) != s) fail(std::string("field '") + key + "' is not in canonical form");
        return x;
    }

    RatPair rat_pair(const json& v, const char* key) const {
        if (!v.is_array() || v.size() != 2) fail(std::string("field '") + key + "' must be an endpoint pair");
        RatPair p{rational(v[0], key), rational(v[1], key)};
        if (p.first > p.second) fail(std::string("field '") + key + "' has lo > hi");
        return p;
    }

    std::vector<Int> int_list(const json& j, const char* key) const {
        const json& v = at(j, key);
        if (!v.is_array()) fail(std::string("field '") + key + "' must be an array");
        std::vector<Int> out;
        for (const json& x : v) out.push_back(integer(x, key));
        return out;
    }

    template <class T>
    T number(const json& j, const char* key) const {
        const json& v = at(j, key);
        if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
        return v.get<T>();
    }

    bool boolean(const json& j, const char* key) const {
        const json& v = at(j, key);
        if (!v.is_boolean()) fail(std::string("field '") + key + "' must be a boolean");
        return v.get<bool>();
    }

    template <class T>
    std::vector<T> num_list(const json& j, const char* key) const {
        const json& v = at(j, key);
        if (!v.is_array()) fail(std::string("field '") + key + "' must be an array");
        std::vector<T> out;
        for (const json& x : v) {
            if (!x.is_number_integer()) fail(std::string("field '") + key + "' must hold integers");
            out.push_back(x.get<T>());
        }
        return out;
    }
};

}  // namespace

Certificate parse_certificate(std::string_view line, std::size_t line_no) {
    Reader r{line_no};
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        r.fail(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) r.fail("record is not a JSON object");
    Certificate c;
    c.schema_version = r.number<int>(j, "schema_version");
    if (c.schema_version != kSchemaVersion)
        r.fail("schema version " + std::to_string(c.schema_version) + " is not supported (expected " +
               std::to_string(kSchemaVersion) + ")");
    r.only(j, {"schema_version", "n", "ell", "a", "tau", "a_tau", "mirror", "f_coeffs", "disc_f", "disc_K", "galois",
               "roots", "regulator_abc", "layout", "cond1", "cond2", "cond3", "cond4", "verdict", "reason", "lambda",
               "lambda_certified", "ideal_norm", "oracle", "scan"});
    c.n = r.number<int>(j, "n");
    c.ell = r.number<unsigned>(j, "ell");
    c.a = r.int_list(j, "a");
    c.tau = r.integer(j, "tau", true);
    c.a_tau = r.integer(j, "a_tau", true);
    c.mirror = r.boolean(j, "mirror");
    c.f_coeffs = r.int_list(j, "f_coeffs");
    c.disc_f = r.integer(j, "disc_f", true);

    const json& dk = r.at(j, "disc_K");
    if (dk.is_object() && dk.contains("value")) {
        r.only(dk, {"value", "index"});
        c.disc_K = r.integer(dk, "value", true);
        c.index = r.integer(dk, "index", true);
    } else {
        r.only(dk, {"skipped"});
        c.disc_K_skip = r.str(dk, "skipped");
    }

    const json& g = r.at(j, "galois");
    r.only(g, {"status", "witness_primes", "disc_nonsquare"});
    c.galois_status = r.str(g, "status");
    const json& wp = r.at(g, "witness_primes");
    r.only(wp, {"n_cycle", "long_cycle", "transposition", "transitivity"});
    c.n_cycle_prime = r.number<std::uint64_t>(wp, "n_cycle");
    c.long_cycle_prime = r.number<std::uint64_t>(wp, "long_cycle");
    c.transposition_prime = r.number<std::uint64_t>(wp, "transposition");
    c.transitivity_primes = r.num_list<std::uint64_t>(wp, "transitivity");
    c.disc_nonsquare = r.boolean(g, "disc_nonsquare");

    const json& roots = r.at(j, "roots");
    if (!roots.is_array()) r.fail("field 'roots' must be an array");
    for (const json& p : roots) c.roots.push_back(r.rat_pair(p, "roots"));
    const json& reg = r.at(j, "regulator_abc");
    if (!reg.is_null()) c.regulator_abc = r.rat_pair(reg, "regulator_abc");

    const json& lay = r.at(j, "layout");
    r.only(lay, {"status", "max_scaled"});
    c.layout = r.str(lay, "status");
    if (!r.at(lay, "max_scaled").is_null()) c.layout_max = r.rational(r.at(lay, "max_scaled"), "max_scaled");

    const json& c1 = r.at(j, "cond1");
    r.only(c1, {"verdict", "modulus", "gcd"});
    c.cond1 = r.str(c1, "verdict");
    c.cond1_modulus = r.integer(c1, "modulus", true);
    c.cond1_gcd = r.integer(c1, "gcd", true);
    r.only(r.at(j, "cond2"), {"verdict"});
    c.cond2 = r.str(r.at(j, "cond2"), "verdict");
    r.only(r.at(j, "cond3"), {"verdict"});
    c.cond3 = r.str(r.at(j, "cond3"), "verdict");
    const json& c4 = r.at(j, "cond4");
    r.only(c4, {"verdict", "primes", "tests", "refinements", "witness"});
    c.cond4 = r.str(c4, "verdict");
    c.cond4_primes = r.num_list<unsigned>(c4, "primes");
    c.cond4_tests = r.number<int>(c4, "tests");
    c.cond4_refinements = r.number<int>(c4, "refinements");
    const json& w = r.at(c4, "witness");
    if (!w.is_null()) {
        r.only(w, {"p", "e", "s", "root"});
        WitnessData wd;
        wd.p = r.number<unsigned>(w, "p");
        wd.e = r.num_list<unsigned>(w, "e");
        wd.s = r.number<int>(w, "s");
        const json& root = r.at(w, "root");
        if (!root.is_array()) r.fail("field 'root' must be an array");
        for (const json& x : root) wd.root.push_back(r.rational(x, "root"));
        c.cond4_witness = wd;
    }

    c.verdict = r.str(j, "verdict");
    c.reason = r.str(j, "reason");
    const json& lam = r.at(j, "lambda");
    if (!lam.is_null()) c.lambda = r.number<unsigned>(j, "lambda");
    c.lambda_certified = r.boolean(j, "lambda_certified");
    c.ideal_norm = r.integer(j, "ideal_norm", true);

    const json& o = r.at(j, "oracle");
    c.oracle = r.str(o, "status");
    if (c.oracle == "verified") {
        r.only(o, {"status", "structure", "class_number", "order"});
        c.oracle_structure = r.str(o, "structure");
        c.oracle_class_number = r.integer(o, "class_number", true);
        c.oracle_order = r.integer(o, "order", true);
    } else if (c.oracle == "unverified") {
        r.only(o, {"status", "reason"});
        c.oracle_reason = r.str(o, "reason");
    } else if (c.oracle == "absent") {
        r.only(o, {"status"});
    } else {
        r.fail("unknown oracle status '" + c.oracle + "'");
    }
    const json& sc = r.at(j, "scan");
    r.only(sc, {"X", "T"});
    c.scan_X = r.str(sc, "X");
    c.scan_T = r.integer(sc, "T", true);

    static const std::set<std::string> verdicts{"SUITABLE", "UNSUITABLE", "SKIPPED"};
    if (!verdicts.count(c.verdict)) r.fail("unknown verdict '" + c.verdict + "'");

    // The polynomial and a(tau) are determined by the parameters.
    try {
        AbcParams p = make_params(c.n, c.ell, c.a);
        auto at = a_of_tau(p, c.tau);
        if (c.cond1 == "pass") {
            if (!at || *at != c.a_tau) r.fail("a_tau does not match (n, ell, a, tau)");
            IntPoly f = family_poly(p, c.a_tau);
            if (std::vector<Int>(f.coeffs().begin(), f.coeffs().end()) != c.f_coeffs)
                r.fail("f_coeffs do not match (n, ell, a, tau)");
            if (discriminant(f) != c.disc_f) r.fail("disc_f does not match f");
        }
    } catch (const CertificateError&) {
        throw;
    } catch (const std::exception& e) {
        r.fail(std::string("inconsistent parameters: ") + e.what());
    }
    return c;
}

std::vector<Certificate> load_certificates(std::istream& in) {
    std::vector<Certificate> out;
    std::string line;
    std::size_t no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (line.empty()) continue;
        out.push_back(parse_certificate(line, no));
    }
    return out;
}

void write_certificates(std::ostream& out, const std::vector<Certificate>& certs) {
    for (const Certificate& c : certs) out << emit_certificate(c) << '\n';
}

}  // namespace abcforge

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "abcforge/acceptance.hpp"
#include "abcforge/survey.hpp"

using namespace abcforge;

namespace {

std::vector<Int> parse_ints(const std::string& csv) {
    std::vector<Int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Int v;
        if (item.empty() || v.set_str(item, 10) != 0) throw CLI::ValidationError("--a", "not an integer: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

AbcParams resolve_params(int n, unsigned ell, const std::string& a) {
    if (a == "auto") return search_base_params(n, ell);
    return make_params(n, ell, parse_ints(a));
}

// A single verified tau carries scan context X = 0, T = |tau|.
Certificate single_certificate(const SuitabilityRecord& rec, const OracleConfig& ocfg) {
    std::optional<ClassCertificate> cc;
    if (rec.verdict == Verdict::Suitable || (rec.cond4 == CondStatus::Fail && rec.kummer && rec.kummer->witness))
        cc = class_order_certificate(rec, ocfg);
    return make_certificate(rec, cc, "0", abs(rec.tau), false);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Class-group divisibility via Ankeny-Brauer-Chowla fields"};
    app.require_subcommand(1);

    int n = 3;
    unsigned ell = 2;
    std::string a = "auto";
    auto add_family = [&](CLI::App* sub, bool required) {
        auto* on = sub->add_option("--n", n, "degree")->check(CLI::Range(2, 12));
        auto* oe = sub->add_option("--ell", ell, "target order")->check(CLI::Range(1u, 1000u));
        sub->add_option("--a", a, "a_1,...,a_{n-1} or auto");
        if (required) {
            on->required();
            oe->required();
        }
    };

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "scan tau and write one certificate per candidate");
    add_family(scan_cmd, true);
    double X = 0;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    std::string min_abs_a = "100", oracle_disc_bound = "10000000", T_override = "0";
    std::size_t prime_budget = 10'000;
    std::uint64_t factor_budget = FactorBudget{}.rho_iterations;
    std::string out_path;
    bool small_tau = false, resume = false, no_oracle = false;
    scan_cmd->add_option("--X", X, "discriminant budget")->required()->check(CLI::PositiveNumber);
    scan_cmd->add_option("--seed", seed, "oracle seed");
    scan_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));
    scan_cmd->add_option("--min-abs-a", min_abs_a, "skip candidates with |a(tau)| below this");
    scan_cmd->add_option("--prime-budget", prime_budget, "primes tried by the Galois certificate");
    scan_cmd->add_option("--factor-budget", factor_budget, "Pollard rho iterations for disc(f)");
    scan_cmd->add_option("--oracle-disc-bound", oracle_disc_bound, "largest |disc K| sent to the class-group oracle");
    scan_cmd->add_option("--T", T_override, "use this |tau| bound instead of the calibrated one");
    scan_cmd->add_flag("--small-tau", small_tau, "also scan |tau| below the range minimum");
    scan_cmd->add_flag("--no-oracle", no_oracle, "skip the class-group oracle");
    scan_cmd->add_option("--out", out_path, "certificate file (JSON lines); stdout when absent");
    scan_cmd->add_flag("--resume", resume, "reuse the records already in --out and append the rest");
    std::string report_path;
    scan_cmd->add_option("--report", report_path, "also write the CSV report here");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the full pipeline on one tau and print its certificate");
    add_family(verify_cmd, true);
    std::string tau_s;
    bool pretty = false;
    verify_cmd->add_option("--tau", tau_s, "specialization")->required();
    verify_cmd->add_option("--seed", seed, "oracle seed");
    verify_cmd->add_option("--oracle-disc-bound", oracle_disc_bound, "largest |disc K| sent to the class-group oracle");
    verify_cmd->add_flag("--pretty", pretty, "indented JSON");

    // census
    auto* census_cmd = app.add_subcommand("census", "count tau failing the Galois or Kummer condition");
    add_family(census_cmd, false);
    std::string census_T;
    census_cmd->add_option("--T", census_T, "largest tau")->required();
    census_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

    // report
    auto* report_cmd = app.add_subcommand("report", "rebuild the CSV report from a certificate file");
    std::string in_path;
    report_cmd->add_option("--in", in_path, "certificate file")->required()->check(CLI::ExistingFile);

    // selftest
    auto* self_cmd = app.add_subcommand("selftest", "run the acceptance property checks");
    std::vector<int> only;
    self_cmd->add_option("--only", only, "criterion numbers");
    self_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*scan_cmd) {
            ScanConfig cfg;
            cfg.params = resolve_params(n, ell, a);
            cfg.X = X;
            cfg.seed = seed;
            cfg.jobs = jobs;
            cfg.min_abs_a = Int(min_abs_a);
            cfg.prime_budget = prime_budget;
            cfg.factor_budget.rho_iterations = factor_budget;
            cfg.oracle_disc_bound = Int(oracle_disc_bound);
            cfg.T_override = Int(T_override);
            cfg.small_tau = small_tau;
            cfg.oracle = !no_oracle;
            std::vector<Certificate> prefix;
            if (resume) {
                if (out_path.empty()) throw std::runtime_error("--resume needs --out");
                std::ifstream in(out_path);
                if (in) prefix = load_certificates(in);
            }
            ScanResult res;
            if (out_path.empty()) {
                res = scan(cfg, &std::cout, nullptr);
            } else {
                std::ofstream out(out_path, resume ? std::ios::app : std::ios::trunc);
                if (!out) throw std::runtime_error("cannot open " + out_path);
                res = scan(cfg, &out, resume ? &prefix : nullptr);
            }
            std::string csv = report_csv(res.report);
            if (!report_path.empty()) {
                std::ofstream rep(report_path);
                rep << csv;
            }
            (out_path.empty() ? std::cerr : std::cout) << csv;
            return 0;
        }
        if (*verify_cmd) {
            AbcParams p = resolve_params(n, ell, a);
            SuitabilityConfig scfg;
            SuitabilityRecord rec = check_suitable(p, Int(tau_s), scfg);
            OracleConfig ocfg;
            ocfg.enabled = p.n <= 4;
            ocfg.disc_bound = Int(oracle_disc_bound);
            ocfg.seed = seed;
            std::string line = emit_certificate(single_certificate(rec, ocfg));
            std::cout << (pretty ? nlohmann::ordered_json::parse(line).dump(2) : line) << "\n";
            return 0;
        }
        if (*census_cmd) {
            CensusConfig cc;
            cc.jobs = jobs;
            CensusTable t = exceptional_census(resolve_params(n, ell, a), Int(census_T), cc);
            std::cout << census_csv(t);
            return 0;
        }
        if (*report_cmd) {
            std::ifstream in(in_path);
            std::cout << report_csv(build_report(load_certificates(in)));
            return 0;
        }
        if (*self_cmd) {
            AcceptanceConfig acfg;
            acfg.jobs = jobs;
            acfg.only = only;
            int failed = 0;
            run_acceptance(acfg, [&](const CriterionResult& r) {
                std::cout << format_result(r) << std::endl;
                failed += !r.pass;
            });
            return failed ? 1 : 0;
        }
    } catch (const CertificateError& e) {
        std::cerr << "abc_forge: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "abc_forge: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

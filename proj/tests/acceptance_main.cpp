#include <cstdlib>
#include <iostream>
#include <string>

#include "abcforge/acceptance.hpp"

int main(int argc, char** argv) {
    abcforge::AcceptanceConfig cfg;
    for (int i = 1; i < argc; ++i) cfg.only.push_back(std::atoi(argv[i]));
    int failed = 0;
    abcforge::run_acceptance(cfg, [&](const abcforge::CriterionResult& r) {
        std::cout << abcforge::format_result(r) << std::endl;
        failed += !r.pass;
    });
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
    return failed ? 1 : 0;
}

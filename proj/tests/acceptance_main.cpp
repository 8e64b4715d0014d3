// Runs every acceptance criterion and prints one line each. Exit status is the
// number of failed criteria (capped at 1).

#include "symldf/acceptance.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    symldf::AcceptanceOptions options;
    for (int i = 1; i < argc; ++i) options.only.push_back(std::atoi(argv[i]));
    int failed = 0;
    symldf::run_acceptance(options, [&](const symldf::CriterionResult& r) {
        std::cout << symldf::format_result(r) << std::endl;
        if (!r.passed()) ++failed;
    });
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}

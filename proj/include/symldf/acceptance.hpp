// acceptance.hpp: the end-to-end acceptance checks, shared by the test binary
// and `symldf validate`.

#pragma once

#include "symldf/liouville.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace symldf {

enum class Outcome { pass, fail, expected_fail };

const char* to_string(Outcome o);

struct CriterionResult {
    int id{0};
    std::string title;
    Outcome outcome{Outcome::fail};
    std::string detail;  // measured values
    double seconds{0.0};

    bool passed() const { return outcome != Outcome::fail; }
};

struct AcceptanceOptions {
    // Tilt used by the fluctuation-relation and finite-time checks (4 and 6);
    // tests swap in a wrong sign to confirm those checks can fail.
    TiltConvention convention{};
    std::uint64_t seed{20240501};
    std::vector<int> only;  // empty: all criteria
};

int acceptance_criterion_count();

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

// Strong-symmetry commutators of one parameter set; dephasing makes this an
// expected failure rather than a failure.
CriterionResult symmetry_check(const ModelParams& p);

// "[PASS] 4 fluctuation relation: ... (0.31 s)"
std::string format_result(const CriterionResult& r);

} // namespace symldf

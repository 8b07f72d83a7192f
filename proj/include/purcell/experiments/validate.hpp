#pragma once

// Oracle and property checks: Floquet residuals, dense-solve equivalences,
// Toeplitz root properties, limit reductions, quadrature behaviour and
// population conservation.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace purcell::experiments {

struct Check {
    std::string name;
    double value = 0.0;      // measured quantity
    double threshold = 0.0;  // pass when value < threshold (or <= for ulp checks)
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<Check> checks;
    bool all_pass() const;
};

struct ValidateOptions {
    int random_draws = 10000;
    std::uint64_t seed = 2024;
    int max_dense_emitters = 64;
};

ValidationReport run_validate(const ValidateOptions& options = {});

/// One line per check: PASS/FAIL, name, value, threshold.
void print_report(const ValidationReport& report, std::ostream& out);

/// Distance in units in the last place between two finite doubles.
std::uint64_t ulp_distance(double a, double b);

}  // namespace purcell::experiments

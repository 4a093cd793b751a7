#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hgs {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

// Runs the full verification battery (equilibrium residuals, critical
// spectrum, Routh-Hurwitz equivalence, Vyshnegradskii equivalence, Lyapunov
// oracle agreement, sign constants, reference roots, transversality, orbit
// checks, amplitude scaling, scan determinism). One line per criterion is
// printed to `out` as it completes.
std::vector<CriterionResult> run_acceptance(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace hgs

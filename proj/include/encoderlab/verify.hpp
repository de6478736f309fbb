#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "encoderlab/code_spec.hpp"

namespace encoderlab {

/// Encoding-time target 4 ln2 · L + 2 ln(16/eps²).
double theorem_time(int L, double epsilon);

/// Code-space convergence target 4 ln2 · L + 2 ln(1/eps).
double lemma2_time(int L, double epsilon);

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0;
    double bound = 0;
    std::string detail;
};

struct VerificationReport {
    std::vector<Check> checks;
    bool ok() const {
        for (const Check& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Symbolic fixed-point property of the logical algebra: every nontrivial
/// logical product commutes with every generator and every correction, so
/// the Heisenberg generator annihilates it exactly. Failures name the
/// offending (site, logical) pair.
VerificationReport verify_logical_fixedpoint(const CodeSpec& spec);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::vector<Check> checks;
    double seconds = 0;
};

/// The full acceptance suite; prints one line per criterion to `progress`
/// when non-null. Deterministic in master_seed.
std::vector<CriterionResult> run_acceptance(uint64_t master_seed, std::ostream* progress);

}  // namespace encoderlab

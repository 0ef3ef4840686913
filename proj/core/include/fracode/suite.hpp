#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fracode/fraccalc.hpp"

namespace fracode {

struct CriterionResult {
    int index = 0;
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::vector<CriterionResult> results;
    bool all_pass = false;
};

namespace suite {

CriterionResult ml_goldens();
/// g_fn overrides the Gamma feeding the quadrature weights; the default is
/// the production gamma_fn. Corrupting it must make this criterion fail.
CriterionResult semigroup(GammaFn g_fn = nullptr);
CriterionResult fundamental_theorem();
CriterionResult caputo_constants();
CriterionResult linear_fode();
CriterionResult existence_horizon_value();
CriterionResult blowup_bracketing();
CriterionResult comparison_principle();
CriterionResult oscillator_decay();
CriterionResult laplace_rule();
CriterionResult duality_pairing();

}  // namespace suite

/// Runs criteria 1-11 in order, streams one line per criterion, and appends a
/// 12th line for the suite itself. all_pass (and the conventional exit status
/// 0) requires every criterion to pass.
SuiteReport run_suite(std::ostream& os);

}  // namespace fracode

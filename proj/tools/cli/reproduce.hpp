#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

// The acceptance runner behind `kirlab reproduce-all`: every shipped claim as
// one pass/fail row, each runnable in seconds.
namespace kirlab::reproduce {

struct Options {
    /// Self-check hook: overrides the Haar eigenvalue constant the first
    /// criterion *expects*; any wrong value must turn that row red.
    std::optional<double> haar_cs_override;
    /// Directory of extra JSON checks; empty or missing runs builtins only.
    std::string config_dir;
};

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail; ///< worst observed quantity vs its threshold
};

std::vector<CriterionResult> run_all(const Options& options = {});

/// Prints one line per criterion; returns 0 when everything passed, 1 else.
int report(const std::vector<CriterionResult>& results, std::ostream& out);

} // namespace kirlab::reproduce

#pragma once

// The acceptance suite: eight criteria with pinned targets and tolerances,
// each reported as one pass/fail line.

#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace cmweyl::cli {

struct VerifyOptions {
    std::filesystem::path data_dir;
    unsigned threads = 0;
    std::set<int> only;  // empty runs every criterion
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::vector<std::string> details;  // one measured-versus-target line per check
    double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options, std::ostream* progress = nullptr);

/// "PASS  3  title  (12.3 s)" followed by indented details.
void print_results(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace cmweyl::cli

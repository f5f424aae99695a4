#pragma once

#include "tubecalc/report.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tubecalc {

enum class Status { pass, fail, inconclusive };
const char* status_name(Status s);

struct CriterionResult {
    int id = 0;
    std::string name;
    Status status = Status::pass;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::size_t chain_cap = 50000;
    /// extra tube file checked alongside the built-in group cases
    std::optional<std::string> tube_file;
    std::function<void()> tick;
};

struct VerifyReport {
    std::vector<CriterionResult> results;
    bool all_passed() const;
    bool any_failed() const;
    Json to_json() const;
    /// "PASS  3 tube identities ... (detail)"
    std::vector<std::string> summary_lines() const;
};

VerifyReport verify_all(const VerifyOptions& options = {});

/// Shaded comparison helper: a degree-1 diagram with an odd number of circles
/// reads the same from either puncture once the shading is flipped, so both
/// shadings are sent to one representative.
annular::ChainVector identify_degree1_shadings(const annular::ChainVector& v);

}  // namespace tubecalc

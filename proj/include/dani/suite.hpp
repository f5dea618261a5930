#pragma once

#include <string>
#include <vector>

#include "dani/field.hpp"

namespace dani {

enum class CaseStatus { pass, fail, expected_fail };

std::string case_status_name(CaseStatus s);

struct SuiteCaseResult {
    std::string id;
    std::string anchor; // which construction the case exercises
    CaseStatus status = CaseStatus::fail;
    double wall_ms = 0.0;
    std::string digest; // FNV-1a of the transcript; wall time excluded
    std::string transcript;
};

struct SuiteReport {
    int format_version = 1;
    std::vector<SuiteCaseResult> cases;

    bool all_passed() const; // expected_fail counts as passing
    std::size_t failures() const;
};

/// Runs the fixed fixture list (deterministic ids and transcripts; cases may
/// execute concurrently, assembly order is fixed).
SuiteReport suite_run();

/// Byte-stable renderings of a report.
std::string report_emit_text(const SuiteReport& report);
std::string report_emit_json(const SuiteReport& report);

std::uint64_t fnv1a64(std::string_view data);

} // namespace dani

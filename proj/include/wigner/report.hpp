#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wigner {

inline constexpr const char* kVersion = "0.1.0";

/// One experiment record: a statistic, its target, the uncertainty it was
/// judged at, and the verdict. No bare booleans: every pass/fail carries its
/// tolerance and sample size.
struct ReportRecord {
    std::string experiment;
    long long n = 0;
    int l = 0;
    std::string statistic;
    double value = 0.0;
    double se = 0.0;
    double target = 0.0;
    double tolerance = 0.0;  // the gate actually applied (3*se, abs tol, ...)
    long long samples = 0;
    bool pass = false;
    std::string note;
};

struct Report {
    std::string name;
    std::uint64_t seed = 0;
    std::string version = kVersion;
    double wall_seconds = 0.0;
    std::vector<ReportRecord> records;

    bool all_pass() const {
        for (const auto& r : records)
            if (!r.pass) return false;
        return true;
    }
    long long failures() const {
        long long c = 0;
        for (const auto& r : records)
            if (!r.pass) ++c;
        return c;
    }
};

/// Long-format CSV: experiment,n,l,statistic,value,se,target,tolerance,samples,pass,note
void write_report_csv(const Report& report, const std::string& path);

/// JSON summary for one or more reports (metadata + per-record entries).
void write_reports_json(const std::vector<Report>& reports, const std::string& path);

}  // namespace wigner
